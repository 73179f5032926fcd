#include "arimat/io.hpp"

#include <json.hpp>

#include <sstream>

namespace arimat::io {

using exactmat::Field;
using exactmat::Int;
using exactmat::Scalar;
using json = nlohmann::json;

namespace {

json parse_doc(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(errc::parse_error, e.what());
  }
}

const json& field_at(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(errc::parse_error, std::string("missing field '") + key + "'");
  return *it;
}

int int_at(const json& j, const char* key) {
  const json& v = field_at(j, key);
  if (!v.is_number_integer()) throw Error(errc::parse_error, std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::string scalar_string(const json& v, const char* key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(errc::parse_error, std::string("field '") + key + "' entries must be strings");
}

Int int_from(const json& v, const char* key) {
  std::string s = scalar_string(v, key);
  try {
    return Int(s);
  } catch (const std::invalid_argument&) {
    throw Error(errc::parse_error, "bad integer literal '" + s + "'");
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json matrix_json(const Matrix& m) {
  json entries = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    entries.push_back(row);
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"field", m.field().str()}, {"entries", entries}};
}

Matrix matrix_from_json(const json& j) {
  int rows = int_at(j, "rows");
  int cols = int_at(j, "cols");
  if (rows <= 0 || cols <= 0) throw Error(errc::parse_error, "dimensions must be positive");
  Field f = Field::parse(field_at(j, "field").get<std::string>());
  const json& entries = field_at(j, "entries");
  if (!entries.is_array() || int(entries.size()) != rows)
    throw Error(errc::parse_error, "'entries' must hold one array per row");
  Matrix m(rows, cols, f);
  for (int i = 0; i < rows; ++i) {
    const json& row = entries[i];
    if (!row.is_array() || int(row.size()) != cols)
      throw Error(errc::parse_error, "row " + std::to_string(i + 1) + " has the wrong length");
    for (int c = 0; c < cols; ++c) m.set(i, c, Scalar::parse(scalar_string(row[c], "entries"), f));
  }
  return m;
}

json subset_json(const std::vector<int>& idx) { return subsets::indices_to_string(idx); }

json mask_json(subsets::Mask m) { return subsets::indices_to_string(subsets::to_indices(m)); }

}  // namespace

Matrix parse_matrix(const std::string& text) { return matrix_from_json(parse_doc(text)); }

std::string serialize(const Matrix& m) { return dump(matrix_json(m)); }

ari::GroupList parse_group_list(const std::string& text) {
  json j = parse_doc(text);
  ari::GroupList gl{matrix_from_json(j), {}, {}};
  if (j.contains("torsion_moduli") || j.contains("torsion_rows")) {
    const json& mod = field_at(j, "torsion_moduli");
    const json& rows = field_at(j, "torsion_rows");
    if (!mod.is_array() || !rows.is_array() || mod.size() != rows.size())
      throw Error(errc::parse_error, "torsion rows and moduli must be arrays of equal length");
    for (std::size_t i = 0; i < mod.size(); ++i) {
      gl.moduli.push_back(int_from(mod[i], "torsion_moduli"));
      std::vector<Int> row;
      for (const json& v : rows[i]) row.push_back(int_from(v, "torsion_rows"));
      gl.torsion.push_back(std::move(row));
    }
  }
  try {
    gl.validate();
  } catch (const Error& e) {
    throw Error(errc::parse_error, e.what());
  }
  return gl;
}

std::string serialize(const ari::GroupList& gl) {
  json j = matrix_json(gl.free);
  if (!gl.torsion_free()) {
    json mod = json::array(), rows = json::array();
    for (const Int& q : gl.moduli) mod.push_back(q.get_str());
    for (const auto& r : gl.torsion) {
      json row = json::array();
      for (const Int& v : r) row.push_back(v.get_str());
      rows.push_back(row);
    }
    j["torsion_moduli"] = mod;
    j["torsion_rows"] = rows;
  }
  return dump(j);
}

ari::MultiplicityTable parse_table(const std::string& text) {
  json j = parse_doc(text);
  int n = int_at(j, "ground_size");
  if (n < 0 || n > 16) throw Error(errc::parse_error, "unsupported ground size");
  const json& entries = field_at(j, "entries");
  std::size_t want = std::size_t(1) << n;
  if (!entries.is_array() || entries.size() != want)
    throw Error(errc::parse_error, "need one (subset, rank, m) triple per subset");
  ari::MultiplicityTable t;
  t.n = n;
  t.rank.assign(want, -1);
  t.m.assign(want, 0);
  for (const json& e : entries) {
    if (!e.is_array() || e.size() != 3)
      throw Error(errc::parse_error, "entries must be (subset, rank, m) triples");
    std::vector<int> idx;
    try {
      idx = subsets::string_to_indices(e[0].get<std::string>());
    } catch (const std::exception&) {
      throw Error(errc::parse_error, "bad subset string");
    }
    for (int i : idx)
      if (i < 0 || i >= n) throw Error(errc::parse_error, "subset index out of range");
    subsets::Mask mask = subsets::to_mask(idx);
    if (t.rank[mask] >= 0) throw Error(errc::parse_error, "duplicate subset in table");
    if (!e[1].is_number_integer()) throw Error(errc::parse_error, "rank must be an integer");
    t.rank[mask] = e[1].get<int>();
    t.m[mask] = int_from(e[2], "m");
    if (t.m[mask] < 1) throw Error(errc::parse_error, "multiplicities must be positive");
  }
  // Matroid sanity on the parsed rank function.
  for (subsets::Mask s = 0; s < want; ++s) {
    if (t.rank[s] < 0 || t.rank[s] > subsets::popcount(s))
      throw Error(errc::parse_error, "rank normalization fails");
    for (int e = 0; e < n; ++e) {
      subsets::Mask b = subsets::Mask(1) << e;
      if (s & b) continue;
      int up = t.rank[s | b] - t.rank[s];
      if (up < 0 || up > 1) throw Error(errc::parse_error, "rank is not unit-increasing");
    }
  }
  if (n <= 10) {
    for (subsets::Mask a = 0; a < want; ++a)
      for (subsets::Mask b = a; b < want; ++b)
        if (t.rank[a | b] + t.rank[a & b] > t.rank[a] + t.rank[b])
          throw Error(errc::parse_error, "rank is not submodular");
  }
  return t;
}

std::string serialize(const ari::MultiplicityTable& t) {
  json entries = json::array();
  for (subsets::Mask s = 0; s < subsets::Mask(t.size()); ++s)
    entries.push_back(json::array({mask_json(s), t.rank[s], t.m[s].get_str()}));
  return dump(json{{"ground_size", t.n}, {"entries", entries}});
}

ari::LabelledGraph parse_labelled_graph(const std::string& text) {
  json j = parse_doc(text);
  ari::LabelledGraph g;
  g.vertices = int_at(j, "vertices");
  if (g.vertices <= 0) throw Error(errc::parse_error, "vertex count must be positive");
  for (const json& e : field_at(j, "edges")) {
    if (!e.is_array() || e.size() != 4)
      throw Error(errc::parse_error, "edges must be (tail, head, label, kind) tuples");
    ari::LabelledGraph::Edge edge;
    if (!e[0].is_number_integer() || !e[1].is_number_integer())
      throw Error(errc::parse_error, "edge endpoints must be integers");
    edge.tail = e[0].get<int>() - 1;
    edge.head = e[1].get<int>() - 1;
    edge.label = int_from(e[2], "label");
    std::string kind = e[3].get<std::string>();
    if (kind != "regular" && kind != "dotted")
      throw Error(errc::parse_error, "edge kind must be 'regular' or 'dotted'");
    edge.dotted = kind == "dotted";
    if (edge.tail < 0 || edge.tail >= g.vertices || edge.head < 0 || edge.head >= g.vertices)
      throw Error(errc::parse_error, "edge endpoint out of range");
    if (edge.tail == edge.head) throw Error(errc::parse_error, "loop edges are not allowed");
    if (edge.label < 1) throw Error(errc::parse_error, "labels must be positive");
    g.edges.push_back(std::move(edge));
  }
  return g;
}

std::string serialize(const ari::LabelledGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back(json::array(
        {e.tail + 1, e.head + 1, e.label.get_str(), e.dotted ? "dotted" : "regular"}));
  return dump(json{{"vertices", g.vertices}, {"edges", edges}});
}

PluckerVector parse_plucker(const std::string& text) {
  json j = parse_doc(text);
  PluckerVector pv;
  pv.d = int_at(j, "d");
  pv.n = int_at(j, "n");
  if (pv.d <= 0 || pv.n < pv.d) throw Error(errc::parse_error, "need 0 < d <= n");
  pv.field = Field::parse(field_at(j, "field").get<std::string>());
  const json& coords = field_at(j, "coords");
  auto combs = subsets::combinations(pv.n, pv.d);
  pv.coords.assign(combs.size(), Scalar::zero(pv.field));
  if (coords.size() != combs.size())
    throw Error(errc::parse_error, "need one coordinate per column subset");
  for (const auto& c : combs) {
    std::string key = subsets::indices_to_string(c);
    auto it = coords.find(key);
    if (it == coords.end()) throw Error(errc::parse_error, "missing coordinate '" + key + "'");
    pv.coords[subsets::comb_rank(c, pv.n)] = Scalar::parse(scalar_string(*it, "coords"), pv.field);
  }
  return pv;
}

std::string serialize(const PluckerVector& pv) {
  json coords = json::object();
  for (const auto& c : subsets::combinations(pv.n, pv.d))
    coords[subsets::indices_to_string(c)] = pv.coords[subsets::comb_rank(c, pv.n)].str();
  return dump(json{{"d", pv.d}, {"n", pv.n}, {"field", pv.field.str()}, {"coords", coords}});
}

std::string serialize(const decompose::TADFactorization& f) {
  json diag = json::array();
  for (const Scalar& s : f.d) diag.push_back(s.str());
  json basis = json::array();
  for (int b : f.basis) basis.push_back(b + 1);
  return dump(json{{"T", matrix_json(f.t)},
                   {"A", matrix_json(f.a)},
                   {"D", matrix_json(f.d_matrix())},
                   {"basis", basis}});
}

std::string serialize(const decompose::CounterexamplePair& c) {
  return dump(json{{"p", c.p},
                   {"k", c.k},
                   {"a", std::to_string(c.a)},
                   {"x", matrix_json(c.x)},
                   {"xk", matrix_json(c.xk)}});
}

std::string serialize(const matroid::U24Witness& w) {
  json cert = json::array();
  for (const Scalar& s : w.certificate) cert.push_back(s.str());
  return dump(json{{"inner", subset_json(w.inner)}, {"context", subset_json(w.context)},
                   {"certificate", cert}});
}

namespace {

json witness_json(const gpcheck::GPrWitness& w) {
  json products = json::array();
  for (const Int& p : w.products) products.push_back(p.get_str());
  json out{{"r", w.r},
           {"I", subset_json(w.inner)},
           {"J", subset_json(w.context)},
           {"S", subset_json(w.s_part)},
           {"T", subset_json(w.t_part)},
           {"calT", subset_json(w.eligible)},
           {"products", products},
           {"satisfiable", w.satisfiable}};
  if (w.sigma) {
    json sigma = json::array();
    for (int s : *w.sigma) sigma.push_back(s);
    out["sigma"] = sigma;
  }
  return out;
}

}  // namespace

std::string serialize(const gpcheck::GPrWitness& w) { return dump(witness_json(w)); }

std::string serialize(const gpcheck::GPrReport& r) {
  json failures = json::array();
  for (const auto& w : r.failures) failures.push_back(witness_json(w));
  return dump(json{{"r", r.r}, {"pass", r.pass}, {"failures", failures}});
}

std::string serialize(const ari::AxiomReport& r) {
  json molecule_failures = json::array();
  for (const auto& c : r.molecule_checks)
    if (!c.pass)
      molecule_failures.push_back(json{{"R", mask_json(c.r)},
                                       {"S", mask_json(c.s)},
                                       {"F", mask_json(c.f)},
                                       {"T", mask_json(c.t)},
                                       {"rho", c.rho.get_str()}});
  json a1_failures = json::array();
  for (const auto& c : r.a1_checks)
    if (!c.pass) a1_failures.push_back(json{{"A", mask_json(c.a)}, {"e", c.e + 1}});
  json a2_failures = json::array();
  for (const auto& c : r.a2_checks)
    if (!c.pass) a2_failures.push_back(json{{"R", mask_json(c.r)}, {"S", mask_json(c.s)}});
  return dump(json{{"pass", r.pass},
                   {"molecules", r.molecule_checks.size()},
                   {"a1_checks", r.a1_checks.size()},
                   {"a2_checks", r.a2_checks.size()},
                   {"p_failures", molecule_failures},
                   {"a1_failures", a1_failures},
                   {"a2_failures", a2_failures}});
}

std::string serialize(const std::vector<ari::GcdViolation>& v) {
  json arr = json::array();
  for (const auto& viol : v)
    arr.push_back(json{{"subset", mask_json(viol.subset)},
                       {"stored", viol.stored.get_str()},
                       {"expected", viol.expected.get_str()}});
  return dump(json{{"pass", v.empty()}, {"violations", arr}});
}

std::string serialize(const ari::Classification& c) {
  return dump(json{{"regular", c.regular},
                   {"weakly_multiplicative", c.weakly_multiplicative},
                   {"strongly_multiplicative", c.strongly_multiplicative}});
}

std::string serialize(const plucker::IdealGenerators& g) {
  std::ostringstream os;
  for (const auto& q : g.quadrics) os << q << '\n';
  for (const auto& m : g.monomials) os << m << '\n';
  return os.str();
}

}  // namespace arimat::io
