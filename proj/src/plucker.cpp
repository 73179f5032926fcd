#include "arimat/plucker.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "arimat/subsets.hpp"

namespace arimat::plucker {

using exactmat::Field;

namespace {

// Sorts bracket indices, tracking the permutation sign; zero on repeats.
int normalize_bracket(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

using TermKey = std::pair<std::vector<int>, std::vector<int>>;

// Canonical form: combined coefficients, gcd-reduced, lexicographically
// smallest monomial first with a positive coefficient.
std::optional<GPRelation> canonicalize(std::map<TermKey, long>& acc) {
  GPRelation rel;
  long g = 0;
  for (const auto& [key, coef] : acc) g = std::gcd(g, std::abs(coef));
  if (g == 0) return std::nullopt;
  int lead = 0;
  for (const auto& [key, coef] : acc) {
    if (coef == 0) continue;
    if (lead == 0) lead = coef > 0 ? 1 : -1;
    long c = coef / g * lead;
    for (long rep = 0; rep < std::abs(c); ++rep)
      rel.terms.push_back({c > 0 ? 1 : -1, key.first, key.second});
  }
  return rel.terms.empty() ? std::nullopt : std::optional<GPRelation>(rel);
}

std::string bracket_var(const std::vector<int>& idx) {
  std::ostringstream os;
  os << "m_{";
  for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i] + 1;
  os << "}";
  return os.str();
}

}  // namespace

Scalar GPRelation::evaluate(const PluckerVector& pv) const {
  Scalar acc = Scalar::zero(pv.field);
  for (const Term& t : terms) {
    Scalar prod = pv.at(t.left) * pv.at(t.right);
    acc = t.coef > 0 ? acc + prod : acc - prod;
  }
  return acc;
}

std::string GPRelation::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Term& t = terms[i];
    if (i == 0)
      os << (t.coef < 0 ? "-" : "");
    else
      os << (t.coef < 0 ? " - " : " + ");
    os << bracket_var(t.left) << "*" << bracket_var(t.right);
  }
  return os.str();
}

std::vector<GPRelation> gp_relations(int d, int n) {
  if (d <= 0 || d > n) throw Error(errc::bad_shape, "need 0 < d <= n");
  // One relation per index tuple pair (b, b') of the exchange family: the
  // product of the two brackets minus the sum over exchanges of b_1 into
  // each slot of b'. Up to sign the relation depends only on the set
  // {b_2..b_d}, the distinguished b_1, and the set b'; every other tuple
  // either reproduces one of these or collapses to zero, so this
  // enumeration is the full family after deduplication.
  std::set<std::vector<GPRelation::Term>> seen;
  std::vector<GPRelation> out;
  for (const auto& tail : subsets::combinations(n, d - 1))
    for (int b1 = 0; b1 < n; ++b1)
      for (const auto& bp : subsets::combinations(n, d)) {
        std::vector<int> b{b1};
        b.insert(b.end(), tail.begin(), tail.end());
        std::map<TermKey, long> acc;
        auto add = [&](std::vector<int> l, std::vector<int> r, int coef) {
          int s = normalize_bracket(l);
          if (s == 0) return;
          int s2 = normalize_bracket(r);
          if (s2 == 0) return;
          if (r < l) std::swap(l, r);
          acc[{l, r}] += coef * s * s2;
        };
        add(b, bp, 1);
        for (int i = 0; i < d; ++i) {
          std::vector<int> l = b;
          l[0] = bp[i];
          std::vector<int> r = bp;
          r[i] = b[0];
          add(l, r, -1);
        }
        auto rel = canonicalize(acc);
        if (!rel) continue;
        if (seen.insert(rel->terms).second) out.push_back(std::move(*rel));
      }
  return out;
}

std::vector<GPRelation> gp_verify(const PluckerVector& pv) {
  std::vector<GPRelation> violated;
  for (const auto& rel : gp_relations(pv.d, pv.n))
    if (!rel.evaluate(pv).is_zero()) violated.push_back(rel);
  return violated;
}

PluckerVector power_pv(const PluckerVector& pv, unsigned long k) {
  PluckerVector out = pv;
  for (Scalar& c : out.coords) c = c.is_zero() ? Scalar::zero(pv.field) : c.pow(k);
  return out;
}

std::optional<SignAssignment> sign_decomposable(const PluckerVector& pv) {
  int m = int(pv.coords.size());
  if (m > caps().sign_coords)
    throw Error(errc::too_large, "sign search space exceeds the cap");
  auto rels = gp_relations(pv.d, pv.n);

  // Precompute the signed term products; terms touching a zero coordinate
  // drop out of the sum entirely.
  struct FlatTerm {
    int l, r;
    Scalar prod;  // coef * pv[l] * pv[r]
  };
  std::vector<std::vector<FlatTerm>> flat;
  for (const auto& rel : rels) {
    std::vector<FlatTerm> f;
    for (const auto& t : rel.terms) {
      Scalar prod = pv.at(t.left) * pv.at(t.right);
      if (prod.is_zero()) continue;
      int l = subsets::comb_rank(t.left, pv.n);
      int r = subsets::comb_rank(t.right, pv.n);
      f.push_back({l, r, t.coef > 0 ? prod : -prod});
    }
    if (!f.empty()) flat.push_back(std::move(f));
  }

  std::vector<int> free_pos;  // nonzero coordinates after the first
  int first_nonzero = -1;
  for (int i = 0; i < m; ++i) {
    if (pv.coords[i].is_zero()) continue;
    if (first_nonzero < 0)
      first_nonzero = i;
    else
      free_pos.push_back(i);
  }

  std::vector<int> signs(m, 1);
  std::uint64_t total = std::uint64_t(1) << free_pos.size();
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    for (std::size_t i = 0; i < free_pos.size(); ++i)
      signs[free_pos[i]] = (bits >> i) & 1 ? -1 : 1;
    bool ok = true;
    for (const auto& rel : flat) {
      Scalar acc = Scalar::zero(pv.field);
      for (const FlatTerm& t : rel)
        acc = signs[t.l] * signs[t.r] > 0 ? acc + t.prod : acc - t.prod;
      if (!acc.is_zero()) {
        ok = false;
        break;
      }
    }
    if (ok) return SignAssignment{signs, pv.field.characteristic() == 0};
  }
  return std::nullopt;
}

IdealGenerators rgr_generators(int d, int n) {
  if (d <= 0 || d > n) throw Error(errc::bad_shape, "need 0 < d <= n");
  IdealGenerators gen;
  for (const auto& rel : gp_relations(d, n)) gen.quadrics.push_back(rel.str());
  if (d >= 2 && d + 2 <= n) {
    for (const auto& prefix : subsets::combinations(n, d - 2)) {
      std::vector<int> rest;
      for (int v = 0; v < n; ++v)
        if (!std::binary_search(prefix.begin(), prefix.end(), v)) rest.push_back(v);
      for (const auto& pick : subsets::combinations(int(rest.size()), 4)) {
        std::vector<std::string> factors;
        for (const auto& pair : subsets::combinations(4, 2)) {
          std::vector<int> idx = prefix;
          idx.push_back(rest[pick[pair[0]]]);
          idx.push_back(rest[pick[pair[1]]]);
          std::sort(idx.begin(), idx.end());
          factors.push_back(bracket_var(idx));
        }
        std::sort(factors.begin(), factors.end());
        std::ostringstream os;
        for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
        gen.monomials.push_back(os.str());
      }
    }
  }
  return gen;
}

}  // namespace arimat::plucker
