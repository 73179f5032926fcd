#include "arimat/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "arimat/caps.hpp"
#include "arimat/io.hpp"

namespace arimat::cli {

using json = nlohmann::json;

namespace {

std::string read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") {
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }
  std::ifstream f(path);
  if (!f) throw Error(errc::parse_error, "cannot open input file '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_output(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(errc::parse_error, "cannot open output file '" + path + "'");
  f << text;
}

void check_field(const exactmat::Matrix& m, const std::string& want) {
  if (!want.empty() && !(exactmat::Field::parse(want) == m.field()))
    throw Error(errc::parse_error, "input field is " + m.field().str() + ", expected " + want);
}

std::string error_doc(const Error& e) {
  return json{{"error", errc_name(e.code())}, {"detail", e.what()}}.dump(2) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  if (const char* cap = std::getenv("ARIMAT_CAP")) {
    char* end = nullptr;
    long v = std::strtol(cap, &end, 10);
    if (end && *end == '\0' && v > 0) set_all_caps(int(v));
  }

  CLI::App app{"exact Plucker powering and arithmetic-matroid toolkit"};
  app.require_subcommand(1);

  std::string input, input2, output, field_opt, mode_opt = "up-to-sign";
  unsigned long k = 2, k1 = 1, k2 = 1, prime = 3;
  int r_opt = 2, d_opt = 0, n_opt = 0;

  auto add_io = [&](CLI::App* cmd, bool two_inputs = false) {
    if (two_inputs) {
      cmd->add_option("inputs", input, "first input file")->required();
      cmd->add_option("input2", input2, "second input file")->required();
    } else {
      cmd->add_option("--input,-i", input, "input file (default: standard input)");
    }
    cmd->add_option("--output,-o", output, "output file (default: standard output)");
  };

  CLI::App* c_plucker = app.add_subcommand("plucker", "maximal minors of a full-rank matrix");
  add_io(c_plucker);
  c_plucker->add_option("--field", field_opt, "expected field of the input");

  CLI::App* c_gpverify = app.add_subcommand("gp-verify", "check the Grassmann-Plucker relations");
  add_io(c_gpverify);
  c_gpverify->add_option("--field", field_opt, "expected field of the input");

  CLI::App* c_regular = app.add_subcommand("regular", "decide regularity of the represented matroid");
  add_io(c_regular);
  c_regular->add_option("--field", field_opt, "expected field of the input");

  CLI::App* c_u24 = app.add_subcommand("u24", "search for a U(2,4) minor");
  add_io(c_u24);
  c_u24->add_option("--field", field_opt, "expected field of the input");

  CLI::App* c_decompose = app.add_subcommand("decompose", "factor X = T A D with A totally unimodular");
  add_io(c_decompose);

  CLI::App* c_power = app.add_subcommand("power", "matrix with the k-th power Plucker vector");
  add_io(c_power);
  c_power->add_option("-k", k, "exponent")->required();
  c_power->add_option("--mode", mode_opt, "up-to-sign | odd-exact | sign-preserving");

  CLI::App* c_power2 = app.add_subcommand("power2", "mixed power of two Plucker vectors");
  add_io(c_power2, true);
  c_power2->add_option("--k1", k1, "first exponent");
  c_power2->add_option("--k2", k2, "second exponent");
  c_power2->add_option("--mode", mode_opt, "up-to-sign | odd-exact | sign-preserving");

  CLI::App* c_arith = app.add_subcommand("arith", "multiplicity table and classification of a list");
  add_io(c_arith);

  CLI::App* c_arithpow = app.add_subcommand("arith-power", "representation of the powered arithmetic matroid");
  add_io(c_arithpow);
  c_arithpow->add_option("-k", k, "exponent")->required();

  CLI::App* c_gpcheck = app.add_subcommand("gp-check", "GP_r necessary condition on a multiplicity table");
  add_io(c_gpcheck);
  c_gpcheck->add_option("-r", r_opt, "order of the condition");

  CLI::App* c_gcd = app.add_subcommand("gcd-check", "gcd consistency of dependent-set multiplicities");
  add_io(c_gcd);

  CLI::App* c_axioms = app.add_subcommand("axioms", "multiplicity axioms (P), (A1), (A2)");
  add_io(c_axioms);

  CLI::App* c_labelled = app.add_subcommand("labelled-graph", "group list of a labelled graph");
  add_io(c_labelled);
  c_labelled->add_option("-k", k, "power applied to the labels")->default_val(1);

  CLI::App* c_rgr = app.add_subcommand("rgr-ideal", "generators of the regular-Grassmannian ideal");
  c_rgr->add_option("-d", d_opt, "rank")->required();
  c_rgr->add_option("-n", n_opt, "number of columns")->required();
  c_rgr->add_option("--output,-o", output, "output file (default: standard output)");

  CLI::App* c_counter = app.add_subcommand("counterexample", "finite-field powering counterexample");
  c_counter->add_option("-p", prime, "field characteristic")->required();
  c_counter->add_option("-k", k, "exponent")->required();
  c_counter->add_option("--output,-o", output, "output file (default: standard output)");

  std::vector<std::string> argv = args;
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  auto mode_of = [&]() {
    if (mode_opt == "up-to-sign") return decompose::PowerMode::up_to_sign;
    if (mode_opt == "odd-exact") return decompose::PowerMode::odd_exact;
    if (mode_opt == "sign-preserving") return decompose::PowerMode::sign_preserving;
    throw Error(errc::parse_error, "unknown mode '" + mode_opt + "'");
  };

  try {
    if (app.got_subcommand(c_plucker)) {
      exactmat::Matrix m = io::parse_matrix(read_input(input, in));
      check_field(m, field_opt);
      write_output(output, out, io::serialize(exactmat::plucker(m)));
      return 0;
    }

    if (app.got_subcommand(c_gpverify)) {
      std::string text = read_input(input, in);
      exactmat::PluckerVector pv;
      if (text.find("\"coords\"") != std::string::npos) {
        pv = io::parse_plucker(text);
      } else {
        exactmat::Matrix m = io::parse_matrix(text);
        check_field(m, field_opt);
        pv = exactmat::plucker(m);
      }
      auto violated = plucker::gp_verify(pv);
      json doc{{"pass", violated.empty()}, {"violated", json::array()}};
      for (const auto& rel : violated) doc["violated"].push_back(rel.str());
      write_output(output, out, doc.dump(2) + "\n");
      return violated.empty() ? 0 : 2;
    }

    if (app.got_subcommand(c_regular) || app.got_subcommand(c_u24)) {
      exactmat::Matrix m = io::parse_matrix(read_input(input, in));
      check_field(m, field_opt);
      auto w = matroid::find_u24(matroid::MatroidView(m));
      bool u24_cmd = app.got_subcommand(c_u24);
      json doc;
      if (u24_cmd)
        doc["found"] = w.has_value();
      else
        doc["regular"] = !w.has_value();
      if (w) doc["witness"] = json::parse(io::serialize(*w));
      write_output(output, out, doc.dump(2) + "\n");
      return w ? 2 : 0;
    }

    if (app.got_subcommand(c_decompose)) {
      exactmat::Matrix m = io::parse_matrix(read_input(input, in));
      write_output(output, out, io::serialize(decompose::tad(m)));
      return 0;
    }

    if (app.got_subcommand(c_power)) {
      exactmat::Matrix m = io::parse_matrix(read_input(input, in));
      write_output(output, out, io::serialize(decompose::power_matrix(m, k, mode_of())));
      return 0;
    }

    if (app.got_subcommand(c_power2)) {
      exactmat::Matrix m1 = io::parse_matrix(read_input(input, in));
      exactmat::Matrix m2 = io::parse_matrix(read_input(input2, in));
      write_output(output, out, io::serialize(decompose::power_two(m1, m2, k1, k2, mode_of())));
      return 0;
    }

    if (app.got_subcommand(c_arith)) {
      ari::GroupList gl = io::parse_group_list(read_input(input, in));
      json doc;
      doc["classification"] = json::parse(io::serialize(ari::classify(gl)));
      doc["table"] = json::parse(io::serialize(ari::full_table(gl)));
      if (gl.torsion_free()) {
        auto b = ari::find_multiplicative_basis(gl);
        doc["multiplicative_basis"] =
            b ? json(subsets::indices_to_string(*b)) : json(nullptr);
      }
      write_output(output, out, doc.dump(2) + "\n");
      return 0;
    }

    if (app.got_subcommand(c_arithpow)) {
      ari::GroupList gl = io::parse_group_list(read_input(input, in));
      try {
        write_output(output, out, io::serialize(ari::arith_power(gl, k)));
        return 0;
      } catch (const gpcheck::NonRegularError& e) {
        json doc{{"error", "NonRegular"},
                 {"detail", e.what()},
                 {"certificate", json::parse(io::serialize(e.certificate()))}};
        write_output(output, out, doc.dump(2) + "\n");
        return 2;
      }
    }

    if (app.got_subcommand(c_gpcheck)) {
      ari::MultiplicityTable t = io::parse_table(read_input(input, in));
      auto rep = gpcheck::gp_r_check(t, r_opt);
      write_output(output, out, io::serialize(rep));
      return rep.pass ? 0 : 2;
    }

    if (app.got_subcommand(c_gcd)) {
      ari::MultiplicityTable t = io::parse_table(read_input(input, in));
      auto v = ari::gcd_consistency(t);
      write_output(output, out, io::serialize(v));
      return v.empty() ? 0 : 2;
    }

    if (app.got_subcommand(c_axioms)) {
      ari::MultiplicityTable t = io::parse_table(read_input(input, in));
      auto rep = ari::verify_axioms(t);
      write_output(output, out, io::serialize(rep));
      return rep.pass ? 0 : 2;
    }

    if (app.got_subcommand(c_labelled)) {
      ari::LabelledGraph g = io::parse_labelled_graph(read_input(input, in));
      write_output(output, out, io::serialize(ari::labelled_power(g, k)));
      return 0;
    }

    if (app.got_subcommand(c_rgr)) {
      write_output(output, out, io::serialize(plucker::rgr_generators(d_opt, n_opt)));
      return 0;
    }

    if (app.got_subcommand(c_counter)) {
      auto c = decompose::counterexample_fp(prime, k);
      if (!c) {
        write_output(output, out, json{{"found", false}}.dump(2) + "\n");
        return 2;
      }
      write_output(output, out, io::serialize(*c));
      return 0;
    }
  } catch (const Error& e) {
    switch (e.code()) {
      case errc::not_regular:
      case errc::non_regular:
      case errc::no_multiplicative_basis:
        write_output(output, out, error_doc(e));
        return 2;
      default:
        err << "error: " << e.what() << "\n";
        return 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  err << "error: no command\n";
  return 1;
}

}  // namespace arimat::cli
