// qo: exact classification of quadratic plane-to-space maps up to affine
// equivalence.  See README.md for the input formats.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qo/classifier.hpp"
#include "qo/invariants.hpp"
#include "qo/mapdoc.hpp"
#include "qo/normalizer.hpp"
#include "qo/orbitdb.hpp"
#include "qo/verify.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct InputOpts {
  std::string input_file;
  std::string expr;
  std::string field = "C";
};

qo::QuadMap load_map(const InputOpts& opts) {
  qo::Field field = opts.field == "R" ? qo::Field::R : qo::Field::C;
  if (!opts.expr.empty()) return qo::parse_expr_map(opts.expr, field);
  std::string text;
  if (opts.input_file.empty() || opts.input_file == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(opts.input_file);
    if (!in) throw qo::MapDocError("cannot open " + opts.input_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  qo::QuadMap m = qo::parse_map_document(text);
  if (!opts.expr.empty() || opts.field != "C")
    m.field = field;  // --field overrides the document tag
  return m;
}

void add_input_opts(CLI::App* cmd, InputOpts& opts) {
  cmd->add_option("--input", opts.input_file, "JSON map document ('-' = stdin)");
  cmd->add_option("--expr", opts.expr, "components, e.g. \"x^2+y, y^2+x, xy\"");
  cmd->add_option("--field", opts.field, "C or R")
      ->check(CLI::IsMember({"C", "R"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact affine-orbit classifier for quadratic maps of the plane"};
  app.require_subcommand(1);

  InputOpts in_classify, in_invariants, in_witness;
  uint64_t seed = 0;
  bool json_flag = false, timings = false;
  double tolerance = 1e-8;
  std::string poset_format = "dot", family_edge;

  auto* c_classify = app.add_subcommand("classify", "orbit label and invariants");
  add_input_opts(c_classify, in_classify);
  c_classify->add_option("--seed", seed, "seed for the degree sampler");
  c_classify->add_flag("--json", json_flag, "JSON output (default)");
  c_classify->add_flag("--timings", timings, "include timings (non-reproducible)");

  auto* c_inv = app.add_subcommand("invariants", "full invariant report");
  add_input_opts(c_inv, in_invariants);
  c_inv->add_option("--seed", seed, "seed for the degree sampler");

  auto* c_wit = app.add_subcommand("witness", "equivalence witness to the normal form");
  add_input_opts(c_wit, in_witness);
  c_wit->add_option("--seed", seed, "seed for the degree sampler");
  c_wit->add_option("--tolerance", tolerance, "residual bound for approximate routes");

  auto* c_poset = app.add_subcommand("poset", "orbit-closure poset");
  c_poset->add_option("--format", poset_format, "dot or json")
      ->check(CLI::IsMember({"dot", "json"}));

  auto* c_family = app.add_subcommand("family", "verify degeneration families");
  c_family->add_option("--edge", family_edge, "single family, e.g. G2:G3");
  c_family->add_option("--seed", seed, "seed for the degree sampler");

  auto* c_self = app.add_subcommand("selftest",
                                    "identity self-tests and family verification");
  c_self->add_option("--seed", seed, "seed for the degree sampler");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*c_classify) {
      auto F = load_map(in_classify);
      auto t0 = std::chrono::steady_clock::now();
      auto rep = qo::classify(F, seed);
      double ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
      std::cout << qo::classification_json(F, rep, timings, ms);
    } else if (*c_inv) {
      auto F = load_map(in_invariants);
      std::cout << qo::invariants_json(F, seed);
    } else if (*c_wit) {
      auto F = load_map(in_witness);
      auto rep = qo::classify(F, seed);
      auto red = qo::reduce_ambient(F);
      auto wit = qo::find_witness(red.reduced, rep.label, tolerance, seed);
      std::cout << qo::witness_json(F, wit, rep.label.str());
    } else if (*c_poset) {
      std::cout << (poset_format == "dot" ? qo::poset_dot() : qo::poset_json());
    } else if (*c_family) {
      auto checks = qo::verify_families(seed);
      bool any = false, ok = true;
      for (const auto& c : checks) {
        std::string name = c.name;
        std::string norm = name;
        std::replace(norm.begin(), norm.end(), '-', ':');
        norm.erase(std::remove(norm.begin(), norm.end(), '>'), norm.end());
        if (!family_edge.empty() && norm != family_edge) continue;
        any = true;
        ok = ok && c.pass;
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name
                  << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
      }
      if (!family_edge.empty() && !any) {
        std::cerr << "unknown family edge " << family_edge << "\n";
        return kExitInput;
      }
      if (!ok) return kExitInternal;
    } else if (*c_self) {
      bool ok = true;
      for (const auto& c : qo::identity_selftests()) {
        ok = ok && c.pass;
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name
                  << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
      }
      for (const auto& c : qo::verify_families(seed)) {
        ok = ok && c.pass;
        std::cout << (c.pass ? "PASS " : "FAIL ") << "family " << c.name
                  << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
      }
      if (!ok) return kExitInternal;
    }
  } catch (const qo::MapDocError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const qo::UnsupportedLabelError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
