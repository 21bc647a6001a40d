// Command-line front end: construct named interaction instances, sweep the
// disturbance grid, run the verification battery, or canonicalize an
// externally supplied interaction. Exit codes: 0 success, 1 verification
// failure, 2 usage or input error.

#include "eveopt/oracle.hpp"
#include "eveopt/serialization.hpp"
#include "eveopt/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace eveopt;

struct ConstructArgs {
  std::string family = "general";
  double dxy = 0.25;
  double duv = 0.25;
  double a = 0.5;
  std::uint64_t seed = 1;
  bool a_set = false;
  bool seed_set = false;
  bool bits = false;
};

int cmd_construct(const ConstructArgs& args) {
  const Family family = family_from_string(args.family);
  if (args.a_set && family != Family::OneParam) {
    std::cerr << "error: --a applies to the one-param family only\n";
    return 2;
  }
  if (args.seed_set && family != Family::Rotated) {
    std::cerr << "error: --seed applies to the rotated family only\n";
    return 2;
  }
  const DisturbancePair d{args.dxy, args.duv};
  const InteractionVectors iv = make_interaction(family, d, args.a, args.seed);
  const EavesdropReport rep = full_report(iv, d);
  nlohmann::ordered_json j = report_json({iv, d}, rep, args.bits);
  j["family"] = args.family;
  if (family == Family::OneParam) j["a"] = args.a;
  if (family == Family::Rotated) j["seed"] = args.seed;
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct SweepArgs {
  double dmin = 0.05;
  double dmax = 0.45;
  int steps = 9;
  std::string family = "general";
  double a = 0.5;
  std::uint64_t seed = 1;
  std::string out;
  bool bits = false;
  bool serial = false;
};

int cmd_sweep(const SweepArgs& args) {
  SweepConfig cfg;
  cfg.dmin = args.dmin;
  cfg.dmax = args.dmax;
  cfg.steps = args.steps;
  cfg.family = family_from_string(args.family);
  cfg.a = args.a;
  cfg.seed = args.seed;
  cfg.parallel = !args.serial;
  const std::vector<SweepRow> rows = sweep_grid(cfg);
  if (args.out == "-") {
    write_csv(std::cout, rows, args.bits);
    return 0;
  }
  std::ofstream out(args.out, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output path '" << args.out << "'\n";
    return 2;
  }
  write_csv(out, rows, args.bits);
  if (!out.good()) {
    std::cerr << "error: write failed for '" << args.out << "'\n";
    return 2;
  }
  return 0;
}

struct VerifyArgs {
  int trials = 10000;
  std::uint64_t seed = 1;
  bool serial = false;
};

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

void dump_offender(const InteractionVectors& iv, const DisturbancePair& d) {
  std::cerr << "offending instance:\n" << to_json(InteractionDocument{iv, d}).dump(2) << "\n";
}

int cmd_verify(const VerifyArgs& args) {
  if (args.trials < 1) {
    std::cerr << "error: --trials must be >= 1\n";
    return 2;
  }
  std::vector<PropertyResult> results;
  std::vector<double> grid;
  for (int i = 0; i < 9; ++i) grid.push_back(0.05 + 0.05 * i);

  const std::array<Family, 4> rect_families = {Family::General, Family::FuchsUnequal,
                                               Family::OneParam, Family::Rotated};
  bool fail = false;

  // Bound achievement, optimality conditions, sign lemma and canonical
  // pattern, all families over the grid (fuchs2 on the diagonal).
  {
    double worst_slack_g = 0.0, worst_slack_i = 0.0, worst_residual = 0.0, worst_dev = 0.0;
    bool signs_ok = true, all_ok = true;
    auto inspect = [&](Family f, const DisturbancePair& d, std::uint64_t inst_seed) {
      const InteractionVectors iv = make_interaction(f, d, 0.5, inst_seed);
      const EavesdropReport rep = full_report(iv, d);
      worst_slack_g = std::max(worst_slack_g, std::abs(rep.bounds.slack_g()));
      worst_slack_i = std::max(worst_slack_i, std::abs(rep.bounds.slack_i()));
      worst_residual = std::max(worst_residual, rep.conditions.max_residual());
      worst_dev = std::max(worst_dev, rep.canonical.max_deviation);
      const std::array<int, 4> expected = {1, -1, 1, -1};
      for (int l = 0; l < 4; ++l) {
        const double ev = rep.canonical.eigenvalues[static_cast<std::size_t>(l)];
        if (rep.conditions.epsilon[static_cast<std::size_t>(l)] != expected[static_cast<std::size_t>(l)] ||
            (std::abs(ev) > 1e-12 &&
             rep.conditions.epsilon[static_cast<std::size_t>(l)] != (ev > 0 ? 1 : -1))) {
          signs_ok = false;
        }
      }
      const bool ok = rep.optimal && rep.conditions.verdict && rep.canonical.matches_pattern;
      if (!ok && all_ok) {
        all_ok = false;
        dump_offender(iv, d);
      }
    };
    std::uint64_t idx = 0;
    for (Family f : rect_families) {
      for (double dx : grid) {
        for (double du : grid) inspect(f, {dx, du}, mix_seed(args.seed, idx++));
      }
    }
    for (double dd : grid) inspect(Family::FuchsEqual, {dd, dd}, 0);

    results.push_back({"gain bound achieved", all_ok && worst_slack_g <= 1e-9,
                       "max |slack_g| = " + format_number(worst_slack_g)});
    results.push_back({"mutual-information bound achieved", all_ok && worst_slack_i <= 1e-9,
                       "max |slack_i| = " + format_number(worst_slack_i)});
    results.push_back({"optimality conditions", all_ok && worst_residual <= 1e-9,
                       "max residual = " + format_number(worst_residual)});
    results.push_back({"sign lemma (epsilon = sgn gamma)", signs_ok, signs_ok ? "all matched" : "mismatch"});
    results.push_back({"canonical form matches pattern", all_ok && worst_dev <= 1e-9,
                       "max deviation = " + format_number(worst_dev)});
  }

  // Random-POVM dominance against the trace-norm optimum.
  {
    double worst_excess = -1.0, worst_attain = 0.0;
    bool ok = true;
    std::uint64_t idx = 0;
    for (double dx : grid) {
      for (double du : grid) {
        const DisturbancePair d{dx, du};
        const InteractionVectors iv = make_interaction(Family::General, d);
        const JointStates js = joint_states(iv, d, false);
        const Operator rho_x = eve_density(js, Signal::X);
        const Operator rho_y = eve_density(js, Signal::Y);
        const double optimum = trace_norm(gamma_operator(rho_x, rho_y));
        const SampleConfig cfg{mix_seed(args.seed, 0x0D0Eull + idx++), args.trials};
        const double found = args.serial ? max_gain_search_serial(rho_x, rho_y, cfg)
                                         : max_gain_search(rho_x, rho_y, cfg);
        worst_excess = std::max(worst_excess, found - optimum);
        worst_attain = std::max(worst_attain, optimum - found);
        if (found > optimum + 1e-9 || optimum - found > 1e-10) {
          if (ok) dump_offender(iv, d);
          ok = false;
        }
      }
    }
    results.push_back({"random-POVM dominance", ok,
                       "max excess = " + format_number(worst_excess) +
                           ", attainment gap = " + format_number(worst_attain)});
  }

  // Canonical-form uniqueness across random rotations and the named families.
  {
    const DisturbancePair d{0.25, 0.25};
    const CanonicalForm ref = canonicalize(make_interaction(Family::General, d), d);
    double spread = 0.0;
    bool ok = ref.matches_pattern;
    auto compare = [&](const InteractionVectors& iv) {
      const CanonicalForm form = canonicalize(iv, d);
      spread = std::max(spread, (form.coefficients - ref.coefficients).cwiseAbs().maxCoeff());
      if (!form.matches_pattern) {
        if (ok) dump_offender(iv, d);
        ok = false;
      }
    };
    for (int k = 0; k < 100; ++k) {
      compare(build_rotated(d, random_orthogonal({mix_seed(args.seed, 0xCAFEull + static_cast<std::uint64_t>(k)), 1})));
    }
    compare(make_interaction(Family::FuchsUnequal, d));
    compare(make_interaction(Family::FuchsEqual, d));
    compare(make_interaction(Family::OneParam, d, 0.5));
    results.push_back({"canonical-form uniqueness", ok && spread <= 1e-9,
                       "coefficient spread = " + format_number(spread)});
  }

  // Expected-fail canary: a POVM rotated off the eigenbasis must be caught.
  {
    const DisturbancePair d{0.25, 0.25};
    const InteractionVectors iv = make_interaction(Family::General, d);
    const EavesdropReport rep = full_report(iv, d);
    std::vector<Ket> basis = rep.canonical.eigenbasis;
    const double theta = 0.1;
    const Ket e0 = basis[0], e1 = basis[1];
    basis[0] = std::cos(theta) * e0 + std::sin(theta) * e1;
    basis[1] = -std::sin(theta) * e0 + std::cos(theta) * e1;
    const ConditionReport canary =
        check_optimality_conditions(joint_states(iv, d), projector_povm(basis), d);
    const bool tripped = !canary.verdict && canary.max_residual() > 1e-3;
    results.push_back({"perturbed-POVM canary (expected fail)", tripped,
                       "residual = " + format_number(canary.max_residual())});
  }

  for (const PropertyResult& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.detail << ")\n";
    fail = fail || !r.pass;
  }
  std::cout << (fail ? "verification FAILED\n" : "all properties passed\n");
  return fail ? 1 : 0;
}

int cmd_canonicalize(const std::string& path) {
  InteractionDocument doc;
  try {
    doc = load_interaction_document(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const EavesdropReport rep = full_report(doc.iv, doc.d);
  nlohmann::ordered_json j;
  j["canonical"] = to_json(rep.canonical);
  j["gain"] = {{"achieved", rep.bounds.g_achieved}, {"bound", rep.bounds.g_bound}};
  j["mutual_information"] = {{"achieved", rep.bounds.i_achieved}, {"bound", rep.bounds.i_bound}};
  j["slack_g"] = rep.bounds.slack_g();
  j["slack_i"] = rep.bounds.slack_i();
  j["optimal"] = rep.optimal;
  j["matches_pattern"] = rep.canonical.matches_pattern;
  if (rep.canonical.degenerate) {
    j["notice"] = "degenerate spectrum: canonical representative is not unique";
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal-eavesdropping analysis for conjugate-basis qubit signals"};
  app.require_subcommand(1);

  ConstructArgs cargs;
  CLI::App* construct = app.add_subcommand("construct", "build a named optimal interaction and report on it");
  construct->add_option("--family", cargs.family, "general|fuchs1|fuchs2|one-param|rotated")->capture_default_str();
  construct->add_option("--dxy", cargs.dxy, "disturbance in the x-y basis")->capture_default_str();
  construct->add_option("--duv", cargs.duv, "disturbance in the u-v basis")->capture_default_str();
  construct->add_option("--a", cargs.a, "one-param family parameter in [0,1]")->each([&](const std::string&) { cargs.a_set = true; });
  construct->add_option("--seed", cargs.seed, "rotation seed (rotated family)")->each([&](const std::string&) { cargs.seed_set = true; });
  construct->add_flag("--bits", cargs.bits, "report mutual information in bits");

  SweepArgs sargs;
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate a disturbance grid and write CSV");
  sweep->add_option("--dmin", sargs.dmin)->capture_default_str();
  sweep->add_option("--dmax", sargs.dmax)->capture_default_str();
  sweep->add_option("--steps", sargs.steps)->capture_default_str();
  sweep->add_option("--family", sargs.family)->capture_default_str();
  sweep->add_option("--a", sargs.a, "one-param family parameter")->capture_default_str();
  sweep->add_option("--seed", sargs.seed, "rotation seed (rotated family)")->capture_default_str();
  sweep->add_option("--out", sargs.out, "output CSV path ('-' for stdout)")->required();
  sweep->add_flag("--bits", sargs.bits, "mutual-information columns in bits");
  sweep->add_flag("--serial", sargs.serial, "disable the parallel grid kernel");

  VerifyArgs vargs;
  CLI::App* verify = app.add_subcommand("verify", "run the full property battery");
  verify->add_option("--trials", vargs.trials, "random POVMs per grid instance")->capture_default_str();
  verify->add_option("--seed", vargs.seed)->capture_default_str();
  verify->add_flag("--serial", vargs.serial, "use the serial dominance kernel");

  std::string canon_path;
  CLI::App* canon = app.add_subcommand("canonicalize", "canonicalize an interaction document");
  canon->add_option("input", canon_path, "path to an interaction JSON document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (construct->parsed()) return cmd_construct(cargs);
    if (sweep->parsed()) return cmd_sweep(sargs);
    if (verify->parsed()) return cmd_verify(vargs);
    if (canon->parsed()) return cmd_canonicalize(canon_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
