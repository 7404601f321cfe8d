// bmv: construct and verify the representing measure of Tr e^{A - tB}.
//
// Exit codes: 0 success (verify: pass), 2 parse/validation error,
// 3 numerical failure, 4 verification ran and failed.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bmv/branch_points.hpp"
#include "bmv/errors.hpp"
#include "bmv/instance_gen.hpp"
#include "bmv/json_io.hpp"
#include "bmv/laplace.hpp"
#include "bmv/measure.hpp"
#include "bmv/trace.hpp"
#include "bmv/verify.hpp"

namespace {

int log_level() {
  static const int level = [] {
    const char* v = std::getenv("BMV_LOG");
    return v ? std::atoi(v) : 0;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[bmv] " << msg << "\n";
}

struct CommonOpts {
  std::string input;
  std::string output;
  double epsilon = 0.0;
  double radius_factor = 1.5;
  int nodes_per_interval = 32;
  int contour_nodes = 256;
  std::string t_grid_text;
  bool no_timing = false;
};

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size())
      throw bmv::ParseError("bad grid entry: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw bmv::ParseError("grid list is empty");
  std::sort(out.begin(), out.end());
  return out;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty())
    std::cout << content;
  else
    bmv::io::write_file(path, content);
}

bmv::core::HermitianPair load_pair(const CommonOpts& opts) {
  const bmv::Instance inst =
      bmv::io::parse_instance_json(bmv::io::read_file(opts.input));
  bmv::core::HermitianPair pair = bmv::core::validate_pair(inst.a, inst.b);
  if (opts.epsilon > 0.0) {
    pair = bmv::measure::perturb_B(pair, opts.epsilon);
    log_info("applied perturb_B with epsilon=" + std::to_string(opts.epsilon));
  }
  if (!pair.flags().commuting &&
      (!pair.flags().distinct_b || !pair.flags().positive_b))
    throw bmv::DegenerateB(
        "B has repeated or non-positive eigenvalues; rerun with --epsilon > 0 "
        "to apply the diagonal regularization perturb_B (B + eps*diag(1..n))");
  return pair;
}

bmv::measure::GridSpec grid_from(const CommonOpts& opts) {
  bmv::measure::GridSpec grid;
  grid.nodes_per_interval = opts.nodes_per_interval;
  grid.contour_nodes = opts.contour_nodes;
  grid.radius_factor = opts.radius_factor;
  grid.epsilon = opts.epsilon;
  return grid;
}

std::string with_suffix(const std::string& base, const std::string& suffix) {
  const std::size_t dot = base.find_last_of('.');
  if (dot == std::string::npos || base.find('/', dot) != std::string::npos)
    return base + suffix;
  return base.substr(0, dot) + suffix;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"representing-measure construction and verification for "
               "f(t) = Tr e^{A - tB}"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::uint64_t seed = 0;
  int gen_n = 2;
  bool gen_commuting = false;
  bool gen_dense_b = false;
  double gen_a_scale = 0.5;
  std::string s_grid_text;
  double search_radius = 0.0;
  bool inject_fault = false;
  std::string csv_path;
  bmv::laplace::VerifyConfig vcfg;

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    if (needs_input)
      cmd->add_option("-i,--input", opts.input, "instance JSON file")
          ->required();
    cmd->add_option("-o,--output", opts.output, "output path (default stdout)");
    cmd->add_option("--epsilon", opts.epsilon,
                    "perturb_B regularization strength")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--radius-factor", opts.radius_factor,
                    "contour radius over the outermost branch point")
        ->check(CLI::Range(1.5, 100.0));
    cmd->add_option("--nodes-per-interval", opts.nodes_per_interval,
                    "Gauss-Legendre nodes per atom interval")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--contour-nodes", opts.contour_nodes,
                    "initial trapezoidal node count (doubled until stable)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--t-grid", opts.t_grid_text,
                    "comma-separated t values, e.g. 0,0.5,1");
    cmd->add_flag("--no-timing", opts.no_timing,
                  "omit wall-clock fields from reports");
  };

  CLI::App* inspect = app.add_subcommand("inspect", "validate an instance and "
                                                    "print flags, b_j, a_jj");
  add_common(inspect, true);

  CLI::App* gen = app.add_subcommand("gen", "write a random instance");
  add_common(gen, false);
  gen->add_option("--seed", seed, "generator seed")->required();
  gen->add_option("--n", gen_n, "dimension")->required()->check(CLI::Range(1, 16));
  gen->add_flag("--commuting", gen_commuting, "commuting pair");
  gen->add_flag("--dense-b", gen_dense_b,
                "PSD B via G G^dagger instead of diagonal");
  gen->add_option("--a-scale", gen_a_scale, "entry scale of A")
      ->check(CLI::PositiveNumber);

  CLI::App* bp = app.add_subcommand("branch-points",
                                    "discriminant zeros with monodromy class");
  add_common(bp, true);
  bp->add_option("--search-radius", search_radius, "override the scan radius")
      ->check(CLI::PositiveNumber);

  CLI::App* build = app.add_subcommand("build", "construct the measure");
  add_common(build, true);
  build->add_option("--csv", csv_path, "density CSV path");

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "build the measure and verify every claim");
  add_common(verify_cmd, true);
  verify_cmd->add_flag("--inject-fault", inject_fault,
                       "self-test: negate one density sample");
  verify_cmd->add_option("--s-grid", s_grid_text,
                         "probe points for the oracle cross-check");
  verify_cmd->add_option("--laplace-tol", vcfg.tol.laplace_rel)
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--positivity-tol", vcfg.tol.positivity)
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--support-tol", vcfg.tol.support)
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--mass-tol", vcfg.tol.mass_rel)
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--oracle-tol", vcfg.tol.oracle_abs)
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--proof-diamond-tol", vcfg.tol.proof_diamond)
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--proof-star-tol", vcfg.tol.proof_star)
      ->check(CLI::PositiveNumber);

  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "inverse-Laplace density oracle at probe points");
  add_common(oracle_cmd, true);
  oracle_cmd->add_option("--s-grid", s_grid_text, "probe points");

  CLI::App* plot = app.add_subcommand(
      "plot-data", "CSV of (t, f, L(mu)) and (s, omega) for plotting");
  add_common(plot, true);

  CLI::App* proof = app.add_subcommand("proof-check",
                                       "contour identity residuals");
  add_common(proof, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (*inspect) {
      const bmv::Instance inst =
          bmv::io::parse_instance_json(bmv::io::read_file(opts.input));
      const auto pair = bmv::core::validate_pair(inst.a, inst.b);
      emit(opts.output, bmv::io::inspect_to_json(pair));
      return 0;
    }

    if (*gen) {
      bmv::GenSpec spec;
      spec.n = gen_n;
      spec.seed = seed;
      spec.commuting = gen_commuting;
      spec.diag_b = !gen_dense_b;
      spec.a_scale = gen_a_scale;
      emit(opts.output, bmv::io::instance_to_json(bmv::gen_instance(spec)));
      return 0;
    }

    if (*bp) {
      const auto pair = load_pair(opts);
      const auto points =
          search_radius > 0.0
              ? bmv::spectral::branch_points(pair, search_radius)
              : bmv::spectral::scan_branch_points(pair).inside;
      emit(opts.output, bmv::io::branch_points_to_json(points));
      return 0;
    }

    if (*build) {
      const auto pair = load_pair(opts);
      const auto m = bmv::measure::build_measure(pair, grid_from(opts));
      emit(opts.output, bmv::io::measure_to_json(m));
      if (!csv_path.empty())
        bmv::io::write_file(csv_path, bmv::io::density_csv(m));
      else if (!opts.output.empty())
        bmv::io::write_file(with_suffix(opts.output, ".csv"),
                            bmv::io::density_csv(m));
      return 0;
    }

    if (*verify_cmd) {
      const auto start = std::chrono::steady_clock::now();
      const auto pair = load_pair(opts);
      auto m = bmv::measure::build_measure(pair, grid_from(opts));
      if (inject_fault) {
        if (m.density.empty())
          throw bmv::ParseError("--inject-fault needs a density "
                                "(non-commuting instance)");
        std::size_t arg = 0;
        for (std::size_t i = 0; i < m.density.size(); ++i)
          if (std::abs(m.density[i].value) > std::abs(m.density[arg].value))
            arg = i;
        m.density[arg].value =
            -std::abs(m.density[arg].value) - 0.05 * (1.0 + m.max_density());
        log_info("injected a negated density sample");
      }
      if (!opts.t_grid_text.empty()) vcfg.t_grid = parse_grid(opts.t_grid_text);
      if (!s_grid_text.empty()) vcfg.s_probes = parse_grid(s_grid_text);
      vcfg.radius_factor = opts.radius_factor;
      vcfg.contour_nodes = opts.contour_nodes;
      const auto rep = bmv::laplace::verify(pair, m, vcfg);
      const double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
      emit(opts.output, bmv::io::report_to_json(rep, !opts.no_timing, ms));
      return rep.pass ? 0 : 4;
    }

    if (*oracle_cmd) {
      const auto pair = load_pair(opts);
      const std::vector<double> probes =
          s_grid_text.empty() ? bmv::laplace::default_probe_points(pair)
                              : parse_grid(s_grid_text);
      std::vector<double> values;
      for (double s : probes)
        values.push_back(bmv::laplace::bromwich_oracle(pair, s));
      emit(opts.output, bmv::io::oracle_csv(probes, values));
      return 0;
    }

    if (*plot) {
      const auto pair = load_pair(opts);
      const auto m = bmv::measure::build_measure(pair, grid_from(opts));
      std::vector<double> ts = {0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0};
      if (!opts.t_grid_text.empty()) ts = parse_grid(opts.t_grid_text);
      std::vector<double> fs, ls;
      for (double t : ts) {
        fs.push_back(bmv::core::trace_exp_real(pair, t));
        ls.push_back(bmv::laplace::laplace_of_measure(m, t));
      }
      const std::string base = opts.output.empty() ? "plot" : opts.output;
      bmv::io::write_file(with_suffix(base, ".laplace.csv"),
                          bmv::io::laplace_csv(ts, fs, ls));
      bmv::io::write_file(with_suffix(base, ".density.csv"),
                          bmv::io::density_csv(m));
      return 0;
    }

    if (*proof) {
      const auto pair = load_pair(opts);
      std::vector<double> ts = {0.7, 1.3};
      if (!opts.t_grid_text.empty()) ts = parse_grid(opts.t_grid_text);
      double t_max = 0.0;
      for (double t : ts) t_max = std::max(t_max, t);
      auto cp = bmv::spectral::build_contour_table(pair, opts.radius_factor,
                                                   opts.contour_nodes);
      if (1.6 * t_max > cp.contour.radius)
        cp = bmv::spectral::build_contour_table(
            pair, opts.radius_factor, opts.contour_nodes, 1.6 * t_max);
      std::vector<bmv::laplace::ProofIdentityResult> results;
      for (double t : ts)
        results.push_back(bmv::laplace::proof_identity_check(
            pair, t, cp.contour, cp.table));
      emit(opts.output, bmv::io::proof_to_json(results));
      return 0;
    }
  } catch (const bmv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.category() == bmv::ErrorCategory::validation ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
