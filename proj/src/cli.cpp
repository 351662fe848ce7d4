#include "xduct/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "xduct/config.hpp"
#include "xduct/errors.hpp"
#include "xduct/experiments.hpp"
#include "xduct/output.hpp"
#include "xduct/units.hpp"
#include "xduct/verification.hpp"

namespace xduct::cli {

namespace {

using units::hz_to_rad;
using units::rad_to_hz;

struct Options {
  std::string config;
  std::string output;
  std::string probe_at;
  std::string protocol;
  int n_sidebands = 0;
  double from_hz = 0.0;
  double to_hz = 0.0;
  int points = 0;
  bool oracle = false;
  double lo_hz = 0.0;
  double hi_hz = 0.0;
  int n_max = 5;
};

double probe_omega(const Options& o, const RunConfig& c) {
  if (o.probe_at.empty()) return c.probe_or_omega_m();
  if (o.probe_at == "omega-m") return c.params.omega_m;
  try {
    std::size_t pos = 0;
    const double hz = std::stod(o.probe_at, &pos);
    if (pos == o.probe_at.size()) return hz_to_rad(hz);
  } catch (const std::exception&) {
  }
  throw ValidationError("invalid --probe-at value: " + o.probe_at);
}

DriveProtocol drive_from(const Options& o, const RunConfig& c) {
  DriveProtocol d = c.drive;
  if (o.protocol == "constant") d.mode = DriveMode::Constant;
  if (o.protocol == "parametric") d.mode = DriveMode::Parametric;
  if (o.n_sidebands > 0) d.n_sidebands = o.n_sidebands;
  validate(d);
  return d;
}

// Writes to --output when given, else to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ValidationError("cannot open output file: " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

int cmd_solve(const Options& o, std::ostream& out) {
  const RunConfig c = load_config(o.config);
  const ValidatedParams p = validate(c.params);
  const DriveProtocol d = drive_from(o, c);
  const double omega = probe_omega(o, c);
  const TransferSolution sol = solve_point(p, d, omega);
  const SteadyAmplitudes amps = steady_amplitude(p, d);

  nlohmann::json j;
  j["solution"] = output::to_json(sol);
  j["noise"] = output::to_json(added_noise(sol));
  j["stability"] = d.mode == DriveMode::Constant
                       ? output::to_json(assess_stability(build_drift_constant(p, amps)))
                       : output::to_json(assess_stability(build_drift_fourier(p, amps), d.n_sidebands));
  j["drive_omega_hz"] = rad_to_hz(d.omega_drive);
  j["g_eff_hz"] = {{"o", {rad_to_hz(amps.g_eff_o.real()), rad_to_hz(amps.g_eff_o.imag())}},
                   {"e", {rad_to_hz(amps.g_eff_e.real()), rad_to_hz(amps.g_eff_e.imag())}}};
  Sink sink(o.output, out);
  sink.get() << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_sweep(const std::string& axis, const Options& o, std::ostream& out, std::ostream& err) {
  const RunConfig c = load_config(o.config);
  const double from = o.from_hz > 0.0 ? o.from_hz : c.sweep.from_hz.value_or(0.0);
  const double to = o.to_hz > 0.0 ? o.to_hz : c.sweep.to_hz.value_or(0.0);
  const int points = o.points > 0 ? o.points : c.sweep.points.value_or(0);
  SweepOptions opt;
  opt.oracle = o.oracle;

  SweepResult result;
  if (axis == "kappa-m") {
    std::vector<double> grid = default_kappa_m_grid_hz();
    if (from > 0.0 || to > 0.0 || points > 0) {
      grid = log_grid(from > 0.0 ? from : 1e-3, to > 0.0 ? to : 1e3, points > 0 ? points : 121);
    }
    result = sweep_kappa_m(c.params, c.drive.omega_drive, grid, opt);
  } else {
    std::vector<double> grid = default_omega_grid_hz();
    if (from > 0.0 || to > 0.0 || points > 0) {
      grid = linear_grid(from > 0.0 ? from : 100e6, to > 0.0 ? to : 1000e6, points > 0 ? points : 181);
    }
    result = sweep_omega(c.params, grid, opt);
  }
  Sink sink(o.output, out);
  output::write_sweep_csv(sink.get(), result);
  err << output::to_json(result).dump() << '\n';
  if (o.oracle) {
    double worst = 0.0;
    for (const auto& [name, s] : result.series) {
      for (double v : s.oracle_diff) worst = std::max(worst, v);
    }
    err << "max oracle difference: " << output::format_double(worst) << '\n';
  }
  return kExitOk;
}

int cmd_tune(const Options& o, std::ostream& out) {
  const RunConfig c = load_config(o.config);
  const ValidatedParams p = validate(c.params);
  double lo = c.tune.has_bracket ? c.tune.lo : hz_to_rad(200e6);
  double hi = c.tune.has_bracket ? c.tune.hi : hz_to_rad(800e6);
  if (o.lo_hz > 0.0) lo = hz_to_rad(o.lo_hz);
  if (o.hi_hz > 0.0) hi = hz_to_rad(o.hi_hz);
  const int n = o.n_sidebands > 0 ? o.n_sidebands : c.tune.n_sidebands;
  const double omega_star = tune_unity_efficiency(p, n, lo, hi);
  const double eta = efficiency(solve_point(p, DriveProtocol::parametric(omega_star, n), p->omega_m));
  nlohmann::json j{{"omega_star_hz", rad_to_hz(omega_star)},
                   {"eta", eta},
                   {"eta_minus_one", eta - 1.0},
                   {"n_sidebands", n},
                   {"bracket_hz", {rad_to_hz(std::min(lo, hi)), rad_to_hz(std::max(lo, hi))}}};
  Sink sink(o.output, out);
  sink.get() << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  RunConfig c = load_config(o.config);
  if (!o.probe_at.empty()) c.probe_omega = probe_omega(o, c);
  const VerifyReport report = run_verification(c, o.n_max);
  Sink sink(o.output, out);
  for (const Check& ch : report.checks) {
    const char* status = ch.passed ? "PASS" : (ch.advisory ? "WARN" : "FAIL");
    sink.get() << status << "  " << ch.name << "  value=" << output::format_double(ch.value)
               << " tol=" << output::format_double(ch.tolerance)
               << (ch.advisory ? " (advisory)" : "") << '\n';
  }
  return report.all_passed() ? kExitOk : kExitValidation;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const RunConfig c = load_config(o.config);
  const ValidatedParams p = validate(c.params);
  DriveProtocol d = drive_from(o, c);
  d.mode = DriveMode::Parametric;
  const double omega = probe_omega(o, c);
  const SidebandMatrixSet mats = build_drift_fourier(p, steady_amplitude(p, d));
  const PortLayout layout = build_port_layout(p);
  const TransferSolution rec = solve_parametric(mats, layout, omega, d.n_sidebands);
  const TransferSolution dense = dense_oracle(mats, layout, omega, d.n_sidebands);
  const double scale = std::max(1.0, inf_norm(rec.t_central));

  nlohmann::json diffs;
  double worst = (rec.t_central - dense.t_central).cwiseAbs().maxCoeff() / scale;
  diffs["central"] = worst;
  for (const auto& [key, t] : rec.t_sideband) {
    const double v = (t - dense.t_sideband.at(key)).cwiseAbs().maxCoeff() / scale;
    diffs[(key.sign > 0 ? "+" : "-") + std::to_string(key.k)] = v;
    worst = std::max(worst, v);
  }
  double tail = 0.0;
  for (const auto& [key, t] : dense.t_sideband) {
    if (key.k > 2) tail = std::max(tail, t.cwiseAbs().maxCoeff() / scale);
  }
  const bool ok = worst <= 1e-10;
  nlohmann::json j{{"n_sidebands", d.n_sidebands},
                   {"probe_omega_hz", rad_to_hz(omega)},
                   {"relative_difference", diffs},
                   {"max_relative_difference", worst},
                   {"dense_tail_sidebands", tail},
                   {"tolerance", 1e-10},
                   {"pass", ok}};
  Sink sink(o.output, out);
  sink.get() << j.dump(2) << '\n';
  return ok ? kExitOk : kExitValidation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optomechanical transducer transfer-matrix solver", "xduct"};
  app.require_subcommand(1);
  Options o;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "configuration file")->required();
    sub->add_option("--output,-o", o.output, "write results to this file");
  };

  CLI::App* solve = app.add_subcommand("solve", "transfer matrices and noise at one probe frequency");
  add_config(solve);
  solve->add_option("--probe-at", o.probe_at, "\"omega-m\" or a frequency in Hz");
  solve->add_option("--protocol", o.protocol, "override the drive mode")
      ->check(CLI::IsMember({"constant", "parametric"}));
  solve->add_option("--n", o.n_sidebands, "sideband truncation order");

  CLI::App* sweep = app.add_subcommand("sweep", "kappa_m or drive-amplitude sweep as CSV");
  std::string axis;
  sweep->add_option("axis", axis, "kappa-m | omega")->required()->check(CLI::IsMember({"kappa-m", "omega"}));
  add_config(sweep);
  sweep->add_option("--from", o.from_hz, "first grid value (Hz)");
  sweep->add_option("--to", o.to_hz, "last grid value (Hz)");
  sweep->add_option("--points", o.points, "number of grid points");
  sweep->add_flag("--oracle", o.oracle, "also compare against the dense solver");

  CLI::App* tune = app.add_subcommand("tune", "drive amplitude giving unit efficiency");
  add_config(tune);
  tune->add_option("--lo", o.lo_hz, "bracket start (Hz)");
  tune->add_option("--hi", o.hi_hz, "bracket end (Hz)");
  tune->add_option("--n", o.n_sidebands, "sideband truncation order");

  CLI::App* verify = app.add_subcommand("verify", "invariant and structure checks");
  add_config(verify);
  verify->add_option("--probe-at", o.probe_at, "\"omega-m\" or a frequency in Hz");
  verify->add_option("--n-max", o.n_max, "largest truncation order")->check(CLI::Range(3, 12));

  CLI::App* oracle = app.add_subcommand("oracle", "recursive vs dense solver difference");
  add_config(oracle);
  oracle->add_option("--probe-at", o.probe_at, "\"omega-m\" or a frequency in Hz");
  oracle->add_option("--n", o.n_sidebands, "sideband truncation order");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (solve->parsed()) return cmd_solve(o, out);
    if (sweep->parsed()) return cmd_sweep(axis, o, out, err);
    if (tune->parsed()) return cmd_tune(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (oracle->parsed()) return cmd_oracle(o, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitValidation;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace xduct::cli
