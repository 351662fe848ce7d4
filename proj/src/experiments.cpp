#include "xduct/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "xduct/errors.hpp"
#include "xduct/root_finding.hpp"
#include "xduct/units.hpp"

namespace xduct {

using units::hz_to_rad;

TransferSolution solve_point(const ValidatedParams& p, const DriveProtocol& d, double omega) {
  const SteadyAmplitudes amps = steady_amplitude(p, d);
  const PortLayout layout = build_port_layout(p);
  if (d.mode == DriveMode::Constant) {
    return solve_constant(build_drift_constant(p, amps), layout, omega, p->omega_m);
  }
  return solve_parametric(build_drift_fourier(p, amps), layout, omega, d.n_sidebands);
}

double oracle_difference(const ValidatedParams& p, const DriveProtocol& d, double omega) {
  if (d.mode != DriveMode::Parametric) throw ValidationError("oracle needs the parametric protocol");
  const SidebandMatrixSet mats = build_drift_fourier(p, steady_amplitude(p, d));
  const PortLayout layout = build_port_layout(p);
  const TransferSolution rec = solve_parametric(mats, layout, omega, d.n_sidebands);
  const TransferSolution dense = dense_oracle(mats, layout, omega, d.n_sidebands);
  const double scale = std::max(1.0, inf_norm(rec.t_central));
  double diff = (rec.t_central - dense.t_central).cwiseAbs().maxCoeff();
  for (const auto& [key, t] : rec.t_sideband) {
    diff = std::max(diff, (t - dense.t_sideband.at(key)).cwiseAbs().maxCoeff());
  }
  return diff / scale;
}

const Crossing* SweepResult::crossing(const std::string& description) const {
  for (const auto& c : crossings) {
    if (c.description == description) return &c;
  }
  return nullptr;
}

SystemParams ideal_params(double omega_m_hz, double kappa_hz, double g_hz, double kappa_m_hz) {
  SystemParams p;
  p.omega_m = hz_to_rad(omega_m_hz);
  p.delta_o = p.delta_e = p.omega_m;
  p.kappa_o = p.kappa_e = p.kappa_o_ex = p.kappa_e_ex = hz_to_rad(kappa_hz);
  p.kappa_m = p.kappa_m_ex = hz_to_rad(kappa_m_hz);
  p.g_o = p.g_e = hz_to_rad(g_hz);
  return p;
}

SystemParams reference_device_params() {
  SystemParams p;
  p.delta_o = hz_to_rad(1.11e6);
  p.delta_e = hz_to_rad(1.47e6);
  p.omega_m = hz_to_rad(1.4732e6);
  p.kappa_o = hz_to_rad(2.1e6);
  p.kappa_e = hz_to_rad(2.5e6);
  p.kappa_m = hz_to_rad(11.0);
  p.kappa_o_ex = hz_to_rad(1.1e6);
  p.kappa_e_ex = hz_to_rad(2.3e6);
  p.kappa_m_ex = hz_to_rad(11.0);
  p.g_o = hz_to_rad(6.6);
  p.g_e = hz_to_rad(3.8);
  return p;
}

std::vector<double> log_grid(double from, double to, int points) {
  if (points < 2 || !(from > 0.0) || !(to > from)) throw ValidationError("invalid log grid");
  std::vector<double> g(static_cast<std::size_t>(points));
  const double a = std::log10(from);
  const double b = std::log10(to);
  for (int i = 0; i < points; ++i) g[i] = std::pow(10.0, a + (b - a) * i / (points - 1));
  return g;
}

std::vector<double> linear_grid(double from, double to, int points) {
  if (points < 2 || !(to > from)) throw ValidationError("invalid linear grid");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[i] = from + (to - from) * i / (points - 1);
  return g;
}

std::vector<double> default_kappa_m_grid_hz() { return log_grid(1e-3, 1e3, 121); }
std::vector<double> default_omega_grid_hz() { return linear_grid(100e6, 1000e6, 181); }

int sweep_threads() {
  int n = 0;
  if (const char* env = std::getenv("XDUCT_THREADS")) n = std::atoi(env);
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(n, 1);
}

namespace {

const std::vector<std::pair<std::string, DriveProtocol>>& protocols() {
  static const std::vector<std::pair<std::string, DriveProtocol>> list = {
      {"const", DriveProtocol::constant(0.0)},
      {"pd1", DriveProtocol::parametric(0.0, 1)},
      {"pd2", DriveProtocol::parametric(0.0, 2)},
  };
  return list;
}

struct PointResult {
  std::map<std::string, NoiseReport> reports;
  std::map<std::string, double> oracle;
};

// Builds the validated parameters and drive amplitude for one grid abscissa (Hz).
using PointSetup = std::function<std::pair<ValidatedParams, double>(double)>;

NoiseReport evaluate(const PointSetup& setup, const DriveProtocol& proto, double x_hz) {
  auto [p, drive] = setup(x_hz);
  DriveProtocol d = proto;
  d.omega_drive = drive;
  return added_noise(solve_point(p, d, p->omega_m));
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body,
                  const std::vector<double>& grid) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::size_t failed_at = n;
  std::mutex m;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  const int count = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (!failure) return;
  const std::string where = " (grid point " + std::to_string(failed_at) + ", " +
                            std::to_string(grid[failed_at]) + " Hz)";
  try {
    std::rethrow_exception(failure);
  } catch (const ValidationError& e) {
    throw ValidationError(e.what() + where);
  } catch (const SolverError& e) {
    throw SolverError(e.what() + where);
  }
}

SweepResult run_sweep(const std::string& axis, const std::vector<double>& grid,
                      const PointSetup& setup, const SweepOptions& opt) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ValidationError("grid must be strictly increasing");
  }
  if (grid.empty()) throw ValidationError("empty grid");
  std::vector<PointResult> points(grid.size());
  int threads = opt.threads < 0 ? sweep_threads() : opt.threads;
  if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  parallel_for(
      grid.size(), threads,
      [&](std::size_t i) {
        PointResult& r = points[i];
        for (const auto& [name, proto] : protocols()) {
          r.reports[name] = evaluate(setup, proto, grid[i]);
          if (opt.oracle && proto.mode == DriveMode::Parametric) {
            auto [p, drive] = setup(grid[i]);
            DriveProtocol d = proto;
            d.omega_drive = drive;
            r.oracle[name] = oracle_difference(p, d, p->omega_m);
          }
        }
      },
      grid);

  SweepResult out;
  out.axis = axis;
  out.grid_hz = grid;
  for (const auto& [name, proto] : protocols()) {
    Series& s = out.series[name];
    for (const auto& pt : points) {
      const NoiseReport& r = pt.reports.at(name);
      s.eta.push_back(r.eta);
      s.s_added.push_back(r.s_added);
      s.lower_bound.push_back(r.s_lower_bound);
      s.commutator_residual.push_back(r.commutator_residual);
      s.sign_rule_residual.push_back(r.sign_rule_residual);
      if (opt.oracle && proto.mode == DriveMode::Parametric) s.oracle_diff.push_back(pt.oracle.at(name));
    }
  }
  return out;
}

using Quantity = std::function<double(const std::map<std::string, NoiseReport>&)>;

void add_crossing(SweepResult& out, const std::string& description, const Quantity& q,
                  const PointSetup& setup, bool refine) {
  const std::vector<double>& grid = out.grid_hz;
  std::vector<double> diff(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::map<std::string, NoiseReport> reports;
    for (const auto& [name, s] : out.series) {
      NoiseReport r;
      r.eta = s.eta[i];
      r.s_added = s.s_added[i];
      reports[name] = r;
    }
    diff[i] = q(reports);
  }
  ScalarFn fresh;
  if (refine) {
    fresh = [&](double x) {
      std::map<std::string, NoiseReport> reports;
      for (const auto& [name, proto] : protocols()) reports[name] = evaluate(setup, proto, x);
      return q(reports);
    };
  }
  Crossing c{description, std::nullopt};
  try {
    c.value = find_crossing(grid, diff, fresh);
  } catch (const NoCrossingError&) {
  }
  out.crossings.push_back(c);
}

Quantity eta_gain(const std::string& pd) {
  return [pd](const auto& r) { return r.at(pd).eta - r.at("const").eta; };
}
Quantity noise_gain(const std::string& pd) {
  return [pd](const auto& r) { return r.at("const").s_added - r.at(pd).s_added; };
}
Quantity noise_level(const std::string& name, double level) {
  return [name, level](const auto& r) { return r.at(name).s_added - level; };
}
Quantity eta_level(const std::string& name, double level) {
  return [name, level](const auto& r) { return r.at(name).eta - level; };
}

}  // namespace

SweepResult sweep_kappa_m(const SystemParams& base, double omega_drive,
                          const std::vector<double>& grid_hz, const SweepOptions& opt) {
  for (double x : grid_hz) {
    if (!(x > 0.0)) throw ValidationError("kappa_m grid must be positive");
  }
  PointSetup setup = [base, omega_drive](double x_hz) {
    SystemParams p = base;
    p.kappa_m = p.kappa_m_ex = hz_to_rad(x_hz);
    return std::make_pair(validate(p), omega_drive);
  };
  SweepResult out = run_sweep("kappa_m_hz", grid_hz, setup, opt);
  for (const char* name : {"const", "pd1", "pd2"}) {
    add_crossing(out, std::string("S_") + name + "=0.5", noise_level(name, 0.5), setup, opt.refine);
  }
  add_crossing(out, "eta_pd1>eta_const", eta_gain("pd1"), setup, opt.refine);
  add_crossing(out, "eta_pd2>eta_const", eta_gain("pd2"), setup, opt.refine);
  return out;
}

SweepResult sweep_omega(const SystemParams& base, const std::vector<double>& grid_hz,
                        const SweepOptions& opt) {
  const ValidatedParams vp = validate(base);
  PointSetup setup = [vp](double x_hz) { return std::make_pair(vp, hz_to_rad(x_hz)); };
  SweepResult out = run_sweep("omega_hz", grid_hz, setup, opt);
  add_crossing(out, "eta_pd1>eta_const", eta_gain("pd1"), setup, opt.refine);
  add_crossing(out, "eta_pd2>eta_const", eta_gain("pd2"), setup, opt.refine);
  add_crossing(out, "S_pd1<S_const", noise_gain("pd1"), setup, opt.refine);
  add_crossing(out, "S_pd2<S_const", noise_gain("pd2"), setup, opt.refine);
  add_crossing(out, "eta_pd1=1", eta_level("pd1", 1.0), setup, opt.refine);
  add_crossing(out, "eta_pd2=1", eta_level("pd2", 1.0), setup, opt.refine);
  return out;
}

double tune_unity_efficiency(const ValidatedParams& p, int n_sidebands, double lo, double hi,
                             double f_tol) {
  const DriveProtocol proto = DriveProtocol::parametric(0.0, n_sidebands);
  validate(proto);
  auto f = [&](double omega_drive) {
    DriveProtocol d = proto;
    d.omega_drive = omega_drive;
    return efficiency(solve_point(p, d, p->omega_m)) - 1.0;
  };
  return solve_bracketed(f, lo, hi, f_tol);
}

ConvergenceTable convergence_study(const ValidatedParams& p, double omega_drive, double omega,
                                   int n_max) {
  if (n_max < 3) throw ValidationError("convergence study needs N_max >= 3");
  ConvergenceTable table;
  for (int n = 1; n <= n_max; ++n) {
    const NoiseReport r = added_noise(solve_point(p, DriveProtocol::parametric(omega_drive, n), omega));
    table.rows.push_back({n, r.eta, r.s_added});
  }
  const ConvergenceRow& ref = table.rows[1];
  auto rel = [](double v, double r) { return r != 0.0 ? std::abs(v - r) / std::abs(r) : std::abs(v); };
  for (const auto& row : table.rows) {
    if (row.n <= 2) continue;
    table.max_deviation =
        std::max({table.max_deviation, rel(row.eta, ref.eta), rel(row.s_added, ref.s_added)});
  }
  return table;
}

}  // namespace xduct
