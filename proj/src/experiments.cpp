#include "boussinesq/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "boussinesq/errors.hpp"
#include "boussinesq/operators.hpp"
#include "boussinesq/sampling.hpp"

namespace boussinesq {

namespace {

void say(const LogFn& log, const std::string& msg) {
  if (log) log(msg);
}

std::optional<Mollifier> mollifier_for(const RunConfig& cfg) {
  if (cfg.delta == 0.0) return std::nullopt;
  return make_mollifier(cfg.delta, cfg.grid(), cfg.profile);
}

RunMetadata metadata(const RunConfig& cfg, const ProofConstants& c) {
  RunMetadata m;
  m.params = cfg.params();
  m.n = cfg.n;
  m.length = cfg.length;
  m.horizon = cfg.horizon;
  m.dt = cfg.dt;
  m.constants = c;
  m.require_delta_condition = cfg.require_delta_condition;
  m.residual_budget = cfg.residual_budget;
  return m;
}

int severity(ExitStatus s) {
  switch (s) {
    case ExitStatus::pass: return 0;
    case ExitStatus::check_failed: return 1;
    case ExitStatus::config_error: return 2;
    case ExitStatus::blow_up: return 3;
  }
  return 3;
}

ExitStatus worse(ExitStatus a, ExitStatus b) { return severity(a) >= severity(b) ? a : b; }

// Runs job(i) for i in [0, count) on up to `threads` workers. Results are
// written by index, so the schedule never affects the output.
template <typename Job>
void parallel_for(std::size_t count, int threads, Job&& job) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double h1_sq(const VectorField& u) {
  return quadratic_functional(u, Quadratic::l2sq) + quadratic_functional(u, Quadratic::grad_l2sq);
}

std::vector<const State*> states_of(const Trajectory& t) {
  std::vector<const State*> out;
  for (const auto& s : t.snapshots) out.push_back(&s);
  if (t.final_state && (out.empty() || out.back()->t != t.final_state->t))
    out.push_back(&*t.final_state);
  return out;
}

std::string member_dir_name(const char* what, double v) {
  return std::string(what) + "_" + format_number(v);
}

double sup_theta_grad(const Trajectory& t) {
  double s = 0.0;
  for (const auto& r : t.records) s = std::max(s, r.theta_grad_l2sq);
  return s;
}

// (max - min) / min over the values; 0 when all vanish.
double relative_spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  if (*hi == 0.0) return 0.0;
  if (*lo == 0.0) return INFINITY;
  return (*hi - *lo) / *lo;
}

RunConfig sweep_member(const RunConfig& cfg) {
  RunConfig m = cfg;
  m.sweep_values.clear();
  m.require_delta_condition = false;
  return m;
}

void write_sweep_outputs(const std::filesystem::path& dir, const char* what,
                         const RunConfig& cfg, const SweepResult& sr) {
  std::filesystem::create_directories(dir);
  for (const auto& m : sr.members) {
    RunConfig mc = sweep_member(cfg);
    (std::string(what) == "delta" ? mc.delta : mc.nu) = m.value;
    emit_report(dir / member_dir_name(what, m.value), mc, m.result);
  }
  std::ostringstream table;
  table << "# boussinesq-sweep v1\n"
        << what << ",status,enstrophy_T,sup_theta_grad_l2sq,enstrophy_bound,kinetic_T\n";
  for (const auto& m : sr.members) {
    const auto& recs = m.result.trajectory.records;
    table << format_number(m.value) << ',' << static_cast<int>(m.result.status);
    if (recs.empty()) {
      table << ",nan,nan,nan,nan\n";
      continue;
    }
    const double bound = enstrophy_bound(recs.front().enstrophy, recs.front().theta_l2sq,
                                         recs.back().t - recs.front().t, cfg.kappa);
    table << ',' << format_number(recs.back().enstrophy) << ','
          << format_number(sup_theta_grad(m.result.trajectory)) << ',' << format_number(bound)
          << ',' << format_number(recs.back().kinetic) << '\n';
  }
  write_file(dir / "sweep.csv", table.str());
  std::ostringstream checks;
  write_checks(checks, sr.reports);
  write_file(dir / "checks.csv", checks.str());
  std::ostringstream summary;
  write_summary(summary, sr.reports);
  for (const auto& m : sr.members) {
    summary << what << '=' << format_number(m.value) << " status " << static_cast<int>(m.result.status);
    if (!m.result.message.empty()) summary << " (" << m.result.message << ')';
    summary << '\n';
  }
  write_file(dir / "summary.txt", summary.str());
}

template <typename Configure>
std::vector<SweepMember> run_members(const RunConfig& cfg, const std::vector<double>& values,
                                     Configure&& configure, const LogFn& log) {
  std::vector<SweepMember> members(values.size());
  std::vector<RunConfig> configs;
  for (double v : values) {
    RunConfig m = sweep_member(cfg);
    configure(m, v);
    if (m.snapshot_every == 0) {
      const long steps = static_cast<long>(std::ceil(m.horizon / m.dt - 1e-9));
      m.snapshot_every = static_cast<int>(std::max(1L, steps / m.sample_every / 10));
    }
    m.validate();
    configs.push_back(std::move(m));
  }
  parallel_for(values.size(), cfg.threads, [&](std::size_t i) {
    members[i].value = values[i];
    members[i].result = simulate(configs[i]);
    say(log, "member " + format_number(values[i]) + " finished with status " +
                 std::to_string(static_cast<int>(members[i].result.status)));
  });
  return members;
}

}  // namespace

ProofConstants run_constants(const RunConfig& cfg) {
  const Grid g = cfg.grid();
  const auto m = mollifier_for(cfg);
  return estimate_constants(g, m ? &*m : nullptr, cfg.constants_samples, cfg.seed);
}

std::vector<InequalityReport> verify_records(const Trajectory& traj, const ProofConstants& c,
                                             bool require_delta_condition,
                                             double residual_budget) {
  std::vector<InequalityReport> out;
  auto append = [&](std::vector<InequalityReport> v) {
    out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  };
  append(check_energy_inequalities(traj, residual_budget));
  append(check_evolution_residuals(traj, residual_budget));
  append(check_gronwall_chain(traj, c, require_delta_condition));
  append(check_theta_gradient_bound(traj, c));

  const auto& recs = traj.records;
  const double m0 = recs.front().theta_mean;
  double drift = 0.0;
  for (const auto& r : recs) drift = std::max(drift, std::abs(r.theta_mean - m0));
  const double scale = std::abs(m0) + std::sqrt(recs.front().theta_l2sq);
  out.push_back(make_report("theta-mean", drift, 0.0, 1e-12 * scale));

  double div = 0.0;
  for (const auto& r : recs) div = std::max(div, r.divergence);
  out.push_back(make_report("div-free", div, 0.0, 1e-10));
  out.push_back(check_leakage(traj));
  return out;
}

ExitStatus status_of(std::span<const InequalityReport> reports) {
  for (const auto& r : reports)
    if (r.enforced && !r.pass) return ExitStatus::check_failed;
  return ExitStatus::pass;
}

RunResult simulate(const RunConfig& cfg, const LogFn& log) {
  cfg.validate();
  RunResult res;
  const auto init = build_initial_data(cfg);
  const auto m = mollifier_for(cfg);
  const Mollifier* mp = m ? &*m : nullptr;
  say(log, "estimating constants from " + std::to_string(cfg.constants_samples) + " samples");
  res.constants = run_constants(cfg);
  say(log, "constants: " + res.constants.describe());
  try {
    res.trajectory = evolve(init, cfg.params(), mp, cfg.evolve_options());
  } catch (const BlowUpError& e) {
    res.status = ExitStatus::blow_up;
    res.message = e.what();
    return res;
  } catch (const StepSizeError& e) {
    res.status = ExitStatus::blow_up;
    res.message = e.what();
    return res;
  }
  say(log, "integrated " + std::to_string(res.trajectory.steps) + " steps");

  res.reports = verify_records(res.trajectory, res.constants, cfg.require_delta_condition,
                               cfg.residual_budget);
  const State& last = *res.trajectory.final_state;
  auto ids = check_exact_identities(last, mp);
  res.reports.insert(res.reports.end(), ids.begin(), ids.end());
  if (mp != nullptr) {
    auto facts = check_approximation_facts(last, *mp, res.constants);
    res.reports.insert(res.reports.end(), facts.begin(), facts.end());
  }
  res.status = status_of(res.reports);
  for (const auto& r : res.reports) {
    if (r.enforced && !r.pass) {
      res.message = "check " + r.check_id + " failed (margin " + format_number(r.margin()) + ")";
      break;
    }
  }
  return res;
}

void emit_report(const std::filesystem::path& dir, const RunConfig& cfg, const RunResult& r) {
  std::filesystem::create_directories(dir);
  std::ostringstream diag;
  write_diagnostics(diag, metadata(cfg, r.constants), r.trajectory.records);
  write_file(dir / "diagnostics.csv", diag.str());
  std::ostringstream checks;
  write_checks(checks, r.reports);
  write_file(dir / "checks.csv", checks.str());
  std::ostringstream summary;
  write_summary(summary, r.reports);
  if (!r.message.empty()) summary << "status " << static_cast<int>(r.status) << ": " << r.message << '\n';
  write_file(dir / "summary.txt", summary.str());
  write_file(dir / "config.txt", serialize(cfg));
}

RunResult run_simulation(const RunConfig& cfg, const std::filesystem::path& out_dir,
                         const LogFn& log) {
  RunResult r = simulate(cfg, log);
  emit_report(out_dir, cfg, r);
  return r;
}

double sup_h1_distance(const Trajectory& a, const Trajectory& b) {
  const auto sa = states_of(a);
  const auto sb = states_of(b);
  if (sa.size() != sb.size()) throw ParameterError("trajectories have different snapshot sets");
  double worst = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (std::abs(sa[i]->t - sb[i]->t) > 1e-9)
      throw ParameterError("snapshot times differ between trajectories");
    worst = std::max(worst, std::sqrt(h1_sq(sa[i]->u - sb[i]->u)));
  }
  return worst;
}

SweepResult delta_sweep(const RunConfig& cfg, const LogFn& log) {
  std::vector<double> deltas = cfg.sweep_values;
  if (deltas.empty()) deltas = {0.2, 0.1, 0.05, 0.025};
  std::sort(deltas.begin(), deltas.end(), std::greater<>());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
  if (deltas.back() != 0.0) deltas.push_back(0.0);

  SweepResult sr;
  sr.members = run_members(cfg, deltas, [](RunConfig& m, double v) { m.delta = v; }, log);
  for (const auto& m : sr.members) sr.status = worse(sr.status, m.result.status);
  if (sr.status == ExitStatus::blow_up) return sr;

  const std::size_t k = deltas.size() - 1;  // mollified members; the last one is delta = 0
  const auto& ref = sr.members.back().result.trajectory;
  std::vector<double> enstrophy_t;
  std::vector<double> theta_grad;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& t = sr.members[i].result.trajectory;
    enstrophy_t.push_back(t.records.back().enstrophy);
    theta_grad.push_back(sup_theta_grad(t));
  }
  sr.reports.push_back(make_report("uniform-enstrophy", relative_spread(enstrophy_t), 0.2, 0.0));
  sr.reports.push_back(make_report("uniform-theta-grad", relative_spread(theta_grad), 0.2, 0.0));

  std::vector<double> successive;
  std::vector<double> to_ref;
  for (std::size_t i = 0; i < k; ++i) {
    if (i + 1 < k)
      successive.push_back(
          sup_h1_distance(sr.members[i].result.trajectory, sr.members[i + 1].result.trajectory));
    to_ref.push_back(sup_h1_distance(sr.members[i].result.trajectory, ref));
  }
  // Largest ratio of a difference to its predecessor; < 1 means shrinking.
  auto worst_growth = [](const std::vector<double>& d) {
    double w = 0.0;
    for (std::size_t i = 1; i < d.size(); ++i) {
      if (d[i] == 0.0) continue;
      w = std::max(w, d[i - 1] == 0.0 ? INFINITY : d[i] / d[i - 1]);
    }
    return w;
  };
  std::ostringstream diffs;
  diffs.imbue(std::locale::classic());
  diffs.precision(6);
  for (std::size_t i = 0; i < successive.size(); ++i) diffs << (i ? ";" : "") << "d" << i << '=' << successive[i];
  sr.reports.push_back(make_report("cauchy-monotone", worst_growth(successive), 1.0, 0.0, diffs.str()));
  double min_ratio = INFINITY;
  for (std::size_t i = 1; i < successive.size(); ++i)
    if (successive[i] > 0.0) min_ratio = std::min(min_ratio, successive[i - 1] / successive[i]);
  if (!std::isfinite(min_ratio)) min_ratio = 1.5;
  auto ratio = make_report("cauchy-ratio", 1.5, min_ratio, 0.0, diffs.str());
  ratio.enforced = false;
  sr.reports.push_back(ratio);
  sr.reports.push_back(make_report("distance-to-unmollified", worst_growth(to_ref), 1.0, 0.0));
  sr.status = worse(sr.status, status_of(sr.reports));
  return sr;
}

SweepResult nu_sweep(const RunConfig& cfg, const LogFn& log) {
  std::vector<double> nus = cfg.sweep_values;
  if (nus.empty()) nus = {0.1, 0.01, 0.001};
  SweepResult sr;
  sr.members = run_members(cfg, nus, [](RunConfig& m, double v) { m.nu = v; }, log);
  for (const auto& m : sr.members) sr.status = worse(sr.status, m.result.status);
  if (sr.status == ExitStatus::blow_up) return sr;

  // The bound depends on the initial data only; every member starts alike.
  const auto& r0 = sr.members.front().result.trajectory.records.front();
  const double y = enstrophy_bound(r0.enstrophy, r0.theta_l2sq, cfg.horizon, cfg.kappa);
  for (const auto& m : sr.members) {
    const std::string tag = "@nu=" + format_number(m.value);
    const auto& recs = m.result.trajectory.records;
    sr.reports.push_back(make_report("pf12" + tag, recs.back().enstrophy, y, 1e-9 * y));
    for (const auto& r : m.result.reports)
      if (r.check_id == "pf1" || r.check_id == "pf16") {
        auto copy = r;
        copy.check_id += tag;
        sr.reports.push_back(copy);
      }
  }
  sr.status = worse(sr.status, status_of(sr.reports));
  return sr;
}

SweepResult run_delta_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir,
                            const LogFn& log) {
  SweepResult sr = delta_sweep(cfg, log);
  write_sweep_outputs(out_dir, "delta", cfg, sr);
  return sr;
}

SweepResult run_nu_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir,
                         const LogFn& log) {
  SweepResult sr = nu_sweep(cfg, log);
  write_sweep_outputs(out_dir, "nu", cfg, sr);
  return sr;
}

std::vector<InequalityReport> gn_lab(const RunConfig& cfg, const std::filesystem::path& out_dir,
                                     const LogFn& log) {
  cfg.validate();
  const Grid g = cfg.grid();
  const Grid fine = make_grid(2 * cfg.n, cfg.length);
  const auto family = gn_family(g, cfg.constants_samples, cfg.seed);
  const auto fine_family = gn_family(fine, cfg.constants_samples, cfg.seed);
  say(log, "sampled " + std::to_string(family.size()) + " fields at n=" + std::to_string(cfg.n) +
               " and n=" + std::to_string(2 * cfg.n));

  std::ostringstream table;
  table << "# boussinesq-gn-lab v1\nsample,ratio_n,ratio_2n\n";
  for (std::size_t i = 0; i < family.size(); ++i)
    table << i << ',' << format_number(gn_ratio(family[i])) << ','
          << format_number(gn_ratio(fine_family[i])) << '\n';

  const auto coarse = estimate_gn_constant(family);
  const auto refined = estimate_gn_constant(fine_family);
  const double single_mode = std::sqrt(1.5) / (2.0 * std::numbers::pi);
  std::vector<InequalityReport> out;
  out.push_back(make_report("gn-single-mode", single_mode, coarse.constant, 1e-12,
                            "argmax=" + std::to_string(coarse.argmax)));
  out.push_back(make_report("gn-resolution",
                            std::abs(coarse.constant - refined.constant) / refined.constant, 0.1,
                            0.0, "C_n=" + format_number(coarse.constant) +
                                     ";C_2n=" + format_number(refined.constant)));
  if (cfg.delta > 0.0) {
    const Mollifier m = make_mollifier(cfg.delta, g, cfg.profile);
    const auto a = estimate_approximation_constants(
        m, divergence_free_family(g, cfg.constants_samples, cfg.seed + 1));
    const auto sym = symbol_bounds(m);
    out.push_back(make_report("A1-symbol", a.a1, sym.a1, 1e-12 * sym.a1));
    out.push_back(make_report("A2-symbol", a.a2, sym.a2, 1e-12 * sym.a2));
    table << "# A1=" << format_number(a.a1) << " A2=" << format_number(a.a2)
          << " A1_symbol=" << format_number(sym.a1) << " A2_symbol=" << format_number(sym.a2)
          << '\n';
  }
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "gn_lab.csv", table.str());
  std::ostringstream checks;
  write_checks(checks, out);
  write_file(out_dir / "checks.csv", checks.str());
  std::ostringstream summary;
  write_summary(summary, out);
  write_file(out_dir / "summary.txt", summary.str());
  return out;
}

std::vector<InequalityReport> check_offline(const std::filesystem::path& diagnostics) {
  const auto file = read_diagnostics(diagnostics);
  Trajectory traj;
  traj.params = file.meta.params;
  traj.dt = file.meta.dt;
  traj.records = file.records;
  return verify_records(traj, file.meta.constants, file.meta.require_delta_condition,
                        file.meta.residual_budget);
}

}  // namespace boussinesq
