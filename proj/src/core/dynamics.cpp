#include "dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "errors.hpp"

namespace nlsv {

std::string scheme_name(Scheme s) { return s == Scheme::StrangSplit ? "strang" : "cn_relaxed"; }

Scheme parse_scheme(const std::string& name) {
  if (name == "strang" || name == "StrangSplit") return Scheme::StrangSplit;
  if (name == "cn_relaxed" || name == "CrankNicolsonRelaxed") return Scheme::CrankNicolsonRelaxed;
  fail(ErrorKind::Config, "unknown scheme '" + name + "' (strang|cn_relaxed)");
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Completed: return "Completed";
    case Outcome::BlowupDetected: return "BlowupDetected";
    case Outcome::ToleranceViolated: return "ToleranceViolated";
  }
  return "Completed";
}

std::string proxy_name(ProxyHint h) {
  switch (h) {
    case ProxyHint::ScatterLike: return "ScatterLike";
    case ProxyHint::SolitonLike: return "SolitonLike";
    case ProxyHint::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

void check_solver_config(const SolverConfig& cfg) {
  if (!(cfg.dt > 0.0)) fail(ErrorKind::Config, "solver: dt must be positive");
  if (!(cfg.t_end >= 0.0)) fail(ErrorKind::Config, "solver: t_end must be nonnegative");
  if (!(cfg.blowup_grad_factor > 1.0)) fail(ErrorKind::Config, "solver: blowup_grad_factor must exceed 1");
  if (cfg.grid.n_points() == 0) fail(ErrorKind::Config, "solver: grid not set");
  (void)critical_exponents(cfg.alpha);
}

Stepper::Stepper(const SolverConfig& cfg, const PotentialSpec& spec)
    : cfg_(cfg), dt_(cfg.dt), vpot_(potential_on_grid(spec, cfg.grid)) {
  const std::size_t n = cfg.grid.n_points();
  const std::size_t m = n - 1;
  lower_.assign(m, 0.0);
  diag_.assign(m, 0.0);
  upper_.assign(m, 0.0);
  rhs_.assign(m, 0.0);
  work_.assign(m, 0.0);
  if (cfg_.scheme == Scheme::StrangSplit) {
    const double h = cfg.grid.spacing();
    const cplx off(0.0, -0.5 * dt_ / (h * h));
    const cplx b(1.0, dt_ / (h * h));
    // upper_ holds c'_i, diag_ holds 1/den_i.
    cplx den = b;
    for (std::size_t i = 0; i < m; ++i) {
      if (i > 0) den = b - off * upper_[i - 1];
      diag_[i] = 1.0 / den;
      upper_[i] = off * diag_[i];
    }
  }
}

void Stepper::local_phase(FieldState& u, double tau) const {
  const double mu = sign_factor(cfg_.sign);
  const std::size_t n = cfg_.grid.n_points();
  for (std::size_t i = 1; i < n; ++i) {
    double w = vpot_[i];
    if (cfg_.nonlinear) w += mu * std::pow(std::abs(u.values[i]), cfg_.alpha);
    u.values[i] *= std::polar(1.0, -tau * w);
  }
}

void Stepper::kinetic(FieldState& u) {
  const std::size_t n = cfg_.grid.n_points();
  const std::size_t m = n - 1;
  const double h = cfg_.grid.spacing();
  const cplx s(0.0, 0.5 * dt_ / (h * h));
  auto v = [&](std::size_t i) { return cfg_.grid.r(i) * u.values[i]; };
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = k + 1;
    const cplx left = i > 1 ? v(i - 1) : cplx(0.0);
    const cplx right = i + 1 < n ? v(i + 1) : cplx(0.0);
    const cplx vi = v(i);
    rhs_[k] = vi + s * (left - 2.0 * vi + right);
  }
  const cplx off = -s;
  work_[0] = rhs_[0] * diag_[0];
  for (std::size_t k = 1; k < m; ++k) work_[k] = (rhs_[k] - off * work_[k - 1]) * diag_[k];
  for (std::size_t k = m - 1; k-- > 0;) work_[k] -= upper_[k] * work_[k + 1];
  for (std::size_t k = 0; k < m; ++k) u.values[k + 1] = work_[k] / cfg_.grid.r(k + 1);
}

void Stepper::relaxed(FieldState& u) {
  // Besse relaxation: phi^{n+1/2} = 2|u^n|^alpha - phi^{n-1/2}, then a
  // Crank-Nicolson step with the frozen multiplier V + mu phi^{n+1/2}.
  const std::size_t n = cfg_.grid.n_points();
  const std::size_t m = n - 1;
  const double h = cfg_.grid.spacing();
  const double mu = sign_factor(cfg_.sign);
  if (phi_half_.empty()) {
    phi_half_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i) phi_half_[i] = std::pow(std::abs(u.values[i]), cfg_.alpha);
  } else {
    for (std::size_t i = 0; i <= n; ++i)
      phi_half_[i] = 2.0 * std::pow(std::abs(u.values[i]), cfg_.alpha) - phi_half_[i];
  }
  const double tau = 0.5 * dt_;
  const cplx off(0.0, -tau / (h * h));
  auto v = [&](std::size_t i) { return cfg_.grid.r(i) * u.values[i]; };
  cplx prev_c = 0.0, prev_d = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = k + 1;
    const double w = vpot_[i] + (cfg_.nonlinear ? mu * phi_half_[i] : 0.0);
    const cplx left = i > 1 ? v(i - 1) : cplx(0.0);
    const cplx right = i + 1 < n ? v(i + 1) : cplx(0.0);
    const cplx vi = v(i);
    const cplx r = vi + cplx(0.0, tau) * ((left - 2.0 * vi + right) / (h * h) - w * vi);
    const cplx b(1.0, tau * (2.0 / (h * h) + w));
    const cplx den = k == 0 ? b : b - off * prev_c;
    upper_[k] = off / den;
    work_[k] = k == 0 ? r / den : (r - off * prev_d) / den;
    prev_c = upper_[k];
    prev_d = work_[k];
  }
  for (std::size_t k = m - 1; k-- > 0;) work_[k] -= upper_[k] * work_[k + 1];
  for (std::size_t k = 0; k < m; ++k) u.values[k + 1] = work_[k] / cfg_.grid.r(k + 1);
}

void Stepper::advance(FieldState& u) {
  if (cfg_.scheme == Scheme::StrangSplit) {
    local_phase(u, 0.5 * dt_);
    kinetic(u);
    local_phase(u, 0.5 * dt_);
  } else {
    relaxed(u);
  }
  const std::size_t n = cfg_.grid.n_points();
  u.values[n] = 0.0;
  u.values[0] = (4.0 * u.values[1] - u.values[2]) / 3.0;
  u.time += dt_;
}

FieldState discrete_ground_state(const GroundState& gs, double tol) {
  const RadialGrid& g = gs.grid;
  const std::size_t n = g.n_points();
  const std::size_t m = n - 1;
  const double h = g.spacing();
  const double a = gs.alpha;
  std::vector<double> q = gs.q_values;
  q[n] = 0.0;
  std::vector<double> f(m), diag(m), cp(m), dp(m);
  const double off = 1.0 / (h * h);
  double scale = 0.0;
  for (std::size_t i = 1; i < n; ++i) scale = std::max(scale, g.r(i) * q[i]);
  for (int it = 0; it < 40; ++it) {
    double res = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = k + 1;
      const double v0 = g.r(i - 1) * q[i - 1];
      const double v1 = g.r(i) * q[i];
      const double v2 = g.r(i + 1) * q[i + 1];
      const double qa = std::pow(std::abs(q[i]), a);
      f[k] = (v0 - 2.0 * v1 + v2) * off - v1 + qa * v1;
      diag[k] = -2.0 * off - 1.0 + (a + 1.0) * qa;
      res = std::max(res, std::abs(f[k]));
    }
    if (res <= tol * scale * off) break;
    cp[0] = off / diag[0];
    dp[0] = -f[0] / diag[0];
    for (std::size_t k = 1; k < m; ++k) {
      const double den = diag[k] - off * cp[k - 1];
      cp[k] = off / den;
      dp[k] = (-f[k] - off * dp[k - 1]) / den;
    }
    for (std::size_t k = m - 1; k-- > 0;) dp[k] -= cp[k] * dp[k + 1];
    for (std::size_t k = 0; k < m; ++k) q[k + 1] += dp[k] / g.r(k + 1);
  }
  q[0] = (4.0 * q[1] - q[2]) / 3.0;
  FieldState u = zero_field(g);
  for (std::size_t i = 0; i < n; ++i) u.values[i] = q[i];
  return u;
}

FieldState step(const FieldState& u, const SolverConfig& cfg, const PotentialSpec& spec) {
  check_solver_config(cfg);
  if (!(u.grid == cfg.grid)) fail(ErrorKind::Config, "step: field grid does not match the solver grid");
  FieldState out = u;
  Stepper s(cfg, spec);
  s.advance(out);
  return out;
}

SeriesRecord measure(const FieldState& u, const SolverConfig& cfg, const PotentialSpec& spec) {
  SeriesRecord rec{};
  rec.t = u.time;
  rec.mass = mass(u);
  const double g2 = gradient_sq(u);
  const double pot = potential_energy(u, spec);
  rec.lp_norm = lp_integral(u, cfg.alpha + 2.0);
  rec.energy = 0.5 * g2 + 0.5 * pot + sign_factor(cfg.sign) / (cfg.alpha + 2.0) * rec.lp_norm;
  rec.grad_norm = std::sqrt(g2);
  rec.scat_quantity = rec.lp_norm * std::pow(rec.mass, critical_exponents(cfg.alpha).sigma_c);
  const double budget = 0.5 * g2 + 0.5 * std::abs(pot) + rec.lp_norm / (cfg.alpha + 2.0);
  rec.potential_fraction = budget > 0.0 ? 0.5 * std::abs(pot) / budget : 0.0;
  std::vector<double> f(u.values.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = u.grid.r(i) * u.grid.r(i) * std::norm(u.values[i]);
  rec.variance = rec.mass > 0.0 ? radial_integral(u.grid, f) / rec.mass : 0.0;
  return rec;
}

namespace {

bool finite_field(const FieldState& u) {
  for (const auto& z : u.values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

double peak_modulus(const FieldState& u, std::size_t* where = nullptr) {
  double best = 0.0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const double a = std::abs(u.values[i]);
    if (a > best) {
      best = a;
      at = i;
    }
  }
  if (where) *where = at;
  return best;
}

// Distance from the peak to where |u| first falls below half of it.
double half_width(const FieldState& u) {
  std::size_t at = 0;
  const double peak = peak_modulus(u, &at);
  for (std::size_t i = at; i < u.values.size(); ++i)
    if (std::abs(u.values[i]) < 0.5 * peak) return u.grid.r(i) - u.grid.r(at);
  return u.grid.r_max();
}

double outer_mass_fraction(const FieldState& u, double total) {
  if (!(total > 0.0)) return 0.0;
  const std::size_t n = u.grid.n_points();
  const std::size_t start = n - n / 10;
  const double h = u.grid.spacing();
  double s = 0.0;
  for (std::size_t i = start; i <= n; ++i) {
    const double r = u.grid.r(i);
    s += (i == start || i == n ? 0.5 : 1.0) * std::norm(u.values[i]) * r * r;
  }
  return 4.0 * M_PI * h * s / total;
}

struct Checkpoint {
  FieldState state;
  std::size_t series_len;
  std::size_t snap_len;
  std::size_t steps_done;
};

}  // namespace

Trajectory evolve(const FieldState& u0, const SolverConfig& cfg_in, const PotentialSpec& spec) {
  check_solver_config(cfg_in);
  if (!(u0.grid == cfg_in.grid)) fail(ErrorKind::Config, "evolve: initial field grid does not match the solver grid");
  SolverConfig cfg = cfg_in;
  Trajectory traj;
  traj.snapshot_stride = cfg.snapshot_stride;

  FieldState u = u0;
  if (!finite_field(u)) {
    traj.outcome = Outcome::BlowupDetected;
    traj.message = "initial data not finite";
    return traj;
  }
  const SeriesRecord first = measure(u, cfg, spec);
  traj.series.push_back(first);
  traj.snapshots.push_back(u);
  const double m0 = first.mass;
  const double e_scale = std::max(std::abs(first.energy), 0.5 * first.grad_norm * first.grad_norm);
  const double peak0 = peak_modulus(u);
  const double t0 = u.time;

  Checkpoint ck{u, 1, 1, 0};
  auto stepper = std::make_unique<Stepper>(cfg, spec);
  std::size_t steps_total = static_cast<std::size_t>(std::llround((cfg.t_end) / cfg.dt));
  std::size_t k = 0;
  double t_base = t0;  // time of step 0 at the current dt

  while (k < steps_total) {
    stepper->advance(u);
    ++k;
    u.time = t_base + static_cast<double>(k) * cfg.dt;

    std::string trigger;
    bool hard_blowup = false;
    SeriesRecord rec{};
    double md = 0.0, ed = 0.0;
    if (!finite_field(u)) {
      hard_blowup = true;
      trigger = "non-finite field values";
    } else {
      rec = measure(u, cfg, spec);
      md = std::abs(rec.mass - m0) / (m0 > 0.0 ? m0 : 1.0);
      ed = e_scale > 0.0 ? std::abs(rec.energy - first.energy) / e_scale : 0.0;
      if (!std::isfinite(rec.grad_norm)) {
        hard_blowup = true;
        trigger = "non-finite gradient";
      } else if (rec.grad_norm > cfg.blowup_grad_factor * first.grad_norm) {
        trigger = "gradient norm exceeded blowup_grad_factor times its initial value";
      } else if (peak0 > 0.0 && peak_modulus(u) >= cfg.collapse_peak_factor * peak0 &&
                 half_width(u) <= cfg.collapse_cells * cfg.grid.spacing()) {
        trigger = "profile collapsed to the grid scale";
      } else if ((ed > cfg.energy_drift_tol || md > cfg.mass_drift_tol) && rec.grad_norm >= 2.0 * first.grad_norm) {
        // Conservation lost while the gradient grows: a collapse outrunning the grid.
        trigger = "conservation lost while the gradient norm grew past twice its initial value";
      }
    }
    // Replay from the last checkpoint with half the step.
    auto refine = [&] {
      if (traj.refinements >= cfg.refinement_levels) return false;
      ++traj.refinements;
      u = ck.state;
      traj.series.resize(ck.series_len);
      traj.snapshots.resize(ck.snap_len);
      traj.max_mass_drift = traj.max_energy_drift = 0.0;
      for (const auto& r : traj.series) {
        traj.max_mass_drift = std::max(traj.max_mass_drift, std::abs(r.mass - m0) / (m0 > 0.0 ? m0 : 1.0));
        if (e_scale > 0.0)
          traj.max_energy_drift = std::max(traj.max_energy_drift, std::abs(r.energy - first.energy) / e_scale);
      }
      t_base = u.time;
      cfg.dt *= 0.5;
      if (cfg.snapshot_stride > 0) cfg.snapshot_stride *= 2;
      stepper = std::make_unique<Stepper>(cfg, spec);
      steps_total = static_cast<std::size_t>(std::llround((t0 + cfg.t_end - t_base) / cfg.dt));
      k = 0;
      return true;
    };
    if (!trigger.empty()) {
      if (!hard_blowup && refine()) continue;
      traj.outcome = Outcome::BlowupDetected;
      std::ostringstream os;
      os << trigger << " at t=" << u.time;
      if (traj.refinements > 0) os << " (persisted after " << traj.refinements << " dt halvings)";
      traj.message = os.str();
      if (!hard_blowup) traj.series.push_back(rec);
      traj.snapshots.push_back(u);
      break;
    }
    // A drift violation may be the step size rather than the solution; the
    // same cascade decides (a collapse then shows up as a trigger above).
    const bool drift = md > cfg.mass_drift_tol || ed > cfg.energy_drift_tol;
    if (drift && outer_mass_fraction(u, rec.mass) <= cfg.boundary_mass_fraction && refine()) continue;

    traj.series.push_back(rec);
    traj.max_mass_drift = std::max(traj.max_mass_drift, md);
    traj.max_energy_drift = std::max(traj.max_energy_drift, ed);

    const bool last = k == steps_total;
    if ((cfg.snapshot_stride > 0 && k % cfg.snapshot_stride == 0) || last) traj.snapshots.push_back(u);

    std::ostringstream os;
    if (outer_mass_fraction(u, rec.mass) > cfg.boundary_mass_fraction) {
      os << "more than " << cfg.boundary_mass_fraction << " of the mass reached the outer 10% of the grid at t="
         << u.time;
    } else if (md > cfg.mass_drift_tol) {
      os << "mass drift " << md << " exceeds tolerance " << cfg.mass_drift_tol << " at t=" << u.time;
    } else if (ed > cfg.energy_drift_tol) {
      os << "energy drift " << ed << " exceeds tolerance " << cfg.energy_drift_tol << " at t=" << u.time;
    }
    if (!os.str().empty()) {
      traj.outcome = Outcome::ToleranceViolated;
      traj.message = os.str();
      if (!last) traj.snapshots.push_back(u);
      break;
    }
    if (k % 50 == 0) ck = {u, traj.series.size(), traj.snapshots.size(), k};
  }
  traj.dt_used = cfg.dt;
  traj.snapshot_stride = cfg.snapshot_stride;
  return traj;
}

DecayFit linear_decay_exponent(const FieldState& f, const PotentialSpec& spec, double t1, double t2,
                               const SolverConfig& cfg_in, std::size_t samples_per_decade) {
  if (!(t1 >= 1.0)) fail(ErrorKind::Config, "linear_decay_exponent: t1 must be at least 1");
  if (!(t2 > t1)) fail(ErrorKind::Config, "linear_decay_exponent: empty time window");
  if (samples_per_decade < 5) fail(ErrorKind::Config, "linear_decay_exponent: fewer than 5 samples per decade");
  SolverConfig cfg = cfg_in;
  cfg.nonlinear = false;
  check_solver_config(cfg);
  if (!(f.grid == cfg.grid)) fail(ErrorKind::Config, "linear_decay_exponent: grid mismatch");

  const double decades = std::log10(t2 / t1);
  const auto count = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(decades * samples_per_decade)) + 1);
  std::vector<std::size_t> sample_steps;
  for (std::size_t j = 0; j < count; ++j) {
    const double t = t1 * std::pow(t2 / t1, static_cast<double>(j) / static_cast<double>(count - 1));
    const auto s = static_cast<std::size_t>(std::llround(t / cfg.dt));
    if (sample_steps.empty() || s > sample_steps.back()) sample_steps.push_back(s);
  }
  if (static_cast<double>(sample_steps.size()) < 5.0 * decades)
    fail(ErrorKind::Config, "linear_decay_exponent: dt too coarse for 5 samples per decade");

  DecayFit fit{};
  FieldState u = f;
  u.time = 0.0;
  Stepper stepper(cfg, spec);
  std::size_t k = 0;
  for (std::size_t s : sample_steps) {
    while (k < s) {
      stepper.advance(u);
      ++k;
    }
    fit.times.push_back(static_cast<double>(k) * cfg.dt);
    fit.sup_norms.push_back(peak_modulus(u));
  }
  const std::size_t m = fit.times.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const double x = std::log(fit.times[j]);
    const double y = std::log(fit.sup_norms[j]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double md = static_cast<double>(m);
  fit.exponent = (md * sxy - sx * sy) / (md * sxx - sx * sx);
  const double icpt = (sy - fit.exponent * sx) / md;
  double ss = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double e = std::log(fit.sup_norms[j]) - (icpt + fit.exponent * std::log(fit.times[j]));
    ss += e * e;
  }
  fit.fit_residual = std::sqrt(ss / md);
  return fit;
}

ProxyReport scattering_proxy(const Trajectory& traj) {
  ProxyReport rep;
  if (traj.series.size() < 4) return rep;
  const auto& s = traj.series;
  rep.final_potential_fraction = s.back().potential_fraction;
  const double lp0 = s.front().lp_norm;
  if (!(lp0 > 0.0) || traj.outcome != Outcome::Completed) return rep;

  const double ta = s.front().t;
  const double tb = s.back().t;
  const double t_half = ta + 0.5 * (tb - ta);
  const double t_q3 = ta + 0.75 * (tb - ta);
  double max_last = 0.0, sum_last = 0.0, sum_third = 0.0;
  std::size_t n_last = 0, n_third = 0;
  double lp_lo = INFINITY, lp_hi = 0.0, lp_sum = 0.0, var_lo = INFINITY, var_hi = 0.0, var_sum = 0.0;
  std::size_t n_half = 0;
  for (const auto& r : s) {
    if (r.t >= t_q3) {
      max_last = std::max(max_last, r.lp_norm);
      sum_last += r.lp_norm;
      ++n_last;
    } else if (r.t >= t_half) {
      sum_third += r.lp_norm;
      ++n_third;
    }
    if (r.t >= t_half) {
      lp_lo = std::min(lp_lo, r.lp_norm);
      lp_hi = std::max(lp_hi, r.lp_norm);
      lp_sum += r.lp_norm;
      var_lo = std::min(var_lo, r.variance);
      var_hi = std::max(var_hi, r.variance);
      var_sum += r.variance;
      ++n_half;
    }
  }
  rep.decay_factor_lp = max_last / lp0;
  const bool trending_down = n_third == 0 || sum_last / static_cast<double>(n_last) < sum_third / static_cast<double>(n_third);
  const double lp_mean = lp_sum / static_cast<double>(n_half);
  const double var_mean = var_sum / static_cast<double>(n_half);
  const bool stable = (lp_hi - lp_lo) <= 0.05 * lp_mean && (var_hi - var_lo) <= 0.05 * var_mean;
  if (rep.decay_factor_lp <= kScatterProxyThreshold && trending_down) {
    rep.verdict_hint = ProxyHint::ScatterLike;
  } else if (stable) {
    rep.verdict_hint = ProxyHint::SolitonLike;
  }
  return rep;
}

}  // namespace nlsv
