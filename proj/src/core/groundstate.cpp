#include "groundstate.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "field.hpp"
#include "functionals.hpp"

namespace nlsv {

CriticalExponents critical_exponents(double alpha) {
  if (!(alpha > 4.0 / 3.0 && alpha < 4.0)) {
    std::ostringstream os;
    os << "alpha must lie in the open interval (4/3, 4), got " << alpha;
    fail(ErrorKind::Domain, os.str());
  }
  return {1.5 - 2.0 / alpha, (4.0 - alpha) / (3.0 * alpha - 4.0)};
}

namespace {

enum class ShotOutcome { Crossed, TurnedUp, Undecided };

struct Shot {
  ShotOutcome outcome = ShotOutcome::Undecided;
  std::size_t event_index = 0;  // first index with Q < 0 or Q' > 0
  std::vector<double> q, p;
};

// Integrates from r = h (series start) to r_max with classical RK4.
Shot shoot(double q0, double alpha, const RadialGrid& grid, bool keep_profile) {
  const std::size_t n = grid.n_points();
  const double h = grid.spacing();
  Shot s;
  if (keep_profile) {
    s.q.assign(n + 1, 0.0);
    s.p.assign(n + 1, 0.0);
    s.q[0] = q0;
  }
  auto rhs = [alpha](double r, double q, double p) {
    return std::array<double, 2>{p, -2.0 * p / r + q - std::pow(std::abs(q), alpha) * q};
  };
  // Q(r) = Q0 + Q''(0) r^2/2 with Q''(0) = (Q0 - Q0^{alpha+1})/3.
  const double curv = (q0 - std::pow(q0, alpha + 1.0)) / 3.0;
  double q = q0 + 0.5 * curv * h * h;
  double p = curv * h;
  if (keep_profile) {
    s.q[1] = q;
    s.p[1] = p;
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double r = grid.r(i);
    const auto k1 = rhs(r, q, p);
    const auto k2 = rhs(r + 0.5 * h, q + 0.5 * h * k1[0], p + 0.5 * h * k1[1]);
    const auto k3 = rhs(r + 0.5 * h, q + 0.5 * h * k2[0], p + 0.5 * h * k2[1]);
    const auto k4 = rhs(r + h, q + h * k3[0], p + h * k3[1]);
    q += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    p += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    if (keep_profile) {
      s.q[i + 1] = q;
      s.p[i + 1] = p;
    }
    if (q < 0.0) {
      s.outcome = ShotOutcome::Crossed;
      s.event_index = i + 1;
      return s;
    }
    if (p > 0.0) {
      s.outcome = ShotOutcome::TurnedUp;
      s.event_index = i + 1;
      return s;
    }
  }
  return s;
}

}  // namespace

void refresh_norms(GroundState& gs) {
  const auto ce = critical_exponents(gs.alpha);
  gs.sigma_c = ce.sigma_c;
  gs.gamma_c = ce.gamma_c;
  const std::size_t m = gs.grid.size();
  std::vector<double> f(m);
  for (std::size_t i = 0; i < m; ++i) f[i] = gs.q_values[i] * gs.q_values[i];
  gs.mass = radial_trapezoid(gs.grid, f);
  // Same stencil as the field functionals, so that classifying u0 = Q
  // reproduces the thresholds to roundoff.
  FieldState q{gs.grid, std::vector<cplx>(gs.q_values.begin(), gs.q_values.end()), 0.0};
  gs.grad_sq = gradient_sq(q);
  for (std::size_t i = 0; i < m; ++i) f[i] = std::pow(std::abs(gs.q_values[i]), gs.alpha + 2.0);
  gs.lp_norm = radial_integral(gs.grid, f);
  const double a = gs.alpha;
  gs.c_opt = gs.lp_norm / (std::pow(gs.grad_sq, 0.75 * a) * std::pow(gs.mass, (4.0 - a) / 4.0));
  gs.e0 = 0.5 * gs.grad_sq - gs.lp_norm / (a + 2.0);
  gs.q0 = gs.q_values[0];
}

GroundState solve_ground_state(double alpha, const RadialGrid& grid, double tol) {
  (void)critical_exponents(alpha);
  if (!(tol > 0.0 && tol < 1e-2)) fail(ErrorKind::Config, "solve_ground_state: tol must lie in (0, 1e-2)");

  // Bracket Q(0): small values turn up, large values cross zero.
  double lo = 1.0 + 1e-3;
  if (shoot(lo, alpha, grid, false).outcome != ShotOutcome::TurnedUp)
    fail(ErrorKind::Config, "solve_ground_state: no turning shot near Q(0)=1; r_max too small");
  double hi = 2.0;
  while (shoot(hi, alpha, grid, false).outcome != ShotOutcome::Crossed) {
    hi *= 2.0;
    if (hi > 1e6) fail(ErrorKind::Config, "solve_ground_state: bisection bracket not found; r_max too small");
  }
  // Bisect down to adjacent doubles: every extra digit in Q(0) pushes the
  // divergence of the shot further out.
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const auto out = shoot(mid, alpha, grid, false).outcome;
    if (out == ShotOutcome::Crossed) {
      hi = mid;
    } else if (out == ShotOutcome::TurnedUp) {
      lo = mid;
    } else {
      lo = hi = mid;
      break;
    }
  }

  const std::size_t n = grid.n_points();
  Shot best = shoot(lo, alpha, grid, true);
  Shot other = shoot(hi, alpha, grid, true);
  const std::size_t event_lo = best.outcome == ShotOutcome::Undecided ? n : best.event_index;
  const std::size_t event_hi = other.outcome == ShotOutcome::Undecided ? n : other.event_index;

  // The true profile lies between the two bracketing shots; trust them while
  // they agree to 1e-9 relative, then continue with the linear tail.
  std::size_t match = 1;
  const std::size_t last = std::min(event_lo, event_hi);
  for (std::size_t i = 1; i < last; ++i) {
    if (std::abs(best.q[i] - other.q[i]) > 1e-9 * std::abs(best.q[i])) break;
    match = i;
  }
  if (best.outcome == ShotOutcome::Undecided && other.outcome == ShotOutcome::Undecided) match = n;
  if (match < 2) fail(ErrorKind::Solver, "solve_ground_state: shot diverged before the profile decayed");

  GroundState gs;
  gs.alpha = alpha;
  gs.grid = grid;
  gs.q_values.assign(n + 1, 0.0);
  gs.q_prime.assign(n + 1, 0.0);
  for (std::size_t i = 0; i <= std::min(match, n); ++i) {
    gs.q_values[i] = best.q[i];
    gs.q_prime[i] = best.p[i];
  }
  if (match < n) {
    const double rm = grid.r(match);
    const double qm = best.q[match];
    for (std::size_t i = match + 1; i <= n; ++i) {
      const double r = grid.r(i);
      const double q = qm * (rm / r) * std::exp(-(r - rm));
      gs.q_values[i] = q;
      gs.q_prime[i] = -q * (1.0 + 1.0 / r);
    }
  }
  gs.matching_radius = grid.r(std::min(match, n));

  for (std::size_t i = 1; i <= n; ++i) {
    if (!(gs.q_values[i] > 0.0) || gs.q_values[i] >= gs.q_values[i - 1])
      fail(ErrorKind::Solver, "solve_ground_state: converged profile is not positive and strictly decreasing");
  }
  if (!(gs.q_values[n] < tol * gs.q_values[0])) {
    std::ostringstream os;
    os << "solve_ground_state: Q(r_max)/Q(0) = " << gs.q_values[n] / gs.q_values[0] << " exceeds tol " << tol
       << "; increase r_max";
    fail(ErrorKind::Config, os.str());
  }
  refresh_norms(gs);
  return gs;
}

PohozaevResiduals pohozaev_residuals(const GroundState& gs) {
  const double a = gs.alpha;
  return {std::abs(gs.mass - (4.0 - a) / (3.0 * a) * gs.grad_sq) / gs.mass,
          std::abs(gs.mass - (4.0 - a) / (2.0 * (a + 2.0)) * gs.lp_norm) / gs.mass};
}

SharpConstants sharp_constants(const GroundState& gs) {
  const double a = gs.alpha;
  const double sc = gs.sigma_c;
  const double grad = std::sqrt(gs.grad_sq);
  const double l2 = std::sqrt(gs.mass);
  const double lambda0 = grad * std::pow(l2, sc);
  SharpConstants k{};
  k.c_opt = 2.0 * (a + 2.0) / (3.0 * a) * std::pow(lambda0, -(3.0 * a - 4.0) / 2.0);
  // E0(Q) as the energy itself, so the classifier reproduces it exactly at u0 = Q.
  // The Pohozaev form (3a-4)/(6a) ||grad Q||^2 agrees up to the residuals.
  k.e0_q = gs.e0;
  k.threshold_energy = k.e0_q * std::pow(gs.mass, sc);
  k.threshold_grad = lambda0;
  k.threshold_scat = gs.lp_norm * std::pow(gs.mass, sc);
  return k;
}

void write_ground_state_csv(const GroundState& gs, const std::string& path) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::Io, "cannot open " + path + " for writing");
  os << "r,Q\n";
  char buf[96];
  for (std::size_t i = 0; i < gs.grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", gs.grid.r(i), gs.q_values[i]);
    os << buf;
  }
}

}  // namespace nlsv
