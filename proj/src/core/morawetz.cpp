#include "morawetz.hpp"

#include <cmath>

#include "errors.hpp"

namespace nlsv {

namespace {

// Composite Simpson weight of node i for int_0^{r_max} f dr.
double simpson_weight(std::size_t i, const RadialGrid& g) {
  const std::size_t n = g.n_points();
  const double h = g.spacing();
  if (i == 0 || i == n) return h / 3.0;
  return (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
}

}  // namespace

double morawetz_action(const FieldState& u, const CutoffProfile& p) {
  const auto ur = radial_gradient(u);
  std::vector<double> f(u.values.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = u.grid.r(i);
    f[i] = p.psi(r) * r * 2.0 * std::imag(std::conj(u.values[i]) * ur[i]);
  }
  return radial_integral(u.grid, f);
}

MorawetzTerms morawetz_terms(const FieldState& u, const CutoffProfile& p, const PotentialSpec& spec, Sign sign,
                             double alpha) {
  const auto ur = radial_gradient(u);
  const std::size_t m = u.values.size();
  std::vector<double> f1(m), f2(m), f3(m), f4(m, 0.0);
  const double mu = sign_factor(sign);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = u.grid.r(i);
    const double phi = p.phi(r), psi = p.psi(r);
    const double dens = std::norm(u.values[i]);
    f1[i] = (phi + 2.0 * psi) * std::pow(dens, 0.5 * (alpha + 2.0));
    const double weight_prime = p.phi_prime(r) + 2.0 * p.psi_prime(r);
    f2[i] = weight_prime * 2.0 * std::real(std::conj(u.values[i]) * ur[i]);
    f3[i] = phi * std::norm(ur[i]);
    if (i > 0 && !spec.is_zero()) f4[i] = psi * r * radial_derivative(spec, r) * dens;
  }
  MorawetzTerms t{};
  t.nonlinear = mu * 2.0 * alpha / (alpha + 2.0) * radial_integral(u.grid, f1);
  t.laplacian = radial_integral(u.grid, f2);
  t.kinetic = 4.0 * radial_integral(u.grid, f3);
  t.angular = 0.0;  // |grad u| = |u_r| for radial fields
  t.potential = -2.0 * radial_integral(u.grid, f4);
  return t;
}

MorawetzSeries morawetz_identity_residual(const Trajectory& traj, const CutoffProfile& p,
                                          const PotentialSpec& spec, Sign sign, double alpha) {
  const auto& snaps = traj.snapshots;
  if (snaps.size() < 3) fail(ErrorKind::Config, "morawetz_identity_residual: fewer than 3 snapshots");
  const double R = p.radius();
  const double a = alpha;
  std::vector<double> action(snaps.size());
  for (std::size_t i = 0; i < snaps.size(); ++i) action[i] = morawetz_action(snaps[i], p);

  MorawetzSeries out;
  for (std::size_t i = 1; i + 1 < snaps.size(); ++i) {
    const double h1 = snaps[i].time - snaps[i - 1].time;
    const double h2 = snaps[i + 1].time - snaps[i].time;
    if (!(h1 > 0.0 && h2 > 0.0)) continue;
    MorawetzSample s{};
    s.t = snaps[i].time;
    s.action = action[i];
    s.dmdt = (h1 * h1 * action[i + 1] - h2 * h2 * action[i - 1] - (h1 * h1 - h2 * h2) * action[i]) /
             (h1 * h2 * (h1 + h2));
    s.terms = morawetz_terms(snaps[i], p, spec, sign, a);

    const auto& u = snaps[i];
    std::vector<double> g1(u.values.size()), g2(u.values.size()), g3(u.values.size(), 0.0);
    for (std::size_t j = 0; j < u.values.size(); ++j) {
      const double r = u.grid.r(j);
      const double lp = std::pow(std::norm(u.values[j]), 0.5 * (a + 2.0));
      g1[j] = (p.phi(r) - p.phi1(r)) * lp;
      g2[j] = (p.psi(r) - p.phi(r)) * lp;
      if (j > 0 && !spec.is_zero()) g3[j] = radial_derivative(spec, r) * std::norm(u.values[j]);
    }
    const double e1 = 6.0 * a / (a + 2.0) * radial_integral(u.grid, g1);
    const double e2 = 4.0 * a / (a + 2.0) * radial_integral(u.grid, g2);
    const double errs = sign == Sign::Focusing ? e1 + e2 : -(e1 + e2);
    s.inequality_lhs = -R * radial_integral(u.grid, g3);
    s.inequality_rhs = s.dmdt - s.terms.laplacian + errs;
    s.slack = s.inequality_rhs - s.inequality_lhs;
    out.scale = std::max(out.scale, std::abs(s.terms.nonlinear) + std::abs(s.terms.laplacian) +
                                        std::abs(s.terms.kinetic) + std::abs(s.terms.potential));
    out.samples.push_back(s);
  }
  if (out.samples.empty()) fail(ErrorKind::Config, "morawetz_identity_residual: snapshot times not increasing");
  out.min_slack = INFINITY;
  for (auto& s : out.samples) {
    s.residual = out.scale > 0.0 ? std::abs(s.dmdt - s.terms.sum()) / out.scale : 0.0;
    out.max_residual = std::max(out.max_residual, s.residual);
    out.min_slack = std::min(out.min_slack, s.slack);
  }
  return out;
}

namespace {

struct AxialSums {
  double a = 0.0;   // int chi^2 |u|^2
  double p3 = 0.0;  // int chi^2 Im(conj(u) d_3 u) for the unboosted field
};

AxialSums axial_sums(const FieldState& u, const CutoffProfile& p, double z, const AxialSettings& q) {
  const auto rule = axial_rule(q.n_mu);
  const auto ur = radial_gradient(u);
  AxialSums s;
  for (std::size_t i = 1; i < u.values.size(); ++i) {
    const double r = u.grid.r(i);
    const double wr = simpson_weight(i, u.grid) * 2.0 * M_PI * r * r;
    const double dens = std::norm(u.values[i]);
    const double cur = std::imag(std::conj(u.values[i]) * ur[i]);
    if (dens == 0.0 && cur == 0.0) continue;
    for (std::size_t k = 0; k < rule.mu.size(); ++k) {
      const double mu = rule.mu[k];
      const double d = std::sqrt(std::max(0.0, r * r + z * z - 2.0 * r * z * mu));
      const double c = p.chi(d);
      if (c == 0.0) continue;
      const double w = wr * rule.mu_weight[k] * c * c;
      s.a += w * dens;
      s.p3 += w * cur * mu;
    }
  }
  return s;
}

}  // namespace

double localized_momentum(const FieldState& u, const CutoffProfile& p, double z, double k, const AxialSettings& q) {
  const auto s = axial_sums(u, p, z, q);
  return s.p3 + k * s.a;
}

double galilean_shift(const FieldState& u, const CutoffProfile& p, double z, double k, const AxialSettings& q) {
  const auto s = axial_sums(u, p, z, q);
  if (!(s.a >= 1e-14 * mass(u)) || s.a == 0.0) return 0.0;
  return -(s.p3 + k * s.a) / s.a;
}

InteractionIntegrand interaction_integrand(const FieldState& u, const CutoffProfile& p, double z,
                                           const std::array<double, 3>& xi, std::size_t n_mu,
                                           std::size_t n_azimuth) {
  if (n_azimuth < 4) fail(ErrorKind::Config, "interaction_integrand: azimuth resolution below 4");
  const auto rule = axial_rule(n_mu);
  const auto ur = radial_gradient(u);
  InteractionIntegrand out{0.0, 0.0, {0.0, 0.0, 0.0}};
  std::vector<double> cphi(n_azimuth), sphi(n_azimuth);
  for (std::size_t j = 0; j < n_azimuth; ++j) {
    const double ang = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n_azimuth);
    cphi[j] = std::cos(ang);
    sphi[j] = std::sin(ang);
  }
  const double wphi = 2.0 * M_PI / static_cast<double>(n_azimuth);
  const cplx I(0.0, 1.0);
  for (std::size_t i = 1; i < u.values.size(); ++i) {
    const double r = u.grid.r(i);
    const cplx uu = u.values[i];
    const cplx du = ur[i];
    if (uu == 0.0 && du == 0.0) continue;
    const double wr = simpson_weight(i, u.grid) * r * r;
    for (std::size_t k = 0; k < rule.mu.size(); ++k) {
      const double mu = rule.mu[k];
      const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
      const double d = std::sqrt(std::max(0.0, r * r + z * z - 2.0 * r * z * mu));
      const double c = p.chi(d);
      if (c == 0.0) continue;
      const double w0 = wr * rule.mu_weight[k] * c * c * wphi;
      for (std::size_t j = 0; j < n_azimuth; ++j) {
        const double xh[3] = {st * cphi[j], st * sphi[j], mu};
        // grad(e^{i x.xi} u) e^{-i x.xi} = u_r xhat + i xi u
        double b = 0.0;
        for (int c3 = 0; c3 < 3; ++c3) {
          const cplx g = du * xh[c3] + I * xi[c3] * uu;
          b += std::norm(g);
          out.p[c3] += w0 * std::imag(std::conj(uu) * g);
        }
        out.a += w0 * std::norm(uu);
        out.b += w0 * b;
      }
    }
  }
  return out;
}

double interaction_action(const FieldState& u, const CutoffProfile& p, const InteractionSettings& q) {
  const std::size_t n = u.grid.n_points();
  if (q.radial_stride == 0 || n / q.radial_stride < 32)
    fail(ErrorKind::Config, "interaction_action: fewer than 32 radial nodes");
  if (q.n_cos < 8) fail(ErrorKind::Config, "interaction_action: fewer than 8 angular nodes");
  const auto ur = radial_gradient(u);
  using GL = std::vector<double>;
  const auto rule = axial_rule(q.n_cos);
  const GL& cs = rule.mu;
  const GL& cw = rule.mu_weight;
  const double H = q.radial_stride * u.grid.spacing();
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i <= n; i += q.radial_stride) idx.push_back(i);
  std::vector<double> dens(idx.size()), cur(idx.size()), rr(idx.size()), wt(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const std::size_t i = idx[a];
    rr[a] = u.grid.r(i);
    dens[a] = std::norm(u.values[i]);
    cur[a] = 2.0 * std::imag(std::conj(u.values[i]) * ur[i]);
    wt[a] = (a == 0 || a + 1 == idx.size() ? 0.5 : 1.0) * H;
  }
  double total = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (cur[a] == 0.0) continue;
    const double rx = rr[a];
    double inner = 0.0;
    for (std::size_t b = 0; b < idx.size(); ++b) {
      if (dens[b] == 0.0) continue;
      const double ry = rr[b];
      double ang = 0.0;
      for (std::size_t k = 0; k < cs.size(); ++k) {
        const double d = std::sqrt(std::max(0.0, rx * rx + ry * ry - 2.0 * rx * ry * cs[k]));
        ang += cw[k] * p.psi(d) * (rx - ry * cs[k]);
      }
      inner += wt[b] * 2.0 * M_PI * ry * ry * dens[b] * ang;
    }
    total += wt[a] * 4.0 * M_PI * rx * rx * cur[a] * inner;
  }
  return total;
}

CoercivityResult coercivity_check(const FieldState& u, const CutoffProfile& p, double z, const GroundState& gs,
                                  double rho, double k, const AxialSettings& q) {
  const double a = gs.alpha;
  CoercivityResult res{};
  res.xi = galilean_shift(u, p, z, k, q);
  const double kk = k + res.xi;
  const auto rule = axial_rule(q.n_mu);
  const auto ur = radial_gradient(u);
  double g2 = 0.0, lp = 0.0;
  const cplx I(0.0, 1.0);
  for (std::size_t i = 1; i < u.values.size(); ++i) {
    const double r = u.grid.r(i);
    const cplx uu = u.values[i];
    const cplx du = ur[i];
    if (uu == 0.0 && du == 0.0) continue;
    const double wr = simpson_weight(i, u.grid) * 2.0 * M_PI * r * r;
    const double mod = std::abs(uu);
    for (std::size_t j = 0; j < rule.mu.size(); ++j) {
      const double mu = rule.mu[j];
      const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
      const double d = std::sqrt(std::max(0.0, r * r + z * z - 2.0 * r * z * mu));
      const double c = p.chi(d);
      const double cp = p.chi_prime(d);
      if (c == 0.0 && cp == 0.0) continue;
      const double w = wr * rule.mu_weight[j];
      const double er = d > 0.0 ? r * st / d : 0.0;
      const double ez = d > 0.0 ? (r * mu - z) / d : 0.0;
      const cplx grad_rho = cp * er * uu + c * du * st;
      const cplx grad_z = cp * ez * uu + c * (du * mu + I * kk * uu);
      g2 += w * (std::norm(grad_rho) + std::norm(grad_z));
      lp += w * std::pow(c * mod, a + 2.0);
    }
  }
  res.grad_sq = g2;
  res.lhs = g2 - 3.0 * a / (2.0 * (a + 2.0)) * lp;
  res.rhs = coercivity_nu(rho, a) * g2;
  res.holds = res.lhs >= res.rhs - 1e-8;
  return res;
}

}  // namespace nlsv
