#include "cutoffs.hpp"

#include <algorithm>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "errors.hpp"

namespace nlsv {

double cutoff_chi(double s, double eta) {
  if (s <= 1.0 - eta) return 1.0;
  if (s >= 1.0) return 0.0;
  const double t = (s - (1.0 - eta)) / eta;
  return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double cutoff_chi_prime(double s, double eta) {
  if (s <= 1.0 - eta || s >= 1.0) return 0.0;
  const double t = (s - (1.0 - eta)) / eta;
  return -30.0 * t * t * (1.0 - t) * (1.0 - t) / eta;
}

namespace {

using GL8 = boost::math::quadrature::gauss<double, 8>;
using GL20 = boost::math::quadrature::gauss<double, 20>;

// int_a^b chi^2(d) d dd; exact for the piecewise polynomial integrand.
double shell_integral(double a, double b, double eta) {
  if (b <= a) return 0.0;
  const double knee = 1.0 - eta;
  double s = 0.0;
  const double flat_hi = std::min(b, knee);
  if (flat_hi > a) s += 0.5 * (flat_hi * flat_hi - a * a);
  const double lo = std::max(a, knee), hi = std::min(b, 1.0);
  if (hi > lo) {
    s += GL8::integrate([eta](double d) { const double c = cutoff_chi(d, eta); return c * c * d; }, lo, hi);
  }
  return s;
}

}  // namespace

double cutoff_autocorrelation(double s, double eta, double power) {
  // (1/omega_3) 2 pi int_0^1 rho^2 chi^p(rho) int_{-1}^{1} chi^2(|s e - rho w|) dmu drho,
  // the inner integral rewritten in d = |x - z| as (1/(s rho)) int d chi^2(d) dd.
  const double knee = 1.0 - eta;
  auto outer = [&](double rho) {
    if (rho <= 0.0) return 0.0;
    const double cp = std::pow(cutoff_chi(rho, eta), power);
    if (cp == 0.0) return 0.0;
    double inner;
    if (s == 0.0) {
      const double c = cutoff_chi(rho, eta);
      inner = 2.0 * c * c;
    } else {
      inner = shell_integral(std::abs(s - rho), s + rho, eta) / (s * rho);
    }
    return rho * rho * cp * inner;
  };
  std::vector<double> cuts{0.0, 1.0, knee};
  for (double c : {s + knee, s + 1.0, s - knee, s - 1.0, knee - s, 1.0 - s}) cuts.push_back(c);
  std::vector<double> pts;
  for (double c : cuts)
    if (c >= 0.0 && c <= 1.0) pts.push_back(c);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k)
    if (pts[k + 1] > pts[k]) total += GL20::integrate(outer, pts[k], pts[k + 1]);
  return 1.5 * total;
}

struct CutoffProfile::Splines {
  boost::math::interpolators::cardinal_cubic_b_spline<double> phi, phi1, psi;
};

CutoffProfile::CutoffProfile(double eta, double radius, double alpha, std::size_t resolution)
    : eta_(eta), radius_(radius), alpha_(alpha) {
  if (!(eta > 0.0 && eta < 1.0)) fail(ErrorKind::Config, "cutoffs: eta must lie in (0, 1)");
  if (!(radius > 0.0)) fail(ErrorKind::Config, "cutoffs: radius must be positive");
  if (resolution < 128) fail(ErrorKind::Config, "cutoffs: resolution below 128");
  const std::size_t m = resolution;
  const double ds = 2.0 / static_cast<double>(m);
  table_r_.resize(m + 1);
  phi_.resize(m + 1);
  phi1_.resize(m + 1);
  psi_.resize(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    const double s = ds * static_cast<double>(j);
    table_r_[j] = s * radius;
    phi_[j] = j == m ? 0.0 : cutoff_autocorrelation(s, eta, 2.0);
    phi1_[j] = j == m ? 0.0 : cutoff_autocorrelation(s, eta, alpha + 2.0);
  }
  // psi(s) = (1/s) int_0^s phi: cumulative trapezoid with the Euler-Maclaurin
  // end correction -ds^2/12 (phi'(s) - phi'(0)), phi'(0) = 0.
  const boost::math::interpolators::cardinal_cubic_b_spline<double> phi_spline(phi_.begin(), phi_.end(), 0.0, ds,
                                                                               0.0, 0.0);
  psi_[0] = phi_[0];
  double acc = 0.0;
  for (std::size_t j = 1; j <= m; ++j) {
    acc += 0.5 * ds * (phi_[j - 1] + phi_[j]);
    const double s = ds * static_cast<double>(j);
    const double slope = j == m ? 0.0 : phi_spline.prime(s);
    psi_[j] = (acc - ds * ds / 12.0 * slope) / s;
  }
  const double psi_end_slope = (phi_[m] - psi_[m]) / 2.0;
  splines_ = std::make_shared<Splines>(Splines{
      phi_spline,
      {phi1_.begin(), phi1_.end(), 0.0, ds, 0.0, 0.0},
      {psi_.begin(), psi_.end(), 0.0, ds, 0.0, psi_end_slope}});
}

double CutoffProfile::chi(double r) const { return cutoff_chi(r / radius_, eta_); }
double CutoffProfile::chi_prime(double r) const { return cutoff_chi_prime(r / radius_, eta_) / radius_; }

double CutoffProfile::phi(double r) const {
  const double s = r / radius_;
  return s >= 2.0 ? 0.0 : splines_->phi(s);
}

double CutoffProfile::phi1(double r) const {
  const double s = r / radius_;
  return s >= 2.0 ? 0.0 : splines_->phi1(s);
}

double CutoffProfile::psi(double r) const {
  const double s = r / radius_;
  return s >= 2.0 ? psi_.back() * 2.0 / s : splines_->psi(s);
}

double CutoffProfile::phi_prime(double r) const {
  const double s = r / radius_;
  return s >= 2.0 ? 0.0 : splines_->phi.prime(s) / radius_;
}

double CutoffProfile::psi_prime(double r) const {
  if (r <= 0.0) return 0.0;
  return (phi(r) - psi(r)) / r;
}

void CutoffProfile::write_csv(const std::string& path) const {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::Io, "cannot open " + path + " for writing");
  os << "r,chi,phi,phi1,psi\n";
  char buf[160];
  for (std::size_t j = 0; j < table_r_.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", table_r_[j], chi(table_r_[j]), phi_[j],
                  phi1_[j], psi_[j]);
    os << buf;
  }
}

CutoffProfile build_cutoffs(double eta, double radius, double alpha, std::size_t resolution) {
  return CutoffProfile(eta, radius, alpha, resolution);
}

CutoffPropertyReport verify_cutoff_properties(const CutoffProfile& p) {
  CutoffPropertyReport rep;
  const double R = p.radius();
  const auto& r = p.table_r();
  const auto& phi = p.table_phi();
  const auto& phi1 = p.table_phi1();
  const auto& psi = p.table_psi();
  const std::size_t m = r.size() - 1;
  const double dr = r[1] - r[0];

  rep.min_psi_minus_phi = INFINITY;
  double max_dpsi = 0.0, max_id_err = 0.0;
  for (std::size_t j = 0; j <= m; ++j) {
    rep.min_psi_minus_phi = std::min(rep.min_psi_minus_phi, psi[j] - phi[j]);
    rep.c_phi_minus_phi1 = std::max(rep.c_phi_minus_phi1, std::abs(phi[j] - phi1[j]) / p.eta());
    if (j > 0) {
      rep.c_psi_bound = std::max(rep.c_psi_bound, std::abs(psi[j]) / std::min(1.0, R / r[j]));
      rep.c_psi_minus_phi =
          std::max(rep.c_psi_minus_phi, std::abs(psi[j] - phi[j]) / std::min(r[j] / R, R / r[j]));
      const double ident = (phi[j] - psi[j]) / r[j];
      rep.c_grad_psi = std::max(rep.c_grad_psi, std::abs(ident) / std::min(1.0 / R, R / (r[j] * r[j])));
      if (j < m) {
        const double num = (psi[j + 1] - psi[j - 1]) / (2.0 * dr);
        max_id_err = std::max(max_id_err, std::abs(num - ident));
        max_dpsi = std::max(max_dpsi, std::abs(ident));
      }
    }
    rep.c_grad_phi = std::max(rep.c_grad_phi, std::abs(p.phi_prime(r[j])) * R);
  }
  rep.psi_derivative_identity_error = max_dpsi > 0.0 ? max_id_err / max_dpsi : 0.0;

  // Tail: phi vanishes, psi decays like R/r.
  rep.psi_r_over_R_min = INFINITY;
  for (int k = 0; k <= 300; ++k) {
    const double x = R * (1.0 + 3.0 * k / 300.0);
    rep.max_phi_beyond_2R = std::max(rep.max_phi_beyond_2R, x >= 2.0 * R ? std::abs(p.phi(x)) : 0.0);
    const double v = p.psi(x) * x / R;
    rep.psi_r_over_R_min = std::min(rep.psi_r_over_R_min, v);
    rep.psi_r_over_R_max = std::max(rep.psi_r_over_R_max, v);
    if (x > 2.0 * R) {
      rep.c_psi_bound = std::max(rep.c_psi_bound, p.psi(x) / (R / x));
      rep.c_psi_minus_phi = std::max(rep.c_psi_minus_phi, p.psi(x) / (R / x));
      rep.c_grad_psi = std::max(rep.c_grad_psi, std::abs(p.psi_prime(x)) / (R / (x * x)));
    }
  }
  rep.holds = rep.min_psi_minus_phi >= -1e-12 && rep.max_phi_beyond_2R == 0.0 &&
              rep.psi_derivative_identity_error < 1e-3 && rep.psi_r_over_R_min > 0.0;
  return rep;
}

}  // namespace nlsv
