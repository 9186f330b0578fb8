#pragma once

#include <memory>
#include <string>
#include <vector>

namespace nlsv {

// Quintic smoothstep cutoff: 1 on [0, 1-eta], 0 beyond 1, C^2 joins.
double cutoff_chi(double s, double eta);
double cutoff_chi_prime(double s, double eta);

// Tabulated phi_R, phi_{1,R}, psi_R on r in [0, 2R]; beyond 2R phi = phi1 = 0
// and psi_R(r) = psi_R(2R) 2R / r.
class CutoffProfile {
 public:
  CutoffProfile(double eta, double radius, double alpha, std::size_t resolution);

  double eta() const { return eta_; }
  double radius() const { return radius_; }
  double alpha() const { return alpha_; }
  std::size_t resolution() const { return table_r_.size() - 1; }

  double chi(double r) const;
  double chi_prime(double r) const;
  double phi(double r) const;
  double phi1(double r) const;
  double psi(double r) const;
  double phi_prime(double r) const;
  double psi_prime(double r) const;  // (phi - psi) / r

  const std::vector<double>& table_r() const { return table_r_; }
  const std::vector<double>& table_phi() const { return phi_; }
  const std::vector<double>& table_phi1() const { return phi1_; }
  const std::vector<double>& table_psi() const { return psi_; }

  void write_csv(const std::string& path) const;

 private:
  struct Splines;
  double eta_, radius_, alpha_;
  std::vector<double> table_r_, phi_, phi1_, psi_;
  std::shared_ptr<const Splines> splines_;
};

// phi at scaled radius s = |x|/R of (1/omega_3) int chi^2(x - z) chi^p(z) dz.
double cutoff_autocorrelation(double s, double eta, double power);

CutoffProfile build_cutoffs(double eta, double radius, double alpha, std::size_t resolution = 1024);

struct CutoffPropertyReport {
  double min_psi_minus_phi = 0.0;       // should be >= 0
  double max_phi_beyond_2R = 0.0;       // should be 0
  double c_psi_bound = 0.0;             // |psi| <= C min{1, R/r}
  double psi_derivative_identity_error = 0.0;  // relative, vs numerical derivative
  double c_grad_phi = 0.0;              // |phi_R'| <= C / R
  double c_phi_minus_phi1 = 0.0;        // |phi - phi1| <= C eta
  double psi_r_over_R_min = 0.0;        // psi(r) r / R on [R, 4R]
  double psi_r_over_R_max = 0.0;
  double c_psi_minus_phi = 0.0;         // |psi - phi| <= C min{r/R, R/r}
  double c_grad_psi = 0.0;              // |psi_R'| <= C min{1/R, R/r^2}
  bool holds = false;
};

CutoffPropertyReport verify_cutoff_properties(const CutoffProfile& p);

}  // namespace nlsv
