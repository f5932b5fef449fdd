#ifndef KORTEWEG_EVANS_HPP
#define KORTEWEG_EVANS_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <optional>

#include "korteweg/functionals.hpp"
#include "korteweg/profile.hpp"

namespace korteweg {

using cplx = std::complex<double>;
using Vec4 = Eigen::Matrix<cplx, 4, 1>;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using Wedge = Eigen::Matrix<cplx, 6, 1>;
using Mat6 = Eigen::Matrix<cplx, 6, 6>;

// Phase vector W = (u, v, v', v''). Two-forms on C^4 use the basis
// e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4.

/// Linearized eigenvalue system W' = A(x, lambda) W at a point where the
/// profile takes the values (vbar, vbar_x).
Mat4 coefficient_matrix(const ModelParams& params, double s, double vbar,
                        double vbar_x, cplx lambda);
Mat4 coefficient_matrix(const WaveProfile& profile, double x, cplx lambda);
Mat4 limiting_matrix(const ModelParams& params, double s, cplx lambda);

/// Induced action on two-forms: (a^b)' = Aa^b + a^Ab.
Mat6 exterior_square(const Mat4& a);
Wedge wedge(const Vec4& a, const Vec4& b);
/// a ^ b as a multiple of e1^e2^e3^e4.
cplx wedge_pairing(const Wedge& a, const Wedge& b);
/// eta12 eta34 - eta13 eta24 + eta14 eta23; zero for decomposable forms.
cplx plucker(const Wedge& eta);

/// Characteristic polynomial (lambda - s mu)^2 + alpha_inf mu^2 + kappa mu^4.
cplx characteristic(const ModelParams& params, double s, cplx lambda, cplx mu);

struct Splitting {
  /// Roots of the characteristic polynomial sorted by real part; the first
  /// two decay at +inf, the last two at -inf.
  std::array<cplx, 4> mu;
  /// Eigenvectors (q, 1, mu, mu^2) with q = lambda / mu - s; at lambda = 0
  /// the slow pair is the analytic continuation (-+c, 1, 0, 0).
  std::array<Vec4, 4> vectors;
  /// Decaying two-planes with unit (u, v) minor (eta12 = 1).
  Wedge stable;
  Wedge unstable;
  cplx stable_rate;    // mu[0] + mu[1]
  cplx unstable_rate;  // mu[2] + mu[3]
};

/// Requires Re lambda > 0 or lambda = 0; throws kInvalidArgument outside that
/// domain and kSplittingLost if the 2-2 count fails.
Splitting limiting_splitting(const ModelParams& params, double s, cplx lambda);

enum class Normalization {
  /// Initial planes with (u, v) minor of modulus one, oriented like the
  /// translation-mode basis.
  kUnit,
  /// Initial planes scaled so that at lambda = 0 the fast mode equals
  /// d/dx of the profile and the slow modes have unit v-component.
  kPaper,
};

struct EvansOptions {
  Normalization normalization = Normalization::kUnit;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
};

struct EvansFrame {
  cplx lambda;
  Wedge eta_plus;   // renormalized plane decaying at +inf, at x = 0
  Wedge eta_minus;  // renormalized plane decaying at -inf, at x = 0
  double renorm_plus = 0.0;   // log of the factor removed on [0, L]
  double renorm_minus = 0.0;  // log of the factor removed on [-L, 0]
  double plucker_drift = 0.0;
};

struct EvansSample {
  cplx lambda;
  cplx D;
  /// log |raw / D| where raw is the wedge of the unrenormalized planes.
  double renorm_log = 0.0;
  double plucker_drift = 0.0;
};

/// Scale applied to the unit-normalized D to obtain the paper-normalized one;
/// equals nu^2 a+ a- (c^2 - s^2) with c^2 = -p'(v_inf).
double paper_normalization_factor(const WaveProfile& profile);

EvansFrame evans_frame(const WaveProfile& profile, cplx lambda,
                       const EvansOptions& options = {});
EvansSample evans_at(const WaveProfile& profile, cplx lambda,
                     const EvansOptions& options = {});

struct ZeroDerivatives {
  double d0 = 0.0, d1 = 0.0, d2 = 0.0;
  double sd0 = 0.0, sd1 = 0.0, sd2 = 0.0;
  std::array<double, 5> coeffs{};          // D ~ sum c_k lambda^k
  double fit_radius = 0.0;
  int samples = 0;
  double residual_rms = 0.0;
};

/// min(0.01, 0.01 nu^2).
double default_fit_radius(double nu);

/// Degree-4 least-squares fit of D on Chebyshev points of (0, fit_radius).
/// Uncertainties are the larger of the covariance estimate and the change
/// against a second fit on (0, fit_radius / 2). Throws kFitUnstable when
/// either residual exceeds 1e-6 of max |D|.
ZeroDerivatives evans_derivatives_at_zero(const WaveProfile& profile,
                                          const EvansOptions& options = {},
                                          std::optional<double> fit_radius = {},
                                          int n_samples = 12);

/// C = 2 c (p'(v_inf) + s^2), c = sqrt(-p'(v_inf)).
double constant_C(const ModelParams& params, double s);

struct TheoremOptions {
  ProfileOptions profile;
  Normalization normalization = Normalization::kPaper;
  std::optional<double> ds;
  std::optional<double> fit_radius;
  int fit_samples = 12;
  double ratio_tol = 0.05;
};

struct TheoremReport {
  double s = 0.0;
  double kappa = 0.0;
  double d2m_ds2 = 0.0;
  double D2_at_0 = 0.0;
  double C = 0.0;
  double predicted_ratio = 0.0;  // -C / kappa
  double measured_ratio = 0.0;   // D''(0) / (d^2m/ds^2)
  bool signs_agree = false;
  /// Only meaningful for Normalization::kPaper.
  bool ratio_agrees = false;
  bool degenerate = false;
  Normalization normalization = Normalization::kPaper;
  ZeroDerivatives derivatives;
  MomentReport moment;
};

/// Compares D''(0) with (-C / kappa) d^2m/ds^2; never throws on degeneracy.
TheoremReport evaluate_theorem(const ModelParams& params, double s,
                               const TheoremOptions& options = {});

/// As evaluate_theorem, but throws kDegenerateCase at threshold speeds.
TheoremReport verify_theorem(const ModelParams& params, double s,
                             const TheoremOptions& options = {});

}  // namespace korteweg

#endif  // KORTEWEG_EVANS_HPP
