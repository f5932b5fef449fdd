#ifndef KORTEWEG_SPECTRUM_HPP
#define KORTEWEG_SPECTRUM_HPP

#include <string>
#include <vector>

#include "korteweg/evans.hpp"

namespace korteweg {

struct DispersionSample {
  double xi = 0.0;
  cplx lambda_plus;   // i s xi + sqrt(alpha_inf - kappa xi^4)
  cplx lambda_minus;  // i s xi - sqrt(alpha_inf - kappa xi^4)
};

/// Essential spectrum curves; requires p'(v_inf) < 0 (kNotAdmissible).
std::vector<DispersionSample> dispersion_curve(const ModelParams& params,
                                               double s,
                                               const std::vector<double>& xi);

/// sgn(D2 * sign_at_infinity); throws kDegenerateIndex when |D2| does not
/// exceed the uncertainty or the sign at infinity is zero.
int stability_index(double d2, int sign_at_infinity, double uncertainty);

struct LargeLambdaSign {
  int sign = 0;
  double lambda_onset = 0.0;  // first rung where the asymptotic regime applies
  double lambda_sign = 0.0;   // first rung of a run of 4 equal signs
  double lambda_max = 0.0;    // 4 * lambda_sign
  std::vector<double> ladder;
  std::vector<double> values;
};

/// Walks lambda = nu^2 2^k until kappa|mu|^2 and kappa|mu|^3 dominate the
/// profile coefficients tenfold, then until the sign of D holds over three
/// doublings. Throws kIntegrationFailure if no stable sign appears.
LargeLambdaSign large_lambda_sign(const WaveProfile& profile,
                                  const EvansOptions& options = {});

struct RealRoot {
  double lambda = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

struct RootScanOptions {
  int points = 400;
  double tol = 1e-10;
  /// 0 picks std::thread::hardware_concurrency().
  int threads = 0;
};

/// Sign changes of D on a log grid over [1e-3 nu^2, lambda_max], each
/// refined by bisection. Results are ordered by lambda.
std::vector<RealRoot> find_real_roots(const WaveProfile& profile,
                                      double lambda_max,
                                      const EvansOptions& evans = {},
                                      const RootScanOptions& scan = {});

enum class Verdict { kStable, kUnstable, kDegenerate };
std::string verdict_name(Verdict v);

struct VerdictOptions {
  TheoremOptions theorem;
  std::optional<double> lambda_max;
  RootScanOptions scan;
};

struct StabilityReport {
  double s = 0.0;
  std::string pressure_kind;
  double kappa = 0.0;
  double v_inf = 0.0;
  double u_inf = 0.0;

  TheoremReport theorem;
  double gamma = 0.0;  // Melnikov integral
  double D0 = 0.0, D1 = 0.0, D2 = 0.0;
  int sign_D_infinity = 0;
  double lambda_sign = 0.0;
  double lambda_max = 0.0;
  bool lambda_max_user = false;
  int Gamma_index = 0;  // 0 when degenerate
  int node_count = 0;
  std::vector<RealRoot> roots;
  Verdict verdict = Verdict::kDegenerate;

  // checked invariants
  bool parity_ok = false;
  bool count_cap_ok = false;
};

/// Combines moment convexity, the index, the root scan and the node count.
/// Does not throw on degenerate speeds; the verdict says so instead.
StabilityReport verdict(const ModelParams& params, double s,
                        const VerdictOptions& options = {});

}  // namespace korteweg

#endif  // KORTEWEG_SPECTRUM_HPP
