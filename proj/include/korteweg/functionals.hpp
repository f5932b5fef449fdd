#ifndef KORTEWEG_FUNCTIONALS_HPP
#define KORTEWEG_FUNCTIONALS_HPP

#include "korteweg/profile.hpp"

namespace korteweg {

// Integrals over the whole line are trapezoidal sums on the profile grid plus
// the analytic contribution of the exponential tails beyond +-L.

/// Q = int (ubar - u_inf)(vbar - v_inf) dx.
double momentum_Q(const WaveProfile& profile);

/// H = int [ (ubar - u_inf)^2 / 2 - int_{v_inf}^{vbar} (p - p(v_inf)) + kappa vbar_x^2 / 2 ] dx.
double hamiltonian_H(const WaveProfile& profile);

/// H with kappa vbar_x^2 / 2 replaced by W(vbar) through the first integral.
double hamiltonian_H_first_integral(const WaveProfile& profile);

struct Masses {
  double p1_v = 0.0;  // int (vbar - v_inf)
  double p1_u = 0.0;  // int (ubar - u_inf)
};
Masses masses_P(const WaveProfile& profile);

/// m(s) = H + s Q on the profile at s.
double moment_m(const WaveProfile& profile);
double moment_m(const ModelParams& params, double s,
                const ProfileOptions& options = {});

struct SpeedDerivatives {
  double dq_ds = 0.0;       // centered difference of Q, Richardson-extrapolated
  double d2m_direct = 0.0;  // second difference of m, Richardson-extrapolated
  double dm_ds = 0.0;       // centered difference of m (Euler-Lagrange check)
  double q = 0.0;           // Q at the center speed
  double m = 0.0;
  double h = 0.0;
};

/// All differences share the grid of the center profile; one Richardson
/// step combines spacings ds and ds / 2.
SpeedDerivatives speed_derivatives(const ModelParams& params, double s,
                                   double ds,
                                   const ProfileOptions& options = {});

struct Melnikov {
  double gamma = 0.0;      // kappa^-1 int (vbar - v_inf)(-s ds_vbar + ds_ubar)
  double gamma_alt = 0.0;  // kappa^-1 int (ubar - u_inf) ds_vbar + (vbar - v_inf) ds_ubar
};
Melnikov melnikov_gamma(const ProfileFamily& family);

struct MomentReport {
  double s = 0.0;
  double Q = 0.0;
  double H = 0.0;
  double m = 0.0;
  double dQ_ds = 0.0;
  double d2m_ds2_direct = 0.0;
  double dm_ds = 0.0;
  double gamma = 0.0;
  double gamma_alt = 0.0;
  double P1_v = 0.0;
  double P1_u = 0.0;
  /// |dQ_ds - d2m_direct| / max(|dQ_ds|, scale); flagged above 1e-4.
  double cross_check_gap = 0.0;
  /// |gamma kappa - dQ_ds| / max(|dQ_ds|, scale).
  double melnikov_gap = 0.0;
  bool consistent = false;
};

MomentReport moment_report(const ModelParams& params, double s, double ds,
                           const ProfileOptions& options = {});

}  // namespace korteweg

#endif  // KORTEWEG_FUNCTIONALS_HPP
