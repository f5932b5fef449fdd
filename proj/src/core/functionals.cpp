#include "korteweg/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "korteweg/error.hpp"

namespace korteweg {
namespace {

// Trapezoid on the uniform grid plus int_L^inf f(L) exp(-rate (x - L)) dx on
// each side.
template <class F>
double line_integral(const WaveProfile& profile, F&& f, double tail_rate) {
  const int n = profile.size();
  double sum = 0.5 * (f(0) + f(n - 1));
  for (int i = 1; i < n - 1; ++i) sum += f(i);
  sum *= profile.step();
  sum += (f(0) + f(n - 1)) / tail_rate;
  return sum;
}

double potential_energy(const WaveProfile& profile, int i) {
  const ModelParams& params = profile.params();
  const double y = profile.vbar()[i] - params.v_inf();
  return y * y * params.pressure().potential_ratio(params.v_inf(), y);
}

}  // namespace

double momentum_Q(const WaveProfile& profile) {
  const double u_inf = profile.params().u_inf();
  const double v_inf = profile.params().v_inf();
  return line_integral(
      profile,
      [&](int i) {
        return (profile.ubar()[i] - u_inf) * (profile.vbar()[i] - v_inf);
      },
      2.0 * profile.nu());
}

double hamiltonian_H(const WaveProfile& profile) {
  const double u_inf = profile.params().u_inf();
  const double kappa = profile.params().kappa();
  return line_integral(
      profile,
      [&](int i) {
        const double du = profile.ubar()[i] - u_inf;
        const double vx = profile.vbar_x()[i];
        return 0.5 * du * du - potential_energy(profile, i) +
               0.5 * kappa * vx * vx;
      },
      2.0 * profile.nu());
}

double hamiltonian_H_first_integral(const WaveProfile& profile) {
  const double u_inf = profile.params().u_inf();
  return line_integral(
      profile,
      [&](int i) {
        const double du = profile.ubar()[i] - u_inf;
        return 0.5 * du * du - potential_energy(profile, i) +
               profile_potential(profile.params(), profile.speed(),
                                 profile.vbar()[i]);
      },
      2.0 * profile.nu());
}

Masses masses_P(const WaveProfile& profile) {
  const double v_inf = profile.params().v_inf();
  const double u_inf = profile.params().u_inf();
  Masses out;
  out.p1_v = line_integral(
      profile, [&](int i) { return profile.vbar()[i] - v_inf; }, profile.nu());
  out.p1_u = line_integral(
      profile, [&](int i) { return profile.ubar()[i] - u_inf; }, profile.nu());
  return out;
}

double moment_m(const WaveProfile& profile) {
  return hamiltonian_H(profile) + profile.speed() * momentum_Q(profile);
}

double moment_m(const ModelParams& params, double s,
                const ProfileOptions& options) {
  return moment_m(solve_profile(params, s, options));
}

SpeedDerivatives speed_derivatives(const ModelParams& params, double s,
                                   double ds, const ProfileOptions& options) {
  if (!(ds > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "speed step ds must be positive");
  }
  const WaveProfile center = solve_profile(params, s, options);
  ProfileOptions shared = options;
  shared.half_length = center.half_length();
  shared.step = center.step();

  struct Sample {
    double q, m;
  };
  const auto at = [&](double speed) {
    const WaveProfile p = solve_profile(params, speed, shared);
    return Sample{momentum_Q(p), moment_m(p)};
  };
  const Sample c{momentum_Q(center), moment_m(center)};
  const Sample p1 = at(s + ds), m1 = at(s - ds);
  const Sample p2 = at(s + 0.5 * ds), m2 = at(s - 0.5 * ds);

  const auto richardson = [](double coarse, double fine) {
    return (4.0 * fine - coarse) / 3.0;
  };
  SpeedDerivatives out;
  out.q = c.q;
  out.m = c.m;
  out.h = hamiltonian_H(center);
  out.dq_ds = richardson((p1.q - m1.q) / (2.0 * ds), (p2.q - m2.q) / ds);
  out.dm_ds = richardson((p1.m - m1.m) / (2.0 * ds), (p2.m - m2.m) / ds);
  out.d2m_direct =
      richardson((p1.m - 2.0 * c.m + m1.m) / (ds * ds),
                 (p2.m - 2.0 * c.m + m2.m) / (0.25 * ds * ds));
  return out;
}

Melnikov melnikov_gamma(const ProfileFamily& family) {
  const WaveProfile& p = family.center;
  const double v_inf = p.params().v_inf();
  const double u_inf = p.params().u_inf();
  const double s = family.s_center;
  const double kappa = p.params().kappa();
  Melnikov out;
  out.gamma = line_integral(
                  p,
                  [&](int i) {
                    return (p.vbar()[i] - v_inf) *
                           (-s * family.ds_vbar[i] + family.ds_ubar[i]);
                  },
                  2.0 * p.nu()) /
              kappa;
  out.gamma_alt = line_integral(
                      p,
                      [&](int i) {
                        return (p.ubar()[i] - u_inf) * family.ds_vbar[i] +
                               (p.vbar()[i] - v_inf) * family.ds_ubar[i];
                      },
                      2.0 * p.nu()) /
                  kappa;
  return out;
}

MomentReport moment_report(const ModelParams& params, double s, double ds,
                           const ProfileOptions& options) {
  const SpeedDerivatives d = speed_derivatives(params, s, ds, options);
  const ProfileFamily family = family_at(params, s, ds, options);
  const Melnikov mel = melnikov_gamma(family);
  const Masses masses = masses_P(family.center);

  MomentReport r;
  r.s = s;
  r.Q = d.q;
  r.H = d.h;
  r.m = d.m;
  r.dQ_ds = d.dq_ds;
  r.d2m_ds2_direct = d.d2m_direct;
  r.dm_ds = d.dm_ds;
  r.gamma = mel.gamma;
  r.gamma_alt = mel.gamma_alt;
  r.P1_v = masses.p1_v;
  r.P1_u = masses.p1_u;
  const double denom = std::max(
      {std::abs(d.dq_ds), 1e-3 * std::abs(d.q), 1e-3 * std::abs(d.m), 1e-300});
  r.cross_check_gap = std::abs(d.dq_ds - d.d2m_direct) / denom;
  r.melnikov_gap = std::abs(mel.gamma * params.kappa() - d.dq_ds) / denom;
  r.consistent = r.cross_check_gap <= 1e-4 && r.melnikov_gap <= 1e-4;
  return r;
}

}  // namespace korteweg
