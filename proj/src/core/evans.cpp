#include "korteweg/evans.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "korteweg/error.hpp"

namespace korteweg {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<cplx, 6>;

constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

// d/dx Psi = A Psi + Psi A^T - rate Psi for the antisymmetric matrix Psi
// carried by the six two-form components.
void two_form_rhs(const Mat4& a, const cplx* psi, cplx rate, cplx* out) {
  cplx m[4][4] = {};
  for (int p = 0; p < 6; ++p) {
    m[kPairs[p][0]][kPairs[p][1]] = psi[p];
    m[kPairs[p][1]][kPairs[p][0]] = -psi[p];
  }
  for (int p = 0; p < 6; ++p) {
    const int i = kPairs[p][0], j = kPairs[p][1];
    cplx acc = -rate * psi[p];
    for (int k = 0; k < 4; ++k) acc += a(i, k) * m[k][j] + m[i][k] * a(j, k);
    out[p] = acc;
  }
}

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

cplx polish_root(const ModelParams& params, double s, cplx lambda, cplx mu) {
  const double kappa = params.kappa();
  const double b = s * s + params.alpha_inf();
  for (int it = 0; it < 4; ++it) {
    const cplx f = characteristic(params, s, lambda, mu);
    const cplx df = 4.0 * kappa * mu * mu * mu + 2.0 * b * mu - 2.0 * s * lambda;
    if (df == cplx(0.0)) break;
    const cplx next = mu - f / df;
    if (!(std::abs(characteristic(params, s, lambda, next)) < std::abs(f))) break;
    mu = next;
  }
  return mu;
}

Wedge normalized(const Wedge& w) { return w / w(0); }

}  // namespace

Mat4 coefficient_matrix(const ModelParams& params, double s, double vbar,
                        double vbar_x, cplx lambda) {
  const double kappa = params.kappa();
  const double alpha = params.pressure().dp(vbar);
  const double alpha_x = params.pressure().d2p(vbar) * vbar_x;
  Mat4 a = Mat4::Zero();
  a(0, 1) = lambda;
  a(0, 2) = -s;
  a(1, 2) = 1.0;
  a(2, 3) = 1.0;
  a(3, 0) = -lambda / kappa;
  a(3, 1) = (s * lambda - alpha_x) / kappa;
  a(3, 2) = -(s * s + alpha) / kappa;
  return a;
}

Mat4 coefficient_matrix(const WaveProfile& profile, double x, cplx lambda) {
  return coefficient_matrix(profile.params(), profile.speed(),
                            profile.vbar_at(x), profile.vbar_x_at(x), lambda);
}

Mat4 limiting_matrix(const ModelParams& params, double s, cplx lambda) {
  return coefficient_matrix(params, s, params.v_inf(), 0.0, lambda);
}

Mat6 exterior_square(const Mat4& a) {
  Mat6 out;
  for (int q = 0; q < 6; ++q) {
    cplx basis[6] = {};
    basis[q] = 1.0;
    cplx col[6];
    two_form_rhs(a, basis, 0.0, col);
    for (int p = 0; p < 6; ++p) out(p, q) = col[p];
  }
  return out;
}

Wedge wedge(const Vec4& a, const Vec4& b) {
  Wedge w;
  for (int p = 0; p < 6; ++p) {
    const int i = kPairs[p][0], j = kPairs[p][1];
    w(p) = a(i) * b(j) - a(j) * b(i);
  }
  return w;
}

cplx wedge_pairing(const Wedge& a, const Wedge& b) {
  return a(0) * b(5) - a(1) * b(4) + a(2) * b(3) + a(3) * b(2) -
         a(4) * b(1) + a(5) * b(0);
}

cplx plucker(const Wedge& eta) {
  return eta(0) * eta(5) - eta(1) * eta(4) + eta(2) * eta(3);
}

cplx characteristic(const ModelParams& params, double s, cplx lambda,
                    cplx mu) {
  const cplx d = lambda - s * mu;
  return d * d + params.alpha_inf() * mu * mu +
         params.kappa() * mu * mu * mu * mu;
}

Splitting limiting_splitting(const ModelParams& params, double s,
                             cplx lambda) {
  const SoundSpeeds speeds = sound_speeds(params, s);
  Splitting out;
  if (lambda == cplx(0.0)) {
    const double nu = speeds.nu, c = speeds.c;
    out.mu = {cplx(-nu), cplx(0.0), cplx(0.0), cplx(nu)};
    out.vectors[0] << -s, 1.0, -nu, nu * nu;
    out.vectors[1] << -c, 1.0, 0.0, 0.0;
    out.vectors[2] << c, 1.0, 0.0, 0.0;
    out.vectors[3] << -s, 1.0, nu, nu * nu;
    out.stable = normalized(wedge(out.vectors[0], out.vectors[1]));
    out.unstable = normalized(wedge(out.vectors[2], out.vectors[3]));
    out.stable_rate = -nu;
    out.unstable_rate = nu;
    return out;
  }
  if (!(lambda.real() > 0.0) || !std::isfinite(std::abs(lambda))) {
    throw Error(ErrorCode::kInvalidArgument,
                "Evans function requires Re λ > 0 or λ = 0");
  }
  const double kappa = params.kappa();
  // Roots in z = mu / sigma with sigma ~ |mu| for large lambda; unscaled,
  // the companion entries span ~|lambda|^2 and the roots come out wrong.
  const double sigma = std::max(1.0, std::sqrt(std::abs(lambda) / std::sqrt(kappa)));
  const double s2 = sigma * sigma;
  Mat4 companion = Mat4::Zero();
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  companion(3, 2) = 1.0;
  companion(0, 3) = -lambda * lambda / (kappa * s2 * s2);
  companion(1, 3) = 2.0 * s * lambda / (kappa * s2 * sigma);
  companion(2, 3) = -(s * s + params.alpha_inf()) / (kappa * s2);
  Eigen::ComplexEigenSolver<Mat4> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kSplittingLost, "eigenvalues of A∞(λ) not found");
  }
  std::array<cplx, 4> mu;
  for (int k = 0; k < 4; ++k) {
    mu[k] = polish_root(params, s, lambda, sigma * solver.eigenvalues()(k));
  }
  std::sort(mu.begin(), mu.end(),
            [](cplx a, cplx b) { return a.real() < b.real(); });
  if (!(mu[1].real() < 0.0 && mu[2].real() > 0.0)) {
    throw Error(ErrorCode::kSplittingLost,
                "A∞(λ) lost the 2-2 stable/unstable splitting");
  }
  out.mu = mu;
  for (int k = 0; k < 4; ++k) {
    out.vectors[k] << lambda / mu[k] - s, 1.0, mu[k], mu[k] * mu[k];
  }
  // e(mu_a) ^ e(mu_b) = (mu_a - mu_b) e(mu_a) ^ [e(mu_a), e(mu_b)] with the
  // divided difference below; it stays regular when the two roots merge.
  const auto plane = [&](int ia, int ib) {
    Vec4 diff;
    diff << -lambda / (mu[ia] * mu[ib]), 0.0, 1.0, mu[ia] + mu[ib];
    return normalized(wedge(out.vectors[ia], diff));
  };
  out.stable = plane(0, 1);
  out.unstable = plane(2, 3);
  out.stable_rate = mu[0] + mu[1];
  out.unstable_rate = mu[2] + mu[3];
  return out;
}

double paper_normalization_factor(const WaveProfile& profile) {
  const ModelParams& params = profile.params();
  const double s = profile.speed();
  const SoundSpeeds sp = sound_speeds(params, s);
  const double f_plus = -sp.nu * profile.tail_amp_plus() * (s - sp.c);
  const double f_minus = sp.nu * profile.tail_amp_minus() * (s + sp.c);
  return f_plus * f_minus;
}

EvansFrame evans_frame(const WaveProfile& profile, cplx lambda,
                       const EvansOptions& options) {
  const ModelParams& params = profile.params();
  const double s = profile.speed();
  const Splitting split = limiting_splitting(params, s, lambda);
  const SoundSpeeds sp = sound_speeds(params, s);

  // At lambda = 0 the planes are d/dx(profile) ^ slow mode; their (u, v)
  // minors are nu a (s - c) at +inf and nu a (s + c) at -inf. The +inf plane
  // is taken as slow ^ fast, which makes D positive for large real lambda.
  double f_plus = -sp.nu * profile.tail_amp_plus() * (s - sp.c);
  double f_minus = sp.nu * profile.tail_amp_minus() * (s + sp.c);
  if (options.normalization == Normalization::kUnit) {
    f_plus = sign_of(f_plus);
    f_minus = sign_of(f_minus);
  }

  const double half = profile.half_length();
  const auto integrate_side = [&](const Wedge& start, cplx rate, double from) {
    State st;
    for (int p = 0; p < 6; ++p) st[p] = start(p);
    const auto rhs = [&](const State& y, State& dy, double x) {
      two_form_rhs(coefficient_matrix(profile, x, lambda), y.data(), rate,
                   dy.data());
    };
    auto stepper = odeint::make_controlled(
        options.abs_tol, options.rel_tol,
        odeint::runge_kutta_fehlberg78<State, double, State, double>());
    const double dt0 = from > 0.0 ? -0.05 : 0.05;
    try {
      odeint::integrate_adaptive(stepper, rhs, st, from, 0.0, dt0);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kIntegrationFailure,
                  std::string("Evans integration failed: ") + e.what());
    }
    Wedge out;
    for (int p = 0; p < 6; ++p) out(p) = st[p];
    if (!out.allFinite() || out.norm() > 1e200) {
      throw Error(ErrorCode::kNormalizationOverflow,
                  "Evans integration overflowed after renormalization");
    }
    return out;
  };

  EvansFrame frame;
  frame.lambda = lambda;
  frame.eta_plus = integrate_side(f_plus * split.stable, split.stable_rate, half);
  frame.eta_minus =
      integrate_side(f_minus * split.unstable, split.unstable_rate, -half);
  frame.renorm_plus = -split.stable_rate.real() * half;
  frame.renorm_minus = split.unstable_rate.real() * half;
  const auto drift = [](const Wedge& w) {
    return std::abs(plucker(w)) / std::max(w.squaredNorm(), 1e-300);
  };
  frame.plucker_drift = std::max(drift(frame.eta_plus), drift(frame.eta_minus));
  return frame;
}

EvansSample evans_at(const WaveProfile& profile, cplx lambda,
                     const EvansOptions& options) {
  const EvansFrame frame = evans_frame(profile, lambda, options);
  EvansSample out;
  out.lambda = lambda;
  out.D = wedge_pairing(frame.eta_plus, frame.eta_minus);
  out.renorm_log = frame.renorm_plus + frame.renorm_minus;
  out.plucker_drift = frame.plucker_drift;
  return out;
}

double default_fit_radius(double nu) { return std::min(0.01, 0.01 * nu * nu); }

namespace {

ZeroDerivatives fit_at_zero(const WaveProfile& profile,
                            const EvansOptions& options, double radius,
                            int n_samples) {
  constexpr int kDegree = 4;
  Eigen::MatrixXd design(n_samples, kDegree + 1);
  Eigen::VectorXd values(n_samples);
  double peak = 0.0;
  for (int k = 0; k < n_samples; ++k) {
    // Chebyshev points of (0, radius), fitted in t = lambda / radius.
    const double t =
        0.5 * (1.0 - std::cos(std::numbers::pi * (k + 0.5) / n_samples));
    const EvansSample sample = evans_at(profile, cplx(radius * t), options);
    values(k) = sample.D.real();
    peak = std::max(peak, std::abs(values(k)));
    double power = 1.0;
    for (int j = 0; j <= kDegree; ++j) {
      design(k, j) = power;
      power *= t;
    }
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(values);
  const Eigen::VectorXd resid = design * coef - values;
  const int dof = n_samples - (kDegree + 1);
  const double sigma2 = resid.squaredNorm() / dof;
  const Eigen::MatrixXd cov =
      sigma2 * (design.transpose() * design).inverse();

  ZeroDerivatives out;
  out.fit_radius = radius;
  out.samples = n_samples;
  out.residual_rms = std::sqrt(resid.squaredNorm() / n_samples);
  double scale = 1.0;
  for (int j = 0; j <= kDegree; ++j) {
    out.coeffs[j] = coef(j) / scale;
    scale *= radius;
  }
  out.d0 = out.coeffs[0];
  out.d1 = out.coeffs[1];
  out.d2 = 2.0 * out.coeffs[2];
  out.sd0 = std::sqrt(cov(0, 0));
  out.sd1 = std::sqrt(cov(1, 1)) / radius;
  out.sd2 = 2.0 * std::sqrt(cov(2, 2)) / (radius * radius);
  if (!(out.residual_rms <= 1e-6 * peak)) {
    throw Error(ErrorCode::kFitUnstable,
                "polynomial fit of D near 0 has excessive residual; reduce "
                "fit_radius");
  }
  return out;
}

}  // namespace

ZeroDerivatives evans_derivatives_at_zero(const WaveProfile& profile,
                                          const EvansOptions& options,
                                          std::optional<double> fit_radius,
                                          int n_samples) {
  const double radius = fit_radius.value_or(default_fit_radius(profile.nu()));
  if (!(radius > 0.0) || n_samples < 6) {
    throw Error(ErrorCode::kInvalidArgument,
                "derivative fit needs a positive radius and at least 6 samples");
  }
  ZeroDerivatives out = fit_at_zero(profile, options, radius, n_samples);
  // Truncation of the quartic shows up as drift between radius and
  // radius / 2; the residual alone does not see it.
  const ZeroDerivatives half =
      fit_at_zero(profile, options, 0.5 * radius, n_samples);
  out.sd0 = std::max(out.sd0, std::abs(out.d0 - half.d0));
  out.sd1 = std::max(out.sd1, std::abs(out.d1 - half.d1));
  out.sd2 = std::max(out.sd2, std::abs(out.d2 - half.d2));
  return out;
}

double constant_C(const ModelParams& params, double s) {
  const double alpha = params.alpha_inf();
  if (!(alpha < 0.0)) {
    throw Error(ErrorCode::kNotAdmissible, "constant C requires p'(v∞) < 0");
  }
  return 2.0 * std::sqrt(-alpha) * (alpha + s * s);
}

TheoremReport evaluate_theorem(const ModelParams& params, double s,
                               const TheoremOptions& options) {
  const WaveProfile profile = solve_profile(params, s, options.profile);
  const double ds = options.ds.value_or(default_speed_step(s));

  TheoremReport r;
  r.s = s;
  r.kappa = params.kappa();
  r.normalization = options.normalization;
  r.moment = moment_report(params, s, ds, options.profile);
  EvansOptions eo;
  eo.normalization = options.normalization;
  r.derivatives = evans_derivatives_at_zero(profile, eo, options.fit_radius,
                                            options.fit_samples);
  r.d2m_ds2 = r.moment.dQ_ds;
  r.D2_at_0 = r.derivatives.d2;
  r.C = constant_C(params, s);
  r.predicted_ratio = -r.C / params.kappa();
  r.measured_ratio = r.D2_at_0 / r.d2m_ds2;

  const double moment_scale = std::max(
      {std::abs(r.moment.Q), std::abs(r.moment.H), std::abs(r.moment.m)});
  const double threshold =
      1e-6 * moment_scale +
      10.0 * std::abs(r.moment.dQ_ds - r.moment.d2m_ds2_direct);
  r.degenerate = !(std::abs(r.d2m_ds2) > threshold) ||
                 !(std::abs(r.D2_at_0) > 3.0 * r.derivatives.sd2);
  r.signs_agree = !r.degenerate && (r.D2_at_0 > 0.0) == (r.d2m_ds2 > 0.0);
  r.ratio_agrees =
      options.normalization == Normalization::kPaper && !r.degenerate &&
      std::abs(r.measured_ratio / r.predicted_ratio - 1.0) <= options.ratio_tol;
  return r;
}

TheoremReport verify_theorem(const ModelParams& params, double s,
                             const TheoremOptions& options) {
  TheoremReport r = evaluate_theorem(params, s, options);
  if (r.degenerate) {
    throw Error(ErrorCode::kDegenerateCase,
                "d²m/ds² vanishes within tolerance at this speed");
  }
  return r;
}

}  // namespace korteweg
