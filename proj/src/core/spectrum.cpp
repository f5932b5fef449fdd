#include "korteweg/spectrum.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "korteweg/error.hpp"
#include "parallel.hpp"

namespace korteweg {
namespace {

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

double real_evans(const WaveProfile& profile, double lambda,
                  const EvansOptions& options) {
  return evans_at(profile, cplx(lambda), options).D.real();
}

}  // namespace

std::vector<DispersionSample> dispersion_curve(const ModelParams& params,
                                               double s,
                                               const std::vector<double>& xi) {
  const double alpha = params.alpha_inf();
  if (!(alpha < 0.0)) {
    throw Error(ErrorCode::kNotAdmissible,
                "dispersion relation requires p'(v∞) < 0");
  }
  std::vector<DispersionSample> out;
  out.reserve(xi.size());
  for (double k : xi) {
    // alpha - kappa k^4 < 0, so the root is i * sqrt(kappa k^4 - alpha);
    // building it that way keeps the real part exactly zero.
    const double w = std::sqrt(params.kappa() * k * k * k * k - alpha);
    DispersionSample d;
    d.xi = k;
    d.lambda_plus = cplx(0.0, s * k + w);
    d.lambda_minus = cplx(0.0, s * k - w);
    out.push_back(d);
  }
  return out;
}

int stability_index(double d2, int sign_at_infinity, double uncertainty) {
  if (!(std::abs(d2) > uncertainty) || sign_at_infinity == 0) {
    throw Error(ErrorCode::kDegenerateIndex,
                "D''(0) is not resolved above its uncertainty");
  }
  return sign_of(d2) * sign_of(sign_at_infinity);
}

LargeLambdaSign large_lambda_sign(const WaveProfile& profile,
                                  const EvansOptions& options) {
  const ModelParams& params = profile.params();
  const double kappa = params.kappa();
  const double alpha_inf = params.alpha_inf();
  double max_dalpha = 0.0, max_alpha_x = 0.0;
  for (int i = 0; i < profile.size(); ++i) {
    const double v = profile.vbar()[i];
    max_dalpha = std::max(max_dalpha, std::abs(params.pressure().dp(v) - alpha_inf));
    max_alpha_x = std::max(
        max_alpha_x, std::abs(params.pressure().d2p(v) * profile.vbar_x()[i]));
  }

  LargeLambdaSign out;
  const double base = profile.nu() * profile.nu();
  constexpr int kMaxRungs = 60;
  constexpr int kRun = 4;  // the sign must hold over three doublings
  int k = 0;
  for (; k < kMaxRungs; ++k) {
    const double lambda = base * std::ldexp(1.0, k);
    const double mu = std::sqrt(lambda / std::sqrt(kappa));
    if (kappa * mu * mu >= 10.0 * max_dalpha &&
        kappa * mu * mu * mu >= 10.0 * max_alpha_x) {
      out.lambda_onset = lambda;
      break;
    }
  }
  if (k == kMaxRungs) {
    throw Error(ErrorCode::kIntegrationFailure,
                "large-lambda regime not reached");
  }
  int run = 0;
  for (int j = k; j < kMaxRungs; ++j) {
    const double lambda = base * std::ldexp(1.0, j);
    const double d = real_evans(profile, lambda, options);
    out.ladder.push_back(lambda);
    out.values.push_back(d);
    const int sg = sign_of(d);
    if (sg != 0 && run > 0 && sg == out.sign) {
      ++run;
    } else {
      run = sg != 0 ? 1 : 0;
      out.sign = sg;
      out.lambda_sign = lambda;
    }
    if (run == kRun) {
      out.lambda_max = 4.0 * out.lambda_sign;
      return out;
    }
  }
  throw Error(ErrorCode::kIntegrationFailure,
              "sign of D did not settle at large lambda");
}

std::vector<RealRoot> find_real_roots(const WaveProfile& profile,
                                      double lambda_max,
                                      const EvansOptions& evans,
                                      const RootScanOptions& scan) {
  const double lo = 1e-3 * profile.nu() * profile.nu();
  if (!(lambda_max > lo) || scan.points < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "root scan needs lambda_max above 1e-3 nu^2 and >= 2 points");
  }
  const int n = scan.points;
  std::vector<double> grid(n);
  const double ratio = std::log(lambda_max / lo);
  for (int i = 0; i < n; ++i) grid[i] = lo * std::exp(ratio * i / (n - 1));
  grid.back() = lambda_max;

  const auto values = detail::parallel_map<double>(
      n, scan.threads, [&](int i) { return real_evans(profile, grid[i], evans); });

  std::vector<int> brackets;
  for (int i = 0; i + 1 < n; ++i) {
    if (sign_of(values[i]) * sign_of(values[i + 1]) < 0) brackets.push_back(i);
  }
  const auto refine = [&](int b) {
    const auto f = [&](double lam) { return real_evans(profile, lam, evans); };
    const auto done = [&](double a, double c) {
      return std::abs(c - a) <= scan.tol;
    };
    const auto r = boost::math::tools::bisect(f, grid[b], grid[b + 1], done);
    return RealRoot{0.5 * (r.first + r.second), r.first, r.second};
  };
  return detail::parallel_map<RealRoot>(static_cast<int>(brackets.size()),
                                        scan.threads,
                                        [&](int j) { return refine(brackets[j]); });
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kStable:
      return "stable";
    case Verdict::kUnstable:
      return "unstable";
    case Verdict::kDegenerate:
      break;
  }
  return "degenerate";
}

StabilityReport verdict(const ModelParams& params, double s,
                        const VerdictOptions& options) {
  StabilityReport r;
  r.s = s;
  r.pressure_kind = params.pressure().kind();
  r.kappa = params.kappa();
  r.v_inf = params.v_inf();
  r.u_inf = params.u_inf();

  const WaveProfile profile = solve_profile(params, s, options.theorem.profile);
  r.node_count = node_count(profile);
  r.theorem = evaluate_theorem(params, s, options.theorem);
  r.gamma = r.theorem.moment.gamma;
  r.D0 = r.theorem.derivatives.d0;
  r.D1 = r.theorem.derivatives.d1;
  r.D2 = r.theorem.derivatives.d2;

  EvansOptions eo;
  eo.normalization = options.theorem.normalization;
  const LargeLambdaSign large = large_lambda_sign(profile, eo);
  r.sign_D_infinity = large.sign;
  r.lambda_sign = large.lambda_sign;
  r.lambda_max_user = options.lambda_max.has_value();
  r.lambda_max = options.lambda_max.value_or(large.lambda_max);
  r.roots = find_real_roots(profile, r.lambda_max, eo, options.scan);

  if (!r.theorem.degenerate) {
    try {
      r.Gamma_index =
          stability_index(r.D2, r.sign_D_infinity, 3.0 * r.theorem.derivatives.sd2);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateIndex) throw;
      r.Gamma_index = 0;
    }
  }
  const int count = static_cast<int>(r.roots.size());
  r.parity_ok = r.Gamma_index != 0 && (count % 2 == 1) == (r.Gamma_index < 0);
  r.count_cap_ok = r.node_count != 1 || count <= 1;

  if (r.Gamma_index < 0) {
    r.verdict = Verdict::kUnstable;
  } else if (r.Gamma_index > 0 && r.theorem.d2m_ds2 > 0.0 && r.roots.empty() &&
             r.node_count == 1) {
    r.verdict = Verdict::kStable;
  } else {
    r.verdict = Verdict::kDegenerate;
  }
  return r;
}

}  // namespace korteweg
