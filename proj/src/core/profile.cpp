#include "korteweg/profile.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <utility>

#include "korteweg/error.hpp"

namespace korteweg {
namespace {

using boost::math::quadrature::gauss;

// F(v_inf + y) = s^2 y + p(v_inf + y) - p(v_inf), so that kappa v'' = -F(v).
double forcing(const ModelParams& params, double s, double y) {
  return y * (s * s + params.pressure().slope(params.v_inf(), y));
}

// W(v_inf + y) / y^2; strictly positive between v_inf and the turning point.
double scaled_potential(const ModelParams& params, double s, double y) {
  return -(0.5 * s * s + params.pressure().potential_ratio(params.v_inf(), y));
}

// Candidate offsets y, growing geometrically away from v_inf in one
// direction and creeping up on the boundary of the pressure domain.
std::vector<double> search_offsets(const ModelParams& params, double dir) {
  std::vector<double> out;
  const double scale = std::max(1.0, std::abs(params.v_inf()));
  double y = 1e-3 * scale;
  double last_ok = 0.0;
  while (y < 1e4 * scale) {
    if (!params.pressure().in_domain(params.v_inf() + dir * y)) break;
    out.push_back(dir * y);
    last_ok = y;
    y *= 1.25;
  }
  if (y < 1e4 * scale) {
    // Domain edge lies between last_ok and y; bisect toward it.
    double lo = last_ok, hi = y;
    for (int k = 0; k < 60; ++k) {
      const double mid = 0.5 * (lo + hi);
      if (params.pressure().in_domain(params.v_inf() + dir * mid)) {
        out.push_back(dir * mid);
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  return out;
}

std::optional<double> find_root_offset(const ModelParams& params, double s,
                                       double dir) {
  const auto g = [&](double y) { return scaled_potential(params, s, y); };
  double prev = 0.0;
  for (double y : search_offsets(params, dir)) {
    const double val = g(y);
    if (!std::isfinite(val)) return std::nullopt;
    if (val <= 0.0) {
      if (val == 0.0) return y;
      double inner = prev == 0.0 ? 0.5 * y : prev;
      if (g(inner) <= 0.0) return std::nullopt;
      // toms748 wants lo < hi; on the downward search y < inner.
      const double lo = std::min(inner, y), hi = std::max(inner, y);
      std::uintmax_t iters = 200;
      const auto r = boost::math::tools::toms748_solve(
          g, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
      return 0.5 * (r.first + r.second);
    }
    prev = y;
  }
  return std::nullopt;
}

// Composite fixed-order Gauss rule; the integrands here are analytic on the
// interval so a handful of panels reach rounding level.
template <class F>
double integrate(F&& f, double a, double b, int panels = 1) {
  double total = 0.0;
  const double w = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    total += gauss<double, 20>::integrate(f, a + k * w, a + (k + 1) * w);
  }
  return total;
}

// Solve x_from + int_{p0}^{p} rate = x_to for p by Newton's method.
template <class Rate>
double advance(Rate&& rate, double p0, double x_from, double x_to) {
  const double target = x_to - x_from;
  double p = p0 + target / rate(p0);
  for (int it = 0; it < 60; ++it) {
    const double r = rate(p);
    if (!std::isfinite(r) || r <= 0.0) break;
    const double resid = integrate(rate, p0, p) - target;
    const double dp = resid / r;
    p -= dp;
    if (std::abs(resid) <= 1e-15 * std::max(1.0, std::abs(x_to))) return p;
  }
  throw Error(ErrorCode::kQuadratureFailure,
              "profile inversion failed to converge");
}

}  // namespace

double profile_potential(const ModelParams& params, double s, double v) {
  const double y = v - params.v_inf();
  return y * y * scaled_potential(params, s, y);
}

double turning_point(const ModelParams& params, double s) {
  if (!saddle_check(params, s).admissible) {
    throw Error(ErrorCode::kNotAdmissible, saddle_violation_message(params, s));
  }
  const auto up = find_root_offset(params, s, 1.0);
  const auto down = find_root_offset(params, s, -1.0);
  std::optional<double> y;
  if (up && down) {
    y = std::abs(*up) <= std::abs(*down) ? up : down;
  } else {
    y = up ? up : down;
  }
  if (!y) {
    throw Error(ErrorCode::kNoHomoclinic,
                "no homoclinic orbit: the potential W has no turning point");
  }
  // A double root of W would be an equilibrium, i.e. a heteroclinic limit.
  const double f = forcing(params, s, *y);
  if (!(std::abs(f) > 1e-12 * std::abs(*y) * std::abs(params.alpha_inf()))) {
    throw Error(ErrorCode::kNoHomoclinic,
                "no homoclinic orbit: degenerate turning point");
  }
  return params.v_inf() + *y;
}

WaveProfile solve_profile(const ModelParams& params, double s,
                          const ProfileOptions& options) {
  const SoundSpeeds speeds = sound_speeds(params, s);
  const double nu = speeds.nu;
  const double kappa = params.kappa();
  const double v_star = turning_point(params, s);
  const double delta = v_star - params.v_inf();
  const double sgn = delta > 0.0 ? 1.0 : -1.0;

  double half_length = options.half_length.value_or(
      std::log(std::max(1.0, 4.0 * std::abs(delta)) / options.tail_tol) / nu);
  int m;
  if (options.step) {
    m = std::max(1, static_cast<int>(std::lround(half_length / *options.step)));
    half_length = m * *options.step;
  } else {
    m = static_cast<int>(std::ceil(nu * half_length / options.nu_h));
  }
  if (!(half_length > 0.0) || m < 1) {
    throw Error(ErrorCode::kInvalidArgument, "grid half-length must be positive");
  }
  const double h = half_length / m;

  // Crest chart: v = v* - delta t^2, t in [0, 1/sqrt 2]. avg_f is the mean of
  // F over [v, v*], so that W(v) = delta t^2 avg_f without cancellation.
  const auto avg_f = [&](double t) {
    const double span = delta * t * t;
    return integrate(
        [&](double u) {
          return forcing(params, s, delta - span * (1.0 - u));
        },
        0.0, 1.0);
  };
  const auto crest_rate = [&](double t) {
    return 2.0 * std::abs(delta) / std::sqrt(2.0 * delta * avg_f(t) / kappa);
  };
  // Tail chart: v = v_inf + delta exp(-tau); dx/dtau -> 1 / nu.
  const auto tail_rate = [&](double tau) {
    const double w = delta * std::exp(-tau);
    return 1.0 / std::sqrt(2.0 * scaled_potential(params, s, w) / kappa);
  };

  const double t_join = std::sqrt(0.5);
  const double tau_join = std::log(2.0);
  const double x_join = integrate(crest_rate, 0.0, t_join, 4);
  if (!std::isfinite(x_join)) {
    throw Error(ErrorCode::kQuadratureFailure,
                "crest quadrature produced a non-finite value");
  }

  std::vector<double> v_half(m + 1), vx_half(m + 1);
  v_half[0] = v_star;
  vx_half[0] = 0.0;
  double t = 0.0, tau = tau_join, x_prev = 0.0;
  bool in_tail = false;
  for (int i = 1; i <= m; ++i) {
    const double xi = i * h;
    double y, g;
    if (!in_tail && xi <= x_join) {
      t = advance(crest_rate, t, x_prev, xi);
      y = delta * (1.0 - t * t);
      g = t * std::sqrt(2.0 * delta * avg_f(t) / kappa);
    } else {
      if (!in_tail) {
        in_tail = true;
        x_prev = x_join;
      }
      tau = advance(tail_rate, tau, x_prev, xi);
      y = delta * std::exp(-tau);
      g = std::abs(y) *
          std::sqrt(2.0 * scaled_potential(params, s, y) / kappa);
    }
    x_prev = xi;
    v_half[i] = params.v_inf() + y;
    vx_half[i] = -sgn * g;
  }
  // Tail amplitude a with v - v_inf ~ a exp(-nu x).
  double tail_amp;
  if (in_tail) {
    tail_amp = delta * std::exp(nu * half_length - tau);
  } else {
    tail_amp = (v_half[m] - params.v_inf()) * std::exp(nu * half_length);
  }

  const int n = 2 * m + 1;
  std::vector<double> vbar(n), vbar_x(n), vbar_xx(n);
  for (int i = 0; i <= m; ++i) {
    const double vxx =
        -forcing(params, s, v_half[i] - params.v_inf()) / kappa;
    vbar[m + i] = vbar[m - i] = v_half[i];
    vbar_x[m + i] = vx_half[i];
    vbar_x[m - i] = -vx_half[i];
    vbar_xx[m + i] = vbar_xx[m - i] = vxx;
  }
  return WaveProfile(params, s, half_length, m, v_star, nu, tail_amp,
                     std::move(vbar), std::move(vbar_x), std::move(vbar_xx));
}

// ---------------------------------------------------------------------------

WaveProfile::WaveProfile(ModelParams params, double s, double half_length,
                         int half_count, double crest, double nu,
                         double tail_amp, std::vector<double> vbar,
                         std::vector<double> vbar_x,
                         std::vector<double> vbar_xx)
    : params_(std::move(params)), s_(s), half_length_(half_length),
      step_(half_length / half_count), crest_(crest), nu_(nu),
      tail_amp_(tail_amp), vbar_(std::move(vbar)), vbar_x_(std::move(vbar_x)),
      vbar_xx_(std::move(vbar_xx)) {
  const int n = static_cast<int>(vbar_.size());
  vbar_xxx_.resize(n);
  ubar_.resize(n);
  for (int i = 0; i < n; ++i) {
    vbar_xxx_[i] = -(s_ * s_ + params_.pressure().dp(vbar_[i])) * vbar_x_[i] /
                   params_.kappa();
    ubar_[i] = params_.u_inf() - s_ * (vbar_[i] - params_.v_inf());
  }
}

std::vector<double> WaveProfile::grid() const {
  std::vector<double> out(vbar_.size());
  for (int i = 0; i < size(); ++i) out[i] = x(i);
  return out;
}

namespace {

// Quintic Hermite interpolation from values and first two derivatives.
double hermite5(double f0, double f1, double d0, double d1, double dd0,
                double dd1, double h, double t) {
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
  const double h1 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
  const double g0 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
  const double g1 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
  const double k0 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
  const double k1 = 0.5 * (t3 - 2.0 * t4 + t5);
  return f0 * h0 + f1 * h1 + h * (d0 * g0 + d1 * g1) +
         h * h * (dd0 * k0 + dd1 * k1);
}

}  // namespace

double WaveProfile::vbar_at(double x) const {
  if (std::abs(x) >= half_length_) {
    return params_.v_inf() + tail_amp_ * std::exp(-nu_ * std::abs(x));
  }
  const double pos = (x + half_length_) / step_;
  const int i = std::min(size() - 2, static_cast<int>(pos));
  const double t = pos - i;
  return hermite5(vbar_[i], vbar_[i + 1], vbar_x_[i], vbar_x_[i + 1],
                  vbar_xx_[i], vbar_xx_[i + 1], step_, t);
}

double WaveProfile::vbar_x_at(double x) const {
  if (std::abs(x) >= half_length_) {
    const double sgn = x > 0.0 ? 1.0 : -1.0;
    return -sgn * nu_ * tail_amp_ * std::exp(-nu_ * std::abs(x));
  }
  const double pos = (x + half_length_) / step_;
  const int i = std::min(size() - 2, static_cast<int>(pos));
  const double t = pos - i;
  return hermite5(vbar_x_[i], vbar_x_[i + 1], vbar_xx_[i], vbar_xx_[i + 1],
                  vbar_xxx_[i], vbar_xxx_[i + 1], step_, t);
}

double energy_residual(const WaveProfile& profile, int i) {
  const ModelParams& params = profile.params();
  const double vx = profile.vbar_x()[i];
  return 0.5 * params.kappa() * vx * vx -
         profile_potential(params, profile.speed(), profile.vbar()[i]);
}

int node_count(const std::vector<double>& vbar_x) {
  int count = 0;
  int last = 0;
  for (std::size_t i = 1; i + 1 < vbar_x.size(); ++i) {
    const int sign = (vbar_x[i] > 0.0) - (vbar_x[i] < 0.0);
    if (sign == 0) continue;
    if (last != 0 && sign != last) ++count;
    last = sign;
  }
  return count;
}

double default_speed_step(double s) { return 1e-3 * std::max(1.0, std::abs(s)); }

ProfileFamily family_at(const ModelParams& params, double s, double ds,
                        const ProfileOptions& options) {
  if (!(ds > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "speed step ds must be positive");
  }
  WaveProfile center = solve_profile(params, s, options);
  ProfileOptions shared = options;
  shared.half_length = center.half_length();
  shared.step = center.step();
  WaveProfile minus = solve_profile(params, s - ds, shared);
  WaveProfile plus = solve_profile(params, s + ds, shared);
  const int n = center.size();
  std::vector<double> dv(n), du(n);
  for (int i = 0; i < n; ++i) {
    dv[i] = (plus.vbar()[i] - minus.vbar()[i]) / (2.0 * ds);
    du[i] = (plus.ubar()[i] - minus.ubar()[i]) / (2.0 * ds);
  }
  return ProfileFamily{s,
                       ds,
                       std::move(minus),
                       std::move(center),
                       std::move(plus),
                       std::move(dv),
                       std::move(du)};
}

}  // namespace korteweg
