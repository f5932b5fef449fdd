#include <doctest.h>

#include <cmath>
#include <random>

#include "korteweg/error.hpp"
#include "korteweg/evans.hpp"
#include "oracles.hpp"

using namespace korteweg;

namespace {

const ModelParams kDefault = ModelParams::default_config();

Vec4 random_vec(std::mt19937& g) {
  std::normal_distribution<double> n;
  Vec4 v;
  for (int i = 0; i < 4; ++i) v(i) = cplx(n(g), n(g));
  return v;
}

// Integrates W' = A W - mu W with classical RK4 from x = from to 0.
Vec4 integrate_mode(const WaveProfile& p, cplx lambda, Vec4 w, cplx mu,
                    double from, int steps) {
  const double h = -from / steps;
  double x = from;
  const auto f = [&](double xx, const Vec4& y) -> Vec4 {
    return coefficient_matrix(p, xx, lambda) * y - mu * y;
  };
  for (int i = 0; i < steps; ++i) {
    const Vec4 k1 = f(x, w);
    const Vec4 k2 = f(x + 0.5 * h, w + 0.5 * h * k1);
    const Vec4 k3 = f(x + 0.5 * h, w + 0.5 * h * k2);
    const Vec4 k4 = f(x + h, w + h * k3);
    w += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    x += h;
  }
  return w;
}

}  // namespace

TEST_CASE("coefficient matrix reproduces the eigenvalue equations") {
  // At a point x0 pick arbitrary jets (u, u') and (v, v', v'', v''') and
  // compare W' - A W with the residuals of
  //   lambda v - s v' - u' = 0,
  //   lambda u - s u' + (alpha v)' + kappa v''' = 0.
  const ModelParams params(1.7, QuadraticPressure{-1.2, 0.8}, 0.1, -0.3);
  const WaveProfile p = solve_profile(params, 0.4);
  std::mt19937 g(7);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 20; ++trial) {
    const double x0 = 4.0 * n(g);
    const cplx lambda(n(g), n(g));
    const cplx u0(n(g), n(g)), u1(n(g), n(g));
    const cplx v0(n(g), n(g)), v1(n(g), n(g)), v2(n(g), n(g)), v3(n(g), n(g));
    const double vb = p.vbar_at(x0), vbx = p.vbar_x_at(x0);
    const double alpha = params.pressure().dp(vb);
    const double alpha_x = params.pressure().d2p(vb) * vbx;
    const double s = 0.4, kappa = 1.7;

    const cplx r1 = lambda * v0 - s * v1 - u1;
    const cplx r2 = lambda * u0 - s * u1 + alpha_x * v0 + alpha * v1 + kappa * v3;
    Vec4 w, dw;
    w << u0, v0, v1, v2;
    dw << u1, v1, v2, v3;
    const Vec4 diff = dw - coefficient_matrix(params, s, vb, vbx, lambda) * w;
    CHECK(std::abs(diff(0) + r1) <= 1e-12);
    CHECK(std::abs(diff(1)) <= 1e-12);
    CHECK(std::abs(diff(2)) <= 1e-12);
    // row 4 eliminates u' with the first equation
    CHECK(std::abs(diff(3) - (r2 - s * r1) / kappa) <= 1e-12);
    // the profile overload evaluates the same thing
    CHECK((coefficient_matrix(p, x0, lambda) -
           coefficient_matrix(params, s, vb, vbx, lambda)).norm() <= 1e-14);
  }
}

TEST_CASE("coefficients approach the limit exponentially") {
  const WaveProfile p = solve_profile(kDefault, 0.6);
  const cplx lambda(0.7, 0.2);
  const Mat4 inf = limiting_matrix(kDefault, 0.6, lambda);
  const double e10 = (coefficient_matrix(p, 10.0, lambda) - inf).norm();
  const double e20 = (coefficient_matrix(p, -20.0, lambda) - inf).norm();
  CHECK(e10 > 0.0);
  // decay rate nu = 0.8: ratio ~ exp(-8)
  CHECK(e20 / e10 == doctest::Approx(std::exp(-8.0)).epsilon(1e-3));
}

TEST_CASE("characteristic polynomial of the limiting matrix") {
  const ModelParams params(2.0, QuadraticPressure{-1.5, 1.0}, 0.0, 0.0);
  const double s = 0.5;
  std::mt19937 g(3);
  std::normal_distribution<double> n;
  for (int k = 0; k < 10; ++k) {
    const cplx lambda(n(g), n(g)), mu(n(g), n(g));
    const Mat4 a = limiting_matrix(params, s, lambda);
    const cplx det = (mu * Mat4::Identity() - a).determinant();
    CHECK(std::abs(params.kappa() * det - characteristic(params, s, lambda, mu)) <=
          1e-10 * (1.0 + std::abs(det)));
  }
}

TEST_CASE("exterior algebra identities") {
  std::mt19937 g(11);
  for (int k = 0; k < 10; ++k) {
    const Vec4 a = random_vec(g), b = random_vec(g), c = random_vec(g), d = random_vec(g);
    Mat4 m;
    m << a, b, c, d;
    CHECK(std::abs(wedge_pairing(wedge(a, b), wedge(c, d)) - m.determinant()) <=
          1e-12 * (1.0 + std::abs(m.determinant())));
    CHECK(std::abs(plucker(wedge(a, b))) <= 1e-12);
    Mat4 A;
    A << a, c, b, d;
    const Wedge lhs = exterior_square(A) * wedge(a, b);
    const Wedge rhs = wedge(A * a, b) + wedge(a, A * b);
    CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
  }
  Wedge e12_plus_e34 = Wedge::Zero();
  e12_plus_e34(0) = 1.0;
  e12_plus_e34(5) = 1.0;
  CHECK(std::abs(plucker(e12_plus_e34)) == doctest::Approx(1.0));
}

TEST_CASE("splitting at lambda = 0") {
  const Splitting sp = limiting_splitting(kDefault, 0.6, cplx(0.0));
  CHECK(std::abs(sp.mu[0] - cplx(-0.8)) <= 1e-12);
  CHECK(std::abs(sp.mu[1]) <= 1e-12);
  CHECK(std::abs(sp.mu[2]) <= 1e-12);
  CHECK(std::abs(sp.mu[3] - cplx(0.8)) <= 1e-12);
  // slow directions (-+c, 1, 0, 0) with c = 1
  Vec4 stable_slow, unstable_slow;
  stable_slow << -1.0, 1.0, 0.0, 0.0;
  unstable_slow << 1.0, 1.0, 0.0, 0.0;
  CHECK((sp.vectors[1] - stable_slow).norm() <= 1e-12);
  CHECK((sp.vectors[2] - unstable_slow).norm() <= 1e-12);
  // fast directions (-s, 1, mu, mu^2)
  CHECK(std::abs(sp.vectors[0](0) - cplx(-0.6)) <= 1e-12);
  CHECK(std::abs(sp.vectors[0](2) - cplx(-0.8)) <= 1e-12);
  CHECK(std::abs(sp.stable(0) - cplx(1.0)) <= 1e-15);
}

TEST_CASE("splitting is analytic through lambda = 0") {
  // the normalized planes at tiny real lambda approach those at 0
  const Splitting z = limiting_splitting(kDefault, 0.6, cplx(0.0));
  const Splitting e = limiting_splitting(kDefault, 0.6, cplx(1e-7));
  CHECK((z.stable - e.stable).norm() <= 1e-5);
  CHECK((z.unstable - e.unstable).norm() <= 1e-5);
}

TEST_CASE("large-lambda roots follow fourth roots of -1") {
  const ModelParams params(2.0, QuadraticPressure{-1.0, 1.0}, 0.0, 0.0);
  const double lambda = 1e6;
  const Splitting sp = limiting_splitting(params, 0.3, cplx(lambda));
  const double scale = std::sqrt(lambda) * std::pow(2.0, -0.25);
  for (const cplx& mu : sp.mu) {
    const cplx z = mu / scale;
    CHECK(std::abs(z * z * z * z + 1.0) <= 1e-2);
  }
}

TEST_CASE("consistent splitting for random lambda") {
  std::mt19937 g(2024);
  std::uniform_real_distribution<double> re(1e-6, 10.0), im(-10.0, 10.0);
  for (int k = 0; k < 50; ++k) {
    const cplx lambda(re(g), im(g));
    CAPTURE(lambda);
    const Splitting sp = limiting_splitting(kDefault, 0.6, lambda);
    CHECK(sp.mu[0].real() < 0.0);
    CHECK(sp.mu[1].real() < 0.0);
    CHECK(sp.mu[2].real() > 0.0);
    CHECK(sp.mu[3].real() > 0.0);
    for (const cplx& mu : sp.mu) {
      CHECK(std::abs(characteristic(kDefault, 0.6, lambda, mu)) <=
            1e-9 * (1.0 + std::norm(lambda)));
    }
  }
}

TEST_CASE("splitting domain guard") {
  for (const cplx lambda : {cplx(-0.1, 0.0), cplx(0.0, 1.0), cplx(-1.0, 3.0)}) {
    try {
      limiting_splitting(kDefault, 0.6, lambda);
      FAIL("expected InvalidArgument");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidArgument);
    }
  }
}

TEST_CASE("compound-matrix D equals the direct 4x4 Wronskian") {
  const WaveProfile p = solve_profile(kDefault, 0.6);
  for (const cplx lambda : {cplx(1.0), cplx(0.4, 0.9), cplx(6.0, -2.0)}) {
    CAPTURE(lambda);
    const Splitting sp = limiting_splitting(kDefault, 0.6, lambda);
    const double L = p.half_length();
    const int steps = 20000;
    const Vec4 w1 = integrate_mode(p, lambda, sp.vectors[0], sp.mu[0], L, steps);
    const Vec4 w2 = integrate_mode(p, lambda, sp.vectors[1], sp.mu[1], L, steps);
    const Vec4 w3 = integrate_mode(p, lambda, sp.vectors[2], sp.mu[2], -L, steps);
    const Vec4 w4 = integrate_mode(p, lambda, sp.vectors[3], sp.mu[3], -L, steps);
    Mat4 m;
    // +inf plane ordered slow ^ fast
    m << w2, w1, w3, w4;
    const cplx n_plus = wedge(sp.vectors[1], sp.vectors[0])(0);
    const cplx n_minus = wedge(sp.vectors[2], sp.vectors[3])(0);
    const cplx direct = m.determinant() / (n_plus * n_minus);
    const cplx compound = evans_at(p, lambda).D;
    CHECK(std::abs(direct - compound) <= 1e-7 * std::abs(compound));
  }
}

TEST_CASE("D vanishes at 0, is real on the real axis and analytic") {
  const WaveProfile p = solve_profile(kDefault, 0.6);
  const EvansSample z = evans_at(p, cplx(0.0));
  const EvansSample one = evans_at(p, cplx(1.0));
  CHECK(std::abs(z.D) <= 1e-8 * std::abs(one.D));
  for (double lam : {0.01, 0.5, 5.0, 40.0}) {
    const cplx D = evans_at(p, cplx(lam)).D;
    CHECK(std::abs(D.imag()) <= 1e-10 * std::abs(D) + 1e-14);
  }
  // conjugate symmetry and Cauchy-Riemann on a small stencil
  const cplx l0(1.0, 0.5);
  const cplx d0 = evans_at(p, l0).D;
  CHECK(std::abs(evans_at(p, std::conj(l0)).D - std::conj(d0)) <= 1e-9 * std::abs(d0));
  const double h = 1e-4;
  const cplx dx = (evans_at(p, l0 + h).D - evans_at(p, l0 - h).D) / (2.0 * h);
  const cplx dy = (evans_at(p, l0 + cplx(0, h)).D - evans_at(p, l0 - cplx(0, h)).D) / (2.0 * h);
  CHECK(std::abs(dx + cplx(0, 1) * dy) <= 1e-6 * std::abs(dx));
}

TEST_CASE("plucker drift stays small") {
  const WaveProfile p = solve_profile(kDefault, 0.3);
  for (const cplx lambda : {cplx(0.0), cplx(0.2), cplx(2.0, 3.0), cplx(50.0)}) {
    CHECK(evans_at(p, lambda).plucker_drift <= 1e-8);
  }
}

TEST_CASE("D is positive for large real lambda") {
  for (double s : {0.3, 0.6, 0.8}) {
    const WaveProfile p = solve_profile(kDefault, s);
    for (double lam : {20.0, 60.0, 200.0}) {
      CAPTURE(s);
      CAPTURE(lam);
      CHECK(evans_at(p, cplx(lam)).D.real() > 0.0);
      EvansOptions paper;
      paper.normalization = Normalization::kPaper;
      CHECK(evans_at(p, cplx(lam), paper).D.real() > 0.0);
    }
  }
}

TEST_CASE("s = 0.3 has exactly one sign change on the real axis") {
  const WaveProfile p = solve_profile(kDefault, 0.3);
  int changes = 0;
  double prev = evans_at(p, cplx(1e-3)).D.real();
  for (int k = 1; k <= 120; ++k) {
    const double lam = 1e-3 * std::pow(1e5, k / 120.0);
    const double d = evans_at(p, cplx(lam)).D.real();
    if ((d > 0.0) != (prev > 0.0)) ++changes;
    prev = d;
  }
  CHECK(changes == 1);
}

TEST_CASE("paper normalization is a positive rescaling") {
  const WaveProfile p = solve_profile(kDefault, 0.6);
  const double f = paper_normalization_factor(p);
  // nu^2 a^2 (c^2 - s^2) with a = 3.84
  CHECK(f == doctest::Approx(0.64 * 3.84 * 3.84 * 0.64).epsilon(1e-10));
  EvansOptions paper;
  paper.normalization = Normalization::kPaper;
  const cplx lambda(0.8, 0.3);
  CHECK(std::abs(evans_at(p, lambda, paper).D - f * evans_at(p, lambda).D) <=
        1e-10 * std::abs(evans_at(p, lambda, paper).D));
}

TEST_CASE("derivatives at zero") {
  for (double s : {0.3, 0.6, 0.8}) {
    CAPTURE(s);
    const WaveProfile p = solve_profile(kDefault, s);
    const ZeroDerivatives d = evans_derivatives_at_zero(p);
    CHECK(std::abs(d.d0) <= 1e-6 * std::abs(d.coeffs[2]));
    CHECK(std::abs(d.d1) <= 1e-6 * std::abs(d.coeffs[2]));
    CHECK(std::abs(d.d2) > 3.0 * d.sd2);
    CHECK((d.d2 > 0.0) == (s > 0.5));
    CHECK(d.samples == 12);
    CHECK(d.fit_radius == doctest::Approx(default_fit_radius(oracle::nu(s))));
  }
  const ZeroDerivatives half = evans_derivatives_at_zero(solve_profile(kDefault, 0.5));
  CHECK(std::abs(half.d2) <= 3.0 * half.sd2);
}

TEST_CASE("fit guards") {
  const WaveProfile p = solve_profile(kDefault, 0.6);
  try {
    evans_derivatives_at_zero(p, {}, 0.5);
    FAIL("expected FitUnstable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kFitUnstable);
  }
  CHECK_THROWS_AS(evans_derivatives_at_zero(p, {}, -1.0), Error);
  CHECK_THROWS_AS(evans_derivatives_at_zero(p, {}, {}, 5), Error);
  CHECK(default_fit_radius(0.8) == doctest::Approx(0.0064));
  CHECK(default_fit_radius(2.0) == doctest::Approx(0.01));
}

TEST_CASE("D''(0) is robust to the window and the step") {
  const WaveProfile base = solve_profile(kDefault, 0.6);
  const double d2 = evans_derivatives_at_zero(base).d2;
  ProfileOptions wide;
  wide.half_length = 2.0 * base.half_length();
  ProfileOptions fine;
  fine.step = 0.5 * base.step();
  CHECK(evans_derivatives_at_zero(solve_profile(kDefault, 0.6, wide)).d2 ==
        doctest::Approx(d2).epsilon(5e-3));
  CHECK(evans_derivatives_at_zero(solve_profile(kDefault, 0.6, fine)).d2 ==
        doctest::Approx(d2).epsilon(5e-3));
}

TEST_CASE("constant C") {
  CHECK(constant_C(kDefault, 0.6) == doctest::Approx(-1.28));
  CHECK(constant_C(kDefault, 0.0) == doctest::Approx(-2.0));
  const ModelParams positive(1.0, QuadraticPressure{1.0, 1.0}, 0.0, 0.0);
  CHECK_THROWS_AS(constant_C(positive, 0.1), Error);
}

TEST_CASE("sign law of D''(0) and d2m/ds2") {
  for (auto norm : {Normalization::kUnit, Normalization::kPaper}) {
    for (double s : {0.3, 0.4, 0.6, 0.7, 0.8}) {
      CAPTURE(s);
      TheoremOptions o;
      o.normalization = norm;
      const TheoremReport r = verify_theorem(kDefault, s, o);
      CHECK(r.signs_agree);
      CHECK((r.D2_at_0 > 0.0) == (s > 0.5));
      CHECK(r.predicted_ratio == doctest::Approx(oracle::minus_C_over_kappa(s)));
    }
  }
}

TEST_CASE("D''(0) = 2 (-C/kappa^2) d2m/ds2 under the paper normalization") {
  // The factor 2 comes from d^2/dlambda^2 [(L - lambda) U] = 0, which gives
  // (L - lambda) U'' = 2 U' for the second member of the Jordan chain. The
  // extra 1/kappa is the slow-mode entry of the reduced fourth row,
  // kappa^-1 (-s u + alpha v), in the 2x2 determinant C.
  for (double kappa : {0.5, 1.0, 2.0, 4.0}) {
    const ModelParams params(kappa, QuadraticPressure{-1.0, 1.0}, 0.0, 0.0);
    for (double s : {0.3, 0.6, 0.8}) {
      CAPTURE(kappa);
      CAPTURE(s);
      const TheoremReport r = verify_theorem(params, s);
      CHECK(r.measured_ratio / r.predicted_ratio == doctest::Approx(2.0 / kappa).epsilon(1e-3));
    }
  }
}

TEST_CASE("threshold speed is degenerate") {
  const TheoremReport r = evaluate_theorem(kDefault, 0.5);
  CHECK(r.degenerate);
  CHECK_FALSE(r.signs_agree);
  try {
    verify_theorem(kDefault, 0.5);
    FAIL("expected DegenerateCase");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateCase);
  }
}
