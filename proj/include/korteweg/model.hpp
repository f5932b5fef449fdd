#ifndef KORTEWEG_MODEL_HPP
#define KORTEWEG_MODEL_HPP

#include <string>
#include <variant>

namespace korteweg {

/// p(v) = a v + b v^2.
struct QuadraticPressure {
  double a = -1.0;
  double b = 1.0;

  double p(double v) const { return a * v + b * v * v; }
  double dp(double v) const { return a + 2.0 * b * v; }
  double d2p(double /*v*/) const { return 2.0 * b; }
  double slope(double v0, double y) const { return a + b * (2.0 * v0 + y); }
  double potential_ratio(double v0, double y) const {
    return 0.5 * a + b * (v0 + y / 3.0);
  }
  bool in_domain(double /*v*/) const { return true; }
};

/// p(v) = RT / (v - bcov) - acoh / v^2, defined for v > bcov.
struct VanDerWaalsPressure {
  double rt = 0.0;
  double acoh = 0.0;
  double bcov = 0.0;

  double p(double v) const;
  double dp(double v) const;
  double d2p(double v) const;
  double slope(double v0, double y) const;
  double potential_ratio(double v0, double y) const;
  bool in_domain(double v) const { return v > bcov && v > 0.0; }
};

/// Pressure as a function of specific volume.
///
/// Besides p, p' and p'' the law exposes two cancellation-free increments
/// that the profile quadrature relies on near the endstate:
///   slope(v0, y)           = (p(v0 + y) - p(v0)) / y
///   potential_ratio(v0, y) = y^-2 * int_0^y (p(v0 + e) - p(v0)) de
/// Both are continuous at y = 0 (limits p'(v0) and p'(v0) / 2).
class PressureLaw {
 public:
  PressureLaw(QuadraticPressure law) : law_(law) {}  // NOLINT
  PressureLaw(VanDerWaalsPressure law);              // NOLINT

  double p(double v) const;
  double dp(double v) const;
  double d2p(double v) const;
  double slope(double v0, double y) const;
  double potential_ratio(double v0, double y) const;
  bool in_domain(double v) const;

  std::string kind() const;
  const std::variant<QuadraticPressure, VanDerWaalsPressure>& law() const {
    return law_;
  }

 private:
  std::variant<QuadraticPressure, VanDerWaalsPressure> law_;
};

class ModelParams {
 public:
  /// Throws Error(kInvalidArgument) for kappa <= 0, an endstate outside the
  /// pressure domain, or a pressure law whose derivatives disagree with
  /// finite differences of p near v_inf.
  ModelParams(double kappa, PressureLaw pressure, double v_inf, double u_inf);

  double kappa() const { return kappa_; }
  const PressureLaw& pressure() const { return pressure_; }
  double v_inf() const { return v_inf_; }
  double u_inf() const { return u_inf_; }

  /// alpha_inf = p'(v_inf).
  double alpha_inf() const { return pressure_.dp(v_inf_); }

  /// Quadratic(a=-1, b=1), v_inf = 0, u_inf = 0, kappa = 1.
  static ModelParams default_config();

 private:
  double kappa_;
  PressureLaw pressure_;
  double v_inf_;
  double u_inf_;
};

struct Admissibility {
  bool admissible = false;
  double margin = 0.0;  // s^2 + p'(v_inf); admissible iff < 0
};

/// Saddle-point condition of the endstate for the profile ODE.
Admissibility saddle_check(const ModelParams& params, double s);

struct SoundSpeeds {
  double c = 0.0;   // sqrt(-p'(v_inf))
  double nu = 0.0;  // profile tail decay rate sqrt(-(s^2 + p'(v_inf)) / kappa)
};

/// Throws Error(kNotAdmissible) when the saddle condition fails.
SoundSpeeds sound_speeds(const ModelParams& params, double s);

/// Diagnostic text used whenever the saddle condition is violated.
std::string saddle_violation_message(const ModelParams& params, double s);

/// Max relative disagreement between (p, p') and (p', p'') via central
/// differences on the given points.
double pressure_consistency_error(const PressureLaw& law, const double* v,
                                  int count);

}  // namespace korteweg

#endif  // KORTEWEG_MODEL_HPP
