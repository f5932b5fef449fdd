#include "korteweg/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "korteweg/error.hpp"

namespace korteweg {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kNotAdmissible: return "NotAdmissible";
    case ErrorCode::kNoHomoclinic: return "NoHomoclinic";
    case ErrorCode::kQuadratureFailure: return "QuadratureFailure";
    case ErrorCode::kSplittingLost: return "SplittingLost";
    case ErrorCode::kIntegrationFailure: return "IntegrationFailure";
    case ErrorCode::kNormalizationOverflow: return "NormalizationOverflow";
    case ErrorCode::kFitUnstable: return "FitUnstable";
    case ErrorCode::kDegenerateCase: return "DegenerateCase";
    case ErrorCode::kDegenerateIndex: return "DegenerateIndex";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Van der Waals

double VanDerWaalsPressure::p(double v) const {
  return rt / (v - bcov) - acoh / (v * v);
}

double VanDerWaalsPressure::dp(double v) const {
  const double d = v - bcov;
  return -rt / (d * d) + 2.0 * acoh / (v * v * v);
}

double VanDerWaalsPressure::d2p(double v) const {
  const double d = v - bcov;
  return 2.0 * rt / (d * d * d) - 6.0 * acoh / (v * v * v * v);
}

double VanDerWaalsPressure::slope(double v0, double y) const {
  const double w = v0 + y;
  return -rt / ((v0 - bcov) * (w - bcov)) +
         acoh * (2.0 * v0 + y) / (v0 * v0 * w * w);
}

double VanDerWaalsPressure::potential_ratio(double v0, double y) const {
  const double d = v0 - bcov;
  const double r = y / d;
  // (log1p(r) - r) / r^2 loses everything to cancellation for small r.
  double log_part;
  if (std::abs(r) < 0.1) {
    double term = 1.0;
    log_part = 0.0;
    for (int k = 2; k < 24; ++k) {
      log_part += ((k % 2 == 0) ? -1.0 : 1.0) * term / k;
      term *= r;
    }
  } else {
    log_part = (std::log1p(r) - r) / (r * r);
  }
  return rt / (d * d) * log_part + acoh / (v0 * v0 * (v0 + y));
}

// ---------------------------------------------------------------------------
// PressureLaw

PressureLaw::PressureLaw(VanDerWaalsPressure law) : law_(law) {
  if (!(law.rt > 0.0) || !(law.acoh >= 0.0) || !(law.bcov >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "van der Waals pressure requires RT > 0, acoh >= 0, bcov >= 0");
  }
}

double PressureLaw::p(double v) const {
  return std::visit([v](const auto& l) { return l.p(v); }, law_);
}
double PressureLaw::dp(double v) const {
  return std::visit([v](const auto& l) { return l.dp(v); }, law_);
}
double PressureLaw::d2p(double v) const {
  return std::visit([v](const auto& l) { return l.d2p(v); }, law_);
}
double PressureLaw::slope(double v0, double y) const {
  return std::visit([=](const auto& l) { return l.slope(v0, y); }, law_);
}
double PressureLaw::potential_ratio(double v0, double y) const {
  return std::visit([=](const auto& l) { return l.potential_ratio(v0, y); },
                    law_);
}
bool PressureLaw::in_domain(double v) const {
  return std::visit([v](const auto& l) { return l.in_domain(v); }, law_);
}

std::string PressureLaw::kind() const {
  return std::holds_alternative<QuadraticPressure>(law_) ? "quadratic"
                                                         : "van_der_waals";
}

double pressure_consistency_error(const PressureLaw& law, const double* v,
                                  int count) {
  // Errors are measured against the largest |p'| and |p''| over the sample,
  // so a derivative that happens to vanish at one point (an inflection of a
  // van der Waals isotherm, say) does not blow up the ratio.
  double scale1 = 1e-12, scale2 = 1e-12;
  for (int i = 0; i < count; ++i) {
    scale1 = std::max(scale1, std::abs(law.dp(v[i])));
    scale2 = std::max(scale2, std::abs(law.d2p(v[i])));
  }
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const double x = v[i];
    const double h = 1e-4 * std::max(1.0, std::abs(x));
    if (!law.in_domain(x - h) || !law.in_domain(x + h)) continue;
    // Richardson on h, h/2 so truncation near a pole stays below the tolerance
    const auto d1 = [&](double k) { return (law.p(x + k) - law.p(x - k)) / (2.0 * k); };
    const auto d2 = [&](double k) { return (law.dp(x + k) - law.dp(x - k)) / (2.0 * k); };
    const double fd1 = (4.0 * d1(0.5 * h) - d1(h)) / 3.0;
    const double fd2 = (4.0 * d2(0.5 * h) - d2(h)) / 3.0;
    worst = std::max(worst, std::abs(fd1 - law.dp(x)) / scale1);
    worst = std::max(worst, std::abs(fd2 - law.d2p(x)) / scale2);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// ModelParams

ModelParams::ModelParams(double kappa, PressureLaw pressure, double v_inf,
                         double u_inf)
    : kappa_(kappa), pressure_(std::move(pressure)), v_inf_(v_inf),
      u_inf_(u_inf) {
  if (!(kappa_ > 0.0) || !std::isfinite(kappa_)) {
    throw Error(ErrorCode::kInvalidArgument, "kappa must be positive");
  }
  if (!std::isfinite(v_inf_) || !std::isfinite(u_inf_)) {
    throw Error(ErrorCode::kInvalidArgument, "endstate must be finite");
  }
  if (!pressure_.in_domain(v_inf_)) {
    throw Error(ErrorCode::kInvalidArgument,
                "v_inf lies outside the domain of the pressure law");
  }
  std::vector<double> samples;
  const double spread = 0.25 * std::max(1.0, std::abs(v_inf_));
  for (int k = -4; k <= 4; ++k) {
    const double v = v_inf_ + spread * k / 4.0;
    if (pressure_.in_domain(v)) samples.push_back(v);
  }
  const double err = pressure_consistency_error(
      pressure_, samples.data(), static_cast<int>(samples.size()));
  if (!(err <= 1e-6)) {
    throw Error(ErrorCode::kInvalidArgument,
                "pressure law derivatives are inconsistent with p");
  }
}

ModelParams ModelParams::default_config() {
  return ModelParams(1.0, QuadraticPressure{-1.0, 1.0}, 0.0, 0.0);
}

Admissibility saddle_check(const ModelParams& params, double s) {
  const double margin = s * s + params.alpha_inf();
  return {margin < 0.0, margin};
}

std::string saddle_violation_message(const ModelParams& params, double s) {
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "saddle condition violated: s²+p'(v∞)=%.6g",
                saddle_check(params, s).margin);
  return buf;
}

SoundSpeeds sound_speeds(const ModelParams& params, double s) {
  const Admissibility adm = saddle_check(params, s);
  if (!adm.admissible) {
    throw Error(ErrorCode::kNotAdmissible, saddle_violation_message(params, s));
  }
  // alpha_inf <= margin < 0 here, so c is well defined.
  return {std::sqrt(-params.alpha_inf()),
          std::sqrt(-adm.margin / params.kappa())};
}

}  // namespace korteweg
