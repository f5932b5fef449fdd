#include "korteweg/korteweg.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "../core/parallel.hpp"
#include "korteweg/config.hpp"
#include "korteweg/error.hpp"
#include "korteweg/report.hpp"

using namespace korteweg;

struct kw_model {
  ModelParams params;
};

struct kw_profile {
  WaveProfile profile;
};

namespace {

thread_local std::string g_last_error;

kw_status fail(kw_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs f and maps every exception onto a status code.
template <class F>
kw_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return KW_OK;
  } catch (const Error& e) {
    return fail(static_cast<kw_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(KW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(KW_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(KW_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

char* to_c_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ProfileOptions profile_options(const kw_profile_options* o) {
  ProfileOptions p;
  if (!o) return p;
  require(o->tail_tol > 0.0 && o->tail_tol < 1.0, "tail_tol must be in (0, 1)");
  require(o->nu_h > 0.0 && o->nu_h <= 1.0, "nu_h must be in (0, 1]");
  p.tail_tol = o->tail_tol;
  p.nu_h = o->nu_h;
  if (o->half_length > 0.0) p.half_length = o->half_length;
  if (o->step > 0.0) p.step = o->step;
  return p;
}

Normalization normalization(kw_normalization n) {
  require(n == KW_NORM_UNIT || n == KW_NORM_PAPER, "unknown normalization");
  return n == KW_NORM_PAPER ? Normalization::kPaper : Normalization::kUnit;
}

VerdictOptions verdict_options(const kw_analysis_options* o) {
  kw_analysis_options defaults;
  kw_analysis_options_default(&defaults);
  if (!o) o = &defaults;
  VerdictOptions v;
  v.theorem.profile = profile_options(&o->profile);
  v.theorem.normalization = normalization(o->normalization);
  if (o->ds > 0.0) v.theorem.ds = o->ds;
  if (o->fit_radius > 0.0) v.theorem.fit_radius = o->fit_radius;
  require(o->fit_samples >= 6, "fit_samples must be at least 6");
  v.theorem.fit_samples = o->fit_samples;
  require(o->ratio_tol > 0.0, "ratio_tol must be positive");
  v.theorem.ratio_tol = o->ratio_tol;
  if (o->lambda_max > 0.0) v.lambda_max = o->lambda_max;
  v.scan.threads = o->threads > 0 ? o->threads : 0;
  return v;
}

template <class Render>
kw_status render(char** out, Render&& r) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = nullptr;
    *out = to_c_string(r());
  });
}

}  // namespace

extern "C" {

int kw_abi_version(void) { return KW_ABI_VERSION; }

const char* kw_last_error(void) { return g_last_error.c_str(); }

const char* kw_status_name(kw_status status) {
  if (status == KW_OK) return "Ok";
  if (status == KW_ERR_INTERNAL) return "Internal";
  if (status >= KW_ERR_INVALID_ARGUMENT && status <= KW_ERR_IO) {
    return error_code_name(static_cast<ErrorCode>(static_cast<int>(status)));
  }
  return "Unknown";
}

void kw_string_free(char* s) { std::free(s); }

kw_status kw_model_default(kw_model** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = new kw_model{ModelParams::default_config()};
  });
}

kw_status kw_model_quadratic(double kappa, double a, double b, double v_inf,
                             double u_inf, kw_model** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = new kw_model{
        ModelParams(kappa, QuadraticPressure{a, b}, v_inf, u_inf)};
  });
}

kw_status kw_model_van_der_waals(double kappa, double rt, double acoh,
                                 double bcov, double v_inf, double u_inf,
                                 kw_model** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = new kw_model{ModelParams(
        kappa, VanDerWaalsPressure{rt, acoh, bcov}, v_inf, u_inf)};
  });
}

kw_status kw_model_parse(const char* text, kw_model** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new kw_model{parse_model_config(text)};
  });
}

kw_status kw_model_load(const char* path, kw_model** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new kw_model{load_model_config(path)};
  });
}

void kw_model_free(kw_model* model) { delete model; }

kw_status kw_model_describe(const kw_model* model, char** out) {
  return render(out, [&] {
    require(model != nullptr, "model is null");
    return format_model_config(model->params);
  });
}

kw_status kw_saddle_check(const kw_model* model, double s, int* admissible,
                          double* margin) {
  return guarded([&] {
    require(model && admissible && margin, "null argument");
    const Admissibility a = saddle_check(model->params, s);
    *admissible = a.admissible ? 1 : 0;
    *margin = a.margin;
  });
}

kw_status kw_constant_C(const kw_model* model, double s, double* out) {
  return guarded([&] {
    require(model && out, "null argument");
    *out = constant_C(model->params, s);
  });
}

void kw_profile_options_default(kw_profile_options* opts) {
  if (!opts) return;
  const ProfileOptions d;
  opts->tail_tol = d.tail_tol;
  opts->nu_h = d.nu_h;
  opts->half_length = 0.0;
  opts->step = 0.0;
}

kw_status kw_profile_solve(const kw_model* model, double s,
                           const kw_profile_options* opts, kw_profile** out) {
  return guarded([&] {
    require(model && out, "null argument");
    *out = new kw_profile{solve_profile(model->params, s, profile_options(opts))};
  });
}

void kw_profile_free(kw_profile* profile) { delete profile; }

kw_status kw_profile_get_info(const kw_profile* profile, kw_profile_info* out) {
  return guarded([&] {
    require(profile && out, "null argument");
    const WaveProfile& p = profile->profile;
    out->s = p.speed();
    out->half_length = p.half_length();
    out->step = p.step();
    out->size = static_cast<size_t>(p.size());
    out->crest = p.crest();
    out->nu = p.nu();
    out->tail_amp_plus = p.tail_amp_plus();
    out->tail_amp_minus = p.tail_amp_minus();
    out->node_count = node_count(p);
  });
}

kw_status kw_profile_column(const kw_profile* profile, kw_column col,
                            double* buf, size_t len) {
  return guarded([&] {
    require(profile && buf, "null argument");
    const WaveProfile& p = profile->profile;
    require(len == static_cast<size_t>(p.size()),
            "buffer length must equal the profile size");
    switch (col) {
      case KW_COL_X:
        for (int i = 0; i < p.size(); ++i) buf[i] = p.x(i);
        return;
      case KW_COL_VBAR:
        std::memcpy(buf, p.vbar().data(), len * sizeof(double));
        return;
      case KW_COL_VBAR_X:
        std::memcpy(buf, p.vbar_x().data(), len * sizeof(double));
        return;
      case KW_COL_VBAR_XX:
        std::memcpy(buf, p.vbar_xx().data(), len * sizeof(double));
        return;
      case KW_COL_UBAR:
        std::memcpy(buf, p.ubar().data(), len * sizeof(double));
        return;
    }
    require(false, "unknown column");
  });
}

kw_status kw_profile_eval(const kw_profile* profile, double x, double* vbar,
                          double* vbar_x) {
  return guarded([&] {
    require(profile && vbar && vbar_x, "null argument");
    require(std::isfinite(x), "x must be finite");
    *vbar = profile->profile.vbar_at(x);
    *vbar_x = profile->profile.vbar_x_at(x);
  });
}

kw_status kw_moment_report(const kw_model* model, double s, double ds,
                           const kw_profile_options* opts, kw_moment* out) {
  return guarded([&] {
    require(model && out, "null argument");
    const MomentReport r =
        moment_report(model->params, s, ds > 0.0 ? ds : default_speed_step(s),
                      profile_options(opts));
    *out = kw_moment{r.s,       r.Q,          r.H,
                     r.m,       r.dQ_ds,      r.d2m_ds2_direct,
                     r.dm_ds,   r.gamma,      r.gamma_alt,
                     r.P1_v,    r.P1_u,       r.cross_check_gap,
                     r.melnikov_gap, r.consistent ? 1 : 0};
  });
}

kw_status kw_evans_at(const kw_profile* profile, double lambda_re,
                      double lambda_im, kw_normalization norm,
                      kw_evans_sample* out) {
  return guarded([&] {
    require(profile && out, "null argument");
    EvansOptions eo;
    eo.normalization = normalization(norm);
    const EvansSample e =
        evans_at(profile->profile, cplx(lambda_re, lambda_im), eo);
    *out = kw_evans_sample{e.lambda.real(), e.lambda.imag(), e.D.real(),
                           e.D.imag(),      e.renorm_log,    e.plucker_drift};
  });
}

void kw_analysis_options_default(kw_analysis_options* opts) {
  if (!opts) return;
  kw_profile_options_default(&opts->profile);
  const TheoremOptions t;
  opts->normalization = KW_NORM_PAPER;
  opts->ds = 0.0;
  opts->fit_radius = 0.0;
  opts->fit_samples = t.fit_samples;
  opts->ratio_tol = t.ratio_tol;
  opts->lambda_max = 0.0;
  opts->threads = 0;
}

kw_status kw_verify_theorem(const kw_model* model, double s,
                            const kw_analysis_options* opts, kw_theorem* out) {
  return guarded([&] {
    require(model && out, "null argument");
    const TheoremReport r =
        verify_theorem(model->params, s, verdict_options(opts).theorem);
    const ZeroDerivatives& d = r.derivatives;
    *out = kw_theorem{r.s,       r.kappa, r.d2m_ds2,
                      d.d0,      d.d1,    d.d2,
                      d.sd0,     d.sd1,   d.sd2,
                      r.C,       r.predicted_ratio, r.measured_ratio,
                      r.signs_agree ? 1 : 0, r.ratio_agrees ? 1 : 0,
                      r.degenerate ? 1 : 0};
  });
}

kw_status kw_stability_verdict(const kw_model* model, double s,
                               const kw_analysis_options* opts,
                               kw_stability* out) {
  return guarded([&] {
    require(model && out, "null argument");
    const StabilityReport r = verdict(model->params, s, verdict_options(opts));
    out->verdict = r.verdict == Verdict::kStable     ? KW_VERDICT_STABLE
                   : r.verdict == Verdict::kUnstable ? KW_VERDICT_UNSTABLE
                                                     : KW_VERDICT_DEGENERATE;
    out->Gamma_index = r.Gamma_index;
    out->sign_D_infinity = r.sign_D_infinity;
    out->node_count = r.node_count;
    out->root_count = r.roots.size();
    out->first_root = r.roots.empty()
                          ? std::numeric_limits<double>::quiet_NaN()
                          : r.roots.front().lambda;
    out->lambda_max = r.lambda_max;
    out->d2m_ds2 = r.theorem.d2m_ds2;
    out->D2 = r.D2;
  });
}

kw_status kw_dispersion(const kw_model* model, double s, const double* xi,
                        size_t n, double* out) {
  return guarded([&] {
    require(model && (n == 0 || (xi && out)), "null argument");
    const auto rows =
        dispersion_curve(model->params, s, std::vector<double>(xi, xi + n));
    for (size_t i = 0; i < n; ++i) {
      out[4 * i + 0] = rows[i].lambda_plus.real();
      out[4 * i + 1] = rows[i].lambda_plus.imag();
      out[4 * i + 2] = rows[i].lambda_minus.real();
      out[4 * i + 3] = rows[i].lambda_minus.imag();
    }
  });
}

kw_status kw_stability_index(double D2, int sign_inf, double uncertainty,
                             int* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = stability_index(D2, sign_inf, uncertainty);
  });
}

kw_status kw_render_profile(const kw_profile* profile, kw_format fmt,
                            char** out) {
  return render(out, [&] {
    require(profile != nullptr, "profile is null");
    return fmt == KW_FORMAT_JSON ? profile_json(profile->profile)
                                 : profile_csv(profile->profile);
  });
}

kw_status kw_render_moment_sweep(const kw_model* model, const double* speeds,
                                 size_t n, const kw_analysis_options* opts,
                                 kw_format fmt, char** out) {
  return render(out, [&] {
    require(model != nullptr, "model is null");
    require(n > 0 && speeds != nullptr, "speed list is empty");
    const VerdictOptions v = verdict_options(opts);
    const auto rows = detail::parallel_map<MomentReport>(
        static_cast<int>(n), v.scan.threads, [&](int i) {
          const double s = speeds[i];
          return moment_report(model->params, s,
                               v.theorem.ds.value_or(default_speed_step(s)),
                               v.theorem.profile);
        });
    return fmt == KW_FORMAT_JSON ? moment_sweep_json(rows)
                                 : moment_sweep_csv(rows);
  });
}

kw_status kw_render_evans_scan(const kw_profile* profile,
                               const double* lambda_re,
                               const double* lambda_im, size_t n,
                               kw_normalization norm, int threads,
                               kw_format fmt, char** out) {
  return render(out, [&] {
    require(profile != nullptr, "profile is null");
    require(n > 0 && lambda_re && lambda_im, "lambda list is empty");
    EvansOptions eo;
    eo.normalization = normalization(norm);
    for (size_t i = 0; i < n; ++i) {
      require(std::isfinite(lambda_re[i]) && std::isfinite(lambda_im[i]),
              "lambda must be finite");
      if (lambda_re[i] < 0.0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "Evans function requires Re lambda >= 0");
      }
    }
    const auto rows = detail::parallel_map<EvansSample>(
        static_cast<int>(n), threads, [&](int i) {
          return evans_at(profile->profile, cplx(lambda_re[i], lambda_im[i]),
                          eo);
        });
    return fmt == KW_FORMAT_JSON ? evans_scan_json(rows) : evans_scan_csv(rows);
  });
}

kw_status kw_render_verify(const kw_model* model, double s,
                           const kw_analysis_options* opts, kw_format fmt,
                           char** out) {
  return render(out, [&] {
    require(model != nullptr, "model is null");
    const StabilityReport r = verdict(model->params, s, verdict_options(opts));
    return fmt == KW_FORMAT_JSON ? verify_json(r) : verify_csv(r);
  });
}

kw_status kw_render_dispersion(const kw_model* model, double s,
                               const double* xi, size_t n, kw_format fmt,
                               char** out) {
  return render(out, [&] {
    require(model != nullptr, "model is null");
    require(n > 0 && xi != nullptr, "xi list is empty");
    const auto rows =
        dispersion_curve(model->params, s, std::vector<double>(xi, xi + n));
    return fmt == KW_FORMAT_JSON ? dispersion_json(rows) : dispersion_csv(rows);
  });
}

}  // extern "C"
