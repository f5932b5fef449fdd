// korteweg: profiles, moment sweeps, Evans scans and stability verdicts for
// solitary waves of the isentropic Korteweg model. Built on the C API only.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "korteweg/korteweg.h"

namespace {

struct OperationalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(kw_status st) {
  if (st != KW_OK) {
    throw OperationalError(std::string(kw_status_name(st)) + ": " +
                           kw_last_error());
  }
}

struct ModelHandle {
  kw_model* p = nullptr;
  ~ModelHandle() { kw_model_free(p); }
};
struct ProfileHandle {
  kw_profile* p = nullptr;
  ~ProfileHandle() { kw_profile_free(p); }
};
struct CString {
  char* p = nullptr;
  ~CString() { kw_string_free(p); }
};

struct ModelFlags {
  std::string config;
  std::optional<double> kappa, a, b, rt, acoh, bcov, v_inf, u_inf;
  std::optional<std::string> kind;
};

// Canonical key = value text of the base model with flag overrides applied.
std::string model_text(const ModelFlags& f) {
  ModelHandle base;
  check(f.config.empty() ? kw_model_default(&base.p)
                         : kw_model_load(f.config.c_str(), &base.p));
  CString text;
  check(kw_model_describe(base.p, &text.p));

  std::map<std::string, std::string> kv;
  std::istringstream in(text.p);
  for (std::string line; std::getline(in, line);) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 3);
  }
  char buf[40];
  const auto set = [&](const char* key, const std::optional<double>& v) {
    if (!v) return;
    std::snprintf(buf, sizeof buf, "%.17g", *v);
    kv[key] = buf;
  };
  if (f.kind && *f.kind != kv["pressure.kind"]) {
    for (const char* k : {"pressure.a", "pressure.b", "pressure.rt",
                          "pressure.acoh", "pressure.bcov"}) {
      kv.erase(k);
    }
    kv["pressure.kind"] = *f.kind;
  }
  set("kappa", f.kappa);
  set("pressure.a", f.a);
  set("pressure.b", f.b);
  set("pressure.rt", f.rt);
  set("pressure.acoh", f.acoh);
  set("pressure.bcov", f.bcov);
  set("v_inf", f.v_inf);
  set("u_inf", f.u_inf);
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

void emit(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw OperationalError("IoError: cannot write '" + path + "'");
  out << text;
  if (!out) throw OperationalError("IoError: write to '" + path + "' failed");
}

std::vector<double> inclusive_range(double lo, double hi, double step,
                                    const char* what) {
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw OperationalError(std::string("InvalidArgument: empty ") + what +
                           " range");
  }
  const long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (n > 1000000) {
    throw OperationalError(std::string("InvalidArgument: ") + what +
                           " range has too many points");
  }
  std::vector<double> out(n);
  for (long i = 0; i < n; ++i) out[i] = lo + i * step;
  return out;
}

std::vector<double> linspace(double lo, double hi, int count, const char* what) {
  if (count < 1 || !(hi >= lo) || (count > 1 && !(hi > lo))) {
    throw OperationalError(std::string("InvalidArgument: empty ") + what +
                           " range");
  }
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    out[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solitary-wave stability for the isentropic Korteweg model"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_flag("--help", "print help");  // -h is the grid step

  ModelFlags mf;
  std::string format, out_path;
  int threads = 0;
  app.add_option("--config", mf.config, "model file (key = value lines)")
      ->check(CLI::ExistingFile);
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--threads", threads, "worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--kappa", mf.kappa, "capillarity coefficient");
  app.add_option("--pressure", mf.kind, "pressure law")
      ->check(CLI::IsMember({"quadratic", "van_der_waals"}));
  app.add_option("--a", mf.a, "quadratic: linear coefficient");
  app.add_option("--b", mf.b, "quadratic: quadratic coefficient");
  app.add_option("--rt", mf.rt, "van der Waals: RT");
  app.add_option("--acoh", mf.acoh, "van der Waals: cohesion");
  app.add_option("--bcov", mf.bcov, "van der Waals: covolume");
  app.add_option("--v-inf", mf.v_inf, "endstate specific volume");
  app.add_option("--u-inf", mf.u_inf, "endstate velocity");

  // grid and analysis options shared by several subcommands
  double s = 0.0, L = 0.0, h = 0.0, ds = 0.0, fit_radius = 0.0,
         lambda_max = 0.0;
  int fit_samples = 12;
  std::string norm_name;
  const auto add_grid = [&](CLI::App* c) {
    c->add_option("--L", L, "half-window length (default from tail tolerance)")
        ->check(CLI::PositiveNumber);
    c->add_option("--h", h, "grid step (default nu h <= 0.05)")
        ->check(CLI::PositiveNumber);
  };

  auto* profile = app.add_subcommand("profile", "solitary-wave profile table");
  profile->add_option("--s", s, "wave speed")->required();
  add_grid(profile);

  double s_min = 0.0, s_max = 0.0, s_step = 0.0;
  std::vector<double> s_list;
  auto* sweep = app.add_subcommand("moment-sweep", "Q, H, m and dQ/ds over s");
  auto* s_min_opt = sweep->add_option("--s-min", s_min, "first speed");
  sweep->add_option("--s-max", s_max, "last speed (inclusive)")
      ->needs(s_min_opt);
  sweep->add_option("--s-step", s_step, "speed increment")->needs(s_min_opt);
  sweep->add_option("--s", s_list, "explicit speeds")->excludes(s_min_opt);
  sweep->add_option("--ds", ds, "finite-difference step in s")
      ->check(CLI::PositiveNumber);
  add_grid(sweep);

  std::vector<std::string> lambdas;
  double re_min = 0.0, re_max = 0.0, im = 0.0;
  int count = 50;
  auto* scan = app.add_subcommand("evans-scan", "Evans function samples");
  scan->add_option("--s", s, "wave speed")->required();
  auto* lam_opt = scan->add_option(
      "--lambda", lambdas, "spectral values as re or re:im");
  scan->add_option("--re-min", re_min, "first real part")->excludes(lam_opt);
  scan->add_option("--re-max", re_max, "last real part")->excludes(lam_opt);
  scan->add_option("--im", im, "imaginary part for the range")
      ->excludes(lam_opt);
  scan->add_option("--count", count, "points in the range")
      ->excludes(lam_opt);
  scan->add_option("--normalization", norm_name, "unit or paper")
      ->check(CLI::IsMember({"unit", "paper"}));
  add_grid(scan);

  auto* verify = app.add_subcommand(
      "verify", "D''(0) against the moment of instability, and the verdict");
  verify->add_option("--s", s, "wave speed")->required();
  verify->add_option("--ds", ds, "finite-difference step in s")
      ->check(CLI::PositiveNumber);
  verify->add_option("--fit-radius", fit_radius, "fit disc radius")
      ->check(CLI::PositiveNumber);
  verify->add_option("--fit-samples", fit_samples, "fit samples")
      ->check(CLI::Range(6, 1000));
  verify->add_option("--lambda-max", lambda_max, "root scan upper end")
      ->check(CLI::PositiveNumber);
  verify->add_option("--normalization", norm_name, "unit or paper")
      ->check(CLI::IsMember({"unit", "paper"}));
  add_grid(verify);

  double xi_min = -5.0, xi_max = 5.0;
  int xi_count = 200;
  auto* disp = app.add_subcommand("dispersion", "essential spectrum curves");
  disp->add_option("--s", s, "wave speed")->required();
  disp->add_option("--xi-min", xi_min, "first wavenumber");
  disp->add_option("--xi-max", xi_max, "last wavenumber");
  disp->add_option("--count", xi_count, "samples")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    ModelHandle model;
    check(kw_model_parse(model_text(mf).c_str(), &model.p));

    kw_analysis_options opts;
    kw_analysis_options_default(&opts);
    opts.profile.half_length = L;
    opts.profile.step = h;
    opts.ds = ds;
    opts.fit_radius = fit_radius;
    opts.fit_samples = fit_samples;
    opts.lambda_max = lambda_max;
    opts.threads = threads;
    if (!norm_name.empty()) {
      opts.normalization = norm_name == "paper" ? KW_NORM_PAPER : KW_NORM_UNIT;
    }
    const auto fmt = [&](kw_format fallback) {
      if (format.empty()) return fallback;
      return format == "json" ? KW_FORMAT_JSON : KW_FORMAT_CSV;
    };

    CString text;
    if (app.got_subcommand(profile)) {
      ProfileHandle p;
      check(kw_profile_solve(model.p, s, &opts.profile, &p.p));
      kw_profile_info info;
      check(kw_profile_get_info(p.p, &info));
      std::fprintf(stderr,
                   "s=%.17g crest=%.17g L=%.17g h=%.17g points=%zu nu=%.17g "
                   "nodes=%d\n",
                   info.s, info.crest, info.half_length, info.step, info.size,
                   info.nu, info.node_count);
      check(kw_render_profile(p.p, fmt(KW_FORMAT_CSV), &text.p));
    } else if (app.got_subcommand(sweep)) {
      std::vector<double> speeds = s_list;
      if (speeds.empty()) {
        if (sweep->count("--s-min") == 0) {
          throw OperationalError(
              "InvalidArgument: give --s or --s-min/--s-max/--s-step");
        }
        speeds = inclusive_range(s_min, s_max, s_step, "speed");
      }
      check(kw_render_moment_sweep(model.p, speeds.data(), speeds.size(),
                                   &opts, fmt(KW_FORMAT_CSV), &text.p));
    } else if (app.got_subcommand(scan)) {
      std::vector<double> re, imag;
      if (!lambdas.empty()) {
        for (const auto& l : lambdas) {
          const auto colon = l.find(':');
          try {
            re.push_back(std::stod(l.substr(0, colon)));
            imag.push_back(colon == std::string::npos
                               ? 0.0
                               : std::stod(l.substr(colon + 1)));
          } catch (const std::exception&) {
            throw OperationalError("InvalidArgument: bad lambda '" + l + "'");
          }
        }
      } else {
        if (scan->count("--re-max") == 0) {
          throw OperationalError(
              "InvalidArgument: give --lambda or --re-min/--re-max");
        }
        re = linspace(re_min, re_max, count, "lambda");
        imag.assign(re.size(), im);
      }
      if (norm_name.empty()) opts.normalization = KW_NORM_UNIT;
      ProfileHandle p;
      check(kw_profile_solve(model.p, s, &opts.profile, &p.p));
      check(kw_render_evans_scan(p.p, re.data(), imag.data(), re.size(),
                                 opts.normalization, threads,
                                 fmt(KW_FORMAT_CSV), &text.p));
    } else if (app.got_subcommand(verify)) {
      check(kw_render_verify(model.p, s, &opts, fmt(KW_FORMAT_JSON), &text.p));
    } else if (app.got_subcommand(disp)) {
      const auto xi = linspace(xi_min, xi_max, xi_count, "xi");
      check(kw_render_dispersion(model.p, s, xi.data(), xi.size(),
                                 fmt(KW_FORMAT_CSV), &text.p));
    }
    emit(out_path, text.p);
  } catch (const OperationalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
