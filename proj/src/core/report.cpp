#include "korteweg/report.hpp"

#include <cstdio>
#include <json.hpp>

namespace korteweg {
namespace {

using nlohmann::ordered_json;

std::string csv(const std::string& header,
                const std::vector<std::vector<double>>& rows) {
  std::string out = header + "\n";
  for (const auto& row : rows) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_number(row[j]);
    }
    out += '\n';
  }
  return out;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);  // no "-0"
  return buf;
}

std::string profile_csv(const WaveProfile& p) {
  std::vector<std::vector<double>> rows;
  rows.reserve(p.size());
  for (int i = 0; i < p.size(); ++i) {
    rows.push_back(
        {p.x(i), p.vbar()[i], p.vbar_x()[i], p.vbar_xx()[i], p.ubar()[i]});
  }
  return csv("x,vbar,vbar_x,vbar_xx,ubar", rows);
}

std::string profile_json(const WaveProfile& p) {
  ordered_json j;
  j["s"] = p.speed();
  j["half_length"] = p.half_length();
  j["step"] = p.step();
  j["points"] = p.size();
  j["crest"] = p.crest();
  j["nu"] = p.nu();
  j["tail_amp_plus"] = p.tail_amp_plus();
  j["tail_amp_minus"] = p.tail_amp_minus();
  j["node_count"] = node_count(p);
  j["x"] = p.grid();
  j["vbar"] = p.vbar();
  j["vbar_x"] = p.vbar_x();
  j["vbar_xx"] = p.vbar_xx();
  j["ubar"] = p.ubar();
  return dump(j);
}

std::string moment_sweep_csv(const std::vector<MomentReport>& rows) {
  std::vector<std::vector<double>> out;
  for (const auto& r : rows) {
    out.push_back({r.s, r.Q, r.H, r.m, r.dQ_ds, r.d2m_ds2_direct, r.gamma});
  }
  return csv("s,Q,H,m,dQ_ds,d2m_direct,gamma", out);
}

std::string moment_sweep_json(const std::vector<MomentReport>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["s"] = r.s;
    j["Q"] = r.Q;
    j["H"] = r.H;
    j["m"] = r.m;
    j["dQ_ds"] = r.dQ_ds;
    j["d2m_direct"] = r.d2m_ds2_direct;
    j["dm_ds"] = r.dm_ds;
    j["gamma"] = r.gamma;
    j["gamma_alt"] = r.gamma_alt;
    j["P1_v"] = r.P1_v;
    j["P1_u"] = r.P1_u;
    j["cross_check_gap"] = r.cross_check_gap;
    j["melnikov_gap"] = r.melnikov_gap;
    j["consistent"] = r.consistent;
    arr.push_back(j);
  }
  return dump(arr);
}

std::string evans_scan_csv(const std::vector<EvansSample>& rows) {
  std::vector<std::vector<double>> out;
  for (const auto& r : rows) {
    out.push_back({r.lambda.real(), r.lambda.imag(), r.D.real(), r.D.imag(),
                   r.renorm_log});
  }
  return csv("lambda_re,lambda_im,D_re,D_im,renorm_log", out);
}

std::string evans_scan_json(const std::vector<EvansSample>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["lambda_re"] = r.lambda.real();
    j["lambda_im"] = r.lambda.imag();
    j["D_re"] = r.D.real();
    j["D_im"] = r.D.imag();
    j["renorm_log"] = r.renorm_log;
    j["plucker_drift"] = r.plucker_drift;
    arr.push_back(j);
  }
  return dump(arr);
}

std::string dispersion_csv(const std::vector<DispersionSample>& rows) {
  std::vector<std::vector<double>> out;
  for (const auto& r : rows) {
    out.push_back({r.xi, r.lambda_plus.real(), r.lambda_plus.imag(),
                   r.lambda_minus.real(), r.lambda_minus.imag()});
  }
  return csv("xi,plus_re,plus_im,minus_re,minus_im", out);
}

std::string dispersion_json(const std::vector<DispersionSample>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["xi"] = r.xi;
    j["plus_re"] = r.lambda_plus.real();
    j["plus_im"] = r.lambda_plus.imag();
    j["minus_re"] = r.lambda_minus.real();
    j["minus_im"] = r.lambda_minus.imag();
    arr.push_back(j);
  }
  return dump(arr);
}

namespace {

ordered_json verify_object(const StabilityReport& r) {
  const TheoremReport& t = r.theorem;
  const MomentReport& m = t.moment;
  const ZeroDerivatives& d = t.derivatives;
  ordered_json j;
  j["s"] = r.s;
  j["verdict"] = verdict_name(r.verdict);
  j["d2m_ds2"] = t.d2m_ds2;
  j["D2_at_0"] = t.D2_at_0;
  j["C"] = t.C;
  j["kappa"] = t.kappa;
  j["predicted_ratio"] = t.predicted_ratio;
  j["measured_ratio"] = t.measured_ratio;
  j["signs_agree"] = t.signs_agree;
  j["ratio_agrees"] = t.ratio_agrees;
  j["degenerate"] = t.degenerate;
  j["normalization"] =
      t.normalization == Normalization::kPaper ? "paper" : "unit";
  j["Gamma_index"] = r.Gamma_index;
  j["sign_D_infinity"] = r.sign_D_infinity;
  j["node_count"] = r.node_count;
  j["lambda_sign"] = r.lambda_sign;
  j["lambda_max"] = r.lambda_max;
  j["lambda_max_source"] = r.lambda_max_user ? "user" : "heuristic";
  ordered_json roots = ordered_json::array();
  for (const auto& root : r.roots) {
    roots.push_back({{"lambda", root.lambda}, {"lo", root.lo}, {"hi", root.hi}});
  }
  j["unstable_real_roots"] = roots;
  j["gamma"] = r.gamma;
  j["D0"] = r.D0;
  j["D1"] = r.D1;
  j["D2"] = r.D2;
  j["config"] = {{"pressure", r.pressure_kind},
                 {"kappa", r.kappa},
                 {"v_inf", r.v_inf},
                 {"u_inf", r.u_inf}};
  j["moment"] = {{"Q", m.Q},
                 {"H", m.H},
                 {"m", m.m},
                 {"dQ_ds", m.dQ_ds},
                 {"d2m_direct", m.d2m_ds2_direct},
                 {"dm_ds", m.dm_ds},
                 {"P1_v", m.P1_v},
                 {"P1_u", m.P1_u}};
  j["diagnostics"] = {{"sd0", d.sd0},
                      {"sd1", d.sd1},
                      {"sd2", d.sd2},
                      {"fit_radius", d.fit_radius},
                      {"fit_samples", d.samples},
                      {"fit_residual_rms", d.residual_rms},
                      {"cross_check_gap", m.cross_check_gap},
                      {"melnikov_gap", m.melnikov_gap},
                      {"gamma_alt", m.gamma_alt},
                      {"moments_consistent", m.consistent},
                      {"parity_ok", r.parity_ok},
                      {"count_cap_ok", r.count_cap_ok}};
  return j;
}

}  // namespace

std::string verify_json(const StabilityReport& report) {
  return dump(verify_object(report));
}

std::string verify_csv(const StabilityReport& report) {
  const ordered_json j = verify_object(report);
  std::string out = "key,value\n";
  const auto emit = [&](const std::string& key, const ordered_json& v) {
    out += key + ",";
    if (v.is_number_float()) {
      out += format_number(v.get<double>());
    } else if (v.is_string()) {
      out += v.get<std::string>();
    } else {
      out += v.dump();
    }
    out += "\n";
  };
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      for (const auto& [k2, v2] : value.items()) emit(key + "." + k2, v2);
    } else if (key == "unstable_real_roots") {
      for (size_t k = 0; k < value.size(); ++k) {
        emit("root_" + std::to_string(k), value[k]["lambda"]);
      }
    } else {
      emit(key, value);
    }
  }
  return out;
}

}  // namespace korteweg
