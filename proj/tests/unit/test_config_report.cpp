#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "korteweg/config.hpp"
#include "korteweg/error.hpp"
#include "korteweg/report.hpp"

using namespace korteweg;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_model_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST_CASE("config parsing") {
  const ModelParams d = parse_model_config("");
  CHECK(d.kappa() == 1.0);
  CHECK(d.alpha_inf() == -1.0);

  const ModelParams q = parse_model_config(
      "# capillarity\n"
      "kappa = 2.5   # trailing comment\n"
      "pressure.kind = quadratic\n"
      "  pressure.a=-3\n"
      "pressure.b = 0.5\n"
      "\n"
      "u_inf = 0.25\n");
  CHECK(q.kappa() == 2.5);
  CHECK(q.alpha_inf() == -3.0);
  CHECK(q.u_inf() == 0.25);

  const ModelParams w = parse_model_config(
      "pressure.kind = van_der_waals\npressure.rt = 1\npressure.acoh = 0.5\n"
      "pressure.bcov = 0.1\nv_inf = 1\n");
  CHECK(w.pressure().kind() == "van_der_waals");
}

TEST_CASE("config errors") {
  CHECK(code_of("kapa = 1\n") == ErrorCode::kConfig);
  CHECK(code_of("kappa = 1\nkappa = 2\n") == ErrorCode::kConfig);
  CHECK(code_of("kappa = one\n") == ErrorCode::kConfig);
  CHECK(code_of("kappa = 1.0x\n") == ErrorCode::kConfig);
  CHECK(code_of("kappa = nan\n") == ErrorCode::kConfig);
  CHECK(code_of("kappa\n") == ErrorCode::kConfig);
  CHECK(code_of("kappa =\n") == ErrorCode::kConfig);
  CHECK(code_of("pressure.kind = ideal\n") == ErrorCode::kConfig);
  CHECK(code_of("pressure.rt = 1\n") == ErrorCode::kConfig);
  CHECK(code_of("pressure.kind = van_der_waals\npressure.rt = 1\nv_inf = 1\n") ==
        ErrorCode::kConfig);
  // parses, then fails model validation
  CHECK(code_of("kappa = -1\n") == ErrorCode::kInvalidArgument);
  try {
    parse_model_config("kappa = 1\nbogus = 2\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  try {
    load_model_config("/nonexistent/korteweg.cfg");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}

TEST_CASE("config round trip through a file") {
  const ModelParams w(1.5, VanDerWaalsPressure{1.0, 0.5, 0.1}, 1.0 / 3.0, -0.1);
  const std::string text = format_model_config(w);
  const std::string path = "korteweg_roundtrip_test.cfg";
  {
    std::ofstream out(path);
    out << text;
  }
  const ModelParams back = load_model_config(path);
  std::remove(path.c_str());
  CHECK(format_model_config(back) == text);
  CHECK(back.v_inf() == w.v_inf());
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
  CHECK(format_number(1e-300) == "1e-300");
}

TEST_CASE("profile CSV and JSON") {
  const WaveProfile p = solve_profile(ModelParams::default_config(), 0.6);
  const std::string csv = profile_csv(p);
  CHECK(csv.rfind("x,vbar,vbar_x,vbar_xx,ubar\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == p.size() + 1);
  CHECK(csv.find("\n0,0.96000000000000008,0,") != std::string::npos);
  CHECK(csv == profile_csv(solve_profile(ModelParams::default_config(), 0.6)));

  const auto j = nlohmann::json::parse(profile_json(p));
  CHECK(j["crest"].get<double>() == p.crest());
  CHECK(j["vbar"].size() == static_cast<size_t>(p.size()));
  CHECK(j["node_count"] == 1);
}

TEST_CASE("table renderings") {
  const ModelParams params = ModelParams::default_config();
  const MomentReport m = moment_report(params, 0.6, 1e-3);
  const std::string sweep = moment_sweep_csv({m});
  CHECK(sweep.rfind("s,Q,H,m,dQ_ds,d2m_direct,gamma\n0.59999999999999998,", 0) == 0);
  CHECK(nlohmann::json::parse(moment_sweep_json({m}))[0]["consistent"] == true);

  const WaveProfile p = solve_profile(params, 0.6);
  const std::string scan = evans_scan_csv({evans_at(p, cplx(1.0, 0.5))});
  CHECK(scan.rfind("lambda_re,lambda_im,D_re,D_im,renorm_log\n1,0.5,", 0) == 0);
  CHECK(nlohmann::json::parse(evans_scan_json({evans_at(p, cplx(2.0))}))[0]["lambda_re"] == 2.0);

  const auto disp = dispersion_curve(params, 0.6, {0.0});
  CHECK(dispersion_csv(disp) == "xi,plus_re,plus_im,minus_re,minus_im\n0,0,1,0,-1\n");
  CHECK(nlohmann::json::parse(dispersion_json(disp))[0]["minus_im"] == -1.0);
}

TEST_CASE("verify report fields") {
  const StabilityReport r = verdict(ModelParams::default_config(), 0.3);
  const auto j = nlohmann::json::parse(verify_json(r));
  for (const char* key : {"d2m_ds2", "D2_at_0", "C", "kappa", "predicted_ratio",
                          "measured_ratio", "signs_agree", "verdict", "Gamma_index",
                          "sign_D_infinity", "node_count", "unstable_real_roots",
                          "lambda_max", "D0", "D1", "D2", "gamma", "diagnostics"}) {
    CAPTURE(key);
    CHECK(j.contains(key));
  }
  CHECK(j["verdict"] == "unstable");
  CHECK(j["unstable_real_roots"].size() == 1);
  CHECK(j["signs_agree"] == true);
  const std::string csv = verify_csv(r);
  CHECK(csv.rfind("key,value\n", 0) == 0);
  CHECK(csv.find("verdict,unstable\n") != std::string::npos);
  CHECK(csv.find("root_0,") != std::string::npos);
  CHECK(csv.find("diagnostics.parity_ok,true\n") != std::string::npos);
}
