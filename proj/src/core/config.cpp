#include "korteweg/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "korteweg/error.hpp"

namespace korteweg {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(ErrorCode::kConfig,
              "config line " + std::to_string(line) + ": " + what);
}

double to_number(const std::string& text, int line, const std::string& key) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    fail(line, "value of '" + key + "' is not a finite number: '" + text + "'");
  }
  return value;
}

const std::set<std::string> kQuadraticKeys{"pressure.a", "pressure.b"};
const std::set<std::string> kVdwKeys{"pressure.rt", "pressure.acoh",
                                     "pressure.bcov"};
const std::set<std::string> kScalarKeys{"kappa", "v_inf", "u_inf"};

}  // namespace

ModelParams parse_model_config(const std::string& text) {
  std::map<std::string, std::pair<std::string, int>> entries;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) fail(line, "expected key = value");
    if (key != "pressure.kind" && !kScalarKeys.count(key) &&
        !kQuadraticKeys.count(key) && !kVdwKeys.count(key)) {
      fail(line, "unknown key '" + key + "'");
    }
    if (!entries.emplace(key, std::make_pair(value, line)).second) {
      fail(line, "duplicate key '" + key + "'");
    }
  }

  const ModelParams defaults = ModelParams::default_config();
  const auto number = [&](const std::string& key, double fallback) {
    const auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    return to_number(it->second.first, it->second.second, key);
  };

  std::string kind = "quadratic";
  if (const auto it = entries.find("pressure.kind"); it != entries.end()) {
    kind = it->second.first;
    if (kind != "quadratic" && kind != "van_der_waals") {
      fail(it->second.second, "pressure.kind must be quadratic or van_der_waals");
    }
  }
  const auto& foreign = kind == "quadratic" ? kVdwKeys : kQuadraticKeys;
  for (const auto& key : foreign) {
    if (const auto it = entries.find(key); it != entries.end()) {
      fail(it->second.second, "'" + key + "' does not apply to " + kind);
    }
  }

  const double kappa = number("kappa", defaults.kappa());
  const double v_inf = number("v_inf", defaults.v_inf());
  const double u_inf = number("u_inf", defaults.u_inf());
  if (kind == "quadratic") {
    QuadraticPressure q;
    q.a = number("pressure.a", q.a);
    q.b = number("pressure.b", q.b);
    return ModelParams(kappa, q, v_inf, u_inf);
  }
  for (const auto& key : kVdwKeys) {
    if (!entries.count(key)) {
      throw Error(ErrorCode::kConfig,
                  "van_der_waals pressure requires '" + key + "'");
    }
  }
  VanDerWaalsPressure w;
  w.rt = number("pressure.rt", 0.0);
  w.acoh = number("pressure.acoh", 0.0);
  w.bcov = number("pressure.bcov", 0.0);
  if (!entries.count("v_inf")) {
    throw Error(ErrorCode::kConfig, "van_der_waals pressure requires 'v_inf'");
  }
  return ModelParams(kappa, w, v_inf, u_inf);
}

ModelParams load_model_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model_config(buf.str());
}

std::string format_model_config(const ModelParams& params) {
  char buf[64];
  const auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  std::string out = "kappa = " + num(params.kappa()) + "\n";
  const auto& law = params.pressure().law();
  if (const auto* q = std::get_if<QuadraticPressure>(&law)) {
    out += "pressure.kind = quadratic\n";
    out += "pressure.a = " + num(q->a) + "\n";
    out += "pressure.b = " + num(q->b) + "\n";
  } else {
    const auto& w = std::get<VanDerWaalsPressure>(law);
    out += "pressure.kind = van_der_waals\n";
    out += "pressure.rt = " + num(w.rt) + "\n";
    out += "pressure.acoh = " + num(w.acoh) + "\n";
    out += "pressure.bcov = " + num(w.bcov) + "\n";
  }
  out += "v_inf = " + num(params.v_inf()) + "\n";
  out += "u_inf = " + num(params.u_inf()) + "\n";
  return out;
}

}  // namespace korteweg
