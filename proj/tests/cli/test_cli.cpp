#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// stderr is folded into stdout so error messages can be checked
Run run(const std::string& args) {
  const std::string cmd = std::string(KW_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

Run run_quiet(const std::string& args) {
  const std::string cmd = std::string(KW_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

double crest_of(const std::string& csv) {
  double best = 0.0;
  for (const auto& r : csv_rows(csv)) best = std::max(best, r[1]);
  return best;
}

}  // namespace

TEST_CASE("profile subcommand") {
  const Run r = run_quiet("profile --s 0.6");
  REQUIRE(r.status == 0);
  CHECK(r.out.rfind("x,vbar,vbar_x,vbar_xx,ubar\n", 0) == 0);
  CHECK(crest_of(r.out) == doctest::Approx(0.96).epsilon(1e-12));

  const Run wide = run_quiet("profile --s 0.6 --L 40");
  REQUIRE(wide.status == 0);
  CHECK(crest_of(wide.out) == crest_of(r.out));
  CHECK(csv_rows(wide.out).back()[0] == doctest::Approx(40.0));

  const Run json = run_quiet("--format json profile --s 0.6");
  REQUIRE(json.status == 0);
  CHECK(nlohmann::json::parse(json.out)["node_count"] == 1);
}

TEST_CASE("saddle violation is an error") {
  const Run r = run("profile --s 1.2");
  CHECK(r.status != 0);
  CHECK(r.out.find("NotAdmissible") != std::string::npos);
  CHECK(r.out.find("saddle condition violated") != std::string::npos);
}

TEST_CASE("bad input") {
  CHECK(run("profile").status != 0);
  CHECK(run("nonsense --s 1").status != 0);
  CHECK(run("--format xml profile --s 0.6").status != 0);
  CHECK(run("--kappa -1 profile --s 0.6").status != 0);
  const Run empty = run("moment-sweep --s-min 0.6 --s-max 0.4 --s-step 0.1");
  CHECK(empty.status != 0);
  const Run neg = run("evans-scan --s 0.6 --lambda -1");
  CHECK(neg.status != 0);
  CHECK(neg.out.find("InvalidArgument") != std::string::npos);
}

TEST_CASE("moment sweep changes sign at s = 1/2") {
  const Run r = run_quiet("moment-sweep --s-min 0.45 --s-max 0.55 --s-step 0.05");
  REQUIRE(r.status == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][4] < 0.0);  // dQ_ds = d2m/ds2
  CHECK(std::abs(rows[1][4]) < 1e-6);
  CHECK(rows[2][4] > 0.0);
  CHECK(rows[0][6] < 0.0);  // gamma = d2m/ds2 / kappa
  CHECK(rows[2][6] > 0.0);
}

TEST_CASE("evans scan") {
  const Run r = run_quiet("evans-scan --s 0.6 --lambda 0 --lambda 40 --lambda 80 --lambda 1:2");
  REQUIRE(r.status == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(std::abs(rows[0][2]) < 1e-8);
  CHECK(rows[1][2] > 0.0);
  CHECK(rows[2][2] > 0.0);
  CHECK(rows[3][1] == 2.0);

  const Run range = run_quiet("evans-scan --s 0.6 --re-min 1 --re-max 2 --count 3");
  REQUIRE(range.status == 0);
  CHECK(csv_rows(range.out).size() == 3);
}

TEST_CASE("verify verdicts") {
  const Run stable = run_quiet("verify --s 0.6");
  REQUIRE(stable.status == 0);
  const auto j = nlohmann::json::parse(stable.out);
  CHECK(j["verdict"] == "stable");
  CHECK(j["signs_agree"] == true);
  CHECK(j["unstable_real_roots"].empty());
  CHECK(j["node_count"] == 1);

  const auto u = nlohmann::json::parse(run_quiet("verify --s 0.3").out);
  CHECK(u["verdict"] == "unstable");
  CHECK(u["unstable_real_roots"].size() == 1);
  CHECK(u["Gamma_index"] == -1);

  const auto d = nlohmann::json::parse(run_quiet("verify --s 0.5").out);
  CHECK(d["verdict"] == "degenerate");
  CHECK(d["degenerate"] == true);

  const Run csv = run_quiet("--format csv verify --s 0.6");
  REQUIRE(csv.status == 0);
  CHECK(csv.out.find("verdict,stable\n") != std::string::npos);
}

TEST_CASE("config file and output file") {
  {
    FILE* f = std::fopen("cli_model.cfg", "w");
    REQUIRE(f != nullptr);
    std::fputs("# wider well\nkappa = 4\n", f);
    std::fclose(f);
  }
  const Run r = run_quiet("--config cli_model.cfg --out cli_profile.csv profile --s 0.6");
  REQUIRE(r.status == 0);
  FILE* f = std::fopen("cli_profile.csv", "r");
  REQUIRE(f != nullptr);
  std::string text;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) text.append(buf.data(), n);
  std::fclose(f);
  CHECK(crest_of(text) == doctest::Approx(0.96).epsilon(1e-12));
  // kappa stretches x by 2: vbar(2) is the kappa = 1 value at x = 1
  for (const auto& row : csv_rows(text)) {
    if (row[0] == 2.0) {
      const double c = std::cosh(0.4);
      CHECK(row[1] == doctest::Approx(0.96 / (c * c)).epsilon(1e-10));
    }
  }
  std::remove("cli_model.cfg");
  std::remove("cli_profile.csv");
}

TEST_CASE("dispersion subcommand") {
  const Run r = run_quiet("dispersion --s 0.6 --count 11");
  REQUIRE(r.status == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 11);
  CHECK(rows.front()[0] == -5.0);
  CHECK(rows.back()[0] == 5.0);
  for (const auto& row : rows) {
    CHECK(row[1] == 0.0);
    CHECK(row[3] == 0.0);
  }
}
