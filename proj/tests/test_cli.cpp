#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "test_util.hpp"

using testutil::kPi;
using testutil::run_cli;

namespace {

// Returns the value following `name ` on the first matching output line.
double value_on_line(const std::string& output, const std::string& name) {
  std::istringstream is(output);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind(name + " ", 0) == 0) {
      return std::stod(line.substr(name.size() + 1));
    }
  }
  FAIL("no line starting with '", name, " ' in:\n", output);
  return 0.0;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream is(s);
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("omega and volume print one bare value") {
  const auto res = run_cli("omega --d -1");
  CHECK(res.exit_code == 0);
  CHECK(std::fabs(std::stod(res.output) + 1.0 / kPi) <= 1e-15);
  CHECK(split_lines(res.output).size() == 1);

  const auto vol = run_cli("volume --d 3");
  CHECK(vol.exit_code == 0);
  CHECK(std::stod(vol.output) ==
        doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
}

TEST_CASE("identical invocations produce byte-identical output") {
  const auto a = run_cli("sweep --from -2.5 --to 2.5 --step 0.125 --format csv");
  const auto b = run_cli("sweep --from -2.5 --to 2.5 --step 0.125 --format csv");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  const auto c = run_cli("omega --d 2.7182");
  const auto d = run_cli("omega --d 2.7182");
  CHECK(c.output == d.output);
}

TEST_CASE("sweep CSV schema, pole rows and line endings") {
  const auto res = run_cli("sweep --from -3 --to 1 --step 0.5 --format csv");
  REQUIRE(res.exit_code == 0);
  CHECK(res.output.find('\r') == std::string::npos);
  const auto lines = split_lines(res.output);
  REQUIRE(lines.size() == 10);  // header + 9 rows
  CHECK(lines[0] == "d,omega,volume");
  // Row at d = -2: both measures are exact zeros.
  CHECK(lines[3] == "-2,0,0");
  // Row at d = 0: omega 0, volume is a pole.
  CHECK(lines[7] == "0,0,pole");
  // A regular row: d prints as a bare integer, measures parse back.
  const auto& last = lines[9];
  CHECK(last.rfind("1,", 0) == 0);
  const auto c1 = last.find(',');
  const auto c2 = last.find(',', c1 + 1);
  CHECK(std::stod(last.substr(c1 + 1, c2 - c1 - 1)) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::stod(last.substr(c2 + 1)) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("sweep JSON mirrors the rows") {
  const auto res = run_cli("sweep --from -1 --to 1 --step 1 --format json");
  REQUIRE(res.exit_code == 0);
  const auto rows = nlohmann::json::parse(res.output);
  REQUIRE(rows.is_array());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["d"].get<double>() == doctest::Approx(-1.0));
  CHECK(rows[0]["omega"].get<double>() ==
        doctest::Approx(-1.0 / kPi).epsilon(1e-14));
  CHECK(rows[1]["omega"].get<double>() == 0.0);
  CHECK(rows[1]["volume"].is_string());
  CHECK(rows[1]["volume"].get<std::string>() == "pole");
  CHECK(rows[2]["volume"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("sweep writes files and optionally a plot script") {
  const std::string path = "/tmp/dimkit_test_sweep.csv";
  const auto res = run_cli("sweep --from 1 --to 2 --step 0.5 --format csv "
                           "--out " + path + " --emit-plot-script");
  REQUIRE(res.exit_code == 0);
  std::ifstream csv(path);
  REQUIRE(csv.good());
  std::string header;
  std::getline(csv, header);
  CHECK(header == "d,omega,volume");
  std::ifstream script(path + ".plot.py");
  REQUIRE(script.good());
  std::stringstream buf;
  buf << script.rdbuf();
  CHECK(buf.str().find("matplotlib") != std::string::npos);
  std::remove(path.c_str());
  std::remove((path + ".plot.py").c_str());
}

TEST_CASE("sweep usage violations exit 2") {
  CHECK(run_cli("sweep --from 2 --to 1 --step 0.5 --format csv 2>/dev/null")
            .exit_code == 2);
  CHECK(run_cli("sweep --from 0 --to 1 --step 0 --format csv 2>/dev/null")
            .exit_code == 2);
  CHECK(run_cli("sweep --from 0 --to 1 --step 0.5 --format xml 2>/dev/null")
            .exit_code == 2);
  CHECK(run_cli("sweep --from 0 --to 1 --step 0.5 --format csv "
                "--emit-plot-script 2>/dev/null")
            .exit_code == 2);
}

TEST_CASE("domain errors exit 1, usage errors exit 2") {
  CHECK(run_cli("volume --d 0 2>/dev/null").exit_code == 1);
  CHECK(run_cli("bubble --d 2 --m 1 2>/dev/null").exit_code == 1);
  CHECK(run_cli("dotprod --d 0.5 --q 1 2>/dev/null").exit_code == 1);
  CHECK(run_cli("extmom --d -3 --k 1 --m 1 2>/dev/null").exit_code == 1);
  CHECK(run_cli("omega 2>/dev/null").exit_code == 2);
  CHECK(run_cli("nonsense --d 1 2>/dev/null").exit_code == 2);
  CHECK(run_cli("2>/dev/null").exit_code == 2);
  CHECK(run_cli("angles --d 2.5 --n 7 2>/dev/null").exit_code == 2);
  CHECK(run_cli("radial --kind bogus --d 1 2>/dev/null").exit_code == 2);
}

TEST_CASE("domain diagnostics name the violated rule on stderr") {
  const auto res = run_cli("volume --d 0 2>&1");
  CHECK(res.exit_code == 1);
  CHECK(res.output.rfind("error: ", 0) == 0);
  CHECK(res.output.find("d = 0") != std::string::npos);
}

TEST_CASE("coeff reports the regime and the transcription discrepancy") {
  const auto res = run_cli("coeff --d 0.5 --compare-printed");
  REQUIRE(res.exit_code == 0);
  CHECK(res.output.find("regime critical strip") != std::string::npos);
  CHECK(value_on_line(res.output, "coefficient") ==
        doctest::Approx(0.306477601845110735498).epsilon(1e-13));
  CHECK(value_on_line(res.output, "sine_exponent") == doctest::Approx(0.5));
  CHECK(value_on_line(res.output, "printed_over_consistent") ==
        doctest::Approx(1.7724538509055160273).epsilon(1e-12));
}

TEST_CASE("angles lists the decomposition") {
  const auto res = run_cli("angles --d 2.5 --n 2");
  REQUIRE(res.exit_code == 0);
  CHECK(value_on_line(res.output, "prefactor") ==
        doctest::Approx(0.734406291631804688114).epsilon(1e-13));
  CHECK(value_on_line(res.output, "residual_dimension") ==
        doctest::Approx(0.5));
  CHECK(res.output.find("angle 1 exponent 0.5") != std::string::npos);
  CHECK(res.output.find("angle 2 exponent -0.5") != std::string::npos);
  // Default angle count is the regime maximum.
  const auto full = run_cli("angles --d -2.5");
  REQUIRE(full.exit_code == 0);
  CHECK(value_on_line(full.output, "n_angles") == doctest::Approx(3.0));
}

TEST_CASE("bubble prints components that multiply to the closed form") {
  const auto res = run_cli("bubble --d 1 --m 1");
  REQUIRE(res.exit_code == 0);
  const double closed = value_on_line(res.output, "closed_form");
  CHECK(std::fabs(closed - 0.5) <= 1e-12);
  const double prod = value_on_line(res.output, "surface_measure") *
                      value_on_line(res.output, "radial_finite_part") *
                      value_on_line(res.output, "scale_power") *
                      value_on_line(res.output, "normalization");
  CHECK(prod == doctest::Approx(closed).epsilon(1e-13));
}

TEST_CASE("bubble oracle flag appends the comparison") {
  const auto res = run_cli("bubble --d 0.7 --m 1.2 --oracle");
  REQUIRE(res.exit_code == 0);
  const double closed = value_on_line(res.output, "closed_form");
  const double oracle = value_on_line(res.output, "oracle");
  CHECK(std::fabs(closed - oracle) <= 1e-8 * std::fabs(closed));
  CHECK(value_on_line(res.output, "abs_diff") >= 0.0);
}

TEST_CASE("dotprod shows the vanishing total and its finite halves") {
  const auto res = run_cli("dotprod --d -1 --q 1");
  REQUIRE(res.exit_code == 0);
  CHECK(value_on_line(res.output, "angular_term1") ==
        doctest::Approx(-kPi).epsilon(1e-12));
  CHECK(value_on_line(res.output, "angular_term2") ==
        doctest::Approx(kPi).epsilon(1e-12));
  CHECK(std::fabs(value_on_line(res.output, "total")) <= 1e-12 * kPi);
}

TEST_CASE("extmom compare-printed exposes the mass-power discrepancy") {
  const auto res = run_cli("extmom --d -2.5 --k 1 --m 1 --compare-printed");
  REQUIRE(res.exit_code == 0);
  CHECK(value_on_line(res.output, "closed_form") ==
        doctest::Approx(80.4201134568566343345).epsilon(1e-12));
  // -(d+1) m^2 / 2 = 0.75 at d = -2.5, m = 1.
  CHECK(value_on_line(res.output, "printed_over_assembled") ==
        doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("loop commands emit machine-readable JSON on request") {
  const auto res = run_cli("bubble --d 1 --m 1 --format json");
  REQUIRE(res.exit_code == 0);
  const auto obj = nlohmann::json::parse(res.output);
  CHECK(std::fabs(obj["closed_form"].get<double>() - 0.5) <= 1e-12);
  REQUIRE(obj["components"].is_array());
  CHECK(obj["components"][0]["name"] == "surface_measure");
}

TEST_CASE("radial extracts and cross-reports the finite part") {
  const auto res = run_cli("radial --kind power_over_one_plus --d 1");
  REQUIRE(res.exit_code == 0);
  const double fp = value_on_line(res.output, "finite_part");
  const double ref = value_on_line(res.output, "reference");
  const double closed = value_on_line(res.output, "closed_form");
  CHECK(closed == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(std::fabs(ref - closed) <= 1e-10);
  CHECK(std::fabs(fp - closed) <=
        std::max(1e-4, value_on_line(res.output, "error_estimate")));
  CHECK(res.output.find("stripped_term lower") != std::string::npos);
  CHECK(res.output.find("stripped_term upper") != std::string::npos);

  const auto custom = run_cli(
      "radial --kind power_over_one_plus --d 1 "
      "--grids 0.001,0.002,0.004,0.008,0.016:1e3,2e3,4e3,8e3,16e3");
  REQUIRE(custom.exit_code == 0);
  CHECK(std::fabs(value_on_line(custom.output, "finite_part") - kPi) <=
        std::max(1e-4, value_on_line(custom.output, "error_estimate")));

  CHECK(run_cli("radial --kind power_over_one_plus --d 1 "
                "--grids 0.001,0.5:1e3,2e3 2>/dev/null")
            .exit_code == 2);
  // Logarithmic collision is a domain error, not a usage error.
  CHECK(run_cli("radial --kind power_over_one_plus --d 0 2>/dev/null")
            .exit_code == 1);
}

TEST_CASE("verify subcommand filters and reports") {
  const auto res = run_cli("verify --filter rgamma_exact_zeros");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("PASS rgamma_exact_zeros") != std::string::npos);
  CHECK(res.output.find("1/1 checks passed") != std::string::npos);
  const auto none = run_cli("verify --filter no_such_check 2>/dev/null");
  CHECK(none.exit_code == 1);
}

TEST_CASE("DIMKIT_TOL must parse when set") {
  CHECK(run_cli("bubble --d 1 --m 1 --oracle 2>/dev/null", "DIMKIT_TOL=abc")
            .exit_code == 2);
  CHECK(run_cli("bubble --d 1 --m 1 --oracle", "DIMKIT_TOL=1e-7").exit_code ==
        0);
}
