#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "ordslope/serialize.hpp"

using namespace ordslope;

namespace {

SurgeryCertificate demo_certificate() {
  return solve_slope(make_knot_spec(Family::even_minus, 1, 1), make_rational(-1, 2));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, sep)) parts.push_back(item);
  return parts;
}

}  // namespace

TEST_CASE("17 significant digits round-trip exactly") {
  const std::vector<double> values = {0.0,
                                      1.0 / 3.0,
                                      std::numbers::pi,
                                      -2.5782810187927874,
                                      1e-300,
                                      -6.125e17,
                                      0.1,
                                      4.9406564584124654e-324};
  for (double v : values) {
    const std::string s = format_float17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("certificate JSON carries the full field set") {
  const SurgeryCertificate cert = demo_certificate();
  const std::string text = certificate_to_json(cert);
  const nlohmann::json j = nlohmann::json::parse(text);

  CHECK(j.at("schema").get<std::string>() == "1");
  CHECK(j.at("spec").at("family").get<std::string>() == "even_minus");
  CHECK(j.at("spec").at("m").get<int>() == 1);
  CHECK(j.at("spec").at("n").get<int>() == 1);
  CHECK(j.at("r").at("p").get<long long>() == -1);
  CHECK(j.at("r").at("q").get<long long>() == 2);
  CHECK(j.at("branch").get<std::string>() == "even_low");
  CHECK(j.at("theta").get<double>() == cert.theta);
  CHECK(j.at("y").get<double>() == cert.y);
  CHECK(j.at("L").at("re").get<double>() == cert.L.real());
  CHECK(j.at("L").at("im").get<double>() == cert.L.imag());
  CHECK(j.at("phi").get<double>() == cert.phi);
  CHECK(j.at("residuals").at("slope").get<double>() == cert.residuals.slope);
  CHECK(j.at("residuals").at("relation").get<double>() == cert.residuals.relation);
  CHECK(j.at("residuals").at("longitude_match").get<double>() ==
        cert.residuals.longitude_match);
  CHECK(j.at("residuals").at("peripheral_kill").get<double>() ==
        cert.residuals.peripheral_kill);
  CHECK(j.at("elliptic").get<bool>() == cert.elliptic);
  CHECK(j.at("reality").get<bool>() == cert.reality);
}

TEST_CASE("certificate JSON round-trips losslessly") {
  const SurgeryCertificate cert = demo_certificate();
  const std::string text = certificate_to_json(cert);
  const SurgeryCertificate back = certificate_from_json(text);

  CHECK(back.spec.family == cert.spec.family);
  CHECK(back.spec.m == cert.spec.m);
  CHECK(back.spec.n == cert.spec.n);
  CHECK(back.r.p == cert.r.p);
  CHECK(back.r.q == cert.r.q);
  CHECK(back.branch == cert.branch);
  CHECK(back.theta == cert.theta);
  CHECK(back.y == cert.y);
  CHECK(back.L == cert.L);
  CHECK(back.phi == cert.phi);
  CHECK(back.residuals.slope == cert.residuals.slope);
  CHECK(back.residuals.peripheral_kill == cert.residuals.peripheral_kill);
  CHECK(back.elliptic == cert.elliptic);
  CHECK(back.reality == cert.reality);

  CHECK(certificate_to_json(back) == text);
  // A parsed-back certificate still verifies.
  CHECK(verify_certificate(back));
}

TEST_CASE("certificate JSON rejects bad input") {
  CHECK_THROWS_AS(certificate_from_json("not json"), Error);
  CHECK_THROWS_AS(certificate_from_json("{}"), Error);
  const std::string good = certificate_to_json(demo_certificate());
  std::string wrong_schema = good;
  const auto pos = wrong_schema.find("\"1\"");
  wrong_schema.replace(pos, 3, "\"2\"");
  CHECK_THROWS_AS(certificate_from_json(wrong_schema), Error);
}

TEST_CASE("sweep CSV header and lossless rows") {
  CHECK(sweep_csv_header() == "param,theta,y,x,phi,slope,riley_residual");

  SweepOptions opts;
  opts.grid_size = 20;
  const KnotSpec spec = make_knot_spec(Family::odd_plus, 1, 2);
  const std::vector<SlopeSample> rows = sweep_branch(spec, Branch::odd_primary, opts);
  const std::string csv = sweep_to_csv(rows);

  const std::vector<std::string> lines = split(csv, '\n');
  REQUIRE(lines.size() == rows.size() + 1);
  CHECK(lines[0] == sweep_csv_header());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::vector<std::string> cells = split(lines[i + 1], ',');
    REQUIRE(cells.size() == 7);
    CHECK(std::strtod(cells[0].c_str(), nullptr) == rows[i].param);
    CHECK(std::strtod(cells[1].c_str(), nullptr) == rows[i].theta);
    CHECK(std::strtod(cells[2].c_str(), nullptr) == rows[i].y);
    CHECK(std::strtod(cells[3].c_str(), nullptr) == rows[i].x);
    CHECK(std::strtod(cells[4].c_str(), nullptr) == rows[i].phi);
    CHECK(std::strtod(cells[5].c_str(), nullptr) == rows[i].slope);
    CHECK(std::strtod(cells[6].c_str(), nullptr) == rows[i].riley_residual);
  }
}

TEST_CASE("sweep JSON mirrors the CSV columns") {
  SweepOptions opts;
  opts.grid_size = 16;
  const KnotSpec spec = make_knot_spec(Family::even_minus, 1, 1);
  const std::vector<SlopeSample> rows = sweep_branch(spec, Branch::even_high, opts);
  const nlohmann::json j = nlohmann::json::parse(sweep_to_json(spec, Branch::even_high, rows));

  CHECK(j.at("schema").get<std::string>() == "1");
  CHECK(j.at("branch").get<std::string>() == "even_high");
  const auto columns = j.at("columns").get<std::vector<std::string>>();
  REQUIRE(columns.size() == 7);
  CHECK(columns[0] == "param");
  CHECK(columns[6] == "riley_residual");
  REQUIRE(j.at("samples").size() == rows.size());
  CHECK(j.at("samples").at(0).at(0).get<double>() == rows[0].param);
  CHECK(j.at("samples").at(3).at(5).get<double>() == rows[3].slope);
}

TEST_CASE("verification JSON lists each check") {
  const SurgeryCertificate cert = demo_certificate();
  const VerificationReport report = verify_certificate_report(cert);
  const nlohmann::json j = nlohmann::json::parse(verification_to_json(cert, report));

  CHECK(j.at("ok").get<bool>());
  CHECK(j.at("knot").get<std::string>() == "C(2,-2)");
  REQUIRE(j.at("checks").size() == report.checks.size());
  CHECK(j.at("checks").at(0).at("name").get<std::string>() == report.checks[0].name);
  CHECK(j.at("checks").at(0).at("pass").get<bool>());
}

TEST_CASE("non-finite values serialize as null") {
  SurgeryCertificate cert = demo_certificate();
  cert.phi = std::numeric_limits<double>::quiet_NaN();
  const nlohmann::json j = nlohmann::json::parse(certificate_to_json(cert));
  CHECK(j.at("phi").is_null());
}
