#include "ordslope/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "ordslope/error.hpp"

namespace ordslope {

std::string format_float17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// Certificates are gated before serialization, so non-finite values only
// appear in verification reports of broken inputs; null keeps those legal.
std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_float17(v);
}

}  // namespace

std::string certificate_to_json(const SurgeryCertificate& cert) {
  std::ostringstream os;
  os << "{\n"
     << "  \"schema\": \"1\",\n"
     << "  \"spec\": {\"family\": \"" << family_name(cert.spec.family)
     << "\", \"m\": " << cert.spec.m << ", \"n\": " << cert.spec.n << "},\n"
     << "  \"r\": {\"p\": " << cert.r.p << ", \"q\": " << cert.r.q << "},\n"
     << "  \"branch\": \"" << branch_name(cert.branch) << "\",\n"
     << "  \"theta\": " << json_number(cert.theta) << ",\n"
     << "  \"y\": " << json_number(cert.y) << ",\n"
     << "  \"L\": {\"re\": " << json_number(cert.L.real())
     << ", \"im\": " << json_number(cert.L.imag()) << "},\n"
     << "  \"phi\": " << json_number(cert.phi) << ",\n"
     << "  \"residuals\": {\"slope\": " << json_number(cert.residuals.slope)
     << ", \"relation\": " << json_number(cert.residuals.relation)
     << ", \"longitude_match\": " << json_number(cert.residuals.longitude_match)
     << ", \"peripheral_kill\": " << json_number(cert.residuals.peripheral_kill) << "},\n"
     << "  \"elliptic\": " << (cert.elliptic ? "true" : "false") << ",\n"
     << "  \"reality\": " << (cert.reality ? "true" : "false") << "\n"
     << "}\n";
  return os.str();
}

SurgeryCertificate certificate_from_json(std::string_view text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("schema").get<std::string>() != "1")
      throw Error(errc::invalid_input, "unsupported certificate schema version");
    SurgeryCertificate cert;
    const auto& spec = j.at("spec");
    cert.spec = make_knot_spec(parse_family(spec.at("family").get<std::string>()),
                               spec.at("m").get<int>(), spec.at("n").get<int>());
    const auto& r = j.at("r");
    cert.r = Rational{r.at("p").get<long long>(), r.at("q").get<long long>()};
    cert.branch = parse_branch(j.at("branch").get<std::string>());
    cert.theta = j.at("theta").get<double>();
    cert.y = j.at("y").get<double>();
    const auto& L = j.at("L");
    cert.L = Complex(L.at("re").get<double>(), L.at("im").get<double>());
    cert.phi = j.at("phi").get<double>();
    const auto& res = j.at("residuals");
    cert.residuals.slope = res.at("slope").get<double>();
    cert.residuals.relation = res.at("relation").get<double>();
    cert.residuals.longitude_match = res.at("longitude_match").get<double>();
    cert.residuals.peripheral_kill = res.at("peripheral_kill").get<double>();
    cert.elliptic = j.at("elliptic").get<bool>();
    cert.reality = j.at("reality").get<bool>();
    return cert;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(errc::invalid_input, std::string("cannot parse certificate JSON: ") + e.what());
  }
}

std::string sweep_csv_header() { return "param,theta,y,x,phi,slope,riley_residual"; }

std::string sweep_to_csv(const std::vector<SlopeSample>& samples) {
  std::ostringstream os;
  os << sweep_csv_header() << "\n";
  for (const SlopeSample& s : samples) {
    os << format_float17(s.param) << "," << format_float17(s.theta) << ","
       << format_float17(s.y) << "," << format_float17(s.x) << "," << format_float17(s.phi)
       << "," << format_float17(s.slope) << "," << format_float17(s.riley_residual) << "\n";
  }
  return os.str();
}

std::string sweep_to_json(const KnotSpec& spec, Branch branch,
                          const std::vector<SlopeSample>& samples) {
  std::ostringstream os;
  os << "{\n"
     << "  \"schema\": \"1\",\n"
     << "  \"spec\": {\"family\": \"" << family_name(spec.family) << "\", \"m\": " << spec.m
     << ", \"n\": " << spec.n << "},\n"
     << "  \"branch\": \"" << branch_name(branch) << "\",\n"
     << "  \"columns\": [\"param\", \"theta\", \"y\", \"x\", \"phi\", \"slope\", "
        "\"riley_residual\"],\n"
     << "  \"samples\": [";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const SlopeSample& s = samples[i];
    os << (i == 0 ? "\n" : ",\n") << "    [" << json_number(s.param) << ", "
       << json_number(s.theta) << ", " << json_number(s.y) << ", " << json_number(s.x) << ", "
       << json_number(s.phi) << ", " << json_number(s.slope) << ", "
       << json_number(s.riley_residual) << "]";
  }
  os << "\n  ]\n}\n";
  return os.str();
}

std::string verification_to_json(const SurgeryCertificate& cert,
                                 const VerificationReport& report) {
  std::ostringstream os;
  os << "{\n"
     << "  \"schema\": \"1\",\n"
     << "  \"knot\": \"" << cert.spec.conway() << "\",\n"
     << "  \"r\": {\"p\": " << cert.r.p << ", \"q\": " << cert.r.q << "},\n"
     << "  \"ok\": " << (report.ok ? "true" : "false") << ",\n"
     << "  \"checks\": [";
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const CheckResult& cr = report.checks[i];
    os << (i == 0 ? "\n" : ",\n") << "    {\"name\": \"" << cr.name
       << "\", \"value\": " << json_number(cr.value)
       << ", \"tolerance\": " << json_number(cr.tolerance)
       << ", \"pass\": " << (cr.pass ? "true" : "false") << "}";
  }
  os << "\n  ]\n}\n";
  return os.str();
}

}  // namespace ordslope
