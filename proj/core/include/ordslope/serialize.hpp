#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ordslope/slopes.hpp"

namespace ordslope {

// Shortest decimal form that round-trips an IEEE double (printf %.17g).
std::string format_float17(double v);

// Certificate JSON, schema version "1".  Stable field set and order; all
// floating-point values carry 17 significant digits so parsing them back
// reproduces the exact doubles.
std::string certificate_to_json(const SurgeryCertificate& cert);
SurgeryCertificate certificate_from_json(std::string_view json);

// Sweep CSV: fixed header then one row per sample, 17 significant digits.
std::string sweep_csv_header();
std::string sweep_to_csv(const std::vector<SlopeSample>& samples);
std::string sweep_to_json(const KnotSpec& spec, Branch branch,
                          const std::vector<SlopeSample>& samples);

std::string verification_to_json(const SurgeryCertificate& cert,
                                 const VerificationReport& report);

}  // namespace ordslope
