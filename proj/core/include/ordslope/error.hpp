#pragma once

#include <stdexcept>
#include <string>

namespace ordslope {

// Failure categories. The CLI maps these onto process exit codes:
// parse/validation problems -> 1, slope outside the supported window -> 2,
// numerical failures -> 3.
enum class errc {
  invalid_input,          // malformed or out-of-range arguments
  unsupported_family,     // knot exists but is outside the supported families
  unsupported_slope,      // slope is documented out of scope (e.g. 0-surgery)
  slope_not_covered,      // slope falls outside the family's covered window
  domain,                 // argument outside a function's admissible interval
  not_found,              // a bounded scan exhausted its cap without a root
  search_failure,         // bracketing search could not reach the target
  singularity,            // denominator of a closed form vanished
  internal_consistency,   // a quantity violated an invariant it must satisfy
  io,                     // file read/write failure
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

}  // namespace ordslope
