#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "ordslope/error.hpp"
#include "ordslope/riley.hpp"

namespace ordslope::detail {

// Function value plus the magnitude sum of its constituent terms; residual
// acceptance is relative, |value| <= tol * max(1, scale), since raw
// polynomial values grow with m, n and double precision cannot do better
// than scale * ulp near a root.
struct FEval {
  double value;
  double scale;
};

inline double normalized(const FEval& e) {
  return std::abs(e.value) / std::max(1.0, e.scale);
}

// Bisection with a two-part acceptance: bracket width <= cfg.tol_param and
// normalized residual <= cfg.tol_residual.  Keeps halving past the width
// target until the residual target is met; exhausting double precision
// (degenerate midpoint) without meeting it raises search_failure.
template <class F>
double bisect_root(F&& f, double lo, double hi, FEval flo, FEval fhi, const SolverConfig& cfg,
                   const char* what) {
  if (!(lo <= hi)) {
    std::swap(lo, hi);
    std::swap(flo, fhi);
  }
  if (flo.value == 0.0) return lo;
  if (fhi.value == 0.0) return hi;
  if ((flo.value > 0.0) == (fhi.value > 0.0))
    throw Error(errc::internal_consistency,
                std::string(what) + ": bracket endpoints do not straddle a root");
  double best = normalized(flo) <= normalized(fhi) ? lo : hi;
  double best_norm = std::min(normalized(flo), normalized(fhi));
  for (int it = 0; it < 300; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    FEval fm = f(mid);
    double nm = normalized(fm);
    if (nm < best_norm) {
      best = mid;
      best_norm = nm;
    }
    if (fm.value == 0.0) return mid;
    if ((fm.value > 0.0) == (fhi.value > 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
    if (hi - lo <= cfg.tol_param && best_norm <= cfg.tol_residual) return best;
  }
  std::ostringstream os;
  os << what << ": ";
  if (hi - lo > cfg.tol_param)
    os << "bracket width " << (hi - lo) << " stuck above tolerance " << cfg.tol_param;
  else
    os << "residual floor " << best_norm << " exceeds tolerance " << cfg.tol_residual
       << " (double precision exhausted)";
  throw Error(errc::search_failure, os.str());
}

}  // namespace ordslope::detail
