#pragma once

#include "orthohaar/sampler.hpp"
#include "orthohaar/stats.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace orthohaar {

struct BatteryOptions {
  Method method = Method::kRecursive;
  int p = 3;
  std::size_t n = 100000;
  std::uint64_t seed = 0;
  double alpha = 0.01;
};

/// Fixed non-trivial group elements used by invariance checks: a Givens-type
/// rotation composed with a cyclic shift, and a cross-section reflection
/// composed with a coordinate swap.
std::pair<OrthogonalMatrix, OrthogonalMatrix> fixed_group_pair(int p, int which);

/// The distributional battery for one method and dimension:
/// orthogonality, determinant modulus, marginal of the (1,1) entry, its second
/// and fourth moments, the determinant sign split, the conditional row/column
/// laws, invariance on the (1,1) entry and the trace, and two-sample agreement
/// with the other Haar method on the same statistics.
std::vector<TestReport> run_battery(const BatteryOptions& opts);

}  // namespace orthohaar
