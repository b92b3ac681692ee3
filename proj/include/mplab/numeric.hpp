#pragma once

#include <cstdint>
#include <functional>

namespace mplab {

/// sin(pi*t), exact zero at integer t. Used by the closed-form test functions
/// so that traces on faces located at multiples of pi vanish bitwise.
double sinpi(double t);

/// cos(pi*t), exact zero at half-integer t.
double cospi(double t);

/// Worker count for parallel_for. 1 disables threading.
void set_thread_count(int n);
int thread_count();

/// Blocked parallel loop over [0, n). Iterations must write to disjoint
/// locations; reductions are done by the caller in index order afterwards,
/// so results do not depend on the worker count.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

/// Halton low-discrepancy sequence value in (0,1), 1-based index.
double halton(std::uint64_t index, std::uint32_t base);

}  // namespace mplab
