#include "mplab/numeric.hpp"

#include <cmath>
#include <thread>
#include <vector>

namespace mplab {

double sinpi(double t) {
  double r = std::remainder(t, 2.0);  // exact, r in [-1, 1]
  double a = std::fabs(r);
  double s;
  if (a == 0.0 || a == 1.0) {
    s = 0.0;
  } else if (a <= 0.5) {
    s = std::sin(M_PI * a);
  } else {
    s = std::sin(M_PI * (1.0 - a));
  }
  return std::copysign(s, r);
}

double cospi(double t) {
  double a = std::fabs(std::remainder(t, 2.0));  // [0, 1]
  if (a == 0.5) return 0.0;
  if (a <= 0.25) return std::cos(M_PI * a);
  if (a < 0.75) return std::sin(M_PI * (0.5 - a));
  return -std::cos(M_PI * (1.0 - a));
}

namespace {
int g_threads = 1;
}

void set_thread_count(int n) { g_threads = n < 1 ? 1 : n; }
int thread_count() { return g_threads; }

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body) {
  if (n <= 0) return;
  int workers = g_threads;
  if (workers <= 1 || n < 2 * workers) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::int64_t lo = w * chunk;
    std::int64_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::int64_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

double halton(std::uint64_t index, std::uint32_t base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

}  // namespace mplab
