#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace invmet::numeric {

/// `n` points geometrically spaced from `lo` to `hi` inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// a ≤ b up to a relative rounding allowance.
inline bool leq_rel(double a, double b, double rel = 1e-12) {
  return a <= b + rel * std::max(std::abs(a), std::abs(b));
}

/// Bisection for a root of `f` on [lo, hi] where f(lo) and f(hi) have opposite signs.
/// Stops when the bracket is below `x_tol` (relative to the midpoint) or after `max_iter` halvings.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double x_tol = 1e-15, int max_iter = 200);

struct MinimizeResult {
  std::vector<double> x;
  double fx = 0.0;
  int iterations = 0;
};

/// Derivative-free local minimization (Nelder–Mead simplex, GSL nmsimplex2) from `x0` with
/// initial simplex steps `step`. Stops at `max_iter` iterations or when the simplex size falls
/// below `size_tol`, or as soon as `stop_below` is reached.
MinimizeResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                           const std::vector<double>& x0, const std::vector<double>& step,
                           int max_iter, double size_tol,
                           double stop_below = -std::numeric_limits<double>::infinity());

/// Deterministic 64-bit generator (splitmix64) with a platform-independent uniform draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Mixes a base seed with a stream index so independent tasks get independent streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Worker count from INVMET_THREADS (falls back to hardware concurrency, minimum 1).
unsigned thread_budget();

/// Runs fn(i) for i in [0, n) on up to thread_budget() threads; results are written by index
/// so the output order never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace invmet::numeric
