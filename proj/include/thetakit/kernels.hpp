#pragma once

// Grid evaluation.  Parallel runs use OpenMP over the index range and write
// into preallocated slots, so results are in input order and identical to the
// serial reference.  An exception at any index is rethrown after the loop;
// when several indices fail, the lowest one wins, matching the serial path.

#include <cstddef>
#include <exception>
#include <string_view>
#include <vector>

namespace thetakit {

enum class Execution { Serial, Parallel };

inline std::string_view to_string(Execution e) { return e == Execution::Serial ? "serial" : "parallel"; }

template <class R, class F>
std::vector<R> map_grid(std::size_t n, F&& f, Execution exec = Execution::Parallel) {
  std::vector<R> out(n);
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// n evenly spaced points from lo to hi inclusive (n >= 2), or {lo} for n = 1.
std::vector<double> linspace(double lo, double hi, int n);
/// n log-spaced points from lo to hi inclusive; lo, hi > 0.
std::vector<double> logspace(double lo, double hi, int n);

}  // namespace thetakit
