#pragma once

#include <exception>
#include <vector>

namespace twisted {

/// Serial is the reference path; Parallel distributes independent
/// iterations over OpenMP threads. Both must produce identical results.
enum class Execution { Serial, Parallel };

/// Runs body(i) for i in [begin, end). Exceptions are captured per index and
/// the one from the lowest index is rethrown, so error behaviour does not
/// depend on scheduling.
template <class Body>
void for_each_index(Execution exec, int begin, int end, Body&& body) {
  if (end <= begin) return;
  if (exec == Execution::Serial) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(end - begin));
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = begin; i < end; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i - begin)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace twisted
