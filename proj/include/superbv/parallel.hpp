#pragma once

#include <exception>
#include <optional>
#include <vector>

namespace sbv {

enum class Execution { serial, parallel };

// Runs f(0..n-1) and returns the results indexed by sample, so the outcome does not depend on
// scheduling. An exception thrown by sample i is rethrown after the loop, lowest index first.
template <class F>
auto run_indexed(int n, F&& f, Execution mode) -> std::vector<decltype(f(0))> {
  using R = decltype(f(0));
  std::vector<std::optional<R>> slots(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  auto body = [&](int i) {
    try {
      slots[static_cast<std::size_t>(i)].emplace(f(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  };
  if (mode == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) body(i);
  } else {
    for (int i = 0; i < n; ++i) body(i);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace sbv
