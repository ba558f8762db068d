//
// qwalk - quantum-walk graph similarity toolkit
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string_view>
#include <thread>
#include <vector>

namespace qwalk {

/// Worker count: an explicit positive request wins, then QWALK_THREADS, then
/// the hardware concurrency.
inline std::size_t resolve_threads(std::size_t requested = 0) {
  if (requested > 0)
    return requested;
  if (const char *env = std::getenv("QWALK_THREADS")) {
    std::string_view s(env);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc{} && ptr == s.data() + s.size() && value > 0)
      return value;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs fn(i) for i in [0, count). Each index is handled exactly once; the
/// exception from the lowest failing index is rethrown.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn &&fn) {
  threads = std::min(std::max<std::size_t>(threads, 1), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back(worker);
  }
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
}

} // namespace qwalk
