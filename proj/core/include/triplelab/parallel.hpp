#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace triplelab {

/// Evaluates fn(i) for i in [0, n) on up to `threads` workers and returns the
/// results in index order. Workers take indices in a fixed stride, so the
/// output never depends on scheduling. The exception of the lowest failing
/// index is rethrown.
template <class Result, class Fn>
std::vector<Result> run_indexed(std::size_t n, unsigned threads, Fn&& fn) {
  std::vector<Result> results(n);
  std::vector<std::exception_ptr> errors(n);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += workers) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace triplelab
