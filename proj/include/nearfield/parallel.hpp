#pragma once

#include <exception>
#include <mutex>

#include "nearfield/types.hpp"

namespace nf {

/// Runs body(i) for i in [0, n). With Exec::parallel the iterations are
/// spread over OpenMP threads; the first exception thrown by any iteration is
/// rethrown on the calling thread once the loop finishes.
template <typename Body>
void for_each_index(long n, Exec exec, Body&& body) {
  if (exec == Exec::serial) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex guard;
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace nf
