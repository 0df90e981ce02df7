#pragma once

#include <vector>

namespace dms {

// out[i] = f(i), evaluated in parallel when OpenMP is on. f must not throw.
template <class T, class F>
std::vector<T> parallel_map(int n, F&& f) {
  std::vector<T> out(n > 0 ? n : 0);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) out[i] = f(i);
  return out;
}

}  // namespace dms
