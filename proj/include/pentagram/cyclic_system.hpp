#pragma once

#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "pentagram/error.hpp"
#include "pentagram/rational.hpp"

namespace pentagram {

// Cyclic window systems  sum_{r=0}^{w-1} x_{k+r} = b_k  (k, indices mod N).
//
// Subtracting consecutive equations gives x_{j+w} - x_j = b_{j+1} - b_j, and
// when gcd(N, w) = 1 the stride-w walk from 0 visits every residue, so all x_j
// are fixed relative to x_0; equation 0 then pins x_0. This is the inverse of
// the circulant with w consecutive ones applied without forming it.

inline bool coprime(int N, int width) { return std::gcd(N, width) == 1; }

inline void require_coprime(int N, int width) {
  if (N <= 0 || width <= 0 || !coprime(N, width))
    throw Error(ErrorCode::NotCoprime,
                "gcd(N=" + std::to_string(N) + ", n+1=" + std::to_string(width) + ") != 1");
}

// Real version: unique solution.
inline std::vector<double> solve_cyclic_window_sum(std::span<const double> b, int width) {
  const int N = static_cast<int>(b.size());
  require_coprime(N, width);
  std::vector<double> offset(N, 0.0);
  int j = 0;
  for (int step = 0; step + 1 < N; ++step) {
    const int next = (j + width) % N;
    offset[next] = offset[j] + b[(j + 1) % N] - b[j];
    j = next;
  }
  double closing = b[0];
  for (int r = 0; r < width; ++r) closing -= offset[r % N];
  const double x0 = closing / width;
  for (double& x : offset) x += x0;
  return offset;
}

// Same system over Z/2 (entries 0/1). For odd width the solution is unique.
// For even width the all-ones vector spans the kernel: the returned solution
// has x_0 = 0, and nullopt means the system is inconsistent.
inline std::optional<std::vector<int>> solve_cyclic_window_parity(std::span<const int> b, int width) {
  const int N = static_cast<int>(b.size());
  require_coprime(N, width);
  std::vector<int> offset(N, 0);
  int j = 0;
  for (int step = 0; step + 1 < N; ++step) {
    const int next = (j + width) % N;
    offset[next] = offset[j] ^ (b[(j + 1) % N] & 1) ^ (b[j] & 1);
    j = next;
  }
  int closing = b[0] & 1;
  for (int r = 0; r < width; ++r) closing ^= offset[r % N];
  if (width % 2 == 1) {
    if (closing != 0)
      for (int& x : offset) x ^= 1;
    return offset;
  }
  if (closing != 0) return std::nullopt;
  return offset;
}

// Multiplicative version: for prod_{r=0}^{w-1} x_{k+r} = 1/d_k returns the
// ratios x_j / x_0, which are rational in the d's:  x_{j+w}/x_j = d_j/d_{j+1}.
template <Scalar T>
std::vector<T> cyclic_window_product_ratios(std::span<const T> d, int width) {
  const int N = static_cast<int>(d.size());
  require_coprime(N, width);
  for (const T& v : d)
    if (is_zero(v)) throw Error(ErrorCode::ZeroDenominator, "window value is zero");
  std::vector<T> ratio(N, T(1));
  int j = 0;
  for (int step = 0; step + 1 < N; ++step) {
    const int next = (j + width) % N;
    ratio[next] = ratio[j] * d[j] / d[(j + 1) % N];
    j = next;
  }
  return ratio;
}

}  // namespace pentagram
