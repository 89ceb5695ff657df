#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kloo/modring.hpp"

namespace kloo {

/// Hard cap on enumerated candidates for every brute-force path.
inline constexpr u64 kMaxCandidates = 1'000'000'000;

/// m^{len}, throwing TooLarge above `limit`.
u64 candidate_count(size_t len, u64 m, u64 limit = kMaxCandidates);

/// Contiguous ranges covering [0, m) used as work units; independent of the worker count.
std::vector<std::pair<u64, u64>> value_slices(u64 m, size_t max_slices = 64);

/// Visits every x in (Z/mZ)^len with x[0] in [lo, hi); the last coordinate runs fastest.
/// visit returns false to stop early; the function returns false if stopped.
template <class Visit>
bool enumerate_slice(size_t len, u64 m, u64 lo, u64 hi, Visit&& visit) {
  if (len == 0 || lo >= hi) return true;
  std::vector<u64> x(len, 0);
  x[0] = lo;
  while (true) {
    if (!visit(x.data())) return false;
    size_t i = len;
    while (i-- > 1) {
      if (++x[i] < m) break;
      x[i] = 0;
    }
    if (i == 0) {
      if (++x[0] >= hi) return true;
    }
  }
}

/// Determinant of a row-major n x n array mod m (n <= 3 by formula, else elimination-free expansion).
u64 det_mod(const u64* x, size_t n, u64 m);

/// Adjugate of a row-major n x n array mod m, written to out.
void adjugate_mod(const u64* x, size_t n, u64 m, u64* out);

/// Table of inverses mod m (0 for non-units); m <= 2^22.
std::vector<u64> inverse_table(u64 m);

}  // namespace kloo
