#include "kloo/enumerate.hpp"

#include <numeric>

namespace kloo {

u64 candidate_count(size_t len, u64 m, u64 limit) {
  return checked_pow(m, static_cast<unsigned>(len), limit);
}

std::vector<std::pair<u64, u64>> value_slices(u64 m, size_t max_slices) {
  const u64 count = std::min<u64>(m, max_slices);
  std::vector<std::pair<u64, u64>> out;
  for (u64 s = 0; s < count; ++s) out.emplace_back(m * s / count, m * (s + 1) / count);
  return out;
}

namespace {

u64 det_rec(const std::vector<u64>& a, size_t n, u64 m) {
  if (n == 1) return a[0] % m;
  u64 s = 0;
  std::vector<u64> minor((n - 1) * (n - 1));
  for (size_t j = 0; j < n; ++j) {
    if (a[j] == 0) continue;
    size_t idx = 0;
    for (size_t i = 1; i < n; ++i) {
      for (size_t t = 0; t < n; ++t) {
        if (t != j) minor[idx++] = a[i * n + t];
      }
    }
    u64 term = a[j] * det_rec(minor, n - 1, m) % m;
    s = (j % 2 == 0) ? (s + term) % m : (s + m - term) % m;
  }
  return s;
}

}  // namespace

u64 det_mod(const u64* x, size_t n, u64 m) {
  switch (n) {
    case 1:
      return x[0] % m;
    case 2:
      return (x[0] * x[3] % m + m - x[1] * x[2] % m) % m;
    case 3: {
      u64 a = x[0] * ((x[4] * x[8] + m * m - x[5] * x[7]) % m) % m;
      u64 b = x[1] * ((x[3] * x[8] + m * m - x[5] * x[6]) % m) % m;
      u64 c = x[2] * ((x[3] * x[7] + m * m - x[4] * x[6]) % m) % m;
      return (a + m - b + c) % m;
    }
    default:
      return det_rec(std::vector<u64>(x, x + n * n), n, m);
  }
}

void adjugate_mod(const u64* x, size_t n, u64 m, u64* out) {
  if (n == 1) {
    out[0] = 1 % m;
    return;
  }
  if (n == 2) {
    out[0] = x[3];
    out[1] = (m - x[1]) % m;
    out[2] = (m - x[2]) % m;
    out[3] = x[0];
    return;
  }
  std::vector<u64> minor((n - 1) * (n - 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      size_t idx = 0;
      for (size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        for (size_t c = 0; c < n; ++c) {
          if (c != j) minor[idx++] = x[r * n + c];
        }
      }
      u64 d = det_mod(minor.data(), n - 1, m);
      // adj = transpose of the cofactor matrix
      out[j * n + i] = (i + j) % 2 == 0 ? d : (m - d) % m;
    }
  }
}

std::vector<u64> inverse_table(u64 m) {
  if (m > (u64{1} << 22)) throw Error(ErrorCode::TooLarge, "inverse table modulus too large");
  std::vector<u64> inv(m, 0);
  for (u64 a = 1; a < m; ++a) {
    if (inv[a] != 0 || std::gcd(a, m) != 1) continue;
    u64 b = inverse_mod(a, m);
    inv[a] = b;
    inv[b] = a;
  }
  return inv;
}

}  // namespace kloo
