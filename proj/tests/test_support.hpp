#pragma once

// Independent brute-force oracles over plain integer arithmetic. These
// deliberately avoid the library's arithmetic so expected values arrive by
// a second route. Index encodings mirror the documented canonical layout
// (row-major grids, least significant component first).

#include <array>
#include <cstdint>
#include <vector>

namespace oracle {

inline std::vector<std::uint64_t> z_units(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b)
      if (a * b % n == 1 % n) {
        out.push_back(a);
        break;
      }
  return out;
}

inline bool z_is_unit(std::uint64_t n, std::uint64_t a) {
  for (std::uint64_t b = 0; b < n; ++b)
    if (a * b % n == 1 % n) return true;
  return false;
}

inline std::vector<std::uint64_t> z_jacobson(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < n; ++x) {
    bool ok = true;
    for (std::uint64_t r = 0; r < n && ok; ++r)
      ok = z_is_unit(n, (1 + n * n - r * x % n) % n);
    if (ok) out.push_back(x);
  }
  return out;
}

inline std::vector<std::uint64_t> z_qnil(std::uint64_t n) {
  // commutative: qnil(x) iff 1 + x r is a unit for every r
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < n; ++x) {
    bool ok = true;
    for (std::uint64_t r = 0; r < n && ok; ++r) ok = z_is_unit(n, (1 + x * r) % n);
    if (ok) out.push_back(x);
  }
  return out;
}

// 2x2 matrices over Z_m, row-major; canonical index
// v00 + m v01 + m^2 v10 + m^3 v11.
using M2 = std::array<std::uint64_t, 4>;

inline M2 m2_mul(std::uint64_t m, const M2& a, const M2& b) {
  return {(a[0] * b[0] + a[1] * b[2]) % m, (a[0] * b[1] + a[1] * b[3]) % m,
          (a[2] * b[0] + a[3] * b[2]) % m, (a[2] * b[1] + a[3] * b[3]) % m};
}

inline M2 m2_decode(std::uint64_t m, std::uint64_t idx) {
  M2 v;
  for (int i = 0; i < 4; ++i) {
    v[i] = idx % m;
    idx /= m;
  }
  return v;
}

inline std::uint64_t m2_index(std::uint64_t m, const M2& v) {
  return v[0] + m * (v[1] + m * (v[2] + m * v[3]));
}

inline std::vector<std::uint64_t> m2_units(std::uint64_t m) {
  const std::uint64_t total = m * m * m * m;
  const M2 id{1 % m, 0, 0, 1 % m};
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < total; ++i) {
    const M2 a = m2_decode(m, i);
    for (std::uint64_t j = 0; j < total; ++j) {
      const M2 b = m2_decode(m, j);
      if (m2_mul(m, a, b) == id && m2_mul(m, b, a) == id) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

// Upper triangular 2x2 over Z_m as (a, b, d) for [[a, b], [0, d]];
// canonical index a + m b + m^2 d.
using T2 = std::array<std::uint64_t, 3>;

inline T2 t2_mul(std::uint64_t m, const T2& x, const T2& y) {
  return {x[0] * y[0] % m, (x[0] * y[1] + x[1] * y[2]) % m, x[2] * y[2] % m};
}

inline T2 t2_decode(std::uint64_t m, std::uint64_t idx) {
  return {idx % m, idx / m % m, idx / (m * m) % m};
}

inline std::uint64_t t2_index(std::uint64_t m, const T2& v) {
  return v[0] + m * v[1] + m * m * v[2];
}

inline std::vector<std::uint64_t> t2_units(std::uint64_t m) {
  const std::uint64_t total = m * m * m;
  const T2 id{1 % m, 0, 1 % m};
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < total; ++i) {
    const T2 a = t2_decode(m, i);
    for (std::uint64_t j = 0; j < total; ++j) {
      const T2 b = t2_decode(m, j);
      if (t2_mul(m, a, b) == id && t2_mul(m, b, a) == id) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

inline std::vector<std::uint64_t> t2_jacobson(std::uint64_t m) {
  const std::uint64_t total = m * m * m;
  const auto units = t2_units(m);
  std::vector<bool> unit_bits(total, false);
  for (auto u : units) unit_bits[u] = true;
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < total; ++i) {
    const T2 x = t2_decode(m, i);
    bool ok = true;
    for (std::uint64_t j = 0; j < total && ok; ++j) {
      const T2 r = t2_decode(m, j);
      const T2 rx = t2_mul(m, r, x);
      const T2 one_minus{(1 + m - rx[0]) % m, (m - rx[1]) % m, (1 + m - rx[2]) % m};
      ok = unit_bits[t2_index(m, one_minus)];
    }
    if (ok) out.push_back(i);
  }
  return out;
}

}  // namespace oracle
