#pragma once

#include <optional>
#include <vector>

#include "scalar.hpp"

namespace ordp {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Coefficients c[0..n] of det(tI - a) = sum c[k] t^(n-k), computed
/// division-free (Berkowitz), so valid over any commutative ring.
template <class T>
std::vector<T> characteristic_polynomial(const Matrix<T>& a, const T& zero, const T& one) {
  const std::size_t n = a.size();
  if (n == 0) return {one};
  std::vector<T> c{one, zero - a[0][0]};
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<T> t(r + 2, zero);
    t[0] = one;
    t[1] = zero - a[r][r];
    std::vector<T> v(r, zero);
    for (std::size_t i = 0; i < r; ++i) v[i] = a[i][r];
    for (std::size_t k = 0; k < r; ++k) {
      T dot = zero;
      for (std::size_t i = 0; i < r; ++i) dot = dot + a[r][i] * v[i];
      t[k + 2] = zero - dot;
      if (k + 1 < r) {
        std::vector<T> w(r, zero);
        for (std::size_t i = 0; i < r; ++i) {
          for (std::size_t j = 0; j < r; ++j) w[i] = w[i] + a[i][j] * v[j];
        }
        v = std::move(w);
      }
    }
    std::vector<T> next(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i) {
      for (std::size_t j = 0; j <= std::min(i, r); ++j) next[i] = next[i] + t[i - j] * c[j];
    }
    c = std::move(next);
  }
  return c;
}

template <class T>
T determinant(const Matrix<T>& a, const T& zero, const T& one) {
  const std::size_t n = a.size();
  auto c = characteristic_polynomial(a, zero, one);
  return n % 2 == 0 ? c[n] : zero - c[n];
}

inline Rational determinant(Matrix<Rational> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return det;
}

/// Solves a x = b over Q; nullopt when a is singular.
inline std::optional<std::vector<Rational>> solve(Matrix<Rational> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace ordp
