#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ostk/matcore.hpp"

namespace testutil {

using ostk::cplx;
using ostk::CMatrix;
using ostk::RMatrix;

inline CMatrix random_complex(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

inline CMatrix random_herm(std::size_t n, std::mt19937_64& rng) {
  const CMatrix a = random_complex(n, n, rng);
  return (a + a.adjoint()) / 2.0;
}

inline CMatrix random_psd(std::size_t n, std::mt19937_64& rng, std::size_t rank = 0) {
  const CMatrix a = random_complex(n, rank ? rank : n, rng);
  return a * a.adjoint();
}

inline RMatrix random_sym(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  RMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = g(rng);
  return (a + a.transpose()) / 2.0;
}

inline RMatrix random_real_psd(std::size_t n, std::mt19937_64& rng, std::size_t rank = 0) {
  std::normal_distribution<double> g(0.0, 1.0);
  RMatrix a(n, rank ? rank : n);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = g(rng);
  return a * a.transpose();
}

// Brute-force Jacobi eigenvalues for a real symmetric matrix; independent of Eigen's solver.
inline std::vector<double> jacobi_eigenvalues(RMatrix a) {
  const Eigen::Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-26) break;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (Eigen::Index i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Eigenvalues of a complex Hermitian matrix via the realified form, deduplicated by pairs.
inline std::vector<double> herm_eigenvalues_oracle(const CMatrix& h) {
  const Eigen::Index n = h.rows();
  RMatrix r(2 * n, 2 * n);
  r << h.real(), -h.imag(), h.imag(), h.real();
  const auto all = jacobi_eigenvalues(r);
  std::vector<double> out;
  for (std::size_t i = 0; i < all.size(); i += 2) out.push_back(all[i]);
  return out;
}

}  // namespace testutil
