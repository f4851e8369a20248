// Copyright 2026 The blotto-bwk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "blotto/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "blotto/errors.hpp"

namespace blotto {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kConvergence = 1e-12;
constexpr double kNegativeTolerance = 1e-8;

}  // namespace

SymMatrix SymMatrix::from_dense(std::size_t dim, std::vector<double> row_major) {
  if (row_major.size() != dim * dim) {
    throw InvalidInput(fmt::format("expected {} entries for a {}x{} matrix, got {}",
                                   dim * dim, dim, dim, row_major.size()));
  }
  double scale = 1.0;
  for (double v : row_major) scale = std::max(scale, std::abs(v));
  SymMatrix out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const double a = row_major[i * dim + j];
      const double b = row_major[j * dim + i];
      if (std::abs(a - b) > 1e-12 * scale) {
        throw InvalidInput(fmt::format("matrix is not symmetric at ({}, {}): {} vs {}",
                                       i, j, a, b));
      }
      out.set(i, j, 0.5 * (a + b));
    }
  }
  return out;
}

SymMatrix SymMatrix::identity(std::size_t dim) {
  SymMatrix out(dim);
  for (std::size_t i = 0; i < dim; ++i) out.set(i, i, 1.0);
  return out;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix out(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) out.set(i, i, diag[i]);
  return out;
}

void SymMatrix::add(std::size_t i, std::size_t j, double value) {
  data_[i * dim_ + j] += value;
  if (i != j) data_[j * dim_ + i] += value;
}

double SymMatrix::max_abs() const {
  double out = 0.0;
  for (double v : data_) out = std::max(out, std::abs(v));
  return out;
}

std::vector<double> SymMatrix::multiply(std::span<const double> x) const {
  if (x.size() != dim_) throw InvalidInput("matrix-vector dimension mismatch");
  std::vector<double> y(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    const double* row = &data_[i * dim_];
    double sum = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) sum += row[j] * x[j];
    y[i] = sum;
  }
  return y;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  if (other.dim_ != dim_) throw InvalidInput("matrix dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

double SymMatrix::quadratic_form(std::span<const double> x,
                                 std::span<const double> y) const {
  const std::vector<double> ay = multiply(y);
  return std::inner_product(x.begin(), x.end(), ay.begin(), 0.0);
}

EigenDecomposition sym_eig(const SymMatrix& input) {
  const std::size_t n = input.dim();
  std::vector<double> a = input.data();
  std::vector<double> v(n * n, 0.0);  // row-major, columns are eigenvectors
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  double frobenius = 0.0;
  for (double x : a) frobenius += x * x;
  frobenius = std::sqrt(frobenius);
  const double target = kConvergence * frobenius;
  // Rotations this small cannot keep the off-diagonal norm above target.
  const double negligible = n > 1 ? target / (2.0 * static_cast<double>(n)) : 0.0;

  auto off_norm = [&] {
    double sum = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) sum += a[p * n + q] * a[p * n + q];
    }
    return std::sqrt(2.0 * sum);
  };

  int sweeps = 0;
  while (off_norm() > target) {
    if (sweeps == kMaxSweeps) {
      throw NumericalFailure(fmt::format(
          "Jacobi eigensolver did not converge in {} sweeps (off-diagonal norm {:.3e})",
          kMaxSweeps, off_norm()));
    }
    ++sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) <= negligible) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          const double new_kp = c * akp - s * akq;
          const double new_kq = s * akp + c * akq;
          a[k * n + p] = new_kp;
          a[p * n + k] = new_kp;
          a[k * n + q] = new_kq;
          a[q * n + k] = new_kq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i * n + i] > a[j * n + j];
  });

  EigenDecomposition eig;
  eig.dim = n;
  eig.sweeps = sweeps;
  eig.values.resize(n);
  eig.vectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    eig.values[k] = a[src * n + src];
    for (std::size_t row = 0; row < n; ++row) {
      eig.vectors[k * n + row] = v[row * n + src];
    }
  }
  return eig;
}

namespace {

// Largest eigenvalue, after rejecting matrices that are not PSD.
double checked_top(const EigenDecomposition& eig) {
  if (eig.values.empty()) return 0.0;
  double scale = 0.0;
  for (double lambda : eig.values) scale = std::max(scale, std::abs(lambda));
  const double bottom = eig.values.back();
  if (bottom < -kNegativeTolerance * scale) {
    throw InvalidInput(fmt::format(
        "matrix is not positive semidefinite: eigenvalue {:.6e} with scale {:.6e}",
        bottom, scale));
  }
  return eig.values.front();
}

}  // namespace

SymMatrix pinv(const EigenDecomposition& eig, double rel_tol) {
  const std::size_t n = eig.dim;
  SymMatrix out(n);
  const double top = checked_top(eig);
  if (top <= 0.0) return out;
  const double cutoff = rel_tol * top;
  std::vector<double> acc(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.values[k];
    if (lambda <= cutoff) break;  // values are sorted
    const double inv = 1.0 / lambda;
    const double* q = &eig.vectors[k * n];
    for (std::size_t i = 0; i < n; ++i) {
      const double qi = q[i] * inv;
      double* row = &acc[i * n];
      for (std::size_t j = i; j < n; ++j) row[j] += qi * q[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) out.set(i, j, acc[i * n + j]);
  }
  return out;
}

SymMatrix pinv(const SymMatrix& a, double rel_tol) {
  return pinv(sym_eig(a), rel_tol);
}

double smallest_nonzero_eig(const EigenDecomposition& eig, double rel_tol) {
  const double top = checked_top(eig);
  if (top <= 0.0) {
    throw DegenerateInput("smallest nonzero eigenvalue of a zero matrix");
  }
  const double cutoff = rel_tol * top;
  double smallest = top;
  for (double lambda : eig.values) {
    if (lambda > cutoff) smallest = std::min(smallest, lambda);
  }
  return smallest;
}

double smallest_nonzero_eig(const SymMatrix& a, double rel_tol) {
  return smallest_nonzero_eig(sym_eig(a), rel_tol);
}

std::vector<double> multiply_dense(const SymMatrix& a, const SymMatrix& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n) throw InvalidInput("matrix dimension mismatch");
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += aik * b(k, j);
    }
  }
  return out;
}

}  // namespace blotto
