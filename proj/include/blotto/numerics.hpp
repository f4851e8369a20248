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

#pragma once

// Dense symmetric linear algebra for the small co-occurrence matrices of the
// path bandit: cyclic Jacobi eigendecomposition, Moore-Penrose pseudoinverse
// and the smallest nonzero eigenvalue.

#include <cstddef>
#include <span>
#include <vector>

namespace blotto {

inline constexpr double kDefaultRankTolerance = 1e-9;

class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

  // Row-major input. Throws InvalidInput if the asymmetry exceeds
  // 1e-12 * max(1, max|a_ij|); the stored matrix is the symmetric part.
  static SymMatrix from_dense(std::size_t dim, std::vector<double> row_major);
  static SymMatrix identity(std::size_t dim);
  static SymMatrix diagonal(std::span<const double> diag);

  std::size_t dim() const { return dim_; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * dim_ + j];
  }
  // Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value) {
    data_[i * dim_ + j] = value;
    data_[j * dim_ + i] = value;
  }
  void add(std::size_t i, std::size_t j, double value);

  const std::vector<double>& data() const { return data_; }
  double max_abs() const;

  std::vector<double> multiply(std::span<const double> x) const;
  SymMatrix& operator*=(double s);
  SymMatrix& operator+=(const SymMatrix& other);
  // x^T A y
  double quadratic_form(std::span<const double> x, std::span<const double> y) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

// Eigenvalues in descending order; column k of `vectors` (column-major) is the
// unit eigenvector of values[k].
struct EigenDecomposition {
  std::vector<double> values;
  std::vector<double> vectors;
  std::size_t dim = 0;
  int sweeps = 0;

  double vector(std::size_t row, std::size_t k) const {
    return vectors[k * dim + row];
  }
};

// Cyclic Jacobi. Converges when the off-diagonal Frobenius norm drops to
// 1e-12 * ||A||_F; throws NumericalFailure after 100 sweeps.
EigenDecomposition sym_eig(const SymMatrix& a);

// Q diag(1/lambda) Q^T over eigenvalues above rel_tol * lambda_max. Throws
// InvalidInput if some eigenvalue is below -1e-8 * lambda_max.
SymMatrix pinv(const EigenDecomposition& eig, double rel_tol = kDefaultRankTolerance);
SymMatrix pinv(const SymMatrix& a, double rel_tol = kDefaultRankTolerance);

// Smallest eigenvalue above rel_tol * lambda_max. Throws DegenerateInput for
// the zero matrix.
double smallest_nonzero_eig(const EigenDecomposition& eig,
                            double rel_tol = kDefaultRankTolerance);
double smallest_nonzero_eig(const SymMatrix& a,
                            double rel_tol = kDefaultRankTolerance);

// A * B for symmetric inputs; the product need not be symmetric, so it is
// returned row-major.
std::vector<double> multiply_dense(const SymMatrix& a, const SymMatrix& b);

}  // namespace blotto
