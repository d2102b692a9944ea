// airbargain - joint group-head selection and airtime allocation via Nash bargaining
// Copyright (C) 2026 The airbargain authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AIRBARGAIN_LINALG_HPP
#define AIRBARGAIN_LINALG_HPP

#include <cstddef>
#include <vector>

// Small dense helpers for the Newton solver and the KKT certificate. The
// problems here have a handful of variables, so plain O(n^3) routines on
// row-major buffers are all that is needed.

namespace airbargain::linalg {

using matrix = std::vector<std::vector<double>>;

double dot(const std::vector<double>& a, const std::vector<double>& b);

/// Solves A x = b for symmetric positive definite A via Cholesky.
/// Returns false when the factorization breaks down.
bool solve_spd(matrix a, std::vector<double> b, std::vector<double>& x);

/// Like solve_spd but retries with growing diagonal regularization until the
/// factorization succeeds. Always produces some descent-usable solution.
void solve_spd_regularized(const matrix& a, const std::vector<double>& b, std::vector<double>& x);

/// Eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
std::vector<double> symmetric_eigenvalues(matrix a);

/// min ||A*coef - rhs||_2 subject to coef >= 0 (Lawson-Hanson active set).
/// `columns` holds the columns of A. Returns the residual vector norm.
double nonnegative_least_squares(const std::vector<std::vector<double>>& columns,
                                 const std::vector<double>& rhs, std::vector<double>& coef);

}  // namespace airbargain::linalg

#endif
