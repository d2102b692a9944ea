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

#include "airbargain/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace airbargain::linalg {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool solve_spd(matrix a, std::vector<double> b, std::vector<double>& x) {
    const std::size_t n = a.size();
    // In-place Cholesky: a becomes lower-triangular L.
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j][j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j][k] * a[j][k];
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        a[j][j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i][k] * a[j][k];
            a[i][j] = s / a[j][j];
        }
    }
    // Forward then backward substitution.
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= a[i][k] * b[k];
        b[i] = s / a[i][i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= a[k][ii] * b[k];
        b[ii] = s / a[ii][ii];
    }
    x = std::move(b);
    return true;
}

void solve_spd_regularized(const matrix& a, const std::vector<double>& b, std::vector<double>& x) {
    const std::size_t n = a.size();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(a[i][i]));
    if (scale == 0.0) scale = 1.0;
    double ridge = 0.0;
    for (int attempt = 0; attempt < 60; ++attempt) {
        matrix m = a;
        if (ridge > 0.0)
            for (std::size_t i = 0; i < n; ++i) m[i][i] += ridge;
        if (solve_spd(std::move(m), b, x)) return;
        ridge = (ridge == 0.0) ? scale * 1e-14 : ridge * 10.0;
    }
    throw std::runtime_error("solve_spd_regularized: matrix could not be factorized");
}

std::vector<double> symmetric_eigenvalues(matrix a) {
    const std::size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a[p][q]) < 1e-30) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

namespace {

// Unconstrained least squares on the selected columns via normal equations.
bool ls_on_subset(const std::vector<std::vector<double>>& columns, const std::vector<double>& rhs,
                  const std::vector<std::size_t>& subset, std::vector<double>& coef) {
    const std::size_t k = subset.size();
    matrix g(k, std::vector<double>(k, 0.0));
    std::vector<double> atb(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            g[i][j] = dot(columns[subset[i]], columns[subset[j]]);
            g[j][i] = g[i][j];
        }
        g[i][i] += 1e-12 * (g[i][i] + 1.0);
        atb[i] = dot(columns[subset[i]], rhs);
    }
    return solve_spd(std::move(g), std::move(atb), coef);
}

}  // namespace

double nonnegative_least_squares(const std::vector<std::vector<double>>& columns,
                                 const std::vector<double>& rhs, std::vector<double>& coef) {
    const std::size_t ncols = columns.size();
    coef.assign(ncols, 0.0);
    if (ncols == 0) return std::sqrt(dot(rhs, rhs));
    const std::size_t dim = rhs.size();

    std::vector<bool> passive(ncols, false);
    std::vector<double> residual = rhs;
    const double tol = 1e-12 * (1.0 + std::sqrt(dot(rhs, rhs)));

    for (std::size_t outer = 0; outer < 4 * ncols + 8; ++outer) {
        // Most violated dual among inactive columns.
        double best = tol;
        std::size_t best_j = ncols;
        for (std::size_t j = 0; j < ncols; ++j) {
            if (passive[j]) continue;
            const double w = dot(columns[j], residual);
            if (w > best) {
                best = w;
                best_j = j;
            }
        }
        if (best_j == ncols) break;
        passive[best_j] = true;

        for (std::size_t inner = 0; inner < 4 * ncols + 8; ++inner) {
            std::vector<std::size_t> subset;
            for (std::size_t j = 0; j < ncols; ++j)
                if (passive[j]) subset.push_back(j);
            std::vector<double> trial;
            if (!ls_on_subset(columns, rhs, subset, trial)) {
                passive[best_j] = false;
                break;
            }
            double alpha = 1.0;
            bool all_positive = true;
            for (std::size_t i = 0; i < subset.size(); ++i) {
                if (trial[i] <= 0.0) {
                    all_positive = false;
                    const double cur = coef[subset[i]];
                    if (cur - trial[i] > 0.0) alpha = std::min(alpha, cur / (cur - trial[i]));
                }
            }
            if (all_positive) {
                for (std::size_t i = 0; i < subset.size(); ++i) coef[subset[i]] = trial[i];
                break;
            }
            for (std::size_t i = 0; i < subset.size(); ++i)
                coef[subset[i]] += alpha * (trial[i] - coef[subset[i]]);
            for (std::size_t j = 0; j < ncols; ++j)
                if (passive[j] && coef[j] <= 1e-14) {
                    passive[j] = false;
                    coef[j] = 0.0;
                }
        }

        residual = rhs;
        for (std::size_t j = 0; j < ncols; ++j)
            if (coef[j] != 0.0)
                for (std::size_t d = 0; d < dim; ++d) residual[d] -= coef[j] * columns[j][d];
    }
    return std::sqrt(dot(residual, residual));
}

}  // namespace airbargain::linalg
