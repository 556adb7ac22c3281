// Copyright 2026 the endoq authors.
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

#ifndef ENDOQ_SIMPLEX_HPP
#define ENDOQ_SIMPLEX_HPP

#include <endoq/rational.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace endoq::detail {

struct LinearProgram {
    std::vector<std::vector<Scalar>> columns;  // columns[j][r]: row r of variable j
    std::vector<Scalar> cost;                  // per column
    std::vector<Scalar> rhs;                   // per row
};

struct SimplexSolution {
    Scalar objective;
    std::vector<Scalar> primal;  // per column
    std::vector<Scalar> duals;   // per row
};

/**
 * Minimizes cost·x over {x: A x = rhs, x ≥ 0} with a dense exact tableau.
 *
 * The caller supplies a feasible starting basis (one column index per row),
 * which the game LPs here always have in closed form, so no phase-one run is
 * needed.  Entering and leaving choices follow Bland's smallest-index rule,
 * which rules out cycling, and all arithmetic is rational, so the optimum is
 * exact and deterministic.  Row multipliers are carried in marker columns;
 * they come out as the dual solution.
 *
 * The callers' programs are bounded (every variable is trapped by its
 * constraint row sums), so unboundedness signals a caller bug and throws.
 */
inline SimplexSolution simplex_min(const LinearProgram& lp, const std::vector<int>& basis)
{
    const std::size_t rows = lp.rhs.size();
    const std::size_t ncols = lp.columns.size();
    if (basis.size() != rows || lp.cost.size() != ncols) {
        throw std::logic_error("malformed linear program");
    }
    const std::size_t width = ncols + rows + 1;  // variables, markers, rhs
    const std::size_t rhs_at = width - 1;

    std::vector<std::vector<Scalar>> tab(rows, std::vector<Scalar>(width, Scalar(0)));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t j = 0; j < ncols; ++j) {
            tab[r][j] = lp.columns[j][r];
        }
        tab[r][ncols + r] = 1;
        tab[r][rhs_at] = lp.rhs[r];
    }
    std::vector<Scalar> costrow(width, Scalar(0));
    for (std::size_t j = 0; j < ncols; ++j) {
        costrow[j] = lp.cost[j];
    }

    // Gauss-Jordan steps turn the supplied basis into the identity.
    std::vector<int> basic(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t piv = static_cast<std::size_t>(basis[r]);
        std::size_t src = r;
        while (src < rows && tab[src][piv] == 0) {
            ++src;
        }
        if (src == rows) {
            throw std::logic_error("starting basis is singular");
        }
        std::swap(tab[r], tab[src]);
        const Scalar d = tab[r][piv];
        for (std::size_t j = 0; j < width; ++j) {
            tab[r][j] /= d;
        }
        for (std::size_t r2 = 0; r2 < rows; ++r2) {
            if (r2 != r && tab[r2][piv] != 0) {
                const Scalar f = tab[r2][piv];
                for (std::size_t j = 0; j < width; ++j) {
                    tab[r2][j] -= f * tab[r][j];
                }
            }
        }
        basic[r] = static_cast<int>(piv);
    }
    for (std::size_t r = 0; r < rows; ++r) {
        if (tab[r][rhs_at] < 0) {
            throw std::logic_error("starting basis is infeasible");
        }
        if (costrow[static_cast<std::size_t>(basic[r])] != 0) {
            const Scalar f = costrow[static_cast<std::size_t>(basic[r])];
            for (std::size_t j = 0; j < width; ++j) {
                costrow[j] -= f * tab[r][j];
            }
        }
    }

    while (true) {
        std::size_t enter = ncols;
        for (std::size_t j = 0; j < ncols; ++j) {
            if (costrow[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == ncols) {
            break;
        }
        std::size_t leave = rows;
        Scalar best_ratio;
        for (std::size_t r = 0; r < rows; ++r) {
            if (tab[r][enter] <= 0) {
                continue;
            }
            const Scalar ratio = tab[r][rhs_at] / tab[r][enter];
            if (leave == rows || ratio < best_ratio ||
                (ratio == best_ratio && basic[r] < basic[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave == rows) {
            throw std::logic_error("linear program is unbounded");
        }
        const Scalar d = tab[leave][enter];
        for (std::size_t j = 0; j < width; ++j) {
            tab[leave][j] /= d;
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (r != leave && tab[r][enter] != 0) {
                const Scalar f = tab[r][enter];
                for (std::size_t j = 0; j < width; ++j) {
                    tab[r][j] -= f * tab[leave][j];
                }
            }
        }
        if (costrow[enter] != 0) {
            const Scalar f = costrow[enter];
            for (std::size_t j = 0; j < width; ++j) {
                costrow[j] -= f * tab[leave][j];
            }
        }
        basic[leave] = static_cast<int>(enter);
    }

    SimplexSolution out;
    out.objective = -costrow[rhs_at];
    out.primal.assign(ncols, Scalar(0));
    for (std::size_t r = 0; r < rows; ++r) {
        out.primal[static_cast<std::size_t>(basic[r])] = tab[r][rhs_at];
    }
    out.duals.assign(rows, Scalar(0));
    for (std::size_t r = 0; r < rows; ++r) {
        out.duals[r] = -costrow[ncols + r];
    }
    return out;
}

} // namespace endoq::detail

#endif // ENDOQ_SIMPLEX_HPP
