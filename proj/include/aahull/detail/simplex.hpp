#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aahull/rational.hpp"

namespace aahull::detail {

/// Decides whether target = sum_j z_j columns[j] has a solution with z >= 0.
///
/// Phase-one simplex over exact rationals with Bland's rule, so it always
/// terminates. When `sum_one` is set the coefficients must also sum to 1
/// (convex part of a mixed convex/conic combination): only the first
/// `convex_count` columns take part in that row.
class FeasibilityLp {
public:
    static bool solve(std::span<const QVector> columns, const QVector& target, std::size_t convex_count,
                      bool sum_one) {
        const std::size_t dim = target.size();
        const std::size_t rows = dim + (sum_one ? 1 : 0);
        const std::size_t n = columns.size();
        if (!sum_one && target.is_zero()) return true;
        if (n == 0) return false;
        for (const auto& c : columns) {
            if (c.size() != dim) throw DimensionError("feasibility LP: column dimension mismatch");
        }

        // Tableau: rows x (n structural + rows artificial + rhs).
        const std::size_t width = n + rows + 1;
        const std::size_t rhs = width - 1;
        std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(width));
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i < dim) {
                    t[i][j] = columns[j][i];
                } else {
                    t[i][j] = j < convex_count ? 1 : 0;
                }
            }
            t[i][rhs] = i < dim ? target[i] : Rational(1);
            if (sgn(t[i][rhs]) < 0) {
                for (std::size_t j = 0; j < n; ++j) t[i][j] = -t[i][j];
                t[i][rhs] = -t[i][rhs];
            }
            t[i][n + i] = 1;
        }
        std::vector<std::size_t> basis(rows);
        for (std::size_t i = 0; i < rows; ++i) basis[i] = n + i;

        // Reduced costs of the phase-one objective (sum of artificials).
        std::vector<Rational> cost(width);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < rows; ++i) cost[j] -= t[i][j];
        }
        for (std::size_t i = 0; i < rows; ++i) cost[rhs] -= t[i][rhs];

        while (sgn(cost[rhs]) != 0) {
            std::size_t enter = width;
            for (std::size_t j = 0; j < rhs; ++j) {
                if (sgn(cost[j]) < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == width) break;

            std::size_t leave = rows;
            Rational best;
            for (std::size_t i = 0; i < rows; ++i) {
                if (sgn(t[i][enter]) <= 0) continue;
                Rational ratio = t[i][rhs] / t[i][enter];
                if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows) break;  // unbounded direction; cannot happen for phase one

            Rational pivot = t[leave][enter];
            for (auto& e : t[leave]) e /= pivot;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == leave || sgn(t[i][enter]) == 0) continue;
                Rational f = t[i][enter];
                for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
            }
            if (sgn(cost[enter]) != 0) {
                Rational f = cost[enter];
                for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t[leave][j];
            }
            basis[leave] = enter;
        }
        return sgn(cost[rhs]) == 0;
    }
};

}  // namespace aahull::detail
