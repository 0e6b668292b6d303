#ifndef COPROX_EXACT_LINALG_HPP
#define COPROX_EXACT_LINALG_HPP

#include <optional>
#include <vector>

#include "coprox/rational.hpp"

namespace coprox {

/** Rank of a list of row vectors (all of equal length). */
std::size_t rank(const std::vector<QVector>& rows);

/** Dimension of the affine hull of a point set (-1 counted as 0 for empty). */
std::size_t affine_rank(const std::vector<QVector>& points);

/**
 * Solve sum_j c_j columns[j] = target. Returns the unique solution when the
 * columns are independent, any solution otherwise, or nullopt when the
 * system is inconsistent.
 */
std::optional<QVector> solve_columns(const std::vector<QVector>& columns, const QVector& target);

/** Basis of {x : row . x = 0 for every row}, in reduced form. */
std::vector<QVector> nullspace(const std::vector<QVector>& rows, std::size_t n);

}   // namespace coprox

#endif
