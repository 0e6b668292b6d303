#include "coprox/exact_linalg.hpp"

#include "coprox/errors.hpp"

namespace coprox {

namespace {

/** In-place reduced row echelon form. Returns pivot columns. */
std::vector<std::size_t> rref(std::vector<QVector>& m, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col)
    {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col] == 0)
            ++sel;
        if (sel == m.size())
            continue;
        std::swap(m[row], m[sel]);
        Rational inv = 1 / m[row][col];
        for (std::size_t j = col; j < cols; ++j)
            m[row][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i)
        {
            if (i == row || m[i][col] == 0)
                continue;
            Rational f = m[i][col];
            for (std::size_t j = col; j < cols; ++j)
                if (m[row][j] != 0)
                    m[i][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}   // namespace

std::size_t rank(const std::vector<QVector>& rows)
{
    if (rows.empty())
        return 0;
    std::vector<QVector> m = rows;
    std::size_t cols = m.front().size();
    for (const auto& r : m)
        if (r.size() != cols)
            throw DimensionMismatchError("rank: ragged rows");
    return rref(m, cols).size();
}

std::size_t affine_rank(const std::vector<QVector>& points)
{
    if (points.size() <= 1)
        return 0;
    std::vector<QVector> diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i)
        diffs.push_back(subtract(points[i], points[0]));
    return rank(diffs);
}

std::optional<QVector> solve_columns(const std::vector<QVector>& columns, const QVector& target)
{
    const std::size_t n = target.size();
    const std::size_t k = columns.size();
    std::vector<QVector> aug(n, QVector(k + 1));
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < k; ++j)
        {
            if (columns[j].size() != n)
                throw DimensionMismatchError("solve_columns: column length mismatch");
            aug[i][j] = columns[j][i];
        }
        aug[i][k] = target[i];
    }
    auto pivots = rref(aug, k + 1);
    QVector sol(k, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
    {
        if (pivots[r] == k)
            return std::nullopt;
        sol[pivots[r]] = aug[r][k];
    }
    return sol;
}

std::vector<QVector> nullspace(const std::vector<QVector>& rows, std::size_t n)
{
    std::vector<QVector> m = rows;
    for (const auto& r : m)
        if (r.size() != n)
            throw DimensionMismatchError("nullspace: row length mismatch");
    auto pivots = rref(m, n);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<QVector> basis;
    for (std::size_t free = 0; free < n; ++free)
    {
        if (is_pivot[free])
            continue;
        QVector v(n, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

}   // namespace coprox
