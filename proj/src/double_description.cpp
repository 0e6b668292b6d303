#include "coprox/double_description.hpp"

#include <algorithm>

#include <boost/dynamic_bitset.hpp>

#include "coprox/errors.hpp"

namespace coprox {

namespace {

using Bits = boost::dynamic_bitset<>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                            boost::multiprecision::et_off>;

struct Ray
{
    QVector x;
    Bits zero;      // processed constraint rows that are tight on x
};

/** Scale to a primitive integer vector (positive multiple). */
void normalize(QVector& v)
{
    Integer lcm_den = 1;
    for (const auto& a : v)
        if (a != 0)
            lcm_den = boost::multiprecision::lcm(lcm_den, Integer(boost::multiprecision::denominator(a)));
    Integer g = 0;
    for (const auto& a : v)
    {
        if (a == 0)
            continue;
        Integer n = boost::multiprecision::numerator(a) * (lcm_den / boost::multiprecision::denominator(a));
        g = boost::multiprecision::gcd(g, n);
    }
    if (g == 0)
        return;
    Rational factor = Rational(lcm_den) / Rational(abs(g));
    for (auto& a : v)
        if (a != 0)
            a *= factor;
}

/** Initial simplicial cone from D independent rows: rays are columns of -A^{-1}. */
std::vector<QVector> simplicial_rays(const std::vector<QVector>& rows)
{
    const std::size_t n = rows.size();
    std::vector<QVector> aug(n, QVector(2 * n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
            aug[i][j] = rows[i][j];
        aug[i][n + i] = -1;
    }
    for (std::size_t col = 0; col < n; ++col)
    {
        std::size_t sel = col;
        while (sel < n && aug[sel][col] == 0)
            ++sel;
        if (sel == n)
            throw ConsistencyError("double description: initial rows are singular");
        std::swap(aug[col], aug[sel]);
        Rational inv = 1 / aug[col][col];
        for (auto& a : aug[col])
            a *= inv;
        for (std::size_t i = 0; i < n; ++i)
        {
            if (i == col || aug[i][col] == 0)
                continue;
            Rational f = aug[i][col];
            for (std::size_t j = 0; j < 2 * n; ++j)
                aug[i][j] -= f * aug[col][j];
        }
    }
    std::vector<QVector> rays(n, QVector(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            rays[j][i] = aug[i][n + j];
    return rays;
}

}   // namespace

std::vector<QVector> polar_vertices(const std::vector<QVector>& points, std::size_t dim)
{
    if (dim == 0)
        throw InputError("polar_vertices: dimension must be positive");
    for (const auto& p : points)
        if (p.size() != dim)
            throw DimensionMismatchError("polar_vertices: point length mismatch");

    std::vector<QVector> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    // Homogenized cone {(f, s) : p.f - s <= 0, -s <= 0}.
    const std::size_t D = dim + 1;
    std::vector<QVector> rows;
    rows.reserve(pts.size() + 1);
    {
        QVector s_row(D, Rational(0));
        s_row[dim] = -1;
        rows.push_back(std::move(s_row));
    }
    for (const auto& p : pts)
    {
        QVector r(D);
        std::copy(p.begin(), p.end(), r.begin());
        r[dim] = -1;
        rows.push_back(std::move(r));
    }
    const std::size_t total = rows.size();

    // Greedy choice of D independent rows, in order.
    std::vector<std::size_t> initial;
    std::vector<QVector> echelon;      // reduced copies used for the independence test
    std::vector<std::size_t> echelon_pivot;
    for (std::size_t i = 0; i < total && initial.size() < D; ++i)
    {
        QVector v = rows[i];
        for (std::size_t k = 0; k < echelon.size(); ++k)
        {
            const Rational& f = v[echelon_pivot[k]];
            if (f == 0)
                continue;
            Rational c = f / echelon[k][echelon_pivot[k]];
            for (std::size_t j = 0; j < D; ++j)
                v[j] -= c * echelon[k][j];
        }
        auto it = std::find_if(v.begin(), v.end(), [](const Rational& a) { return a != 0; });
        if (it == v.end())
            continue;
        echelon_pivot.push_back(static_cast<std::size_t>(it - v.begin()));
        echelon.push_back(std::move(v));
        initial.push_back(i);
    }
    if (initial.size() < D)
        throw InputError("polar_vertices: points do not span the space (polar region unbounded)");

    std::vector<QVector> init_rows;
    for (auto i : initial)
        init_rows.push_back(rows[i]);
    std::vector<Ray> rays;
    {
        auto cols = simplicial_rays(init_rows);
        for (std::size_t j = 0; j < D; ++j)
        {
            Ray r{std::move(cols[j]), Bits(total)};
            normalize(r.x);
            for (std::size_t k = 0; k < D; ++k)
                if (k != j)
                    r.zero.set(initial[k]);
            rays.push_back(std::move(r));
        }
    }

    std::vector<bool> used(total, false);
    for (auto i : initial)
        used[i] = true;

    for (std::size_t row = 0; row < total; ++row)
    {
        if (used[row])
            continue;
        const QVector& a = rows[row];
        std::vector<Rational> val(rays.size());
        std::vector<std::size_t> pos, neg, zer;
        for (std::size_t k = 0; k < rays.size(); ++k)
        {
            val[k] = dot(a, rays[k].x);
            if (val[k] > 0)
                pos.push_back(k);
            else if (val[k] < 0)
                neg.push_back(k);
            else
                zer.push_back(k);
        }
        if (pos.empty())
        {
            for (auto k : zer)
                rays[k].zero.set(row);
            continue;
        }

        std::vector<Ray> next;
        next.reserve(neg.size() + zer.size() + pos.size() * neg.size() / 2 + 1);
        for (auto i : pos)
        {
            for (auto j : neg)
            {
                Bits common = rays[i].zero & rays[j].zero;
                if (common.count() + 2 < D)
                    continue;
                bool adjacent = true;
                for (std::size_t k = 0; k < rays.size() && adjacent; ++k)
                {
                    if (k == i || k == j)
                        continue;
                    if (common.is_subset_of(rays[k].zero))
                        adjacent = false;
                }
                if (!adjacent)
                    continue;
                QVector x(D);
                for (std::size_t c = 0; c < D; ++c)
                    x[c] = val[i] * rays[j].x[c] - val[j] * rays[i].x[c];
                normalize(x);
                Ray r{std::move(x), std::move(common)};
                r.zero.set(row);
                next.push_back(std::move(r));
            }
        }
        for (auto k : neg)
            next.push_back(std::move(rays[k]));
        for (auto k : zer)
        {
            rays[k].zero.set(row);
            next.push_back(std::move(rays[k]));
        }
        rays = std::move(next);
    }

    std::vector<QVector> out;
    out.reserve(rays.size());
    for (const auto& r : rays)
    {
        const Rational& s = r.x[dim];
        if (s <= 0)
            throw InputError("polar_vertices: polar region is unbounded (origin not interior)");
        QVector f(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(dim));
        for (auto& c : f)
            c /= s;
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}   // namespace coprox
