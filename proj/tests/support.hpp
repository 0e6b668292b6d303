// Shared test helpers: literal builders and seeded random generators.

#ifndef COPROX_TESTS_SUPPORT_HPP
#define COPROX_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "coprox/double_description.hpp"
#include "coprox/exact_linalg.hpp"
#include "coprox/faces.hpp"
#include "coprox/operators.hpp"
#include "coprox/rational.hpp"
#include "coprox/spaces.hpp"

namespace testing {

using namespace coprox;

inline Rational q(long n, long d = 1)
{
    return Rational(n) / Rational(d);
}

inline Rational q(std::string_view text)
{
    return parse_rational(text);
}

inline QVector qv(std::initializer_list<long> xs)
{
    QVector v;
    for (long x : xs)
        v.push_back(Rational(x));
    return v;
}

inline QVector e(std::size_t n, std::size_t i)
{
    QVector v(n, Rational(0));
    v[i] = 1;
    return v;
}

inline Subspace span(std::size_t n, std::vector<QVector> cols)
{
    return Subspace(n, std::move(cols));
}

inline Subspace flagship()
{
    return span(3, {qv({3, 0, 2}), qv({0, 3, 2})});
}

inline Subspace l1_plane()
{
    return span(3, {e(3, 0), e(3, 1)});
}

// {x : x1 + x2 + x3 = 0} in dimension n.
inline Subspace c0_plane(std::size_t n)
{
    std::vector<QVector> cols;
    QVector a = e(n, 0), b = e(n, 0);
    a[1] = -1;
    b[2] = -1;
    cols.push_back(a);
    cols.push_back(b);
    for (std::size_t k = 3; k < n; ++k)
        cols.push_back(e(n, k));
    return span(n, cols);
}

// span{u, v}, u_k = cos(pi/2k), v_k = sin(pi/2k), rationalized to denominator 10^9.
inline Subspace trig_plane(std::size_t n)
{
    const double pi = std::acos(-1.0);
    QVector u, v;
    for (std::size_t k = 1; k <= n; ++k)
    {
        u.push_back(round_rational(std::cos(pi / (2.0 * static_cast<double>(k))), 1000000000L));
        v.push_back(round_rational(std::sin(pi / (2.0 * static_cast<double>(k))), 1000000000L));
    }
    return span(n, {u, v});
}

// Hexagonal prism-pyramid; the hexagon's second coordinate is scaled by 2/sqrt(3).
inline std::vector<QVector> prism_pyramid_rational()
{
    std::vector<QVector> half = {{q(1), q(0), q(1)},   {q(1, 2), q(1), q(1)},   {q(-1, 2), q(1), q(1)},
                                 {q(-1), q(0), q(1)},  {q(-1, 2), q(-1), q(1)}, {q(1, 2), q(-1), q(1)},
                                 {q(0), q(0), q(2)}};
    std::vector<QVector> all;
    for (const auto& v : half)
    {
        all.push_back(v);
        all.push_back(negated(v));
    }
    return all;
}

// The same body with its real coordinates.
inline std::vector<RVector> prism_pyramid_real()
{
    const double h = std::sqrt(3.0) / 2.0;
    std::vector<RVector> half = {{1, 0, 1}, {0.5, h, 1}, {-0.5, h, 1}, {-1, 0, 1}, {-0.5, -h, 1}, {0.5, -h, 1}, {0, 0, 2}};
    std::vector<RVector> all;
    for (const auto& v : half)
    {
        all.push_back(v);
        all.push_back({-v[0], -v[1], -v[2]});
    }
    return all;
}

/** Seeded generator; every property test fixes its seed so runs are reproducible. */
class Gen
{
    public:
        explicit Gen(std::uint64_t seed) : rng_(seed) {}

        long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

        double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

        bool coin() { return integer(0, 1) == 1; }

        Rational rational(long range, long denominator) { return q(integer(-range * denominator, range * denominator), denominator); }

        QVector qvector(std::size_t n, long range, long denominator = 1)
        {
            QVector v;
            for (std::size_t i = 0; i < n; ++i)
                v.push_back(rational(range, denominator));
            return v;
        }

        QVector nonzero_qvector(std::size_t n, long range, long denominator = 1)
        {
            for (;;)
            {
                auto v = qvector(n, range, denominator);
                if (!is_zero(v))
                    return v;
            }
        }

        RVector rvector(std::size_t n, double range = 1.0)
        {
            RVector v;
            for (std::size_t i = 0; i < n; ++i)
                v.push_back(real(-range, range));
            return v;
        }

        /** Random linearly independent integer columns (rank m < n). */
        Subspace subspace(std::size_t n, std::size_t m, long range = 3)
        {
            for (;;)
            {
                std::vector<QVector> cols;
                for (std::size_t j = 0; j < m; ++j)
                    cols.push_back(qvector(n, range));
                if (rank(cols) == m)
                    return Subspace(n, cols);
            }
        }

        /**
         * Random centrally symmetric spanning polytope: ±(axis points) plus a few
         * random integer points, in dimension n.
         */
        PolyhedralSpace polytope(std::size_t n, std::size_t extra)
        {
            std::vector<QVector> pts;
            for (std::size_t i = 0; i < n; ++i)
            {
                QVector v = e(n, i);
                v[i] = integer(1, 3);
                pts.push_back(v);
                pts.push_back(negated(v));
            }
            for (std::size_t k = 0; k < extra; ++k)
            {
                QVector v = nonzero_qvector(n, 3);
                pts.push_back(v);
                pts.push_back(negated(v));
            }
            return PolyhedralSpace::from_vertices(pts);
        }

        /**
         * Random polytope with few facets: ±(scaled axis functionals) plus a few
         * random integer functionals, turned into vertices by polarity.
         */
        PolyhedralSpace facet_polytope(std::size_t n, std::size_t extra)
        {
            std::vector<QVector> duals;
            for (std::size_t i = 0; i < n; ++i)
            {
                QVector g = e(n, i);
                g[i] = q(1, integer(1, 3));
                duals.push_back(g);
                duals.push_back(negated(g));
            }
            for (std::size_t k = 0; k < extra; ++k)
            {
                QVector g = nonzero_qvector(n, 2, 2);
                duals.push_back(g);
                duals.push_back(negated(g));
            }
            return PolyhedralSpace::from_vertices(polar_vertices(duals, n));
        }

        Matrix matrix(Eigen::Index rows, Eigen::Index cols)
        {
            Matrix m(rows, cols);
            for (Eigen::Index i = 0; i < rows; ++i)
                for (Eigen::Index j = 0; j < cols; ++j)
                    m(i, j) = real(-1.0, 1.0);
            return m;
        }

        std::mt19937_64& engine() { return rng_; }

    private:
        std::mt19937_64 rng_;
};

}   // namespace testing

#endif
