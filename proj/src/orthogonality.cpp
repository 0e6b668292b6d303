#include "coprox/orthogonality.hpp"

#include <algorithm>
#include <cmath>

#include "coprox/errors.hpp"

namespace coprox {

namespace {

/** Convex combination of g_lo and g_hi taking the value `target` at y. */
QVector blend(const QVector& g_lo, const QVector& g_hi, const Rational& lo, const Rational& hi,
              const Rational& target)
{
    if (hi == lo)
        return g_lo;
    Rational a = (hi - target) / (hi - lo);
    Rational b = (target - lo) / (hi - lo);
    return add(scaled(g_lo, a), scaled(g_hi, b));
}

struct Extremes
{
    Interval<Rational> interval;
    std::size_t lo_index = 0;
    std::size_t hi_index = 0;
};

Extremes active_extremes(const std::vector<QVector>& duals, const std::vector<std::size_t>& active,
                         const QVector& y)
{
    Extremes e;
    bool first = true;
    for (auto i : active)
    {
        Rational v = dot(duals[i], y);
        if (first || v < e.interval.lo)
        {
            e.interval.lo = v;
            e.lo_index = i;
        }
        if (first || v > e.interval.hi)
        {
            e.interval.hi = v;
            e.hi_index = i;
        }
        first = false;
    }
    return e;
}

void check_lengths(std::size_t n, const QVector& a, const QVector& b)
{
    if (a.size() != n || b.size() != n)
        throw DimensionMismatchError("vector length does not match the space dimension");
}

void check_lengths(std::size_t n, const RVector& a, const RVector& b)
{
    if (a.size() != n || b.size() != n)
        throw DimensionMismatchError("vector length does not match the space dimension");
}

}   // namespace

Interval<Rational> support_interval(const PolyhedralSpace& space, const QVector& x, const QVector& y)
{
    check_lengths(space.dim(), x, y);
    auto j = space.support_set(x);
    return active_extremes(space.dual_extremes(), j.indices, y).interval;
}

Interval<double> support_interval(const LpSpace& space, const RVector& x, const RVector& y)
{
    check_lengths(space.dim(), x, y);
    double v = dot(space.support_set(x).functionals.front(), y);
    return {v, v};
}

Interval<double> support_interval(const LpProductSpace& space, const RVector& x, const RVector& y, double tol)
{
    check_lengths(space.dim(), x, y);
    auto j = space.support_set(x, tol);
    Interval<double> iv{dot(j.functionals.front(), y), dot(j.functionals.front(), y)};
    for (const auto& f : j.functionals)
    {
        iv.lo = std::min(iv.lo, dot(f, y));
        iv.hi = std::max(iv.hi, dot(f, y));
    }
    return iv;
}

Verdict eps_orthogonal(const PolyhedralSpace& space, const QVector& x, const QVector& y, const Epsilon& eps)
{
    check_lengths(space.dim(), x, y);
    auto j = space.support_set(x);
    auto e = active_extremes(space.dual_extremes(), j.indices, y);
    Rational w = eps.exact() * space.norm(y);
    Verdict v;
    v.decision = e.interval.meets(-w, w);
    if (v.decision)
    {
        Rational target = std::clamp(Rational(0), e.interval.lo, e.interval.hi);
        const auto& duals = space.dual_extremes();
        QVector f = blend(duals[e.lo_index], duals[e.hi_index], e.interval.lo, e.interval.hi, target);
        v.certificate = cert::ExactFunctional{std::move(f), target};
    }
    else
    {
        v.note = "support interval [" + to_string(e.interval.lo) + ", " + to_string(e.interval.hi)
                 + "] misses [-" + to_string(w) + ", " + to_string(w) + "]";
    }
    return v;
}

Verdict bj_orthogonal(const PolyhedralSpace& space, const QVector& x, const QVector& y)
{
    return eps_orthogonal(space, x, y, Epsilon());
}

Verdict eps_orthogonal(const LpSpace& space, const RVector& x, const RVector& y, const Epsilon& eps, double tol)
{
    check_lengths(space.dim(), x, y);
    auto f = space.support_set(x).functionals.front();
    double value = dot(f, y);
    Verdict v;
    v.decision = std::abs(value) <= eps.value() * space.norm(y) + tol;
    v.certificate = cert::NumericFunctional{std::move(f), value};
    return v;
}

Verdict bj_orthogonal(const LpSpace& space, const RVector& x, const RVector& y, double tol)
{
    return eps_orthogonal(space, x, y, Epsilon(), tol);
}

Verdict eps_orthogonal(const LpProductSpace& space, const RVector& x, const RVector& y, const Epsilon& eps,
                       double tol)
{
    check_lengths(space.dim(), x, y);
    auto j = space.support_set(x, tol);
    std::size_t lo_i = 0, hi_i = 0;
    for (std::size_t i = 0; i < j.functionals.size(); ++i)
    {
        if (dot(j.functionals[i], y) < dot(j.functionals[lo_i], y))
            lo_i = i;
        if (dot(j.functionals[i], y) > dot(j.functionals[hi_i], y))
            hi_i = i;
    }
    double lo = dot(j.functionals[lo_i], y);
    double hi = dot(j.functionals[hi_i], y);
    double w = eps.value() * space.norm(y) + tol;
    Verdict v;
    v.decision = lo <= w && -w <= hi;
    if (v.decision)
    {
        double target = std::clamp(0.0, lo, hi);
        RVector f = j.functionals[lo_i];
        if (hi > lo)
        {
            double a = (hi - target) / (hi - lo);
            for (std::size_t i = 0; i < f.size(); ++i)
                f[i] = a * j.functionals[lo_i][i] + (1.0 - a) * j.functionals[hi_i][i];
        }
        v.certificate = cert::NumericFunctional{std::move(f), target};
    }
    return v;
}

Interval<Rational> facet_interval(const PolyhedralSpace& space, const RestrictedFacet& facet, const QVector& z)
{
    return active_extremes(space.dual_extremes(), facet.active, z).interval;
}

Verdict subspace_eps_orthogonal(const PolyhedralSpace& space, const RestrictedBall& ball, const QVector& z,
                                const Epsilon& eps)
{
    if (z.size() != space.dim())
        throw DimensionMismatchError("vector length does not match the space dimension");
    if (is_zero(z))
        throw ZeroVectorError("subspace orthogonality needs a nonzero direction");
    Rational w = eps.exact() * space.norm(z);
    const auto& duals = space.dual_extremes();
    cert::FacetFunctionals functionals;
    for (std::size_t q = 0; q < ball.facets.size(); ++q)
    {
        auto e = active_extremes(duals, ball.facets[q].active, z);
        if (!e.interval.meets(-w, w))
        {
            Verdict v;
            v.decision = false;
            v.certificate = cert::FacetViolation{q, e.interval};
            return v;
        }
        Rational target = std::clamp(Rational(0), e.interval.lo, e.interval.hi);
        functionals.functionals.push_back(
            blend(duals[e.lo_index], duals[e.hi_index], e.interval.lo, e.interval.hi, target));
    }
    Verdict v;
    v.decision = true;
    v.certificate = std::move(functionals);
    return v;
}

Verdict subspace_eps_orthogonal(const PolyhedralSpace& space, const Subspace& y, const QVector& z,
                                const Epsilon& eps)
{
    require_proper(y);
    return subspace_eps_orthogonal(space, restrict_ball(space, y), z, eps);
}

Verdict subspace_orthogonal(const PolyhedralSpace& space, const Subspace& y, const QVector& z)
{
    return subspace_eps_orthogonal(space, y, z, Epsilon());
}

Verdict oracle_eps_orthogonal(const NormFunction& norm, const RVector& x, const RVector& y, double eps,
                              const GridConfig& grid)
{
    if (x.size() != y.size())
        throw DimensionMismatchError("oracle: x and y differ in length");
    const double nx = norm(x);
    const double ny = norm(y);
    if (nx == 0.0 || ny == 0.0)
        throw ZeroVectorError("oracle needs nonzero x and y");
    if (grid.points < 3)
        throw InputError("oracle grid needs at least 3 points");
    const double range = grid.range > 0.0 ? grid.range : 10.0 * nx / ny;
    const double tol = grid.rel_tol * std::max(1.0, nx);

    auto phi = [&](double lambda) {
        RVector v(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            v[i] = x[i] + lambda * y[i];
        return norm(v) + eps * std::abs(lambda) * ny - nx;
    };

    // 0 plus a log-spaced ladder on each side, ascending.
    const std::size_t half = (grid.points - 1) / 2;
    std::vector<double> lambdas;
    lambdas.reserve(2 * half + 1);
    const double lo_exp = std::log(range * 1e-6);
    const double hi_exp = std::log(range);
    std::vector<double> ladder(half);
    for (std::size_t i = 0; i < half; ++i)
    {
        double t = half == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(half - 1);
        ladder[i] = std::exp(lo_exp + t * (hi_exp - lo_exp));
    }
    for (std::size_t i = half; i-- > 0;)
        lambdas.push_back(-ladder[i]);
    lambdas.push_back(0.0);
    for (double l : ladder)
        lambdas.push_back(l);

    std::size_t best = 0;
    double best_value = phi(lambdas[0]);
    for (std::size_t i = 1; i < lambdas.size(); ++i)
    {
        double v = phi(lambdas[i]);
        if (v < best_value)
        {
            best_value = v;
            best = i;
        }
    }

    // φ is convex: refine on the bracket around the grid minimizer.
    double a = lambdas[best == 0 ? 0 : best - 1];
    double b = lambdas[std::min(best + 1, lambdas.size() - 1)];
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = phi(c), fd = phi(d);
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a) + std::abs(b)); ++it)
    {
        if (fc < fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = phi(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = phi(d);
        }
    }
    double lambda = lambdas[best];
    if (fc < best_value)
    {
        best_value = fc;
        lambda = c;
    }
    if (fd < best_value)
    {
        best_value = fd;
        lambda = d;
    }

    Verdict v;
    if (best_value < -tol)
    {
        v.decision = false;
        RVector moved(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            moved[i] = x[i] + lambda * y[i];
        v.certificate = cert::ViolatingLambda{lambda, norm(moved), nx - eps * std::abs(lambda) * ny};
        return v;
    }
    v.decision = true;
    v.note = "no violation found";
    return v;
}

Verdict oracle_eps_orthogonal(const Space& space, const RVector& x, const RVector& y, double eps,
                              const GridConfig& grid)
{
    return oracle_eps_orthogonal([&](const RVector& v) { return norm(space, v); }, x, y, eps, grid);
}

std::optional<QVector> shared_support_functional(const PolyhedralSpace& space, const QVector& x, const QVector& y)
{
    check_lengths(space.dim(), x, y);
    auto jx = space.support_set(x);
    auto jy = space.support_set(y);
    std::vector<std::size_t> common;
    std::set_intersection(jx.indices.begin(), jx.indices.end(), jy.indices.begin(), jy.indices.end(),
                          std::back_inserter(common));
    if (common.empty())
        return std::nullopt;
    return space.dual_extremes()[common.front()];
}

}   // namespace coprox
