#include "coprox/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coprox/double_description.hpp"
#include "coprox/errors.hpp"
#include "coprox/exact_linalg.hpp"

namespace coprox {

struct PolyhedralSpace::Impl
{
    std::size_t dim = 0;
    std::vector<QVector> vertices;
    std::vector<QVector> duals;
    std::vector<RVector> duals_real;    // double images, for the floating-point norm
    std::vector<std::size_t> opposite_vertex;
    std::vector<std::size_t> opposite_dual;
    std::vector<std::vector<std::size_t>> facet_vertices;
};

namespace {

std::size_t index_of(const std::vector<QVector>& sorted, const QVector& v)
{
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    if (it == sorted.end() || *it != v)
        return sorted.size();
    return static_cast<std::size_t>(it - sorted.begin());
}

void check_length(std::size_t expected, std::size_t got, const char* what)
{
    if (expected != got)
        throw DimensionMismatchError(std::string(what) + ": expected length " + std::to_string(expected)
                                     + ", got " + std::to_string(got));
}

}   // namespace

PolyhedralSpace PolyhedralSpace::assemble(std::vector<QVector> vertices, std::vector<QVector> duals)
{
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    std::sort(duals.begin(), duals.end());
    duals.erase(std::unique(duals.begin(), duals.end()), duals.end());

    auto impl = std::make_shared<Impl>();
    impl->dim = vertices.front().size();
    impl->opposite_vertex.resize(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
    {
        impl->opposite_vertex[i] = index_of(vertices, negated(vertices[i]));
        if (impl->opposite_vertex[i] == vertices.size())
            throw InputError("vertex set is not centrally symmetric");
    }
    impl->opposite_dual.resize(duals.size());
    for (std::size_t i = 0; i < duals.size(); ++i)
    {
        impl->opposite_dual[i] = index_of(duals, negated(duals[i]));
        if (impl->opposite_dual[i] == duals.size())
            throw ConsistencyError("dual extremes are not centrally symmetric");
    }
    impl->facet_vertices.resize(duals.size());
    for (std::size_t i = 0; i < duals.size(); ++i)
        for (std::size_t v = 0; v < vertices.size(); ++v)
            if (dot(duals[i], vertices[v]) == 1)
                impl->facet_vertices[i].push_back(v);
    impl->vertices = std::move(vertices);
    impl->duals = std::move(duals);
    for (const auto& g : impl->duals)
        impl->duals_real.push_back(to_double(g));
    return PolyhedralSpace(std::move(impl));
}

PolyhedralSpace PolyhedralSpace::from_vertices(const std::vector<QVector>& input, std::size_t dimension_cap)
{
    if (input.empty())
        throw InputError("polyhedral space needs at least one vertex");
    const std::size_t n = input.front().size();
    if (n == 0)
        throw InputError("polyhedral space must have positive dimension");
    for (const auto& v : input)
        check_length(n, v.size(), "vertex");
    if (n > dimension_cap)
        throw CapExceededError("facet enumeration dimension " + std::to_string(n) + " exceeds cap "
                               + std::to_string(dimension_cap));

    std::vector<QVector> pts = input;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (const auto& v : pts)
        if (!std::binary_search(pts.begin(), pts.end(), negated(v)))
            throw InputError("vertex set is not centrally symmetric");
    if (rank(pts) != n)
        throw InputError("vertex set does not span the ambient space");

    auto duals = polar_vertices(pts, n);

    // Keep only extreme points: those whose tight functionals span the dual space.
    std::vector<QVector> extreme;
    for (const auto& v : pts)
    {
        std::vector<QVector> tight;
        for (const auto& g : duals)
            if (dot(g, v) == 1)
                tight.push_back(g);
        if (tight.size() >= n && rank(tight) == n)
            extreme.push_back(v);
    }
    return assemble(std::move(extreme), std::move(duals));
}

PolyhedralSpace PolyhedralSpace::linf(std::size_t n)
{
    if (n == 0)
        throw InputError("linf: dimension must be positive");
    std::vector<QVector> vertices;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask)
    {
        QVector v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = (mask >> i) & 1 ? 1 : -1;
        vertices.push_back(std::move(v));
    }
    std::vector<QVector> duals;
    for (std::size_t i = 0; i < n; ++i)
        for (int s : {1, -1})
        {
            QVector g(n, Rational(0));
            g[i] = s;
            duals.push_back(std::move(g));
        }
    return assemble(std::move(vertices), std::move(duals));
}

PolyhedralSpace PolyhedralSpace::l1(std::size_t n)
{
    if (n == 0)
        throw InputError("l1: dimension must be positive");
    auto cube = linf(n);
    return assemble(cube.dual_extremes(), cube.vertices());
}

PolyhedralSpace PolyhedralSpace::sup_product(const PolyhedralSpace& base, std::size_t copies)
{
    if (copies == 0)
        throw InputError("sup_product: copies must be positive");
    const std::size_t n = base.dim();
    const auto& bv = base.vertices();
    std::vector<QVector> vertices{QVector{}};
    for (std::size_t c = 0; c < copies; ++c)
    {
        std::vector<QVector> grown;
        grown.reserve(vertices.size() * bv.size());
        for (const auto& prefix : vertices)
            for (const auto& v : bv)
            {
                QVector w = prefix;
                w.insert(w.end(), v.begin(), v.end());
                grown.push_back(std::move(w));
            }
        vertices = std::move(grown);
    }
    std::vector<QVector> duals;
    for (std::size_t c = 0; c < copies; ++c)
        for (const auto& g : base.dual_extremes())
        {
            QVector h(n * copies, Rational(0));
            std::copy(g.begin(), g.end(), h.begin() + static_cast<std::ptrdiff_t>(c * n));
            duals.push_back(std::move(h));
        }
    return assemble(std::move(vertices), std::move(duals));
}

PolyhedralSpace PolyhedralSpace::from_both(std::vector<QVector> vertices, std::vector<QVector> duals)
{
    if (vertices.empty() || duals.empty())
        throw InputError("from_both: empty representation");
    const std::size_t n = vertices.front().size();
    for (const auto& v : vertices)
        check_length(n, v.size(), "vertex");
    for (const auto& g : duals)
        check_length(n, g.size(), "dual functional");
    for (const auto& g : duals)
    {
        Rational best = dot(g, vertices.front());
        for (const auto& v : vertices)
            best = std::max(best, dot(g, v));
        if (best != 1)
            throw InputError("from_both: dual functional does not support the ball");
    }
    for (const auto& v : vertices)
    {
        Rational best = dot(duals.front(), v);
        for (const auto& g : duals)
            best = std::max(best, dot(g, v));
        if (best != 1)
            throw InputError("from_both: vertex is not on the unit sphere");
    }
    return assemble(std::move(vertices), std::move(duals));
}

std::size_t PolyhedralSpace::dim() const { return impl_->dim; }
const std::vector<QVector>& PolyhedralSpace::vertices() const { return impl_->vertices; }
const std::vector<QVector>& PolyhedralSpace::dual_extremes() const { return impl_->duals; }
std::size_t PolyhedralSpace::opposite_dual(std::size_t i) const { return impl_->opposite_dual.at(i); }
std::size_t PolyhedralSpace::opposite_vertex(std::size_t i) const { return impl_->opposite_vertex.at(i); }

const std::vector<std::size_t>& PolyhedralSpace::facet_vertices(std::size_t i) const
{
    return impl_->facet_vertices.at(i);
}

Rational PolyhedralSpace::norm(const QVector& x) const
{
    check_length(dim(), x.size(), "norm");
    Rational best = 0;
    for (const auto& g : impl_->duals)
        best = std::max(best, dot(g, x));
    return best;
}

double PolyhedralSpace::norm(const RVector& x) const
{
    check_length(dim(), x.size(), "norm");
    double best = 0.0;
    for (const auto& g : impl_->duals_real)
        best = std::max(best, dot(g, x));
    return best;
}

Rational PolyhedralSpace::dual_norm(const QVector& f) const
{
    check_length(dim(), f.size(), "dual_norm");
    Rational best = 0;
    for (const auto& v : impl_->vertices)
        best = std::max(best, dot(f, v));
    return best;
}

ExactSupportSet PolyhedralSpace::support_set(const QVector& x) const
{
    check_length(dim(), x.size(), "support_set");
    if (is_zero(x))
        throw ZeroVectorError("J(x) is undefined at x = 0");
    ExactSupportSet out;
    out.x = x;
    Rational n = norm(x);
    for (std::size_t i = 0; i < impl_->duals.size(); ++i)
        if (dot(impl_->duals[i], x) == n)
        {
            out.indices.push_back(i);
            out.functionals.push_back(impl_->duals[i]);
        }
    return out;
}

LpSpace::LpSpace(std::size_t n, double p) : n_(n), p_(p)
{
    if (n == 0)
        throw InputError("lp: dimension must be positive");
    if (!(p > 1.0) || !std::isfinite(p))
        throw InputError("lp: exponent must satisfy 1 < p < infinity");
}

namespace {

double p_norm(const RVector& x, double p)
{
    double m = 0.0;
    for (double v : x)
        m = std::max(m, std::abs(v));
    if (m == 0.0)
        return 0.0;
    double s = 0.0;
    for (double v : x)
        s += std::pow(std::abs(v) / m, p);
    return m * std::pow(s, 1.0 / p);
}

}   // namespace

double LpSpace::norm(const RVector& x) const
{
    check_length(n_, x.size(), "norm");
    return p_norm(x, p_);
}

double LpSpace::dual_norm(const RVector& f) const
{
    check_length(n_, f.size(), "dual_norm");
    return p_norm(f, p_ / (p_ - 1.0));
}

NumericSupportSet LpSpace::support_set(const RVector& x) const
{
    double n = norm(x);
    if (n == 0.0)
        throw ZeroVectorError("J(x) is undefined at x = 0");
    RVector f(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        double a = std::pow(std::abs(x[i]) / n, p_ - 1.0);
        f[i] = x[i] > 0 ? a : (x[i] < 0 ? -a : 0.0);
    }
    return NumericSupportSet{x, {std::move(f)}};
}

LpProductSpace::LpProductSpace(LpSpace base, std::size_t copies) : base_(base), copies_(copies)
{
    if (copies == 0)
        throw InputError("sup_product: copies must be positive");
}

double LpProductSpace::norm(const RVector& x) const
{
    check_length(dim(), x.size(), "norm");
    const std::size_t n = base_.dim();
    double best = 0.0;
    for (std::size_t c = 0; c < copies_; ++c)
    {
        RVector block(x.begin() + static_cast<std::ptrdiff_t>(c * n),
                      x.begin() + static_cast<std::ptrdiff_t>((c + 1) * n));
        best = std::max(best, base_.norm(block));
    }
    return best;
}

NumericSupportSet LpProductSpace::support_set(const RVector& x, double tol) const
{
    double total = norm(x);
    if (total == 0.0)
        throw ZeroVectorError("J(x) is undefined at x = 0");
    const std::size_t n = base_.dim();
    NumericSupportSet out;
    out.x = x;
    for (std::size_t c = 0; c < copies_; ++c)
    {
        RVector block(x.begin() + static_cast<std::ptrdiff_t>(c * n),
                      x.begin() + static_cast<std::ptrdiff_t>((c + 1) * n));
        if (base_.norm(block) < total - tol * std::max(1.0, total))
            continue;
        RVector f(dim(), 0.0);
        auto g = base_.support_set(block).functionals.front();
        std::copy(g.begin(), g.end(), f.begin() + static_cast<std::ptrdiff_t>(c * n));
        out.functionals.push_back(std::move(f));
    }
    return out;
}

std::size_t dimension(const Space& space)
{
    return std::visit([](const auto& s) { return s.dim(); }, space);
}

double norm(const Space& space, const RVector& x)
{
    return std::visit([&](const auto& s) { return s.norm(x); }, space);
}

bool is_smooth_point(const PolyhedralSpace& space, const QVector& x)
{
    return space.support_set(x).is_singleton();
}

bool is_smooth_point(const LpSpace& space, const RVector& x)
{
    return space.support_set(x).is_singleton();
}

bool is_smooth_point(const LpProductSpace& space, const RVector& x, double tol)
{
    return space.support_set(x, tol).is_singleton();
}

bool is_rotund_point(const PolyhedralSpace& space, const QVector& x)
{
    if (space.norm(x) != 1)
        throw InputError("rotund test requires a unit vector");
    // x is rotund iff every facet through x degenerates to the single point x.
    for (auto i : space.support_set(x).indices)
        if (space.facet_vertices(i).size() != 1)
            return false;
    return true;
}

bool is_rotund_point(const LpSpace& space, const RVector& x, double tol)
{
    if (std::abs(space.norm(x) - 1.0) > tol)
        throw InputError("rotund test requires a unit vector");
    return true;
}

bool is_rotund_point(const LpProductSpace& space, const RVector& x, double tol)
{
    if (std::abs(space.norm(x) - 1.0) > tol)
        throw InputError("rotund test requires a unit vector");
    // With two or more blocks a non-maximal block can always be perturbed along the sphere.
    return space.copies() == 1;
}

}   // namespace coprox
