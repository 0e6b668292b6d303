#include "coprox/faces.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>

#include "coprox/double_description.hpp"
#include "coprox/errors.hpp"
#include "coprox/exact_linalg.hpp"
#include "coprox/lp.hpp"

namespace coprox {

Subspace::Subspace(std::size_t ambient_dim, std::vector<QVector> basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis))
{
    for (const auto& b : basis_)
        if (b.size() != ambient_dim_)
            throw DimensionMismatchError("subspace basis vector has wrong length");
    if (coprox::rank(basis_) != basis_.size())
        throw InputError("subspace basis is not linearly independent");
}

QVector Subspace::to_ambient(const QVector& coords) const
{
    if (coords.size() != rank())
        throw DimensionMismatchError("subspace coordinates have wrong length");
    if (basis_.empty())
        return QVector(ambient_dim_, Rational(0));
    return combine(basis_, coords);
}

std::optional<QVector> Subspace::coordinates(const QVector& y) const
{
    if (y.size() != ambient_dim_)
        throw DimensionMismatchError("vector length does not match subspace ambient dimension");
    if (basis_.empty())
        return is_zero(y) ? std::optional<QVector>(QVector{}) : std::nullopt;
    return solve_columns(basis_, y);
}

bool Subspace::contains(const RVector& y, double tol) const
{
    if (y.size() != ambient_dim_)
        throw DimensionMismatchError("vector length does not match subspace ambient dimension");
    Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
    if (basis_.empty())
        return target.norm() <= tol;
    Eigen::MatrixXd b(ambient_dim_, basis_.size());
    for (std::size_t j = 0; j < basis_.size(); ++j)
        for (std::size_t i = 0; i < ambient_dim_; ++i)
            b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(basis_[j][i]);
    Eigen::VectorXd c = b.colPivHouseholderQr().solve(target);
    return (b * c - target).norm() <= tol * std::max(1.0, target.norm());
}

QVector Subspace::restrict_functional(const QVector& g) const
{
    if (g.size() != ambient_dim_)
        throw DimensionMismatchError("functional length does not match subspace ambient dimension");
    QVector out(basis_.size());
    for (std::size_t j = 0; j < basis_.size(); ++j)
        out[j] = dot(g, basis_[j]);
    return out;
}

void require_proper(const Subspace& y)
{
    if (!y.is_proper())
        throw ImproperSubspaceError("a proper subspace (0 < dim Y < dim X) is required");
}

std::vector<FaceDescriptor> enumerate_facets(const PolyhedralSpace& space)
{
    std::vector<FaceDescriptor> out;
    const auto& duals = space.dual_extremes();
    out.reserve(duals.size());
    for (std::size_t i = 0; i < duals.size(); ++i)
    {
        FaceDescriptor f;
        f.functional = duals[i];
        f.vertex_indices = space.facet_vertices(i);
        std::vector<QVector> pts;
        for (auto v : f.vertex_indices)
            pts.push_back(space.vertices()[v]);
        f.dimension = affine_rank(pts);
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<std::size_t> RestrictedBall::representatives() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < facets.size(); ++i)
        if (i < facets[i].opposite)
            out.push_back(i);
    return out;
}

RestrictedBall restrict_ball(const PolyhedralSpace& space, const Subspace& y)
{
    if (y.ambient_dim() != space.dim())
        throw DimensionMismatchError("subspace ambient dimension does not match the space");
    if (y.rank() == 0)
        throw ImproperSubspaceError("cannot restrict the ball to Y = {0}");
    const auto& duals = space.dual_extremes();
    const std::size_t m = y.rank();

    std::vector<QVector> pulled(duals.size());
    for (std::size_t i = 0; i < duals.size(); ++i)
        pulled[i] = y.restrict_functional(duals[i]);

    RestrictedBall ball;
    ball.vertices = polar_vertices(pulled, m);
    for (const auto& c : ball.vertices)
        ball.ambient_vertices.push_back(y.to_ambient(c));

    // Group ambient functionals by the restricted vertices they are tight on.
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < duals.size(); ++i)
    {
        std::vector<std::size_t> tight;
        for (std::size_t k = 0; k < ball.vertices.size(); ++k)
            if (dot(pulled[i], ball.vertices[k]) == 1)
                tight.push_back(k);
        if (!tight.empty())
            groups[tight].push_back(i);
    }
    for (auto& [tight, members] : groups)
    {
        std::vector<QVector> pts;
        for (auto k : tight)
            pts.push_back(ball.vertices[k]);
        if (affine_rank(pts) + 1 != m)
            continue;
        RestrictedFacet f;
        f.functional = pulled[members.front()];
        for (auto i : members)
            if (pulled[i] != f.functional)
                throw ConsistencyError("restricted facet has two distinct supporting functionals");
        f.vertex_indices = tight;
        f.dimension = m - 1;
        f.active = members;
        ball.facets.push_back(std::move(f));
    }
    std::sort(ball.facets.begin(), ball.facets.end(),
              [](const RestrictedFacet& a, const RestrictedFacet& b) { return a.functional < b.functional; });
    for (auto& f : ball.facets)
    {
        QVector neg = negated(f.functional);
        auto it = std::find_if(ball.facets.begin(), ball.facets.end(),
                               [&](const RestrictedFacet& g) { return g.functional == neg; });
        if (it == ball.facets.end())
            throw ConsistencyError("restricted ball is not centrally symmetric");
        f.opposite = static_cast<std::size_t>(it - ball.facets.begin());
    }
    return ball;
}

std::vector<std::size_t> face_trace(const PolyhedralSpace& space, const Subspace& y,
                                    const RestrictedBall& ball, std::size_t facet)
{
    QVector h = y.restrict_functional(space.dual_extremes().at(facet));
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < ball.vertices.size(); ++k)
        if (dot(h, ball.vertices[k]) == 1)
            out.push_back(k);
    return out;
}

namespace {

void check_face_inputs(const PolyhedralSpace& space, const Subspace& y, const FaceDescriptor& face)
{
    if (y.ambient_dim() != space.dim())
        throw DimensionMismatchError("subspace ambient dimension does not match the space");
    if (face.vertex_indices.empty())
        throw InputError("face has no vertices");
    for (auto v : face.vertex_indices)
        if (v >= space.vertices().size())
            throw InputError("face vertex index out of range");
}

}   // namespace

Verdict meets_face(const PolyhedralSpace& space, const Subspace& y, const FaceDescriptor& face)
{
    check_face_inputs(space, y, face);
    const std::size_t k = face.vertex_indices.size();
    const std::size_t m = y.rank();
    const std::size_t n = space.dim();
    // Variables: λ_0..λ_{k-1} ≥ 0, c_0..c_{m-1} free.
    lp::Problem prob(k + m);
    for (std::size_t j = 0; j < m; ++j)
        prob.set_free(k + j);
    for (std::size_t i = 0; i < n; ++i)
    {
        QVector row(k + m, Rational(0));
        for (std::size_t a = 0; a < k; ++a)
            row[a] = space.vertices()[face.vertex_indices[a]][i];
        for (std::size_t j = 0; j < m; ++j)
            row[k + j] = -y.basis()[j][i];
        prob.add_row(std::move(row), lp::Sense::Equal, 0);
    }
    QVector sum(k + m, Rational(0));
    std::fill(sum.begin(), sum.begin() + static_cast<std::ptrdiff_t>(k), Rational(1));
    prob.add_row(std::move(sum), lp::Sense::Equal, 1);
    prob.maximize(QVector(k + m, Rational(0)));
    auto sol = prob.solve();
    Verdict v;
    v.decision = sol.optimal();
    if (v.decision)
        v.certificate = cert::ExactWitness{y.to_ambient(QVector(sol.x.begin() + static_cast<std::ptrdiff_t>(k), sol.x.end()))};
    return v;
}

Verdict meets_face_relint(const PolyhedralSpace& space, const Subspace& y, const FaceDescriptor& face)
{
    check_face_inputs(space, y, face);
    const std::size_t k = face.vertex_indices.size();
    const std::size_t m = y.rank();
    const std::size_t n = space.dim();
    // λ_v = μ_v + t with μ ≥ 0; variables μ (k), t (free), c (m, free). Maximize t.
    const std::size_t t_var = k;
    lp::Problem prob(k + 1 + m);
    prob.set_free(t_var);
    for (std::size_t j = 0; j < m; ++j)
        prob.set_free(k + 1 + j);
    for (std::size_t i = 0; i < n; ++i)
    {
        QVector row(k + 1 + m, Rational(0));
        Rational total = 0;
        for (std::size_t a = 0; a < k; ++a)
        {
            const Rational& c = space.vertices()[face.vertex_indices[a]][i];
            row[a] = c;
            total += c;
        }
        row[t_var] = total;
        for (std::size_t j = 0; j < m; ++j)
            row[k + 1 + j] = -y.basis()[j][i];
        prob.add_row(std::move(row), lp::Sense::Equal, 0);
    }
    QVector sum(k + 1 + m, Rational(0));
    std::fill(sum.begin(), sum.begin() + static_cast<std::ptrdiff_t>(k), Rational(1));
    sum[t_var] = static_cast<long>(k);
    prob.add_row(std::move(sum), lp::Sense::Equal, 1);
    QVector obj(k + 1 + m, Rational(0));
    obj[t_var] = 1;
    prob.maximize(std::move(obj));
    auto sol = prob.solve();
    Verdict v;
    if (!sol.optimal())
    {
        v.decision = false;
        v.note = "Y misses the face";
        return v;
    }
    v.decision = sol.objective > 0;
    v.certificate = cert::ExactWitness{y.to_ambient(QVector(sol.x.begin() + static_cast<std::ptrdiff_t>(k + 1), sol.x.end()))};
    v.note = "margin " + to_string(sol.objective);
    return v;
}

Verdict face_traces_distinct(const PolyhedralSpace& space, const Subspace& y)
{
    auto ball = restrict_ball(space, y);
    const std::size_t f = space.dual_extremes().size();
    std::vector<std::vector<std::size_t>> traces(f);
    for (std::size_t i = 0; i < f; ++i)
        traces[i] = face_trace(space, y, ball, i);
    for (std::size_t i = 0; i < f; ++i)
    {
        if (traces[i].empty())
            continue;
        for (std::size_t j = i + 1; j < f; ++j)
        {
            if (j == space.opposite_dual(i) || traces[j].empty())
                continue;
            if (traces[i] == traces[j])
            {
                Verdict v;
                v.decision = false;
                v.certificate = cert::FacetPair{i, j};
                return v;
            }
        }
    }
    Verdict v;
    v.decision = true;
    return v;
}

}   // namespace coprox
