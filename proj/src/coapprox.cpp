#include "coprox/coapprox.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "coprox/errors.hpp"
#include "coprox/exact_linalg.hpp"
#include "coprox/lp.hpp"
#include "coprox/orthogonality.hpp"

namespace coprox {

std::size_t default_lp_cap()
{
    constexpr std::size_t fallback = 1'000'000;
    const char* env = std::getenv("COAPPROX_LP_CAP");
    if (env == nullptr || *env == '\0')
        return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
        return fallback;
    return static_cast<std::size_t>(v);
}

Verdict verify_eps_best_coapprox(const PolyhedralSpace& space, const Subspace& y, const QVector& x,
                                 const QVector& y0, const Epsilon& eps)
{
    if (x.size() != space.dim() || y0.size() != space.dim())
        throw DimensionMismatchError("vector length does not match the space dimension");
    if (!y.contains(y0))
        throw InputError("candidate y0 does not lie in Y");
    if (x == y0)
    {
        Verdict v;
        v.decision = true;
        v.note = "degenerate: x = y0";
        return v;
    }
    require_proper(y);
    return subspace_eps_orthogonal(space, restrict_ball(space, y), subtract(x, y0), eps);
}

Verdict verify_best_coapprox(const PolyhedralSpace& space, const Subspace& y, const QVector& x, const QVector& y0)
{
    return verify_eps_best_coapprox(space, y, x, y0, Epsilon());
}

namespace {

/**
 * Depth-first search over per-facet selections (g⁻, g⁺) ∈ A(Q)², one
 * representative Q per ± pair, on each normalizing branch h_k(z) = 1.
 * Feasibility mode stops at the first feasible leaf; defect mode minimizes
 * ε with branch-and-bound and keeps the first minimum found.
 */
class SelectionSearch
{
    public:
        SelectionSearch(const PolyhedralSpace& space, const RestrictedBall& ball, bool with_eps,
                        const SearchLimits& limits)
            : space_(space), ball_(ball), with_eps_(with_eps), limits_(limits), reps_(ball.representatives())
        {
        }

        std::size_t solves() const { return solves_; }

        /** Feasibility: lexicographically least z of the first feasible leaf. */
        std::optional<QVector> find_direction()
        {
            for (auto k : branches())
            {
                auto root = branch_problem(k);
                if (auto leaf = descend_feasible(root, 0))
                {
                    auto sol = lp::lexicographic_minimum(*leaf, space_.dim());
                    if (!sol.optimal())
                        throw ConsistencyError("feasible selection leaf has no lexicographic minimum");
                    return QVector(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(space_.dim()));
                }
            }
            return std::nullopt;
        }

        /** Defect mode: returns (ε*, z*). */
        std::pair<Rational, QVector> minimize_eps()
        {
            for (auto k : branches())
                descend_defect(branch_problem(k), 0);
            if (!best_)
                throw ConsistencyError("defect search found no feasible selection");
            return {*best_, best_z_};
        }

    private:
        std::vector<std::size_t> branches() const
        {
            std::vector<std::size_t> out;
            for (std::size_t k = 0; k < space_.dual_extremes().size(); ++k)
                if (k < space_.opposite_dual(k))
                    out.push_back(k);
            return out;
        }

        std::size_t num_vars() const { return space_.dim() + (with_eps_ ? 1 : 0); }

        QVector row_of(const QVector& g, int eps_coeff) const
        {
            QVector row(num_vars(), Rational(0));
            std::copy(g.begin(), g.end(), row.begin());
            if (with_eps_)
                row[space_.dim()] = eps_coeff;
            return row;
        }

        lp::Problem branch_problem(std::size_t k) const
        {
            const auto& duals = space_.dual_extremes();
            lp::Problem p(num_vars());
            for (std::size_t i = 0; i < space_.dim(); ++i)
                p.set_free(i);
            p.add_row(row_of(duals[k], 0), lp::Sense::Equal, 1);
            for (std::size_t j = 0; j < duals.size(); ++j)
                if (j != k && j != space_.opposite_dual(k))
                    p.add_row(row_of(duals[j], 0), lp::Sense::LessEqual, 1);
            if (with_eps_)
            {
                QVector obj(num_vars(), Rational(0));
                obj[space_.dim()] = 1;
                p.minimize(std::move(obj));
            }
            return p;
        }

        lp::Solution solve(const lp::Problem& p)
        {
            if (++solves_ > limits_.lp_cap)
                throw CapExceededError("selection search exceeded the LP cap of " + std::to_string(limits_.lp_cap)
                                       + " solves (set COAPPROX_LP_CAP to raise it)");
            return p.solve();
        }

        /** Child problem with g⁻(z) ≤ ε and g⁺(z) ≥ −ε (ε = 0 in feasibility mode). */
        lp::Problem child(const lp::Problem& parent, std::size_t g_minus, std::size_t g_plus) const
        {
            const auto& duals = space_.dual_extremes();
            lp::Problem c = parent;
            c.add_row(row_of(duals[g_minus], -1), lp::Sense::LessEqual, 0);
            c.add_row(row_of(duals[g_plus], 1), lp::Sense::GreaterEqual, 0);
            return c;
        }

        std::optional<lp::Problem> descend_feasible(const lp::Problem& p, std::size_t depth)
        {
            if (!solve(p).optimal())
                return std::nullopt;
            if (depth == reps_.size())
                return p;
            const auto& active = ball_.facets[reps_[depth]].active;
            for (auto gm : active)
                for (auto gp : active)
                    if (auto leaf = descend_feasible(child(p, gm, gp), depth + 1))
                        return leaf;
            return std::nullopt;
        }

        void descend_defect(const lp::Problem& p, std::size_t depth)
        {
            auto sol = solve(p);
            if (!sol.optimal())
                return;
            if (best_ && sol.objective >= *best_)
                return;
            if (depth == reps_.size())
            {
                best_ = sol.objective;
                best_z_.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(space_.dim()));
                return;
            }
            const auto& active = ball_.facets[reps_[depth]].active;
            for (auto gm : active)
                for (auto gp : active)
                    descend_defect(child(p, gm, gp), depth + 1);
        }

        const PolyhedralSpace& space_;
        const RestrictedBall& ball_;
        bool with_eps_;
        SearchLimits limits_;
        std::vector<std::size_t> reps_;
        std::size_t solves_ = 0;
        std::optional<Rational> best_;
        QVector best_z_;
};

void check_subspace(const PolyhedralSpace& space, const Subspace& y)
{
    if (y.ambient_dim() != space.dim())
        throw DimensionMismatchError("subspace ambient dimension does not match the space");
    require_proper(y);
}

}   // namespace

std::optional<QVector> exists_orthogonal_direction(const PolyhedralSpace& space, const Subspace& y,
                                                   const SearchLimits& limits)
{
    check_subspace(space, y);
    auto ball = restrict_ball(space, y);
    SelectionSearch search(space, ball, false, limits);
    return search.find_direction();
}

DefectReport coapprox_defect(const PolyhedralSpace& space, const Subspace& y, const SearchLimits& limits)
{
    check_subspace(space, y);
    auto ball = restrict_ball(space, y);
    SelectionSearch search(space, ball, true, limits);
    auto [eps, z] = search.minimize_eps();

    DefectReport report;
    report.delta = eps;
    report.direction = z;
    report.lp_solves = search.solves();
    Rational nz = space.norm(z);
    Rational worst = 0;
    for (const auto& f : ball.facets)
    {
        Rational d = facet_interval(space, f, z).distance_to_zero() / nz;
        worst = std::max(worst, d);
        report.facet_distances.push_back(d);
    }
    if (worst != eps)
        throw ConsistencyError("defect LP optimum " + to_string(eps) + " differs from the facet distance "
                               + to_string(worst) + " at its minimizer");
    return report;
}

Verdict decide_anti(const PolyhedralSpace& space, const Subspace& y, const SearchLimits& limits)
{
    auto z = exists_orthogonal_direction(space, y, limits);
    Verdict v;
    v.decision = !z.has_value();
    if (z)
    {
        v.certificate = cert::Direction{*z};
        v.note = "Y is Birkhoff-James orthogonal to the direction";
    }
    return v;
}

Verdict decide_strong_anti(const PolyhedralSpace& space, const Subspace& y, const SearchLimits& limits)
{
    check_subspace(space, y);
    auto facets = enumerate_facets(space);

    // Route A: relint of every facet (one per ± pair; Y is symmetric).
    std::vector<QVector> witnesses(facets.size());
    std::optional<std::size_t> missed;
    for (std::size_t i = 0; i < facets.size() && !missed; ++i)
    {
        std::size_t opp = space.opposite_dual(i);
        if (opp < i)
            continue;
        auto r = meets_face_relint(space, y, facets[i]);
        if (!r.decision)
        {
            missed = i;
            break;
        }
        witnesses[i] = std::get<cert::ExactWitness>(r.certificate).point;
        witnesses[opp] = negated(witnesses[i]);
    }
    const bool route_a = !missed.has_value();

    // Route B: the coapproximation defect equals 1.
    auto defect = coapprox_defect(space, y, limits);
    const bool route_b = defect.delta == 1;
    if (route_a != route_b)
        throw ConsistencyError("strong anti-coproximinality routes disagree: relint route says "
                               + std::string(route_a ? "true" : "false") + ", defect = " + to_string(defect.delta));

    Verdict v;
    v.decision = route_a;
    v.note = "relint and defect routes agree; defect = " + to_string(defect.delta);
    if (route_a)
        v.certificate = cert::ExactWitnessList{std::move(witnesses)};
    else
        v.certificate = cert::MissedFacet{*missed};
    return v;
}

Verdict decide_strong_anti(const LpSpace& space, const Subspace& y)
{
    if (y.ambient_dim() != space.dim())
        throw DimensionMismatchError("subspace ambient dimension does not match the space");
    require_proper(y);
    Verdict v;
    v.decision = false;
    v.note = "strictly convex space: every unit vector is rotund, and a proper Y misses some of them";
    return v;
}

Verdict anti_via_smooth_span(const PolyhedralSpace& space, const Subspace& y, const std::vector<QVector>& probes)
{
    std::vector<QVector> functionals;
    for (const auto& p : probes)
    {
        if (!y.contains(p))
            throw InputError("probe does not lie in Y");
        auto j = space.support_set(p);
        if (!j.is_singleton())
            throw InputError("probe is not a smooth point");
        functionals.push_back(j.functionals.front());
    }
    std::sort(functionals.begin(), functionals.end());
    functionals.erase(std::unique(functionals.begin(), functionals.end()), functionals.end());
    const std::size_t r = functionals.empty() ? 0 : rank(functionals);
    Verdict v;
    v.decision = r == space.dim();
    v.conclusive = v.decision;
    cert::FunctionalList list;
    for (const auto& f : functionals)
        list.functionals.push_back(to_double(f));
    v.certificate = std::move(list);
    v.note = "rank " + std::to_string(r) + " of " + std::to_string(space.dim());
    if (!v.decision)
        v.note += "; inconclusive";
    return v;
}

Verdict anti_via_smooth_span(const LpSpace& space, const Subspace& y, const std::vector<RVector>& probes, double tol)
{
    cert::FunctionalList list;
    for (const auto& p : probes)
    {
        if (!y.contains(p, tol))
            throw InputError("probe does not lie in Y");
        list.functionals.push_back(space.support_set(p).functionals.front());
    }
    std::size_t r = 0;
    if (!list.functionals.empty())
    {
        Eigen::MatrixXd m(static_cast<Eigen::Index>(list.functionals.size()), static_cast<Eigen::Index>(space.dim()));
        for (std::size_t i = 0; i < list.functionals.size(); ++i)
            for (std::size_t j = 0; j < space.dim(); ++j)
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = list.functionals[i][j];
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        const auto& s = svd.singularValues();
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > tol * std::max(1.0, s(0)))
                ++r;
    }
    Verdict v;
    v.decision = r == space.dim();
    v.conclusive = v.decision;
    v.certificate = std::move(list);
    v.note = "numeric rank " + std::to_string(r) + " of " + std::to_string(space.dim());
    if (!v.decision)
        v.note += "; inconclusive";
    return v;
}

namespace {

void require_sup_norm(const PolyhedralSpace& space)
{
    if (space.dual_extremes() != PolyhedralSpace::linf(space.dim()).dual_extremes())
        throw InputError("coordinate dominance needs a sup-norm (linf) ambient space");
}

}   // namespace

Verdict coordinate_dominance(const PolyhedralSpace& space, const Subspace& y, std::size_t r)
{
    require_sup_norm(space);
    check_subspace(space, y);
    const std::size_t n = space.dim();
    const std::size_t m = y.rank();
    if (r >= n)
        throw InputError("coordinate index out of range");
    // Variables c (m, free), t (free). y = Bc; y_r ± y_i ≥ t for i ≠ r; y_r ≤ 1. Maximize t.
    const std::size_t t = m;
    lp::Problem p(m + 1);
    p.set_all_free();
    auto coord_row = [&](std::size_t i) {
        QVector row(m + 1, Rational(0));
        for (std::size_t j = 0; j < m; ++j)
            row[j] = y.basis()[j][i];
        return row;
    };
    QVector yr = coord_row(r);
    for (std::size_t i = 0; i < n; ++i)
    {
        if (i == r)
            continue;
        QVector yi = coord_row(i);
        for (int s : {1, -1})
        {
            QVector row(m + 1, Rational(0));
            for (std::size_t j = 0; j < m; ++j)
                row[j] = yr[j] + s * yi[j];
            row[t] = -1;
            p.add_row(std::move(row), lp::Sense::GreaterEqual, 0);
        }
    }
    p.add_row(yr, lp::Sense::LessEqual, 1);
    QVector obj(m + 1, Rational(0));
    obj[t] = 1;
    p.maximize(std::move(obj));
    auto sol = p.solve();
    if (!sol.optimal())
        throw ConsistencyError("dominance LP is not bounded-feasible");
    Verdict v;
    v.decision = sol.objective > 0;
    v.note = "margin " + to_string(sol.objective);
    if (v.decision)
        v.certificate = cert::ExactWitness{y.to_ambient(QVector(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(m)))};
    return v;
}

Verdict coordinate_dominance_all(const PolyhedralSpace& space, const Subspace& y)
{
    cert::ExactWitnessList list;
    for (std::size_t r = 0; r < space.dim(); ++r)
    {
        auto v = coordinate_dominance(space, y, r);
        if (!v.decision)
        {
            Verdict out;
            out.decision = false;
            out.note = "coordinate " + std::to_string(r) + " is not dominated by any vector of Y";
            return out;
        }
        list.points.push_back(std::get<cert::ExactWitness>(v.certificate).point);
    }
    Verdict out;
    out.decision = true;
    out.certificate = std::move(list);
    return out;
}

bool NecessaryReport::any_failed() const
{
    return std::any_of(checks.begin(), checks.end(),
                       [](const NecessaryCheck& c) { return c.passed.has_value() && !*c.passed; });
}

NecessaryReport necessary_checks(const PolyhedralSpace& space, const Subspace& y)
{
    check_subspace(space, y);
    auto facets = enumerate_facets(space);
    NecessaryReport report;

    {
        NecessaryCheck c{"maximal-face intersection", true, "Y meets every facet"};
        for (std::size_t i = 0; i < facets.size(); ++i)
            if (!meets_face(space, y, facets[i]).decision)
            {
                c.passed = false;
                c.detail = "Y misses facet " + std::to_string(i);
                break;
            }
        report.checks.push_back(std::move(c));
    }
    {
        auto t = face_traces_distinct(space, y);
        NecessaryCheck c{"face-trace distinctness", t.decision, "distinct facets have distinct traces on Y"};
        if (!t.decision)
        {
            auto pair = std::get<cert::FacetPair>(t.certificate);
            c.detail = "facets " + std::to_string(pair.first) + " and " + std::to_string(pair.second)
                       + " have the same trace on Y";
        }
        report.checks.push_back(std::move(c));
    }
    {
        NecessaryCheck c{"rotund points inside Y", true, "no rotund points on the unit sphere"};
        for (const auto& v : space.vertices())
        {
            if (!is_rotund_point(space, v))
                continue;
            if (!y.contains(v))
            {
                c.passed = false;
                c.detail = "rotund point outside Y";
                break;
            }
            c.detail = "every rotund point lies in Y";
        }
        report.checks.push_back(std::move(c));
    }
    {
        NecessaryCheck c{"shared supporting functional", true,
                         "each facet centroid shares a supporting functional with some y in Y"};
        for (std::size_t i = 0; i < facets.size(); ++i)
        {
            QVector centroid(space.dim(), Rational(0));
            for (auto k : facets[i].vertex_indices)
                centroid = add(centroid, space.vertices()[k]);
            centroid = scaled(centroid, Rational(1) / static_cast<long>(facets[i].vertex_indices.size()));
            auto meet = meets_face(space, y, facets[i]);
            bool found = false;
            if (meet.decision)
            {
                const auto& w = std::get<cert::ExactWitness>(meet.certificate).point;
                found = shared_support_functional(space, centroid, w).has_value();
            }
            if (!found)
            {
                c.passed = false;
                c.detail = "no y in Y shares a supporting functional with the centroid of facet " + std::to_string(i);
                break;
            }
        }
        report.checks.push_back(std::move(c));
    }
    return report;
}

NecessaryReport necessary_checks(const LpSpace& space, const Subspace& y)
{
    if (y.ambient_dim() != space.dim())
        throw DimensionMismatchError("subspace ambient dimension does not match the space");
    require_proper(y);
    NecessaryReport report;
    report.checks.push_back({"maximal-face intersection", std::nullopt, "not applicable (non-polyhedral)"});
    report.checks.push_back({"face-trace distinctness", std::nullopt, "not applicable (non-polyhedral)"});
    report.checks.push_back({"rotund points inside Y", false,
                             "every unit vector is rotund and the proper subspace Y misses some"});
    report.checks.push_back({"shared supporting functional", std::nullopt, "not applicable (non-polyhedral)"});
    return report;
}

Subspace lift_sup_product(const Subspace& y, std::size_t copies)
{
    if (copies == 0)
        throw InputError("lift: copies must be positive");
    const std::size_t n = y.ambient_dim();
    std::vector<QVector> basis;
    for (std::size_t c = 0; c < copies; ++c)
        for (const auto& b : y.basis())
        {
            QVector v(n * copies, Rational(0));
            std::copy(b.begin(), b.end(), v.begin() + static_cast<std::ptrdiff_t>(c * n));
            basis.push_back(std::move(v));
        }
    return Subspace(n * copies, std::move(basis));
}

}   // namespace coprox
