// Acceptance run: one timed PASS/FAIL line per criterion; nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "coprox/coapprox.hpp"
#include "coprox/operators.hpp"
#include "coprox/orthogonality.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace testing;

namespace {

/** Collects failed conditions for one criterion. */
class Tally
{
    public:
        void require(bool ok, const std::string& what)
        {
            ++checks_;
            if (!ok && failures_.size() < 5)
                failures_.push_back(what);
            failed_ += !ok;
        }

        bool ok() const { return failed_ == 0; }

        std::string summary() const
        {
            std::ostringstream s;
            s << checks_ << " checks";
            if (failed_)
            {
                s << ", " << failed_ << " failed:";
                for (const auto& f : failures_)
                    s << " [" << f << "]";
            }
            return s.str();
        }

    private:
        std::size_t checks_ = 0;
        std::size_t failed_ = 0;
        std::vector<std::string> failures_;
};

bool rel_close(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

double window_margin(double lo, double hi, double bound, double scale)
{
    double inside = std::min(hi + bound, bound - lo);
    double gap = std::max(lo - bound, -bound - hi);
    return std::max(std::abs(inside), std::abs(gap)) / scale;
}

// 1. l_p supporting functionals against their closed forms.
void lp_support(Tally& t)
{
    for (double p : {3.0, 4.0})
    {
        LpSpace s(4, p);
        auto check = [&](const RVector& x, const RVector& expected, const char* label) {
            auto j = s.support_set(x);
            t.require(j.is_singleton(), std::string(label) + " singleton");
            for (std::size_t i = 0; i < 4; ++i)
            {
                const double got = j.functionals.front()[i];
                t.require(expected[i] == 0 ? got == 0 : rel_close(got, expected[i], 1e-12),
                          std::string(label) + " p=" + std::to_string(p) + " coordinate " + std::to_string(i));
            }
        };
        const double q = 1.0 - 1.0 / p;
        const double c = std::pow(3.0, -q);
        check({1, 1, 1, 0}, {c, c, c, 0}, "(1,1,1,0)");
        const double d = std::pow(1 + std::pow(2.0, p) + std::pow(3.0, p), q);
        check({1, 2, 3, 0}, {1 / d, std::pow(2.0, p - 1) / d, std::pow(3.0, p - 1) / d, 0}, "(1,2,3,0)");
        const double f = std::pow(std::pow(2.0, p) + 1, q);
        check({2, 1, 0, 0}, {std::pow(2.0, p - 1) / f, 1 / f, 0, 0}, "(2,1,0,0)");
    }
}

// 2. The sup-norm plane span{(3,0,2),(0,3,2)}.
void flagship_plane(Tally& t)
{
    auto s = PolyhedralSpace::linf(3);
    auto y = flagship();
    t.require(decide_anti(s, y).decision, "anti");
    t.require(decide_strong_anti(s, y).decision, "strong anti (both routes, cross-checked)");
    bool relint_all = true;
    for (const auto& f : enumerate_facets(s))
        relint_all = relint_all && meets_face_relint(s, y, f).decision;
    t.require(relint_all, "relative interior route");
    t.require(coapprox_defect(s, y).delta == 1, "defect route");
}

// 3. The l1 coordinate plane meets every facet but is not strongly anti-coproximinal.
void l1_plane_counterexample(Tally& t)
{
    auto s = PolyhedralSpace::l1(3);
    auto y = l1_plane();
    auto facets = enumerate_facets(s);
    t.require(facets.size() == 8, "8 facets");
    std::size_t missed_relint = 0;
    for (const auto& f : facets)
    {
        t.require(meets_face(s, y, f).decision, "meets facet");
        missed_relint += !meets_face_relint(s, y, f).decision;
    }
    t.require(missed_relint >= 1, "some relative interior missed");
    Gen g(301);
    for (int i = 0; i < 50; ++i)
    {
        auto x = g.qvector(3, 5, 7);
        t.require(verify_best_coapprox(s, y, x, {x[0], x[1], Rational(0)}).decision, "coordinate projection");
    }
    t.require(!decide_strong_anti(s, y).decision, "not strongly anti");
}

// 4. Hexagonal prism-pyramid.
void prism_pyramid(Tally& t)
{
    auto s = PolyhedralSpace::from_vertices(prism_pyramid_rational());
    auto facets = enumerate_facets(s);
    t.require(facets.size() == 18, "18 facets");
    auto brute = oracle::brute_facets(prism_pyramid_real(), 3);
    t.require(brute.size() == 18, "hull oracle finds 18 facets");
    for (const auto& f : facets)
    {
        RVector g = to_double(f.functional);
        g[1] *= 2.0 / std::sqrt(3.0);
        bool found = false;
        for (const auto& b : brute)
            found = found || (std::abs(b[0] - g[0]) < 1e-9 && std::abs(b[1] - g[1]) < 1e-9 && std::abs(b[2] - g[2]) < 1e-9);
        t.require(found, "facet matches the hull oracle");
    }
    t.require(!decide_strong_anti(s, l1_plane()).decision, "span{e1,e2}");
    Gen g(401);
    for (int i = 0; i < 49; ++i)
        t.require(!decide_strong_anti(s, g.subspace(3, 2, 4)).decision, "random plane");
}

// 5. Sup-norm sequence-space criteria.
void sequence_spaces(Tally& t)
{
    for (std::size_t n = 4; n <= 8; ++n)
    {
        auto s = PolyhedralSpace::linf(n);
        t.require(coordinate_dominance_all(s, c0_plane(n)).decision, "sum-zero dominance n=" + std::to_string(n));
        t.require(decide_strong_anti(s, c0_plane(n)).decision, "sum-zero strong anti n=" + std::to_string(n));
    }
    for (std::size_t n = 3; n <= 6; ++n)
    {
        auto s = PolyhedralSpace::linf(n);
        t.require(coordinate_dominance_all(s, trig_plane(n)).decision, "trig dominance n=" + std::to_string(n));
        t.require(decide_strong_anti(s, trig_plane(n)).decision, "trig strong anti n=" + std::to_string(n));
    }
    Gen g(501);
    std::size_t positive = 0;
    for (int i = 0; i < 100; ++i)
    {
        std::size_t n = static_cast<std::size_t>(3 + i % 4);
        auto s = PolyhedralSpace::linf(n);
        auto y = g.subspace(n, static_cast<std::size_t>(g.integer(1, static_cast<long>(n) - 1)), 2);
        bool dom = coordinate_dominance_all(s, y).decision;
        bool anti = decide_anti(s, y).decision;
        bool strong = decide_strong_anti(s, y).decision;
        t.require(dom == anti && anti == strong, "three-way equivalence");
        positive += dom;
    }
    t.require(positive > 0, "some random subspace is dominant");
}

// 6. Relative-interior route equals defect route on random polytopes.
void route_agreement(Tally& t)
{
    Gen g(601);
    std::size_t total = 0, strong = 0;
    for (int k = 0; k < 30; ++k)
    {
        std::size_t n = static_cast<std::size_t>(2 + k % 3);
        auto extra = static_cast<std::size_t>(g.integer(0, 2));
        auto s = k % 2 ? g.polytope(n, extra) : g.facet_polytope(n, extra);
        int count = k < 20 ? 7 : 6;
        for (int i = 0; i < count; ++i)
        {
            auto m = g.integer(0, 2) ? n - 1 : static_cast<std::size_t>(g.integer(1, static_cast<long>(n) - 1));
            auto y = g.subspace(n, m, 2);
            bool route_a = true;
            for (const auto& f : enumerate_facets(s))
                route_a = route_a && meets_face_relint(s, y, f).decision;
            bool route_b = coapprox_defect(s, y).delta == 1;
            t.require(route_a == route_b, "routes agree");
            bool decided = decide_strong_anti(s, y).decision;
            t.require(decided == route_a, "decider matches");
            if (decided)
                t.require(decide_anti(s, y).decision, "strong implies anti");
            ++total;
            strong += decided;
        }
    }
    t.require(total == 200, "200 subspaces");
    t.require(strong > 0, "both verdicts occur");
}

// 7. Orthogonality properties and oracle agreement.
void orthogonality_suite(Tally& t)
{
    Gen g(701);
    std::vector<PolyhedralSpace> polys = {PolyhedralSpace::linf(3), PolyhedralSpace::l1(3),
                                          PolyhedralSpace::from_vertices(prism_pyramid_rational()),
                                          g.polytope(3, 3)};
    for (const auto& s : polys)
    {
        std::size_t compared = 0;
        for (int i = 0; i < 500; ++i)
        {
            auto x = g.nonzero_qvector(3, 3, 2), y = g.nonzero_qvector(3, 3, 2);
            Rational a = g.rational(3, 2), b = g.rational(3, 2);
            if (a == 0)
                a = 1;
            if (b == 0)
                b = -1;
            long k1 = g.integer(0, 9), k2 = g.integer(k1, 9);
            Epsilon e1(q(k1, 10)), e2(q(k2, 10));
            bool bj = bj_orthogonal(s, x, y).decision;
            bool be = eps_orthogonal(s, x, y, e1).decision;
            t.require(bj_orthogonal(s, scaled(x, a), scaled(y, b)).decision == bj, "homogeneity");
            t.require(eps_orthogonal(s, scaled(x, a), scaled(y, b), e1).decision == be, "eps homogeneity");
            t.require(!be || eps_orthogonal(s, x, y, e2).decision, "monotonicity");
            t.require(eps_orthogonal(s, x, y, Epsilon()).decision == bj, "eps = 0 coincidence");
            t.require(!eps_orthogonal(s, x, x, e1).decision, "never self-orthogonal");
            t.require(eps_orthogonal(s, x, QVector(3, Rational(0)), e1).decision, "orthogonal to 0");
            auto iv = support_interval(s, x, y);
            double ny = to_double(s.norm(y));
            if (window_margin(to_double(iv.lo), to_double(iv.hi), e1.value() * ny, ny) > 1e-6)
            {
                t.require(oracle_eps_orthogonal(Space{s}, to_double(x), to_double(y), e1.value()).decision == be,
                          "oracle agreement");
                ++compared;
            }
        }
        t.require(compared >= 250, "oracle comparisons");
    }
    for (double p : {1.5, 3.0, 4.0})
    {
        LpSpace s(3, p);
        LpProductSpace prod(LpSpace(2, p), 2);
        for (int i = 0; i < 500; ++i)
        {
            RVector x = g.rvector(3, 2.0), y = g.rvector(3, 2.0);
            double a = g.coin() ? g.real(0.2, 3) : -g.real(0.2, 3);
            double b = g.coin() ? g.real(0.2, 3) : -g.real(0.2, 3);
            double e1 = g.real(0, 0.9), e2 = g.real(e1, 0.95);
            auto iv = support_interval(s, x, y);
            if (window_margin(iv.lo, iv.hi, e1 * s.norm(y), s.norm(y)) > 1e-6)
            {
                RVector ax = x, by = y;
                for (auto& c : ax)
                    c *= a;
                for (auto& c : by)
                    c *= b;
                bool be = eps_orthogonal(s, x, y, Epsilon::from_double(e1)).decision;
                t.require(eps_orthogonal(s, ax, by, Epsilon::from_double(e1)).decision == be, "l_p homogeneity");
                t.require(!be || eps_orthogonal(s, x, y, Epsilon::from_double(e2)).decision, "l_p monotonicity");
                bool bj = bj_orthogonal(s, x, y).decision;
                if (window_margin(iv.lo, iv.hi, 0.0, s.norm(y)) > 1e-6)
                    t.require(eps_orthogonal(s, x, y, Epsilon()).decision == bj, "l_p eps = 0 coincidence");
                t.require(oracle_eps_orthogonal(Space{s}, x, y, e1).decision == be, "l_p oracle agreement");
            }
            t.require(!eps_orthogonal(s, x, x, Epsilon::from_double(e1)).decision, "l_p never self-orthogonal");

            RVector px = g.rvector(4, 2.0), py = g.rvector(4, 2.0);
            auto pv = support_interval(prod, px, py);
            if (window_margin(pv.lo, pv.hi, e1 * prod.norm(py), prod.norm(py)) > 1e-6)
                t.require(oracle_eps_orthogonal(Space{prod}, px, py, e1).decision ==
                              eps_orthogonal(prod, px, py, Epsilon::from_double(e1)).decision,
                          "product oracle agreement");
            t.require(!eps_orthogonal(prod, px, px, Epsilon::from_double(e1)).decision,
                      "product never self-orthogonal");
        }
    }
}

Matrix random_orthogonal(Gen& g, Eigen::Index n)
{
    Eigen::HouseholderQR<Matrix> qr(g.matrix(n, n));
    return qr.householderQ();
}

Matrix with_singular_values(Gen& g, const std::vector<double>& s)
{
    auto n = static_cast<Eigen::Index>(s.size());
    Matrix d = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        d(i, i) = s[static_cast<std::size_t>(i)];
    return random_orthogonal(g, n) * d * random_orthogonal(g, n).transpose();
}

// 8. Spectral operator suite.
void operator_suite(Tally& t)
{
    Gen g(801);
    for (int i = 0; i < 100; ++i)
    {
        Eigen::Index n = g.integer(2, 4);
        std::vector<double> s(static_cast<std::size_t>(n));
        std::size_t top = static_cast<std::size_t>(g.integer(1, 2));
        for (std::size_t k = 0; k < s.size(); ++k)
            s[k] = k < top ? 2.0 : g.real(0.1, 1.9);
        Matrix tm = with_singular_values(g, s), am = g.matrix(n, n);
        auto w = omega_interval(tm, am);
        double nt = spectral_norm(tm), na = spectral_norm(am);
        auto r = oracle::sampled_range(
            attainment(tm).basis, [&](const Eigen::VectorXd& x) { return (am * x).dot(tm * x) / (nt * na); }, 10000,
            static_cast<std::uint64_t>(i));
        t.require(std::abs(r.first - w.lo) < 1e-6 && std::abs(r.second - w.hi) < 1e-6, "omega vs sampling");
    }
    std::size_t compared = 0;
    for (int i = 0; i < 100; ++i)
    {
        Eigen::Index n = g.integer(2, 4);
        std::vector<double> s(static_cast<std::size_t>(n));
        s[0] = 2.0;
        for (std::size_t k = 1; k < s.size(); ++k)
            s[k] = g.real(0.1, 1.8);
        Matrix tm = with_singular_values(g, s), am = g.matrix(n, n);
        t.require(is_ase(tm), "constructed T is ASE");
        double eps = g.real(0, 0.5);
        auto w = omega_interval(tm, am);
        if (window_margin(w.lo, w.hi, eps, 1.0) < 1e-6)
            continue;
        t.require(bs_reduce(tm, am, eps).decision == op_eps_orthogonal(tm, am, eps).decision, "reduction agreement");
        ++compared;
    }
    t.require(compared >= 90, "reduction comparisons");

    Matrix d(2, 2), e12(2, 2);
    d << 2, 0, 0, 1;
    e12 << 0, 1, 0, 0;
    Matrix id = Matrix::Identity(2, 2);
    t.require(op_bj_orthogonal(d, e12).decision, "diag(2,1) orthogonal to e1e2^T");
    t.require(!op_bj_orthogonal(d, id).decision, "diag(2,1) not orthogonal to I");
    auto o = operator_oracle(d, id, 0.0);
    auto* lam = std::get_if<cert::ViolatingLambda>(&o.certificate);
    t.require(!o.decision && lam && std::abs(lam->lambda + 1.5) < 0.01, "oracle lambda near -1.5");

    for (int i = 0; i < 20; ++i)
    {
        RVector x = g.rvector(3), y = g.rvector(3, 2.0);
        double nx = std::sqrt(dot(x, x));
        for (auto& c : x)
            c /= nx;
        Matrix a = rank_one_through(x, y);
        Eigen::Map<Eigen::VectorXd> xv(x.data(), 3), yv(y.data(), 3);
        t.require((a * xv - yv).norm() < 1e-10, "Ax = y");
        t.require(std::abs(spectral_norm(a) - yv.norm()) < 1e-10, "norm |y||x|");
    }
}

// 9. Sup-product lifts preserve both verdicts.
void lift_transfer(Tally& t)
{
    struct Case
    {
        PolyhedralSpace space;
        Subspace y;
        bool anti, strong;
    };
    std::vector<Case> cases = {{PolyhedralSpace::linf(3), flagship(), true, true},
                               {PolyhedralSpace::l1(3), l1_plane(), false, false}};
    for (const auto& c : cases)
    {
        t.require(decide_anti(c.space, c.y).decision == c.anti, "base anti");
        t.require(decide_strong_anti(c.space, c.y).decision == c.strong, "base strong anti");
        for (std::size_t k : {2u, 3u})
        {
            auto s = PolyhedralSpace::sup_product(c.space, k);
            auto y = lift_sup_product(c.y, k);
            t.require(decide_anti(s, y).decision == c.anti, "lifted anti k=" + std::to_string(k));
            t.require(decide_strong_anti(s, y).decision == c.strong, "lifted strong anti k=" + std::to_string(k));
        }
    }
}

struct Criterion
{
    int id;
    const char* title;
    double budget_seconds;
    std::function<void(Tally&)> body;
};

}   // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "l_p supporting functionals match closed forms", 1, lp_support},
        {2, "sup-norm plane span{(3,0,2),(0,3,2)} is strongly anti-coproximinal", 1, flagship_plane},
        {3, "l1 coordinate plane meets every facet yet is not strongly anti-coproximinal", 1,
         l1_plane_counterexample},
        {4, "prism-pyramid: 18 facets, no strongly anti-coproximinal plane", 10, prism_pyramid},
        {5, "sequence-space dominance criteria and three-way equivalence", 30, sequence_spaces},
        {6, "relative-interior and defect routes agree on random polytopes", 300, route_agreement},
        {7, "orthogonality properties and oracle agreement", 120, orthogonality_suite},
        {8, "spectral operator suite", 60, operator_suite},
        {9, "sup-product lifts preserve verdicts", 10, lift_transfer},
    };
    int failed = 0;
    for (const auto& c : criteria)
    {
        Tally t;
        auto start = std::chrono::steady_clock::now();
        try
        {
            c.body(t);
        }
        catch (const std::exception& e)
        {
            t.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_budget = secs < c.budget_seconds;
        bool pass = t.ok() && in_budget;
        failed += !pass;
        std::printf("criterion %d: %s (%.3f s, budget %.0f s) %s - %s\n", c.id, pass ? "PASS" : "FAIL", secs,
                    c.budget_seconds, c.title, (t.summary() + (in_budget ? "" : ", over budget")).c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
