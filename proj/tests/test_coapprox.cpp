#include <doctest.h>

#include <algorithm>

#include "coprox/coapprox.hpp"
#include "coprox/errors.hpp"
#include "coprox/orthogonality.hpp"
#include "support.hpp"

using namespace testing;

namespace {

std::optional<bool> check_named(const NecessaryReport& r, const std::string& name)
{
    for (const auto& c : r.checks)
        if (c.name == name)
            return c.passed;
    FAIL("missing check " << name);
    return std::nullopt;
}

QVector abs_v(QVector v)
{
    for (auto& a : v)
        if (a < 0)
            a = -a;
    return v;
}

}   // namespace

TEST_SUITE("coapprox")
{
    TEST_CASE("best coapproximation on the l1 coordinate plane")
    {
        auto s = PolyhedralSpace::l1(3);
        QVector x = {q("0.3"), q("-0.7"), q("0.5")}, y0 = {q("0.3"), q("-0.7"), q(0)};
        CHECK(verify_best_coapprox(s, l1_plane(), x, y0).decision);
        Gen g(41);
        for (int i = 0; i < 50; ++i)
        {
            auto t = g.qvector(3, 5, 4);
            QVector p = {t[0], t[1], q(0)};
            CHECK(verify_best_coapprox(s, l1_plane(), t, p).decision);
        }
        CHECK_THROWS_AS(verify_best_coapprox(s, l1_plane(), x, x), InputError);
    }

    TEST_CASE("no best coapproximations for the flagship plane")
    {
        auto s = PolyhedralSpace::linf(3);
        Gen g(42);
        for (int i = 0; i < 50; ++i)
        {
            auto x = g.qvector(3, 4, 3);
            if (flagship().contains(x))
                continue;
            auto y0 = combine(flagship().basis(), g.qvector(2, 2, 3));
            CHECK_FALSE(verify_best_coapprox(s, flagship(), x, y0).decision);
        }
    }

    TEST_CASE("x in Y is its own best coapproximation")
    {
        auto s = PolyhedralSpace::linf(3);
        auto x = add(flagship().basis()[0], flagship().basis()[1]);
        auto v = verify_best_coapprox(s, flagship(), x, x);
        CHECK(v.decision);
        CHECK_FALSE(v.note.empty());
    }

    TEST_CASE("orthogonal directions and defect")
    {
        auto l1 = PolyhedralSpace::l1(3);
        auto z = exists_orthogonal_direction(l1, l1_plane());
        REQUIRE(z);
        CHECK(l1.norm(*z) == 1);
        CHECK(subspace_orthogonal(l1, l1_plane(), *z).decision);
        CHECK((*z)[2] != 0);
        auto d = coapprox_defect(l1, l1_plane());
        CHECK(d.delta == 0);
        CHECK(subspace_orthogonal(l1, l1_plane(), d.direction).decision);

        CHECK_FALSE(exists_orthogonal_direction(PolyhedralSpace::linf(3), flagship()));
        auto f = coapprox_defect(PolyhedralSpace::linf(3), flagship());
        CHECK(f.delta == 1);
        CHECK(f.lp_solves > 0);
        CHECK(std::all_of(f.facet_distances.begin(), f.facet_distances.end(),
                          [&](const Rational& a) { return a <= f.delta; }));
        CHECK_FALSE(exists_orthogonal_direction(PolyhedralSpace::linf(6), c0_plane(6)));
    }

    TEST_CASE("the square's diagonal has an orthogonal direction")
    {
        // (1,1) ⊥_B (1,-1) in the sup norm, so the defect is 0 rather than 1.
        auto s = PolyhedralSpace::linf(2);
        auto y = span(2, {qv({1, 1})});
        auto d = coapprox_defect(s, y);
        CHECK(d.delta == 0);
        CHECK(bj_orthogonal(s, qv({1, 1}), d.direction).decision);
        CHECK_FALSE(decide_anti(s, y).decision);
        CHECK_FALSE(decide_strong_anti(s, y).decision);
    }

    TEST_CASE("anti-coproximinality examples")
    {
        auto v = decide_anti(PolyhedralSpace::l1(3), l1_plane());
        CHECK_FALSE(v.decision);
        CHECK(std::holds_alternative<cert::Direction>(v.certificate));
        CHECK(decide_anti(PolyhedralSpace::linf(3), flagship()).decision);
        CHECK(decide_anti(PolyhedralSpace::linf(6), c0_plane(6)).decision);
    }

    TEST_CASE("strong anti-coproximinality examples")
    {
        auto cube = PolyhedralSpace::linf(3);
        auto v = decide_strong_anti(cube, flagship());
        REQUIRE(v.decision);
        auto w = std::get<cert::ExactWitnessList>(v.certificate).points;
        REQUIRE(w.size() == cube.dual_extremes().size());
        for (std::size_t i = 0; i < w.size(); ++i)
        {
            CHECK(flagship().contains(w[i]));
            CHECK(dot(cube.dual_extremes()[i], w[i]) == 1);
            for (std::size_t j = 0; j < w.size(); ++j)
                if (j != i)
                    CHECK(dot(cube.dual_extremes()[j], w[i]) < 1);
        }
        auto l = decide_strong_anti(PolyhedralSpace::l1(3), l1_plane());
        CHECK_FALSE(l.decision);
        CHECK(std::holds_alternative<cert::MissedFacet>(l.certificate));
        CHECK(decide_strong_anti(PolyhedralSpace::linf(6), c0_plane(6)).decision);
        CHECK_FALSE(decide_strong_anti(LpSpace(3, 3), span(3, {e(3, 0)})).decision);
        CHECK_THROWS_AS(decide_strong_anti(cube, span(3, {e(3, 0), e(3, 1), e(3, 2)})), ImproperSubspaceError);
    }

    TEST_CASE("no plane is strongly anti-coproximinal in the prism-pyramid")
    {
        auto s = PolyhedralSpace::from_vertices(prism_pyramid_rational());
        CHECK_FALSE(decide_strong_anti(s, l1_plane()).decision);
        Gen g(43);
        for (int i = 0; i < 20; ++i)
            CHECK_FALSE(decide_strong_anti(s, g.subspace(3, 2)).decision);
    }

    TEST_CASE("smooth-span sufficient test")
    {
        LpSpace s(4, 3);
        auto y = span(4, {qv({1, 1, 1, 0}), qv({1, 2, 3, 0}), e(4, 3)});
        std::vector<RVector> probes = {{1, 1, 1, 0}, {1, 2, 3, 0}, {2, 1, 0, 0}, {0, 0, 0, 1}};
        auto v = anti_via_smooth_span(s, y, probes);
        CHECK(v.decision);
        CHECK(std::get<cert::FunctionalList>(v.certificate).functionals.size() == 4);
        auto only = anti_via_smooth_span(s, y, {{0, 0, 0, 1}});
        CHECK_FALSE(only.decision);
        CHECK_FALSE(only.conclusive);

        auto cube = PolyhedralSpace::linf(3);
        std::vector<QVector> smooth = {{q(1), q(0), q(2, 3)}, {q(0), q(1), q(2, 3)}, {q(3, 4), q(3, 4), q(1)}};
        CHECK(anti_via_smooth_span(cube, flagship(), smooth).decision);
        CHECK_THROWS_AS(anti_via_smooth_span(cube, flagship(), {qv({1, 1, 1})}), InputError);
    }

    TEST_CASE("coordinate dominance")
    {
        auto v = coordinate_dominance(PolyhedralSpace::linf(6), c0_plane(6), 0);
        REQUIRE(v.decision);
        auto w = abs_v(std::get<cert::ExactWitness>(v.certificate).point);
        CHECK(c0_plane(6).contains(std::get<cert::ExactWitness>(v.certificate).point));
        for (std::size_t i = 1; i < 6; ++i)
            CHECK(w[0] > w[i]);
        QVector listed = {q(1), q(-1, 2), q(-1, 2), q(0), q(0), q(0)};
        CHECK(c0_plane(6).contains(listed));

        auto trig = coordinate_dominance_all(PolyhedralSpace::linf(4), trig_plane(4));
        REQUIRE(trig.decision);
        auto pts = std::get<cert::ExactWitnessList>(trig.certificate).points;
        REQUIRE(pts.size() == 4);
        for (std::size_t r = 0; r < 4; ++r)
        {
            auto a = abs_v(pts[r]);
            for (std::size_t i = 0; i < 4; ++i)
                if (i != r)
                    CHECK(a[r] > a[i]);
        }
        CHECK_FALSE(coordinate_dominance(PolyhedralSpace::linf(3), span(3, {qv({1, 1, 0})}), 2).decision);
        CHECK_THROWS_AS(coordinate_dominance(PolyhedralSpace::l1(3), l1_plane(), 0), InputError);
    }

    TEST_CASE("necessary checks")
    {
        auto lp = necessary_checks(LpSpace(3, 3), span(3, {e(3, 0)}));
        CHECK(check_named(lp, "rotund points inside Y") == false);
        CHECK(lp.any_failed());
        auto l1 = necessary_checks(PolyhedralSpace::l1(3), l1_plane());
        CHECK(check_named(l1, "maximal-face intersection") == true);
        CHECK(check_named(l1, "face-trace distinctness") == false);
        auto flag = necessary_checks(PolyhedralSpace::linf(3), flagship());
        CHECK_FALSE(flag.any_failed());
        CHECK(check_named(flag, "maximal-face intersection") == true);
        CHECK(check_named(flag, "shared supporting functional") == true);
    }

    TEST_CASE("sup-product lift")
    {
        auto one = lift_sup_product(flagship(), 1);
        CHECK(one.basis() == flagship().basis());
        auto two = lift_sup_product(flagship(), 2);
        CHECK(two.ambient_dim() == 6);
        CHECK(two.rank() == 4);
        auto cube2 = PolyhedralSpace::sup_product(PolyhedralSpace::linf(3), 2);
        CHECK(decide_strong_anti(cube2, two).decision);
        auto oct2 = PolyhedralSpace::sup_product(PolyhedralSpace::l1(3), 2);
        CHECK_FALSE(decide_strong_anti(oct2, lift_sup_product(l1_plane(), 2)).decision);
    }

    TEST_CASE("the LP cap is enforced")
    {
        SearchLimits tiny;
        tiny.lp_cap = 1;
        CHECK_THROWS_AS(coapprox_defect(PolyhedralSpace::linf(3), flagship(), tiny), CapExceededError);
    }
}

TEST_SUITE("coapprox properties")
{
    TEST_CASE("routes agree and strong implies anti on random polytopes")
    {
        Gen g(44);
        int strong = 0;
        for (int t = 0; t < 60; ++t)
        {
            std::size_t n = static_cast<std::size_t>(g.integer(2, 4));
            auto extra = static_cast<std::size_t>(g.integer(0, 2));
            auto s = g.coin() ? g.polytope(n, extra) : g.facet_polytope(n, extra);
            // Hyperplanes are the interesting case: lower-dimensional Y rarely meets every facet.
            auto m = g.integer(0, 2) ? n - 1 : static_cast<std::size_t>(g.integer(1, static_cast<long>(n) - 1));
            auto y = g.subspace(n, m, 2);
            auto sv = decide_strong_anti(s, y);       // throws if the two routes disagree
            auto av = decide_anti(s, y);
            auto d = coapprox_defect(s, y);
            auto z = exists_orthogonal_direction(s, y);
            if (sv.decision)
            {
                ++strong;
                CHECK(av.decision);
                CHECK(d.delta == 1);
            }
            CHECK(av.decision == !z.has_value());
            CHECK(av.decision == (d.delta > 0));
            if (z)
                CHECK(subspace_orthogonal(s, y, *z).decision);
        }
        MESSAGE("strongly anti-coproximinal instances: " << strong);
        CHECK(strong > 0);
    }

    TEST_CASE("dominance, anti and strong anti coincide in the sup norm")
    {
        Gen g(45);
        int positive = 0;
        for (int t = 0; t < 40; ++t)
        {
            std::size_t n = static_cast<std::size_t>(g.integer(3, 5));
            auto s = PolyhedralSpace::linf(n);
            auto y = g.subspace(n, static_cast<std::size_t>(g.integer(1, static_cast<long>(n) - 1)), 2);
            bool dom = coordinate_dominance_all(s, y).decision;
            CHECK(decide_anti(s, y).decision == dom);
            CHECK(decide_strong_anti(s, y).decision == dom);
            positive += dom;
        }
        MESSAGE("dominant instances: " << positive);
        CHECK(positive > 0);
    }

    TEST_CASE("best coapproximation equals its epsilon form at zero")
    {
        Gen g(46);
        std::vector<PolyhedralSpace> spaces = {PolyhedralSpace::linf(3), PolyhedralSpace::l1(3),
                                               PolyhedralSpace::from_vertices(prism_pyramid_rational())};
        for (int i = 0; i < 90; ++i)
        {
            const auto& s = spaces[static_cast<std::size_t>(i) % 3];
            auto y = g.subspace(3, 2, 2);
            auto x = g.qvector(3, 3, 2);
            auto y0 = combine(y.basis(), g.qvector(2, 2, 2));
            CHECK(verify_best_coapprox(s, y, x, y0).decision == verify_eps_best_coapprox(s, y, x, y0, Epsilon()).decision);
        }
    }

    TEST_CASE("lifting preserves both verdicts")
    {
        struct Case
        {
            PolyhedralSpace space;
            Subspace y;
        };
        std::vector<Case> cases = {{PolyhedralSpace::linf(3), flagship()}, {PolyhedralSpace::l1(3), l1_plane()},
                                   {PolyhedralSpace::linf(2), span(2, {qv({2, 1})})}};
        for (const auto& c : cases)
        {
            bool anti = decide_anti(c.space, c.y).decision;
            bool strong = decide_strong_anti(c.space, c.y).decision;
            for (std::size_t k : {2u, 3u})
            {
                auto s = PolyhedralSpace::sup_product(c.space, k);
                auto y = lift_sup_product(c.y, k);
                CHECK(decide_anti(s, y).decision == anti);
                CHECK(decide_strong_anti(s, y).decision == strong);
            }
        }
    }
}
