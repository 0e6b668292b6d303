#include <cmath>

#include "coprox/cli.hpp"

namespace coprox::cli {

using io::json;

namespace {

json linf(int n)
{
    return {{"type", "linf"}, {"n", n}};
}

json l1(int n)
{
    return {{"type", "l1"}, {"n", n}};
}

json lp(int n, double p)
{
    return {{"type", "lp"}, {"n", n}, {"p", p}};
}

json basis(json columns)
{
    return {{"basis", std::move(columns)}};
}

// Hexagonal prism-pyramid, with the hexagon's second coordinate scaled by 2/sqrt(3) to make it rational.
json prism_pyramid()
{
    json v = json::array();
    for (json p : {json{1, 0, 1}, json{"1/2", 1, 1}, json{"-1/2", 1, 1}, json{-1, 0, 1}, json{"-1/2", -1, 1},
                   json{"1/2", -1, 1}, json{0, 0, 2}})
    {
        v.push_back(p);
        json m = json::array();
        for (const auto& a : p)
            m.push_back(a.is_string() ? json(a.get<std::string>()[0] == '-' ? a.get<std::string>().substr(1)
                                                                            : "-" + a.get<std::string>())
                                      : json(-a.get<int>()));
        v.push_back(m);
    }
    return {{"type", "polyhedral"}, {"vertices", v}};
}

json flagship()
{
    return basis({{3, 0, 2}, {0, 3, 2}});
}

json l1_plane()
{
    return basis({{1, 0, 0}, {0, 1, 0}});
}

// {x : x1 + x2 + x3 = 0} in dimension n.
json c0_plane(int n)
{
    json cols = json::array();
    for (int k = 1; k < n; ++k)
    {
        json c = json::array();
        for (int i = 0; i < n; ++i)
            c.push_back(k <= 2 ? (i == 0 ? 1 : (i == k ? -1 : 0)) : (i == k ? 1 : 0));
        cols.push_back(c);
    }
    return basis(cols);
}

// span{u, v} with u_k = cos(pi/2k), v_k = sin(pi/2k), rounded to denominator 10^9.
json trig_plane(int n)
{
    const double pi = std::acos(-1.0);
    json u = json::array(), v = json::array();
    for (int k = 1; k <= n; ++k)
    {
        u.push_back(to_string(round_rational(std::cos(pi / (2.0 * k)), 1000000000L)));
        v.push_back(to_string(round_rational(std::sin(pi / (2.0 * k)), 1000000000L)));
    }
    return basis({u, v});
}

json fixture(json args, json query, json expected)
{
    return {{"args", std::move(args)}, {"query", std::move(query)}, {"expected", std::move(expected)}};
}

json decided(bool d)
{
    return {{"exit", 0}, {"decision", d}};
}

json computed()
{
    return {{"exit", 0}};
}

}   // namespace

json fixture_corpus()
{
    json c = json::object();
    c["norm_lp3_ones"] = fixture({"norm"}, {{"space", lp(3, 3)}, {"x", {1, 1, 1}}}, computed());
    c["norm_linf3"] = fixture({"norm"}, {{"space", linf(3)}, {"x", {3, 0, 2}}}, computed());
    for (int p : {3, 4})
    {
        std::string tag = "p" + std::to_string(p);
        c["support_lp3_" + tag + "_ones"] = fixture({"support"}, {{"space", lp(3, p)}, {"x", {1, 1, 1}}}, computed());
        c["support_lp3_" + tag + "_210"] = fixture({"support"}, {{"space", lp(3, p)}, {"x", {2, 1, 0}}}, computed());
    }
    c["faces_l1_plane"] = fixture({"faces"}, {{"space", l1(3)}, {"subspace", l1_plane()}}, computed());
    c["faces_linf_flagship"] = fixture({"faces"}, {{"space", linf(3)}, {"subspace", flagship()}}, computed());
    c["faces_prism_pyramid"] = fixture({"faces"}, {{"space", prism_pyramid()}}, computed());
    c["orth_lp3_degenerate"] =
        fixture({"orth"}, {{"space", lp(3, 3)}, {"x", {1, 1, 1}}, {"y", {1, 0, 0}}}, decided(false));
    c["suborth_l1_e3"] = fixture({"suborth"}, {{"space", l1(3)}, {"subspace", l1_plane()}, {"z", {0, 0, 1}}},
                                 decided(true));
    c["suborth_linf_flagship"] =
        fixture({"suborth"}, {{"space", linf(3)}, {"subspace", flagship()}, {"z", {1, 0, 0}}}, decided(false));
    c["coapprox_verify_l1"] = fixture({"coapprox", "verify"},
                                      {{"space", l1(3)},
                                       {"subspace", l1_plane()},
                                       {"x", {"0.3", "-0.7", "0.5"}},
                                       {"y0", {"0.3", "-0.7", 0}}},
                                      decided(true));
    c["coapprox_verify_linf_flagship"] =
        fixture({"coapprox", "verify"},
                {{"space", linf(3)}, {"subspace", flagship()}, {"x", {1, 0, 0}}, {"y0", {0, 0, 0}}}, decided(false));
    c["find_direction_l1"] =
        fixture({"coapprox", "find-direction"}, {{"space", l1(3)}, {"subspace", l1_plane()}}, decided(true));
    c["find_direction_linf_flagship"] =
        fixture({"coapprox", "find-direction"}, {{"space", linf(3)}, {"subspace", flagship()}}, decided(false));
    c["find_direction_c0_6"] =
        fixture({"coapprox", "find-direction"}, {{"space", linf(6)}, {"subspace", c0_plane(6)}}, decided(false));
    c["decide_anti_l1"] = fixture({"decide", "anti"}, {{"space", l1(3)}, {"subspace", l1_plane()}}, decided(false));
    c["decide_anti_linf_flagship"] =
        fixture({"decide", "anti"}, {{"space", linf(3)}, {"subspace", flagship()}}, decided(true));
    c["decide_anti_c0_6"] = fixture({"decide", "anti"}, {{"space", linf(6)}, {"subspace", c0_plane(6)}}, decided(true));
    c["decide_anti_lp4_probes"] =
        fixture({"decide", "anti"},
                {{"space", lp(4, 3)},
                 {"subspace", basis({{1, 1, 1, 0}, {1, 2, 3, 0}, {0, 0, 0, 1}})},
                 {"probes", {{1, 1, 1, 0}, {1, 2, 3, 0}, {2, 1, 0, 0}, {0, 0, 0, 1}}}},
                decided(true));
    c["strong_anti_linf_flagship"] =
        fixture({"decide", "strong-anti"}, {{"space", linf(3)}, {"subspace", flagship()}}, decided(true));
    c["strong_anti_l1"] = fixture({"decide", "strong-anti"}, {{"space", l1(3)}, {"subspace", l1_plane()}},
                                  decided(false));
    c["strong_anti_prism_pyramid"] = fixture({"decide", "strong-anti"},
                                             {{"space", prism_pyramid()}, {"subspace", l1_plane()}}, decided(false));
    c["strong_anti_c0_6"] =
        fixture({"decide", "strong-anti"}, {{"space", linf(6)}, {"subspace", c0_plane(6)}}, decided(true));
    c["strong_anti_lp3"] =
        fixture({"decide", "strong-anti"}, {{"space", lp(3, 3)}, {"subspace", basis({{1, 0, 0}})}}, decided(false));
    c["report_lp3"] = fixture({"decide", "report"}, {{"space", lp(3, 3)}, {"subspace", basis({{1, 0, 0}})}},
                              decided(false));
    c["report_linf_flagship"] =
        fixture({"decide", "report"}, {{"space", linf(3)}, {"subspace", flagship()}}, decided(true));
    c["dominance_c0_6_r1"] =
        fixture({"dominance"}, {{"space", linf(6)}, {"subspace", c0_plane(6)}, {"r", 1}}, decided(true));
    c["dominance_trig_4_all"] =
        fixture({"dominance"}, {{"space", linf(4)}, {"subspace", trig_plane(4)}, {"all", true}}, decided(true));
    c["lift_linf_flagship_2"] =
        fixture({"lift"}, {{"space", linf(3)}, {"subspace", flagship()}, {"copies", 2}}, decided(true));
    c["lift_l1_2"] = fixture({"lift"}, {{"space", l1(3)}, {"subspace", l1_plane()}, {"copies", 2}}, decided(false));

    json diag = {{2, 0}, {0, 1}};
    json e12 = {{0, 1}, {0, 0}};
    json id = {{1, 0}, {0, 1}};
    c["op_orth_diag_e12"] = fixture({"op", "orth"}, {{"t", diag}, {"a", e12}}, decided(true));
    c["op_orth_diag_identity"] = fixture({"op", "orth"}, {{"t", diag}, {"a", id}}, decided(false));
    c["op_bs_diag_e12"] = fixture({"op", "bs"}, {{"t", diag}, {"a", e12}}, decided(true));
    c["op_ase_diag"] = fixture({"op", "ase"}, {{"t", diag}}, decided(true));
    c["oracle_op_diag_identity"] = fixture({"oracle"}, {{"t", diag}, {"a", id}}, decided(false));
    c["op_zspace_e11"] = fixture({"op", "zspace", "strong-anti"},
                                 {{"domain", linf(2)}, {"codomain", linf(2)}, {"matrices", json::array({json{{1, 0}, {0, 0}}})}},
                                 decided(false));
    return c;
}

}   // namespace coprox::cli
