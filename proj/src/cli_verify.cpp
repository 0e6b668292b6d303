#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "coprox/cli.hpp"
#include "coprox/errors.hpp"
#include "coprox/lp.hpp"

namespace coprox::cli {

using io::json;

namespace {

constexpr double numeric_tol = 1e-9;

class Checks
{
    public:
        void add(const std::string& what, bool ok)
        {
            list_.push_back({{"check", what}, {"passed", ok}});
            all_ = all_ && ok;
        }

        json finish() const { return {{"verified", all_}, {"checks", list_}}; }

    private:
        json list_ = json::array();
        bool all_ = true;
};

json nothing_to_check(const std::string& why)
{
    return {{"verified", nullptr}, {"checks", json::array({{{"check", why}, {"passed", nullptr}}})}};
}

const json& at(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string("report is missing \"") + key + "\"");
    return j[key];
}

Epsilon eps_in(const json& input)
{
    if (!input.contains("eps"))
        return Epsilon();
    const json& e = input["eps"];
    if (e.is_number_float())
    {
        try
        {
            return Epsilon(parse_rational(e.dump()));
        }
        catch (const InputError&)
        {
            return Epsilon(exact_rational(e.get<double>()));
        }
    }
    return Epsilon(io::parse_rational(e, "/input/eps"));
}

Rational abs(const Rational& r)
{
    return r < 0 ? Rational(-r) : r;
}

// Y ∩ relint(F_i) for a facet functional g_i: a point of Y with g_i = 1 and every other g_j < 1.
void check_relint_witness(Checks& c, const PolyhedralSpace& space, const Subspace& y, std::size_t i,
                          const QVector& w)
{
    const auto& duals = space.dual_extremes();
    std::string tag = "witness " + std::to_string(i);
    c.add(tag + " lies in Y", w.size() == space.dim() && y.contains(w));
    if (w.size() != space.dim())
        return;
    bool tight = dot(duals[i], w) == 1;
    bool strict = true;
    for (std::size_t j = 0; j < duals.size(); ++j)
        if (j != i && dot(duals[j], w) >= 1)
            strict = false;
    c.add(tag + " lies on its facet", tight);
    c.add(tag + " lies in the facet's relative interior", strict);
}

// Y misses relint(F_i): maximize t over y ∈ Y with g_i(y) = 1, g_j(y) ≤ 1 − t (j ≠ i).
bool misses_relint(const PolyhedralSpace& space, const Subspace& y, std::size_t i)
{
    const auto& duals = space.dual_extremes();
    std::size_t m = y.rank();
    lp::Problem prob(m + 1);
    prob.set_all_free();
    QVector row = y.restrict_functional(duals[i]);
    row.push_back(0);
    prob.add_row(row, lp::Sense::Equal, 1);
    for (std::size_t j = 0; j < duals.size(); ++j)
    {
        if (j == i)
            continue;
        QVector r = y.restrict_functional(duals[j]);
        r.push_back(1);
        prob.add_row(std::move(r), lp::Sense::LessEqual, 1);
    }
    QVector obj(m + 1, Rational(0));
    obj[m] = 1;
    prob.add_row(obj, lp::Sense::LessEqual, 1);
    prob.maximize(obj);
    auto sol = prob.solve();
    return !sol.optimal() || sol.objective <= 0;
}

json check_strong_anti(const PolyhedralSpace& space, const Subspace& y, const json& certificate, bool decision)
{
    Checks c;
    const std::string type = at(certificate, "type");
    if (decision && type == "witness_list")
    {
        auto points = io::parse_qvectors(at(certificate, "points"), "/certificate/points");
        c.add("one witness per facet", points.size() == space.dual_extremes().size());
        for (std::size_t i = 0; i < points.size() && i < space.dual_extremes().size(); ++i)
            check_relint_witness(c, space, y, i, points[i]);
    }
    else if (!decision && type == "missed_facet")
    {
        std::size_t f = at(certificate, "facet").get<std::size_t>();
        c.add("facet index in range", f < space.dual_extremes().size());
        if (f < space.dual_extremes().size())
            c.add("Y misses the facet's relative interior (margin LP)", misses_relint(space, y, f));
    }
    else
        c.add("certificate type matches the decision", false);
    return c.finish();
}

// Y ⊥_B^ε z facet-wise from the active sets of the restricted ball.
json check_subspace_orth(const PolyhedralSpace& space, const Subspace& y, const QVector& z, const Epsilon& eps,
                         const json& certificate, bool decision)
{
    Checks c;
    auto ball = restrict_ball(space, y);
    const auto& duals = space.dual_extremes();
    Rational w = eps.exact() * space.norm(z);
    const std::string type = at(certificate, "type");
    if (decision && type == "facet_functionals")
    {
        auto fs = io::parse_qvectors(at(certificate, "functionals"), "/certificate/functionals");
        c.add("one functional per restricted facet", fs.size() == ball.facets.size());
        for (std::size_t q = 0; q < fs.size() && q < ball.facets.size(); ++q)
        {
            std::string tag = "facet " + std::to_string(q);
            c.add(tag + ": functional has dual norm at most 1", space.dual_norm(fs[q]) <= 1);
            c.add(tag + ": functional extends the facet functional of B_Y",
                  y.restrict_functional(fs[q]) == ball.facets[q].functional);
            c.add(tag + ": |f(z)| <= eps |z|", abs(dot(fs[q], z)) <= w);
        }
    }
    else if (!decision && type == "facet_violation")
    {
        std::size_t q = at(certificate, "facet").get<std::size_t>();
        c.add("facet index in range", q < ball.facets.size());
        if (q < ball.facets.size())
        {
            std::optional<Rational> lo, hi;
            for (auto g : ball.facets[q].active)
            {
                Rational v = dot(duals[g], z);
                lo = lo ? std::min(*lo, v) : v;
                hi = hi ? std::max(*hi, v) : v;
            }
            const json& iv = at(certificate, "interval");
            c.add("interval matches the active functionals",
                  io::parse_rational(iv[0], "/certificate/interval/0") == *lo
                      && io::parse_rational(iv[1], "/certificate/interval/1") == *hi);
            c.add("interval misses [-eps |z|, eps |z|]", *lo > w || *hi < -w);
        }
    }
    else
        c.add("certificate type matches the decision", false);
    return c.finish();
}

bool direction_orthogonal(const PolyhedralSpace& space, const Subspace& y, const QVector& z)
{
    auto ball = restrict_ball(space, y);
    const auto& duals = space.dual_extremes();
    for (const auto& f : ball.facets)
    {
        bool below = false, above = false;
        for (auto g : f.active)
        {
            Rational v = dot(duals[g], z);
            below = below || v <= 0;
            above = above || v >= 0;
        }
        if (!below || !above)
            return false;
    }
    return true;
}

json check_direction(const PolyhedralSpace& space, const Subspace& y, const json& certificate)
{
    Checks c;
    if (at(certificate, "type") != "direction")
    {
        c.add("certificate is a direction", false);
        return c.finish();
    }
    QVector z = io::parse_qvector(at(certificate, "z"), "/certificate/z");
    c.add("direction has the space's dimension", z.size() == space.dim());
    if (z.size() != space.dim())
        return c.finish();
    c.add("direction is nonzero", !is_zero(z));
    c.add("Y is orthogonal to the direction (every restricted facet's interval contains 0)",
          !is_zero(z) && direction_orthogonal(space, y, z));
    return c.finish();
}

double numeric_dual_norm(const Space& s, const RVector& f)
{
    if (auto* lp = std::get_if<LpSpace>(&s))
        return lp->dual_norm(f);
    if (auto* p = std::get_if<PolyhedralSpace>(&s))
    {
        double best = 0.0;
        for (const auto& v : p->vertices())
            best = std::max(best, dot(f, to_double(v)));
        return best;
    }
    // Sup-product: the dual norm is the sum of the block dual norms.
    const auto& pr = std::get<LpProductSpace>(s);
    std::size_t n = pr.base().dim();
    double total = 0.0;
    for (std::size_t b = 0; b < pr.copies(); ++b)
        total += pr.base().dual_norm(RVector(f.begin() + static_cast<std::ptrdiff_t>(b * n),
                                             f.begin() + static_cast<std::ptrdiff_t>((b + 1) * n)));
    return total;
}

RVector real_vector(const Space& s, const json& j, const std::string& path)
{
    if (std::holds_alternative<PolyhedralSpace>(s))
        return to_double(io::parse_qvector(j, path));
    return io::parse_rvector(j, path);
}

json check_orth(const json& input, const json& certificate, bool decision)
{
    Space s = io::parse_space(at(input, "space"), "/input/space");
    Epsilon eps = eps_in(input);
    const std::string type = at(certificate, "type");
    Checks c;
    if (type == "violating_lambda")
    {
        RVector x = real_vector(s, at(input, "x"), "/input/x");
        RVector y = real_vector(s, at(input, "y"), "/input/y");
        double lambda = at(certificate, "lambda").get<double>();
        RVector moved = x;
        for (std::size_t i = 0; i < x.size(); ++i)
            moved[i] += lambda * y[i];
        double lhs = norm(s, moved);
        double rhs = norm(s, x) - eps.value() * std::abs(lambda) * norm(s, y);
        c.add("verdict is false", !decision);
        c.add("|x + lambda y| < |x| - eps |lambda| |y|", lhs < rhs);
        return c.finish();
    }
    if (type != "functional")
    {
        c.add("certificate is a functional", false);
        return c.finish();
    }
    if (auto* p = std::get_if<PolyhedralSpace>(&s))
    {
        QVector x = io::parse_qvector(at(input, "x"), "/input/x");
        QVector y = io::parse_qvector(at(input, "y"), "/input/y");
        QVector f = io::parse_qvector(at(certificate, "functional"), "/certificate/functional");
        Rational value = io::parse_rational(at(certificate, "value"), "/certificate/value");
        c.add("verdict is true", decision);
        c.add("f has dual norm 1", p->dual_norm(f) == 1);
        c.add("f(x) = |x|", dot(f, x) == p->norm(x));
        c.add("reported value equals f(y)", dot(f, y) == value);
        c.add("|f(y)| <= eps |y|", abs(dot(f, y)) <= eps.exact() * p->norm(y));
        return c.finish();
    }
    RVector x = io::parse_rvector(at(input, "x"), "/input/x");
    RVector y = io::parse_rvector(at(input, "y"), "/input/y");
    RVector f = io::parse_rvector(at(certificate, "functional"), "/certificate/functional");
    double nx = norm(s, x);
    double fy = dot(f, y);
    c.add("f has dual norm 1", std::abs(numeric_dual_norm(s, f) - 1.0) <= 1e-8);
    c.add("f(x) = |x|", std::abs(dot(f, x) - nx) <= 1e-8 * std::max(1.0, nx));
    bool within = std::abs(fy) <= eps.value() * norm(s, y) + numeric_tol;
    if (std::holds_alternative<LpSpace>(s))
        c.add("unique supporting functional decides: |f(y)| vs eps |y|", within == decision);
    else
    {
        c.add("verdict is true", decision);
        c.add("|f(y)| <= eps |y|", within);
    }
    return c.finish();
}

json check_dominance(const PolyhedralSpace& space, const Subspace& y, const json& input, const json& certificate)
{
    Checks c;
    auto dominant = [&](const QVector& w, std::size_t r) {
        for (std::size_t n = 0; n < w.size(); ++n)
            if (n != r && abs(w[n]) >= abs(w[r]))
                return false;
        return true;
    };
    const std::string type = at(certificate, "type");
    if (type == "witness")
    {
        QVector w = io::parse_qvector(at(certificate, "point"), "/certificate/point");
        std::size_t r = at(input, "r").get<std::size_t>() - 1;
        c.add("witness lies in Y", w.size() == space.dim() && y.contains(w));
        c.add("coordinate r strictly dominates", w.size() == space.dim() && r < w.size() && dominant(w, r));
    }
    else if (type == "witness_list")
    {
        auto ws = io::parse_qvectors(at(certificate, "points"), "/certificate/points");
        c.add("one witness per coordinate", ws.size() == space.dim());
        for (std::size_t r = 0; r < ws.size(); ++r)
        {
            c.add("witness " + std::to_string(r + 1) + " lies in Y", ws[r].size() == space.dim() && y.contains(ws[r]));
            c.add("witness " + std::to_string(r + 1) + " dominates", ws[r].size() == space.dim() && dominant(ws[r], r));
        }
    }
    else
        c.add("certificate type is a witness", false);
    return c.finish();
}

json check_operator_witness(const json& input, const json& certificate)
{
    Checks c;
    Matrix t = io::parse_matrix(at(input, "t"), "/input/t");
    Matrix a = io::parse_matrix(at(input, "a"), "/input/a");
    Epsilon eps = eps_in(input);
    RVector xv = io::parse_rvector(at(certificate, "point"), "/certificate/point");
    if (static_cast<Eigen::Index>(xv.size()) != t.cols())
    {
        c.add("witness has the domain dimension", false);
        return c.finish();
    }
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xv.data(), static_cast<Eigen::Index>(xv.size()));
    double nt = t.jacobiSvd().singularValues()(0);
    double na = a.jacobiSvd().singularValues()(0);
    c.add("witness is a unit vector", std::abs(x.norm() - 1.0) <= 1e-9);
    c.add("T attains its norm at the witness", (t * x).norm() >= nt * (1.0 - 1e-8));
    double omega = (a * x).dot(t * x) / (nt * na);
    c.add("|<Ax, Tx>| / (|T| |A|) <= eps", std::abs(omega) <= eps.value() + 1e-9);
    return c.finish();
}

json check_smooth_span(const json& input, const json& certificate)
{
    Checks c;
    Space s = io::parse_space(at(input, "space"), "/input/space");
    const json& fl = at(certificate, "functionals");
    std::size_t n = dimension(s);
    Eigen::MatrixXd m(n, static_cast<Eigen::Index>(fl.size()));
    for (std::size_t i = 0; i < fl.size(); ++i)
    {
        RVector f = io::parse_rvector(fl[i], "/certificate/functionals/" + std::to_string(i));
        if (f.size() != n)
        {
            c.add("functional length matches", false);
            return c.finish();
        }
        c.add("functional " + std::to_string(i) + " has dual norm 1", std::abs(numeric_dual_norm(s, f) - 1.0) <= 1e-8);
        for (std::size_t r = 0; r < n; ++r)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = f[r];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-9);
    c.add("functionals span the dual space", static_cast<std::size_t>(lu.rank()) == n);
    return c.finish();
}

}   // namespace

json verify_report(const json& report)
{
    if (report.contains("error"))
        return nothing_to_check("report is an error report");
    const std::string command = at(report, "command");
    const json& input = at(report, "input");
    const json& certificate = at(report, "certificate");
    const json& dj = at(report, "decision");
    if (certificate.is_null() || !dj.is_boolean())
        return nothing_to_check("no certificate attached");
    bool decision = dj.get<bool>();

    if (command == "orth" || command == "oracle")
    {
        if (input.contains("t"))
        {
            Checks c;
            Matrix t = io::parse_matrix(at(input, "t"), "/input/t");
            Matrix a = io::parse_matrix(at(input, "a"), "/input/a");
            double lambda = at(certificate, "lambda").get<double>();
            auto op = [](const Matrix& m) { return m.jacobiSvd().singularValues()(0); };
            c.add("|T + lambda A| < |T| - eps |lambda| |A|",
                  op(t + lambda * a) < op(t) - eps_in(input).value() * std::abs(lambda) * op(a));
            return c.finish();
        }
        return check_orth(input, certificate, decision);
    }
    if (command == "op orth" || command == "op bs")
        return decision ? check_operator_witness(input, certificate) : nothing_to_check("false verdicts carry no witness");

    if (command == "op zspace strong-anti")
    {
        auto x = std::get<PolyhedralSpace>(io::parse_space(at(input, "domain"), "/input/domain"));
        auto y = std::get<PolyhedralSpace>(io::parse_space(at(input, "codomain"), "/input/codomain"));
        std::vector<QVector> cols;
        for (std::size_t i = 0; i < at(input, "matrices").size(); ++i)
            cols.push_back(
                vectorize(io::parse_qmatrix(input["matrices"][i], "/input/matrices/" + std::to_string(i))));
        auto ball = operator_ball(x, y);
        return check_strong_anti(ball, Subspace(ball.dim(), std::move(cols)), certificate, decision);
    }

    Space s = io::parse_space(at(input, "space"), "/input/space");
    if (command == "decide anti" && at(certificate, "type") == "functional_list")
        return check_smooth_span(input, certificate);
    auto* p = std::get_if<PolyhedralSpace>(&s);
    if (!p)
        return nothing_to_check("no exact certificate for this space");
    Subspace y = io::parse_subspace(at(input, "subspace"), p->dim(), false, "/input/subspace");

    if (command == "decide strong-anti")
        return check_strong_anti(*p, y, certificate, decision);
    if (command == "lift")
    {
        std::size_t k = at(input, "copies").get<std::size_t>();
        return check_strong_anti(PolyhedralSpace::sup_product(*p, k), lift_sup_product(y, k), certificate, decision);
    }
    if (command == "coapprox find-direction" || command == "decide anti")
    {
        if (command == "decide anti" && decision)
            return nothing_to_check("a true anti-coproximinality verdict has no finite certificate");
        return check_direction(*p, y, certificate);
    }
    if (command == "suborth")
        return check_subspace_orth(*p, y, io::parse_qvector(at(input, "z"), "/input/z"), eps_in(input), certificate,
                                   decision);
    if (command == "coapprox verify" || command == "coapprox eps-verify")
    {
        QVector x = io::parse_qvector(at(input, "x"), "/input/x");
        QVector y0 = io::parse_qvector(at(input, "y0"), "/input/y0");
        Epsilon eps = command == "coapprox verify" ? Epsilon() : eps_in(input);
        Checks c;
        c.add("y0 lies in Y", y.contains(y0));
        json inner = check_subspace_orth(*p, y, subtract(x, y0), eps, certificate, decision);
        for (const auto& ch : inner["checks"])
            c.add(ch["check"].get<std::string>(), ch["passed"].get<bool>());
        return c.finish();
    }
    if (command == "dominance")
        return check_dominance(*p, y, input, certificate);
    return nothing_to_check("no verifier for command \"" + command + "\"");
}

}   // namespace coprox::cli
