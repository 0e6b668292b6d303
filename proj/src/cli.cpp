#include "coprox/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "coprox/coapprox.hpp"
#include "coprox/errors.hpp"
#include "coprox/faces.hpp"
#include "coprox/operators.hpp"
#include "coprox/orthogonality.hpp"

namespace coprox::cli {

using io::json;

namespace {

struct Outcome
{
    std::optional<bool> decision;
    bool conclusive = true;
    json certificate = nullptr;
    std::string method;
    std::vector<std::string> notes;
    json result = nullptr;
};

using Handler = std::function<Outcome(const json&)>;

Outcome from_verdict(const Verdict& v, std::string method)
{
    Outcome o;
    o.decision = v.decision;
    o.conclusive = v.conclusive;
    o.certificate = io::to_json(v.certificate);
    o.method = std::move(method);
    if (!v.note.empty())
        o.notes.push_back(v.note);
    return o;
}

// ---- input access --------------------------------------------------------

const json& need(const json& q, const std::string& key)
{
    auto it = q.find(key);
    if (it == q.end() || it->is_null())
        throw InputError("missing input \"" + key + "\" (pass --" + key + " or set it in the --query document)");
    return *it;
}

std::string ptr(const std::string& key)
{
    return "/" + key;
}

Space space_of(const json& q, const std::string& key = "space")
{
    return io::parse_space(need(q, key), ptr(key));
}

const PolyhedralSpace& polyhedral(const Space& s, const std::string& what)
{
    if (auto* p = std::get_if<PolyhedralSpace>(&s))
        return *p;
    throw UnsupportedError(what + " is decided exactly only for polyhedral spaces");
}

template <typename V>
V checked_length(V v, std::size_t dim, const std::string& key)
{
    if (v.size() != dim)
        throw InputError("at /" + key + ": vector has length " + std::to_string(v.size()) + ", space dimension is "
                         + std::to_string(dim));
    return v;
}

QVector qvec(const json& q, const std::string& key, std::size_t dim)
{
    return checked_length(io::parse_qvector(need(q, key), ptr(key)), dim, key);
}

RVector rvec(const json& q, const std::string& key, std::size_t dim)
{
    return checked_length(io::parse_rvector(need(q, key), ptr(key)), dim, key);
}

Subspace subspace_of(const json& q, const Space& s)
{
    bool lenient = !std::holds_alternative<PolyhedralSpace>(s);
    return io::parse_subspace(need(q, "subspace"), dimension(s), lenient, "/subspace");
}

Epsilon eps_of(const json& q)
{
    auto it = q.find("eps");
    if (it == q.end() || it->is_null())
        return Epsilon();
    if (it->is_number_float())
    {
        // Shortest round-trip decimal first, so 0.3 means 3/10.
        try
        {
            return Epsilon(parse_rational(it->dump()));
        }
        catch (const InputError&)
        {
            return Epsilon(exact_rational(it->get<double>()));
        }
    }
    return Epsilon(io::parse_rational(*it, "/eps"));
}

GridConfig grid_of(const json& q)
{
    GridConfig g;
    if (q.contains("grid_points"))
        g.points = q["grid_points"].get<std::size_t>();
    if (q.contains("grid_range"))
        g.range = io::parse_real(q["grid_range"], "/grid_range");
    if (g.points < 3)
        throw InputError("at /grid_points: need at least 3 grid points");
    return g;
}

bool flag(const json& q, const char* key)
{
    auto it = q.find(key);
    return it != q.end() && it->is_boolean() && it->get<bool>();
}

json subspace_json(const Subspace& y)
{
    return {{"basis", io::to_json(y.basis())}};
}

RVector normalized(RVector x, double n)
{
    for (auto& a : x)
        a /= n;
    return x;
}

// ---- spaces --------------------------------------------------------------

Outcome cmd_norm(const json& q)
{
    Space s = space_of(q);
    Outcome o;
    o.method = "formula";
    if (auto* p = std::get_if<PolyhedralSpace>(&s))
    {
        Rational n = p->norm(qvec(q, "x", p->dim()));
        o.result = {{"norm", io::to_json(n)}, {"approx", to_double(n)}};
        o.notes.push_back("exact rational arithmetic: max over dual extremes");
    }
    else
    {
        o.result = {{"norm", norm(s, rvec(q, "x", dimension(s)))}};
        o.notes.push_back("binary floating point");
    }
    return o;
}

Outcome cmd_support(const json& q)
{
    Space s = space_of(q);
    Outcome o;
    o.method = "formula";
    if (auto* p = std::get_if<PolyhedralSpace>(&s))
    {
        QVector x = qvec(q, "x", p->dim());
        auto j = p->support_set(x);
        o.result = {{"functionals", io::to_json(j.functionals)},
                    {"dual_indices", j.indices},
                    {"smooth", is_smooth_point(*p, x)},
                    {"rotund", is_rotund_point(*p, scaled(x, Rational(1) / p->norm(x)))}};
        o.notes.push_back("J(x) is the hull of the listed extreme duals; rotundity evaluated at x/|x|");
    }
    else if (auto* lp = std::get_if<LpSpace>(&s))
    {
        RVector x = rvec(q, "x", lp->dim());
        auto j = lp->support_set(x);
        o.result = {{"functionals", json::array({io::to_json(j.functionals.front())})},
                    {"smooth", is_smooth_point(*lp, x)},
                    {"rotund", is_rotund_point(*lp, normalized(x, lp->norm(x)))}};
    }
    else
    {
        const auto& pr = std::get<LpProductSpace>(s);
        RVector x = rvec(q, "x", pr.dim());
        auto j = pr.support_set(x);
        json fs = json::array();
        for (const auto& f : j.functionals)
            fs.push_back(io::to_json(f));
        o.result = {{"functionals", fs},
                    {"smooth", is_smooth_point(pr, x)},
                    {"rotund", is_rotund_point(pr, normalized(x, pr.norm(x)))}};
        o.notes.push_back("J(x) is the hull of the listed block functionals");
    }
    return o;
}

// ---- faces ---------------------------------------------------------------

Outcome cmd_faces(const json& q)
{
    Space s = space_of(q);
    const auto& p = polyhedral(s, "facet enumeration");
    auto facets = enumerate_facets(p);
    Outcome o;
    o.method = "exact-lp";
    json fl = json::array();
    for (const auto& f : facets)
        fl.push_back(io::to_json(f));
    o.result = {{"vertices", io::to_json(p.vertices())}, {"facets", fl}};
    if (!q.contains("subspace"))
        return o;

    Subspace y = subspace_of(q, s);
    require_proper(y);
    auto ball = restrict_ball(p, y);
    json rf = json::array();
    for (const auto& f : ball.facets)
        rf.push_back({{"functional", io::to_json(f.functional)},
                      {"vertex_indices", f.vertex_indices},
                      {"dimension", f.dimension},
                      {"active", f.active},
                      {"opposite", f.opposite}});
    json per = json::array();
    for (std::size_t i = 0; i < facets.size(); ++i)
    {
        auto meets = meets_face(p, y, facets[i]);
        auto relint = meets_face_relint(p, y, facets[i]);
        per.push_back({{"facet", i},
                       {"meets", meets.decision},
                       {"meets_relint", relint.decision},
                       {"witness", io::to_json(meets.certificate)},
                       {"relint_witness", io::to_json(relint.certificate)},
                       {"trace", face_trace(p, y, ball, i)}});
    }
    auto distinct = face_traces_distinct(p, y);
    o.result["restricted_ball"] = {{"vertices", io::to_json(ball.vertices)},
                                   {"ambient_vertices", io::to_json(ball.ambient_vertices)},
                                   {"facets", rf}};
    o.result["ambient_facets"] = per;
    o.result["traces_distinct"] = {{"decision", distinct.decision}, {"certificate", io::to_json(distinct.certificate)}};
    return o;
}

// ---- orthogonality -------------------------------------------------------

Outcome oracle_outcome(const Verdict& v)
{
    Outcome o = from_verdict(v, "oracle");
    if (v.decision)
    {
        o.conclusive = false;
        o.notes.push_back("no violation found (the grid oracle can only refute)");
    }
    return o;
}

Outcome cmd_orth(const json& q)
{
    Space s = space_of(q);
    Epsilon eps = eps_of(q);
    if (flag(q, "oracle"))
    {
        std::size_t n = dimension(s);
        RVector x = std::holds_alternative<PolyhedralSpace>(s) ? to_double(qvec(q, "x", n)) : rvec(q, "x", n);
        RVector y = std::holds_alternative<PolyhedralSpace>(s) ? to_double(qvec(q, "y", n)) : rvec(q, "y", n);
        return oracle_outcome(oracle_eps_orthogonal(s, x, y, eps.value(), grid_of(q)));
    }
    if (auto* p = std::get_if<PolyhedralSpace>(&s))
    {
        QVector x = qvec(q, "x", p->dim());
        QVector y = qvec(q, "y", p->dim());
        Outcome o = from_verdict(eps_orthogonal(*p, x, y, eps), "exact-lp");
        auto iv = support_interval(*p, x, y);
        o.result = {{"interval", {io::to_json(iv.lo), io::to_json(iv.hi)}},
                    {"window", io::to_json(eps.exact() * p->norm(y))}};
        return o;
    }
    if (auto* lp = std::get_if<LpSpace>(&s))
    {
        RVector x = rvec(q, "x", lp->dim());
        RVector y = rvec(q, "y", lp->dim());
        Outcome o = from_verdict(eps_orthogonal(*lp, x, y, eps), "formula");
        auto iv = support_interval(*lp, x, y);
        o.result = {{"interval", {iv.lo, iv.hi}}, {"window", eps.value() * lp->norm(y)}};
        o.notes.push_back("tolerance 1e-9");
        return o;
    }
    const auto& pr = std::get<LpProductSpace>(s);
    RVector x = rvec(q, "x", pr.dim());
    RVector y = rvec(q, "y", pr.dim());
    Outcome o = from_verdict(eps_orthogonal(pr, x, y, eps), "formula");
    auto iv = support_interval(pr, x, y);
    o.result = {{"interval", {iv.lo, iv.hi}}, {"window", eps.value() * pr.norm(y)}};
    o.notes.push_back("tolerance 1e-9");
    return o;
}

Outcome cmd_suborth(const json& q)
{
    Space s = space_of(q);
    const auto& p = polyhedral(s, "subspace orthogonality (use orth --oracle on vectors otherwise)");
    Subspace y = subspace_of(q, s);
    return from_verdict(subspace_eps_orthogonal(p, y, qvec(q, "z", p.dim()), eps_of(q)), "exact-lp");
}

Outcome cmd_oracle(const json& q)
{
    Epsilon eps = eps_of(q);
    if (q.contains("t"))
    {
        Matrix t = io::parse_matrix(need(q, "t"), "/t");
        Matrix a = io::parse_matrix(need(q, "a"), "/a");
        return oracle_outcome(operator_oracle(t, a, eps.value(), grid_of(q)));
    }
    Space s = space_of(q);
    std::size_t n = dimension(s);
    RVector x = io::parse_rvector(need(q, "x"), "/x");
    RVector y = io::parse_rvector(need(q, "y"), "/y");
    return oracle_outcome(
        oracle_eps_orthogonal(s, checked_length(x, n, "x"), checked_length(y, n, "y"), eps.value(), grid_of(q)));
}

// ---- coapproximation -----------------------------------------------------

Outcome cmd_verify(const json& q, bool with_eps)
{
    Space s = space_of(q);
    const auto& p = polyhedral(s, "best coapproximation");
    Subspace y = subspace_of(q, s);
    QVector x = qvec(q, "x", p.dim());
    QVector y0 = qvec(q, "y0", p.dim());
    Verdict v = with_eps ? verify_eps_best_coapprox(p, y, x, y0, eps_of(q)) : verify_best_coapprox(p, y, x, y0);
    return from_verdict(v, "exact-lp");
}

Outcome cmd_find_direction(const json& q)
{
    Space s = space_of(q);
    const auto& p = polyhedral(s, "orthogonal-direction search");
    auto z = exists_orthogonal_direction(p, subspace_of(q, s));
    Outcome o;
    o.method = "exact-lp";
    o.decision = z.has_value();
    if (z)
        o.certificate = io::to_json(Certificate(cert::Direction{*z}));
    else
        o.notes.push_back("no nonzero z with Y orthogonal to z: Y is anti-coproximinal");
    return o;
}

Outcome cmd_defect(const json& q)
{
    Space s = space_of(q);
    const auto& p = polyhedral(s, "coapproximation defect");
    auto d = coapprox_defect(p, subspace_of(q, s));
    Outcome o;
    o.method = "exact-lp";
    o.result = io::to_json(d);
    o.notes.push_back("defect = 1 iff Y is strongly anti-coproximinal; defect = 0 iff an orthogonal direction exists");
    return o;
}

Outcome cmd_anti(const json& q)
{
    Space s = space_of(q);
    Subspace y = subspace_of(q, s);
    if (auto* p = std::get_if<PolyhedralSpace>(&s))
    {
        Outcome o = from_verdict(decide_anti(*p, y), "exact-lp");
        if (q.contains("probes"))
        {
            auto probes = io::parse_qvectors(q["probes"], "/probes");
            auto span = anti_via_smooth_span(*p, y, probes);
            if (span.decision && !*o.decision)
                throw ConsistencyError("smooth-span certificate contradicts the exact decider");
            o.result = {{"smooth_span", span.decision}};
        }
        return o;
    }
    if (auto* lp = std::get_if<LpSpace>(&s))
    {
        if (!q.contains("probes"))
            throw UnsupportedError("anti-coproximinality in l_p is not decidable exactly; "
                                   "supply --probes for the smooth-span sufficient test");
        std::vector<RVector> probes;
        const json& pj = need(q, "probes");
        if (!pj.is_array())
            throw InputError("at /probes: expected an array");
        for (std::size_t i = 0; i < pj.size(); ++i)
            probes.push_back(checked_length(io::parse_rvector(pj[i], "/probes/" + std::to_string(i)), lp->dim(),
                                            "probes/" + std::to_string(i)));
        Outcome o = from_verdict(anti_via_smooth_span(*lp, y, probes), "formula");
        if (!o.conclusive)
            o.notes.push_back("smooth-span test did not fire: inconclusive");
        return o;
    }
    throw UnsupportedError("anti-coproximinality is not decidable for sup-products of l_p spaces");
}

Outcome cmd_strong_anti(const json& q)
{
    Space s = space_of(q);
    Subspace y = subspace_of(q, s);
    if (auto* p = std::get_if<PolyhedralSpace>(&s))
        return from_verdict(decide_strong_anti(*p, y), "exact-lp");
    if (auto* lp = std::get_if<LpSpace>(&s))
    {
        Outcome o = from_verdict(decide_strong_anti(*lp, y), "formula");
        o.notes.push_back("strictly convex ambient space: every unit vector is a rotund point");
        return o;
    }
    throw UnsupportedError("strong anti-coproximinality is decided only for polyhedral and l_p spaces");
}

Outcome cmd_report(const json& q)
{
    Space s = space_of(q);
    Subspace y = subspace_of(q, s);
    NecessaryReport r;
    Outcome o;
    if (auto* p = std::get_if<PolyhedralSpace>(&s))
    {
        r = necessary_checks(*p, y);
        o.method = "exact-lp";
    }
    else if (auto* lp = std::get_if<LpSpace>(&s))
    {
        r = necessary_checks(*lp, y);
        o.method = "formula";
    }
    else
        throw UnsupportedError("necessary-condition battery needs a polyhedral or l_p space");
    o.decision = !r.any_failed();
    o.result = io::to_json(r);
    o.notes.push_back("decision: every applicable necessary condition holds; a failure rules out strong "
                      "anti-coproximinality, passing all is not sufficient");
    return o;
}

Outcome cmd_dominance(const json& q)
{
    Space s = space_of(q);
    const auto& p = polyhedral(s, "coordinate dominance");
    Subspace y = subspace_of(q, s);
    if (flag(q, "all"))
        return from_verdict(coordinate_dominance_all(p, y), "exact-lp");
    if (!q.contains("r"))
        throw InputError("dominance needs --r <index> or --all");
    const json& rj = q["r"];
    if (!rj.is_number_integer() || rj.get<long long>() < 1 || rj.get<std::size_t>() > p.dim())
        throw InputError("at /r: coordinate index must be between 1 and " + std::to_string(p.dim()));
    Outcome o = from_verdict(coordinate_dominance(p, y, rj.get<std::size_t>() - 1), "exact-lp");
    o.notes.push_back("coordinates are numbered from 1");
    return o;
}

Outcome cmd_lift(const json& q)
{
    Space s = space_of(q);
    const auto& p = polyhedral(s, "sup-product lifting");
    Subspace y = subspace_of(q, s);
    if (!q.contains("copies") || !q["copies"].is_number_integer() || q["copies"].get<long long>() < 1)
        throw InputError("at /copies: expected a positive integer");
    std::size_t k = q["copies"].get<std::size_t>();
    auto lifted_space = PolyhedralSpace::sup_product(p, k);
    auto lifted = lift_sup_product(y, k);

    auto base_anti = decide_anti(p, y);
    auto base_strong = decide_strong_anti(p, y);
    auto lift_anti = decide_anti(lifted_space, lifted);
    auto lift_strong = decide_strong_anti(lifted_space, lifted);
    if (base_anti.decision != lift_anti.decision || base_strong.decision != lift_strong.decision)
        throw ConsistencyError("lifting to the sup-product changed a verdict");

    Outcome o = from_verdict(lift_strong, "exact-lp");
    o.result = {{"lifted_subspace", subspace_json(lifted)},
                {"base", {{"anti", base_anti.decision}, {"strong_anti", base_strong.decision}}},
                {"lifted", {{"anti", lift_anti.decision}, {"strong_anti", lift_strong.decision}}}};
    o.notes.push_back("decision and certificate refer to strong anti-coproximinality of the lifted subspace");
    return o;
}

// ---- operators -----------------------------------------------------------

Matrix matrix_of(const json& q, const std::string& key)
{
    return io::parse_matrix(need(q, key), ptr(key));
}

std::string multiplicity_note()
{
    return "top singular multiplicity counted with relative tolerance 1e-8";
}

Outcome cmd_op_norm(const json& q)
{
    Outcome o;
    if (q.contains("domain") || q.contains("codomain"))
    {
        Space xs = space_of(q, "domain");
        Space ys = space_of(q, "codomain");
        const auto& x = polyhedral(xs, "the exact operator norm");
        const auto& y = polyhedral(ys, "the exact operator norm");
        QMatrix a = io::parse_qmatrix(need(q, "t"), "/t");
        if (a.size() != y.dim() || a.front().size() != x.dim())
            throw InputError("at /t: matrix shape does not match codomain x domain");
        Rational n = operator_norm(a, x, y);
        o.method = "formula";
        o.result = {{"norm", io::to_json(n)}, {"approx", to_double(n)}};
        o.notes.push_back("max over domain vertices and codomain dual extremes, exact");
        return o;
    }
    o.method = "formula";
    o.result = {{"norm", spectral_norm(matrix_of(q, "t"))}};
    o.notes.push_back("spectral norm");
    return o;
}

Outcome cmd_op_attain(const json& q)
{
    auto m = attainment(matrix_of(q, "t"));
    Outcome o;
    o.method = "formula";
    o.result = {{"sigma1", m.sigma1}, {"basis", io::to_json(m.basis)}, {"multiplicity", m.multiplicity}};
    o.notes.push_back(multiplicity_note());
    return o;
}

Outcome cmd_op_ase(const json& q)
{
    Outcome o;
    o.method = "formula";
    o.decision = is_ase(matrix_of(q, "t"));
    o.notes.push_back("finite-dimensional Hilbert reduction: ASE iff the top singular value is simple");
    o.notes.push_back(multiplicity_note());
    return o;
}

Outcome cmd_op_orth(const json& q)
{
    Matrix t = matrix_of(q, "t");
    Matrix a = matrix_of(q, "a");
    Epsilon eps = eps_of(q);
    Outcome o = from_verdict(op_eps_orthogonal(t, a, eps.value()), "formula");
    auto iv = omega_interval(t, a);
    o.result = {{"omega", {iv.lo, iv.hi}}};
    o.notes.push_back("omega computed for T and A normalized to unit norm");
    o.notes.push_back(multiplicity_note());
    return o;
}

Outcome cmd_op_bs(const json& q)
{
    Matrix t = matrix_of(q, "t");
    Matrix a = matrix_of(q, "a");
    Outcome o = from_verdict(bs_reduce(t, a, eps_of(q).value()), "formula");
    o.notes.push_back("cross-checked against the omega-interval decider");
    return o;
}

Outcome cmd_op_rank1(const json& q)
{
    RVector x = io::parse_rvector(need(q, "x"), "/x");
    RVector y = io::parse_rvector(need(q, "y"), "/y");
    Matrix a = rank_one_through(x, y);
    Outcome o;
    o.method = "formula";
    o.result = {{"matrix", io::to_json(a)}, {"norm", spectral_norm(a)}};
    return o;
}

Outcome cmd_op_zspace(const json& q)
{
    Space xs = space_of(q, "domain");
    Space ys = space_of(q, "codomain");
    const auto& x = polyhedral(xs, "operator-space strong anti-coproximinality");
    const auto& y = polyhedral(ys, "operator-space strong anti-coproximinality");
    const json& mj = need(q, "matrices");
    if (!mj.is_array() || mj.empty())
        throw InputError("at /matrices: expected a nonempty array of matrices");
    std::vector<QMatrix> z;
    for (std::size_t i = 0; i < mj.size(); ++i)
    {
        std::string path = "/matrices/" + std::to_string(i);
        z.push_back(io::parse_qmatrix(mj[i], path));
        if (z.back().size() != y.dim() || z.back().front().size() != x.dim())
            throw InputError("at " + path + ": matrix shape does not match codomain x domain");
    }
    Outcome o = from_verdict(polyhedral_opspace_strong_anti(z, x, y), "exact-lp");
    o.notes.push_back("matrices are vectorized row-major; certificate indices refer to the operator ball's dual "
                      "extremes y*(x)");
    return o;
}

// ---- certificates and fixtures --------------------------------------------

Outcome cmd_verify_certificate(const json& q)
{
    json r = verify_report(need(q, "report"));
    Outcome o;
    o.method = "exact-lp";
    o.decision = r["verified"].is_boolean() && r["verified"].get<bool>();
    if (r["verified"].is_null())
    {
        o.conclusive = false;
        o.notes.push_back("report carries no checkable certificate");
    }
    o.result = r;
    return o;
}

Outcome cmd_fixtures(const json& q)
{
    namespace fs = std::filesystem;
    if (!q.contains("out") || !q["out"].is_string())
        throw InputError("fixtures needs --out <directory>");
    fs::path dir = q["out"].get<std::string>();
    fs::create_directories(dir);
    json corpus = fixture_corpus();
    json manifest = json::array();
    for (const auto& [name, fx] : corpus.items())
    {
        std::string file = name + ".json";
        std::ofstream(dir / file) << fx["query"].dump(2) << '\n';
        manifest.push_back({{"name", name}, {"args", fx["args"]}, {"query", file}, {"expected", fx["expected"]}});
    }
    std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
    Outcome o;
    o.method = "formula";
    o.result = {{"directory", dir.string()}, {"fixtures", corpus.size()}};
    return o;
}

// ---- plumbing ------------------------------------------------------------

json load_json(const std::string& text, const std::string& key, bool scalar)
{
    std::error_code ec;
    if (std::filesystem::is_regular_file(text, ec))
    {
        std::ifstream in(text);
        try
        {
            return json::parse(in);
        }
        catch (const json::parse_error& e)
        {
            throw InputError("--" + key + " file " + text + ": " + e.what());
        }
    }
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        if (scalar)
            return json(text);
        throw InputError("--" + key + ": neither a readable file nor valid JSON (" + std::string(e.what()) + ")");
    }
}

struct Binding
{
    CLI::Option* option;
    std::string key;
    std::function<json()> value;
};

class Registry
{
    public:
        void json_input(CLI::App* sub, const std::string& key, const std::string& help, bool scalar = false)
        {
            auto& slot = text_[key];
            auto* opt = sub->add_option("--" + dashed(key), slot, help);
            bindings_.push_back({opt, key, [&slot, key, scalar] { return load_json(slot, key, scalar); }});
        }

        template <typename T>
        void typed(CLI::App* sub, const std::string& key, const std::string& help)
        {
            auto holder = std::make_shared<T>();
            auto* opt = sub->add_option("--" + dashed(key), *holder, help);
            holders_.push_back(holder);
            bindings_.push_back({opt, key, [holder] { return json(*holder); }});
        }

        void flag(CLI::App* sub, const std::string& key, const std::string& help)
        {
            auto* opt = sub->add_flag("--" + dashed(key), help);
            bindings_.push_back({opt, key, [] { return json(true); }});
        }

        void query(CLI::App* sub)
        {
            sub->add_option("--query", query_, "JSON query document (file or inline); flags override its fields");
        }

        void leaf(CLI::App* sub, std::string name, Handler h)
        {
            query(sub);
            sub->add_flag("--json", "JSON output (the only output mode)");
            leaves_.push_back({sub, std::move(name), std::move(h)});
        }

        /** The invoked leaf command, if any. */
        std::optional<std::pair<std::string, Handler>> selected() const
        {
            for (const auto& l : leaves_)
                if (l.app->parsed())
                    return std::make_pair(l.name, l.handler);
            return std::nullopt;
        }

        /** The --query document with every given flag merged over it. */
        json merged_query() const
        {
            json q = query_.empty() ? json::object() : load_json(query_, "query", false);
            if (!q.is_object())
                throw InputError("--query: expected a JSON object");
            for (const auto& b : bindings_)
                if (b.option->count() > 0)
                    q[b.key] = b.value();
            return q;
        }

    private:
        struct Leaf
        {
            CLI::App* app;
            std::string name;
            Handler handler;
        };

        static std::string dashed(std::string key)
        {
            for (auto& c : key)
                if (c == '_')
                    c = '-';
            return key;
        }

        std::map<std::string, std::string> text_;
        std::vector<std::shared_ptr<void>> holders_;
        std::vector<Binding> bindings_;
        std::vector<Leaf> leaves_;
        std::string query_;
};

int exit_code(const Outcome& o)
{
    return o.conclusive ? Decided : Inconclusive;
}

json report_json(const std::string& command, const json& q, const Outcome& o)
{
    json r = {{"command", command},
              {"input", q},
              {"decision", o.decision ? json(*o.decision) : json(nullptr)},
              {"conclusive", o.conclusive},
              {"certificate", o.certificate},
              {"method", o.method},
              {"notes", o.notes}};
    if (!o.result.is_null())
        r["result"] = o.result;
    return r;
}

json error_json(const std::string& command, const std::string& kind, const std::string& message)
{
    return {{"command", command}, {"error", {{"kind", kind}, {"message", message}}}};
}

void build(CLI::App& app, Registry& reg)
{
    auto space = [&](CLI::App* s, const std::string& key = "space") {
        reg.json_input(s, key, "space JSON (file or inline)");
    };
    auto vec = [&](CLI::App* s, const std::string& key) { reg.json_input(s, key, "vector JSON array"); };
    auto subspace = [&](CLI::App* s) { reg.json_input(s, "subspace", "subspace JSON {\"basis\": [...]}"); };
    auto eps = [&](CLI::App* s) { reg.json_input(s, "eps", "epsilon in [0, 1): rational \"a/b\" or number", true); };
    auto grid = [&](CLI::App* s) {
        reg.typed<std::size_t>(s, "grid_points", "oracle grid size (default 4001)");
        reg.typed<double>(s, "grid_range", "oracle lambda range (default 10|x|/|y|)");
    };

    auto* s = app.add_subcommand("norm", "norm of a vector");
    space(s), vec(s, "x"), reg.leaf(s, "norm", cmd_norm);

    s = app.add_subcommand("support", "supporting functionals J(x), smoothness and rotundity");
    space(s), vec(s, "x"), reg.leaf(s, "support", cmd_support);

    s = app.add_subcommand("faces", "facets of a polyhedral ball, optionally traced on a subspace");
    space(s), subspace(s), reg.leaf(s, "faces", cmd_faces);

    s = app.add_subcommand("orth", "x is (epsilon-)Birkhoff-James orthogonal to y");
    space(s), vec(s, "x"), vec(s, "y"), eps(s), grid(s);
    reg.flag(s, "oracle", "decide with the lambda-grid oracle instead");
    reg.leaf(s, "orth", cmd_orth);

    s = app.add_subcommand("suborth", "subspace Y is (epsilon-)orthogonal to z");
    space(s), subspace(s), vec(s, "z"), eps(s), reg.leaf(s, "suborth", cmd_suborth);

    auto* co = app.add_subcommand("coapprox", "best coapproximation");
    co->require_subcommand(1);
    s = co->add_subcommand("verify", "y0 is a best coapproximation to x from Y");
    space(s), subspace(s), vec(s, "x"), vec(s, "y0"), reg.leaf(s, "coapprox verify", [](const json& q) {
        return cmd_verify(q, false);
    });
    s = co->add_subcommand("eps-verify", "y0 is an epsilon-best coapproximation to x from Y");
    space(s), subspace(s), vec(s, "x"), vec(s, "y0"), eps(s);
    reg.leaf(s, "coapprox eps-verify", [](const json& q) { return cmd_verify(q, true); });
    s = co->add_subcommand("find-direction", "a nonzero z with Y orthogonal to z");
    space(s), subspace(s), reg.leaf(s, "coapprox find-direction", cmd_find_direction);
    s = co->add_subcommand("defect", "coapproximation defect of Y");
    space(s), subspace(s), reg.leaf(s, "coapprox defect", cmd_defect);

    auto* de = app.add_subcommand("decide", "anti-coproximinality deciders");
    de->require_subcommand(1);
    s = de->add_subcommand("anti", "Y is anti-coproximinal");
    space(s), subspace(s);
    reg.json_input(s, "probes", "smooth points of Y for the smooth-span test");
    reg.leaf(s, "decide anti", cmd_anti);
    s = de->add_subcommand("strong-anti", "Y is strongly anti-coproximinal");
    space(s), subspace(s), reg.leaf(s, "decide strong-anti", cmd_strong_anti);
    s = de->add_subcommand("report", "necessary-condition battery");
    space(s), subspace(s), reg.leaf(s, "decide report", cmd_report);

    s = app.add_subcommand("dominance", "coordinate dominance in a sup-norm space");
    space(s), subspace(s);
    reg.typed<long long>(s, "r", "coordinate index, 1-based");
    reg.flag(s, "all", "every coordinate");
    reg.leaf(s, "dominance", cmd_dominance);

    s = app.add_subcommand("lift", "lift Y into the sup-product of copies and compare verdicts");
    space(s), subspace(s);
    reg.typed<long long>(s, "copies", "number of copies k");
    reg.leaf(s, "lift", cmd_lift);

    auto* op = app.add_subcommand("op", "operator orthogonality");
    op->require_subcommand(1);
    auto mat = [&](CLI::App* c, const std::string& key) { reg.json_input(c, key, "matrix JSON (row-major)"); };
    s = op->add_subcommand("norm", "operator norm (spectral, or exact between polyhedral spaces)");
    mat(s, "t"), space(s, "domain"), space(s, "codomain"), reg.leaf(s, "op norm", cmd_op_norm);
    s = op->add_subcommand("attain", "norm attainment set");
    mat(s, "t"), reg.leaf(s, "op attain", cmd_op_attain);
    s = op->add_subcommand("ase", "absolutely strongly exposing");
    mat(s, "t"), reg.leaf(s, "op ase", cmd_op_ase);
    s = op->add_subcommand("orth", "T is (epsilon-)orthogonal to A");
    mat(s, "t"), mat(s, "a"), eps(s), reg.leaf(s, "op orth", cmd_op_orth);
    s = op->add_subcommand("bs", "decide through the exposing direction (ASE T)");
    mat(s, "t"), mat(s, "a"), eps(s), reg.leaf(s, "op bs", cmd_op_bs);
    s = op->add_subcommand("rank1", "rank-one operator y x^T");
    vec(s, "x"), vec(s, "y"), reg.leaf(s, "op rank1", cmd_op_rank1);
    auto* zs = op->add_subcommand("zspace", "operator subspaces");
    zs->require_subcommand(1);
    s = zs->add_subcommand("strong-anti", "Z in L(X, Y) is strongly anti-coproximinal");
    space(s, "domain"), space(s, "codomain");
    reg.json_input(s, "matrices", "JSON array of matrices spanning Z");
    reg.leaf(s, "op zspace strong-anti", cmd_op_zspace);

    s = app.add_subcommand("oracle", "lambda-grid oracle for vectors or matrices");
    space(s), vec(s, "x"), vec(s, "y"), mat(s, "t"), mat(s, "a"), eps(s), grid(s);
    reg.leaf(s, "oracle", cmd_oracle);

    s = app.add_subcommand("verify-certificate", "re-check the certificate of an emitted report");
    reg.json_input(s, "report", "report JSON (file or inline)");
    reg.leaf(s, "verify-certificate", cmd_verify_certificate);

    s = app.add_subcommand("fixtures", "write the worked-example corpus");
    reg.typed<std::string>(s, "out", "output directory");
    reg.leaf(s, "fixtures", cmd_fixtures);
}

}   // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Birkhoff-James orthogonality, best coapproximation and anti-coproximinality deciders", "coprox"};
    app.require_subcommand(1);
    Registry reg;
    build(app, reg);
    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        int code = app.exit(e, out, err);
        return code == 0 ? Decided : InputFailure;
    }

    std::string command = "?";
    auto start = std::chrono::steady_clock::now();
    int code = Decided;
    try
    {
        auto sel = reg.selected();
        if (!sel)
            throw InputError("no command selected");
        command = sel->first;
        json q = reg.merged_query();
        Outcome o = sel->second(q);
        out << report_json(command, q, o).dump(2) << '\n';
        code = exit_code(o);
    }
    catch (const ConsistencyError& e)
    {
        out << error_json(command, "consistency", e.what()).dump(2) << '\n';
        err << "coprox: internal consistency failure: " << e.what() << '\n';
        code = Inconsistent;
    }
    catch (const UnsupportedError& e)
    {
        out << error_json(command, "unsupported", e.what()).dump(2) << '\n';
        err << "coprox: " << e.what() << '\n';
        code = Inconclusive;
    }
    catch (const NotPolyhedralError& e)
    {
        out << error_json(command, "unsupported", e.what()).dump(2) << '\n';
        err << "coprox: " << e.what() << '\n';
        code = Inconclusive;
    }
    catch (const CapExceededError& e)
    {
        out << error_json(command, "cap_exceeded", e.what()).dump(2) << '\n';
        err << "coprox: " << e.what() << '\n';
        code = Inconclusive;
    }
    catch (const Error& e)
    {
        out << error_json(command, "input", e.what()).dump(2) << '\n';
        err << "coprox: " << e.what() << '\n';
        code = InputFailure;
    }
    catch (const json::exception& e)
    {
        out << error_json(command, "input", e.what()).dump(2) << '\n';
        err << "coprox: " << e.what() << '\n';
        code = InputFailure;
    }
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    err << "coprox: " << command << " finished in " << ms << " ms (exit " << code << ")\n";
    return code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"coprox"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}   // namespace coprox::cli
