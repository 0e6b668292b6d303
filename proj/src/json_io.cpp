#include "coprox/json_io.hpp"

#include <cmath>
#include <type_traits>

#include "coprox/errors.hpp"

namespace coprox::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw InputError("at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& path)
{
    if (!j.is_object())
        fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        fail(path, std::string("missing field \"") + key + "\"");
    return *it;
}

std::size_t parse_count(const json& j, const std::string& path)
{
    if (!j.is_number_integer() || j.get<long long>() <= 0)
        fail(path, "expected a positive integer");
    return j.get<std::size_t>();
}

const json& array_at(const json& j, const std::string& path)
{
    if (!j.is_array())
        fail(path, "expected an array");
    return j;
}

template <typename Parse>
auto parse_list(const json& j, const std::string& path, Parse parse)
{
    array_at(j, path);
    std::vector<std::invoke_result_t<Parse, const json&, const std::string&>> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse(j[i], path + "/" + std::to_string(i)));
    return out;
}

Rational parse_lenient(const json& j, const std::string& path)
{
    if (j.is_number_float())
    {
        double d = j.get<double>();
        if (!std::isfinite(d))
            fail(path, "non-finite number");
        return exact_rational(d);
    }
    return parse_rational(j, path);
}

}   // namespace

Rational parse_rational(const json& j, const std::string& path)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (j.is_number_unsigned())
        return Rational(j.get<unsigned long long>());
    if (j.is_string())
    {
        try
        {
            return coprox::parse_rational(j.get<std::string>());
        }
        catch (const InputError& e)
        {
            fail(path, e.what());
        }
    }
    if (j.is_number_float())
        fail(path, "floating-point numbers are not accepted on the exact path; use \"a/b\" or a decimal string");
    fail(path, "expected a rational number");
}

double parse_real(const json& j, const std::string& path)
{
    if (j.is_number())
    {
        double d = j.get<double>();
        if (!std::isfinite(d))
            fail(path, "non-finite number");
        return d;
    }
    return to_double(parse_rational(j, path));
}

QVector parse_qvector(const json& j, const std::string& path)
{
    return parse_list(j, path, [](const json& e, const std::string& p) { return parse_rational(e, p); });
}

QVector parse_qvector_lenient(const json& j, const std::string& path)
{
    return parse_list(j, path, parse_lenient);
}

RVector parse_rvector(const json& j, const std::string& path)
{
    return parse_list(j, path, parse_real);
}

std::vector<QVector> parse_qvectors(const json& j, const std::string& path)
{
    return parse_list(j, path, parse_qvector);
}

Space parse_space(const json& j, const std::string& path)
{
    const json& type = field(j, "type", path);
    if (!type.is_string())
        fail(path + "/type", "expected a string");
    const std::string t = type.get<std::string>();
    if (t == "polyhedral")
    {
        std::size_t cap = default_dimension_cap;
        if (j.contains("dimension_cap"))
            cap = parse_count(j["dimension_cap"], path + "/dimension_cap");
        return PolyhedralSpace::from_vertices(parse_qvectors(field(j, "vertices", path), path + "/vertices"), cap);
    }
    if (t == "linf")
        return PolyhedralSpace::linf(parse_count(field(j, "n", path), path + "/n"));
    if (t == "l1")
        return PolyhedralSpace::l1(parse_count(field(j, "n", path), path + "/n"));
    if (t == "lp")
    {
        std::size_t n = parse_count(field(j, "n", path), path + "/n");
        double p = parse_real(field(j, "p", path), path + "/p");
        if (!(p > 1.0) || !std::isfinite(p))
            fail(path + "/p", "exponent must satisfy 1 < p < infinity (use linf or l1 for the endpoints)");
        return LpSpace(n, p);
    }
    if (t == "sup_product")
    {
        Space base = parse_space(field(j, "base", path), path + "/base");
        std::size_t copies = parse_count(field(j, "copies", path), path + "/copies");
        if (auto* poly = std::get_if<PolyhedralSpace>(&base))
            return PolyhedralSpace::sup_product(*poly, copies);
        if (auto* lp = std::get_if<LpSpace>(&base))
            return LpProductSpace(*lp, copies);
        fail(path + "/base", "nested sup products of non-polyhedral spaces are not supported");
    }
    fail(path + "/type", "unknown space type \"" + t + "\"");
}

Subspace parse_subspace(const json& j, std::size_t ambient_dim, bool lenient, const std::string& path)
{
    const json& basis = field(j, "basis", path);
    std::vector<QVector> cols = lenient ? parse_list(basis, path + "/basis", parse_qvector_lenient)
                                        : parse_qvectors(basis, path + "/basis");
    for (std::size_t i = 0; i < cols.size(); ++i)
        if (cols[i].size() != ambient_dim)
            fail(path + "/basis/" + std::to_string(i),
                 "basis vector length " + std::to_string(cols[i].size()) + " does not match dimension "
                     + std::to_string(ambient_dim));
    try
    {
        return Subspace(ambient_dim, std::move(cols));
    }
    catch (const InputError& e)
    {
        fail(path + "/basis", e.what());
    }
}

Matrix parse_matrix(const json& j, const std::string& path)
{
    auto rows = parse_list(j, path, parse_rvector);
    if (rows.empty() || rows.front().empty())
        fail(path, "matrix must be nonempty");
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        if (rows[i].size() != rows.front().size())
            fail(path + "/" + std::to_string(i), "ragged matrix row");
        for (std::size_t c = 0; c < rows[i].size(); ++c)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c];
    }
    return m;
}

QMatrix parse_qmatrix(const json& j, const std::string& path)
{
    auto rows = parse_qvectors(j, path);
    if (rows.empty() || rows.front().empty())
        fail(path, "matrix must be nonempty");
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].size() != rows.front().size())
            fail(path + "/" + std::to_string(i), "ragged matrix row");
    return rows;
}

json to_json(const Rational& r)
{
    return to_string(r);
}

json to_json(const QVector& v)
{
    json out = json::array();
    for (const auto& a : v)
        out.push_back(to_string(a));
    return out;
}

json to_json(const RVector& v)
{
    json out = json::array();
    for (double a : v)
        out.push_back(a);
    return out;
}

json to_json(const std::vector<QVector>& vs)
{
    json out = json::array();
    for (const auto& v : vs)
        out.push_back(to_json(v));
    return out;
}

json to_json(const Matrix& m)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(m(i, c));
        out.push_back(std::move(row));
    }
    return out;
}

json to_json(const Certificate& c)
{
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, cert::None>)
                return nullptr;
            else if constexpr (std::is_same_v<T, cert::ExactFunctional>)
                return {{"type", "functional"}, {"functional", to_json(v.functional)}, {"value", to_json(v.value)}};
            else if constexpr (std::is_same_v<T, cert::NumericFunctional>)
                return {{"type", "functional"}, {"functional", to_json(v.functional)}, {"value", v.value}};
            else if constexpr (std::is_same_v<T, cert::Direction>)
                return {{"type", "direction"}, {"z", to_json(v.z)}};
            else if constexpr (std::is_same_v<T, cert::ViolatingLambda>)
                return {{"type", "violating_lambda"}, {"lambda", v.lambda}, {"norm", v.norm_value}, {"bound", v.bound}};
            else if constexpr (std::is_same_v<T, cert::ExactWitness>)
                return {{"type", "witness"}, {"point", to_json(v.point)}};
            else if constexpr (std::is_same_v<T, cert::NumericWitness>)
                return {{"type", "witness"}, {"point", to_json(v.point)}};
            else if constexpr (std::is_same_v<T, cert::FacetViolation>)
                return {{"type", "facet_violation"},
                        {"facet", v.facet},
                        {"interval", {to_json(v.interval.lo), to_json(v.interval.hi)}}};
            else if constexpr (std::is_same_v<T, cert::FacetFunctionals>)
                return {{"type", "facet_functionals"}, {"functionals", to_json(v.functionals)}};
            else if constexpr (std::is_same_v<T, cert::FacetPair>)
                return {{"type", "facet_pair"}, {"facets", {v.first, v.second}}};
            else if constexpr (std::is_same_v<T, cert::MissedFacet>)
                return {{"type", "missed_facet"}, {"facet", v.facet}};
            else if constexpr (std::is_same_v<T, cert::FunctionalList>)
            {
                json list = json::array();
                for (const auto& f : v.functionals)
                    list.push_back(to_json(f));
                return {{"type", "functional_list"}, {"functionals", std::move(list)}};
            }
            else
                return {{"type", "witness_list"}, {"points", to_json(v.points)}};
        },
        c);
}

json to_json(const FaceDescriptor& f)
{
    return {{"functional", to_json(f.functional)}, {"vertex_indices", f.vertex_indices}, {"dimension", f.dimension}};
}

json to_json(const DefectReport& d)
{
    json dist = json::array();
    for (const auto& r : d.facet_distances)
        dist.push_back(to_json(r));
    return {{"delta", to_json(d.delta)},
            {"direction", to_json(d.direction)},
            {"facet_distances", std::move(dist)},
            {"lp_solves", d.lp_solves}};
}

json to_json(const NecessaryReport& r)
{
    json out = json::array();
    for (const auto& c : r.checks)
    {
        json passed = c.passed ? json(*c.passed) : json(nullptr);
        out.push_back({{"check", c.name}, {"passed", passed}, {"detail", c.detail}});
    }
    return out;
}

}   // namespace coprox::io
