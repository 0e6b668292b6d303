#include "coprox/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "coprox/errors.hpp"

namespace coprox {

namespace {

bool is_integer_literal(std::string_view s)
{
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+'))
        ++i;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

Rational parse_integer(std::string_view s)
{
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    return Rational(boost::multiprecision::mpz_int(std::string(s)));
}

}   // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    if (s.empty())
        throw InputError("empty rational literal");

    if (auto slash = s.find('/'); slash != std::string_view::npos)
    {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!is_integer_literal(num) || !is_integer_literal(den))
            throw InputError("malformed rational literal '" + std::string(text) + "'");
        Rational d = parse_integer(den);
        if (d == 0)
            throw InputError("zero denominator in '" + std::string(text) + "'");
        return parse_integer(num) / d;
    }
    if (is_integer_literal(s))
        return parse_integer(s);

    // Plain decimal: sign, digits, '.', digits.
    auto dot_pos = s.find('.');
    if (dot_pos == std::string_view::npos)
        throw InputError("malformed rational literal '" + std::string(text) + "'");
    std::string digits(s.substr(0, dot_pos));
    std::string frac(s.substr(dot_pos + 1));
    if (frac.empty() || !is_integer_literal(frac) || frac[0] == '-' || frac[0] == '+')
        throw InputError("malformed rational literal '" + std::string(text) + "'");
    bool negative = false;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+'))
    {
        negative = digits[0] == '-';
        digits.erase(0, 1);
    }
    if (digits.empty())
        digits = "0";
    if (!is_integer_literal(digits))
        throw InputError("malformed rational literal '" + std::string(text) + "'");
    Rational scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
        scale *= 10;
    Rational value = parse_integer(digits) + parse_integer(frac) / scale;
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value)
{
    return value.str();
}

double to_double(const Rational& value)
{
    return value.convert_to<double>();
}

RVector to_double(const QVector& v)
{
    RVector out;
    out.reserve(v.size());
    for (const auto& x : v)
        out.push_back(to_double(x));
    return out;
}

Rational exact_rational(double value)
{
    if (!std::isfinite(value))
        throw InputError("non-finite value cannot be converted to a rational");
    return Rational(value);
}

Rational round_rational(double value, long denominator)
{
    if (!std::isfinite(value) || denominator <= 0)
        throw InputError("cannot round non-finite value");
    double scaled = std::nearbyint(value * static_cast<double>(denominator));
    return Rational(boost::multiprecision::mpz_int(static_cast<long long>(scaled)))
           / Rational(denominator);
}

Rational dot(const QVector& a, const QVector& b)
{
    if (a.size() != b.size())
        throw DimensionMismatchError("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0)
            s += a[i] * b[i];
    return s;
}

double dot(const RVector& a, const RVector& b)
{
    if (a.size() != b.size())
        throw DimensionMismatchError("dot: length mismatch");
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

QVector negated(QVector v)
{
    for (auto& x : v)
        x = -x;
    return v;
}

QVector scaled(QVector v, const Rational& factor)
{
    for (auto& x : v)
        x *= factor;
    return v;
}

QVector add(const QVector& a, const QVector& b)
{
    if (a.size() != b.size())
        throw DimensionMismatchError("add: length mismatch");
    QVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return out;
}

QVector subtract(const QVector& a, const QVector& b)
{
    if (a.size() != b.size())
        throw DimensionMismatchError("subtract: length mismatch");
    QVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

bool is_zero(const QVector& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

QVector combine(const std::vector<QVector>& columns, const QVector& coeffs)
{
    if (columns.size() != coeffs.size())
        throw DimensionMismatchError("combine: coefficient count mismatch");
    if (columns.empty())
        return {};
    QVector out(columns.front().size(), Rational(0));
    for (std::size_t j = 0; j < columns.size(); ++j)
    {
        if (coeffs[j] == 0)
            continue;
        if (columns[j].size() != out.size())
            throw DimensionMismatchError("combine: column length mismatch");
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += coeffs[j] * columns[j][i];
    }
    return out;
}

}   // namespace coprox
