/**
 * Exact rational scalars and the small amount of vector arithmetic the
 * polyhedral path needs.
 */

#ifndef COPROX_RATIONAL_HPP
#define COPROX_RATIONAL_HPP

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace coprox {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using QVector = std::vector<Rational>;
using RVector = std::vector<double>;

/**
 * Parse "a/b", an integer, or a plain decimal such as "-0.375" into an exact
 * rational. Throws InputError on anything else (including exponents).
 */
Rational parse_rational(std::string_view text);

/** Canonical "a/b" (or "a" when the denominator is 1) form. */
std::string to_string(const Rational& value);

double to_double(const Rational& value);
RVector to_double(const QVector& v);

/** Exact binary value of a double. */
Rational exact_rational(double value);

/** Nearest fraction with the given denominator. */
Rational round_rational(double value, long denominator);

Rational dot(const QVector& a, const QVector& b);
double dot(const RVector& a, const RVector& b);

QVector negated(QVector v);
QVector scaled(QVector v, const Rational& factor);
QVector add(const QVector& a, const QVector& b);
QVector subtract(const QVector& a, const QVector& b);
bool is_zero(const QVector& v);

/** Linear combination sum_j coeffs[j] * columns[j]. */
QVector combine(const std::vector<QVector>& columns, const QVector& coeffs);

}   // namespace coprox

#endif
