/**
 * Decision results shared by every decider: an interval type for the image of
 * J(x) under a pairing, the ε parameter, and a Verdict carrying a
 * machine-checkable certificate.
 */

#ifndef COPROX_VERDICT_HPP
#define COPROX_VERDICT_HPP

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "coprox/rational.hpp"

namespace coprox {

template <typename T>
struct Interval
{
    T lo{};
    T hi{};

    bool contains(const T& v) const { return lo <= v && v <= hi; }
    bool meets(const T& a, const T& b) const { return lo <= b && a <= hi; }

    /** Distance from the interval to 0 (0 when it contains 0). */
    T distance_to_zero() const
    {
        if (lo > T(0))
            return lo;
        if (hi < T(0))
            return -hi;
        return T(0);
    }
};

/** ε ∈ [0, 1), held exactly; the floating-point paths use the double image. */
class Epsilon
{
    public:
        Epsilon() = default;
        explicit Epsilon(Rational value);
        static Epsilon from_double(double value);

        const Rational& exact() const { return value_; }
        double value() const { return approx_; }

    private:
        Rational value_ = 0;
        double approx_ = 0.0;
};

namespace cert {

struct None
{
};

/** A supporting functional f ∈ J(x) together with the pairing f(y). */
struct ExactFunctional
{
    QVector functional;
    Rational value;
};

struct NumericFunctional
{
    RVector functional;
    double value = 0.0;
};

/** Nonzero direction z (e.g. one with Y ⊥_B z). */
struct Direction
{
    QVector z;
};

/** λ with ‖x + λy‖ < ‖x‖ − ε|λ|‖y‖. */
struct ViolatingLambda
{
    double lambda = 0.0;
    double norm_value = 0.0;    // ‖x + λy‖
    double bound = 0.0;         // ‖x‖ − ε|λ|‖y‖
};

struct ExactWitness
{
    QVector point;
};

struct NumericWitness
{
    RVector point;
};

/** Restricted facet whose active interval misses the admissible window. */
struct FacetViolation
{
    std::size_t facet = 0;
    Interval<Rational> interval;
};

/** One functional per restricted facet, each in co A(Q), all within the window at z. */
struct FacetFunctionals
{
    std::vector<QVector> functionals;
};

/** Two ambient facets with the same trace on Y. */
struct FacetPair
{
    std::size_t first = 0;
    std::size_t second = 0;
};

/** Ambient facet whose relative interior Y misses. */
struct MissedFacet
{
    std::size_t facet = 0;
};

struct FunctionalList
{
    std::vector<RVector> functionals;
};

/** One witness per item (facet, extreme pair, ...), all re-checkable. */
struct ExactWitnessList
{
    std::vector<QVector> points;
};

}   // namespace cert

using Certificate = std::variant<cert::None, cert::ExactFunctional, cert::NumericFunctional,
                                 cert::Direction, cert::ViolatingLambda, cert::ExactWitness,
                                 cert::NumericWitness, cert::FacetViolation, cert::FacetFunctionals, cert::FacetPair,
                                 cert::MissedFacet, cert::FunctionalList, cert::ExactWitnessList>;

struct Verdict
{
    bool decision = false;
    /** False when "decision = false" only means the sufficient test did not fire. */
    bool conclusive = true;
    Certificate certificate = cert::None{};
    std::string note;
};

}   // namespace coprox

#endif
