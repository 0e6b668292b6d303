/**
 * Birkhoff–James and ε-Birkhoff–James orthogonality.
 *
 * With real scalars, x ⊥_B^ε y holds iff the interval {f(y) : f ∈ J(x)}
 * meets [−ε‖y‖, ε‖y‖]; for ε = 0 this is plain Birkhoff–James
 * orthogonality. The λ-grid oracle tests the defining inequality directly and
 * can only refute.
 */

#ifndef COPROX_ORTHOGONALITY_HPP
#define COPROX_ORTHOGONALITY_HPP

#include <functional>
#include <optional>

#include "coprox/faces.hpp"
#include "coprox/rational.hpp"
#include "coprox/spaces.hpp"
#include "coprox/verdict.hpp"

namespace coprox {

Interval<Rational> support_interval(const PolyhedralSpace& space, const QVector& x, const QVector& y);
Interval<double> support_interval(const LpSpace& space, const RVector& x, const RVector& y);
Interval<double> support_interval(const LpProductSpace& space, const RVector& x, const RVector& y,
                                  double tol = default_tolerance);

/** Certificate when true: ExactFunctional f ∈ J(x) with f(y) = 0. */
Verdict bj_orthogonal(const PolyhedralSpace& space, const QVector& x, const QVector& y);
/** Certificate when true: ExactFunctional f ∈ J(x) with |f(y)| ≤ ε‖y‖. */
Verdict eps_orthogonal(const PolyhedralSpace& space, const QVector& x, const QVector& y, const Epsilon& eps);

Verdict bj_orthogonal(const LpSpace& space, const RVector& x, const RVector& y, double tol = default_tolerance);
Verdict eps_orthogonal(const LpSpace& space, const RVector& x, const RVector& y, const Epsilon& eps,
                       double tol = default_tolerance);
Verdict eps_orthogonal(const LpProductSpace& space, const RVector& x, const RVector& y, const Epsilon& eps,
                       double tol = default_tolerance);

/** Interval of g(z) over the active set A(Q) of one restricted facet. */
Interval<Rational> facet_interval(const PolyhedralSpace& space, const RestrictedFacet& facet, const QVector& z);

/**
 * Y ⊥_B^ε z, checked facet-wise on B_Y. Certificate: FacetFunctionals when
 * true, FacetViolation when false.
 */
Verdict subspace_eps_orthogonal(const PolyhedralSpace& space, const Subspace& y, const QVector& z,
                                const Epsilon& eps);
Verdict subspace_eps_orthogonal(const PolyhedralSpace& space, const RestrictedBall& ball, const QVector& z,
                                const Epsilon& eps);
Verdict subspace_orthogonal(const PolyhedralSpace& space, const Subspace& y, const QVector& z);

struct GridConfig
{
    std::size_t points = 4001;  // odd: 0 plus (points-1)/2 log-spaced values per side
    double range = 0.0;         // 0 selects 10‖x‖/‖y‖
    double rel_tol = 1e-12;     // violation threshold, relative to max(1, ‖x‖)
};

using NormFunction = std::function<double(const RVector&)>;

/**
 * Searches for λ with ‖x + λy‖ < ‖x‖ − ε|λ|‖y‖ − tol. False with a
 * ViolatingLambda certificate when found; true means only "no violation
 * found".
 */
Verdict oracle_eps_orthogonal(const NormFunction& norm, const RVector& x, const RVector& y, double eps,
                              const GridConfig& grid = {});
Verdict oracle_eps_orthogonal(const Space& space, const RVector& x, const RVector& y, double eps,
                              const GridConfig& grid = {});

/** A functional in J(x) ∩ J(y), if any (the common extreme duals span that face). */
std::optional<QVector> shared_support_functional(const PolyhedralSpace& space, const QVector& x, const QVector& y);

}   // namespace coprox

#endif
