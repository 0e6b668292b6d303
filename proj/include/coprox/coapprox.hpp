/**
 * Best coapproximation and (strong) anti-coproximinality of subspaces.
 *
 * On a polyhedral space, Y ⊥_B^ε z holds iff for every facet Q of B_Y the
 * values {g(z) : g ∈ A(Q)} reach into [−ε‖z‖, ε‖z‖]. Searching for such a z
 * (or for the least ε admitting one) becomes a finite family of exact LPs
 * indexed by a choice of g⁻, g⁺ ∈ A(Q) per facet and a normalizing ambient
 * facet h_k(z) = 1; the family is explored depth-first with pruning.
 */

#ifndef COPROX_COAPPROX_HPP
#define COPROX_COAPPROX_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coprox/faces.hpp"
#include "coprox/spaces.hpp"
#include "coprox/verdict.hpp"

namespace coprox {

/** 10^6, or the value of COAPPROX_LP_CAP when set to a positive integer. */
std::size_t default_lp_cap();

struct SearchLimits
{
    std::size_t lp_cap = default_lp_cap();     // maximum LP solves per search
};

/** Y ⊥_B (x − y0). x = y0 is reported as a degenerate success. */
Verdict verify_best_coapprox(const PolyhedralSpace& space, const Subspace& y, const QVector& x, const QVector& y0);
Verdict verify_eps_best_coapprox(const PolyhedralSpace& space, const Subspace& y, const QVector& x,
                                 const QVector& y0, const Epsilon& eps);

/** A unit-sphere z with Y ⊥_B z (lexicographically least on its branch), or nullopt. */
std::optional<QVector> exists_orthogonal_direction(const PolyhedralSpace& space, const Subspace& y,
                                                   const SearchLimits& limits = {});

struct DefectReport
{
    Rational delta;                         // min over unit z of the least ε with Y ⊥_B^ε z
    QVector direction;                      // a minimizing unit z
    std::vector<Rational> facet_distances;  // per restricted facet, dist(interval_Q(z), 0)
    std::size_t lp_solves = 0;
};

DefectReport coapprox_defect(const PolyhedralSpace& space, const Subspace& y, const SearchLimits& limits = {});

/** True iff no nonzero z has Y ⊥_B z. Certificate when false: Direction. */
Verdict decide_anti(const PolyhedralSpace& space, const Subspace& y, const SearchLimits& limits = {});

/**
 * Route A: Y meets the relative interior of every facet. Route B: defect = 1.
 * Both are always computed; disagreement raises ConsistencyError.
 * Certificate: ExactWitnessList (one relint point per facet) or MissedFacet.
 */
Verdict decide_strong_anti(const PolyhedralSpace& space, const Subspace& y, const SearchLimits& limits = {});

/** Strictly convex ambient: every unit vector is rotund, so no proper Y qualifies. */
Verdict decide_strong_anti(const LpSpace& space, const Subspace& y);

/**
 * Sufficient test: the supporting functionals of smooth probes in Y span X*.
 * decision = false is inconclusive (conclusive = false).
 */
Verdict anti_via_smooth_span(const PolyhedralSpace& space, const Subspace& y, const std::vector<QVector>& probes);
Verdict anti_via_smooth_span(const LpSpace& space, const Subspace& y, const std::vector<RVector>& probes,
                             double tol = default_tolerance);

/** Sup-norm ambient only: ∃ y ∈ Y with |y_r| > |y_n| for all n ≠ r. Certificate: ExactWitness. */
Verdict coordinate_dominance(const PolyhedralSpace& space, const Subspace& y, std::size_t r);
/** Dominance for every coordinate. Certificate: ExactWitnessList. */
Verdict coordinate_dominance_all(const PolyhedralSpace& space, const Subspace& y);

struct NecessaryCheck
{
    std::string name;
    std::optional<bool> passed;     // nullopt: not applicable to this space
    std::string detail;
};

struct NecessaryReport
{
    std::vector<NecessaryCheck> checks;

    bool any_failed() const;
};

NecessaryReport necessary_checks(const PolyhedralSpace& space, const Subspace& y);
NecessaryReport necessary_checks(const LpSpace& space, const Subspace& y);

/** Y^k inside X^k (sup-product), block-diagonal basis, copy-major order. */
Subspace lift_sup_product(const Subspace& y, std::size_t copies);

}   // namespace coprox

#endif
