/**
 * Operator orthogonality for real matrices.
 *
 * Spectral path (Hilbert domain and codomain, floating point): norm
 * attainment through the top singular subspace, the Ω-interval reduction of
 * ε-orthogonality, and the exposing-direction reduction for operators with a simple
 * top singular value. Polyhedral path (exact): the operator ball of
 * L(X, Y) for polyhedral X, Y, whose dual extremes are the tensors y*⊗x.
 */

#ifndef COPROX_OPERATORS_HPP
#define COPROX_OPERATORS_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "coprox/orthogonality.hpp"
#include "coprox/rational.hpp"
#include "coprox/spaces.hpp"
#include "coprox/verdict.hpp"

namespace coprox {

using Matrix = Eigen::MatrixXd;

inline constexpr double default_multiplicity_tolerance = 1e-8;

struct NormAttainmentSet
{
    double sigma1 = 0.0;
    Matrix basis;               // orthonormal columns spanning the top right-singular subspace
    std::size_t multiplicity = 0;
};

double spectral_norm(const Matrix& t);

/** Top singular value and subspace from the eigendecomposition of TᵀT. */
NormAttainmentSet attainment(const Matrix& t, double rel_tol = default_multiplicity_tolerance);

/** Absolutely strongly exposing in finite-dimensional Hilbert space: simple top singular value. */
bool is_ase(const Matrix& t, double rel_tol = default_multiplicity_tolerance);

/**
 * {⟨Âx, T̂x⟩ : x unit in M_T} for T̂, Â normalized to unit norm; the
 * eigenvalue range of the symmetrized restricted form.
 */
Interval<double> omega_interval(const Matrix& t, const Matrix& a, double rel_tol = default_multiplicity_tolerance);

/** T ⊥_B^ε A iff the Ω-interval meets [−ε, ε]. Certificate when true: NumericWitness x ∈ M_T. */
Verdict op_eps_orthogonal(const Matrix& t, const Matrix& a, double eps, double tol = default_tolerance);
Verdict op_bj_orthogonal(const Matrix& t, const Matrix& a, double tol = default_tolerance);

/**
 * For ASE T: decide through the single exposing direction x0. Cross-checked
 * against op_eps_orthogonal, and against vector ε-orthogonality of Tx0, Ax0
 * when x0 also attains the norm of A.
 */
Verdict bs_reduce(const Matrix& t, const Matrix& a, double eps, double tol = default_tolerance);

/** A = y xᵀ (requires ‖x‖₂ = 1, y ≠ 0): Ax = y, A vanishes on x⊥. */
Matrix rank_one_through(const RVector& x, const RVector& y, double tol = default_tolerance);

/** λ-grid oracle over the spectral norm. */
Verdict operator_oracle(const Matrix& t, const Matrix& a, double eps, const GridConfig& grid = {});

RVector vectorize(const Matrix& m);                         // row-major
Matrix unvectorize(const RVector& v, std::size_t rows, std::size_t cols);

/** Exact matrices as row vectors. */
using QMatrix = std::vector<QVector>;

QVector vectorize(const QMatrix& m);

/** ‖A‖ = max over vertices x of B_X and dual extremes h of Y of h(Ax). */
Rational operator_norm(const QMatrix& a, const PolyhedralSpace& x, const PolyhedralSpace& y);

/**
 * Unit ball of L(X, Y) as a polyhedral space on row-major vectorized
 * matrices; dual extremes are the tensors y*⊗x. The vectorized dimension is
 * subject to `dimension_cap`.
 */
PolyhedralSpace operator_ball(const PolyhedralSpace& x, const PolyhedralSpace& y,
                              std::size_t dimension_cap = default_dimension_cap);

/**
 * Z ⊆ L(X, Y) is strongly anti-coproximinal iff for every extreme pair
 * (x, y*) some A ∈ Z has y*(Ax) = ‖A‖ strictly above every other extreme
 * pair. Certificate: ExactWitnessList (vectorized A per pair) or MissedFacet
 * (index into operator_ball(...).dual_extremes()). Cross-checked against the
 * general decider on the vectorized operator ball.
 */
Verdict polyhedral_opspace_strong_anti(const std::vector<QMatrix>& z, const PolyhedralSpace& x,
                                       const PolyhedralSpace& y,
                                       std::size_t dimension_cap = default_dimension_cap);

}   // namespace coprox

#endif
