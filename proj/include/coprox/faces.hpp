/**
 * Facets of a polyhedral unit ball, the restricted ball B_Y = B_X ∩ Y and
 * exact face/subspace intersection tests.
 */

#ifndef COPROX_FACES_HPP
#define COPROX_FACES_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "coprox/rational.hpp"
#include "coprox/spaces.hpp"
#include "coprox/verdict.hpp"

namespace coprox {

/** Y ⊆ Q^n given by linearly independent basis columns. */
class Subspace
{
    public:
        Subspace(std::size_t ambient_dim, std::vector<QVector> basis);

        std::size_t ambient_dim() const { return ambient_dim_; }
        std::size_t rank() const { return basis_.size(); }
        const std::vector<QVector>& basis() const { return basis_; }
        bool is_proper() const { return rank() >= 1 && rank() < ambient_dim_; }

        QVector to_ambient(const QVector& coords) const;
        /** Basis coordinates of y, or nullopt when y ∉ Y. */
        std::optional<QVector> coordinates(const QVector& y) const;
        bool contains(const QVector& y) const { return coordinates(y).has_value(); }
        /** Least-squares residual test for floating-point vectors. */
        bool contains(const RVector& y, double tol = default_tolerance) const;
        /** Pullback Bᵀg of an ambient functional to basis coordinates. */
        QVector restrict_functional(const QVector& g) const;

    private:
        std::size_t ambient_dim_;
        std::vector<QVector> basis_;
};

/** Throws ImproperSubspaceError unless 1 ≤ dim Y < dim X. */
void require_proper(const Subspace& y);

struct FaceDescriptor
{
    QVector functional;
    std::vector<std::size_t> vertex_indices;
    std::size_t dimension = 0;
};

/** Facets of B_X, index-aligned with space.dual_extremes(). */
std::vector<FaceDescriptor> enumerate_facets(const PolyhedralSpace& space);

struct RestrictedFacet
{
    QVector functional;                     // in basis coordinates
    std::vector<std::size_t> vertex_indices;  // into RestrictedBall::vertices
    std::size_t dimension = 0;
    std::vector<std::size_t> active;        // A(Q): indices into dual_extremes()
    std::size_t opposite = 0;               // index of -Q
};

struct RestrictedBall
{
    std::vector<QVector> vertices;          // basis coordinates, sorted
    std::vector<QVector> ambient_vertices;  // same order, ambient coordinates
    std::vector<RestrictedFacet> facets;    // sorted by functional

    /** One facet index per ± pair (the smaller index). */
    std::vector<std::size_t> representatives() const;
};

RestrictedBall restrict_ball(const PolyhedralSpace& space, const Subspace& y);

/** Restricted vertices lying on the ambient facet `facet` (the trace F ∩ Y). */
std::vector<std::size_t> face_trace(const PolyhedralSpace& space, const Subspace& y,
                                    const RestrictedBall& ball, std::size_t facet);

/** Y ∩ F ≠ ∅. Certificate: ExactWitness. */
Verdict meets_face(const PolyhedralSpace& space, const Subspace& y, const FaceDescriptor& face);

/** Y ∩ relint F ≠ ∅, decided by the sign of an exact margin LP. Certificate: ExactWitness. */
Verdict meets_face_relint(const PolyhedralSpace& space, const Subspace& y, const FaceDescriptor& face);

/** Distinct facets F1 ≠ ±F2 with nonempty traces have distinct traces. Certificate: FacetPair when false. */
Verdict face_traces_distinct(const PolyhedralSpace& space, const Subspace& y);

}   // namespace coprox

#endif
