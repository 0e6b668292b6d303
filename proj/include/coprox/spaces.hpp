/**
 * Finite-dimensional normed spaces: polyhedral balls given by their vertices
 * (exact rational arithmetic), ℓ_p for 1 < p < ∞ and sup-products of ℓ_p
 * blocks (floating point).
 */

#ifndef COPROX_SPACES_HPP
#define COPROX_SPACES_HPP

#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include "coprox/rational.hpp"

namespace coprox {

inline constexpr std::size_t default_dimension_cap = 6;
inline constexpr double default_tolerance = 1e-9;

/** J(x) on the exact path: the active extreme duals (indices into dual_extremes()). */
struct ExactSupportSet
{
    QVector x;
    std::vector<std::size_t> indices;
    std::vector<QVector> functionals;

    bool is_singleton() const { return functionals.size() == 1; }
};

/** J(x) on the floating-point path: a singleton, or the hull of the listed functionals. */
struct NumericSupportSet
{
    RVector x;
    std::vector<RVector> functionals;

    bool is_singleton() const { return functionals.size() == 1; }
};

/**
 * Space whose unit ball is the convex hull of a centrally symmetric, spanning
 * vertex set. Dual extremes (facet functionals) are derived on construction.
 * Immutable; copies share state.
 */
class PolyhedralSpace
{
    public:
        /** Non-extreme input points are discarded; order of the input is irrelevant. */
        static PolyhedralSpace from_vertices(const std::vector<QVector>& vertices,
                                             std::size_t dimension_cap = default_dimension_cap);
        static PolyhedralSpace linf(std::size_t n);
        static PolyhedralSpace l1(std::size_t n);
        /** Sup-norm direct sum of `copies` copies of base. Facets are built structurally. */
        static PolyhedralSpace sup_product(const PolyhedralSpace& base, std::size_t copies);
        /** Ball given directly by both representations; checked for consistency. */
        static PolyhedralSpace from_both(std::vector<QVector> vertices, std::vector<QVector> duals);

        std::size_t dim() const;
        /** Extreme points of the ball, sorted lexicographically. */
        const std::vector<QVector>& vertices() const;
        /** Extreme points of the dual ball, sorted lexicographically. */
        const std::vector<QVector>& dual_extremes() const;
        /** Index of -dual_extremes()[i]. */
        std::size_t opposite_dual(std::size_t i) const;
        /** Index of -vertices()[i]. */
        std::size_t opposite_vertex(std::size_t i) const;
        /** Vertices v with g_i(v) = 1, ascending. */
        const std::vector<std::size_t>& facet_vertices(std::size_t i) const;

        Rational norm(const QVector& x) const;
        double norm(const RVector& x) const;
        Rational dual_norm(const QVector& f) const;
        ExactSupportSet support_set(const QVector& x) const;

    private:
        struct Impl;
        explicit PolyhedralSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
        static PolyhedralSpace assemble(std::vector<QVector> vertices, std::vector<QVector> duals);

        std::shared_ptr<const Impl> impl_;
};

/** ℓ_p^n, 1 < p < ∞. */
class LpSpace
{
    public:
        LpSpace(std::size_t n, double p);

        std::size_t dim() const { return n_; }
        double p() const { return p_; }

        double norm(const RVector& x) const;
        double dual_norm(const RVector& f) const;
        /** Singleton {f} with f_i = sign(x_i) |x_i|^{p-1} / ‖x‖^{p-1}. */
        NumericSupportSet support_set(const RVector& x) const;

    private:
        std::size_t n_;
        double p_;
};

/** Sup-norm direct sum of `copies` copies of ℓ_p^n. Neither smooth nor polyhedral. */
class LpProductSpace
{
    public:
        LpProductSpace(LpSpace base, std::size_t copies);

        std::size_t dim() const { return base_.dim() * copies_; }
        const LpSpace& base() const { return base_; }
        std::size_t copies() const { return copies_; }

        double norm(const RVector& x) const;
        /** Hull of the block functionals of every block attaining the norm (within tolerance). */
        NumericSupportSet support_set(const RVector& x, double tol = default_tolerance) const;

    private:
        LpSpace base_;
        std::size_t copies_;
};

using Space = std::variant<PolyhedralSpace, LpSpace, LpProductSpace>;

std::size_t dimension(const Space& space);
double norm(const Space& space, const RVector& x);

bool is_smooth_point(const PolyhedralSpace& space, const QVector& x);
bool is_smooth_point(const LpSpace& space, const RVector& x);
bool is_smooth_point(const LpProductSpace& space, const RVector& x, double tol = default_tolerance);

/** {x} is a face of the ball. Requires ‖x‖ = 1 (exactly, or within tol). */
bool is_rotund_point(const PolyhedralSpace& space, const QVector& x);
bool is_rotund_point(const LpSpace& space, const RVector& x, double tol = default_tolerance);
bool is_rotund_point(const LpProductSpace& space, const RVector& x, double tol = default_tolerance);

}   // namespace coprox

#endif
