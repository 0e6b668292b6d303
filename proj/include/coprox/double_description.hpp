/**
 * Double description method in exact arithmetic.
 *
 * The only entry point is polar_vertices(): given points p_1..p_k whose
 * convex hull contains the origin in its interior, it returns the vertices of
 * the polar polytope {f : p_i . f <= 1}. Applied to the vertices of a unit
 * ball it yields the facet functionals (extreme points of the dual ball);
 * applied to a list of facet functionals it yields the vertices.
 */

#ifndef COPROX_DOUBLE_DESCRIPTION_HPP
#define COPROX_DOUBLE_DESCRIPTION_HPP

#include <cstddef>
#include <vector>

#include "coprox/rational.hpp"

namespace coprox {

/**
 * Vertices of {f in Q^dim : p . f <= 1 for all p in points}, sorted
 * lexicographically. Throws InputError when the region is unbounded or the
 * points are not all of length dim.
 */
std::vector<QVector> polar_vertices(const std::vector<QVector>& points, std::size_t dim);

}   // namespace coprox

#endif
