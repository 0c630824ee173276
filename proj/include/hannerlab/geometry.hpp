#ifndef HANNERLAB_GEOMETRY_HPP
#define HANNERLAB_GEOMETRY_HPP

#include "hannerlab/hanner.hpp"
#include "hannerlab/linalg.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hannerlab {

class GeometryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Convex hull of vertices; the origin is expected in the interior.
struct VPolytope {
    int n = 0;
    std::vector<Vec> vertices;
};

// {x : <a, x> <= 1 for every a in normals}.
struct HPolytope {
    int n = 0;
    std::vector<Vec> normals;
};

bool is_symmetric(const VPolytope& p);
bool is_symmetric(const HPolytope& p);

// Irredundant facets, sorted; throws GeometryError if p is not full-dimensional
// or the origin is not interior.
HPolytope hull_facets(const VPolytope& p);
// Subset search over hyperplanes through n vertices; oracle for small inputs.
HPolytope hull_facets_bruteforce(const VPolytope& p);

// Each vertex v becomes <v, .> <= 1.
HPolytope polar(const VPolytope& p);
// Vertex enumeration; throws GeometryError if unbounded.
VPolytope vertex_form(const HPolytope& p);

// Extreme points only, sorted.
VPolytope canonical(const VPolytope& p);
HPolytope canonical(const HPolytope& p);

// Sum of |det|/n! over the simplices of a pulling triangulation of the boundary, coned at the origin.
Rat volume(const VPolytope& p);
Rat volume(const VPolytope& p, const HPolytope& facets);
// |K| |K polar|.
Rat volume_product(const VPolytope& p);

// Squared Euclidean distance from x to the polytope.
Rat distance2(const Vec& x, const VPolytope& p);
// Exact squared Hausdorff distance, attained at a vertex of one of the two polytopes.
Rat hausdorff2(const VPolytope& p, const VPolytope& q);

// Coordinates are 0-based and kept in increasing order.
VPolytope project(const VPolytope& p, const std::vector<int>& coords);
HPolytope section(const HPolytope& p, const std::vector<int>& coords);

VPolytope linear_image(const Mat& t, const VPolytope& p);
// K intersected with the cube [-1, 1]^n.
VPolytope intersect_cube(const VPolytope& p);

VPolytope hanner_polytope(const HannerExpr& h);
VPolytope cube(int n);
VPolytope cross_polytope(int n);

// Membership of a point; containment of every vertex of inner.
bool contains(const HPolytope& p, const Vec& x);
bool contains(const VPolytope& outer, const VPolytope& inner);

// Stream seed for (seed, trial, attempt); splitmix64 mixing.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial, std::uint64_t attempt);
// Unit-ball directions u with coordinates k/64, drawn by rejection from the stream.
std::vector<Vec> random_directions(int n, std::size_t count, std::uint64_t stream);
// conv{+-(v_i + delta u_i)} over antipodal vertex pairs of h; 0 <= delta <= 1/8.
VPolytope perturb(const HannerExpr& h, const Rat& delta, std::uint64_t stream);
VPolytope perturb(const HannerExpr& h, const Rat& delta, const std::vector<Vec>& directions);

} // namespace hannerlab

#endif
