#ifndef HANNERLAB_LP_HPP
#define HANNERLAB_LP_HPP

#include "hannerlab/linalg.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace hannerlab {

struct Constraint {
    Vec a;
    Rat b;  // <a, u> <= b
};

struct LinProg {
    std::size_t dim = 0;
    Vec objective;  // maximize <objective, u>
    std::vector<Constraint> constraints;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    Rat value;
    Vec witness;                 // basic optimal point; a feasible point when unbounded
    std::vector<std::size_t> tight;
    // Nonnegative multipliers with sum_i dual_i a_i = objective and sum_i dual_i b_i = value.
    std::vector<Rat> dual;
};

class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two-phase simplex on the dual standard form with Bland's rule.
LpOutcome maximize(const LinProg& p);

// Extreme rays of the pointed cone {z : <row_i, z> >= 0}; double description.
struct ConeRays {
    std::vector<Vec> rays;                        // primitive integer vectors
    std::vector<std::vector<std::size_t>> zeros;  // row indices with <row_i, ray> = 0
};
ConeRays extreme_rays(const std::vector<Vec>& rows);

// Vertices of the bounded polyhedron {x : <a_i, x> <= b_i}, with tight sets.
struct VertexSet {
    std::vector<Vec> vertices;
    std::vector<std::vector<std::size_t>> tight;
};
VertexSet enumerate_vertices(const std::vector<Constraint>& region, std::size_t dim);

// Point of conv(pts) of least Euclidean norm; exact Wolfe iteration.
Vec min_norm_point(const std::vector<Vec>& pts);

// Nearest point to target of region intersected with onto.
Vec nearest_point(const Vec& target, const std::vector<Constraint>& region, const AffSub& onto);

} // namespace hannerlab

#endif
