#ifndef HANNERLAB_WITNESS_HPP
#define HANNERLAB_WITNESS_HPP

#include "hannerlab/faces.hpp"
#include "hannerlab/flags.hpp"
#include "hannerlab/geometry.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hannerlab {

class PerturbationTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NormalizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Face lattices and flag tables of H and its polar, built once per tree. Not copyable:
// the flag tables point into the lattices.
class PipelineContext {
public:
    explicit PipelineContext(const HannerExpr& h);
    PipelineContext(const PipelineContext&) = delete;
    PipelineContext& operator=(const PipelineContext&) = delete;

    const HannerExpr& expr() const { return h_; }
    int n() const { return h_.dim(); }
    const FaceLattice& primal() const { return primal_; }
    const FaceLattice& dual() const { return dual_; }
    const FlagTable& primal_flags() const { return primal_flags_; }
    const FlagTable& dual_flags() const { return dual_flags_; }
    // Index in dual() of F* for primal face i.
    std::size_t dual_index(std::size_t i) const { return dual_index_[i]; }
    const std::vector<int>& primal_signs() const { return primal_signs_; }
    const std::vector<int>& dual_signs() const { return dual_signs_; }
    const Rat& volume_h() const { return vol_h_; }
    const Rat& volume_polar() const { return vol_polar_; }
    const VPolytope& polytope() const { return poly_; }
    // Face of H with centroid e_j.
    std::size_t facet_frame(int j) const { return facet_frame_[static_cast<std::size_t>(j)]; }

private:
    HannerExpr h_;
    FaceLattice primal_;
    FaceLattice dual_;
    FlagTable primal_flags_;
    FlagTable dual_flags_;
    std::vector<std::size_t> dual_index_;
    std::vector<int> primal_signs_;
    std::vector<int> dual_signs_;
    Rat vol_h_;
    Rat vol_polar_;
    VPolytope poly_;
    std::vector<std::size_t> facet_frame_;
};

struct Tangency {
    Rat t;     // largest t with t A_F meeting K
    Vec x;     // point of t A_F and K nearest to c_F
    Vec y;     // t c_F
    Vec normal;  // b with <b, x> <= t on K, equality at x, and b orthogonal to A_F - A_F
};

// k is given by its facets <a, x> <= 1.
Tangency tangency(const HPolytope& k, const AffineFrame& frame);

struct Witness {
    std::vector<Rat> t, t_star;
    PointAssignment x, y;            // indexed like ctx.primal()
    PointAssignment x_star, y_star;  // indexed like ctx.dual()
};

// Throws PerturbationTooLarge if a flag determinant of X or X* changes sign against C or C*.
Witness witness_all(const PipelineContext& ctx, const VPolytope& k);
Witness witness_all(const PipelineContext& ctx, const VPolytope& k, const HPolytope& facets);

struct PairingReport {
    std::size_t faces = 0;
    std::size_t x_failures = 0;  // <x_F, x_F*> != 1
    std::size_t y_failures = 0;  // <y_F, y_F*> != 1
    std::size_t t_failures = 0;  // t_F t_F* != 1
    bool ok() const { return x_failures == 0 && y_failures == 0 && t_failures == 0; }
};
PairingReport pairing_check(const PipelineContext& ctx, const Witness& w);

struct SantaloCheck {
    Rat lhs;  // V(Y) V(Y*)
    Rat rhs;  // |H| |H polar|
    bool ok = false;
};
SantaloCheck santalo_lower_check(const PipelineContext& ctx, const Witness& w);

struct VolumeGaps {
    Rat vx, vy, vx_star, vy_star;
    Rat dx;       // |V(X) - V(Y)|
    Rat dx_star;  // |V(X*) - V(Y*)|
};
VolumeGaps vxvy_gap(const PipelineContext& ctx, const Witness& w);

struct Normalization {
    VPolytope k_prime;  // T(K) intersected with the cube
    Mat t;              // T = T2 T1
    Mat t1;
    std::vector<Rat> r;  // r_j e_j on the boundary of T1 K
    bool cross_inside = false;  // B_1 within K'
    bool inside_cube = false;   // K' within B_inf
};
// Throws NormalizationError naming the violated inclusion or the degenerate step.
Normalization normalize_position(const PipelineContext& ctx, const VPolytope& k);

struct DiagnosticEntry {
    std::uint32_t support = 0;
    bool projection = true;  // projection onto R^(v) against the cube, else section against the cross-polytope
    Rat distance2;
};
struct Diagnostics {
    std::vector<DiagnosticEntry> entries;
    Rat max_distance2;
    Rat hausdorff2_to_h;
    std::optional<Rat> ratio;  // max_distance2 / hausdorff2_to_h when the latter is positive
};
Diagnostics projection_section_diagnostics(const PipelineContext& ctx, const VPolytope& k);

struct TrialRow {
    std::size_t trial = 0;
    int level = 0;  // delta / 2^level
    Rat delta;
    std::size_t rejections = 0;
    Rat dh2_raw;     // d_H(K, H)^2
    Rat p_raw;       // P(K)
    Rat gap_raw;     // P(K) - P(H)
    Rat dh2_norm;    // d_H(K', H)^2
    Rat p_norm;      // P(K')
    Rat gap;         // P(K') - P(H)
    Rat vx, vy, vx_star, vy_star;
    Rat dx, dx_star;
    Rat santalo_excess;  // V(Y) V(Y*) - |H| |H polar|
    bool pairings_ok = false;
    bool normalized_ok = false;
};

struct TrialFailure {
    std::size_t trial = 0;
    std::string reason;
};

struct ExperimentReport {
    std::string expr;
    Rat delta;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    int levels = 1;
    Rat p_h;  // |H| |H polar|
    std::vector<TrialRow> rows;
    std::vector<TrialFailure> failures;
    std::size_t rejections = 0;
    std::optional<Rat> min_gap;
    std::optional<Rat> min_gap_raw;
    // Median over trials of log2(value(level) / value(level + 1)), one entry per consecutive pair.
    std::vector<double> dx_exponents;
    std::vector<double> gap_exponents;
};

struct ExperimentOptions {
    Rat delta;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    bool ladder = false;  // levels delta, delta/2, delta/4 with matched directions
    std::size_t max_attempts = 20;
    unsigned threads = 1;
};

ExperimentReport local_min_experiment(const HannerExpr& h, const ExperimentOptions& opt);

// One row per trial and level; exact values as p/q with decimal companions.
std::string report_csv(const ExperimentReport& r);
std::string report_json(const ExperimentReport& r);
std::string report_summary(const ExperimentReport& r);

} // namespace hannerlab

#endif
