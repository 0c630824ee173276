#ifndef HANNERLAB_FLAGS_HPP
#define HANNERLAB_FLAGS_HPP

#include "hannerlab/faces.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hannerlab {

// Entry k is 1 or 2: the summand whose face grows at step k.
using Sigma = std::vector<std::uint8_t>;

struct Flag {
    std::vector<Face> faces;  // F^0 .. F^{n-1}, dim F^k = k
    Sigma type;               // empty for a leaf root
    std::vector<Face> lower1;  // flag of the left summand, global leaf codes
    std::vector<Face> lower2;
};

// All 2^n n! flags. Order: lower flag of the left summand, then right, then sigma.
std::vector<Flag> enumerate_flags(const HannerExpr& h);

// l1 node:   F^{k-1} = F_1^{s1(k)-1} + F_2^{s2(k)-1}, with F_j^{-1} empty.
// linf node: F^{n-k} = F_1^{n1-s1(k)} + F_2^{n2-s2(k)}, with F_j^{n_j} the whole summand.
// s_j(k) counts the entries j among the first k of sigma. Throws on multiplicity mismatch.
std::vector<Face> assemble_chain(const HannerExpr& h, int node, const std::vector<Face>& f1,
                                 const std::vector<Face>& f2, const Sigma& sigma);
Flag assemble_flag(const HannerExpr& h, const std::vector<Face>& f1, const std::vector<Face>& f2,
                   const Sigma& sigma);
// Inverse of assemble_flag; throws std::invalid_argument if chain is not a flag of h.
Flag decompose_flag(const HannerExpr& h, const std::vector<Face>& chain);
bool is_flag(const HannerExpr& h, const std::vector<Face>& chain);

// Face code restricted to mask, renumbered as in subtree_expr.
Face compress_face(Face f, std::uint32_t mask);

// Flags as rows of lattice face indices.
class FlagTable {
public:
    explicit FlagTable(const FaceLattice& lattice);

    const FaceLattice& lattice() const { return *lattice_; }
    int n() const { return n_; }
    std::size_t size() const { return n_ == 0 ? 0 : idx_.size() / static_cast<std::size_t>(n_); }
    // Face index of F^k in flag i.
    std::size_t at(std::size_t i, int k) const { return idx_[i * static_cast<std::size_t>(n_) + static_cast<std::size_t>(k)]; }
    const std::vector<std::size_t>& flags_through(std::size_t face) const { return through_[face]; }

private:
    const FaceLattice* lattice_;
    int n_;
    std::vector<std::uint32_t> idx_;
    std::vector<std::vector<std::size_t>> through_;
};

// z_F indexed like FaceLattice::faces().
using PointAssignment = std::vector<Vec>;

Mat flag_matrix(const PointAssignment& z, const FlagTable& t, std::size_t flag);
// |det(z_{F^0}, ..., z_{F^{n-1}})| / n!.
Rat simplex_volume(const PointAssignment& z, const FlagTable& t, std::size_t flag);
Rat simplex_volume(const FaceLattice& lattice, const PointAssignment& z, const Flag& f);
Rat volume_function(const PointAssignment& z, const FlagTable& t);
std::vector<int> flag_signs(const PointAssignment& z, const FlagTable& t);
// sum_F s_F det(Z_F) / n!, a polynomial in z.
Rat frozen_volume(const PointAssignment& z, const FlagTable& t, const std::vector<int>& signs);

// sum_F s_F/n! sum_k det(Z_F with row k replaced by z_{F^k}); throws std::domain_error if some det(C_F) = 0.
Rat directional_derivative(const PointAssignment& c, const PointAssignment& z, const FlagTable& t);
// Gradient of the frozen-sign volume at c; <gradient, z> is the directional derivative.
PointAssignment volume_gradient(const PointAssignment& c, const FlagTable& t);
Rat pairing(const PointAssignment& g, const PointAssignment& z);

// Summand sizes (n1, n2) of sigma.
std::pair<int, int> sigma_counts(const Sigma& sigma);
// phi_j(l) = Phi_j(min{k : s_j(k) = l}), phi_j(0) = 0, with
// Phi_j(k) = xi_k + sum_{l<k, j_l != j_{l+1}} (-1)^{j + j_l} xi_l. Indices are 1-based.
Rat phi(const Sigma& sigma, const std::vector<Rat>& xi, int j, int l);
// |det M| = |det M'| with rows p_{s1(k)} + q_{s2(k)} + xi_k z of M and rows
// p_l + phi_1(l) z, q_l + phi_2(l) z of M'. p has n1 vectors, q has n2.
bool det_shift_check(const Sigma& sigma, const std::vector<Rat>& xi, const std::vector<Vec>& p,
                       const std::vector<Vec>& q, const Vec& z);

struct IdentityCheck {
    Rat lhs;
    Rat rhs;
    bool signs_preserved = true;
    bool ok() const { return signs_preserved && lhs == rhs; }
};

// Sum over flags through G of |(C+W)_F| against |C_F|, with w_F = xi_{dim F+1} z on every face of such a flag.
IdentityCheck flag_sum_check(const FlagTable& t, std::size_t g, const std::vector<Rat>& xi, const Vec& z);
// V(C+W) against V(C) with w_F = xi_{dim F+1} z on every face.
IdentityCheck stability_check(const FlagTable& t, const std::vector<Rat>& xi, const Vec& z);
// Coefficients of xi in the frozen-sign sum over flags through G (all faces when g is empty).
// The sum is affine in xi, so a zero result certifies the identity for every small xi.
std::vector<Rat> frozen_linear_part(const FlagTable& t, std::optional<std::size_t> g, const Vec& z);

struct ProductFormulaReport {
    std::size_t flags_checked = 0;
    std::size_t violations = 0;
    bool ok() const { return violations == 0; }
};
// |C_F| = (n1! n2!/n!)^2 |C_1,F_1| |C_2,F_2| at an l1 root, (n1! n2!/n!) |C_1,F_1| |C_2,F_2| at an linf root.
ProductFormulaReport product_formula_check(const HannerExpr& h);

struct EqualVolumeReport {
    std::size_t flags = 0;
    Rat expected;       // hanner_volume(h)
    Rat expected_each;  // expected / (2^n n!)
    Rat total;          // sum of |C_F|
    std::vector<std::size_t> odd_flags;  // flags with |C_F| != expected_each
    bool ok() const { return odd_flags.empty() && total == expected; }
};
EqualVolumeReport equal_volumes_check(const FlagTable& t, const PointAssignment& c);

} // namespace hannerlab

#endif
