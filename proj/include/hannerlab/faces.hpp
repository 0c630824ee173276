#ifndef HANNERLAB_FACES_HPP
#define HANNERLAB_FACES_HPP

#include "hannerlab/hanner.hpp"
#include "hannerlab/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hannerlab {

enum class LeafState : std::uint8_t { Empty = 0, Plus = 1, Minus = 2, Whole = 3 };
enum class FaceKind : std::uint8_t { Empty, Whole, Proper };

// Two bits per coordinate. A node's face is empty when all its leaves are Empty,
// whole when all are Whole, otherwise the pair of its children's faces.
struct Face {
    std::uint32_t code = 0;

    LeafState at(int j) const { return static_cast<LeafState>((code >> (2 * j)) & 3u); }
    void set(int j, LeafState s) {
        code = (code & ~(3u << (2 * j))) | (static_cast<std::uint32_t>(s) << (2 * j));
    }
    friend bool operator==(Face a, Face b) { return a.code == b.code; }
    friend bool operator!=(Face a, Face b) { return a.code != b.code; }
    friend bool operator<(Face a, Face b) { return a.code < b.code; }
};

// Leaf-state field with every coordinate of mask set to Whole.
std::uint32_t whole_code(std::uint32_t mask);
Face face_empty();
Face face_whole(const HannerExpr& h);

FaceKind kind_at(const HannerExpr& h, int node, Face f);
bool is_face(const HannerExpr& h, Face f);

// Proper faces, ordered by (dimension, code).
std::vector<Face> enumerate_faces(const HannerExpr& h);
int face_dim(const HannerExpr& h, Face f);
// Dimension of the part of f below node, as a face of that summand.
int face_dim_at(const HannerExpr& h, int node, Face f);
Vec centroid(const HannerExpr& h, Face f);
// Dual face in the polar tree: Empty and Whole exchange, signs stay.
Face dual_face(Face f, int n);
bool face_leq(Face f, Face g);
std::vector<Vec> face_vertices(const HannerExpr& h, Face f);
std::string face_label(const HannerExpr& h, Face f);

enum class Fault { None, PerturbedCentroid, WrongL1Weight };

struct AffineFrame {
    Face face;
    Vec c;     // centroid
    AffSub a;  // A_F
};

AffineFrame affine_frame(const HannerExpr& h, Face f, Fault fault = Fault::None);

// Proper faces of one tree with dims, centroids and frames, indexed densely.
class FaceLattice {
public:
    explicit FaceLattice(HannerExpr h, Fault fault = Fault::None);

    const HannerExpr& expr() const { return h_; }
    int n() const { return h_.dim(); }
    std::size_t size() const { return faces_.size(); }
    const std::vector<Face>& faces() const { return faces_; }
    Face face(std::size_t i) const { return faces_[i]; }
    int dim(std::size_t i) const { return dims_[i]; }
    const Vec& centroid(std::size_t i) const { return frames_[i].c; }
    const AffineFrame& frame(std::size_t i) const { return frames_[i]; }
    std::optional<std::size_t> find(Face f) const;
    std::size_t index_of(Face f) const;
    std::vector<Vec> centroids() const;
    Fault fault() const { return fault_; }

private:
    HannerExpr h_;
    Fault fault_;
    std::vector<Face> faces_;
    std::vector<int> dims_;
    std::vector<AffineFrame> frames_;
    std::unordered_map<std::uint32_t, std::size_t> index_;
};

struct AbcFailure {
    Face face;
    char condition;  // 'a', 'b' or 'c'
    std::string detail;
};

struct AbcReport {
    std::size_t faces_checked = 0;
    std::vector<AbcFailure> failures;
    bool ok() const { return failures.empty(); }
};

AbcReport verify_abc(const FaceLattice& primal, const FaceLattice& dual);
AbcReport verify_abc(const HannerExpr& h);

// 1 - max <c_F, c_{G*}> over proper faces F not contained in G.
Rat epsilon_gap(const FaceLattice& primal, const FaceLattice& dual);
Rat epsilon_gap(const HannerExpr& h);

} // namespace hannerlab

#endif
