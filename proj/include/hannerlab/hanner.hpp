#ifndef HANNERLAB_HANNER_HPP
#define HANNERLAB_HANNER_HPP

#include "hannerlab/linalg.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hannerlab {

enum class NodeKind : std::uint8_t { Leaf, L1, Linf };

struct HannerNode {
    NodeKind kind = NodeKind::Leaf;
    int coord = -1;  // 0-based; leaves only
    int left = -1;
    int right = -1;
    std::uint32_t mask = 0;  // coordinates below this node
    int size = 0;            // number of leaves below this node
};

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& msg, std::size_t pos);
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// Binary l1/l-infinity expression over the coordinate intervals [-e_j, e_j].
class HannerExpr {
public:
    static constexpr int kMaxDim = 16;

    static HannerExpr leaf(int coord);
    static HannerExpr combine(NodeKind op, const HannerExpr& a, const HannerExpr& b);

    int dim() const { return nodes_.empty() ? 0 : nodes_[root_].size; }
    int root() const { return root_; }
    const HannerNode& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    const std::vector<HannerNode>& nodes() const { return nodes_; }
    std::string to_string() const;

    friend bool operator==(const HannerExpr& a, const HannerExpr& b);
    friend bool operator!=(const HannerExpr& a, const HannerExpr& b) { return !(a == b); }

private:
    int append(const HannerExpr& other, int at);
    std::vector<HannerNode> nodes_;
    int root_ = -1;
};

// Grammar: H ::= "I<k>" | "(" H "+1" H ")" | "(" H "+inf" H ")", k 1-based.
HannerExpr parse_expr(const std::string& text);

// Children of every node ordered by smallest leaf index.
HannerExpr canonicalize(const HannerExpr& h);
// Same tree with L1 and Linf exchanged; generates the polar body.
HannerExpr polar_expr(const HannerExpr& h);
// Coordinates shifted by offset.
HannerExpr shift_coords(const HannerExpr& h, int offset);

// Subtree at node with its coordinates renumbered 0.. in increasing order.
HannerExpr subtree_expr(const HannerExpr& h, int node);

// |A (+)_inf B| = |A||B|, |A (+)_1 B| = |A||B| n1! n2! / n!.
Rat hanner_volume(const HannerExpr& h);

Rat factorial(int n);

HannerExpr standard_cube(int n);
HannerExpr standard_cross(int n);

// One binary tree per shape up to swapping children, leaves numbered left to right.
// Associative regroupings are kept apart: they share a polytope but not a flag recursion.
std::vector<HannerExpr> hanner_types(int n);

struct Graph {
    int n = 0;
    std::vector<std::uint32_t> adj;  // bit j of adj[i] set iff i~j

    explicit Graph(int vertices = 0) : n(vertices), adj(static_cast<std::size_t>(vertices), 0) {}
    void add_edge(int i, int j);
    bool adjacent(int i, int j) const { return (adj[static_cast<std::size_t>(i)] >> j) & 1u; }
    std::vector<std::pair<int, int>> edges() const;
    Graph complement() const;
    friend bool operator==(const Graph& a, const Graph& b) { return a.n == b.n && a.adj == b.adj; }
};

class NotP4FreeError : public std::invalid_argument {
public:
    NotP4FreeError(const std::string& msg, std::array<int, 4> path);
    const std::array<int, 4>& path() const { return path_; }

private:
    std::array<int, 4> path_;
};

// i~j iff the lowest common ancestor of leaves i and j is an L1 node.
Graph graph_of(const HannerExpr& h);
// Cograph decomposition; throws NotP4FreeError carrying an induced path a-b-c-d.
HannerExpr hanner_of_graph(const Graph& g);
std::optional<std::array<int, 4>> find_induced_p4(const Graph& g, std::uint32_t within);

std::vector<std::uint32_t> maximal_independent_sets(const Graph& g);
std::vector<std::uint32_t> maximal_cliques(const Graph& g);

struct SignedSupport {
    std::uint32_t support = 0;
    std::uint32_t negative = 0;  // subset of support carrying sign -1

    Vec vec(int n) const;
    friend bool operator==(const SignedSupport& a, const SignedSupport& b) {
        return a.support == b.support && a.negative == b.negative;
    }
};

std::vector<SignedSupport> vertices(const HannerExpr& h);
std::vector<SignedSupport> polar_vertices(const HannerExpr& h);
std::vector<Vec> vertex_vectors(const HannerExpr& h);
std::vector<Vec> polar_vertex_vectors(const HannerExpr& h);
// ext(A (+)_1 B) = ext A u ext B, ext(A (+)_inf B) = ext A + ext B.
std::vector<Vec> extreme_points_by_tree(const HannerExpr& h);

struct ClReport {
    std::size_t pairs_checked = 0;
    std::vector<std::pair<Vec, Vec>> violations;
    bool ok() const { return violations.empty(); }
};
ClReport check_cl_property(const HannerExpr& h);

} // namespace hannerlab

#endif
