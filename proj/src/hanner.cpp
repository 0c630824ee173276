#include "hannerlab/hanner.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace hannerlab {

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::invalid_argument(msg + " at position " + std::to_string(pos)), pos_(pos) {}

NotP4FreeError::NotP4FreeError(const std::string& msg, std::array<int, 4> path)
    : std::invalid_argument(msg), path_(path) {}

HannerExpr HannerExpr::leaf(int coord) {
    if (coord < 0 || coord >= kMaxDim) throw std::out_of_range("leaf coordinate out of range");
    HannerExpr h;
    HannerNode nd;
    nd.kind = NodeKind::Leaf;
    nd.coord = coord;
    nd.mask = std::uint32_t{1} << coord;
    nd.size = 1;
    h.nodes_.push_back(nd);
    h.root_ = 0;
    return h;
}

int HannerExpr::append(const HannerExpr& other, int at) {
    const HannerNode& src = other.node(at);
    HannerNode nd = src;
    if (src.kind != NodeKind::Leaf) {
        nd.left = append(other, src.left);
        nd.right = append(other, src.right);
    }
    nodes_.push_back(nd);
    return static_cast<int>(nodes_.size()) - 1;
}

HannerExpr HannerExpr::combine(NodeKind op, const HannerExpr& a, const HannerExpr& b) {
    if (op == NodeKind::Leaf) throw std::invalid_argument("combine: operator must be L1 or Linf");
    if (a.node(a.root()).mask & b.node(b.root()).mask)
        throw std::invalid_argument("combine: summands share a coordinate");
    HannerExpr h;
    HannerNode nd;
    nd.kind = op;
    nd.left = h.append(a, a.root());
    nd.right = h.append(b, b.root());
    nd.mask = h.node(nd.left).mask | h.node(nd.right).mask;
    nd.size = h.node(nd.left).size + h.node(nd.right).size;
    h.nodes_.push_back(nd);
    h.root_ = static_cast<int>(h.nodes_.size()) - 1;
    if (h.dim() > kMaxDim) throw std::out_of_range("combine: dimension too large");
    return h;
}

namespace {

std::string print_node(const HannerExpr& h, int i) {
    const HannerNode& nd = h.node(i);
    if (nd.kind == NodeKind::Leaf) return "I" + std::to_string(nd.coord + 1);
    return "(" + print_node(h, nd.left) + (nd.kind == NodeKind::L1 ? " +1 " : " +inf ") +
           print_node(h, nd.right) + ")";
}

bool equal_nodes(const HannerExpr& a, int i, const HannerExpr& b, int j) {
    const HannerNode& x = a.node(i);
    const HannerNode& y = b.node(j);
    if (x.kind != y.kind) return false;
    if (x.kind == NodeKind::Leaf) return x.coord == y.coord;
    return equal_nodes(a, x.left, b, y.left) && equal_nodes(a, x.right, b, y.right);
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    HannerExpr parse() {
        HannerExpr h = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("trailing input", pos_);
        return h;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    HannerExpr expr() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        if (s_[pos_] == 'I') {
            std::size_t start = pos_++;
            std::size_t digits = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (digits == pos_) throw ParseError("expected coordinate index after 'I'", digits);
            if (pos_ - digits > 3) throw ParseError("coordinate index too large", digits);
            int k = std::stoi(s_.substr(digits, pos_ - digits));
            if (k < 1 || k > HannerExpr::kMaxDim) throw ParseError("coordinate index out of range", start);
            if (seen_ & (std::uint32_t{1} << (k - 1)))
                throw ParseError("duplicate coordinate index " + std::to_string(k), start);
            seen_ |= std::uint32_t{1} << (k - 1);
            return HannerExpr::leaf(k - 1);
        }
        if (s_[pos_] != '(') throw ParseError("expected 'I' or '('", pos_);
        ++pos_;
        HannerExpr a = expr();
        skip();
        NodeKind op;
        if (s_.compare(pos_, 4, "+inf") == 0) {
            op = NodeKind::Linf;
            pos_ += 4;
        } else if (s_.compare(pos_, 2, "+1") == 0) {
            op = NodeKind::L1;
            pos_ += 2;
        } else {
            throw ParseError("expected '+1' or '+inf'", pos_);
        }
        HannerExpr b = expr();
        skip();
        if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError("expected ')'", pos_);
        ++pos_;
        return HannerExpr::combine(op, a, b);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    std::uint32_t seen_ = 0;
};

HannerExpr canon_node(const HannerExpr& h, int i) {
    const HannerNode& nd = h.node(i);
    if (nd.kind == NodeKind::Leaf) return HannerExpr::leaf(nd.coord);
    HannerExpr a = canon_node(h, nd.left);
    HannerExpr b = canon_node(h, nd.right);
    std::uint32_t ma = h.node(nd.left).mask, mb = h.node(nd.right).mask;
    if (std::countr_zero(mb) < std::countr_zero(ma)) std::swap(a, b);
    return HannerExpr::combine(nd.kind, a, b);
}

HannerExpr map_node(const HannerExpr& h, int i, bool swap_ops, int offset) {
    const HannerNode& nd = h.node(i);
    if (nd.kind == NodeKind::Leaf) return HannerExpr::leaf(nd.coord + offset);
    NodeKind k = nd.kind;
    if (swap_ops) k = k == NodeKind::L1 ? NodeKind::Linf : NodeKind::L1;
    return HannerExpr::combine(k, map_node(h, nd.left, swap_ops, offset), map_node(h, nd.right, swap_ops, offset));
}

} // namespace

std::string HannerExpr::to_string() const { return nodes_.empty() ? "" : print_node(*this, root_); }

bool operator==(const HannerExpr& a, const HannerExpr& b) {
    if (a.nodes_.empty() || b.nodes_.empty()) return a.nodes_.empty() && b.nodes_.empty();
    return equal_nodes(a, a.root_, b, b.root_);
}

HannerExpr parse_expr(const std::string& text) {
    Parser p(text);
    HannerExpr h = p.parse();
    std::uint32_t mask = h.node(h.root()).mask;
    int n = h.dim();
    for (int k = 0; k < n; ++k)
        if (!((mask >> k) & 1u))
            throw ParseError("missing coordinate index " + std::to_string(k + 1), text.size());
    return h;
}

HannerExpr canonicalize(const HannerExpr& h) { return canon_node(h, h.root()); }
HannerExpr polar_expr(const HannerExpr& h) { return map_node(h, h.root(), true, 0); }
HannerExpr shift_coords(const HannerExpr& h, int offset) { return map_node(h, h.root(), false, offset); }

HannerExpr subtree_expr(const HannerExpr& h, int node) {
    std::uint32_t mask = h.node(node).mask;
    std::vector<int> rank_of(HannerExpr::kMaxDim, -1);
    int r = 0;
    for (int j = 0; j < HannerExpr::kMaxDim; ++j)
        if ((mask >> j) & 1u) rank_of[static_cast<std::size_t>(j)] = r++;
    auto rec = [&](auto&& self, int i) -> HannerExpr {
        const HannerNode& nd = h.node(i);
        if (nd.kind == NodeKind::Leaf) return HannerExpr::leaf(rank_of[static_cast<std::size_t>(nd.coord)]);
        return HannerExpr::combine(nd.kind, self(self, nd.left), self(self, nd.right));
    };
    return rec(rec, node);
}

Rat factorial(int n) {
    Rat f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

Rat hanner_volume(const HannerExpr& h) {
    auto rec = [&](auto&& self, int i) -> Rat {
        const HannerNode& nd = h.node(i);
        if (nd.kind == NodeKind::Leaf) return 2;
        Rat a = self(self, nd.left), b = self(self, nd.right);
        if (nd.kind == NodeKind::Linf) return a * b;
        int n1 = h.node(nd.left).size, n2 = h.node(nd.right).size;
        return a * b * factorial(n1) * factorial(n2) / factorial(n1 + n2);
    };
    return rec(rec, h.root());
}

HannerExpr standard_cube(int n) {
    HannerExpr h = HannerExpr::leaf(0);
    for (int k = 1; k < n; ++k) h = HannerExpr::combine(NodeKind::Linf, h, HannerExpr::leaf(k));
    return h;
}

HannerExpr standard_cross(int n) { return polar_expr(standard_cube(n)); }

std::vector<HannerExpr> hanner_types(int n) {
    if (n < 1) throw std::invalid_argument("hanner_types: n must be positive");
    std::vector<HannerExpr> out;
    if (n == 1) {
        out.push_back(HannerExpr::leaf(0));
    } else {
        for (NodeKind op : {NodeKind::L1, NodeKind::Linf}) {
            for (int a = 1; 2 * a <= n; ++a) {
                auto left = hanner_types(a);
                auto right = hanner_types(n - a);
                for (std::size_t i = 0; i < left.size(); ++i)
                    for (std::size_t j = (2 * a == n ? i : 0); j < right.size(); ++j)
                        out.push_back(HannerExpr::combine(op, left[i], shift_coords(right[j], a)));
            }
        }
    }
    return out;
}

void Graph::add_edge(int i, int j) {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("add_edge: invalid vertex pair");
    adj[static_cast<std::size_t>(i)] |= std::uint32_t{1} << j;
    adj[static_cast<std::size_t>(j)] |= std::uint32_t{1} << i;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (adjacent(i, j)) e.emplace_back(i, j);
    return e;
}

Graph Graph::complement() const {
    Graph c(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!adjacent(i, j)) c.add_edge(i, j);
    return c;
}

Graph graph_of(const HannerExpr& h) {
    Graph g(h.dim());
    for (const auto& nd : h.nodes()) {
        if (nd.kind != NodeKind::L1) continue;
        std::uint32_t a = h.node(nd.left).mask, b = h.node(nd.right).mask;
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                if (((a >> i) & 1u) && ((b >> j) & 1u)) g.add_edge(i, j);
    }
    return g;
}

namespace {

std::vector<std::uint32_t> components(const Graph& g, std::uint32_t within) {
    std::vector<std::uint32_t> comps;
    std::uint32_t left = within;
    while (left) {
        std::uint32_t comp = left & (~left + 1);
        std::uint32_t frontier = comp;
        while (frontier) {
            int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            std::uint32_t nb = g.adj[static_cast<std::size_t>(v)] & within & ~comp;
            comp |= nb;
            frontier |= nb;
        }
        comps.push_back(comp);
        left &= ~comp;
    }
    return comps;
}

HannerExpr decompose(const Graph& g, const Graph& co, std::uint32_t within) {
    if (std::popcount(within) == 1) return HannerExpr::leaf(std::countr_zero(within));
    NodeKind op = NodeKind::Linf;
    auto parts = components(g, within);
    if (parts.size() == 1) {
        op = NodeKind::L1;
        parts = components(co, within);
    }
    if (parts.size() == 1) {
        auto p4 = find_induced_p4(g, within);
        std::array<int, 4> path = p4.value_or(std::array<int, 4>{-1, -1, -1, -1});
        throw NotP4FreeError("graph contains an induced path on four vertices: " + std::to_string(path[0] + 1) +
                                 "-" + std::to_string(path[1] + 1) + "-" + std::to_string(path[2] + 1) + "-" +
                                 std::to_string(path[3] + 1),
                             path);
    }
    HannerExpr h = decompose(g, co, parts[0]);
    for (std::size_t k = 1; k < parts.size(); ++k) h = HannerExpr::combine(op, h, decompose(g, co, parts[k]));
    return h;
}

void bron_kerbosch(const Graph& g, std::uint32_t r, std::uint32_t p, std::uint32_t x, std::vector<std::uint32_t>& out) {
    if (!p && !x) {
        out.push_back(r);
        return;
    }
    std::uint32_t px = p | x;
    int pivot = std::countr_zero(px);
    std::uint32_t best = 0;
    for (std::uint32_t t = px; t; t &= t - 1) {
        int u = std::countr_zero(t);
        std::uint32_t c = std::popcount(p & g.adj[static_cast<std::size_t>(u)]);
        if (c > best || (c == best && u < pivot)) {
            best = c;
            pivot = u;
        }
    }
    std::uint32_t cand = p & ~g.adj[static_cast<std::size_t>(pivot)];
    while (cand) {
        int v = std::countr_zero(cand);
        std::uint32_t bit = std::uint32_t{1} << v;
        cand &= cand - 1;
        bron_kerbosch(g, r | bit, p & g.adj[static_cast<std::size_t>(v)], x & g.adj[static_cast<std::size_t>(v)], out);
        p &= ~bit;
        x |= bit;
    }
}

std::vector<SignedSupport> sign_patterns(const std::vector<std::uint32_t>& sets) {
    std::vector<SignedSupport> out;
    for (std::uint32_t s : sets) {
        std::uint32_t neg = 0;
        do {
            out.push_back({s, neg});
            neg = (neg - s) & s;
        } while (neg != 0);
    }
    return out;
}

std::vector<Vec> to_vectors(const std::vector<SignedSupport>& ss, int n) {
    std::vector<Vec> vs;
    for (const auto& s : ss) vs.push_back(s.vec(n));
    std::sort(vs.begin(), vs.end());
    return vs;
}

std::vector<Vec> ext_node(const HannerExpr& h, int i, int n) {
    const HannerNode& nd = h.node(i);
    if (nd.kind == NodeKind::Leaf) {
        Vec e = Vec::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(nd.coord));
        return {e, -e};
    }
    auto a = ext_node(h, nd.left, n);
    auto b = ext_node(h, nd.right, n);
    if (nd.kind == NodeKind::L1) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }
    std::vector<Vec> out;
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(x + y);
    return out;
}

} // namespace

HannerExpr hanner_of_graph(const Graph& g) {
    if (g.n < 1) throw std::invalid_argument("hanner_of_graph: empty graph");
    if (g.n > HannerExpr::kMaxDim) throw std::out_of_range("hanner_of_graph: too many vertices");
    std::uint32_t all = g.n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << g.n) - 1;
    return decompose(g, g.complement(), all);
}

std::optional<std::array<int, 4>> find_induced_p4(const Graph& g, std::uint32_t within) {
    std::vector<int> vs;
    for (std::uint32_t t = within; t; t &= t - 1) vs.push_back(std::countr_zero(t));
    for (int a : vs)
        for (int b : vs) {
            if (b == a || !g.adjacent(a, b)) continue;
            for (int c : vs) {
                if (c == a || c == b || !g.adjacent(b, c) || g.adjacent(a, c)) continue;
                for (int d : vs) {
                    if (d == a || d == b || d == c) continue;
                    if (g.adjacent(c, d) && !g.adjacent(b, d) && !g.adjacent(a, d))
                        return std::array<int, 4>{a, b, c, d};
                }
            }
        }
    return std::nullopt;
}

std::vector<std::uint32_t> maximal_cliques(const Graph& g) {
    std::vector<std::uint32_t> out;
    std::uint32_t all = (g.n >= 32) ? ~std::uint32_t{0} : (std::uint32_t{1} << g.n) - 1;
    bron_kerbosch(g, 0, all, 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint32_t> maximal_independent_sets(const Graph& g) { return maximal_cliques(g.complement()); }

Vec SignedSupport::vec(int n) const {
    Vec v(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        if ((support >> j) & 1u) v[static_cast<std::size_t>(j)] = ((negative >> j) & 1u) ? -1 : 1;
    return v;
}

std::vector<SignedSupport> vertices(const HannerExpr& h) {
    return sign_patterns(maximal_independent_sets(graph_of(h)));
}

std::vector<SignedSupport> polar_vertices(const HannerExpr& h) { return sign_patterns(maximal_cliques(graph_of(h))); }

std::vector<Vec> vertex_vectors(const HannerExpr& h) { return to_vectors(vertices(h), h.dim()); }
std::vector<Vec> polar_vertex_vectors(const HannerExpr& h) { return to_vectors(polar_vertices(h), h.dim()); }

std::vector<Vec> extreme_points_by_tree(const HannerExpr& h) {
    auto v = ext_node(h, h.root(), h.dim());
    std::sort(v.begin(), v.end());
    return v;
}

ClReport check_cl_property(const HannerExpr& h) {
    ClReport rep;
    auto vs = vertex_vectors(h);
    auto ws = polar_vertex_vectors(h);
    for (const auto& v : vs)
        for (const auto& w : ws) {
            ++rep.pairs_checked;
            if (abs_rat(dot(v, w)) != 1) rep.violations.emplace_back(v, w);
        }
    return rep;
}

} // namespace hannerlab
