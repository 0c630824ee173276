#include "hannerlab/faces.hpp"

#include "hannerlab/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace hannerlab {

std::uint32_t whole_code(std::uint32_t mask) {
    std::uint32_t c = 0;
    for (int j = 0; j < 16; ++j)
        if ((mask >> j) & 1u) c |= 3u << (2 * j);
    return c;
}

Face face_empty() { return Face{}; }
Face face_whole(const HannerExpr& h) { return Face{whole_code(h.node(h.root()).mask)}; }

FaceKind kind_at(const HannerExpr& h, int node, Face f) {
    std::uint32_t w = whole_code(h.node(node).mask);
    std::uint32_t r = f.code & w;
    if (r == 0) return FaceKind::Empty;
    if (r == w) return FaceKind::Whole;
    return FaceKind::Proper;
}

namespace {

bool valid_at(const HannerExpr& h, int i, Face f) {
    const HannerNode& nd = h.node(i);
    FaceKind k = kind_at(h, i, f);
    if (k != FaceKind::Proper) return true;
    if (nd.kind == NodeKind::Leaf) return true;
    FaceKind a = kind_at(h, nd.left, f), b = kind_at(h, nd.right, f);
    if (nd.kind == NodeKind::L1 && (a == FaceKind::Whole || b == FaceKind::Whole)) return false;
    if (nd.kind == NodeKind::Linf && (a == FaceKind::Empty || b == FaceKind::Empty)) return false;
    return valid_at(h, nd.left, f) && valid_at(h, nd.right, f);
}

int dim_at(const HannerExpr& h, int i, Face f) {
    const HannerNode& nd = h.node(i);
    switch (kind_at(h, i, f)) {
    case FaceKind::Empty: return -1;
    case FaceKind::Whole: return nd.size;
    case FaceKind::Proper: break;
    }
    if (nd.kind == NodeKind::Leaf) return 0;
    int a = dim_at(h, nd.left, f), b = dim_at(h, nd.right, f);
    return nd.kind == NodeKind::L1 ? a + b + 1 : a + b;
}

Vec centroid_at(const HannerExpr& h, int i, Face f) {
    const HannerNode& nd = h.node(i);
    std::size_t n = static_cast<std::size_t>(h.dim());
    if (kind_at(h, i, f) != FaceKind::Proper) return Vec(n);
    if (nd.kind == NodeKind::Leaf) {
        Vec e = Vec::unit(n, static_cast<std::size_t>(nd.coord));
        return f.at(nd.coord) == LeafState::Plus ? e : -e;
    }
    Vec a = centroid_at(h, nd.left, f), b = centroid_at(h, nd.right, f);
    if (nd.kind == NodeKind::Linf) return a + b;
    int da = dim_at(h, nd.left, f), db = dim_at(h, nd.right, f);
    Rat den = da + db + 2;
    return Rat(da + 1) / den * a + Rat(db + 1) / den * b;
}

std::vector<Face> faces_at(const HannerExpr& h, int i) {
    const HannerNode& nd = h.node(i);
    std::vector<Face> out;
    if (nd.kind == NodeKind::Leaf) {
        Face p, m;
        p.set(nd.coord, LeafState::Plus);
        m.set(nd.coord, LeafState::Minus);
        return {p, m};
    }
    auto a = faces_at(h, nd.left);
    auto b = faces_at(h, nd.right);
    std::uint32_t pad_a = 0, pad_b = 0;
    if (nd.kind == NodeKind::Linf) {
        pad_a = whole_code(h.node(nd.left).mask);
        pad_b = whole_code(h.node(nd.right).mask);
    }
    for (Face x : a) out.push_back(Face{x.code | pad_b});
    for (Face y : b) out.push_back(Face{pad_a | y.code});
    for (Face x : a)
        for (Face y : b) out.push_back(Face{x.code | y.code});
    return out;
}

std::vector<Vec> vertices_at(const HannerExpr& h, int i, Face f) {
    const HannerNode& nd = h.node(i);
    std::size_t n = static_cast<std::size_t>(h.dim());
    FaceKind k = kind_at(h, i, f);
    if (k == FaceKind::Empty) return {};
    if (nd.kind == NodeKind::Leaf) {
        Vec e = Vec::unit(n, static_cast<std::size_t>(nd.coord));
        if (k == FaceKind::Whole) return {e, -e};
        return {f.at(nd.coord) == LeafState::Plus ? e : -e};
    }
    auto a = vertices_at(h, nd.left, f);
    auto b = vertices_at(h, nd.right, f);
    if (nd.kind == NodeKind::L1) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }
    std::vector<Vec> out;
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(x + y);
    return out;
}

std::string label_at(const HannerExpr& h, int i, Face f) {
    const HannerNode& nd = h.node(i);
    switch (kind_at(h, i, f)) {
    case FaceKind::Empty: return "0";
    case FaceKind::Whole: return "P";
    case FaceKind::Proper: break;
    }
    if (nd.kind == NodeKind::Leaf)
        return (f.at(nd.coord) == LeafState::Plus ? "+e" : "-e") + std::to_string(nd.coord + 1);
    return "(" + label_at(h, nd.left, f) + (nd.kind == NodeKind::L1 ? " +1 " : " +inf ") + label_at(h, nd.right, f) +
           ")";
}

struct FramePart {
    AffSub a;
    int dim;
};

FramePart frame_at(const HannerExpr& h, int i, Face f, Fault fault) {
    const HannerNode& nd = h.node(i);
    std::size_t n = static_cast<std::size_t>(h.dim());
    if (nd.kind == NodeKind::Leaf) {
        Vec e = Vec::unit(n, static_cast<std::size_t>(nd.coord));
        return {AffSub(f.at(nd.coord) == LeafState::Plus ? e : -e, {}), 0};
    }
    FaceKind ka = kind_at(h, nd.left, f), kb = kind_at(h, nd.right, f);
    auto span_of = [&](std::uint32_t mask) {
        std::vector<Vec> d;
        for (int j = 0; j < h.dim(); ++j)
            if ((mask >> j) & 1u) d.push_back(Vec::unit(n, static_cast<std::size_t>(j)));
        return d;
    };
    if (nd.kind == NodeKind::L1) {
        if (kb == FaceKind::Empty) {
            FramePart p = frame_at(h, nd.left, f, fault);
            std::vector<Vec> d = p.a.dirs();
            for (auto& e : span_of(h.node(nd.right).mask)) d.push_back(e);
            return {AffSub(p.a.point(), d), p.dim};
        }
        if (ka == FaceKind::Empty) {
            FramePart q = frame_at(h, nd.right, f, fault);
            std::vector<Vec> d = q.a.dirs();
            for (auto& e : span_of(h.node(nd.left).mask)) d.push_back(e);
            return {AffSub(q.a.point(), d), q.dim};
        }
        FramePart p = frame_at(h, nd.left, f, fault);
        FramePart q = frame_at(h, nd.right, f, fault);
        Rat den = p.dim + q.dim + 2;
        Rat alpha = Rat(p.dim + 1) / den, beta = Rat(q.dim + 1) / den;
        if (fault == Fault::WrongL1Weight) std::swap(alpha, beta);
        return {weighted_combination(alpha, p.a, beta, q.a), p.dim + q.dim + 1};
    }
    if (kb == FaceKind::Whole) {
        FramePart p = frame_at(h, nd.left, f, fault);
        return {p.a, p.dim + h.node(nd.right).size};
    }
    if (ka == FaceKind::Whole) {
        FramePart q = frame_at(h, nd.right, f, fault);
        return {q.a, q.dim + h.node(nd.left).size};
    }
    FramePart p = frame_at(h, nd.left, f, fault);
    FramePart q = frame_at(h, nd.right, f, fault);
    Vec w = Rat(1, h.node(nd.left).size - p.dim) * centroid_at(h, nd.left, f) -
            Rat(1, h.node(nd.right).size - q.dim) * centroid_at(h, nd.right, f);
    return {add_direction(sum(p.a, q.a), w), p.dim + q.dim};
}

} // namespace

bool is_face(const HannerExpr& h, Face f) {
    std::uint32_t all = whole_code(h.node(h.root()).mask);
    if (f.code & ~all) return false;
    return valid_at(h, h.root(), f);
}

std::vector<Face> enumerate_faces(const HannerExpr& h) {
    auto fs = faces_at(h, h.root());
    std::vector<std::pair<int, std::uint32_t>> keyed;
    for (Face f : fs) keyed.emplace_back(face_dim(h, f), f.code);
    std::sort(keyed.begin(), keyed.end());
    std::vector<Face> out;
    for (auto& [d, c] : keyed) out.push_back(Face{c});
    return out;
}

int face_dim(const HannerExpr& h, Face f) { return dim_at(h, h.root(), f); }
int face_dim_at(const HannerExpr& h, int node, Face f) { return dim_at(h, node, f); }

Vec centroid(const HannerExpr& h, Face f) {
    if (kind_at(h, h.root(), f) != FaceKind::Proper) throw std::domain_error("centroid: improper face");
    return centroid_at(h, h.root(), f);
}

Face dual_face(Face f, int n) {
    Face g;
    for (int j = 0; j < n; ++j) {
        LeafState s = f.at(j);
        if (s == LeafState::Empty)
            s = LeafState::Whole;
        else if (s == LeafState::Whole)
            s = LeafState::Empty;
        g.set(j, s);
    }
    return g;
}

bool face_leq(Face f, Face g) {
    for (int j = 0; j < 16; ++j) {
        LeafState a = f.at(j), b = g.at(j);
        if (a == LeafState::Empty || b == LeafState::Whole || a == b) continue;
        return false;
    }
    return true;
}

std::vector<Vec> face_vertices(const HannerExpr& h, Face f) {
    auto v = vertices_at(h, h.root(), f);
    std::sort(v.begin(), v.end());
    return v;
}

std::string face_label(const HannerExpr& h, Face f) { return label_at(h, h.root(), f); }

AffineFrame affine_frame(const HannerExpr& h, Face f, Fault fault) {
    if (kind_at(h, h.root(), f) != FaceKind::Proper) throw std::domain_error("affine_frame: improper face");
    FramePart p = frame_at(h, h.root(), f, fault);
    return AffineFrame{f, centroid_at(h, h.root(), f), p.a};
}

FaceLattice::FaceLattice(HannerExpr h, Fault fault) : h_(std::move(h)), fault_(fault) {
    faces_ = enumerate_faces(h_);
    for (std::size_t i = 0; i < faces_.size(); ++i) {
        dims_.push_back(face_dim(h_, faces_[i]));
        frames_.push_back(affine_frame(h_, faces_[i], fault));
        index_[faces_[i].code] = i;
    }
    if (fault == Fault::PerturbedCentroid && !frames_.empty()) frames_[0].c *= Rat(6, 5);
}

std::optional<std::size_t> FaceLattice::find(Face f) const {
    auto it = index_.find(f.code);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t FaceLattice::index_of(Face f) const {
    auto i = find(f);
    if (!i) throw std::domain_error("face does not belong to this lattice");
    return *i;
}

std::vector<Vec> FaceLattice::centroids() const {
    std::vector<Vec> c;
    for (const auto& fr : frames_) c.push_back(fr.c);
    return c;
}

namespace {

std::vector<Constraint> facet_constraints(const HannerExpr& h) {
    std::vector<Constraint> cs;
    for (auto& w : polar_vertex_vectors(h)) cs.push_back({w, Rat(1)});
    return cs;
}

// A ∩ H is exactly {c}: every frame coordinate has equal max and min.
std::optional<std::string> check_a(const AffineFrame& fr, const std::vector<Constraint>& facets) {
    const AffSub& a = fr.a;
    std::size_t k = a.dim();
    std::vector<Constraint> cs;
    for (const auto& c : facets) {
        Vec g(k);
        for (std::size_t j = 0; j < k; ++j) g[j] = dot(c.a, a.dirs()[j]);
        cs.push_back({g, c.b - dot(c.a, a.point())});
    }
    Vec mu(k);
    for (std::size_t j = 0; j < k; ++j) {
        LinProg lp{k, Vec::unit(k, j), cs};
        LpOutcome hi = maximize(lp);
        lp.objective = -Vec::unit(k, j);
        LpOutcome lo = maximize(lp);
        if (hi.status != LpStatus::Optimal || lo.status != LpStatus::Optimal)
            return std::string("A_F meets H in an empty or unbounded set");
        if (hi.value != -lo.value) return "A_F meets H in more than a point along direction " + std::to_string(j);
        mu[j] = hi.value;
    }
    Vec x = a.at(mu);
    for (const auto& c : facets)
        if (dot(c.a, x) > c.b) return std::string("A_F misses H");
    if (x != fr.c) return "A_F meets H at " + to_string(x) + " instead of the centroid " + to_string(fr.c);
    return std::nullopt;
}

} // namespace

AbcReport verify_abc(const FaceLattice& primal, const FaceLattice& dual) {
    AbcReport rep;
    const HannerExpr& h = primal.expr();
    const int n = h.dim();
    auto facets = facet_constraints(h);
    for (std::size_t i = 0; i < primal.size(); ++i) {
        ++rep.faces_checked;
        const AffineFrame& fr = primal.frame(i);
        Face f = primal.face(i);
        if (auto msg = check_a(fr, facets)) rep.failures.push_back({f, 'a', *msg});
        if (static_cast<int>(fr.a.dim()) + primal.dim(i) != n - 1)
            rep.failures.push_back({f, 'b', "dim A_F + dim F = " + std::to_string(fr.a.dim() + primal.dim(i))});
        const AffineFrame& dfr = dual.frame(dual.index_of(dual_face(f, n)));
        std::string bad;
        if (dot(fr.a.point(), dfr.a.point()) != 1) bad = "<c_F, c_F*> != 1";
        for (const auto& d : fr.a.dirs())
            if (dot(d, dfr.a.point()) != 0) bad = "<d, c_F*> != 0";
        for (const auto& e : dfr.a.dirs())
            if (dot(fr.a.point(), e) != 0) bad = "<c_F, d*> != 0";
        for (const auto& d : fr.a.dirs())
            for (const auto& e : dfr.a.dirs())
                if (dot(d, e) != 0) bad = "<d, d*> != 0";
        if (!bad.empty()) rep.failures.push_back({f, 'c', bad});
    }
    return rep;
}

AbcReport verify_abc(const HannerExpr& h) {
    FaceLattice p(h);
    FaceLattice d(polar_expr(h));
    return verify_abc(p, d);
}

Rat epsilon_gap(const FaceLattice& primal, const FaceLattice& dual) {
    std::optional<Rat> best;
    for (std::size_t g = 0; g < primal.size(); ++g) {
        const Vec& cg = dual.centroid(dual.index_of(dual_face(primal.face(g), primal.n())));
        for (std::size_t f = 0; f < primal.size(); ++f) {
            if (face_leq(primal.face(f), primal.face(g))) continue;
            Rat v = dot(primal.centroid(f), cg);
            if (!best || v > *best) best = v;
        }
    }
    return best ? Rat(1 - *best) : Rat(1);
}

Rat epsilon_gap(const HannerExpr& h) {
    FaceLattice p(h);
    FaceLattice d(polar_expr(h));
    return epsilon_gap(p, d);
}

} // namespace hannerlab
