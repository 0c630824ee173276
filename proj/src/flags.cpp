#include "hannerlab/flags.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace hannerlab {

namespace {

using Chain = std::vector<Face>;

std::vector<Sigma> all_sigmas(int n1, int n2) {
    int n = n1 + n2;
    std::vector<Sigma> out;
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
        if (std::popcount(m) != n1) continue;
        Sigma s(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) s[static_cast<std::size_t>(k)] = ((m >> k) & 1u) ? 1 : 2;
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Chain> chains_at(const HannerExpr& h, int i) {
    const HannerNode& nd = h.node(i);
    if (nd.kind == NodeKind::Leaf) {
        Face p, m;
        p.set(nd.coord, LeafState::Plus);
        m.set(nd.coord, LeafState::Minus);
        return {{p}, {m}};
    }
    auto a = chains_at(h, nd.left);
    auto b = chains_at(h, nd.right);
    auto sigmas = all_sigmas(h.node(nd.left).size, h.node(nd.right).size);
    std::vector<Chain> out;
    out.reserve(a.size() * b.size() * sigmas.size());
    for (const auto& f1 : a)
        for (const auto& f2 : b)
            for (const auto& s : sigmas) out.push_back(assemble_chain(h, i, f1, f2, s));
    return out;
}

Rat abs_det_volume(const Mat& m, const Rat& nfact) { return abs_rat(det(m)) / nfact; }

std::vector<std::size_t> all_flags(const FlagTable& t) {
    std::vector<std::size_t> v(t.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

Mat perturbed(Mat m, const std::vector<Rat>& xi, const Vec& z) {
    for (std::size_t k = 0; k < m.size(); ++k) m[k] += xi[k] * z;
    return m;
}

IdentityCheck compare_sums(const FlagTable& t, const std::vector<std::size_t>& flags, const std::vector<Rat>& xi,
                           const Vec& z) {
    const int n = t.n();
    if (xi.size() != static_cast<std::size_t>(n) || z.dim() != static_cast<std::size_t>(n))
        throw DimensionError("identity check: xi and z must have length n");
    PointAssignment c = t.lattice().centroids();
    Rat nfact = factorial(n);
    IdentityCheck r;
    for (std::size_t f : flags) {
        Mat m = flag_matrix(c, t, f);
        Rat d0 = det(m);
        Rat d1 = det(perturbed(m, xi, z));
        if (sign(d0) == 0 || sign(d0) != sign(d1)) r.signs_preserved = false;
        r.lhs += abs_rat(d1) / nfact;
        r.rhs += abs_rat(d0) / nfact;
    }
    return r;
}

} // namespace

std::vector<Face> assemble_chain(const HannerExpr& h, int node, const std::vector<Face>& f1,
                                 const std::vector<Face>& f2, const Sigma& sigma) {
    const HannerNode& nd = h.node(node);
    if (nd.kind == NodeKind::Leaf) throw std::invalid_argument("assemble_flag: node is a leaf");
    const int n1 = h.node(nd.left).size, n2 = h.node(nd.right).size, n = n1 + n2;
    auto [c1, c2] = sigma_counts(sigma);
    if (c1 != n1 || c2 != n2) throw std::invalid_argument("assemble_flag: type multiplicities do not match summand dimensions");
    if (f1.size() != static_cast<std::size_t>(n1) || f2.size() != static_cast<std::size_t>(n2))
        throw std::invalid_argument("assemble_flag: lower flag lengths do not match summand dimensions");
    const std::uint32_t w1 = whole_code(h.node(nd.left).mask), w2 = whole_code(h.node(nd.right).mask);
    Chain out(static_cast<std::size_t>(n));
    int s1 = 0, s2 = 0;
    for (int k = 1; k <= n; ++k) {
        (sigma[static_cast<std::size_t>(k - 1)] == 1 ? s1 : s2)++;
        if (nd.kind == NodeKind::L1) {
            std::uint32_t a = s1 ? f1[static_cast<std::size_t>(s1 - 1)].code : 0;
            std::uint32_t b = s2 ? f2[static_cast<std::size_t>(s2 - 1)].code : 0;
            out[static_cast<std::size_t>(k - 1)] = Face{a | b};
        } else {
            std::uint32_t a = s1 ? f1[static_cast<std::size_t>(n1 - s1)].code : w1;
            std::uint32_t b = s2 ? f2[static_cast<std::size_t>(n2 - s2)].code : w2;
            out[static_cast<std::size_t>(n - k)] = Face{a | b};
        }
    }
    return out;
}

Flag assemble_flag(const HannerExpr& h, const std::vector<Face>& f1, const std::vector<Face>& f2,
                   const Sigma& sigma) {
    Flag f;
    f.faces = assemble_chain(h, h.root(), f1, f2, sigma);
    f.type = sigma;
    f.lower1 = f1;
    f.lower2 = f2;
    return f;
}

std::vector<Flag> enumerate_flags(const HannerExpr& h) {
    const HannerNode& root = h.node(h.root());
    std::vector<Flag> out;
    if (root.kind == NodeKind::Leaf) {
        for (auto& c : chains_at(h, h.root())) out.push_back(Flag{c, {}, {}, {}});
        return out;
    }
    auto a = chains_at(h, root.left);
    auto b = chains_at(h, root.right);
    auto sigmas = all_sigmas(h.node(root.left).size, h.node(root.right).size);
    out.reserve(a.size() * b.size() * sigmas.size());
    for (const auto& f1 : a)
        for (const auto& f2 : b)
            for (const auto& s : sigmas) out.push_back(assemble_flag(h, f1, f2, s));
    return out;
}

bool is_flag(const HannerExpr& h, const std::vector<Face>& chain) {
    const int n = h.dim();
    if (chain.size() != static_cast<std::size_t>(n)) return false;
    for (int k = 0; k < n; ++k) {
        Face f = chain[static_cast<std::size_t>(k)];
        if (!is_face(h, f) || kind_at(h, h.root(), f) != FaceKind::Proper) return false;
        if (face_dim(h, f) != k) return false;
        if (k > 0 && !face_leq(chain[static_cast<std::size_t>(k - 1)], f)) return false;
    }
    return true;
}

Flag decompose_flag(const HannerExpr& h, const std::vector<Face>& chain) {
    if (!is_flag(h, chain)) throw std::invalid_argument("decompose_flag: not a flag of this polytope");
    const HannerNode& nd = h.node(h.root());
    Flag f;
    f.faces = chain;
    if (nd.kind == NodeKind::Leaf) return f;
    const int n = h.dim();
    const std::uint32_t w1 = whole_code(h.node(nd.left).mask), w2 = whole_code(h.node(nd.right).mask);
    const bool l1 = nd.kind == NodeKind::L1;
    // Walk the chain in the order in which sigma is read: upward for l1, downward for linf.
    Face prev = l1 ? face_empty() : face_whole(h);
    for (int k = 1; k <= n; ++k) {
        Face cur = chain[static_cast<std::size_t>(l1 ? k - 1 : n - k)];
        bool first_moved = (cur.code & w1) != (prev.code & w1);
        f.type.push_back(first_moved ? 1 : 2);
        Face part{cur.code & (first_moved ? w1 : w2)};
        (first_moved ? f.lower1 : f.lower2).push_back(part);
        prev = cur;
    }
    if (!l1) {
        // The downward walk reaches F_j^{n_j-1} first.
        std::reverse(f.lower1.begin(), f.lower1.end());
        std::reverse(f.lower2.begin(), f.lower2.end());
    }
    if (assemble_chain(h, h.root(), f.lower1, f.lower2, f.type) != chain)
        throw std::logic_error("decompose_flag: reassembly mismatch");
    return f;
}

Face compress_face(Face f, std::uint32_t mask) {
    Face g;
    int r = 0;
    for (int j = 0; j < HannerExpr::kMaxDim; ++j)
        if ((mask >> j) & 1u) g.set(r++, f.at(j));
    return g;
}

FlagTable::FlagTable(const FaceLattice& lattice) : lattice_(&lattice), n_(lattice.n()) {
    auto flags = enumerate_flags(lattice.expr());
    idx_.reserve(flags.size() * static_cast<std::size_t>(n_));
    through_.assign(lattice.size(), {});
    for (std::size_t i = 0; i < flags.size(); ++i)
        for (Face f : flags[i].faces) {
            std::size_t j = lattice.index_of(f);
            idx_.push_back(static_cast<std::uint32_t>(j));
            through_[j].push_back(i);
        }
}

Mat flag_matrix(const PointAssignment& z, const FlagTable& t, std::size_t flag) {
    Mat m;
    m.reserve(static_cast<std::size_t>(t.n()));
    for (int k = 0; k < t.n(); ++k) m.push_back(z[t.at(flag, k)]);
    return m;
}

Rat simplex_volume(const PointAssignment& z, const FlagTable& t, std::size_t flag) {
    return abs_det_volume(flag_matrix(z, t, flag), factorial(t.n()));
}

Rat simplex_volume(const FaceLattice& lattice, const PointAssignment& z, const Flag& f) {
    Mat m;
    for (Face g : f.faces) m.push_back(z[lattice.index_of(g)]);
    return abs_det_volume(m, factorial(lattice.n()));
}

Rat volume_function(const PointAssignment& z, const FlagTable& t) {
    Rat total;
    for (std::size_t i = 0; i < t.size(); ++i) total += abs_rat(det(flag_matrix(z, t, i)));
    return total / factorial(t.n());
}

std::vector<int> flag_signs(const PointAssignment& z, const FlagTable& t) {
    std::vector<int> s(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) s[i] = sign(det(flag_matrix(z, t, i)));
    return s;
}

Rat frozen_volume(const PointAssignment& z, const FlagTable& t, const std::vector<int>& signs) {
    Rat total;
    for (std::size_t i = 0; i < t.size(); ++i) total += signs[i] * det(flag_matrix(z, t, i));
    return total / factorial(t.n());
}

Rat directional_derivative(const PointAssignment& c, const PointAssignment& z, const FlagTable& t) {
    Rat total;
    for (std::size_t i = 0; i < t.size(); ++i) {
        Mat m = flag_matrix(c, t, i);
        int s = sign(det(m));
        if (s == 0) throw std::domain_error("directional_derivative: degenerate flag simplex at the base point");
        Rat part;
        for (int k = 0; k < t.n(); ++k) {
            Mat r = m;
            r[static_cast<std::size_t>(k)] = z[t.at(i, k)];
            part += det(r);
        }
        total += s * part;
    }
    return total / factorial(t.n());
}

PointAssignment volume_gradient(const PointAssignment& c, const FlagTable& t) {
    const std::size_t n = static_cast<std::size_t>(t.n());
    PointAssignment g(c.size(), Vec(n));
    Rat nfact = factorial(t.n());
    for (std::size_t i = 0; i < t.size(); ++i) {
        Mat m = flag_matrix(c, t, i);
        Rat d = det(m);
        if (sign(d) == 0) throw std::domain_error("volume_gradient: degenerate flag simplex at the base point");
        Mat inv = *inverse(m);
        // d det / d row k = det * column k of the inverse.
        Rat w = abs_rat(d) / nfact;
        for (std::size_t k = 0; k < n; ++k) {
            Vec& gk = g[t.at(i, static_cast<int>(k))];
            for (std::size_t l = 0; l < n; ++l) gk[l] += w * inv[l][k];
        }
    }
    return g;
}

Rat pairing(const PointAssignment& g, const PointAssignment& z) {
    if (g.size() != z.size()) throw DimensionError("pairing: assignments differ in size");
    Rat s;
    for (std::size_t i = 0; i < g.size(); ++i) s += dot(g[i], z[i]);
    return s;
}

std::pair<int, int> sigma_counts(const Sigma& sigma) {
    int a = 0, b = 0;
    for (auto j : sigma) {
        if (j == 1)
            ++a;
        else if (j == 2)
            ++b;
        else
            throw std::invalid_argument("sigma entries must be 1 or 2");
    }
    return {a, b};
}

Rat phi(const Sigma& sigma, const std::vector<Rat>& xi, int j, int l) {
    auto [n1, n2] = sigma_counts(sigma);
    if (xi.size() != sigma.size()) throw DimensionError("phi: xi and sigma differ in length");
    if (j != 1 && j != 2) throw std::out_of_range("phi: j must be 1 or 2");
    int nj = j == 1 ? n1 : n2;
    if (l < 0 || l > nj) throw std::out_of_range("phi: l out of range");
    if (l == 0) return 0;
    int k = 0, count = 0;
    while (count < l) count += sigma[static_cast<std::size_t>(k++)] == j;
    // k is now the 1-based first index with s_j(k) = l.
    Rat v = xi[static_cast<std::size_t>(k - 1)];
    for (int m = 1; m < k; ++m) {
        int jm = sigma[static_cast<std::size_t>(m - 1)], jn = sigma[static_cast<std::size_t>(m)];
        if (jm == jn) continue;
        Rat x = xi[static_cast<std::size_t>(m - 1)];
        v += ((j + jm) % 2 == 0) ? x : Rat(-x);
    }
    return v;
}

bool det_shift_check(const Sigma& sigma, const std::vector<Rat>& xi, const std::vector<Vec>& p,
                       const std::vector<Vec>& q, const Vec& z) {
    auto [n1, n2] = sigma_counts(sigma);
    const std::size_t n = sigma.size();
    if (xi.size() != n || p.size() != static_cast<std::size_t>(n1) || q.size() != static_cast<std::size_t>(n2) ||
        z.dim() != n)
        throw DimensionError("det_shift_check: shape mismatch");
    for (const auto& v : p)
        if (v.dim() != n) throw DimensionError("det_shift_check: shape mismatch");
    for (const auto& v : q)
        if (v.dim() != n) throw DimensionError("det_shift_check: shape mismatch");
    Mat m, mp;
    int s1 = 0, s2 = 0;
    for (std::size_t k = 0; k < n; ++k) {
        (sigma[k] == 1 ? s1 : s2)++;
        Vec row = xi[k] * z;
        if (s1) row += p[static_cast<std::size_t>(s1 - 1)];
        if (s2) row += q[static_cast<std::size_t>(s2 - 1)];
        m.push_back(std::move(row));
    }
    for (int l = 1; l <= n1; ++l) mp.push_back(p[static_cast<std::size_t>(l - 1)] + phi(sigma, xi, 1, l) * z);
    for (int l = 1; l <= n2; ++l) mp.push_back(q[static_cast<std::size_t>(l - 1)] + phi(sigma, xi, 2, l) * z);
    return abs_rat(det(m)) == abs_rat(det(mp));
}

IdentityCheck flag_sum_check(const FlagTable& t, std::size_t g, const std::vector<Rat>& xi, const Vec& z) {
    const auto& dirs = t.lattice().frame(g).a.dirs();
    if (!AffSub(Vec(static_cast<std::size_t>(t.n())), dirs).contains(z))
        throw std::invalid_argument("flag_sum_check: z is not a direction of A_G");
    return compare_sums(t, t.flags_through(g), xi, z);
}

IdentityCheck stability_check(const FlagTable& t, const std::vector<Rat>& xi, const Vec& z) {
    return compare_sums(t, all_flags(t), xi, z);
}

std::vector<Rat> frozen_linear_part(const FlagTable& t, std::optional<std::size_t> g, const Vec& z) {
    const std::size_t n = static_cast<std::size_t>(t.n());
    PointAssignment c = t.lattice().centroids();
    std::vector<Rat> coef(n);
    for (std::size_t f : g ? t.flags_through(*g) : all_flags(t)) {
        Mat m = flag_matrix(c, t, f);
        int s = sign(det(m));
        // det(M + xi z^T) = det M + sum_k xi_k det(M with row k replaced by z).
        for (std::size_t k = 0; k < n; ++k) {
            Mat r = m;
            r[k] = z;
            coef[k] += s * det(r);
        }
    }
    Rat nfact = factorial(t.n());
    for (auto& x : coef) x /= nfact;
    return coef;
}

ProductFormulaReport product_formula_check(const HannerExpr& h) {
    ProductFormulaReport rep;
    const HannerNode& root = h.node(h.root());
    if (root.kind == NodeKind::Leaf) return rep;
    FaceLattice whole(h), left(subtree_expr(h, root.left)), right(subtree_expr(h, root.right));
    const int n1 = left.n(), n2 = right.n(), n = h.dim();
    Rat r = factorial(n1) * factorial(n2) / factorial(n);
    Rat factor = root.kind == NodeKind::L1 ? r * r : r;
    auto c = whole.centroids(), c1 = left.centroids(), c2 = right.centroids();
    for (const Flag& f : enumerate_flags(h)) {
        Flag a, b;
        for (Face x : f.lower1) a.faces.push_back(compress_face(x, h.node(root.left).mask));
        for (Face x : f.lower2) b.faces.push_back(compress_face(x, h.node(root.right).mask));
        Rat lhs = simplex_volume(whole, c, f);
        Rat rhs = factor * simplex_volume(left, c1, a) * simplex_volume(right, c2, b);
        ++rep.flags_checked;
        if (lhs != rhs) ++rep.violations;
    }
    return rep;
}

EqualVolumeReport equal_volumes_check(const FlagTable& t, const PointAssignment& c) {
    EqualVolumeReport rep;
    const int n = t.n();
    rep.flags = t.size();
    rep.expected = hanner_volume(t.lattice().expr());
    rep.expected_each = rep.expected / (Rat(Int(1) << static_cast<unsigned>(n)) * factorial(n));
    for (std::size_t i = 0; i < t.size(); ++i) {
        Rat v = simplex_volume(c, t, i);
        rep.total += v;
        if (v != rep.expected_each) rep.odd_flags.push_back(i);
    }
    return rep;
}

} // namespace hannerlab
