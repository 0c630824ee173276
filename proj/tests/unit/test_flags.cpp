#include "hannerlab/flags.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace hannerlab;
using namespace hannerlab::testing;

namespace {

// Chains F^0 < ... < F^{n-1} with dim F^k = k, by vertex inclusion.
std::set<std::vector<std::uint32_t>> brute_chains(const HannerExpr& h) {
    int n = h.dim();
    std::vector<std::vector<Face>> by_dim(static_cast<std::size_t>(n));
    std::map<std::uint32_t, std::vector<Vec>> verts;
    for (Face f : enumerate_faces(h)) {
        by_dim[static_cast<std::size_t>(face_dim(h, f))].push_back(f);
        auto v = face_vertices(h, f);
        std::sort(v.begin(), v.end());
        verts[f.code] = v;
    }
    std::set<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> chain;
    auto rec = [&](auto&& self, int k) -> void {
        if (k == n) {
            out.insert(chain);
            return;
        }
        for (Face f : by_dim[static_cast<std::size_t>(k)]) {
            if (k > 0) {
                const auto& a = verts[chain.back()];
                const auto& b = verts[f.code];
                if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) continue;
            }
            chain.push_back(f.code);
            self(self, k + 1);
            chain.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

Face code_of(std::initializer_list<std::pair<int, LeafState>> states) {
    Face f;
    for (auto [j, s] : states) f.set(j, s);
    return f;
}

// Phi_j(k) and phi_j(l) from their defining sums; indices 1-based, sigma entries 1 or 2.
Rat phi_oracle(const Sigma& sigma, const std::vector<Rat>& xi, int j, int l) {
    if (l == 0) return 0;
    int count = 0, k = 0;
    while (count < l) count += sigma[static_cast<std::size_t>(k++)] == j;
    Rat v = xi[static_cast<std::size_t>(k - 1)];
    for (int m = 1; m < k; ++m) {
        int jm = sigma[static_cast<std::size_t>(m - 1)], jn = sigma[static_cast<std::size_t>(m)];
        if (jm != jn) v += ((j + jm) % 2 == 0 ? 1 : -1) * xi[static_cast<std::size_t>(m - 1)];
    }
    return v;
}

Sigma random_sigma(std::mt19937_64& rng, int n1, int n2) {
    Sigma s;
    for (int i = 0; i < n1; ++i) s.push_back(1);
    for (int i = 0; i < n2; ++i) s.push_back(2);
    std::shuffle(s.begin(), s.end(), rng);
    return s;
}

// d/dt f(t) at 0 for a polynomial of degree <= n given its values at 0..n.
Rat lagrange_derivative_at_zero(const std::vector<Rat>& f) {
    int n = static_cast<int>(f.size()) - 1;
    Rat total = 0;
    for (int i = 0; i <= n; ++i) {
        Rat d = 0;
        for (int k = 0; k <= n; ++k) {
            if (k == i) continue;
            Rat term = rat(1, i - k);
            for (int j = 0; j <= n; ++j)
                if (j != i && j != k) term *= rat(-j, i - j);
            d += term;
        }
        total += f[static_cast<std::size_t>(i)] * d;
    }
    return total;
}

PointAssignment random_assignment(std::mt19937_64& rng, std::size_t faces, int n) {
    PointAssignment z;
    for (std::size_t i = 0; i < faces; ++i) z.push_back(random_vec(rng, static_cast<std::size_t>(n), 5, 4));
    return z;
}

} // namespace

TEST(Flags, EnumerationMatchesBruteForceChains) {
    for (const auto& h : all_trees(4)) {
        int n = h.dim();
        auto flags = enumerate_flags(h);
        std::set<std::vector<std::uint32_t>> got;
        for (const auto& f : flags) {
            std::vector<std::uint32_t> c;
            for (Face x : f.faces) c.push_back(x.code);
            got.insert(c);
        }
        long expected = 1;
        for (int i = 1; i <= n; ++i) expected *= 2 * i;
        EXPECT_EQ(static_cast<long>(flags.size()), expected) << h.to_string();
        EXPECT_EQ(got.size(), flags.size());
        EXPECT_EQ(got, brute_chains(h)) << h.to_string();
    }
}

TEST(Flags, WorkedExampleL1AndLinfChains) {
    using S = LeafState;
    // Lower flags: coordinates 0..3 for the 4-cube, 4..6 for the 3-cube.
    std::vector<Face> f1{code_of({{0, S::Plus}, {1, S::Plus}, {2, S::Plus}, {3, S::Plus}}),
                         code_of({{0, S::Whole}, {1, S::Plus}, {2, S::Plus}, {3, S::Plus}}),
                         code_of({{0, S::Whole}, {1, S::Whole}, {2, S::Plus}, {3, S::Plus}}),
                         code_of({{0, S::Whole}, {1, S::Whole}, {2, S::Whole}, {3, S::Plus}})};
    std::vector<Face> f2{code_of({{4, S::Plus}, {5, S::Plus}, {6, S::Plus}}),
                         code_of({{4, S::Whole}, {5, S::Plus}, {6, S::Plus}}),
                         code_of({{4, S::Whole}, {5, S::Whole}, {6, S::Plus}})};
    Face p2 = code_of({{4, S::Whole}, {5, S::Whole}, {6, S::Whole}});
    Sigma sigma{1, 1, 2, 1, 2, 2, 1};
    auto join = [](Face a, Face b) { return Face{a.code | b.code}; };

    HannerExpr l1 = parse_expr("(((I1 +inf I2) +inf (I3 +inf I4)) +1 ((I5 +inf I6) +inf I7))");
    std::vector<Face> expected_l1{f1[0],           f1[1],           join(f1[1], f2[0]), join(f1[2], f2[0]),
                                  join(f1[2], f2[1]), join(f1[2], f2[2]), join(f1[3], f2[2])};
    Flag a = assemble_flag(l1, f1, f2, sigma);
    EXPECT_EQ(a.faces, expected_l1);
    EXPECT_TRUE(is_flag(l1, a.faces));

    HannerExpr linf = parse_expr("(((I1 +inf I2) +inf (I3 +inf I4)) +inf ((I5 +inf I6) +inf I7))");
    std::vector<Face> expected_linf{join(f1[0], f2[0]), join(f1[1], f2[0]), join(f1[1], f2[1]), join(f1[1], f2[2]),
                                    join(f1[2], f2[2]), join(f1[2], p2),    join(f1[3], p2)};
    Flag b = assemble_flag(linf, f1, f2, sigma);
    EXPECT_EQ(b.faces, expected_linf);
    EXPECT_TRUE(is_flag(linf, b.faces));
}

TEST(Flags, AssembleRejectsWrongMultiplicities) {
    HannerExpr h = parse_expr("(I1 +1 I2)");
    auto flags = enumerate_flags(h);
    EXPECT_THROW(assemble_flag(h, flags[0].lower1, flags[0].lower2, Sigma{1, 1}), std::invalid_argument);
}

TEST(Flags, DecomposeInvertsAssemble) {
    for (const auto& h : all_trees(4)) {
        for (const auto& f : enumerate_flags(h)) {
            Flag d = decompose_flag(h, f.faces);
            EXPECT_EQ(d.faces, f.faces);
            EXPECT_EQ(d.type, f.type);
            EXPECT_EQ(d.lower1, f.lower1);
            EXPECT_EQ(d.lower2, f.lower2);
            if (h.dim() > 1) {
                EXPECT_EQ(assemble_flag(h, d.lower1, d.lower2, d.type).faces, f.faces);
            }
        }
    }
    HannerExpr h = parse_expr("((I1 +1 I2) +inf I3)");
    auto f = enumerate_flags(h)[0].faces;
    std::swap(f[0], f[1]);
    EXPECT_FALSE(is_flag(h, f));
    EXPECT_THROW(decompose_flag(h, f), std::invalid_argument);
}

TEST(Flags, TableIndexesEveryFlagThroughEachFace) {
    for (const auto& h : all_trees(4)) {
        FaceLattice lat(h);
        FlagTable t(lat);
        ASSERT_EQ(t.size(), enumerate_flags(h).size());
        std::vector<std::size_t> count(lat.size(), 0);
        for (std::size_t i = 0; i < t.size(); ++i)
            for (int k = 0; k < t.n(); ++k) {
                EXPECT_EQ(lat.dim(t.at(i, k)), k);
                ++count[t.at(i, k)];
            }
        for (std::size_t f = 0; f < lat.size(); ++f) EXPECT_EQ(t.flags_through(f).size(), count[f]);
    }
}

TEST(Phi, MatchesDefiningSum) {
    std::mt19937_64 rng(31);
    for (int run = 0; run < 200; ++run) {
        int n1 = static_cast<int>(uniform(rng, 1, 4)), n2 = static_cast<int>(uniform(rng, 1, 4));
        Sigma s = random_sigma(rng, n1, n2);
        auto xi = random_vec(rng, s.size());
        for (int j = 1; j <= 2; ++j)
            for (int l = 0; l <= (j == 1 ? n1 : n2); ++l)
                EXPECT_EQ(phi(s, xi.coords(), j, l), phi_oracle(s, xi.coords(), j, l));
    }
}

TEST(Phi, ShiftedDeterminantsAgree) {
    std::mt19937_64 rng(32);
    for (int run = 0; run < 150; ++run) {
        int n1 = static_cast<int>(uniform(rng, 1, 3)), n2 = static_cast<int>(uniform(rng, 1, 3)), n = n1 + n2;
        Sigma s = random_sigma(rng, n1, n2);
        std::vector<Rat> xi = random_vec(rng, static_cast<std::size_t>(n)).coords();
        Mat p = random_mat(rng, static_cast<std::size_t>(n1 + 1), static_cast<std::size_t>(n));
        Mat q = random_mat(rng, static_cast<std::size_t>(n2 + 1), static_cast<std::size_t>(n));
        // p_0 and q_0 are the empty-face terms, zero for an l1 sum.
        p[0] = Vec(static_cast<std::size_t>(n));
        q[0] = Vec(static_cast<std::size_t>(n));
        std::vector<Vec> pp(p.begin() + 1, p.end()), qq(q.begin() + 1, q.end());
        Vec z = random_vec(rng, static_cast<std::size_t>(n));
        Mat m, mp;
        int s1 = 0, s2 = 0;
        for (int k = 1; k <= n; ++k) {
            (s[static_cast<std::size_t>(k - 1)] == 1 ? s1 : s2)++;
            m.push_back(p[static_cast<std::size_t>(s1)] + q[static_cast<std::size_t>(s2)] + xi[static_cast<std::size_t>(k - 1)] * z);
        }
        for (int l = 1; l <= n1; ++l) mp.push_back(p[static_cast<std::size_t>(l)] + phi_oracle(s, xi, 1, l) * z);
        for (int l = 1; l <= n2; ++l) mp.push_back(q[static_cast<std::size_t>(l)] + phi_oracle(s, xi, 2, l) * z);
        EXPECT_EQ(Rat(abs(det(m))), Rat(abs(det(mp))));
        EXPECT_TRUE(det_shift_check(s, xi, pp, qq, z));
    }
}

TEST(Volumes, EveryFlagSimplexHasEqualVolume) {
    for (const auto& h : all_trees(4)) {
        int n = h.dim();
        Rat total = 0, each = hanner_volume(h) / (factorial(n) * Rat(Int(1) << static_cast<unsigned>(n)));
        for (const auto& f : enumerate_flags(h)) {
            Mat m;
            for (Face x : f.faces) m.push_back(centroid(h, x));
            Rat v = abs(det(m)) / factorial(n);
            EXPECT_EQ(v, each) << h.to_string();
            total += v;
        }
        EXPECT_EQ(total, hanner_volume(h));
        FaceLattice lat(h);
        FlagTable t(lat);
        EXPECT_TRUE(equal_volumes_check(t, lat.centroids()).ok());
        EXPECT_EQ(volume_function(lat.centroids(), t), hanner_volume(h));
    }
}

TEST(Volumes, ProductFormulaHolds) {
    for (const auto& h : all_trees(5)) EXPECT_TRUE(product_formula_check(h).ok()) << h.to_string();
}

TEST(Derivative, GradientMatchesInterpolatedFrozenVolume) {
    std::mt19937_64 rng(33);
    for (const auto& h : all_trees(3)) {
        FaceLattice lat(h);
        FlagTable t(lat);
        PointAssignment c = lat.centroids();
        auto signs = flag_signs(c, t);
        PointAssignment g = volume_gradient(c, t);
        for (int run = 0; run < 5; ++run) {
            PointAssignment z = random_assignment(rng, lat.size(), h.dim());
            std::vector<Rat> f;
            for (int i = 0; i <= h.dim(); ++i) {
                PointAssignment ct = c;
                for (std::size_t k = 0; k < ct.size(); ++k) ct[k] += rat(i) * z[k];
                f.push_back(frozen_volume(ct, t, signs));
            }
            Rat d = lagrange_derivative_at_zero(f);
            EXPECT_EQ(pairing(g, z), d);
            EXPECT_EQ(directional_derivative(c, z, t), d);
        }
    }
}

TEST(Derivative, VanishesAlongTangentDirectionsAtCentroids) {
    std::mt19937_64 rng(35);
    for (const auto& h : all_trees(4)) {
        FaceLattice lat(h);
        FlagTable t(lat);
        PointAssignment g = volume_gradient(lat.centroids(), t);
        for (int run = 0; run < 5; ++run) {
            // z_F in A_F - A_F.
            PointAssignment z;
            for (std::size_t i = 0; i < lat.size(); ++i) {
                Vec v(static_cast<std::size_t>(h.dim()));
                for (const auto& d : lat.frame(i).a.dirs()) v += small_rat(rng) * d;
                z.push_back(v);
            }
            EXPECT_EQ(pairing(g, z), 0) << h.to_string();
        }
    }
}

TEST(Derivative, FlagSumIdentityAndStability) {
    std::mt19937_64 rng(34);
    for (const auto& h : all_trees(4)) {
        FaceLattice lat(h);
        FlagTable t(lat);
        std::size_t n = static_cast<std::size_t>(h.dim());
        for (int run = 0; run < 3; ++run) {
            std::vector<Rat> xi;
            for (std::size_t k = 0; k < n; ++k) xi.push_back(rat(uniform(rng, -10, 10), 10000));
            Vec z = random_vec(rng, n, 3, 1);
            EXPECT_TRUE(stability_check(t, xi, z).ok()) << h.to_string();
            for (std::size_t g = 0; g < lat.size(); ++g) {
                const AffSub& a = lat.frame(g).a;
                if (a.dim() == 0) {
                    EXPECT_THROW(flag_sum_check(t, g, xi, z.is_zero() ? Vec::unit(n, 0) : z), std::invalid_argument);
                    continue;
                }
                Vec dir = a.dirs()[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(a.dim()) - 1))];
                EXPECT_TRUE(flag_sum_check(t, g, xi, dir).ok());
                for (Rat x : frozen_linear_part(t, g, dir)) EXPECT_EQ(x, 0);
            }
        }
    }
}

TEST(Derivative, DirectionOutsideTheFrameIsRejected) {
    HannerExpr h = standard_cube(2);
    FaceLattice lat(h);
    FlagTable t(lat);
    // An edge of the square: its frame has one direction, orthogonal to the other axis.
    for (std::size_t g = 0; g < lat.size(); ++g) {
        if (lat.dim(g) != 1) continue;
        Vec normal = orth_complement(lat.frame(g).a.dirs(), 2)[0];
        EXPECT_THROW(flag_sum_check(t, g, {rat(1, 100), rat(1, 100)}, normal), std::invalid_argument);
    }
}
