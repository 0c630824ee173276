#ifndef HANNERLAB_TEST_SUPPORT_HPP
#define HANNERLAB_TEST_SUPPORT_HPP

// Hand-rolled generators shared by the unit tests. Every generator draws from an explicit
// std::mt19937_64 so a failing case is reproducible from its seed.

#include "hannerlab/hanner.hpp"
#include "hannerlab/linalg.hpp"

#include <random>
#include <vector>

namespace hannerlab::testing {

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Rat small_rat(std::mt19937_64& rng, long bound = 9, long den = 6) {
    return rat(uniform(rng, -bound, bound), uniform(rng, 1, den));
}

inline Vec random_vec(std::mt19937_64& rng, std::size_t n, long bound = 9, long den = 6) {
    Vec v(n);
    for (auto& x : v) x = small_rat(rng, bound, den);
    return v;
}

inline Mat random_mat(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound = 9, long den = 6) {
    Mat m;
    for (std::size_t i = 0; i < rows; ++i) m.push_back(random_vec(rng, cols, bound, den));
    return m;
}

// Random tree with n leaves, coordinates in left-to-right order.
inline HannerExpr random_tree(std::mt19937_64& rng, int n, int offset = 0) {
    if (n == 1) return HannerExpr::leaf(offset);
    int a = static_cast<int>(uniform(rng, 1, n - 1));
    NodeKind op = uniform(rng, 0, 1) ? NodeKind::L1 : NodeKind::Linf;
    return HannerExpr::combine(op, random_tree(rng, a, offset), random_tree(rng, n - a, offset + a));
}

inline std::vector<HannerExpr> all_trees(int max_n) {
    std::vector<HannerExpr> out;
    for (int n = 1; n <= max_n; ++n)
        for (auto& h : hanner_types(n)) out.push_back(h);
    return out;
}

} // namespace hannerlab::testing

#endif
