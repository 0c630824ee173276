#include "hannerlab/linalg.hpp"

#include <algorithm>
#include <utility>

namespace hannerlab {

Vec Vec::unit(std::size_t dim, std::size_t j) {
    Vec v(dim);
    v[j] = 1;
    return v;
}

Vec Vec::from_ints(std::initializer_list<long> xs) {
    Vec v(xs.size());
    std::size_t i = 0;
    for (long x : xs) v[i++] = x;
    return v;
}

bool Vec::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return x == 0; });
}

Vec& Vec::operator+=(const Vec& o) {
    if (o.dim() != dim()) throw DimensionError("vector dimension mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Vec& Vec::operator-=(const Vec& o) {
    if (o.dim() != dim()) throw DimensionError("vector dimension mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Vec& Vec::operator*=(const Rat& s) {
    for (auto& x : c_) x *= s;
    return *this;
}

bool operator<(const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator-(Vec a) {
    for (auto& x : a) x = -x;
    return a;
}
Vec operator*(const Rat& s, Vec a) { return a *= s; }

Rat dot(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) throw DimensionError("dot: dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

Rat norm2(const Vec& a) { return dot(a, a); }

std::string to_string(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (i) s += ", ";
        s += to_string(v[i]);
    }
    return s + ")";
}

Mat transpose(const Mat& m, std::size_t cols) {
    Mat t(cols, Vec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    return t;
}

Vec mat_vec(const Mat& m, const Vec& x) {
    Vec y(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) y[i] = dot(m[i], x);
    return y;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.empty()) return {};
    std::size_t inner = b.size();
    std::size_t cols = inner ? b[0].dim() : 0;
    Mat out(a.size(), Vec(cols));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].dim() != inner) throw DimensionError("mat_mul: shape mismatch");
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    }
    return out;
}

Mat identity(std::size_t n) {
    Mat m;
    for (std::size_t i = 0; i < n; ++i) m.push_back(Vec::unit(n, i));
    return m;
}

namespace {

using IntRow = std::vector<Int>;

// Multiplies the row by the lcm of its denominators; returns that lcm.
Int integer_row(const Vec& v, IntRow& out) {
    Int l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    out.resize(v.dim());
    for (std::size_t j = 0; j < v.dim(); ++j) out[j] = v[j].get_num() * (l / v[j].get_den());
    return l;
}

struct Echelon {
    std::vector<IntRow> a;
    std::vector<std::size_t> pivot_cols;
};

// Fraction-free row echelon form: every division below is exact.
Echelon bareiss_echelon(std::vector<IntRow> a, std::size_t cols) {
    Echelon e;
    std::size_t m = a.size();
    std::size_t r = 0;
    Int prev = 1;
    for (std::size_t col = 0; col < cols && r < m; ++col) {
        std::size_t p = r;
        while (p < m && a[p][col] == 0) ++p;
        if (p == m) continue;
        std::swap(a[r], a[p]);
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                Int t = a[r][col] * a[i][j] - a[i][col] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = a[r][col];
        e.pivot_cols.push_back(col);
        ++r;
    }
    a.resize(r);
    e.a = std::move(a);
    return e;
}

Mat to_rref(const Echelon& e, std::size_t cols) {
    Mat rows;
    for (const auto& ir : e.a) {
        Vec v(cols);
        for (std::size_t j = 0; j < cols; ++j) v[j] = Rat(ir[j]);
        rows.push_back(std::move(v));
    }
    for (std::size_t r = rows.size(); r-- > 0;) {
        std::size_t pc = e.pivot_cols[r];
        Rat inv = 1 / rows[r][pc];
        for (std::size_t j = pc; j < cols; ++j)
            if (rows[r][j] != 0) rows[r][j] *= inv;
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i][pc] == 0) continue;
            Rat f = rows[i][pc];
            for (std::size_t j = pc; j < cols; ++j)
                if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
        }
    }
    return rows;
}

Echelon echelon_of(const Mat& rows, std::size_t cols) {
    std::vector<IntRow> a(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].dim() != cols) throw DimensionError("matrix rows of unequal length");
        integer_row(rows[i], a[i]);
    }
    return bareiss_echelon(std::move(a), cols);
}

} // namespace

Rat det(const Mat& m) {
    std::size_t n = m.size();
    for (const auto& r : m)
        if (r.dim() != n) throw DimensionError("det: matrix is not square");
    if (n == 0) return 1;
    std::vector<IntRow> a(n);
    Int scale = 1;
    for (std::size_t i = 0; i < n; ++i) scale *= integer_row(m[i], a[i]);
    Int prev = 1;
    int s = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            s = -s;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    Rat d(a[n - 1][n - 1] * s, scale);
    d.canonicalize();
    return d;
}

std::size_t rank(const Mat& rows) {
    if (rows.empty()) return 0;
    return echelon_of(rows, rows[0].dim()).pivot_cols.size();
}

Mat rref_basis(const Mat& rows) {
    if (rows.empty()) return {};
    std::size_t cols = rows[0].dim();
    return to_rref(echelon_of(rows, cols), cols);
}

SolveResult solve(const Mat& m, const Vec& b) {
    if (m.size() != b.dim()) throw DimensionError("solve: rhs length differs from row count");
    std::size_t cols = m.empty() ? 0 : m[0].dim();
    SolveResult res;
    Mat aug;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].dim() != cols) throw DimensionError("solve: ragged matrix");
        Vec r(cols + 1);
        for (std::size_t j = 0; j < cols; ++j) r[j] = m[i][j];
        r[cols] = b[i];
        aug.push_back(std::move(r));
    }
    Echelon e = echelon_of(aug, cols + 1);
    if (!e.pivot_cols.empty() && e.pivot_cols.back() == cols) {
        res.kind = SolveResult::Kind::Inconsistent;
        return res;
    }
    Mat r = to_rref(e, cols + 1);
    std::vector<int> pivot_row(cols, -1);
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) pivot_row[e.pivot_cols[i]] = static_cast<int>(i);
    res.particular = Vec(cols);
    for (std::size_t i = 0; i < r.size(); ++i) res.particular[e.pivot_cols[i]] = r[i][cols];
    for (std::size_t f = 0; f < cols; ++f) {
        if (pivot_row[f] >= 0) continue;
        Vec v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < r.size(); ++i) v[e.pivot_cols[i]] = -r[i][f];
        res.null_basis.push_back(std::move(v));
    }
    res.kind = res.null_basis.empty() ? SolveResult::Kind::Unique : SolveResult::Kind::Underdetermined;
    return res;
}

std::vector<Vec> orth_complement(const std::vector<Vec>& vs, std::size_t dim) {
    for (const auto& v : vs)
        if (v.dim() != dim) throw DimensionError("orth_complement: dimension mismatch");
    if (vs.empty()) return identity(dim);
    return solve(vs, Vec(vs.size())).null_basis;
}

std::optional<Mat> inverse(const Mat& m) {
    std::size_t n = m.size();
    Mat aug;
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].dim() != n) throw DimensionError("inverse: matrix is not square");
        Vec r(2 * n);
        for (std::size_t j = 0; j < n; ++j) r[j] = m[i][j];
        r[n + i] = 1;
        aug.push_back(std::move(r));
    }
    Echelon e = echelon_of(aug, 2 * n);
    if (e.pivot_cols.size() < n || e.pivot_cols[n - 1] != n - 1) return std::nullopt;
    Mat r = to_rref(e, 2 * n);
    Mat inv(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = r[i][n + j];
    return inv;
}

AffSub::AffSub(Vec point, std::vector<Vec> dirs) : point_(std::move(point)) {
    for (const auto& d : dirs)
        if (d.dim() != point_.dim()) throw DimensionError("AffSub: direction of wrong dimension");
    dirs_ = rref_basis(dirs);
}

std::optional<Vec> AffSub::coords_of(const Vec& x) const {
    if (x.dim() != ambient()) throw DimensionError("AffSub: point of wrong dimension");
    Vec diff = x - point_;
    if (dirs_.empty()) {
        if (diff.is_zero()) return Vec{};
        return std::nullopt;
    }
    SolveResult s = solve(transpose(dirs_, ambient()), diff);
    if (s.kind == SolveResult::Kind::Inconsistent) return std::nullopt;
    return s.particular;
}

bool AffSub::contains(const Vec& x) const { return coords_of(x).has_value(); }

Vec AffSub::at(const Vec& mu) const {
    if (mu.dim() != dirs_.size()) throw DimensionError("AffSub::at: wrong parameter count");
    Vec x = point_;
    for (std::size_t j = 0; j < dirs_.size(); ++j)
        if (mu[j] != 0) x += mu[j] * dirs_[j];
    return x;
}

bool operator==(const AffSub& a, const AffSub& b) {
    return a.ambient() == b.ambient() && a.dirs_ == b.dirs_ && a.contains(b.point_);
}

AffSub sum(const AffSub& a, const AffSub& b) {
    if (a.ambient() != b.ambient()) throw DimensionError("sum: ambient mismatch");
    std::vector<Vec> d = a.dirs();
    d.insert(d.end(), b.dirs().begin(), b.dirs().end());
    return AffSub(a.point() + b.point(), std::move(d));
}

AffSub scale(const Rat& lambda, const AffSub& a) {
    if (lambda == 0) return AffSub(Vec(a.ambient()), {});
    return AffSub(lambda * a.point(), a.dirs());
}

AffSub weighted_combination(const Rat& alpha, const AffSub& a, const Rat& beta, const AffSub& b) {
    if (alpha == 0 || beta == 0) throw std::invalid_argument("weighted_combination: zero weight");
    return sum(scale(alpha, a), scale(beta, b));
}

AffSub add_direction(const AffSub& a, const Vec& d) {
    std::vector<Vec> dirs = a.dirs();
    dirs.push_back(d);
    return AffSub(a.point(), std::move(dirs));
}

} // namespace hannerlab
