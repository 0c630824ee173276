#ifndef HANNERLAB_LINALG_HPP
#define HANNERLAB_LINALG_HPP

#include "hannerlab/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hannerlab {

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t dim) : c_(dim) {}
    Vec(std::initializer_list<Rat> xs) : c_(xs) {}
    explicit Vec(std::vector<Rat> xs) : c_(std::move(xs)) {}

    static Vec unit(std::size_t dim, std::size_t j);
    static Vec from_ints(std::initializer_list<long> xs);

    std::size_t dim() const { return c_.size(); }
    std::size_t size() const { return c_.size(); }
    Rat& operator[](std::size_t i) { return c_[i]; }
    const Rat& operator[](std::size_t i) const { return c_[i]; }
    auto begin() const { return c_.begin(); }
    auto end() const { return c_.end(); }
    auto begin() { return c_.begin(); }
    auto end() { return c_.end(); }
    const std::vector<Rat>& coords() const { return c_; }

    bool is_zero() const;

    Vec& operator+=(const Vec& o);
    Vec& operator-=(const Vec& o);
    Vec& operator*=(const Rat& s);

    friend bool operator==(const Vec& a, const Vec& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }
    // Lexicographic; used only for deterministic ordering.
    friend bool operator<(const Vec& a, const Vec& b);

private:
    std::vector<Rat> c_;
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator-(Vec a);
Vec operator*(const Rat& s, Vec a);
Rat dot(const Vec& a, const Vec& b);
Rat norm2(const Vec& a);
std::string to_string(const Vec& v);

// Rows of equal length.
using Mat = std::vector<Vec>;

Mat transpose(const Mat& m, std::size_t cols);
Vec mat_vec(const Mat& m, const Vec& x);
Mat mat_mul(const Mat& a, const Mat& b);
Mat identity(std::size_t n);

// Bareiss elimination on the integer-scaled rows.
Rat det(const Mat& m);

std::size_t rank(const Mat& rows);

// Reduced row echelon form of the row space; zero rows dropped.
Mat rref_basis(const Mat& rows);

struct SolveResult {
    enum class Kind { Unique, Underdetermined, Inconsistent };
    Kind kind = Kind::Inconsistent;
    Vec particular;      // valid unless Inconsistent; free variables set to 0
    std::vector<Vec> null_basis;
};

// m * x = b.
SolveResult solve(const Mat& m, const Vec& b);

// Basis of {x : <v,x> = 0 for all v in vs}, one vector per free column.
std::vector<Vec> orth_complement(const std::vector<Vec>& vs, std::size_t dim);

std::optional<Mat> inverse(const Mat& m);

// point + span(dirs); dirs kept as a reduced row echelon basis.
class AffSub {
public:
    AffSub() = default;
    AffSub(Vec point, std::vector<Vec> dirs);

    const Vec& point() const { return point_; }
    const std::vector<Vec>& dirs() const { return dirs_; }
    std::size_t ambient() const { return point_.dim(); }
    std::size_t dim() const { return dirs_.size(); }

    bool contains(const Vec& x) const;
    // Coordinates of x - point in the dirs basis; empty when x is outside.
    std::optional<Vec> coords_of(const Vec& x) const;
    Vec at(const Vec& mu) const;

    friend bool operator==(const AffSub& a, const AffSub& b);

private:
    Vec point_;
    std::vector<Vec> dirs_;
};

// Minkowski sum of affine subspaces.
AffSub sum(const AffSub& a, const AffSub& b);
AffSub scale(const Rat& lambda, const AffSub& a);
// {alpha p + beta q : p in a, q in b}; both weights must be nonzero.
AffSub weighted_combination(const Rat& alpha, const AffSub& a, const Rat& beta, const AffSub& b);
AffSub add_direction(const AffSub& a, const Vec& d);

} // namespace hannerlab

#endif
