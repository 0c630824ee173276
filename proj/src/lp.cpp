#include "hannerlab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

namespace hannerlab {

namespace {

struct Tableau {
    std::vector<std::vector<Rat>> rows;  // last entry of each row is the rhs
    std::vector<std::size_t> basis;
    std::size_t cols = 0;
};

void pivot(Tableau& t, std::size_t r, std::size_t j) {
    auto& pr = t.rows[r];
    Rat inv = 1 / pr[j];
    for (auto& x : pr)
        if (x != 0) x *= inv;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (i == r || t.rows[i][j] == 0) continue;
        Rat f = t.rows[i][j];
        auto& row = t.rows[i];
        for (std::size_t k = 0; k <= t.cols; ++k)
            if (pr[k] != 0) row[k] -= f * pr[k];
    }
    t.basis[r] = j;
}

enum class Run { Optimal, Unbounded };

// Minimizes cost over the tableau's current basis; Bland's rule throughout.
Run run_simplex(Tableau& t, const std::vector<Rat>& cost, std::size_t allowed_cols) {
    std::vector<char> basic(t.cols, 0);
    for (;;) {
        std::fill(basic.begin(), basic.end(), 0);
        for (auto b : t.basis) basic[b] = 1;
        std::optional<std::size_t> enter;
        for (std::size_t j = 0; j < allowed_cols && !enter; ++j) {
            if (basic[j]) continue;
            Rat rc = cost[j];
            for (std::size_t r = 0; r < t.rows.size(); ++r)
                if (t.rows[r][j] != 0) rc -= cost[t.basis[r]] * t.rows[r][j];
            if (rc < 0) enter = j;
        }
        if (!enter) return Run::Optimal;
        std::size_t j = *enter;
        std::optional<std::size_t> leave;
        Rat best;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            if (t.rows[r][j] <= 0) continue;
            Rat ratio = t.rows[r][t.cols] / t.rows[r][j];
            if (!leave || ratio < best || (ratio == best && t.basis[r] < t.basis[*leave])) {
                leave = r;
                best = ratio;
            }
        }
        if (!leave) return Run::Unbounded;
        pivot(t, *leave, j);
    }
}

std::vector<std::size_t> tight_set(const LinProg& p, const Vec& u) {
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < p.constraints.size(); ++i)
        if (dot(p.constraints[i].a, u) == p.constraints[i].b) tight.push_back(i);
    return tight;
}

LpOutcome feasibility_probe(const LinProg& p) {
    // max -s subject to <a_i,u> - s <= b_i, -s <= 0: always feasible and bounded.
    LinProg aux;
    aux.dim = p.dim + 1;
    aux.objective = Vec(aux.dim);
    aux.objective[p.dim] = -1;
    for (const auto& c : p.constraints) {
        Vec a(aux.dim);
        for (std::size_t k = 0; k < p.dim; ++k) a[k] = c.a[k];
        a[p.dim] = -1;
        aux.constraints.push_back({std::move(a), c.b});
    }
    Vec s(aux.dim);
    s[p.dim] = -1;
    aux.constraints.push_back({std::move(s), Rat(0)});
    return maximize(aux);
}

} // namespace

namespace {

// Floating-point run of the same dual simplex; returns the constraints in the final basis, or
// nothing if it fails to reach an optimum. Only used to seed the exact solve.
std::optional<std::vector<std::size_t>> approximate_basis(const LinProg& p) {
    const std::size_t d = p.dim, m = p.constraints.size(), cols = m + d;
    constexpr double eps = 1e-9;
    std::vector<std::vector<double>> rows(d, std::vector<double>(cols + 1, 0.0));
    std::vector<std::size_t> basis(d);
    for (std::size_t r = 0; r < d; ++r) {
        double sg = p.objective[r] < 0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < m; ++i) rows[r][i] = sg * p.constraints[i].a[r].get_d();
        rows[r][m + r] = 1;
        rows[r][cols] = sg * p.objective[r].get_d();
        basis[r] = m + r;
    }
    auto run = [&](const std::vector<double>& cost, std::size_t allowed) {
        for (std::size_t iter = 0; iter < 50 * (cols + 1); ++iter) {
            std::vector<char> basic(cols, 0);
            for (auto b : basis) basic[b] = 1;
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < allowed && !enter; ++j) {
                if (basic[j]) continue;
                double rc = cost[j];
                for (std::size_t r = 0; r < d; ++r) rc -= cost[basis[r]] * rows[r][j];
                if (rc < -eps) enter = j;
            }
            if (!enter) return true;
            std::optional<std::size_t> leave;
            double best = 0;
            for (std::size_t r = 0; r < d; ++r) {
                if (rows[r][*enter] <= eps) continue;
                double ratio = rows[r][cols] / rows[r][*enter];
                if (!leave || ratio < best - eps || (ratio <= best + eps && basis[r] < basis[*leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (!leave) return false;
            auto& pr = rows[*leave];
            double inv = 1 / pr[*enter];
            for (auto& x : pr) x *= inv;
            for (std::size_t r = 0; r < d; ++r) {
                if (r == *leave) continue;
                double f = rows[r][*enter];
                if (f == 0) continue;
                for (std::size_t k = 0; k <= cols; ++k) rows[r][k] -= f * pr[k];
            }
            basis[*leave] = *enter;
        }
        return false;
    };
    std::vector<double> cost(cols, 0.0);
    for (std::size_t j = m; j < cols; ++j) cost[j] = 1;
    if (!run(cost, cols)) return std::nullopt;
    for (std::size_t j = 0; j < m; ++j) cost[j] = p.constraints[j].b.get_d();
    for (std::size_t j = m; j < cols; ++j) cost[j] = 1e12;
    if (!run(cost, cols)) return std::nullopt;
    std::vector<std::size_t> out;
    for (auto b : basis)
        if (b < m) out.push_back(b);
    if (out.empty()) return std::nullopt;
    return out;
}

LpOutcome maximize_all(const LinProg& p);

} // namespace

// Constraint generation: the exact simplex runs on a subset seeded by a floating-point solve
// and grows by violated constraints until its optimum is feasible for all of them.
LpOutcome maximize(const LinProg& p) {
    const std::size_t d = p.dim;
    const std::size_t m = p.constraints.size();
    if (p.objective.dim() != d) throw DimensionError("maximize: objective dimension");
    for (const auto& c : p.constraints)
        if (c.a.dim() != d) throw DimensionError("maximize: constraint dimension");
    if (d == 0 || m <= 4 * d + 8) return maximize_all(p);
    auto seed = approximate_basis(p);
    if (!seed) return maximize_all(p);
    std::vector<char> in(m, 0);
    for (auto i : *seed) in[i] = 1;
    for (;;) {
        LinProg sub;
        sub.dim = d;
        sub.objective = p.objective;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < m; ++i)
            if (in[i]) {
                idx.push_back(i);
                sub.constraints.push_back(p.constraints[i]);
            }
        LpOutcome so = maximize_all(sub);
        if (so.status == LpStatus::Infeasible) return so;
        if (so.status == LpStatus::Unbounded) return maximize_all(p);
        std::vector<std::pair<double, std::size_t>> violated;
        for (std::size_t i = 0; i < m; ++i) {
            if (in[i]) continue;
            Rat excess = dot(p.constraints[i].a, so.witness) - p.constraints[i].b;
            if (excess > 0) violated.emplace_back(-excess.get_d(), i);
        }
        if (violated.empty()) {
            LpOutcome out;
            out.status = LpStatus::Optimal;
            out.value = so.value;
            out.witness = so.witness;
            out.dual.assign(m, Rat(0));
            for (std::size_t k = 0; k < idx.size(); ++k) out.dual[idx[k]] = so.dual[k];
            out.tight = tight_set(p, out.witness);
            return out;
        }
        std::sort(violated.begin(), violated.end());
        for (std::size_t k = 0; k < violated.size() && k < 2 * d; ++k) in[violated[k].second] = 1;
    }
}

namespace {

LpOutcome maximize_all(const LinProg& p) {
    const std::size_t d = p.dim;
    const std::size_t m = p.constraints.size();
    LpOutcome out;
    if (d == 0) {
        bool ok = std::all_of(p.constraints.begin(), p.constraints.end(),
                              [](const Constraint& c) { return c.b >= 0; });
        out.status = ok ? LpStatus::Optimal : LpStatus::Infeasible;
        out.value = 0;
        out.witness = Vec(0);
        out.dual.assign(m, Rat(0));
        if (ok) out.tight = tight_set(p, out.witness);
        return out;
    }

    // Dual: minimize <b,y> subject to A^T y = objective, y >= 0.
    Tableau t;
    t.cols = m + d;
    t.rows.assign(d, std::vector<Rat>(t.cols + 1));
    t.basis.resize(d);
    for (std::size_t r = 0; r < d; ++r) {
        bool neg = p.objective[r] < 0;
        for (std::size_t i = 0; i < m; ++i) {
            const Rat& a = p.constraints[i].a[r];
            if (a != 0) t.rows[r][i] = neg ? Rat(-a) : a;
        }
        t.rows[r][m + r] = 1;
        t.rows[r][t.cols] = neg ? Rat(-p.objective[r]) : p.objective[r];
        t.basis[r] = m + r;
    }
    std::vector<Rat> cost(t.cols);
    for (std::size_t j = m; j < t.cols; ++j) cost[j] = 1;
    run_simplex(t, cost, t.cols);
    Rat infeas = 0;
    for (std::size_t r = 0; r < d; ++r)
        if (t.basis[r] >= m) infeas += t.rows[r][t.cols];
    if (infeas > 0) {
        LpOutcome probe = feasibility_probe(p);
        if (probe.value == 0) {
            out.status = LpStatus::Unbounded;
            out.witness = Vec(d);
            for (std::size_t k = 0; k < d; ++k) out.witness[k] = probe.witness[k];
            out.tight = tight_set(p, out.witness);
        } else {
            out.status = LpStatus::Infeasible;
        }
        return out;
    }
    for (std::size_t r = 0; r < t.rows.size();) {
        if (t.basis[r] < m) {
            ++r;
            continue;
        }
        std::optional<std::size_t> j;
        for (std::size_t k = 0; k < m && !j; ++k)
            if (t.rows[r][k] != 0) j = k;
        if (j) {
            pivot(t, r, *j);
            ++r;
        } else {
            t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(r));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
        }
    }
    for (std::size_t i = 0; i < m; ++i) cost[i] = p.constraints[i].b;
    if (run_simplex(t, cost, m) == Run::Unbounded) {
        out.status = LpStatus::Infeasible;
        return out;
    }
    out.dual.assign(m, Rat(0));
    Mat tight_rows;
    Vec rhs(t.basis.size());
    for (std::size_t r = 0; r < t.basis.size(); ++r) {
        out.dual[t.basis[r]] = t.rows[r][t.cols];
        tight_rows.push_back(p.constraints[t.basis[r]].a);
        rhs[r] = p.constraints[t.basis[r]].b;
    }
    out.witness = tight_rows.empty() ? Vec(d) : solve(tight_rows, rhs).particular;
    out.status = LpStatus::Optimal;
    out.value = dot(p.objective, out.witness);
    out.tight = tight_set(p, out.witness);
    return out;
}

} // namespace

namespace {

using IntRow = std::vector<Int>;

IntRow primitive(const Vec& v) {
    Int l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    IntRow r(v.dim());
    Int g = 0;
    for (std::size_t j = 0; j < v.dim(); ++j) {
        r[j] = v[j].get_num() * (l / v[j].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r[j].get_mpz_t());
    }
    if (g > 1)
        for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return r;
}

void make_primitive(IntRow& r) {
    Int g = 0;
    for (const auto& x : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

Int idot(const IntRow& a, const IntRow& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

class Bits {
public:
    explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
    void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1u; }
    Bits operator&(const Bits& o) const {
        Bits r;
        r.w_.resize(w_.size());
        for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] & o.w_[k];
        return r;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w_) c += static_cast<std::size_t>(__builtin_popcountll(x));
        return c;
    }
    bool subset_of(const Bits& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

private:
    std::vector<std::uint64_t> w_;
};

} // namespace

ConeRays extreme_rays(const std::vector<Vec>& rows) {
    if (rows.empty()) throw std::domain_error("extreme_rays: no constraints");
    const std::size_t d = rows[0].dim();
    const std::size_t m = rows.size();
    std::vector<IntRow> R(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].dim() != d) throw DimensionError("extreme_rays: ragged rows");
        R[i] = primitive(rows[i]);
    }
    std::vector<std::size_t> basis;
    Mat chosen;
    for (std::size_t i = 0; i < m && basis.size() < d; ++i) {
        if (rows[i].is_zero()) continue;
        chosen.push_back(rows[i]);
        if (rank(chosen) == chosen.size())
            basis.push_back(i);
        else
            chosen.pop_back();
    }
    if (basis.size() < d) throw std::domain_error("extreme_rays: cone is not pointed");
    Mat inv = *inverse(chosen);

    std::vector<IntRow> rays;
    std::vector<Bits> zs;
    for (std::size_t k = 0; k < d; ++k) {
        Vec col(d);
        for (std::size_t i = 0; i < d; ++i) col[i] = inv[i][k];
        rays.push_back(primitive(col));
        Bits z(m);
        for (std::size_t i = 0; i < d; ++i)
            if (i != k) z.set(basis[i]);
        zs.push_back(z);
    }
    std::vector<char> in_basis(m, 0);
    for (auto b : basis) in_basis[b] = 1;

    for (std::size_t h = 0; h < m; ++h) {
        if (in_basis[h]) continue;
        std::vector<std::size_t> pos, zero, neg;
        std::vector<Int> s(rays.size());
        for (std::size_t r = 0; r < rays.size(); ++r) {
            s[r] = idot(R[h], rays[r]);
            int sg = sgn(s[r]);
            (sg > 0 ? pos : sg < 0 ? neg : zero).push_back(r);
        }
        if (neg.empty()) {
            for (auto r : zero) zs[r].set(h);
            continue;
        }
        std::vector<IntRow> next;
        std::vector<Bits> nz;
        for (auto r : pos) {
            next.push_back(rays[r]);
            nz.push_back(zs[r]);
        }
        for (auto r : zero) {
            next.push_back(rays[r]);
            zs[r].set(h);
            nz.push_back(zs[r]);
        }
        for (auto p : pos) {
            for (auto q : neg) {
                Bits common = zs[p] & zs[q];
                if (d >= 2 && common.count() + 2 < d) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
                    if (r != p && r != q && common.subset_of(zs[r])) adjacent = false;
                if (!adjacent) continue;
                IntRow ray(d);
                Int a = s[p];
                Int b = -s[q];
                for (std::size_t k = 0; k < d; ++k) ray[k] = a * rays[q][k] + b * rays[p][k];
                make_primitive(ray);
                common.set(h);
                next.push_back(std::move(ray));
                nz.push_back(common);
            }
        }
        rays = std::move(next);
        zs = std::move(nz);
    }

    ConeRays out;
    for (std::size_t r = 0; r < rays.size(); ++r) {
        Vec v(d);
        for (std::size_t k = 0; k < d; ++k) v[k] = Rat(rays[r][k]);
        out.rays.push_back(std::move(v));
        std::vector<std::size_t> z;
        for (std::size_t i = 0; i < m; ++i)
            if (zs[r].test(i)) z.push_back(i);
        out.zeros.push_back(std::move(z));
    }
    return out;
}

VertexSet enumerate_vertices(const std::vector<Constraint>& region, std::size_t dim) {
    std::vector<Vec> rows;
    Vec lam(dim + 1);
    lam[dim] = 1;
    rows.push_back(lam);
    for (const auto& c : region) {
        if (c.a.dim() != dim) throw DimensionError("enumerate_vertices: constraint dimension");
        Vec r(dim + 1);
        for (std::size_t k = 0; k < dim; ++k) r[k] = -c.a[k];
        r[dim] = c.b;
        rows.push_back(std::move(r));
    }
    ConeRays cr = extreme_rays(rows);
    std::vector<std::pair<Vec, std::vector<std::size_t>>> found;
    for (std::size_t r = 0; r < cr.rays.size(); ++r) {
        const Vec& z = cr.rays[r];
        if (z[dim] == 0) throw std::domain_error("enumerate_vertices: region is unbounded");
        Vec x(dim);
        for (std::size_t k = 0; k < dim; ++k) x[k] = z[k] / z[dim];
        std::vector<std::size_t> tight;
        for (auto i : cr.zeros[r])
            if (i > 0) tight.push_back(i - 1);
        found.emplace_back(std::move(x), std::move(tight));
    }
    if (found.empty()) throw InfeasibleError("enumerate_vertices: region is empty");
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    VertexSet vs;
    for (auto& [x, t] : found) {
        vs.vertices.push_back(std::move(x));
        vs.tight.push_back(std::move(t));
    }
    return vs;
}

namespace {

// Weights of the point of least norm in the affine hull of pts (affinely independent).
std::vector<Rat> affine_minimizer(const std::vector<Vec>& pts, const std::vector<std::size_t>& s) {
    std::size_t k = s.size();
    Mat sys(k + 1, Vec(k + 1));
    Vec rhs(k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            Rat g = dot(pts[s[i]], pts[s[j]]);
            sys[i][j] = g;
            sys[j][i] = g;
        }
        sys[i][k] = -1;
        sys[k][i] = 1;
    }
    rhs[k] = 1;
    SolveResult sr = solve(sys, rhs);
    if (sr.kind != SolveResult::Kind::Unique)
        throw std::logic_error("min_norm_point: lost affine independence");
    return std::vector<Rat>(sr.particular.begin(), sr.particular.begin() + static_cast<std::ptrdiff_t>(k));
}

// Floating-point Wolfe run; its final corral seeds the exact one. Empty on numerical trouble.
std::vector<std::size_t> approximate_corral(const std::vector<Vec>& pts) {
    const std::size_t n = pts.front().dim();
    std::vector<std::vector<double>> q(pts.size(), std::vector<double>(n));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t k = 0; k < n; ++k) q[i][k] = pts[i][k].get_d();
    auto dotd = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double r = 0;
        for (std::size_t k = 0; k < n; ++k) r += a[k] * b[k];
        return r;
    };
    // Affine minimizer by Gaussian elimination with partial pivoting.
    auto affine = [&](const std::vector<std::size_t>& s, std::vector<double>& w) {
        std::size_t k = s.size();
        std::vector<std::vector<double>> a(k + 1, std::vector<double>(k + 2, 0.0));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) a[i][j] = dotd(q[s[i]], q[s[j]]);
            a[i][k] = -1;
            a[k][i] = 1;
        }
        a[k][k + 1] = 1;
        for (std::size_t c = 0; c <= k; ++c) {
            std::size_t piv = c;
            for (std::size_t r = c + 1; r <= k; ++r)
                if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
            if (std::abs(a[piv][c]) < 1e-13) return false;
            std::swap(a[c], a[piv]);
            for (std::size_t r = 0; r <= k; ++r) {
                if (r == c) continue;
                double f = a[r][c] / a[c][c];
                for (std::size_t j = c; j <= k + 1; ++j) a[r][j] -= f * a[c][j];
            }
        }
        w.assign(k, 0.0);
        for (std::size_t i = 0; i < k; ++i) w[i] = a[i][k + 1] / a[i][i];
        return true;
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < q.size(); ++i)
        if (dotd(q[i], q[i]) < dotd(q[best], q[best])) best = i;
    std::vector<std::size_t> s{best};
    std::vector<double> lam{1.0};
    std::vector<double> x = q[best];
    auto combine = [&]() {
        std::fill(x.begin(), x.end(), 0.0);
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t k = 0; k < n; ++k) x[k] += lam[i] * q[s[i]][k];
    };
    for (int outer = 0; outer < 1000; ++outer) {
        double xx = dotd(x, x);
        std::size_t j = 0;
        double jv = dotd(x, q[0]);
        for (std::size_t i = 1; i < q.size(); ++i) {
            double v = dotd(x, q[i]);
            if (v < jv) {
                jv = v;
                j = i;
            }
        }
        if (jv >= xx - 1e-12 * (1 + xx) || std::find(s.begin(), s.end(), j) != s.end()) return s;
        s.push_back(j);
        lam.push_back(0);
        for (int inner = 0;; ++inner) {
            std::vector<double> alpha;
            if (inner > 100 || !affine(s, alpha)) return {};
            if (std::all_of(alpha.begin(), alpha.end(), [](double a) { return a > 1e-14; })) {
                lam = alpha;
                combine();
                break;
            }
            double theta = 1;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (alpha[i] <= 1e-14) theta = std::min(theta, lam[i] / (lam[i] - alpha[i]));
            std::vector<std::size_t> s2;
            std::vector<double> l2;
            for (std::size_t i = 0; i < s.size(); ++i) {
                double l = lam[i] + theta * (alpha[i] - lam[i]);
                if (l > 1e-14) {
                    s2.push_back(s[i]);
                    l2.push_back(l);
                }
            }
            if (s2.empty()) return {};
            s = std::move(s2);
            lam = std::move(l2);
            combine();
        }
    }
    return {};
}

} // namespace

Vec min_norm_point(const std::vector<Vec>& pts) {
    if (pts.empty()) throw std::invalid_argument("min_norm_point: empty set");
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (norm2(pts[i]) < norm2(pts[best])) best = i;
    std::vector<std::size_t> s{best};
    std::vector<Rat> lam{Rat(1)};
    Vec x = pts[best];
    auto combine = [&]() {
        Vec y(x.dim());
        for (std::size_t i = 0; i < s.size(); ++i)
            if (lam[i] != 0) y += lam[i] * pts[s[i]];
        return y;
    };
    // Warm start: the exact loop below certifies or repairs the seeded corral.
    if (pts.size() > 2) {
        std::vector<std::size_t> seed = approximate_corral(pts);
        if (seed.size() > 1 && seed.size() <= x.dim() + 1) {
            try {
                std::vector<Rat> alpha = affine_minimizer(pts, seed);
                if (std::all_of(alpha.begin(), alpha.end(), [](const Rat& a) { return a > 0; })) {
                    s = seed;
                    lam = alpha;
                    x = combine();
                }
            } catch (const std::logic_error&) {
            }
        }
    }
    for (;;) {
        Rat xx = norm2(x);
        std::size_t j = 0;
        Rat jv = dot(x, pts[0]);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            Rat v = dot(x, pts[i]);
            if (v < jv) {
                jv = v;
                j = i;
            }
        }
        if (jv >= xx || std::find(s.begin(), s.end(), j) != s.end()) return x;
        s.push_back(j);
        lam.push_back(0);
        for (;;) {
            std::vector<Rat> alpha = affine_minimizer(pts, s);
            bool interior = std::all_of(alpha.begin(), alpha.end(), [](const Rat& a) { return a > 0; });
            if (interior) {
                lam = alpha;
                x = combine();
                break;
            }
            std::optional<Rat> theta;
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (alpha[i] > 0) continue;
                Rat th = lam[i] / (lam[i] - alpha[i]);
                if (!theta || th < *theta) theta = th;
            }
            for (std::size_t i = 0; i < s.size(); ++i) lam[i] += *theta * (alpha[i] - lam[i]);
            std::vector<std::size_t> s2;
            std::vector<Rat> l2;
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (lam[i] > 0) {
                    s2.push_back(s[i]);
                    l2.push_back(lam[i]);
                }
            }
            s = std::move(s2);
            lam = std::move(l2);
            x = combine();
        }
    }
}

Vec nearest_point(const Vec& target, const std::vector<Constraint>& region, const AffSub& onto) {
    const std::size_t k = onto.dim();
    const Vec& p = onto.point();
    if (target.dim() != onto.ambient()) throw DimensionError("nearest_point: target dimension");
    std::vector<Constraint> reduced;
    for (const auto& c : region) {
        Vec g(k);
        for (std::size_t j = 0; j < k; ++j) g[j] = dot(c.a, onto.dirs()[j]);
        Rat h = c.b - dot(c.a, p);
        if (g.is_zero()) {
            if (h < 0) throw InfeasibleError("nearest_point: empty intersection");
            continue;
        }
        reduced.push_back({std::move(g), std::move(h)});
    }
    if (k == 0) return p;
    VertexSet vs = enumerate_vertices(reduced, k);
    std::vector<Vec> pts;
    for (const auto& mu : vs.vertices) pts.push_back(onto.at(mu) - target);
    return min_norm_point(pts) + target;
}

} // namespace hannerlab
