#include "hannerlab/geometry.hpp"

#include "hannerlab/lp.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>

namespace hannerlab {

namespace {

std::vector<Constraint> unit_rhs(const std::vector<Vec>& normals) {
    std::vector<Constraint> cs;
    cs.reserve(normals.size());
    for (const auto& a : normals) cs.push_back({a, Rat(1)});
    return cs;
}

void require_dims(int n, const std::vector<Vec>& vs, const char* what) {
    for (const auto& v : vs)
        if (v.dim() != static_cast<std::size_t>(n)) throw DimensionError(std::string(what) + ": dimension mismatch");
}

// Vertices of {<a,x> <= 1}, mapping LP errors to geometric ones.
std::vector<Vec> vertices_of(const std::vector<Vec>& normals, int n) {
    try {
        return enumerate_vertices(unit_rhs(normals), static_cast<std::size_t>(n)).vertices;
    } catch (const InfeasibleError&) {
        throw GeometryError("polytope is empty");
    } catch (const std::domain_error&) {
        throw GeometryError("polytope is unbounded or lower-dimensional");
    }
}

void dedupe(std::vector<Vec>& vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

using IndexSet = std::vector<std::size_t>;

IndexSet intersect(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

bool subset_of(const IndexSet& a, const IndexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

struct Triangulator {
    const std::vector<Vec>& verts;
    const std::vector<IndexSet>& facets;
    int n;
    Rat sum;

    // Facets of face s are the maximal proper sets among s intersected with the facets of the polytope.
    std::vector<IndexSet> subfaces(const IndexSet& s) const {
        std::vector<IndexSet> cand;
        for (const auto& f : facets) {
            IndexSet x = intersect(s, f);
            if (!x.empty() && x.size() < s.size()) cand.push_back(std::move(x));
        }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        std::vector<IndexSet> out;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            bool maximal = true;
            for (std::size_t j = 0; j < cand.size() && maximal; ++j)
                if (i != j && cand[i].size() < cand[j].size() && subset_of(cand[i], cand[j])) maximal = false;
            if (maximal) out.push_back(cand[i]);
        }
        return out;
    }

    // s is a face of dimension d; apexes hold n-1-d pulled vertices.
    void run(const IndexSet& s, int d, Mat& apexes) {
        if (d == 0) {
            apexes.push_back(verts[s.front()]);
            sum += abs_rat(det(apexes));
            apexes.pop_back();
            return;
        }
        std::size_t apex = s.front();
        apexes.push_back(verts[apex]);
        for (const auto& g : subfaces(s))
            if (!std::binary_search(g.begin(), g.end(), apex)) run(g, d - 1, apexes);
        apexes.pop_back();
    }
};

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

bool is_symmetric(const VPolytope& p) {
    std::set<Vec> s(p.vertices.begin(), p.vertices.end());
    for (const auto& v : p.vertices)
        if (!s.count(-v)) return false;
    return true;
}

bool is_symmetric(const HPolytope& p) { return is_symmetric(VPolytope{p.n, p.normals}); }

HPolytope hull_facets(const VPolytope& p) {
    require_dims(p.n, p.vertices, "hull_facets");
    if (rank(p.vertices) != static_cast<std::size_t>(p.n)) throw GeometryError("hull_facets: polytope is not full-dimensional");
    // Facets of K are the vertices of its polar.
    return HPolytope{p.n, vertices_of(p.vertices, p.n)};
}

HPolytope hull_facets_bruteforce(const VPolytope& p) {
    require_dims(p.n, p.vertices, "hull_facets_bruteforce");
    const std::size_t m = p.vertices.size(), n = static_cast<std::size_t>(p.n);
    if (rank(p.vertices) != n) throw GeometryError("hull_facets_bruteforce: polytope is not full-dimensional");
    std::vector<Vec> out;
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    Vec ones(n);
    for (auto& x : ones) x = 1;
    while (true) {
        Mat rows;
        for (auto i : pick) rows.push_back(p.vertices[i]);
        SolveResult s = solve(rows, ones);
        if (s.kind == SolveResult::Kind::Unique) {
            bool ok = true;
            for (const auto& v : p.vertices)
                if (dot(s.particular, v) > 1) {
                    ok = false;
                    break;
                }
            if (ok) out.push_back(s.particular);
        }
        // Next n-subset in lexicographic order.
        std::size_t k = n;
        while (k > 0 && pick[k - 1] == m - n + k - 1) --k;
        if (k == 0) break;
        ++pick[k - 1];
        for (std::size_t j = k; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    dedupe(out);
    return HPolytope{p.n, out};
}

HPolytope polar(const VPolytope& p) { return HPolytope{p.n, p.vertices}; }

VPolytope vertex_form(const HPolytope& p) {
    require_dims(p.n, p.normals, "vertex_form");
    return VPolytope{p.n, vertices_of(p.normals, p.n)};
}

VPolytope canonical(const VPolytope& p) { return vertex_form(hull_facets(p)); }

HPolytope canonical(const HPolytope& p) {
    std::vector<Vec> nz;
    for (const auto& a : p.normals)
        if (!a.is_zero()) nz.push_back(a);
    return HPolytope{p.n, canonical(VPolytope{p.n, nz}).vertices};
}

Rat volume(const VPolytope& p) { return volume(p, hull_facets(p)); }

Rat volume(const VPolytope& p, const HPolytope& facets) {
    require_dims(p.n, p.vertices, "volume");
    if (rank(p.vertices) != static_cast<std::size_t>(p.n)) return 0;
    std::vector<IndexSet> fs;
    for (const auto& a : facets.normals) {
        IndexSet s;
        for (std::size_t i = 0; i < p.vertices.size(); ++i)
            if (dot(a, p.vertices[i]) == 1) s.push_back(i);
        // A facet of a full-dimensional polytope carries at least n vertices.
        if (s.size() < static_cast<std::size_t>(p.n)) throw GeometryError("volume: normal is not a facet of the vertices");
        fs.push_back(std::move(s));
    }
    Triangulator t{p.vertices, fs, p.n, Rat(0)};
    Mat apexes;
    for (const auto& f : fs) t.run(f, p.n - 1, apexes);
    return t.sum / factorial(p.n);
}

Rat volume_product(const VPolytope& p) {
    HPolytope h = hull_facets(p);
    VPolytope q{p.n, h.normals};
    return volume(p, h) * volume(q, HPolytope{p.n, p.vertices});
}

Rat distance2(const Vec& x, const VPolytope& p) {
    std::vector<Vec> shifted;
    shifted.reserve(p.vertices.size());
    for (const auto& v : p.vertices) shifted.push_back(v - x);
    return norm2(min_norm_point(shifted));
}

namespace {

// Largest distance2(v, to) over v in from, at least floor on entry. The squared distance to the
// nearest vertex bounds distance2 from above, so points whose bound cannot beat the running
// maximum are skipped; candidates go in decreasing order of the bound.
void farthest_into(const VPolytope& from, const VPolytope& to, Rat& best) {
    std::vector<std::pair<Rat, std::size_t>> bound;
    for (std::size_t i = 0; i < from.vertices.size(); ++i) {
        std::optional<Rat> b;
        for (const auto& w : to.vertices) {
            Rat d = norm2(from.vertices[i] - w);
            if (!b || d < *b) b = d;
        }
        bound.emplace_back(*b, i);
    }
    std::sort(bound.begin(), bound.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [b, i] : bound) {
        if (b <= best) break;
        best = std::max(best, distance2(from.vertices[i], to));
    }
}

} // namespace

Rat hausdorff2(const VPolytope& p, const VPolytope& q) {
    Rat best = 0;
    farthest_into(p, q, best);
    farthest_into(q, p, best);
    return best;
}

VPolytope project(const VPolytope& p, const std::vector<int>& coords) {
    if (coords.empty()) throw std::invalid_argument("project: empty coordinate set");
    std::vector<Vec> out;
    for (const auto& v : p.vertices) {
        Vec w(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i) w[i] = v[static_cast<std::size_t>(coords[i])];
        out.push_back(std::move(w));
    }
    dedupe(out);
    return canonical(VPolytope{static_cast<int>(coords.size()), out});
}

HPolytope section(const HPolytope& p, const std::vector<int>& coords) {
    if (coords.empty()) throw std::invalid_argument("section: empty coordinate set");
    std::vector<Vec> out;
    for (const auto& a : p.normals) {
        Vec w(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i) w[i] = a[static_cast<std::size_t>(coords[i])];
        if (!w.is_zero()) out.push_back(std::move(w));
    }
    dedupe(out);
    return canonical(HPolytope{static_cast<int>(coords.size()), out});
}

VPolytope linear_image(const Mat& t, const VPolytope& p) {
    VPolytope q{static_cast<int>(t.size()), {}};
    for (const auto& v : p.vertices) q.vertices.push_back(mat_vec(t, v));
    dedupe(q.vertices);
    return q;
}

VPolytope intersect_cube(const VPolytope& p) {
    HPolytope h = hull_facets(p);
    for (int j = 0; j < p.n; ++j) {
        Vec e = Vec::unit(static_cast<std::size_t>(p.n), static_cast<std::size_t>(j));
        h.normals.push_back(e);
        h.normals.push_back(-e);
    }
    return vertex_form(h);
}

VPolytope hanner_polytope(const HannerExpr& h) { return VPolytope{h.dim(), vertex_vectors(h)}; }
VPolytope cube(int n) { return hanner_polytope(standard_cube(n)); }
VPolytope cross_polytope(int n) { return hanner_polytope(standard_cross(n)); }

bool contains(const HPolytope& p, const Vec& x) {
    for (const auto& a : p.normals)
        if (dot(a, x) > 1) return false;
    return true;
}

bool contains(const VPolytope& outer, const VPolytope& inner) {
    HPolytope h = hull_facets(outer);
    for (const auto& v : inner.vertices)
        if (!contains(h, v)) return false;
    return true;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial, std::uint64_t attempt) {
    std::uint64_t x = seed;
    std::uint64_t a = splitmix64(x);
    x = a ^ trial;
    std::uint64_t b = splitmix64(x);
    x = b ^ attempt;
    return splitmix64(x);
}

std::vector<Vec> random_directions(int n, std::size_t count, std::uint64_t stream) {
    constexpr long kGrid = 64;
    std::mt19937_64 rng(stream);
    std::uniform_int_distribution<long> coord(-kGrid, kGrid);
    std::vector<Vec> out;
    while (out.size() < count) {
        Vec u(static_cast<std::size_t>(n));
        long sq = 0;
        for (auto& x : u) {
            long k = coord(rng);
            sq += k * k;
            x = Rat(k, kGrid);
        }
        if (sq <= kGrid * kGrid) out.push_back(std::move(u));
    }
    return out;
}

VPolytope perturb(const HannerExpr& h, const Rat& delta, std::uint64_t stream) {
    std::size_t pairs = vertex_vectors(h).size() / 2;
    return perturb(h, delta, random_directions(h.dim(), pairs, stream));
}

VPolytope perturb(const HannerExpr& h, const Rat& delta, const std::vector<Vec>& directions) {
    if (delta < 0) throw std::invalid_argument("perturb: delta must be nonnegative");
    if (delta > Rat(1, 8)) throw std::invalid_argument("perturb: delta must be at most 1/8");
    std::vector<Vec> vs = vertex_vectors(h);
    if (directions.size() != vs.size() / 2) throw std::invalid_argument("perturb: one direction per antipodal pair");
    std::vector<Vec> out;
    std::size_t k = 0;
    // Sorted order lists each pair's lexicographically larger member second.
    std::set<Vec> done;
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) {
        if (done.count(*it)) continue;
        Vec w = *it + delta * directions[k++];
        out.push_back(w);
        out.push_back(-w);
        done.insert(-*it);
    }
    if (delta == 0) {
        dedupe(out);
        return VPolytope{h.dim(), out};
    }
    return canonical(VPolytope{h.dim(), out});
}

} // namespace hannerlab
