#include "hannerlab/witness.hpp"

#include "hannerlab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace hannerlab {

PipelineContext::PipelineContext(const HannerExpr& h)
    : h_(h),
      primal_(h),
      dual_(polar_expr(h)),
      primal_flags_(primal_),
      dual_flags_(dual_),
      vol_h_(hanner_volume(h)),
      vol_polar_(hanner_volume(polar_expr(h))),
      poly_(hanner_polytope(h)) {
    const int n = h.dim();
    for (std::size_t i = 0; i < primal_.size(); ++i) dual_index_.push_back(dual_.index_of(dual_face(primal_.face(i), n)));
    primal_signs_ = flag_signs(primal_.centroids(), primal_flags_);
    dual_signs_ = flag_signs(dual_.centroids(), dual_flags_);
    for (int j = 0; j < n; ++j) {
        Vec e = Vec::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(j));
        std::optional<std::size_t> found;
        for (std::size_t i = 0; i < primal_.size() && !found; ++i)
            if (primal_.centroid(i) == e) found = i;
        if (!found) throw std::logic_error("no face of H has centroid e_j");
        facet_frame_.push_back(*found);
    }
}

Tangency tangency(const HPolytope& k, const AffineFrame& frame) {
    const auto& dirs = frame.a.dirs();
    const Vec& c = frame.c;
    LinProg lp;
    lp.dim = 1 + dirs.size();
    lp.objective = Vec::unit(lp.dim, 0);
    std::vector<Constraint> region;
    for (const auto& a : k.normals) {
        Vec row(lp.dim);
        row[0] = dot(a, c);
        for (std::size_t j = 0; j < dirs.size(); ++j) row[j + 1] = dot(a, dirs[j]);
        lp.constraints.push_back({std::move(row), Rat(1)});
        region.push_back({a, Rat(1)});
    }
    LpOutcome out = maximize(lp);
    if (out.status == LpStatus::Unbounded) throw std::runtime_error("tangency: t A_F stays inside K for every t");
    if (out.status == LpStatus::Infeasible) throw std::logic_error("tangency: the origin is not inside K");
    Tangency r;
    r.t = out.value;
    r.y = r.t * c;
    r.x = nearest_point(c, region, AffSub(r.y, dirs));
    r.normal = Vec(c.dim());
    for (std::size_t i = 0; i < k.normals.size(); ++i)
        if (out.dual[i] != 0) r.normal += out.dual[i] * k.normals[i];
    return r;
}

namespace {

void check_signs(const PointAssignment& z, const FlagTable& t, const std::vector<int>& base, const char* which) {
    for (std::size_t i = 0; i < t.size(); ++i)
        if (sign(det(flag_matrix(z, t, i))) != base[i])
            throw PerturbationTooLarge(std::string("flag determinant of ") + which + " changed sign at flag " +
                                       std::to_string(i));
}

std::vector<int> coords_of(std::uint32_t support) {
    std::vector<int> cs;
    for (int j = 0; j < 32; ++j)
        if ((support >> j) & 1u) cs.push_back(j);
    return cs;
}

} // namespace

Witness witness_all(const PipelineContext& ctx, const VPolytope& k) { return witness_all(ctx, k, hull_facets(k)); }

Witness witness_all(const PipelineContext& ctx, const VPolytope& k, const HPolytope& facets) {
    Witness w;
    HPolytope polar_facets{k.n, k.vertices};
    for (std::size_t i = 0; i < ctx.primal().size(); ++i) {
        Tangency tg = tangency(facets, ctx.primal().frame(i));
        w.t.push_back(tg.t);
        w.x.push_back(std::move(tg.x));
        w.y.push_back(std::move(tg.y));
    }
    for (std::size_t i = 0; i < ctx.dual().size(); ++i) {
        Tangency tg = tangency(polar_facets, ctx.dual().frame(i));
        w.t_star.push_back(tg.t);
        w.x_star.push_back(std::move(tg.x));
        w.y_star.push_back(std::move(tg.y));
    }
    check_signs(w.x, ctx.primal_flags(), ctx.primal_signs(), "X");
    check_signs(w.x_star, ctx.dual_flags(), ctx.dual_signs(), "X*");
    return w;
}

PairingReport pairing_check(const PipelineContext& ctx, const Witness& w) {
    PairingReport r;
    for (std::size_t i = 0; i < ctx.primal().size(); ++i) {
        std::size_t j = ctx.dual_index(i);
        ++r.faces;
        if (dot(w.x[i], w.x_star[j]) != 1) ++r.x_failures;
        if (dot(w.y[i], w.y_star[j]) != 1) ++r.y_failures;
        if (w.t[i] * w.t_star[j] != 1) ++r.t_failures;
    }
    return r;
}

SantaloCheck santalo_lower_check(const PipelineContext& ctx, const Witness& w) {
    SantaloCheck s;
    s.lhs = volume_function(w.y, ctx.primal_flags()) * volume_function(w.y_star, ctx.dual_flags());
    s.rhs = ctx.volume_h() * ctx.volume_polar();
    s.ok = s.lhs >= s.rhs;
    return s;
}

VolumeGaps vxvy_gap(const PipelineContext& ctx, const Witness& w) {
    VolumeGaps g;
    g.vx = volume_function(w.x, ctx.primal_flags());
    g.vy = volume_function(w.y, ctx.primal_flags());
    g.vx_star = volume_function(w.x_star, ctx.dual_flags());
    g.vy_star = volume_function(w.y_star, ctx.dual_flags());
    g.dx = abs_rat(g.vx - g.vy);
    g.dx_star = abs_rat(g.vx_star - g.vy_star);
    return g;
}

Normalization normalize_position(const PipelineContext& ctx, const VPolytope& k) {
    const int n = ctx.n();
    const std::size_t nn = static_cast<std::size_t>(n);
    HPolytope facets = hull_facets(k);
    Graph g = graph_of(ctx.expr());
    std::vector<Vec> x(nn), b(nn);
    for (int j = 0; j < n; ++j) {
        Tangency tg = tangency(facets, ctx.primal().frame(ctx.facet_frame(j)));
        x[static_cast<std::size_t>(j)] = tg.x;
        b[static_cast<std::size_t>(j)] = tg.normal;
    }
    Normalization res;
    res.t1.assign(nn, Vec(nn));
    for (int j = 0; j < n; ++j) {
        // theta_j is orthogonal to span({e_j} u {e_i : i !~ j}) n b_j^perp + span{x_i : i ~ j}.
        std::vector<Vec> w{b[static_cast<std::size_t>(j)]};
        std::vector<Vec> xs;
        for (int i = 0; i < n; ++i)
            if (i != j && g.adjacent(i, j)) {
                w.push_back(Vec::unit(nn, static_cast<std::size_t>(i)));
                xs.push_back(x[static_cast<std::size_t>(i)]);
            }
        std::vector<Vec> u = orth_complement(w, nn);
        u.insert(u.end(), xs.begin(), xs.end());
        std::vector<Vec> perp = orth_complement(u, nn);
        if (perp.empty()) throw NormalizationError("normalize_position: no direction orthogonal to the tangent data");
        // Orthogonal projection of e_j onto span(perp); keeps <e_j, theta_j> >= 0.
        Mat gram;
        Vec rhs(perp.size());
        for (std::size_t p = 0; p < perp.size(); ++p) {
            Vec row(perp.size());
            for (std::size_t q = 0; q < perp.size(); ++q) row[q] = dot(perp[p], perp[q]);
            gram.push_back(std::move(row));
            rhs[p] = perp[p][static_cast<std::size_t>(j)];
        }
        SolveResult s = solve(gram, rhs);
        Vec theta(nn);
        for (std::size_t p = 0; p < perp.size(); ++p) theta += s.particular[p] * perp[p];
        Rat scale = dot(x[static_cast<std::size_t>(j)], theta);
        if (theta.is_zero() || scale <= 0)
            throw NormalizationError("normalize_position: degenerate direction theta_" + std::to_string(j + 1));
        res.t1[static_cast<std::size_t>(j)] = (1 / scale) * theta;
    }
    auto t1inv = inverse(res.t1);
    if (!t1inv) throw NormalizationError("normalize_position: T1 is singular");
    // Facets of T1 K are T1^{-T} a.
    Mat t1inv_t = transpose(*t1inv, nn);
    res.r.assign(nn, Rat(0));
    for (std::size_t j = 0; j < nn; ++j) {
        Rat best = 0;
        for (const auto& a : facets.normals) best = std::max(best, mat_vec(t1inv_t, a)[j]);
        if (best <= 0) throw NormalizationError("normalize_position: T1 K is unbounded along e_j");
        res.r[j] = 1 / best;
    }
    Mat t2 = identity(nn);
    for (std::size_t j = 0; j < nn; ++j) t2[j][j] = 1 / res.r[j];
    res.t = mat_mul(t2, res.t1);
    Mat tinv_t = transpose(*inverse(res.t), nn);
    HPolytope hk{n, {}};
    for (const auto& a : facets.normals) hk.normals.push_back(mat_vec(tinv_t, a));
    for (std::size_t j = 0; j < nn; ++j) {
        hk.normals.push_back(Vec::unit(nn, j));
        hk.normals.push_back(-Vec::unit(nn, j));
    }
    res.k_prime = vertex_form(hk);
    HPolytope kf = hull_facets(res.k_prime);
    res.cross_inside = true;
    for (std::size_t j = 0; j < nn; ++j) {
        Vec e = Vec::unit(nn, j);
        if (!contains(kf, e) || !contains(kf, -e)) res.cross_inside = false;
    }
    res.inside_cube = true;
    for (const auto& v : res.k_prime.vertices)
        for (const auto& c : v)
            if (abs_rat(c) > 1) res.inside_cube = false;
    if (!res.cross_inside) throw NormalizationError("normalize_position: B_1 is not contained in K'");
    if (!res.inside_cube) throw NormalizationError("normalize_position: K' is not contained in B_inf");
    return res;
}

Diagnostics projection_section_diagnostics(const PipelineContext& ctx, const VPolytope& k) {
    Diagnostics d;
    const HannerExpr& h = ctx.expr();
    std::set<std::uint32_t> proj, sect;
    for (const auto& v : vertices(h)) proj.insert(v.support);
    for (const auto& v : polar_vertices(h)) sect.insert(v.support);
    HPolytope facets = hull_facets(k);
    for (std::uint32_t s : proj) {
        auto cs = coords_of(s);
        Rat v = hausdorff2(project(k, cs), cube(static_cast<int>(cs.size())));
        d.entries.push_back({s, true, v});
    }
    for (std::uint32_t s : sect) {
        auto cs = coords_of(s);
        Rat v = hausdorff2(vertex_form(section(facets, cs)), cross_polytope(static_cast<int>(cs.size())));
        d.entries.push_back({s, false, v});
    }
    for (const auto& e : d.entries) d.max_distance2 = std::max(d.max_distance2, e.distance2);
    d.hausdorff2_to_h = hausdorff2(k, ctx.polytope());
    if (d.hausdorff2_to_h > 0) d.ratio = d.max_distance2 / d.hausdorff2_to_h;
    return d;
}

namespace {

Rat product_of(const VPolytope& k, const HPolytope& facets) {
    return volume(k, facets) * volume(VPolytope{k.n, facets.normals}, HPolytope{k.n, k.vertices});
}

TrialRow run_level(const PipelineContext& ctx, const Rat& delta, const std::vector<Vec>& dirs) {
    TrialRow row;
    row.delta = delta;
    const Rat p_h = ctx.volume_h() * ctx.volume_polar();
    VPolytope k = perturb(ctx.expr(), delta, dirs);
    HPolytope kf = hull_facets(k);
    row.dh2_raw = hausdorff2(k, ctx.polytope());
    row.p_raw = product_of(k, kf);
    row.gap_raw = row.p_raw - p_h;
    Normalization nm = normalize_position(ctx, k);
    row.normalized_ok = nm.cross_inside && nm.inside_cube;
    HPolytope nf = hull_facets(nm.k_prime);
    row.dh2_norm = hausdorff2(nm.k_prime, ctx.polytope());
    row.p_norm = product_of(nm.k_prime, nf);
    row.gap = row.p_norm - p_h;
    Witness w = witness_all(ctx, nm.k_prime, nf);
    row.pairings_ok = pairing_check(ctx, w).ok();
    VolumeGaps gaps = vxvy_gap(ctx, w);
    row.vx = gaps.vx;
    row.vy = gaps.vy;
    row.vx_star = gaps.vx_star;
    row.vy_star = gaps.vy_star;
    row.dx = gaps.dx;
    row.dx_star = gaps.dx_star;
    row.santalo_excess = gaps.vy * gaps.vy_star - p_h;
    return row;
}

struct TrialResult {
    std::vector<TrialRow> rows;
    std::size_t rejections = 0;
    std::optional<std::string> failure;
};

TrialResult run_trial(const PipelineContext& ctx, const ExperimentOptions& opt, std::size_t trial, int levels) {
    TrialResult res;
    const std::size_t pairs = ctx.polytope().vertices.size() / 2;
    for (std::size_t attempt = 0; attempt < opt.max_attempts; ++attempt) {
        auto dirs = random_directions(ctx.n(), pairs, derive_seed(opt.seed, trial, attempt));
        try {
            std::vector<TrialRow> rows;
            Rat d = opt.delta;
            for (int l = 0; l < levels; ++l, d /= 2) {
                TrialRow r = run_level(ctx, d, dirs);
                r.trial = trial;
                r.level = l;
                rows.push_back(std::move(r));
            }
            for (auto& r : rows) r.rejections = res.rejections;
            res.rows = std::move(rows);
            return res;
        } catch (const PerturbationTooLarge&) {
            ++res.rejections;
        } catch (const NormalizationError&) {
            ++res.rejections;
        } catch (const std::exception& e) {
            res.failure = e.what();
            return res;
        }
    }
    res.failure = "no admissible perturbation within " + std::to_string(opt.max_attempts) + " attempts";
    return res;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

std::vector<double> exponents(const ExperimentReport& r, Rat TrialRow::*field) {
    std::vector<double> out;
    for (int l = 0; l + 1 < r.levels; ++l) {
        std::vector<double> ratios;
        for (const auto& a : r.rows) {
            if (a.level != l || !(a.*field > 0)) continue;
            for (const auto& b : r.rows)
                if (b.trial == a.trial && b.level == l + 1 && b.*field > 0)
                    ratios.push_back(std::log2(to_double(a.*field / b.*field)));
        }
        out.push_back(ratios.empty() ? std::nan("") : median(ratios));
    }
    return out;
}

std::string decimal(const Rat& x) {
    std::ostringstream os;
    os << std::setprecision(12) << to_double(x);
    return os.str();
}

std::string fixed(double x) {
    if (std::isnan(x)) return "nan";
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << x;
    return os.str();
}

} // namespace

ExperimentReport local_min_experiment(const HannerExpr& h, const ExperimentOptions& opt) {
    if (opt.delta < 0 || opt.delta > Rat(1, 8)) throw std::invalid_argument("experiment: delta must lie in [0, 1/8]");
    if (opt.trials < 1) throw std::invalid_argument("experiment: at least one trial");
    PipelineContext ctx(h);
    ExperimentReport rep;
    rep.expr = h.to_string();
    rep.delta = opt.delta;
    rep.trials = opt.trials;
    rep.seed = opt.seed;
    rep.levels = opt.ladder ? 3 : 1;
    rep.p_h = ctx.volume_h() * ctx.volume_polar();
    std::vector<TrialResult> results(opt.trials);
    unsigned workers = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(opt.trials)));
    auto work = [&](unsigned id) {
        for (std::size_t t = id; t < opt.trials; t += workers) results[t] = run_trial(ctx, opt, t, rep.levels);
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
        for (auto& th : pool) th.join();
    }
    for (std::size_t t = 0; t < opt.trials; ++t) {
        rep.rejections += results[t].rejections;
        if (results[t].failure) rep.failures.push_back({t, *results[t].failure});
        for (auto& r : results[t].rows) rep.rows.push_back(std::move(r));
    }
    for (const auto& r : rep.rows) {
        if (!rep.min_gap || r.gap < *rep.min_gap) rep.min_gap = r.gap;
        if (!rep.min_gap_raw || r.gap_raw < *rep.min_gap_raw) rep.min_gap_raw = r.gap_raw;
    }
    rep.dx_exponents = exponents(rep, &TrialRow::dx);
    rep.gap_exponents = exponents(rep, &TrialRow::gap);
    return rep;
}

std::string report_csv(const ExperimentReport& r) {
    std::ostringstream os;
    const char* cols[] = {"dh2_raw", "p_raw", "p_h", "gap_raw", "dh2_norm", "p_norm", "gap", "vx", "vy",
                          "vx_star", "vy_star", "dx", "dx_star", "santalo_excess"};
    os << "trial,level,delta,delta_decimal,rejections";
    for (const char* c : cols) os << ',' << c << ',' << c << "_decimal";
    os << ",pairings_ok,normalized_ok\n";
    for (const auto& row : r.rows) {
        os << row.trial << ',' << row.level << ',' << to_string(row.delta) << ',' << decimal(row.delta) << ','
           << row.rejections;
        const Rat* vals[] = {&row.dh2_raw, &row.p_raw, &r.p_h, &row.gap_raw, &row.dh2_norm, &row.p_norm, &row.gap, &row.vx,
                             &row.vy, &row.vx_star, &row.vy_star, &row.dx, &row.dx_star, &row.santalo_excess};
        for (const Rat* v : vals) os << ',' << to_string(*v) << ',' << decimal(*v);
        os << ',' << (row.pairings_ok ? "true" : "false") << ',' << (row.normalized_ok ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string report_json(const ExperimentReport& r) {
    using nlohmann::ordered_json;
    auto exact = [](const Rat& x) { return ordered_json{{"exact", to_string(x)}, {"decimal", to_double(x)}}; };
    auto exps = [](const std::vector<double>& v) {
        ordered_json a = ordered_json::array();
        for (double x : v) a.push_back(std::isnan(x) ? ordered_json(nullptr) : ordered_json(x));
        return a;
    };
    ordered_json j;
    j["expr"] = r.expr;
    j["delta"] = exact(r.delta);
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["levels"] = r.levels;
    j["p_h"] = exact(r.p_h);
    j["rejections"] = r.rejections;
    j["min_gap"] = r.min_gap ? exact(*r.min_gap) : ordered_json(nullptr);
    j["min_gap_raw"] = r.min_gap_raw ? exact(*r.min_gap_raw) : ordered_json(nullptr);
    j["dx_log2_ratios"] = exps(r.dx_exponents);
    j["gap_log2_ratios"] = exps(r.gap_exponents);
    ordered_json fails = ordered_json::array();
    for (const auto& f : r.failures) fails.push_back({{"trial", f.trial}, {"reason", f.reason}});
    j["failures"] = fails;
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) {
        ordered_json o;
        o["trial"] = row.trial;
        o["level"] = row.level;
        o["delta"] = exact(row.delta);
        o["rejections"] = row.rejections;
        o["dh2_raw"] = exact(row.dh2_raw);
        o["p_raw"] = exact(row.p_raw);
        o["gap_raw"] = exact(row.gap_raw);
        o["dh2_norm"] = exact(row.dh2_norm);
        o["p_norm"] = exact(row.p_norm);
        o["gap"] = exact(row.gap);
        o["vx"] = exact(row.vx);
        o["vy"] = exact(row.vy);
        o["vx_star"] = exact(row.vx_star);
        o["vy_star"] = exact(row.vy_star);
        o["dx"] = exact(row.dx);
        o["dx_star"] = exact(row.dx_star);
        o["santalo_excess"] = exact(row.santalo_excess);
        o["pairings_ok"] = row.pairings_ok;
        o["normalized_ok"] = row.normalized_ok;
        rows.push_back(std::move(o));
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

std::string report_summary(const ExperimentReport& r) {
    std::ostringstream os;
    bool santalo = true, pairings = true, normalized = true;
    for (const auto& row : r.rows) {
        santalo = santalo && row.santalo_excess >= 0;
        pairings = pairings && row.pairings_ok;
        normalized = normalized && row.normalized_ok;
    }
    os << "expr: " << r.expr << "\n";
    os << "delta: " << to_string(r.delta) << "  trials: " << r.trials << "  seed: " << r.seed
       << "  levels: " << r.levels << "\n";
    os << "rows: " << r.rows.size() << "  failures: " << r.failures.size() << "  rejections: " << r.rejections << "\n";
    if (r.min_gap) {
        // Long exact values stay in the CSV and JSON output.
        std::string exact = to_string(*r.min_gap);
        os << "min_gap: " << (exact.size() <= 40 ? exact + " (" + decimal(*r.min_gap) + ")" : decimal(*r.min_gap))
           << "\n";
    }
    os << "min_gap >= 0: " << (r.min_gap && *r.min_gap >= 0 ? "true" : "false") << "\n";
    os << "min_gap_raw >= 0: " << (r.min_gap_raw && *r.min_gap_raw >= 0 ? "true" : "false") << "\n";
    os << "santalo lower bound: " << (santalo ? "true" : "false") << "\n";
    os << "pairings exact: " << (pairings ? "true" : "false") << "\n";
    os << "normalization: " << (normalized ? "true" : "false") << "\n";
    if (r.levels > 1) {
        os << "level  delta  median_log2_ratio_dx  median_log2_ratio_gap\n";
        Rat d = r.delta;
        for (int l = 0; l < r.levels; ++l, d /= 2) {
            os << l << "  " << to_string(d);
            if (l + 1 < r.levels)
                os << "  " << fixed(r.dx_exponents[static_cast<std::size_t>(l)]) << "  "
                   << fixed(r.gap_exponents[static_cast<std::size_t>(l)]);
            else
                os << "  -  -";
            os << "\n";
        }
    }
    for (const auto& f : r.failures) os << "trial " << f.trial << " failed: " << f.reason << "\n";
    return os.str();
}

} // namespace hannerlab
