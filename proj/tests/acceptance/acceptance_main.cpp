// One PASS/FAIL line per acceptance criterion, with the measured quantities behind it.
// Exit status is nonzero when any criterion fails.

#include "hannerlab/flags.hpp"
#include "hannerlab/geometry.hpp"
#include "hannerlab/suites.hpp"
#include "hannerlab/witness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace hannerlab;

namespace {

int failures = 0;

void verdict(const std::string& id, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << id << "  " << detail << std::endl;
    if (!ok) ++failures;
}

void note(const std::string& line) { std::cout << "     " << line << std::endl; }

std::vector<HannerExpr> trees_up_to(int n) {
    std::vector<HannerExpr> out;
    for (int k = 1; k <= n; ++k)
        for (auto& h : hanner_types(k)) out.push_back(h);
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string first_failure(const SuiteResult& r) {
    for (const auto& l : r.lines)
        if (l.rfind("FAILED", 0) == 0) return l;
    return "";
}

// 1a, 1b, 1c over every tree with n <= 5.
void criterion_1abc() {
    auto trees = trees_up_to(5);
    SuiteOptions opt;
    opt.seed = 2024;
    opt.directions = 100;
    opt.xi_samples = 20;
    std::size_t bad_a = 0, bad_b = 0, bad_c = 0;
    std::string why_a, why_b, why_c;
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& h : trees) {
        SuiteResult a = suite_equal_volumes(h), b = suite_abc(h), c = suite_derivative(h, opt);
        if (!a.ok && bad_a++ == 0) why_a = h.to_string() + ": " + first_failure(a);
        if (!b.ok && bad_b++ == 0) why_b = h.to_string() + ": " + first_failure(b);
        if (!c.ok && bad_c++ == 0) why_c = h.to_string() + ": " + first_failure(c);
    }
    std::string count = std::to_string(trees.size()) + " trees with n <= 5";
    verdict("1a", bad_a == 0, "2^n n! flags, equal |C_F|, sum = |H| on " + count + (bad_a ? "; " + why_a : ""));
    verdict("1b", bad_b == 0, "conditions (a)(b)(c) on every face of " + count + (bad_b ? "; " + why_b : ""));
    verdict("1c", bad_c == 0,
            "<V'(C),Z> = 0 for 100 random Z, stability and flag-sum identities at 20 random xi, linear parts certified, " +
                count + (bad_c ? "; " + why_c : ""));
    note("1a-1c time " + std::to_string(seconds_since(t0)) + " s");
}

// 1d: CL for n <= 6, graph round trip over every P4-free graph with n <= 6.
void criterion_1d() {
    std::size_t cl_bad = 0, trees = 0;
    for (const auto& h : trees_up_to(6)) {
        ++trees;
        if (!check_cl_property(h).ok()) ++cl_bad;
    }
    std::size_t graphs = 0, cographs = 0, round_bad = 0, p4_missed = 0;
    for (int n = 1; n <= 6; ++n) {
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
        for (std::uint32_t bits = 0; bits < (1u << slots.size()); ++bits) {
            Graph g(n);
            for (std::size_t s = 0; s < slots.size(); ++s)
                if ((bits >> s) & 1u) g.add_edge(slots[s].first, slots[s].second);
            ++graphs;
            bool p4 = find_induced_p4(g, (1u << n) - 1).has_value();
            try {
                HannerExpr h = hanner_of_graph(g);
                if (p4) ++p4_missed;
                ++cographs;
                if (graph_of(h) != g) ++round_bad;
            } catch (const NotP4FreeError&) {
                if (!p4) ++round_bad;
            }
        }
    }
    std::ostringstream os;
    os << "CL on " << trees << " trees (" << cl_bad << " violations); round trip on " << cographs << " P4-free of "
       << graphs << " labelled graphs (" << round_bad << " mismatches, " << p4_missed << " P4 graphs accepted)";
    verdict("1d", cl_bad == 0 && round_bad == 0 && p4_missed == 0, os.str());
}

// 1e: determinant reduction and the phi identity on random instances.
void criterion_1e() {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> dim(2, 6);
    std::size_t det_bad = 0, phi_bad = 0, det_runs = 0, phi_runs = 0;
    auto random_sigma = [&](int n) {
        std::uniform_int_distribution<int> split(1, n - 1);
        int n1 = split(rng);
        Sigma s(static_cast<std::size_t>(n), 2);
        std::vector<int> idx(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        for (int i = 0; i < n1; ++i) s[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = 1;
        return s;
    };
    auto random_vec = [&](int n) {
        Vec v(static_cast<std::size_t>(n));
        for (auto& x : v) x = random_rat(rng, 9, 5);
        return v;
    };
    for (int run = 0; run < 250; ++run) {
        int n = dim(rng);
        Sigma s = random_sigma(n);
        auto [n1, n2] = sigma_counts(s);
        std::vector<Rat> xi;
        for (int k = 0; k < n; ++k) xi.push_back(random_rat(rng, 9, 7));
        std::vector<Vec> p, q;
        for (int i = 0; i < n1; ++i) p.push_back(random_vec(n));
        for (int i = 0; i < n2; ++i) q.push_back(random_vec(n));
        ++det_runs;
        if (!det_shift_check(s, xi, p, q, random_vec(n))) ++det_bad;
    }
    for (int run = 0; run < 250; ++run) {
        int n = dim(rng);
        Sigma s = random_sigma(n);
        std::vector<Rat> xi;
        for (int k = 0; k < n; ++k) xi.push_back(random_rat(rng, 9, 7));
        ++phi_runs;
        int s1 = 0, s2 = 0;
        for (int k = 1; k <= n; ++k) {
            (s[static_cast<std::size_t>(k - 1)] == 1 ? s1 : s2)++;
            if (phi(s, xi, 1, s1) + phi(s, xi, 2, s2) != xi[static_cast<std::size_t>(k - 1)]) {
                ++phi_bad;
                break;
            }
        }
    }
    std::ostringstream os;
    os << "|det M| = |det M'| on " << det_runs << " instances (" << det_bad << " failures); phi identity on "
       << phi_runs << " (sigma, xi) (" << phi_bad << " failures)";
    verdict("1e", det_bad == 0 && phi_bad == 0, os.str());
}

// 2: P(H) = 4^n/n! through hull, polar and volume, against the flag sums.
void criterion_2() {
    std::size_t bad = 0, trees = 0;
    std::string why;
    for (const auto& h : trees_up_to(4)) {
        ++trees;
        int n = h.dim();
        Rat expected = Rat(Int(1) << static_cast<unsigned>(2 * n)) / factorial(n);
        VPolytope p = hanner_polytope(h);
        HPolytope facets = hull_facets(p);
        Rat vol = volume(p, facets);
        Rat pvol = volume(VPolytope{n, facets.normals}, HPolytope{n, p.vertices});
        FaceLattice primal(h), dual(polar_expr(h));
        FlagTable tp(primal), td(dual);
        Rat flag_product = volume_function(primal.centroids(), tp) * volume_function(dual.centroids(), td);
        if (vol * pvol != expected || flag_product != expected) {
            if (bad++ == 0)
                why = h.to_string() + ": geometry " + to_string(vol * pvol) + ", flags " + to_string(flag_product);
        }
    }
    verdict("2", bad == 0,
            "geometric and flag volume products equal 4^n/n! on " + std::to_string(trees) + " trees with n <= 4" +
                (bad ? "; " + why : ""));
}

struct Run {
    std::string name;
    ExperimentReport rep;
    double secs = 0;
};

std::vector<Run> experiments() {
    std::vector<Run> runs;
    for (const char* e : {"(I1 +inf (I2 +inf I3))", "(I1 +1 (I2 +1 I3))", "((I1 +1 I2) +inf (I3 +1 I4))"}) {
        ExperimentOptions opt;
        opt.delta = Rat(1, 100);
        opt.trials = 50;
        opt.seed = 20240601;
        opt.ladder = true;
        auto t0 = std::chrono::steady_clock::now();
        Run r{e, local_min_experiment(parse_expr(e), opt), 0};
        r.secs = seconds_since(t0);
        runs.push_back(std::move(r));
    }
    return runs;
}

const TrialRow* row_at(const ExperimentReport& rep, std::size_t trial, int level) {
    for (const auto& r : rep.rows)
        if (r.trial == trial && r.level == level) return &r;
    return nullptr;
}

double log2_ratio(const Rat& a, const Rat& b) { return std::log2(to_double(a / b)); }

void criterion_3(const std::vector<Run>& runs) {
    bool ok = true;
    for (const auto& r : runs) {
        const auto& rep = r.rep;
        bool santalo = true, pairings = true;
        for (const auto& row : rep.rows) {
            santalo = santalo && row.santalo_excess >= 0;
            pairings = pairings && row.pairings_ok;
        }
        bool complete = rep.failures.empty() && rep.rows.size() == 3 * rep.trials;
        bool gap = rep.min_gap_raw && *rep.min_gap_raw >= 0 && rep.min_gap && *rep.min_gap >= 0;
        ok = ok && complete && santalo && pairings && gap;
        std::ostringstream os;
        os << r.name << ": rows " << rep.rows.size() << ", failures " << rep.failures.size() << ", rejections "
           << rep.rejections << ", min P(K)-P(H) " << (rep.min_gap_raw ? to_double(*rep.min_gap_raw) : NAN)
           << ", min P(K')-P(H) " << (rep.min_gap ? to_double(*rep.min_gap) : NAN) << ", Santalo "
           << (santalo ? "ok" : "violated") << ", pairings " << (pairings ? "exact" : "broken") << ", "
           << r.secs / static_cast<double>(rep.trials) << " s per trial";
        note(os.str());
        for (const auto& f : rep.failures) note("  trial " + std::to_string(f.trial) + ": " + f.reason);
    }
    verdict("3", ok, "gaps >= 0, V(Y)V(Y*) >= |H||H polar| and exact pairings in every trial, 3 bodies x 3 deltas x 50 trials");
}

void criterion_4(const std::vector<Run>& runs) {
    std::size_t dx_trials = 0, dx_in = 0, dx_zero = 0, gap_ratios = 0, gap_in = 0;
    for (const auto& r : runs) {
        std::size_t t_dx = 0, t_in = 0, g_n = 0, g_in = 0, t_zero = 0;
        for (std::size_t t = 0; t < r.rep.trials; ++t) {
            const TrialRow* rows[3] = {row_at(r.rep, t, 0), row_at(r.rep, t, 1), row_at(r.rep, t, 2)};
            if (!rows[0] || !rows[1] || !rows[2]) continue;
            if (rows[0]->dx == 0 && rows[1]->dx == 0 && rows[2]->dx == 0) {
                ++t_zero;
                continue;
            }
            ++t_dx;
            bool in = true;
            for (int l = 0; l < 2; ++l) {
                if (rows[l]->dx == 0 || rows[l + 1]->dx == 0) {
                    in = false;
                    continue;
                }
                double v = log2_ratio(rows[l]->dx, rows[l + 1]->dx);
                in = in && v >= 1.5 && v <= 2.5;
            }
            if (in) ++t_in;
            for (int l = 0; l < 2; ++l) {
                if (rows[l]->dh2_raw == 0 || rows[l]->gap_raw <= 0 || rows[l + 1]->gap_raw <= 0) continue;
                ++g_n;
                double v = log2_ratio(rows[l]->gap_raw, rows[l + 1]->gap_raw);
                if (v >= 0.5 && v <= 1.5) ++g_in;
            }
        }
        std::ostringstream os;
        os << r.name << ": dx ratios in [1.5, 2.5] for " << t_in << "/" << t_dx << " trials (" << t_zero
           << " with dx = 0 at every level); gap ratios in [0.5, 1.5] for " << g_in << "/" << g_n
           << " positive pairs";
        note(os.str());
        dx_trials += t_dx;
        dx_in += t_in;
        dx_zero += t_zero;
        gap_ratios += g_n;
        gap_in += g_in;
    }
    bool ok = dx_trials > 0 && 5 * dx_in >= 4 * dx_trials && gap_in == gap_ratios;
    std::ostringstream os;
    os << "dx quadratic for " << dx_in << "/" << dx_trials << " trials (need 80%), gap linear for " << gap_in << "/"
       << gap_ratios << " positive consecutive pairs";
    verdict("4", ok, os.str());
}

void criterion_5(const std::vector<Run>& runs) {
    std::size_t rows = 0, inclusions = 0, within = 0;
    for (const auto& r : runs) {
        std::size_t rr = 0, rw = 0;
        double worst = 0;
        for (const auto& row : r.rep.rows) {
            ++rr;
            if (row.normalized_ok) ++inclusions;
            if (row.dh2_norm <= 9 * row.dh2_raw) ++rw;
            if (row.dh2_raw > 0) worst = std::max(worst, to_double(row.dh2_norm / row.dh2_raw));
        }
        note(r.name + ": d_H(K',H)^2 <= 9 d_H(K,H)^2 in " + std::to_string(rw) + "/" + std::to_string(rr) +
             " trials, worst ratio " + std::to_string(worst));
        rows += rr;
        within += rw;
    }
    bool ok = rows > 0 && inclusions == rows && 20 * within >= 19 * rows;
    std::ostringstream os;
    os << "B_1 in K' in B_inf in " << inclusions << "/" << rows << " trials; distance bound in " << within << "/"
       << rows << " (need 95%)";
    verdict("5", ok, os.str());
}

// 6: each fault must trip at least one of the suites behind 1a, 1b, 1c on every tree it touches.
void criterion_6() {
    SuiteOptions opt;
    opt.seed = 5;
    opt.directions = 20;
    opt.xi_samples = 5;
    struct Case {
        Fault fault;
        const char* name;
        std::vector<const char*> trees;
    };
    // The weight fault needs an l1 node whose summands differ in size; symmetric splits hide it.
    std::vector<Case> cases = {
        {Fault::PerturbedCentroid, "perturbed centroid",
         {"(I1 +inf I2)", "(I1 +1 (I2 +inf I3))", "((I1 +1 I2) +inf (I3 +1 I4))"}},
        {Fault::WrongL1Weight, "wrong l1 weight", {"((I1 +inf I2) +1 I3)", "(I1 +1 ((I2 +inf I3) +1 I4))"}},
    };
    bool ok = true;
    std::ostringstream os;
    for (const auto& c : cases) {
        for (const char* e : c.trees) {
            HannerExpr h = parse_expr(e);
            SuiteOptions o = opt;
            o.fault = c.fault;
            std::string tripped;
            if (!suite_equal_volumes(h, c.fault).ok) tripped += " 1a";
            if (!suite_abc(h, c.fault).ok) tripped += " 1b";
            if (!suite_derivative(h, o).ok) tripped += " 1c";
            note(std::string(c.name) + " on " + e + ": fails" + (tripped.empty() ? " nothing" : tripped));
            ok = ok && !tripped.empty();
        }
        // The unfaulted control passes on the same trees.
        for (const char* e : c.trees) {
            HannerExpr h = parse_expr(e);
            ok = ok && suite_equal_volumes(h).ok && suite_abc(h).ok && suite_derivative(h, opt).ok;
        }
    }
    verdict("6", ok, "injected faults are detected on every fixture and the clean runs pass");
}

} // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion_1abc();
    criterion_1d();
    criterion_1e();
    criterion_2();
    std::vector<Run> runs = experiments();
    criterion_3(runs);
    criterion_4(runs);
    criterion_5(runs);
    criterion_6();
    note("total " + std::to_string(seconds_since(t0)) + " s");
    return failures == 0 ? 0 : 1;
}
