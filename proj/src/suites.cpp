#include "hannerlab/suites.hpp"

#include <sstream>
#include <stdexcept>

namespace hannerlab {

namespace {

std::string verdict(bool ok) { return ok ? "ok" : "FAILED"; }

void record(SuiteResult& r, bool ok, const std::string& line) {
    r.ok = r.ok && ok;
    r.lines.push_back(verdict(ok) + "  " + line);
}

} // namespace

Rat random_rat(std::mt19937_64& rng, long bound, long den) {
    std::uniform_int_distribution<long> num(-bound, bound), d(1, den);
    return rat(num(rng), d(rng));
}

PointAssignment random_tangent_assignment(const FaceLattice& lattice, std::mt19937_64& rng) {
    PointAssignment z;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        Vec v(static_cast<std::size_t>(lattice.n()));
        for (const auto& d : lattice.frame(i).a.dirs()) v += random_rat(rng, 8, 8) * d;
        z.push_back(std::move(v));
    }
    return z;
}

SuiteResult suite_abc(const HannerExpr& h, Fault fault) {
    SuiteResult r{"abc", true, {}};
    FaceLattice primal(h, fault), dual(polar_expr(h), fault);
    AbcReport rep = verify_abc(primal, dual);
    std::ostringstream os;
    os << "conditions (a)(b)(c) on " << rep.faces_checked << " faces, " << rep.failures.size() << " failures";
    record(r, rep.ok(), os.str());
    for (std::size_t i = 0; i < rep.failures.size() && i < 5; ++i) {
        const auto& f = rep.failures[i];
        r.lines.push_back(std::string("        (") + f.condition + ") at " + face_label(h, f.face) + ": " + f.detail);
    }
    return r;
}

SuiteResult suite_equal_volumes(const HannerExpr& h, Fault fault) {
    SuiteResult r{"equal-volumes", true, {}};
    const int n = h.dim();
    FaceLattice lat(h, fault);
    FlagTable t(lat);
    Rat expected_count = factorial(n) * Rat(Int(1) << static_cast<unsigned>(n));
    record(r, Rat(static_cast<long>(t.size())) == expected_count,
           "flag count " + std::to_string(t.size()) + " = 2^n n! = " + to_string(expected_count));
    EqualVolumeReport ev = equal_volumes_check(t, lat.centroids());
    record(r, ev.odd_flags.empty(),
           "every |C_F| = " + to_string(ev.expected_each) + ", " + std::to_string(ev.odd_flags.size()) + " odd flags");
    if (!ev.odd_flags.empty()) {
        std::string chain;
        for (int k = 0; k < n; ++k) chain += (k ? " < " : "") + face_label(h, lat.face(t.at(ev.odd_flags[0], k)));
        r.lines.push_back("        first odd flag: " + chain);
    }
    record(r, ev.total == ev.expected, "sum |C_F| = " + to_string(ev.total) + " against |H| = " + to_string(ev.expected));
    if (fault == Fault::None) {
        ProductFormulaReport pf = product_formula_check(h);
        record(r, pf.ok(), "product formula on " + std::to_string(pf.flags_checked) + " flags, " +
                               std::to_string(pf.violations) + " violations");
    }
    return r;
}

SuiteResult suite_derivative(const HannerExpr& h, const SuiteOptions& opt) {
    SuiteResult r{"derivative", true, {}};
    const int n = h.dim();
    FaceLattice lat(h, opt.fault);
    FlagTable t(lat);
    PointAssignment c = lat.centroids();
    std::mt19937_64 rng(opt.seed);

    PointAssignment g;
    try {
        g = volume_gradient(c, t);
    } catch (const std::domain_error& e) {
        record(r, false, std::string("gradient: ") + e.what());
        return r;
    }
    std::size_t nonzero = 0, literal_checked = 0, literal_bad = 0;
    for (std::size_t s = 0; s < opt.directions; ++s) {
        PointAssignment z = random_tangent_assignment(lat, rng);
        Rat p = pairing(g, z);
        if (p != 0) ++nonzero;
        if (n <= opt.literal_max_dim && s < 5) {
            ++literal_checked;
            if (directional_derivative(c, z, t) != p) ++literal_bad;
        }
    }
    record(r, nonzero == 0,
           "<V'(C), Z> = 0 for " + std::to_string(opt.directions) + " random Z, " + std::to_string(nonzero) + " nonzero");
    if (literal_checked > 0)
        record(r, literal_bad == 0,
               "literal derivative matches the gradient on " + std::to_string(literal_checked) + " directions");

    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < lat.size(); ++i)
        if (lat.frame(i).a.dim() > 0) eligible.push_back(i);
    std::uniform_int_distribution<long> small(-10, 10), coef(-3, 3);
    std::size_t stab_bad = 0, sum_bad = 0, sum_checked = 0;
    for (std::size_t s = 0; s < opt.xi_samples; ++s) {
        std::vector<Rat> xi;
        for (int k = 0; k < n; ++k) xi.push_back(rat(small(rng), 10000));
        Vec z(static_cast<std::size_t>(n));
        for (auto& x : z) x = coef(rng);
        if (!stability_check(t, xi, z).ok()) ++stab_bad;
        if (eligible.empty()) continue;
        std::size_t gi = eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng)];
        Vec zg(static_cast<std::size_t>(n));
        for (const auto& d : lat.frame(gi).a.dirs()) zg += Rat(coef(rng)) * d;
        ++sum_checked;
        if (!flag_sum_check(t, gi, xi, zg).ok()) ++sum_bad;
    }
    record(r, stab_bad == 0,
           "V(C + W) = V(C) at " + std::to_string(opt.xi_samples) + " random xi, " + std::to_string(stab_bad) + " failures");
    if (sum_checked > 0)
        record(r, sum_bad == 0,
               "flag sums through G unchanged at " + std::to_string(sum_checked) + " random (G, xi), " +
                   std::to_string(sum_bad) + " failures");

    // The frozen-sign sums are affine in xi; vanishing coefficients certify every small xi at once.
    std::size_t cert_bad = 0, cert_checked = 0;
    for (int j = 0; j < n; ++j) {
        Vec z = Vec::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(j));
        ++cert_checked;
        for (const auto& x : frozen_linear_part(t, std::nullopt, z))
            if (x != 0) {
                ++cert_bad;
                break;
            }
    }
    for (std::size_t gi : eligible) {
        for (const auto& d : lat.frame(gi).a.dirs()) {
            ++cert_checked;
            for (const auto& x : frozen_linear_part(t, gi, d))
                if (x != 0) {
                    ++cert_bad;
                    break;
                }
        }
    }
    record(r, cert_bad == 0,
           "linear parts vanish for " + std::to_string(cert_checked) + " (G, z) pairs, " + std::to_string(cert_bad) +
               " nonzero");
    return r;
}

SuiteResult suite_cl(const HannerExpr& h) {
    SuiteResult r{"cl", true, {}};
    ClReport cl = check_cl_property(h);
    record(r, cl.ok(), "|<v, v*>| = 1 on " + std::to_string(cl.pairs_checked) + " vertex pairs, " +
                           std::to_string(cl.violations.size()) + " violations");
    if (!cl.ok())
        r.lines.push_back("        first violation: v = " + to_string(cl.violations[0].first) +
                          ", v* = " + to_string(cl.violations[0].second));
    Graph g = graph_of(h);
    bool round = graph_of(hanner_of_graph(g)) == g;
    record(r, round, "graph round trip through the cograph decomposition");
    return r;
}

std::vector<SuiteResult> run_suites(const HannerExpr& h, const std::string& name, const SuiteOptions& opt) {
    std::vector<SuiteResult> out;
    bool all = name == "all";
    if (!all && name != "abc" && name != "equal-volumes" && name != "derivative" && name != "cl")
        throw std::invalid_argument("unknown suite: " + name);
    if (all || name == "abc") out.push_back(suite_abc(h, opt.fault));
    if (all || name == "equal-volumes") out.push_back(suite_equal_volumes(h, opt.fault));
    if (all || name == "derivative") out.push_back(suite_derivative(h, opt));
    if (all || name == "cl") out.push_back(suite_cl(h));
    return out;
}

} // namespace hannerlab
