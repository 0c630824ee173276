#include "hannerlab/witness.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace hannerlab;
using namespace hannerlab::testing;

namespace {

VPolytope scaled(const Rat& s, VPolytope p) {
    for (auto& v : p.vertices) v = s * v;
    return p;
}

const char* kSmallTrees[] = {"(I1 +inf I2)", "(I1 +1 I2)", "(I1 +1 (I2 +inf I3))", "((I1 +1 I2) +inf I3)"};

} // namespace

TEST(Witness, UnperturbedBodyGivesCentroids) {
    for (const char* e : kSmallTrees) {
        PipelineContext ctx(parse_expr(e));
        Witness w = witness_all(ctx, ctx.polytope());
        for (std::size_t i = 0; i < ctx.primal().size(); ++i) {
            EXPECT_EQ(w.t[i], 1);
            EXPECT_EQ(w.x[i], ctx.primal().centroid(i));
            EXPECT_EQ(w.y[i], ctx.primal().centroid(i));
        }
        EXPECT_TRUE(pairing_check(ctx, w).ok());
        SantaloCheck s = santalo_lower_check(ctx, w);
        EXPECT_TRUE(s.ok);
        EXPECT_EQ(s.lhs, s.rhs);
        VolumeGaps g = vxvy_gap(ctx, w);
        EXPECT_EQ(g.dx, 0);
        EXPECT_EQ(g.dx_star, 0);
        EXPECT_EQ(g.vx, ctx.volume_h());
        EXPECT_EQ(g.vy_star, ctx.volume_polar());
    }
}

TEST(Witness, ScaledBodyScalesTangencyLevels) {
    PipelineContext ctx(parse_expr("(I1 +1 (I2 +inf I3))"));
    Rat s = rat(9, 10);
    Witness w = witness_all(ctx, scaled(s, ctx.polytope()));
    for (std::size_t i = 0; i < ctx.primal().size(); ++i) {
        EXPECT_EQ(w.t[i], s);
        EXPECT_EQ(w.x[i], s * ctx.primal().centroid(i));
    }
    for (std::size_t i = 0; i < ctx.dual().size(); ++i) EXPECT_EQ(w.t_star[i], 1 / s);
    EXPECT_TRUE(pairing_check(ctx, w).ok());
}

TEST(Tangency, NormalCertifiesMaximalLevel) {
    for (const char* e : kSmallTrees) {
        HannerExpr h = parse_expr(e);
        PipelineContext ctx(h);
        for (std::uint64_t s = 0; s < 3; ++s) {
            VPolytope k = perturb(h, rat(1, 10), derive_seed(11, s, 0));
            HPolytope facets = hull_facets(k);
            for (std::size_t i = 0; i < ctx.primal().size(); ++i) {
                const AffineFrame& fr = ctx.primal().frame(i);
                Tangency tg = tangency(facets, fr);
                ASSERT_GT(tg.t, 0);
                EXPECT_TRUE(contains(facets, tg.x));
                EXPECT_TRUE(fr.a.contains(1 / tg.t * tg.x));
                EXPECT_EQ(tg.y, tg.t * fr.c);
                // <b, .> = 1 on A_F and <= t on K, so s A_F misses K for every s > t.
                EXPECT_EQ(dot(tg.normal, fr.a.point()), 1);
                for (const auto& d : fr.a.dirs()) EXPECT_EQ(dot(tg.normal, d), 0);
                EXPECT_EQ(dot(tg.normal, tg.x), tg.t);
                for (const auto& v : k.vertices) EXPECT_LE(dot(tg.normal, v), tg.t);
            }
        }
    }
}

TEST(Witness, PerturbedBodiesPairAndSatisfySantalo) {
    for (const char* e : kSmallTrees) {
        HannerExpr h = parse_expr(e);
        PipelineContext ctx(h);
        for (std::uint64_t s = 0; s < 3; ++s) {
            VPolytope k = perturb(h, rat(1, 50), derive_seed(12, s, 0));
            Witness w = witness_all(ctx, k);
            EXPECT_TRUE(pairing_check(ctx, w).ok()) << e;
            SantaloCheck sc = santalo_lower_check(ctx, w);
            EXPECT_TRUE(sc.ok) << e;
            EXPECT_GE(sc.lhs, sc.rhs);
            EXPECT_EQ(sc.rhs, Rat(Int(1) << static_cast<unsigned>(2 * h.dim())) / factorial(h.dim()));
        }
    }
}

TEST(Normalization, UnperturbedAndScaledBodiesMapToH) {
    for (const char* e : kSmallTrees) {
        PipelineContext ctx(parse_expr(e));
        for (Rat s : {rat(1), rat(19, 20)}) {
            Normalization nm = normalize_position(ctx, scaled(s, ctx.polytope()));
            EXPECT_TRUE(nm.inside_cube && nm.cross_inside);
            EXPECT_EQ(canonical(nm.k_prime).vertices, canonical(ctx.polytope()).vertices) << e;
        }
    }
}

TEST(Normalization, InclusionsHoldIndependently) {
    for (const char* e : kSmallTrees) {
        HannerExpr h = parse_expr(e);
        PipelineContext ctx(h);
        int n = h.dim();
        for (std::uint64_t s = 0; s < 3; ++s) {
            VPolytope k = perturb(h, rat(1, 20), derive_seed(13, s, 0));
            Normalization nm = normalize_position(ctx, k);
            EXPECT_EQ(nm.r.size(), static_cast<std::size_t>(n));
            EXPECT_TRUE(contains(cube(n), nm.k_prime));
            EXPECT_TRUE(contains(nm.k_prime, cross_polytope(n)));
            EXPECT_TRUE(is_symmetric(nm.k_prime));
            // K' is recomputed from T directly.
            EXPECT_EQ(canonical(nm.k_prime).vertices, canonical(intersect_cube(linear_image(nm.t, k))).vertices);
            // r_j e_j lies on the boundary of T1 K.
            HPolytope t1k = hull_facets(linear_image(nm.t1, k));
            for (int j = 0; j < n; ++j) {
                Vec p = nm.r[static_cast<std::size_t>(j)] * Vec::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(j));
                EXPECT_TRUE(contains(t1k, p));
                EXPECT_FALSE(contains(t1k, rat(1001, 1000) * p));
            }
        }
    }
}

TEST(Diagnostics, VanishOnTheUnperturbedBody) {
    PipelineContext ctx(parse_expr("((I1 +1 I2) +inf I3)"));
    Diagnostics d = projection_section_diagnostics(ctx, ctx.polytope());
    EXPECT_FALSE(d.entries.empty());
    EXPECT_EQ(d.max_distance2, 0);
    EXPECT_EQ(d.hausdorff2_to_h, 0);
    EXPECT_FALSE(d.ratio.has_value());
}

TEST(Experiment, ZeroDeltaHasZeroGaps) {
    ExperimentOptions opt;
    opt.delta = 0;
    opt.trials = 2;
    ExperimentReport rep = local_min_experiment(parse_expr("(I1 +1 (I2 +inf I3))"), opt);
    ASSERT_EQ(rep.rows.size(), 2u);
    for (const auto& row : rep.rows) {
        EXPECT_EQ(row.gap, 0);
        EXPECT_EQ(row.gap_raw, 0);
        EXPECT_EQ(row.dh2_raw, 0);
        EXPECT_EQ(row.dx, 0);
        EXPECT_TRUE(row.pairings_ok && row.normalized_ok);
    }
    EXPECT_EQ(*rep.min_gap, 0);
}

TEST(Experiment, RowsAreConsistentWithTheirComponents) {
    HannerExpr h = parse_expr("(I1 +inf (I2 +1 I3))");
    ExperimentOptions opt;
    opt.delta = rat(1, 40);
    opt.trials = 3;
    opt.seed = 5;
    opt.ladder = true;
    ExperimentReport rep = local_min_experiment(h, opt);
    EXPECT_TRUE(rep.failures.empty());
    ASSERT_EQ(rep.rows.size(), 9u);
    EXPECT_EQ(rep.p_h, rat(64, 6));
    Rat min_gap = rep.rows[0].gap;
    for (const auto& row : rep.rows) {
        EXPECT_EQ(row.delta, opt.delta / Rat(Int(1) << static_cast<unsigned>(row.level)));
        EXPECT_EQ(row.gap, row.p_norm - rep.p_h);
        EXPECT_EQ(row.gap_raw, row.p_raw - rep.p_h);
        EXPECT_EQ(row.dx, abs(row.vx - row.vy));
        EXPECT_GE(row.santalo_excess, 0);
        EXPECT_LE(row.dh2_raw, row.delta * row.delta);
        EXPECT_TRUE(row.pairings_ok && row.normalized_ok);
        min_gap = std::min(min_gap, row.gap);
    }
    EXPECT_EQ(*rep.min_gap, min_gap);
    EXPECT_GE(min_gap, 0);
}

TEST(Experiment, DeterministicAcrossThreadCounts) {
    HannerExpr h = parse_expr("(I1 +1 I2)");
    ExperimentOptions opt;
    opt.delta = rat(1, 16);
    opt.trials = 4;
    opt.seed = 9;
    std::string one = report_csv(local_min_experiment(h, opt));
    EXPECT_EQ(one, report_csv(local_min_experiment(h, opt)));
    opt.threads = 3;
    EXPECT_EQ(one, report_csv(local_min_experiment(h, opt)));
    opt.seed = 10;
    EXPECT_NE(one, report_csv(local_min_experiment(h, opt)));
}

TEST(Experiment, RejectsOutOfRangeDelta) {
    ExperimentOptions opt;
    opt.delta = rat(1, 7);
    EXPECT_THROW(local_min_experiment(standard_cube(2), opt), std::invalid_argument);
    opt.delta = rat(-1, 100);
    EXPECT_THROW(local_min_experiment(standard_cube(2), opt), std::invalid_argument);
}

TEST(Experiment, CsvHasOneRowPerTrialAndLevel) {
    ExperimentOptions opt;
    opt.delta = rat(1, 20);
    opt.trials = 2;
    opt.ladder = true;
    std::string csv = report_csv(local_min_experiment(standard_cube(2), opt));
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
    EXPECT_EQ(csv.rfind("trial,level,delta,", 0), 0u);
}
