#include <gtest/gtest.h>

#include "alfeld/verification.hpp"

using namespace alfeld;

TEST(DimensionCounts, MatchHandCounts) {
    // N = 2: Clough-Tocher split, 3 subtriangles, 6 edges; N = 3: 4 subtets, 10 faces.
    struct Hand {
        int ndim, raw_sym, bdm, skew, sigma;
    };
    for (const Hand& h : {Hand{2, 27, 2 * 2 * 6, 9, 15}, Hand{3, 96, 3 * 3 * 10, 48, 42}}) {
        const DimensionCounts c = dimension_counts(h.ndim);
        EXPECT_EQ(c.raw_sym, h.raw_sym);
        EXPECT_EQ(c.bdm_dim, h.bdm);
        EXPECT_EQ(c.skew_dim, h.skew);
        EXPECT_EQ(c.sigma_dim, h.sigma);
        EXPECT_EQ(c.bdm_dim - c.skew_dim, c.sigma_dim);
        EXPECT_EQ(sigma_dimension_formula(h.ndim), h.sigma);
    }
    EXPECT_EQ(sigma_dimension_formula(4), 90);
    EXPECT_TRUE(check_dimension_formula(4).pass);
}

TEST(DimensionCounts, Variants) {
    EXPECT_EQ(exact_variant_dimension(StressVariant::full), 42);
    EXPECT_EQ(exact_variant_dimension(StressVariant::reduced), 24);
    EXPECT_EQ(exact_variant_dimension(StressVariant::reduced2), 12);
}

TEST(Kernel, ExactAgreesWithFloatingPoint) {
    for (int n : {2, 3}) {
        const KernelResult k = kernel_rank(n, true);
        EXPECT_EQ(k.nullity(), 0);
        EXPECT_EQ(k.float_rank, k.exact_rank);
    }
    EXPECT_TRUE(check_kernel_trivial(2).pass);
}

TEST(Unisolvency, SmallRun) {
    std::mt19937_64 rng(51);
    for (StressVariant v : {StressVariant::full, StressVariant::reduced, StressVariant::reduced2}) {
        const CheckEntry e = check_unisolvency(v, 10, rng);
        EXPECT_TRUE(e.pass) << e.detail;
        EXPECT_GT(e.value, 1e-8);
    }
}

TEST(Commuting, SmallRun) {
    const VerificationReport r = check_commuting(1, 3, 7);
    ASSERT_FALSE(r.entries.empty());
    for (const auto& e : r.entries) {
        EXPECT_TRUE(e.pass) << e.name << ": " << e.detail;
        EXPECT_LE(e.value, 1e-10) << e.name;
    }
}

TEST(Bgg, SmallRun) {
    std::mt19937_64 rng(52);
    for (int n : {2, 3, 4}) {
        const VerificationReport r = check_bgg(n, 20, rng);
        EXPECT_TRUE(r.pass()) << r.text();
    }
}

TEST(InfSup, PositiveOnCoarseMeshes) {
    const auto mesh = std::make_shared<const SplitMesh>(generate_cube_mesh(1));
    for (MethodId id : {MethodId::jkm, MethodId::p0, MethodId::reduced, MethodId::reduced2}) {
        MethodConfig m;
        m.id = id;
        EXPECT_GT(estimate_infsup(*build_discretization(mesh, m)), 1e-3) << to_string(id);
    }
}

TEST(Report, SummaryIsReproducible) {
    VerifyOptions o;
    o.ndims = {2};
    o.trials = 5;
    o.bgg_fields = 10;
    o.commuting_fields = 2;
    o.infsup = false;
    o.seed = 99;
    const VerificationReport a = run_verification(o), b = run_verification(o);
    EXPECT_TRUE(a.pass()) << a.text();
    EXPECT_EQ(a.summary(), b.summary());
    EXPECT_EQ(a.seed, 99u);
    // one "name PASS|FAIL value" line per entry
    std::istringstream is(a.summary());
    std::string line;
    std::size_t lines = 0;
    while (std::getline(is, line)) {
        ++lines;
        EXPECT_TRUE(line.find(" PASS ") != std::string::npos || line.find(" FAIL ") != std::string::npos) << line;
    }
    EXPECT_EQ(lines, a.entries.size());
}

TEST(Report, PassRequiresEveryEntry) {
    VerificationReport r;
    EXPECT_TRUE(r.pass());
    r.add({"a", true, 0.0, "", ""});
    EXPECT_TRUE(r.pass());
    VerificationReport s;
    s.add({"b", false, 1.0, "", ""});
    r.append(s);
    EXPECT_FALSE(r.pass());
    EXPECT_EQ(r.entries.size(), 2u);
}
