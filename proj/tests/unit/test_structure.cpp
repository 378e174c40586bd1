#include <gtest/gtest.h>

#include <json.hpp>

#include <addcomb/ap_forms.hpp>
#include <addcomb/error.hpp>
#include <addcomb/structure.hpp>

#include "support/oracles.hpp"

using namespace addcomb;

TEST(Bohr, AtomCounts) {
    const BohrGenerator trivial{0, 0.3, {0, 0}};
    EXPECT_EQ(bohr_partition(13, std::span(&trivial, 1)).atom_count(), 1u);

    const BohrGenerator g{3, 0.6, {0, 0}};
    const BohrPartition b = bohr_partition(12, std::span(&g, 1));
    EXPECT_EQ(b.atom_count(), 4u);
    for (std::size_t x = 0; x < 12; ++x) EXPECT_EQ(b.atom_of()[x], b.atom_of()[(x + 4) % 12]);
    EXPECT_EQ(b.join(b), b);
    EXPECT_EQ(b.join(b).atom_count(), 4u);
    EXPECT_EQ(b.join(BohrPartition::trivial(12)), b);
    EXPECT_EQ(b.join(BohrPartition::discrete(12)), BohrPartition::discrete(12));

    const BohrGenerator bad{1, 0.0, {0, 0}};
    EXPECT_THROW(bohr_partition(12, std::span(&bad, 1)), Error);
    const BohrGenerator wide{1, 1.5, {0, 0}};
    EXPECT_THROW(bohr_partition(12, std::span(&wide, 1)), Error);
}

TEST(Bohr, AtomBoundAndJoinProperties) {
    oracle::Gen gen(51);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = static_cast<std::size_t>(gen.integer(2, 120));
        std::vector<BohrGenerator> gs;
        for (int i = 0; i < gen.integer(1, 3); ++i) {
            gs.push_back({gen.integer(0, static_cast<std::int64_t>(n) - 1), gen.uniform(0.05, 1.0),
                          {gen.uniform(), gen.uniform()}});
        }
        const BohrPartition b = bohr_partition(n, gs);
        EXPECT_LE(static_cast<double>(b.atom_count()), bohr_atom_bound(gs));
        std::size_t total = 0;
        for (auto s : b.atom_sizes()) {
            EXPECT_GT(s, 0u);
            total += s;
        }
        EXPECT_EQ(total, n);
        // The joint partition equals the join of the single-generator partitions.
        BohrPartition joined = BohrPartition::trivial(n);
        for (const auto& g : gs) joined = joined.join(bohr_partition(n, std::span(&g, 1)));
        EXPECT_EQ(joined, b);
        EXPECT_EQ(b.generators().size(), gs.size());
    }
}

TEST(Bohr, FromLabelsRenumbers) {
    const std::int64_t labels[] = {7, 7, -1, 3, -1};
    const BohrPartition b = BohrPartition::from_labels(labels);
    EXPECT_EQ(b.atom_count(), 3u);
    EXPECT_EQ((std::vector<std::size_t>(b.atom_of().begin(), b.atom_of().end())),
              (std::vector<std::size_t>{0, 0, 1, 2, 1}));
}

TEST(CondExpect, Basics) {
    oracle::Gen gen(52);
    const CyclicFn f = gen.gaussian(10);
    EXPECT_TRUE(approx_equal(cond_expect(f, BohrPartition::trivial(10)), CyclicFn::constant(10, expectation(f))));
    EXPECT_TRUE(approx_equal(cond_expect(f, BohrPartition::discrete(10)), f));

    const std::int64_t labels[] = {0, 1, 1, 0, 0, 1, 0, 1, 1, 1};
    const BohrPartition b = BohrPartition::from_labels(labels);
    const CyclicFn g = cond_expect(f, b);
    for (std::size_t x = 0; x < 10; ++x) {
        cplx sum = 0;
        int count = 0;
        for (std::size_t y = 0; y < 10; ++y) {
            if (labels[y] == labels[x]) {
                sum += f[y];
                ++count;
            }
        }
        EXPECT_LT(std::abs(g[x] - sum / static_cast<double>(count)), 1e-14);
    }
    EXPECT_NEAR(energy(f, b), std::pow(norm(g, Exponent::two), 2), 1e-14);
}

TEST(CondExpect, ProjectionProperties) {
    oracle::Gen gen(53);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = static_cast<std::size_t>(gen.integer(2, 60));
        std::vector<std::int64_t> coarse(n), fine(n);
        for (std::size_t x = 0; x < n; ++x) {
            coarse[x] = gen.integer(0, 3);
            fine[x] = coarse[x] * 10 + gen.integer(0, 2);
        }
        const BohrPartition bc = BohrPartition::from_labels(coarse), bf = BohrPartition::from_labels(fine);
        const CyclicFn f = gen.unit_interval(n);
        const CyclicFn g = cond_expect(f, bc);
        EXPECT_TRUE(approx_equal(cond_expect(g, bc), g));
        EXPECT_NEAR(expectation(g).real(), expectation(f).real(), 1e-14);
        EXPECT_LE(energy(f, bc), energy(f, bf) + 1e-14);
        EXPECT_LE(energy(f, bf), std::pow(norm(f, Exponent::two), 2) + 1e-14);
        for (auto v : g.values()) EXPECT_TRUE(v.real() >= -1e-15 && v.real() <= 1 + 1e-15);
    }
}

TEST(Roth, Examples) {
    std::vector<std::int64_t> all(100);
    for (int i = 0; i < 100; ++i) all[i] = i + 1;
    const IntSet full(100, all);
    const RothResult r = roth_density_increment_search(full, 1.0);
    EXPECT_TRUE(is_progression_in(full, r.witness, 3));
    EXPECT_EQ(r.trace.front().level, 0);

    std::vector<std::int64_t> odd;
    for (int x = 1; x <= 999; x += 2) odd.push_back(x);
    const IntSet odds(999, odd);
    const RothResult o = roth_density_increment_search(odds, odds.density());
    EXPECT_TRUE(is_progression_in(odds, o.witness, 3));
    for (const auto& step : o.trace) {
        if (step.level > 0) EXPECT_EQ(step.q, 2);
    }

    try {
        roth_density_increment_search(IntSet(5, {1, 2, 4, 5}), 0.8);
        FAIL() << "expected not_found";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_found);
    }
}

TEST(Roth, AgreesWithEnumeration) {
    oracle::Gen gen(54);
    for (int trial = 0; trial < 40; ++trial) {
        const std::int64_t bound = gen.integer(5, 400);
        const auto el = gen.subset(bound, gen.uniform(0.02, 0.5));
        const IntSet s(bound, el);
        const bool exists = oracle::count_aps(el, bound, 3) > 0;
        if (exists) {
            const RothResult r = roth_density_increment_search(s, std::max(s.density(), 1e-3));
            EXPECT_TRUE(is_progression_in(s, r.witness, 3));
            EXPECT_FALSE(r.trace.empty());
        } else {
            EXPECT_THROW(roth_density_increment_search(s, std::max(s.density(), 1e-3)), Error);
        }
    }
}

TEST(Roth, TraceJson) {
    std::vector<std::int64_t> odd;
    for (int x = 1; x <= 199; x += 2) odd.push_back(x);
    const RothResult o = roth_density_increment_search(IntSet(199, odd), 0.5);
    const auto doc = nlohmann::json::parse(trace_to_json(o.trace));
    ASSERT_EQ(doc.size(), o.trace.size());
    EXPECT_EQ(doc[0]["kind"], o.trace[0].kind);
    EXPECT_TRUE(doc[0].contains("density_or_energy"));
}

TEST(Kvn, ConstantFunction) {
    const Decomposition d = kvn_decompose(CyclicFn::constant(31, 0.4), 0.4, 0.05);
    EXPECT_EQ(d.status, KvnStatus::done);
    EXPECT_EQ(d.atom_count, 1u);
    EXPECT_TRUE(d.iterations.empty());
    EXPECT_LT(norm(d.b, Exponent::infinity), 1e-15);
}

TEST(Kvn, Interval) {
    std::vector<std::int64_t> half;
    for (int x = 1; x <= 50; ++x) half.push_back(x);
    const CyclicFn f = indicator(101, half);
    const Decomposition d = kvn_decompose(f, 0.4, 0.05);
    EXPECT_EQ(d.status, KvnStatus::done);
    EXPECT_LE(norm(dft(d.b), Exponent::infinity), 0.05);
    EXPECT_GT(lambda3_spectral(d.g, d.g, d.g).real(), 0.0);
}

TEST(Kvn, SingleFrequencyStructure) {
    const CyclicFn f = CyclicFn::generate(101, [](std::size_t x) {
        return cplx{(1.0 + std::cos(2 * M_PI * 7.0 * static_cast<double>(x) / 101.0)) / 2.0};
    });
    const Decomposition d = kvn_decompose(f, 0.5, 0.01);
    EXPECT_EQ(d.status, KvnStatus::done);
    ASSERT_FALSE(d.iterations.empty());
    EXPECT_LE(d.iterations.size(), 2u);
    EXPECT_TRUE(d.iterations[0].frequency == 7 || d.iterations[0].frequency == 94);
    EXPECT_LE(norm(dft(d.b), Exponent::infinity), 0.01);
}

TEST(Kvn, Postconditions) {
    oracle::Gen gen(55);
    for (int trial = 0; trial < 20; ++trial) {
        const CyclicFn f = gen.unit_interval(101);
        const Decomposition d = kvn_decompose(f, 0.2, 0.03);
        ASSERT_EQ(d.status, KvnStatus::done);
        EXPECT_LE(norm(dft(d.b), Exponent::infinity), 0.03);
        EXPECT_NEAR(expectation(d.g).real(), expectation(f).real(), 1e-12);
        for (auto v : d.g.values()) EXPECT_TRUE(v.real() >= -1e-12 && v.real() <= 1 + 1e-12);
        EXPECT_TRUE(approx_equal(d.g + d.b, f));
        double prev = std::pow(std::abs(expectation(f)), 2);
        for (const auto& step : d.iterations) {
            EXPECT_GE(step.density_or_energy - prev, d.gain_floor - 1e-12);
            prev = step.density_or_energy;
        }
    }
}

TEST(Kvn, BudgetAndValidation) {
    oracle::Gen gen(56);
    const CyclicFn f = gen.unit_interval(101);
    KvnParams tight;
    tight.atom_budget = 2;
    EXPECT_EQ(kvn_decompose(f, 0.1, 1e-4, tight).status, KvnStatus::budget);
    EXPECT_THROW(kvn_decompose(CyclicFn::constant(5, 2.0), 0.1, 0.1), Error);
    EXPECT_THROW(kvn_decompose(CyclicFn::constant(5, 0.2), 0.5, 0.1), Error);
    EXPECT_THROW(kvn_decompose(f, 0.1, 0.0), Error);
}

TEST(QuadFit, Examples) {
    std::vector<std::uint64_t> sq(7);
    for (std::uint64_t x = 0; x < 7; ++x) sq[x] = x * x % 7;
    const QuadFitResult a = fit_quadratic_phase(sq);
    ASSERT_TRUE(a.fit);
    EXPECT_EQ(a.fit->a, 1u);
    EXPECT_EQ(a.fit->b, 0u);
    EXPECT_EQ(a.fit->c, 0u);

    std::vector<std::uint64_t> q(11);
    for (std::uint64_t x = 0; x < 11; ++x) q[x] = (3 * x * x + 2 * x + 5) % 11;
    const QuadFitResult b = fit_quadratic_phase(q);
    ASSERT_TRUE(b.fit);
    EXPECT_EQ(b.fit->a, 3u);
    EXPECT_EQ(b.fit->b, 2u);
    EXPECT_EQ(b.fit->c, 5u);

    std::vector<std::uint64_t> cube(7);
    for (std::uint64_t x = 0; x < 7; ++x) cube[x] = x * x * x % 7;
    const QuadFitResult c = fit_quadratic_phase(cube);
    EXPECT_FALSE(c.fit);
    ASSERT_TRUE(c.violation);
    const auto& v = *c.violation;
    EXPECT_NE(third_difference(cube, v[0], v[1], v[2], v[3]), 0u);

    EXPECT_THROW(fit_quadratic_phase(std::vector<std::uint64_t>(3, 0)), Error);
    EXPECT_THROW(fit_quadratic_phase(std::vector<std::uint64_t>(9, 0)), Error);
}

TEST(QuadFit, FastTestMatchesExhaustive) {
    oracle::Gen gen(57);
    for (std::uint64_t p : {5, 7, 11, 13}) {
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<std::uint64_t> phi(p);
            if (trial % 2) {
                const auto a = gen.integer(0, p - 1), b = gen.integer(0, p - 1), c = gen.integer(0, p - 1);
                for (std::uint64_t x = 0; x < p; ++x) phi[x] = (a * x * x + b * x + c) % p;
                if (trial % 4 == 1) phi[gen.integer(0, p - 1)] ^= 1;  // perturb one value
            } else {
                for (auto& v : phi) v = gen.integer(0, p - 1);
            }
            const QuadFitResult r = fit_quadratic_phase(phi);
            const bool quadratic = oracle::is_quadratic_exhaustive(phi);
            EXPECT_EQ(r.fit.has_value(), quadratic);
            EXPECT_EQ(third_difference_violation(phi).has_value(), !quadratic);
            if (r.fit) {
                for (std::uint64_t x = 0; x < p; ++x) {
                    EXPECT_EQ((r.fit->a * x * x + r.fit->b * x + r.fit->c) % p, phi[x] % p);
                }
            }
        }
    }
}

TEST(Quadruples, AffineAndEmpty) {
    const std::uint64_t p = 23;
    std::vector<std::optional<std::uint64_t>> affine(p);
    for (std::uint64_t h = 0; h < p; ++h) affine[h] = (5 * h + 3) % p;
    EXPECT_DOUBLE_EQ(additive_quadruple_statistic(affine), 1.0);
    const AffineMatch m = best_affine_match(affine);
    EXPECT_EQ(m.matches, p);
    EXPECT_EQ(m.alpha, 5u);
    EXPECT_EQ(m.beta, 3u);

    const std::vector<std::optional<std::uint64_t>> empty(p);
    EXPECT_EQ(additive_quadruple_statistic(empty), 0.0);

    Budget tight;
    tight.quadruple_max_p = 10;
    EXPECT_THROW(additive_quadruple_statistic(affine, tight), Error);
}

TEST(Quadruples, TwoDimensionalExample) {
    const std::uint64_t p = 101, m = 3;
    const auto a = two_dimensional_example(p, m, 1, 2);
    std::size_t h_size = 0;
    for (const auto& v : a) h_size += v.has_value();
    EXPECT_EQ(h_size, m * m);
    EXPECT_EQ(*a[1 + 2 * m * 1], 1u + 2u);
    EXPECT_GT(additive_quadruple_statistic(a), 0.0);
    EXPECT_LT(best_affine_match(a).fraction, 0.5);
    EXPECT_THROW(two_dimensional_example(11, 3, 1, 2), Error);
}
