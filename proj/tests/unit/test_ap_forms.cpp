#include <gtest/gtest.h>

#include <json.hpp>

#include <addcomb/ap_forms.hpp>
#include <addcomb/error.hpp>
#include <addcomb/modarith.hpp>

#include "support/oracles.hpp"

using namespace addcomb;

TEST(Lambda, Constants) {
    for (std::size_t k : {3, 4, 5}) {
        const std::vector<CyclicFn> fs(k, CyclicFn::constant(13, 0.7));
        EXPECT_NEAR(lambda_k(fs).real(), std::pow(0.7, static_cast<double>(k)), 1e-14);
    }
}

TEST(Lambda, IndicatorOnZ5) {
    const std::int64_t a[] = {1, 2};
    const std::vector<CyclicFn> fs(3, indicator(5, a));
    EXPECT_NEAR(lambda_k(fs).real(), 2.0 / 25, 1e-15);
    EXPECT_NEAR(lambda_k_dense(fs).real(), 2.0 / 25, 1e-15);
    EXPECT_NEAR(lambda_k_sparse(fs).real(), 2.0 / 25, 1e-15);
}

TEST(Lambda, SpectralMatchesDirect) {
    oracle::Gen gen(41);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = static_cast<std::size_t>(gen.integer(1, 101));
        const std::vector<CyclicFn> fs{gen.gaussian(n), gen.gaussian(n), gen.gaussian(n)};
        const cplx ref = oracle::lambda(fs);
        EXPECT_LT(oracle::rel_err(lambda3_spectral(fs[0], fs[1], fs[2]), ref), 1e-10) << n;
        EXPECT_LT(oracle::rel_err(lambda_k_dense(fs), ref), 1e-10) << n;
    }
}

TEST(Lambda, SparseMatchesDense) {
    oracle::Gen gen(42);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = static_cast<std::size_t>(gen.integer(2, 200));
        const std::size_t k = static_cast<std::size_t>(gen.integer(3, 5));
        std::vector<CyclicFn> fs;
        for (std::size_t j = 0; j < k; ++j) {
            const double density = j < 2 ? gen.uniform(0.0, 0.6) : 1.0;
            fs.push_back(CyclicFn::generate(n, [&](std::size_t) { return gen.uniform() < density ? gen.uniform() : 0.0; }));
        }
        EXPECT_LT(std::abs(lambda_k_sparse(fs) - lambda_k_dense(fs)), 1e-12);
        EXPECT_LT(std::abs(lambda_k_direct(fs) - lambda_k_dense(fs)), 1e-12);
    }
}

TEST(Lambda, Validation) {
    std::vector<CyclicFn> two(2, CyclicFn::constant(5, 1.0));
    EXPECT_THROW(lambda_k(two), Error);
    std::vector<CyclicFn> mixed{CyclicFn(5), CyclicFn(5), CyclicFn(6)};
    EXPECT_THROW(lambda_k(mixed), Error);
    Budget b;
    b.lambda_pairs = 100;
    std::vector<CyclicFn> dense(4, CyclicFn::constant(11, 1.0));
    EXPECT_THROW(lambda_k_dense(dense, b), Error);
}

TEST(Lambda, SplitBound) {
    oracle::Gen gen(43);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 * static_cast<std::size_t>(gen.integer(0, 60)) + 1;
        const CyclicFn f = trial % 2 ? gen.bounded(n) : gen.unit_interval(n);
        EXPECT_TRUE(lambda3_split_bound(f).holds());
    }
    EXPECT_THROW(lambda3_split_bound(CyclicFn(8)), Error);
}

TEST(IntSet, Validation) {
    const IntSet s(10, {5, 1, 5, 3});
    EXPECT_EQ(s.size(), 3u);
    EXPECT_TRUE(s.contains(3));
    EXPECT_FALSE(s.contains(4));
    EXPECT_FALSE(s.contains(11));
    EXPECT_THROW(IntSet(10, {0}), Error);
    EXPECT_THROW(IntSet(10, {11}), Error);
    EXPECT_THROW(IntSet(0, {}), Error);
}

TEST(CountAps, Examples) {
    const APReport full = count_aps(IntSet(5, {1, 2, 3, 4, 5}), 3);
    EXPECT_EQ(full.count_nontrivial, 4u);
    EXPECT_EQ(full.count_trivial, 5u);
    EXPECT_EQ(full.normalization, 25u);
    EXPECT_EQ(full.witness, (APWitness{1, 1}));
    EXPECT_EQ(count_aps(IntSet(5, {1, 2, 3, 4, 5}), 3, false).count_nontrivial, 8u);

    const APReport empty = count_aps(IntSet(10, {}), 3);
    EXPECT_EQ(empty.count_nontrivial, 0u);
    EXPECT_FALSE(empty.witness);

    std::vector<std::int64_t> pow2;
    for (std::int64_t x = 1; x <= 64; x *= 2) pow2.push_back(x);
    EXPECT_EQ(count_aps(IntSet(64, pow2), 3).count_nontrivial, oracle::count_aps(pow2, 64, 3));
    EXPECT_EQ(count_aps(IntSet(64, pow2), 3).count_nontrivial, 0u);
}

TEST(CountAps, MatchesEnumeration) {
    oracle::Gen gen(44);
    for (int trial = 0; trial < 60; ++trial) {
        const std::int64_t bound = gen.integer(1, 120);
        const auto el = gen.subset(bound, gen.uniform(0.05, 0.9));
        const IntSet s(bound, el);
        for (unsigned k : {3u, 4u, 5u}) {
            const APReport r = count_aps(s, k);
            EXPECT_EQ(r.count_nontrivial, oracle::count_aps(el, bound, k));
            if (r.witness) EXPECT_TRUE(is_progression_in(s, *r.witness, k));
            EXPECT_EQ(r.witness.has_value(), r.count_nontrivial > 0);
        }
    }
}

TEST(CountAps, JsonShape) {
    const auto doc = nlohmann::json::parse(count_aps(IntSet(5, {1, 2, 3}), 3).to_json());
    EXPECT_EQ(doc["count_nontrivial"], 1);
    EXPECT_EQ(doc["witness"]["n"], 1);
    EXPECT_EQ(doc["witness"]["r"], 1);
    EXPECT_EQ(doc["k"], 3);
    const auto none = nlohmann::json::parse(count_aps(IntSet(5, {1, 2, 4, 5}), 3).to_json());
    EXPECT_TRUE(none["witness"].is_null());
}

TEST(FindAp, Examples) {
    EXPECT_EQ(find_ap(IntSet(3, {1, 2, 3}), 3), (APWitness{1, 1}));
    EXPECT_FALSE(find_ap(IntSet(5, {1, 2, 4, 5}), 3));
    std::vector<std::int64_t> primes;
    for (std::int64_t p = 2; p <= 30; ++p) {
        if (is_prime(static_cast<std::uint64_t>(p))) primes.push_back(p);
    }
    const IntSet ps(30, primes);
    const auto w = find_ap(ps, 4);
    ASSERT_TRUE(w);
    EXPECT_TRUE(is_progression_in(ps, *w, 4));
    EXPECT_TRUE(is_progression_in(ps, {5, 6}, 4));
    EXPECT_EQ(*w, (APWitness{5, 6}));
}

TEST(Varnavides, Examples) {
    std::vector<std::int64_t> all(11);
    for (int i = 0; i < 11; ++i) all[i] = i;
    EXPECT_EQ(varnavides_statistic(11, all, 3), 1.0);
    EXPECT_EQ(varnavides_statistic(11, {}, 3), 0.0);

    const std::vector<std::int64_t> a{1, 2, 3, 4, 5, 6};
    int good = 0;
    for (int s = 0; s < 11; ++s) {
        for (int t = 0; t < 11; ++t) {
            int hits = 0;
            for (int j = 1; j <= 3; ++j) hits += (s + j * t) % 11 >= 1 && (s + j * t) % 11 <= 6;
            good += hits / 3.0 >= (6.0 / 11.0) / 2.0;
        }
    }
    EXPECT_DOUBLE_EQ(varnavides_statistic(11, a, 3), good / 121.0);
    EXPECT_THROW(varnavides_statistic(12, a, 3), Error);
    EXPECT_THROW(varnavides_statistic(11, a, 0), Error);
}
