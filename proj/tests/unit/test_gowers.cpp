#include <gtest/gtest.h>

#include <addcomb/ap_forms.hpp>
#include <addcomb/error.hpp>
#include <addcomb/gowers.hpp>

#include "support/oracles.hpp"

using namespace addcomb;

namespace {

// Direct loop for d = 2: E over (x0, x1, y0, y1) of the 4 cube corners.
cplx inner_d2(std::span<const BoxKernel> k) {
    const std::size_t n0 = k[0].sizes()[0], n1 = k[0].sizes()[1];
    cplx sum = 0;
    for (std::size_t x0 = 0; x0 < n0; ++x0)
        for (std::size_t x1 = 0; x1 < n0; ++x1)
            for (std::size_t y0 = 0; y0 < n1; ++y0)
                for (std::size_t y1 = 0; y1 < n1; ++y1) {
                    const std::size_t c00[] = {x0, y0}, c10[] = {x1, y0}, c01[] = {x0, y1}, c11[] = {x1, y1};
                    sum += k[0](c00) * std::conj(k[1](c10)) * std::conj(k[2](c01)) * k[3](c11);
                }
    return sum / static_cast<double>(n0 * n0 * n1 * n1);
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no addcomb::Error thrown";
    return ErrorKind::input;
}

}  // namespace

TEST(BoxKernel, Construction) {
    EXPECT_THROW(BoxKernel({2, 3}, std::vector<cplx>(5)), Error);
    EXPECT_THROW(BoxKernel({}, {}), Error);
    const BoxKernel k = BoxKernel::generate({2, 3}, [](std::span<const std::size_t> c) { return cplx(10.0 * c[0] + c[1]); });
    const std::size_t at[] = {1, 2};
    EXPECT_EQ(k(at), cplx(12.0));
    EXPECT_EQ(k.element_count(), 6u);
    EXPECT_EQ(k.sup(), 12.0);
}

TEST(Gowers, InnerProductTrivialCases) {
    const std::vector<BoxKernel> d1(2, BoxKernel::constant({5}, {0.6, 0.8}));
    EXPECT_NEAR(gowers_inner_product(d1).real(), 1.0, 1e-15);
    const std::vector<BoxKernel> half(2, BoxKernel::constant({4}, 0.5));
    EXPECT_NEAR(gowers_inner_product(half).real(), 0.25, 1e-15);
    const std::vector<BoxKernel> d2(4, BoxKernel::constant({3, 4}, 1.0));
    EXPECT_NEAR(gowers_inner_product(d2).real(), 1.0, 1e-15);
}

TEST(Gowers, InnerProductMatchesLoopOracle) {
    oracle::Gen gen(21);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<BoxKernel> ks;
        for (int e = 0; e < 4; ++e) ks.push_back(gen.kernel({4, 4}));
        EXPECT_LT(std::abs(gowers_inner_product(ks) - inner_d2(ks)), 1e-12);
    }
    std::vector<BoxKernel> ks;
    for (int e = 0; e < 4; ++e) ks.push_back(gen.kernel({3, 5}));
    EXPECT_LT(std::abs(gowers_inner_product(ks) - inner_d2(ks)), 1e-12);
}

TEST(Gowers, InnerProductRejectsBadInput) {
    std::vector<BoxKernel> ks(3, BoxKernel::constant({2, 2}, 1.0));
    EXPECT_EQ(kind_of([&] { gowers_inner_product(ks); }), ErrorKind::input);
    std::vector<BoxKernel> mixed{BoxKernel::constant({2, 2}, 1.0), BoxKernel::constant({2, 2}, 1.0),
                                 BoxKernel::constant({2, 3}, 1.0), BoxKernel::constant({2, 2}, 1.0)};
    EXPECT_EQ(kind_of([&] { gowers_inner_product(mixed); }), ErrorKind::input);
    Budget tight;
    tight.box_pairs = 100;
    std::vector<BoxKernel> big(4, BoxKernel::constant({20, 20}, 1.0));
    EXPECT_EQ(kind_of([&] { gowers_inner_product(big, tight); }), ErrorKind::budget);
}

TEST(Gowers, BoxNormFacts) {
    for (std::size_t d = 1; d <= 3; ++d) {
        EXPECT_NEAR(box_norm(BoxKernel::constant(std::vector<std::size_t>(d, 3), 1.0)), 1.0, 1e-14);
    }
    // d = 1 is only a seminorm.
    EXPECT_NEAR(box_norm(BoxKernel({4}, {1.0, -1.0, 2.0, -2.0})), 0.0, 1e-15);
}

TEST(Gowers, CauchySchwarzAndTriangle) {
    oracle::Gen gen(22);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = trial % 2 ? 2 : 3;
        const std::vector<std::size_t> shape(d, static_cast<std::size_t>(gen.integer(2, 5)));
        std::vector<BoxKernel> ks;
        double prod = 1.0;
        for (unsigned e = 0; e < (1u << d); ++e) {
            ks.push_back(gen.kernel(shape));
            prod *= box_norm(ks.back());
        }
        EXPECT_LE(std::abs(gowers_inner_product(ks)), prod + 1e-9);
        EXPECT_LE(box_norm(ks[0] + ks[1]), box_norm(ks[0]) + box_norm(ks[1]) + 1e-9);
    }
}

TEST(Gowers, VanDerCorputBound) {
    oracle::Gen gen(23);
    const BoxKernel one = BoxKernel::constant({4, 4}, 1.0);
    const std::vector<BoxKernel> ones(2, one);
    const BoundCheck triv = vdc_bound_check(one, ones);
    EXPECT_NEAR(triv.lhs, 1.0, 1e-15);
    EXPECT_NEAR(triv.rhs, 1.0, 1e-15);

    for (int trial = 0; trial < 100; ++trial) {
        const BoxKernel k = gen.kernel({4, 4});
        // F1 ignores x (coordinate 0), F2 ignores y.
        std::vector<cplx> ys(4), xs(4);
        for (auto& v : ys) v = std::polar(gen.uniform(), gen.uniform(0, 6.3));
        for (auto& v : xs) v = std::polar(gen.uniform(), gen.uniform(0, 6.3));
        std::vector<BoxKernel> fs{BoxKernel::generate({4, 4}, [&](auto c) { return ys[c[1]]; }),
                                  BoxKernel::generate({4, 4}, [&](auto c) { return xs[c[0]]; })};
        const BoundCheck b = vdc_bound_check(k, fs);
        EXPECT_TRUE(b.holds());
        EXPECT_NEAR(b.rhs, box_norm(k), 1e-15);
    }

    const BoxKernel k = gen.kernel({3, 3});
    const std::vector<BoxKernel> zero(2, BoxKernel::constant({3, 3}, 0.0));
    const BoundCheck z = vdc_bound_check(k, zero);
    EXPECT_EQ(z.lhs, 0.0);
    EXPECT_NEAR(z.rhs, box_norm(k), 1e-15);

    // A factor that varies along its own coordinate is rejected.
    std::vector<BoxKernel> bad{gen.kernel({3, 3}), BoxKernel::constant({3, 3}, 1.0)};
    EXPECT_EQ(kind_of([&] { vdc_bound_check(k, bad); }), ErrorKind::input);
}

TEST(UNorm, ConstantAndQuadraticPhase) {
    for (int d = 1; d <= 4; ++d) EXPECT_NEAR(u_norm(CyclicFn::constant(17, 1.0), d), 1.0, 1e-12);
    oracle::Gen gen(24);
    for (int trial = 0; trial < 10; ++trial) {
        const std::int64_t c[] = {gen.integer(0, 100), gen.integer(0, 100), gen.integer(1, 100)};
        EXPECT_NEAR(u_norm(polynomial_phase(101, c), 3), 1.0, 1e-9);
    }
}

TEST(UNorm, CubicPhaseHasEighthPowerOrderOneOverN) {
    // The eighth power is (2N - 1) / N^2 for prime N > 3; the norm itself
    // therefore decays only like N^{-1/8}.
    for (std::size_t n : {101, 257}) {
        const std::int64_t cubic[] = {0, 0, 0, 1};
        const double eighth = u_norm_power(polynomial_phase(n, cubic), 3);
        const double nd = static_cast<double>(n);
        EXPECT_NEAR(eighth, (2 * nd - 1) / (nd * nd), 1e-12);
    }
}

TEST(UNorm, RecursionMatchesFullAverage) {
    oracle::Gen gen(25);
    for (int d = 1; d <= 3; ++d) {
        for (std::size_t n : {1, 2, 5, 8, 13, 16}) {
            const CyclicFn f = gen.bounded(n);
            EXPECT_NEAR(u_norm_power(f, d), oracle::u_power(f, d), 1e-12) << "d=" << d << " N=" << n;
        }
    }
    const CyclicFn f = gen.bounded(7);
    EXPECT_NEAR(u_norm_power(f, 4), oracle::u_power(f, 4), 1e-12);
}

TEST(UNorm, U2SpectralPathMatchesCubeAverage) {
    oracle::Gen gen(26);
    for (int trial = 0; trial < 50; ++trial) {
        const CyclicFn f = gen.gaussian(static_cast<std::size_t>(gen.integer(1, 100)));
        const double ref = oracle::u_power(f, 2);
        EXPECT_NEAR(u_norm_power(f, 2), ref, 1e-9 * std::max(1.0, ref));
        EXPECT_NEAR(u_norm(f, 2), norm(dft(f), Exponent::four), 1e-12);
    }
}

TEST(UNorm, Monotone) {
    oracle::Gen gen(27);
    for (int trial = 0; trial < 100; ++trial) {
        const CyclicFn f = gen.bounded(static_cast<std::size_t>(gen.integer(1, 24)));
        double prev = u_norm(f, 1);
        for (int d = 2; d <= 4; ++d) {
            const double cur = u_norm(f, d);
            EXPECT_LE(prev, cur + 1e-9);
            prev = cur;
        }
    }
}

TEST(UNorm, BudgetsAndDomain) {
    EXPECT_EQ(kind_of([] { u_norm(CyclicFn(10), 0); }), ErrorKind::input);
    EXPECT_EQ(kind_of([] { u_norm(CyclicFn(10), 5); }), ErrorKind::input);
    EXPECT_EQ(kind_of([] { u_norm(CyclicFn(129), 4); }), ErrorKind::budget);
    Budget b;
    b.u_norm_max_n[2] = 10;
    EXPECT_EQ(kind_of([&] { u_norm(CyclicFn(11), 2, b); }), ErrorKind::budget);
}

TEST(Dual, TrivialInputs) {
    EXPECT_TRUE(approx_equal(dual_function(CyclicFn::constant(9, 1.0)), CyclicFn::constant(9, 1.0)));
    EXPECT_TRUE(approx_equal(dual_function(CyclicFn(9)), CyclicFn(9)));
    EXPECT_EQ(kind_of([] { dual_function(CyclicFn(257)); }), ErrorKind::budget);
}

TEST(Dual, PairingMatchesOracleAndU3) {
    oracle::Gen gen(28);
    for (std::size_t n : {7, 12, 31}) {
        const CyclicFn f = gen.bounded(n);
        const cplx pair = dual_pairing(f);
        EXPECT_LT(std::abs(pair - oracle::dual_pairing(f)), 1e-12);
        EXPECT_NEAR(pair.real(), u_norm_power(f, 3), 1e-12);
        EXPECT_NEAR(pair.imag(), 0.0, 1e-12);
    }
    // For real f the sesquilinear pairing agrees.
    const CyclicFn g = gen.unit_interval(19);
    EXPECT_NEAR(inner(g, dual_function(g)).real(), u_norm_power(g, 3), 1e-12);
}

TEST(Gvn, CubeFormMatchesDirectForEverySlot) {
    oracle::Gen gen(29);
    for (std::size_t k : {3, 4}) {
        const std::size_t n = k == 3 ? 31 : 13;
        std::vector<CyclicFn> fs;
        for (std::size_t j = 0; j < k; ++j) fs.push_back(gen.bounded(n));
        const cplx direct = oracle::lambda(fs);
        for (std::size_t j = 0; j < k; ++j) EXPECT_LT(std::abs(lambda_k_cube_form(fs, j) - direct), 1e-12);
    }
    std::vector<CyclicFn> fs(3, CyclicFn::constant(12, 1.0));
    EXPECT_EQ(kind_of([&] { lambda_k_cube_form(fs, 0); }), ErrorKind::input);
}

TEST(Gvn, BoundHolds) {
    oracle::Gen gen(30);
    const std::vector<CyclicFn> ones(3, CyclicFn::constant(11, 1.0));
    const GvnReport triv = gvn_bound_check(ones);
    EXPECT_NEAR(triv.bound.lhs, 1.0, 1e-12);
    EXPECT_NEAR(triv.bound.rhs, 1.0, 1e-12);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = trial % 4 == 0 ? 4 : 3;
        const std::size_t n = k == 3 ? 101 : 17;
        std::vector<CyclicFn> fs;
        for (std::size_t j = 0; j < k; ++j) fs.push_back(gen.bounded(n));
        const GvnReport r = gvn_bound_check(fs);
        EXPECT_TRUE(r.bound.holds());
        EXPECT_NEAR(r.bound.rhs, u_norm(fs[r.argmin], static_cast<int>(k) - 1), 1e-15);
    }
    std::vector<CyclicFn> five;
    for (int j = 0; j < 5; ++j) five.push_back(gen.bounded(11));
    EXPECT_TRUE(gvn_bound_check(five).bound.holds());
}

TEST(Gvn, QuadraticPhaseFourTermIdentity) {
    // With f = e(q(x)) the binomial coefficients 1, -3, 3, -1 of the third
    // difference cancel the phase exactly.
    const std::int64_t c[] = {4, 9, 5};
    const CyclicFn f = polynomial_phase(101, c);
    const std::vector<CyclicFn> fs{f, power(conj(f), 3), power(f, 3), conj(f)};
    const cplx v = lambda_k_direct(fs);
    EXPECT_NEAR(v.real(), 1.0, 1e-9);
    EXPECT_NEAR(v.imag(), 0.0, 1e-9);
    // The alternating pattern (f, conj f, f, conj f) averages a
    // non-degenerate quadratic form and collapses to 1/N.
    const std::vector<CyclicFn> alt{f, conj(f), f, conj(f)};
    EXPECT_NEAR(std::abs(lambda_k_direct(alt)), 1.0 / 101, 1e-9);
}

TEST(Gvn, RejectsUnsupportedInput) {
    oracle::Gen gen(31);
    std::vector<CyclicFn> fs(3, CyclicFn::constant(10, 1.0));
    EXPECT_EQ(kind_of([&] { gvn_bound_check(fs); }), ErrorKind::input);
    std::vector<CyclicFn> unbounded(3, CyclicFn::constant(11, 2.0));
    EXPECT_EQ(kind_of([&] { gvn_bound_check(unbounded); }), ErrorKind::input);
    std::vector<CyclicFn> six(6, CyclicFn::constant(11, 1.0));
    EXPECT_EQ(kind_of([&] { gvn_bound_check(six); }), ErrorKind::input);
}
