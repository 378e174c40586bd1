#include "addcomb/singular_series.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "addcomb/error.hpp"
#include "addcomb/modarith.hpp"

namespace addcomb {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// base^e, or an input error when the result leaves 2^120.
i128 checked_pow(std::uint64_t base, unsigned e) {
    i128 acc = 1;
    const i128 limit = static_cast<i128>(1) << 120;
    for (unsigned i = 0; i < e; ++i) {
        if (acc > limit / static_cast<i128>(base)) fail(ErrorKind::input, "local factor exceeds 128-bit range");
        acc *= base;
    }
    return acc;
}

// count / p^s relative to ((p-1)/p)^k, i.e. count p^{k-s} / (p-1)^k.
Rational density_ratio(i128 count, std::uint64_t p, unsigned s, unsigned k) {
    if (k >= s) return Rational(count * checked_pow(p, k - s), checked_pow(p - 1, k));
    return Rational(count, checked_pow(p - 1, k) * checked_pow(p, s - k));
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint8_t> comp(n + 1, 0);
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (comp[p]) continue;
        out.push_back(p);
        for (std::uint64_t m = p * p; m <= n; m += p) comp[m] = 1;
    }
    return out;
}

// Neumaier-compensated sum.
class LogSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// log of a positive rational close to 1, without cancellation.
double log_near_one(const Rational& r) {
    return std::log1p(static_cast<double>(r.num() - r.den()) / static_cast<double>(r.den()));
}

struct Accumulator {
    LogSum log;
    bool zero = false;
    std::optional<std::vector<std::pair<std::uint64_t, double>>> factors;

    void add(std::uint64_t p, const Rational& f) {
        if (f.num() == 0) {
            zero = true;
            if (factors) factors->emplace_back(p, -INFINITY);
            return;
        }
        const double l = log_near_one(f);
        log.add(l);
        if (factors) factors->emplace_back(p, l);
    }

    EulerProductResult finish(std::uint64_t truncation, double tail) {
        EulerProductResult r;
        r.truncation_prime = truncation;
        r.factor_log = std::move(factors);
        if (zero) return r;
        r.value = std::exp(log.value());
        r.tail_bound = tail;
        return r;
    }
};

// Tail of sum_{p > P} |log f_p| for f_p = (1 + x)^m (1 - m x), x = 1/(p-1):
// |log f_p| <= (x^2 / 2) (m + m^2 / (1 - m x)).
double tail_ap(unsigned m, std::uint64_t truncation) {
    const double pd = static_cast<double>(truncation);
    const double md = static_cast<double>(m);
    return 0.5 * (md + md * md / (1.0 - md / pd)) * prime_tail_inverse_square(truncation);
}

}  // namespace

Rational::Rational(i128 num, i128 den) : num_(num), den_(den) {
    require(den_ != 0, "Rational: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    const i128 g = gcd128(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

std::string Rational::to_string() const {
    auto str = [](i128 v) {
        if (v == 0) return std::string("0");
        const bool neg = v < 0;
        std::string s;
        for (; v != 0; v /= 10) s.push_back(static_cast<char>('0' + static_cast<int>(neg ? -(v % 10) : v % 10)));
        if (neg) s.push_back('-');
        return std::string(s.rbegin(), s.rend());
    };
    if (den_ == 1) return str(num_);
    return str(num_) + "/" + str(den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    const Rational x(a.num_, b.den_);
    const Rational y(b.num_, a.den_);
    return Rational(x.num_ * y.num_, x.den_ * y.den_);
}

Rational local_factor_ap(std::uint64_t p, unsigned k) {
    require(is_prime(p), "local_factor_ap: p must be prime");
    require(k >= 1, "local_factor_ap: k must be at least 1");
    i128 count = 0;
    for (std::uint64_t n = 0; n < p; ++n) {
        for (std::uint64_t r = 0; r < p; ++r) {
            bool ok = true;
            std::uint64_t y = n;
            for (unsigned j = 0; j < k && ok; ++j) {
                ok = y != 0;
                y = (y + r) % p;
            }
            count += ok;
        }
    }
    return density_ratio(count, p, 2, k);
}

Rational local_factor_ap_fast(std::uint64_t p, unsigned k) {
    require(is_prime(p), "local_factor_ap: p must be prime");
    require(k >= 1, "local_factor_ap: k must be at least 1");
    // Row r: n must avoid {-j r : 0 <= j < k}. Rows r != 0 are all the same
    // size as row 1 because r -> c r permutes them.
    std::set<std::uint64_t> row1;
    for (unsigned j = 0; j < k; ++j) row1.insert((p - j % p) % p);
    const i128 count = static_cast<i128>(p - 1) + static_cast<i128>(p - 1) * static_cast<i128>(p - row1.size());
    return density_ratio(count, p, 2, k);
}

Rational local_factor_pattern(std::uint64_t p, const std::vector<std::int64_t>& shifts) {
    require(is_prime(p), "local_factor_pattern: p must be prime");
    require(!shifts.empty(), "local_factor_pattern: empty pattern");
    std::set<std::uint64_t> forbidden;
    for (auto h : shifts) forbidden.insert(mod_reduce(-h, p));
    const i128 count = static_cast<i128>(p - forbidden.size());
    return density_ratio(count, p, 1, static_cast<unsigned>(shifts.size()));
}

Rational local_factor_goldbach(std::uint64_t p, std::uint64_t n) {
    require(is_prime(p), "local_factor_goldbach: p must be prime");
    const std::uint64_t target = n % p;
    i128 count = 0;
    for (std::uint64_t a = 1; a < p; ++a) {
        for (std::uint64_t b = 1; b < p; ++b) {
            count += (target + 2 * p - a - b) % p != 0;
        }
    }
    return density_ratio(count, p, 2, 3);
}

double prime_tail_inverse_square(std::uint64_t p) {
    require(p >= 3, "tail bound needs P >= 3");
    const double q = static_cast<double>(p - 1);
    return 2.51012 / std::log(static_cast<double>(p)) * (1.0 / q + 1.0 / (2.0 * q * q));
}

double prime_tail_inverse_cube(std::uint64_t p) {
    require(p >= 3, "tail bound needs P >= 3");
    const double q = static_cast<double>(p - 1);
    return 3.76518 / std::log(static_cast<double>(p)) * (1.0 / (2.0 * q * q) + 1.0 / (3.0 * q * q * q));
}

EulerProductResult constant_C_k(unsigned k, std::uint64_t truncation, bool keep_factors) {
    require(k >= 3, "constant_C_k: k must be at least 3");
    require(truncation >= k, "constant_C_k: need P >= k");
    Accumulator acc;
    if (keep_factors) acc.factors.emplace();
    for (auto p : primes_up_to(truncation)) acc.add(p, local_factor_ap_fast(p, k));
    return acc.finish(truncation, tail_ap(k - 2, std::max<std::uint64_t>(truncation, 3)));
}

EulerProductResult constant_B2(std::uint64_t truncation, bool keep_factors) {
    require(truncation >= 3, "constant_B2: need P >= 3");
    Accumulator acc;
    if (keep_factors) acc.factors.emplace();
    const std::vector<std::int64_t> twins{0, 2};
    for (auto p : primes_up_to(truncation)) acc.add(p, local_factor_pattern(p, twins));
    // p(p-2)/(p-1)^2 = (1 + x)(1 - x): the k = 3 shape with m = 1.
    return acc.finish(truncation, tail_ap(1, truncation));
}

EulerProductResult constant_G2(std::uint64_t n, std::uint64_t truncation) {
    require(n >= 1, "constant_G2: N must be positive");
    EulerProductResult r = constant_B2(truncation);
    if (n % 2 == 1) {
        r.value = 0.0;
        r.tail_bound = 0.0;
        return r;
    }
    for (auto p : prime_divisors(n)) {
        if (p >= 3) r.value *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
    }
    return r;
}

EulerProductResult constant_G3(std::uint64_t n, std::uint64_t truncation) {
    require(n >= 1, "constant_G3: N must be positive");
    require(truncation >= 3, "constant_G3: need P >= 3");
    Accumulator acc;
    auto factor = [&](std::uint64_t p) {
        // n1 runs over the p - 1 units; n2 must avoid 0 and N - n1, which
        // coincide exactly when n1 = N mod p.
        const bool divides = n % p == 0;
        const i128 count = static_cast<i128>(p - 1) * static_cast<i128>(p - 2) + (divides ? 0 : 1);
        return density_ratio(count, p, 2, 3);
    };
    for (auto p : primes_up_to(truncation)) acc.add(p, factor(p));
    for (auto p : prime_divisors(n)) {
        if (p > truncation) acc.add(p, factor(p));
    }
    // p not dividing N: log(1 + 1/(p-1)^3) <= 1/(p-1)^3.
    return acc.finish(truncation, prime_tail_inverse_cube(truncation));
}

}  // namespace addcomb
