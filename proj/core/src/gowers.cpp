#include "addcomb/gowers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "addcomb/ap_forms.hpp"
#include "addcomb/error.hpp"
#include "addcomb/modarith.hpp"

namespace addcomb {

BoxKernel::BoxKernel(std::vector<std::size_t> sizes, std::vector<cplx> values)
    : sizes_(std::move(sizes)), values_(std::move(values)) {
    require(!sizes_.empty(), "BoxKernel: need d >= 1");
    std::size_t total = 1;
    for (auto s : sizes_) {
        require(s >= 1, "BoxKernel: every factor set must be non-empty");
        total *= s;
    }
    require(values_.size() == total, "BoxKernel: value count must equal prod |A_j|");
    for (const auto& v : values_) {
        require(std::isfinite(v.real()) && std::isfinite(v.imag()), "BoxKernel: entries must be finite");
    }
    strides_.assign(sizes_.size(), 1);
    for (std::size_t j = sizes_.size() - 1; j-- > 0;) strides_[j] = strides_[j + 1] * sizes_[j + 1];
}

BoxKernel BoxKernel::constant(std::vector<std::size_t> sizes, cplx c) {
    std::size_t total = 1;
    for (auto s : sizes) total *= s;
    return BoxKernel(std::move(sizes), std::vector<cplx>(total, c));
}

std::size_t BoxKernel::flat_index(std::span<const std::size_t> coords) const noexcept {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < coords.size(); ++j) idx += coords[j] * strides_[j];
    return idx;
}

double BoxKernel::sup() const noexcept {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

BoxKernel BoxKernel::operator+(const BoxKernel& other) const {
    require(std::ranges::equal(sizes_, other.sizes_), "BoxKernel: shape mismatch");
    std::vector<cplx> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] + other.values_[i];
    return BoxKernel(sizes_, std::move(v));
}

BoxKernel BoxKernel::scaled(cplx c) const {
    std::vector<cplx> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * values_[i];
    return BoxKernel(sizes_, std::move(v));
}

cplx gowers_inner_product(std::span<const BoxKernel> kernels, const Budget& budget) {
    require(!kernels.empty(), "gowers_inner_product: no kernels");
    const std::size_t d = kernels[0].dims();
    require(d < 16 && kernels.size() == (std::size_t{1} << d),
            "gowers_inner_product: need exactly 2^d kernels");
    for (const auto& k : kernels) {
        require(std::ranges::equal(k.sizes(), kernels[0].sizes()), "gowers_inner_product: shape mismatch");
    }
    const std::size_t total = kernels[0].element_count();
    const auto pairs = static_cast<unsigned __int128>(total) * total;
    if (pairs > budget.box_pairs) {
        fail(ErrorKind::budget, "gowers_inner_product: " + std::to_string(total) +
                                    "^2 pairs exceed the box_pairs budget");
    }

    const auto sizes = kernels[0].sizes();
    std::vector<std::size_t> strides(d, 1);
    for (std::size_t j = d - 1; j-- > 0;) strides[j] = strides[j + 1] * sizes[j + 1];

    // offset[e][j]: contribution of coordinate j taken from x^(e).
    std::vector<std::size_t> c0(d), c1(d);
    const std::size_t cube = kernels.size();
    std::vector<std::size_t> index(cube);

    cplx acc = 0.0;
    for (std::size_t i0 = 0; i0 < total; ++i0) {
        for (std::size_t j = 0; j < d; ++j) c0[j] = (i0 / strides[j]) % sizes[j] * strides[j];
        cplx row = 0.0;
        for (std::size_t i1 = 0; i1 < total; ++i1) {
            for (std::size_t j = 0; j < d; ++j) c1[j] = (i1 / strides[j]) % sizes[j] * strides[j];
            cplx prod = 1.0;
            for (std::size_t eps = 0; eps < cube; ++eps) {
                std::size_t idx = 0;
                for (std::size_t j = 0; j < d; ++j) idx += ((eps >> j) & 1) ? c1[j] : c0[j];
                const cplx v = kernels[eps].values()[idx];
                prod *= (std::popcount(eps) & 1) ? std::conj(v) : v;
            }
            row += prod;
        }
        acc += row;
    }
    return acc / static_cast<double>(pairs);
}

namespace {

double clamp_power(double value, double scale, const char* what) {
    if (value >= 0.0) return value;
    if (value >= -1e-9 * std::max(scale, 1e-300)) return 0.0;
    fail(ErrorKind::consistency, std::string(what) + ": negative 2^d-th power " + std::to_string(value));
}

}  // namespace

double box_norm(const BoxKernel& kernel, const Budget& budget) {
    const std::size_t cube = std::size_t{1} << kernel.dims();
    std::vector<BoxKernel> copies(cube, kernel);
    const cplx ip = gowers_inner_product(copies, budget);
    const double scale = std::pow(kernel.sup(), static_cast<double>(cube));
    if (std::abs(ip.imag()) > 1e-9 * std::max(scale, 1.0)) {
        fail(ErrorKind::consistency, "box_norm: self inner product is not real");
    }
    const double p = clamp_power(ip.real(), scale, "box_norm");
    return std::pow(p, 1.0 / static_cast<double>(cube));
}

BoundCheck vdc_bound_check(const BoxKernel& kernel, std::span<const BoxKernel> factors,
                           const Budget& budget) {
    const std::size_t d = kernel.dims();
    require(factors.size() == d, "vdc_bound_check: need one factor per coordinate");
    const auto sizes = kernel.sizes();
    for (std::size_t i = 0; i < d; ++i) {
        require(std::ranges::equal(factors[i].sizes(), sizes), "vdc_bound_check: factor shape mismatch");
        require(factors[i].sup() <= 1.0 + 1e-12, "vdc_bound_check: factors must be bounded by 1");
    }

    std::vector<std::size_t> coords(d, 0), anchored(d, 0);
    cplx acc = 0.0;
    for (std::size_t flat = 0; flat < kernel.element_count(); ++flat) {
        cplx prod = kernel.values()[flat];
        for (std::size_t i = 0; i < d; ++i) {
            const cplx v = factors[i](coords);
            anchored = coords;
            anchored[i] = 0;
            if (std::abs(v - factors[i](anchored)) > 1e-12) {
                fail(ErrorKind::input, "vdc_bound_check: factor " + std::to_string(i + 1) +
                                           " depends on its own coordinate");
            }
            prod *= v;
        }
        acc += prod;
        for (std::size_t j = d; j-- > 0;) {
            if (++coords[j] < sizes[j]) break;
            coords[j] = 0;
        }
    }
    const double lhs = std::abs(acc / static_cast<double>(kernel.element_count()));
    return {lhs, box_norm(kernel, budget)};
}

namespace {

// P_d of the table f (length n), using scratch[d] as the level-d buffer.
double u_power_rec(std::span<const cplx> f, int d, std::vector<std::vector<cplx>>& scratch) {
    const std::size_t n = f.size();
    if (d == 1) {
        cplx s = 0.0;
        for (const auto& v : f) s += v;
        return std::norm(s / static_cast<double>(n));
    }
    auto& g = scratch[static_cast<std::size_t>(d)];
    double acc = 0.0;
    for (std::size_t h = 0; h < n; ++h) {
        for (std::size_t x = 0, xh = h; x < n; ++x) {
            g[x] = f[xh] * std::conj(f[x]);
            if (++xh == n) xh = 0;
        }
        acc += u_power_rec(g, d - 1, scratch);
    }
    return acc / static_cast<double>(n);
}

}  // namespace

double u_norm_power(const CyclicFn& f, int d, const Budget& budget) {
    require(d >= 1 && d <= 4, "u_norm: d must lie in 1..4");
    if (f.modulus() > budget.u_norm_max_n[d]) {
        fail(ErrorKind::budget, "u_norm: N = " + std::to_string(f.modulus()) + " exceeds the U^" +
                                    std::to_string(d) + " budget of " +
                                    std::to_string(budget.u_norm_max_n[d]));
    }
    if (d == 2) {
        const Spectrum s = dft(f);
        double acc = 0.0;
        for (const auto& v : s.values()) acc += std::norm(v) * std::norm(v);
        return acc;
    }
    std::vector<std::vector<cplx>> scratch(static_cast<std::size_t>(d) + 1,
                                           std::vector<cplx>(f.modulus()));
    return u_power_rec(f.values(), d, scratch);
}

double u_norm(const CyclicFn& f, int d, const Budget& budget) {
    const double p = u_norm_power(f, d, budget);
    return std::pow(p, 1.0 / static_cast<double>(1 << d));
}

CyclicFn dual_function(const CyclicFn& f, const Budget& budget) {
    const std::size_t n = f.modulus();
    if (n > budget.dual_max_n) {
        fail(ErrorKind::budget, "dual_function: N = " + std::to_string(n) + " exceeds the budget of " +
                                    std::to_string(budget.dual_max_n));
    }
    const auto v = f.values();
    const auto at = [&](std::size_t x) { return v[x % n]; };
    std::vector<cplx> out(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            // Summing out c leaves the mean of y -> conj f(y) f(y+a) f(y+b) conj f(y+a+b).
            cplx m = 0.0;
            for (std::size_t y = 0; y < n; ++y) {
                m += std::conj(at(y)) * at(y + a) * at(y + b) * std::conj(at(y + a + b));
            }
            m /= static_cast<double>(n);
            for (std::size_t x = 0; x < n; ++x) {
                out[x] += std::conj(at(x + a)) * std::conj(at(x + b)) * at(x + a + b) * m;
            }
        }
    }
    const double inv = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    for (auto& z : out) z *= inv;
    return CyclicFn(std::move(out));
}

cplx dual_pairing(const CyclicFn& f, const Budget& budget) {
    const CyclicFn df = dual_function(f, budget);
    cplx acc = 0.0;
    for (std::size_t x = 0; x < f.modulus(); ++x) acc += f[x] * df[x];
    return acc / static_cast<double>(f.modulus());
}

namespace {

void require_prime_above(std::size_t n, std::size_t k, const char* what) {
    if (!is_prime(n) || n <= k) {
        fail(ErrorKind::input, std::string(what) + ": N must be a prime larger than k (N = " +
                                   std::to_string(n) + ", k = " + std::to_string(k) + ")");
    }
}

}  // namespace

cplx lambda_k_cube_form(std::span<const CyclicFn> fs, std::size_t j, const Budget& budget) {
    const std::size_t k = fs.size();
    require(k >= 3, "lambda_k_cube_form: need k >= 3");
    require(j < k, "lambda_k_cube_form: j out of range");
    const std::size_t n = fs[0].modulus();
    for (const auto& f : fs) require(f.modulus() == n, "lambda_k_cube_form: modulus mismatch");
    require_prime_above(n, k, "lambda_k_cube_form");

    const std::size_t vars = k - 1;
    unsigned __int128 work = 1;
    for (std::size_t t = 0; t < vars; ++t) work *= n;
    if (work > budget.lambda_pairs) fail(ErrorKind::budget, "lambda_k_cube_form: N^{k-1} exceeds budget");

    // Variable t stands for x_{i'} with i' = owner[t] != j; its weight in the
    // step is 1/(j - i') mod N.
    std::vector<std::uint64_t> weight;
    for (std::size_t i = 0; i < k; ++i) {
        if (i == j) continue;
        const auto diff = mod_reduce(static_cast<std::int64_t>(j) - static_cast<std::int64_t>(i), n);
        weight.push_back(*inverse_mod(diff, n));
    }

    std::vector<std::uint64_t> digits(vars, 0);
    const auto total = static_cast<std::uint64_t>(work);
    cplx acc = 0.0;
    for (std::uint64_t it = 0; it < total; ++it) {
        std::uint64_t sum = 0, step = 0;
        for (std::size_t t = 0; t < vars; ++t) {
            sum += digits[t];
            step = (step + mul_mod(digits[t], weight[t], n)) % n;
        }
        sum %= n;
        // y_i = S - (j - i) T = (S - j T) + i T
        const std::uint64_t base = (sum + n - mul_mod(j % n, step, n)) % n;
        cplx prod = 1.0;
        std::uint64_t y = base;
        for (std::size_t i = 0; i < k; ++i) {
            prod *= fs[i][y];
            y = (y + step) % n;
        }
        acc += prod;
        for (std::size_t t = vars; t-- > 0;) {
            if (++digits[t] < n) break;
            digits[t] = 0;
        }
    }
    return acc / static_cast<double>(total);
}

GvnReport gvn_bound_check(std::span<const CyclicFn> fs, const Budget& budget) {
    const std::size_t k = fs.size();
    require(k >= 3 && k <= 5, "gvn_bound_check: k must lie in 3..5");
    const std::size_t n = fs[0].modulus();
    for (const auto& f : fs) {
        require(f.modulus() == n, "gvn_bound_check: modulus mismatch");
        require(f.is_bounded(), "gvn_bound_check: inputs must be bounded by 1");
    }
    require_prime_above(n, k, "gvn_bound_check");

    GvnReport report;
    report.bound.rhs = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
        const double u = u_norm(fs[j], static_cast<int>(k) - 1, budget);
        if (u < report.bound.rhs) {
            report.bound.rhs = u;
            report.argmin = j;
        }
    }
    report.lambda_direct = lambda_k_direct(fs, budget);
    report.lambda_cube = lambda_k_cube_form(fs, report.argmin, budget);
    if (std::abs(report.lambda_direct - report.lambda_cube) > 1e-9) {
        fail(ErrorKind::consistency, "gvn_bound_check: cube form disagrees with the direct average");
    }
    report.bound.lhs = std::abs(report.lambda_direct);
    return report;
}

}  // namespace addcomb
