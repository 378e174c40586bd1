#include "addcomb/ap_forms.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "addcomb/error.hpp"
#include "addcomb/modarith.hpp"

namespace addcomb {

namespace {

std::size_t common_modulus(std::span<const CyclicFn> fs, const char* what) {
    require(fs.size() >= 3, std::string(what) + ": need k >= 3");
    const std::size_t n = fs[0].modulus();
    for (const auto& f : fs) require(f.modulus() == n, std::string(what) + ": modulus mismatch");
    return n;
}

std::vector<std::size_t> support(const CyclicFn& f) {
    std::vector<std::size_t> s;
    for (std::size_t x = 0; x < f.modulus(); ++x) {
        if (f[x] != cplx{0.0}) s.push_back(x);
    }
    return s;
}

// Product of f_j(x + j r) for j >= from, all residues already reduced.
cplx tail_product(std::span<const CyclicFn> fs, std::size_t from, std::size_t x, std::size_t r,
                  std::size_t n) {
    cplx prod = 1.0;
    std::size_t y = (x + from * r) % n;
    for (std::size_t j = from; j < fs.size(); ++j) {
        prod *= fs[j][y];
        if (prod == cplx{0.0}) return prod;
        y += r;
        if (y >= n) y -= n;
    }
    return prod;
}

}  // namespace

cplx lambda_k_dense(std::span<const CyclicFn> fs, const Budget& budget) {
    const std::size_t n = common_modulus(fs, "lambda_k");
    if (static_cast<unsigned __int128>(n) * n > budget.lambda_pairs) {
        fail(ErrorKind::budget, "lambda_k: N^2 = " + std::to_string(n) + "^2 exceeds the pair budget");
    }
    cplx acc = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        cplx row = 0.0;
        for (std::size_t x = 0; x < n; ++x) row += tail_product(fs, 0, x, r, n);
        acc += row;
    }
    return acc / (static_cast<double>(n) * static_cast<double>(n));
}

cplx lambda_k_sparse(std::span<const CyclicFn> fs) {
    const std::size_t n = common_modulus(fs, "lambda_k");
    const auto s0 = support(fs[0]);
    const auto s1 = support(fs[1]);
    cplx acc = 0.0;
    if (2 * s1.size() <= n) {
        for (auto x : s0) {
            const cplx a = fs[0][x];
            for (auto y : s1) {
                const std::size_t r = (y + n - x) % n;
                acc += a * fs[1][y] * tail_product(fs, 2, x, r, n);
            }
        }
    } else {
        for (auto x : s0) {
            const cplx a = fs[0][x];
            for (std::size_t r = 0; r < n; ++r) acc += a * tail_product(fs, 1, x, r, n);
        }
    }
    return acc / (static_cast<double>(n) * static_cast<double>(n));
}

cplx lambda_k_direct(std::span<const CyclicFn> fs, const Budget& budget) {
    const std::size_t n = common_modulus(fs, "lambda_k");
    std::size_t nnz = 0;
    for (const auto& v : fs[0].values()) nnz += v != cplx{0.0};
    if (2 * nnz <= n) {
        const std::size_t other = std::max<std::size_t>(1, support(fs[1]).size());
        const auto work = static_cast<unsigned __int128>(nnz) * std::min(other, n);
        if (work > budget.lambda_pairs) fail(ErrorKind::budget, "lambda_k: sparse work exceeds the pair budget");
        return lambda_k_sparse(fs);
    }
    return lambda_k_dense(fs, budget);
}

cplx lambda3_spectral(const CyclicFn& f, const CyclicFn& g, const CyclicFn& h) {
    const std::size_t n = f.modulus();
    require(g.modulus() == n && h.modulus() == n, "lambda3_spectral: modulus mismatch");
    const Spectrum fh = dft(f), gh = dft(g), hh = dft(h);
    cplx acc = 0.0;
    for (std::size_t xi = 0; xi < n; ++xi) {
        const std::size_t m2 = (n - (2 * xi) % n) % n;
        acc += fh[xi] * gh[m2] * hh[xi];
    }
    return acc;
}

cplx lambda_k(std::span<const CyclicFn> fs, const Budget& budget) {
    common_modulus(fs, "lambda_k");
    if (fs.size() == 3) return lambda3_spectral(fs[0], fs[1], fs[2]);
    return lambda_k_direct(fs, budget);
}

BoundCheck lambda3_split_bound(const CyclicFn& f) {
    const std::size_t n = f.modulus();
    require(n % 2 == 1, "lambda3_split_bound: N must be odd");
    const cplx mean = expectation(f);
    const CyclicFn b = f - CyclicFn::constant(n, mean);
    const double big_g = std::abs(mean);
    const double big_b = norm(b, Exponent::two);
    const double bhat = norm(dft(b), Exponent::infinity);
    const cplx lam = lambda3_spectral(f, f, f);
    return {std::abs(lam - mean * mean * mean),
            bhat * (3.0 * big_g * big_g + 3.0 * big_g * big_b + big_b * big_b)};
}

std::string APReport::to_json() const {
    nlohmann::ordered_json j;
    j["count_nontrivial"] = count_nontrivial;
    j["count_trivial"] = count_trivial;
    j["k"] = k;
    j["normalization"] = normalization;
    j["r_positive_only"] = r_positive_only;
    if (witness) {
        j["witness"] = {{"n", witness->n}, {"r", witness->r}};
    } else {
        j["witness"] = nullptr;
    }
    return j.dump();
}

IntSet::IntSet(std::int64_t bound, std::vector<std::int64_t> elements)
    : bound_(bound), elements_(std::move(elements)) {
    require(bound_ >= 1, "IntSet: bound must be at least 1");
    std::ranges::sort(elements_);
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    member_.assign(static_cast<std::size_t>(bound_) + 1, false);
    for (auto e : elements_) {
        require(e >= 1 && e <= bound_, "IntSet: element " + std::to_string(e) + " outside [1, " +
                                           std::to_string(bound_) + "]");
        member_[static_cast<std::size_t>(e)] = true;
    }
}

bool is_progression_in(const IntSet& a, const APWitness& w, unsigned k) {
    for (unsigned j = 0; j < k; ++j) {
        if (!a.contains(w.n + static_cast<std::int64_t>(j) * w.r)) return false;
    }
    return true;
}

namespace {

// Visits every (n, r > 0) progression in lexicographic order; stops when
// visit returns false.
template <class Visit>
void scan_aps(const IntSet& a, unsigned k, Visit&& visit) {
    const auto el = a.elements();
    for (std::size_t i = 0; i < el.size(); ++i) {
        for (std::size_t j = i + 1; j < el.size(); ++j) {
            const std::int64_t r = el[j] - el[i];
            if (el[i] + static_cast<std::int64_t>(k - 1) * r > a.bound()) break;
            bool ok = true;
            for (unsigned t = 2; t < k && ok; ++t) ok = a.contains(el[i] + static_cast<std::int64_t>(t) * r);
            if (ok && !visit(APWitness{el[i], r})) return;
        }
    }
}

}  // namespace

APReport count_aps(const IntSet& a, unsigned k, bool r_positive_only) {
    require(k >= 3, "count_aps: need k >= 3");
    APReport rep;
    rep.k = k;
    rep.r_positive_only = r_positive_only;
    rep.count_trivial = a.size();
    rep.normalization = static_cast<std::uint64_t>(a.bound()) * static_cast<std::uint64_t>(a.bound());
    scan_aps(a, k, [&](const APWitness& w) {
        if (!rep.witness) rep.witness = w;
        ++rep.count_nontrivial;
        return true;
    });
    if (!r_positive_only) rep.count_nontrivial *= 2;
    if (rep.witness && !is_progression_in(a, *rep.witness, k)) {
        fail(ErrorKind::consistency, "count_aps: witness failed membership re-check");
    }
    return rep;
}

std::optional<APWitness> find_ap(const IntSet& a, unsigned k) {
    require(k >= 3, "find_ap: need k >= 3");
    std::optional<APWitness> found;
    scan_aps(a, k, [&](const APWitness& w) {
        found = w;
        return false;
    });
    if (found && !is_progression_in(a, *found, k)) {
        fail(ErrorKind::consistency, "find_ap: witness failed membership re-check");
    }
    return found;
}

double varnavides_statistic(std::size_t modulus, std::span<const std::int64_t> residues,
                            std::size_t length) {
    require(is_prime(modulus), "varnavides_statistic: N must be prime");
    require(length >= 1 && length <= modulus, "varnavides_statistic: need 1 <= M <= N");
    std::vector<bool> in(modulus, false);
    for (auto r : residues) in[mod_reduce(r, modulus)] = true;
    const auto size = static_cast<std::uint64_t>(std::count(in.begin(), in.end(), true));
    if (size == 0) return 0.0;

    std::uint64_t good = 0;
    for (std::size_t a = 0; a < modulus; ++a) {
        for (std::size_t b = 0; b < modulus; ++b) {
            std::uint64_t hits = 0;
            std::size_t y = a;
            for (std::size_t j = 1; j <= length; ++j) {
                y += b;
                if (y >= modulus) y -= modulus;
                hits += in[y];
            }
            // hits / M >= (|A| / N) / 2
            if (2 * hits * modulus >= size * length) ++good;
        }
    }
    return static_cast<double>(good) / (static_cast<double>(modulus) * static_cast<double>(modulus));
}

}  // namespace addcomb
