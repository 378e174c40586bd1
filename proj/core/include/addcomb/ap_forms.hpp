#pragma once

// Progression-counting forms Lambda_k on Z/NZ and exact progression counts in
// finite sets of integers.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "addcomb/budget.hpp"
#include "addcomb/gowers.hpp"
#include "addcomb/zmod.hpp"

namespace addcomb {

/// Lambda_k(f_0, ..., f_{k-1}) = E_{x,r} prod_j f_j(x + j r), k >= 3.
/// For k = 3 this uses the spectral identity; otherwise lambda_k_direct.
cplx lambda_k(std::span<const CyclicFn> fs, const Budget& budget = {});

/// Direct double average. Switches to a support-driven loop when f_0 is
/// sparse; results agree with lambda_k_dense.
cplx lambda_k_direct(std::span<const CyclicFn> fs, const Budget& budget = {});

/// Plain O(k N^2) loop over all (x, r).
cplx lambda_k_dense(std::span<const CyclicFn> fs, const Budget& budget = {});

/// Loop over x in supp f_0 and y in supp f_1 (r = y - x), or over
/// supp f_0 x Z/NZ when f_1 is dense.
cplx lambda_k_sparse(std::span<const CyclicFn> fs);

/// sum_xi fhat(xi) ghat(-2 xi) hhat(xi).
cplx lambda3_spectral(const CyclicFn& f, const CyclicFn& g, const CyclicFn& h);

/// Splitting f = E(f) + b: |Lambda_3(f,f,f) - E(f)^3| against
/// ||bhat||_inf (3 G^2 + 3 G B + B^2) with G = ||E f||_{L^2}, B = ||b||_{L^2}.
/// Each of the seven cross terms carries at least one b, which is placed in a
/// slot where |Lambda_3(u,v,w)| <= ||u||_2 ||v||_2 ||what||_inf applies.
/// Valid for odd N.
BoundCheck lambda3_split_bound(const CyclicFn& f);

struct APWitness {
    std::int64_t n = 0;
    std::int64_t r = 0;

    friend bool operator==(const APWitness&, const APWitness&) = default;
};

struct APReport {
    unsigned k = 3;
    bool r_positive_only = true;       // false: count r != 0 in both directions
    std::uint64_t count_nontrivial = 0;
    std::uint64_t count_trivial = 0;   // r = 0 progressions, i.e. |A|
    std::optional<APWitness> witness;  // lexicographically first (n, r > 0)
    std::uint64_t normalization = 0;   // N^2

    std::string to_json() const;
};

/// Sorted, duplicate-free integer set contained in [1, N].
class IntSet {
public:
    IntSet(std::int64_t bound, std::vector<std::int64_t> elements);

    std::int64_t bound() const noexcept { return bound_; }
    std::span<const std::int64_t> elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool contains(std::int64_t x) const noexcept {
        return x >= 1 && x <= bound_ && member_[static_cast<std::size_t>(x)];
    }
    double density() const noexcept {
        return static_cast<double>(elements_.size()) / static_cast<double>(bound_);
    }

private:
    std::int64_t bound_;
    std::vector<std::int64_t> elements_;
    std::vector<bool> member_;
};

/// Exact count of k-term progressions inside A (over Z, no wraparound).
APReport count_aps(const IntSet& a, unsigned k, bool r_positive_only = true);

/// First witness in lexicographic (n, r) order, r > 0.
std::optional<APWitness> find_ap(const IntSet& a, unsigned k);

/// True when n, n + r, ..., n + (k-1) r all lie in A.
bool is_progression_in(const IntSet& a, const APWitness& w, unsigned k);

/// Fraction of (a, b) in (Z/NZ)^2 for which A has density >= delta/2 on
/// P_ab = {a + b, a + 2b, ..., a + M b}, delta = |A|/N. N must be prime.
/// Empty A gives 0.
double varnavides_statistic(std::size_t modulus, std::span<const std::int64_t> residues,
                            std::size_t length);

}  // namespace addcomb
