#pragma once

// Gowers box inner products and norms on product sets, and the uniformity
// norms U^d on Z/NZ built from them.

#include <cstddef>
#include <span>
#include <vector>

#include "addcomb/budget.hpp"
#include "addcomb/zmod.hpp"

namespace addcomb {

/// Dense complex kernel on A_1 x ... x A_d, stored row-major with the last
/// coordinate fastest.
class BoxKernel {
public:
    BoxKernel(std::vector<std::size_t> sizes, std::vector<cplx> values);

    static BoxKernel constant(std::vector<std::size_t> sizes, cplx c);

    /// fn receives the coordinate tuple as std::span<const std::size_t>.
    template <class F>
    static BoxKernel generate(std::vector<std::size_t> sizes, F&& fn) {
        std::size_t total = 1;
        for (auto s : sizes) total *= s;
        std::vector<cplx> values(total);
        std::vector<std::size_t> coords(sizes.size(), 0);
        for (std::size_t i = 0; i < total; ++i) {
            values[i] = fn(std::span<const std::size_t>(coords));
            for (std::size_t j = sizes.size(); j-- > 0;) {
                if (++coords[j] < sizes[j]) break;
                coords[j] = 0;
            }
        }
        return BoxKernel(std::move(sizes), std::move(values));
    }

    std::size_t dims() const noexcept { return sizes_.size(); }
    std::span<const std::size_t> sizes() const noexcept { return sizes_; }
    std::size_t element_count() const noexcept { return values_.size(); }
    std::span<const cplx> values() const noexcept { return values_; }

    std::size_t flat_index(std::span<const std::size_t> coords) const noexcept;
    cplx operator()(std::span<const std::size_t> coords) const noexcept {
        return values_[flat_index(coords)];
    }
    double sup() const noexcept;

    BoxKernel operator+(const BoxKernel& other) const;
    BoxKernel scaled(cplx c) const;

private:
    std::vector<std::size_t> sizes_;
    std::vector<std::size_t> strides_;
    std::vector<cplx> values_;
};

/// Two sides of an inequality lhs <= rhs, as evaluated.
struct BoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;

    bool holds(double slack = 1e-9) const noexcept { return lhs <= rhs + slack; }
};

/// Gowers inner product of 2^d kernels of identical shape. kernels[eps] is
/// indexed by the bitmask eps (bit j-1 set means eps_j = 1); kernels with odd
/// |eps| enter conjugated.
cplx gowers_inner_product(std::span<const BoxKernel> kernels, const Budget& budget = {});

/// ||K||_{box^d} = <K,...,K>^{1/2^d}. Roundoff negatives of size at most
/// 1e-9 * sup|K|^{2^d} are clamped to zero; larger ones raise
/// ErrorKind::consistency.
double box_norm(const BoxKernel& kernel, const Budget& budget = {});

/// |E(K prod_i F_i)| against ||K||_{box^d}. factors[i] must be bounded by 1
/// and constant along coordinate i.
BoundCheck vdc_bound_check(const BoxKernel& kernel, std::span<const BoxKernel> factors,
                           const Budget& budget = {});

/// ||f||_{U^d}^{2^d} via the recursion
///   P_1(f) = |E f|^2,   P_{d+1}(f) = E_h P_d(f(. + h) conj f(.)),
/// which costs O(N^d). d = 2 is sum |f^(xi)|^4 instead.
double u_norm_power(const CyclicFn& f, int d, const Budget& budget = {});

/// ||f||_{U^d} for d in 1..4.
double u_norm(const CyclicFn& f, int d, const Budget& budget = {});

/// Dual function
///   Df(x) = E_{a,b,c} conj f(x+a) conj f(x+b) conj f(x+c) f(x+a+b) f(x+a+c)
///                     f(x+b+c) conj f(x+a+b+c),
/// evaluated in O(N^3) by summing out c first.
CyclicFn dual_function(const CyclicFn& f, const Budget& budget = {});

/// E(f Df): the pairing that reproduces ||f||_{U^3}^8 for complex f. For real
/// f it coincides with <f, Df> = E(f conj(Df)).
cplx dual_pairing(const CyclicFn& f, const Budget& budget = {});

/// Lambda_k rewritten over (x_i)_{i != j} so that factor i ignores x_i and
/// factor j sees x_1 + ... + x_{k-1}. Needs N prime and N > k; the
/// coefficients 1/(j - i') are exact modular inverses. Cost O(N^{k-1}).
cplx lambda_k_cube_form(std::span<const CyclicFn> fs, std::size_t j, const Budget& budget = {});

struct GvnReport {
    BoundCheck bound;           // |Lambda_k| against min_j ||f_j||_{U^{k-1}}
    std::size_t argmin = 0;     // index j attaining the minimum
    cplx lambda_direct;         // double average over (x, r)
    cplx lambda_cube;           // cube-form evaluation at j = argmin
};

/// Generalized von Neumann bound for k in {3, 4, 5}. Requires N prime, N > k
/// and bounded inputs.
GvnReport gvn_bound_check(std::span<const CyclicFn> fs, const Budget& budget = {});

}  // namespace addcomb
