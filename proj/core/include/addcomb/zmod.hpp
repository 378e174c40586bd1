#pragma once

// Functions on Z/NZ and their Fourier transforms.
//
// Normalization follows the averaged convention used throughout the library:
//
//   fhat(xi) = E_x f(x) e_N(-x xi)        (forward transform averages)
//   f(x)     = sum_xi fhat(xi) e_N(x xi)  (inversion sums)
//
// so that ||f||_{L^2} (averaged) equals ||fhat||_{l^2} (plain sum).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "addcomb/budget.hpp"

namespace addcomb {

using cplx = std::complex<double>;

/// e_N(r) = exp(2 pi i r / N), evaluated from the reduced residue so that
/// quarter turns come out exact.
cplx unit_root(std::int64_t r, std::uint64_t n) noexcept;

struct PhysicalTag {};
struct FrequencyTag {};

/// A table of N complex numbers indexed by Z/NZ. The tag separates functions
/// (physical side) from spectra (frequency side) at the type level.
template <class Tag>
class ResidueTable {
public:
    /// Zero table of the given modulus.
    explicit ResidueTable(std::size_t modulus);
    explicit ResidueTable(std::vector<cplx> values);

    static ResidueTable constant(std::size_t modulus, cplx c) {
        return ResidueTable(std::vector<cplx>(modulus, c));
    }

    template <class F>
    static ResidueTable generate(std::size_t modulus, F&& fn) {
        std::vector<cplx> v(modulus);
        for (std::size_t x = 0; x < modulus; ++x) v[x] = fn(x);
        return ResidueTable(std::move(v));
    }

    std::size_t modulus() const noexcept { return values_.size(); }
    std::span<const cplx> values() const noexcept { return values_; }

    cplx operator[](std::size_t x) const noexcept { return values_[x]; }
    /// Value at the residue class of x (negative x allowed).
    cplx at(std::int64_t x) const noexcept;

    bool is_bounded(double slack = 1e-12) const noexcept;
    bool is_real(double slack = 0.0) const noexcept;

    friend bool operator==(const ResidueTable&, const ResidueTable&) = default;

private:
    std::vector<cplx> values_;
};

using CyclicFn = ResidueTable<PhysicalTag>;
using Spectrum = ResidueTable<FrequencyTag>;

extern template class ResidueTable<PhysicalTag>;
extern template class ResidueTable<FrequencyTag>;

/// Indicator of a set of residues (elements are reduced mod N).
CyclicFn indicator(std::size_t modulus, std::span<const std::int64_t> elements);

/// Real-valued table lifted to a CyclicFn.
CyclicFn from_real(std::span<const double> values);

cplx expectation(const CyclicFn& f);

/// <f, g> = E(f conj(g)).
cplx inner(const CyclicFn& f, const CyclicFn& g);

/// n -> e_N(n xi). Throws ErrorKind::input unless 0 <= xi < N.
CyclicFn character(std::size_t modulus, std::int64_t xi);

/// Polynomial phase n -> e_N(c0 + c1 n + c2 n^2 + ...), with exact integer
/// evaluation of the polynomial mod N.
CyclicFn polynomial_phase(std::size_t modulus, std::span<const std::int64_t> coeffs);

Spectrum dft(const CyclicFn& f);
CyclicFn idft(const Spectrum& s);

/// Reference O(N^2) transform; kept public so tools can cross-check.
Spectrum naive_dft(const CyclicFn& f);

enum class Exponent { one, two, four, infinity };

/// Parses "1", "2", "4", "inf". Throws ErrorKind::input otherwise.
Exponent parse_exponent(std::string_view text);
Exponent exponent_from_int(int p);

/// Averaged L^p norm: E(|f|^p)^{1/p}.
double norm(const CyclicFn& f, Exponent p);
/// Plain l^p norm of a spectrum: (sum |fhat|^p)^{1/p}.
double norm(const Spectrum& s, Exponent p);

CyclicFn shift(const CyclicFn& f, std::int64_t h);
/// x -> f(x) e_N(x xi).
CyclicFn modulate(const CyclicFn& f, std::int64_t xi);

CyclicFn operator+(const CyclicFn& f, const CyclicFn& g);
CyclicFn operator-(const CyclicFn& f, const CyclicFn& g);
CyclicFn operator*(const CyclicFn& f, const CyclicFn& g);
CyclicFn operator*(cplx c, const CyclicFn& f);
CyclicFn conj(const CyclicFn& f);
/// x -> f(x)^e for integer e; negative e takes reciprocals.
CyclicFn power(const CyclicFn& f, int e);

/// Elementwise closeness under a tolerance scaled by the larger L^2 norm.
bool approx_equal(const CyclicFn& f, const CyclicFn& g, const Tolerance& tol = {});

}  // namespace addcomb
