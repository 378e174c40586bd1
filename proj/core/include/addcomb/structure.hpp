#pragma once

// Bohr partitions, conditional expectation and energy, the density-increment
// and energy-increment algorithms, and the quadratic model-problem tools.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "addcomb/ap_forms.hpp"
#include "addcomb/budget.hpp"
#include "addcomb/zmod.hpp"

namespace addcomb {

/// One generating character x -> e_N(x xi) together with its square cells of
/// side epsilon, shifted by offset * epsilon.
struct BohrGenerator {
    std::int64_t xi = 0;
    double epsilon = 1.0;
    std::array<double, 2> offset{0.0, 0.0};
};

/// Cell of the complex plane containing z: (floor(Re z / eps + ax), floor(Im z / eps + ay)).
std::array<std::int64_t, 2> bohr_cell(cplx z, double epsilon, const std::array<double, 2>& offset);

/// Partition of Z/NZ into atoms. Atom ids are 0..atom_count-1, numbered by
/// first appearance in residue order.
class BohrPartition {
public:
    /// Single atom.
    static BohrPartition trivial(std::size_t modulus);
    /// Every residue its own atom.
    static BohrPartition discrete(std::size_t modulus);
    /// Arbitrary labels; renumbered by first appearance.
    static BohrPartition from_labels(std::span<const std::int64_t> labels);

    std::size_t modulus() const noexcept { return atom_of_.size(); }
    std::size_t atom_count() const noexcept { return atom_count_; }
    std::span<const std::size_t> atom_of() const noexcept { return atom_of_; }
    std::span<const BohrGenerator> generators() const noexcept { return generators_; }
    /// Sizes of the atoms, indexed by atom id.
    std::vector<std::size_t> atom_sizes() const;

    /// Common refinement; generator lists are concatenated.
    BohrPartition join(const BohrPartition& other) const;

    friend bool operator==(const BohrPartition& a, const BohrPartition& b) {
        return a.atom_of_ == b.atom_of_;
    }

private:
    friend BohrPartition bohr_partition(std::size_t, std::span<const BohrGenerator>);

    std::vector<std::size_t> atom_of_;
    std::size_t atom_count_ = 0;
    std::vector<BohrGenerator> generators_;
};

/// Join of the cell partitions of x -> e_N(x xi_i). Throws ErrorKind::input
/// unless every epsilon lies in (0, 1].
BohrPartition bohr_partition(std::size_t modulus, std::span<const BohrGenerator> generators);

/// Upper bound prod (ceil(2/eps) + 1)^2 on the number of non-empty atoms.
double bohr_atom_bound(std::span<const BohrGenerator> generators);

/// E(f | B): the mean of f over the atom containing x.
CyclicFn cond_expect(const CyclicFn& f, const BohrPartition& b);

/// ||E(f | B)||_{L^2}^2.
double energy(const CyclicFn& f, const BohrPartition& b);

// --- density increment ----------------------------------------------------

struct RothParams {
    double uniform_constant = 0.01;    // uniform branch when max |bhat| <= c delta^2
    double increment_constant = 0.001; // required density gain c''' delta^2
    double epsilon_constant = 0.01;    // Bohr cell side c' delta^2
    std::int64_t min_length = 20;      // below this, exhaustive search
    int max_depth = 64;
};

struct TraceStep {
    int level = 0;
    std::string kind;          // uniform, increment, fallback, refine
    std::int64_t frequency = -1;
    double epsilon = 0.0;
    double density_or_energy = 0.0;
    std::size_t atom_count = 0;
    std::int64_t length = 0;   // progression length at this level (roth)
    std::int64_t q = 0;        // step of the progression (roth), 0 otherwise
    double max_bhat = 0.0;
};

std::string trace_to_json(std::span<const TraceStep> trace);

struct RothResult {
    APWitness witness;
    std::vector<TraceStep> trace;
};

/// Runs the density-increment argument on A in [1, N]. Each level works on a
/// progression {a + q i : 1 <= i <= L}, embeds it in Z/pZ with p the next
/// prime above 2L, and either searches directly (uniform branch), passes to
/// a denser sub-progression cut out of a Bohr atom (increment), or searches
/// exhaustively (fallback). Throws ErrorKind::not_found only when A has no
/// 3-term progression.
RothResult roth_density_increment_search(const IntSet& a, double delta_floor,
                                         const RothParams& params = {});

// --- energy increment -------------------------------------------------------

struct KvnParams {
    std::size_t atom_budget = 4096;
    // Cell side of each new Bohr factor, relative to the current max |bhat|.
    double epsilon_ratio = 0.25;
    std::size_t max_iterations = 10000;
};

enum class KvnStatus { done, budget };

struct Decomposition {
    CyclicFn g{1};
    CyclicFn b{1};
    BohrPartition partition = BohrPartition::trivial(1);
    std::vector<TraceStep> iterations;
    std::size_t atom_count = 1;
    double threshold_used = 0.0;
    double gain_floor = 0.0;
    KvnStatus status = KvnStatus::done;
};

/// Energy-increment decomposition f = g + b with g = E(f | B). B starts
/// trivial and is joined with the Bohr partition of the largest Fourier
/// coefficient of b until max |bhat| <= tau. Every refinement must raise the
/// energy by at least ((1 - 2 sqrt2 epsilon_ratio) tau)^2; a smaller gain
/// raises ErrorKind::consistency. Requires 0 <= f <= 1, E(f) >= delta.
Decomposition kvn_decompose(const CyclicFn& f, double delta, double tau, const KvnParams& params = {});

// --- quadratic model problem ------------------------------------------------

struct QuadFit {
    std::uint64_t p = 0;
    std::uint64_t a = 0, b = 0, c = 0;  // phi(x) = a x^2 + b x + c
};

struct QuadFitResult {
    std::optional<QuadFit> fit;
    std::optional<std::array<std::uint64_t, 4>> violation;  // (x, r, s, t)
};

/// Third-difference expression of phi at (x, r, s, t), reduced mod p.
std::uint64_t third_difference(std::span<const std::uint64_t> phi, std::uint64_t x, std::uint64_t r,
                               std::uint64_t s, std::uint64_t t);

/// Fits phi: Z/pZ -> Z/pZ by a quadratic. Uses the unit-step third difference
/// around the cycle, which vanishes identically iff phi is quadratic (p > 3).
QuadFitResult fit_quadratic_phase(std::span<const std::uint64_t> phi);

/// Exhaustive O(p^4) test of the vanishing third difference.
std::optional<std::array<std::uint64_t, 4>> third_difference_violation(std::span<const std::uint64_t> phi);

/// a[h] is the value at h, or nullopt when h is outside H. Returns
/// P(h, h+t, h+u, h+t+u in H and a(h+t+u) - a(h+t) - a(h+u) + a(h) = 0)
/// over (h, t, u) in (Z/pZ)^3.
double additive_quadruple_statistic(std::span<const std::optional<std::uint64_t>> a,
                                    const Budget& budget = {});

struct AffineMatch {
    std::uint64_t alpha = 0, beta = 0;
    std::size_t matches = 0;
    double fraction = 0.0;  // matches / |H|
};

/// Affine map h -> alpha h + beta agreeing with a on the most points of H.
AffineMatch best_affine_match(std::span<const std::optional<std::uint64_t>> a);

/// H = {n + 2 M m : 1 <= n, m <= M} in Z/pZ with a(n + 2 M m) = alpha n + beta m.
std::vector<std::optional<std::uint64_t>> two_dimensional_example(std::uint64_t p, std::uint64_t m,
                                                                  std::uint64_t alpha,
                                                                  std::uint64_t beta);

}  // namespace addcomb
