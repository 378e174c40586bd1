#include "addcomb/structure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <json.hpp>

#include "addcomb/error.hpp"
#include "addcomb/modarith.hpp"

namespace addcomb {

std::array<std::int64_t, 2> bohr_cell(cplx z, double epsilon, const std::array<double, 2>& offset) {
    return {static_cast<std::int64_t>(std::floor(z.real() / epsilon + offset[0])),
            static_cast<std::int64_t>(std::floor(z.imag() / epsilon + offset[1]))};
}

BohrPartition BohrPartition::trivial(std::size_t modulus) {
    require(modulus >= 1, "modulus must be at least 1");
    BohrPartition b;
    b.atom_of_.assign(modulus, 0);
    b.atom_count_ = 1;
    return b;
}

BohrPartition BohrPartition::discrete(std::size_t modulus) {
    require(modulus >= 1, "modulus must be at least 1");
    BohrPartition b;
    b.atom_of_.resize(modulus);
    for (std::size_t x = 0; x < modulus; ++x) b.atom_of_[x] = x;
    b.atom_count_ = modulus;
    return b;
}

BohrPartition BohrPartition::from_labels(std::span<const std::int64_t> labels) {
    require(!labels.empty(), "modulus must be at least 1");
    BohrPartition b;
    std::map<std::int64_t, std::size_t> ids;
    b.atom_of_.reserve(labels.size());
    for (auto l : labels) {
        auto [it, fresh] = ids.try_emplace(l, ids.size());
        b.atom_of_.push_back(it->second);
    }
    b.atom_count_ = ids.size();
    return b;
}

std::vector<std::size_t> BohrPartition::atom_sizes() const {
    std::vector<std::size_t> sizes(atom_count_, 0);
    for (auto a : atom_of_) ++sizes[a];
    return sizes;
}

BohrPartition BohrPartition::join(const BohrPartition& other) const {
    require(modulus() == other.modulus(), "join: modulus mismatch");
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
    BohrPartition b;
    b.atom_of_.reserve(modulus());
    for (std::size_t x = 0; x < modulus(); ++x) {
        auto [it, fresh] = ids.try_emplace({atom_of_[x], other.atom_of_[x]}, ids.size());
        b.atom_of_.push_back(it->second);
    }
    b.atom_count_ = ids.size();
    b.generators_ = generators_;
    b.generators_.insert(b.generators_.end(), other.generators_.begin(), other.generators_.end());
    return b;
}

BohrPartition bohr_partition(std::size_t modulus, std::span<const BohrGenerator> generators) {
    BohrPartition result = BohrPartition::trivial(modulus);
    for (const auto& g : generators) {
        require(g.epsilon > 0.0 && g.epsilon <= 1.0, "bohr_partition: epsilon must lie in (0, 1]");
        std::map<std::array<std::int64_t, 2>, std::int64_t> cells;
        std::vector<std::int64_t> labels(modulus);
        const std::uint64_t xi = mod_reduce(g.xi, modulus);
        for (std::size_t x = 0; x < modulus; ++x) {
            const cplx z = unit_root(static_cast<std::int64_t>(mul_mod(x, xi, modulus)), modulus);
            auto [it, fresh] = cells.try_emplace(bohr_cell(z, g.epsilon, g.offset),
                                                 static_cast<std::int64_t>(cells.size()));
            labels[x] = it->second;
        }
        BohrPartition factor = BohrPartition::from_labels(labels);
        factor.generators_.push_back(g);
        result = result.join(factor);
    }
    return result;
}

double bohr_atom_bound(std::span<const BohrGenerator> generators) {
    double bound = 1.0;
    for (const auto& g : generators) {
        const double side = std::ceil(2.0 / g.epsilon) + 1.0;
        bound *= side * side;
    }
    return bound;
}

CyclicFn cond_expect(const CyclicFn& f, const BohrPartition& b) {
    require(f.modulus() == b.modulus(), "cond_expect: modulus mismatch");
    std::vector<cplx> sums(b.atom_count(), 0.0);
    std::vector<double> counts(b.atom_count(), 0.0);
    const auto atom = b.atom_of();
    for (std::size_t x = 0; x < f.modulus(); ++x) {
        sums[atom[x]] += f[x];
        counts[atom[x]] += 1.0;
    }
    for (std::size_t a = 0; a < sums.size(); ++a) sums[a] /= counts[a];
    return CyclicFn::generate(f.modulus(), [&](std::size_t x) { return sums[atom[x]]; });
}

double energy(const CyclicFn& f, const BohrPartition& b) {
    const double n2 = norm(cond_expect(f, b), Exponent::two);
    return n2 * n2;
}

std::string trace_to_json(std::span<const TraceStep> trace) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& s : trace) {
        nlohmann::ordered_json j;
        j["atom_count"] = s.atom_count;
        j["density_or_energy"] = s.density_or_energy;
        j["epsilon"] = s.epsilon;
        j["frequency"] = s.frequency;
        j["kind"] = s.kind;
        j["length"] = s.length;
        j["level"] = s.level;
        j["max_bhat"] = s.max_bhat;
        j["q"] = s.q;
        arr.push_back(std::move(j));
    }
    return arr.dump();
}

// --- density increment ----------------------------------------------------

namespace {

// A restricted to {a + q i : 1 <= i <= length}, as a subset of [1, length].
struct Level {
    std::int64_t a = 0;
    std::int64_t q = 1;
    std::int64_t length = 0;
    std::vector<bool> member;  // index i in 1..length
    std::size_t size = 0;
};

Level make_level(const IntSet& set, std::int64_t a, std::int64_t q, std::int64_t length) {
    Level lv{a, q, length, std::vector<bool>(static_cast<std::size_t>(length) + 1, false), 0};
    for (std::int64_t i = 1; i <= length; ++i) {
        if (set.contains(a + q * i)) {
            lv.member[static_cast<std::size_t>(i)] = true;
            ++lv.size;
        }
    }
    return lv;
}

std::optional<APWitness> search_level(const IntSet& set, const Level& lv) {
    std::vector<std::int64_t> local;
    for (std::int64_t i = 1; i <= lv.length; ++i) {
        if (lv.member[static_cast<std::size_t>(i)]) local.push_back(i);
    }
    if (local.empty()) return std::nullopt;
    const auto w = find_ap(IntSet(lv.length, std::move(local)), 3);
    if (!w) return std::nullopt;
    APWitness global{lv.a + lv.q * w->n, lv.q * w->r};
    if (!is_progression_in(set, global, 3)) {
        fail(ErrorKind::consistency, "roth: witness lost under the progression map");
    }
    return global;
}

struct Run {
    std::int64_t start = 0;  // first local index
    std::int64_t step = 1;
    std::int64_t length = 0;
    std::size_t hits = 0;

    double density() const { return static_cast<double>(hits) / static_cast<double>(length); }
};

}  // namespace

RothResult roth_density_increment_search(const IntSet& set, double delta_floor, const RothParams& params) {
    require(delta_floor > 0.0 && delta_floor <= 1.0, "roth: delta_floor must lie in (0, 1]");
    require(static_cast<double>(set.size()) >= delta_floor * static_cast<double>(set.bound()) * (1.0 - 1e-12),
            "roth: |A| < delta_floor * N");
    const double delta = delta_floor;
    const double d2 = delta * delta;

    RothResult result;
    auto finish = [&](std::optional<APWitness> w, int level) {
        if (!w) {
            // Last resort: the whole set.
            TraceStep step;
            step.level = level;
            step.kind = "fallback";
            step.density_or_energy = set.density();
            step.length = set.bound();
            step.q = 1;
            result.trace.push_back(step);
            w = find_ap(set, 3);
            if (!w) fail(ErrorKind::not_found, "roth: A contains no 3-term progression");
        }
        result.witness = *w;
    };

    Level lv = make_level(set, 0, 1, set.bound());
    for (int level = 0;; ++level) {
        const double delta0 = static_cast<double>(lv.size) / static_cast<double>(lv.length);
        TraceStep step;
        step.level = level;
        step.density_or_energy = delta0;
        step.length = lv.length;
        step.q = lv.q;

        if (lv.length < params.min_length || level >= params.max_depth) {
            step.kind = "fallback";
            result.trace.push_back(step);
            finish(search_level(set, lv), level + 1);
            return result;
        }

        const std::uint64_t p = next_prime(static_cast<std::uint64_t>(2 * lv.length));
        const CyclicFn b = CyclicFn::generate(p, [&](std::size_t x) {
            const auto i = static_cast<std::int64_t>(x);
            if (i < 1 || i > lv.length) return cplx{0.0};
            return cplx{(lv.member[x] ? 1.0 : 0.0) - delta0};
        });
        const Spectrum bh = dft(b);
        std::size_t xi = 0;
        double best = -1.0;
        for (std::size_t k = 0; k < p; ++k) {
            const double m = std::abs(bh[k]);
            if (m > best) {
                best = m;
                xi = k;
            }
        }
        step.max_bhat = best;

        if (best <= params.uniform_constant * d2) {
            step.kind = "uniform";
            result.trace.push_back(step);
            finish(search_level(set, lv), level + 1);
            return result;
        }

        // Hard case: Bohr atoms of n -> e_p(n xi) on [1, L].
        const double eps = params.epsilon_constant * d2;
        std::map<std::array<std::int64_t, 2>, std::size_t> cells;
        std::vector<std::size_t> atom_of(static_cast<std::size_t>(lv.length) + 1, 0);
        for (std::int64_t i = 1; i <= lv.length; ++i) {
            const cplx z = unit_root(static_cast<std::int64_t>(mul_mod(static_cast<std::uint64_t>(i), xi, p)),
                                     p);
            auto [it, fresh] = cells.try_emplace(bohr_cell(z, eps, {0.0, 0.0}), cells.size());
            atom_of[static_cast<std::size_t>(i)] = it->second;
        }
        step.frequency = static_cast<std::int64_t>(xi);
        step.epsilon = eps;
        step.atom_count = cells.size();

        // Dirichlet step: q <= sqrt(L) with ||q xi / p|| small.
        const auto qs = convergent_denominators(xi, p, static_cast<std::uint64_t>(std::sqrt(
                                                            static_cast<double>(lv.length))));
        const auto qd = static_cast<std::int64_t>(qs.back());

        // Split every atom into maximal runs of step qd and keep the densest
        // long run whose density beats delta0 + c''' delta^2.
        const double target = delta0 + params.increment_constant * d2;
        std::optional<Run> chosen;
        std::map<std::pair<std::size_t, std::int64_t>, Run> open;  // (atom, i mod qd) -> run
        auto close = [&](const Run& r) {
            if (r.length < params.min_length || r.density() < target) return;
            if (!chosen || r.density() > chosen->density() ||
                (r.density() == chosen->density() && r.length > chosen->length)) {
                chosen = r;
            }
        };
        for (std::int64_t i = 1; i <= lv.length; ++i) {
            const auto key = std::make_pair(atom_of[static_cast<std::size_t>(i)], i % qd);
            auto it = open.find(key);
            if (it != open.end() && it->second.start + it->second.step * it->second.length == i) {
                ++it->second.length;
                it->second.hits += lv.member[static_cast<std::size_t>(i)];
                continue;
            }
            if (it != open.end()) close(it->second);
            open[key] = Run{i, qd, 1, lv.member[static_cast<std::size_t>(i)] ? 1u : 0u};
        }
        for (const auto& [key, r] : open) close(r);

        // At desk scale the atoms are far too fine to hold long runs. Cover
        // each class mod qd by blocks of about sqrt(L) terms instead; on such
        // a block n -> e_p(n xi) turns by at most 2 pi per sqrt(L) steps.
        if (!chosen) {
            const std::int64_t block = std::max<std::int64_t>(
                params.min_length, static_cast<std::int64_t>(std::sqrt(static_cast<double>(lv.length))));
            for (std::int64_t c = 1; c <= std::min(qd, lv.length); ++c) {
                for (std::int64_t start = c; start + (block - 1) * qd <= lv.length; start += block * qd) {
                    Run r{start, qd, block, 0};
                    for (std::int64_t t = 0; t < block; ++t) r.hits += lv.member[static_cast<std::size_t>(start + t * qd)];
                    close(r);
                }
            }
        }

        if (!chosen) {
            step.kind = "fallback";
            result.trace.push_back(step);
            finish(search_level(set, lv), level + 1);
            return result;
        }

        step.kind = "increment";
        result.trace.push_back(step);
        const std::int64_t a_next = lv.a + lv.q * (chosen->start - chosen->step);
        lv = make_level(set, a_next, lv.q * chosen->step, chosen->length);
    }
}

// --- energy increment -------------------------------------------------------

Decomposition kvn_decompose(const CyclicFn& f, double delta, double tau, const KvnParams& params) {
    require(tau > 0.0, "kvn_decompose: tau must be positive");
    require(params.epsilon_ratio > 0.0 && params.epsilon_ratio * 2.0 * std::numbers::sqrt2 < 1.0,
            "kvn_decompose: epsilon_ratio must lie in (0, 1/(2 sqrt 2))");
    for (const auto& v : f.values()) {
        require(std::abs(v.imag()) <= 1e-12 && v.real() >= -1e-12 && v.real() <= 1.0 + 1e-12,
                "kvn_decompose: f must take values in [0, 1]");
    }
    const double mean = expectation(f).real();
    require(mean >= delta - 1e-12, "kvn_decompose: E(f) < delta");

    const std::size_t n = f.modulus();
    Decomposition d;
    d.threshold_used = tau;
    const double shrink = 1.0 - 2.0 * std::numbers::sqrt2 * params.epsilon_ratio;
    d.gain_floor = shrink * shrink * tau * tau;
    d.partition = BohrPartition::trivial(n);

    double current = energy(f, d.partition);
    for (std::size_t iter = 0;; ++iter) {
        d.g = cond_expect(f, d.partition);
        d.b = f - d.g;
        d.atom_count = d.partition.atom_count();
        const Spectrum bh = dft(d.b);
        std::size_t xi = 0;
        double best = -1.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double m = std::abs(bh[k]);
            if (m > best) {
                best = m;
                xi = k;
            }
        }
        if (!d.iterations.empty()) d.iterations.back().max_bhat = best;
        if (best <= tau) {
            d.status = KvnStatus::done;
            return d;
        }
        if (iter >= params.max_iterations) {
            d.status = KvnStatus::budget;
            return d;
        }

        const BohrGenerator gen{static_cast<std::int64_t>(xi), std::min(1.0, params.epsilon_ratio * best),
                                {0.0, 0.0}};
        BohrPartition next = d.partition.join(bohr_partition(n, std::span(&gen, 1)));
        if (next.atom_count() > params.atom_budget) {
            d.status = KvnStatus::budget;
            return d;
        }
        const double after = energy(f, next);
        if (after - current < d.gain_floor) {
            fail(ErrorKind::consistency, "kvn_decompose: energy gain " + std::to_string(after - current) +
                                             " below the guaranteed floor " + std::to_string(d.gain_floor));
        }
        current = after;
        d.partition = std::move(next);

        TraceStep step;
        step.level = static_cast<int>(iter);
        step.kind = "refine";
        step.frequency = static_cast<std::int64_t>(xi);
        step.epsilon = gen.epsilon;
        step.density_or_energy = current;
        step.atom_count = d.partition.atom_count();
        d.iterations.push_back(step);
    }
}

// --- quadratic model problem ------------------------------------------------

std::uint64_t third_difference(std::span<const std::uint64_t> phi, std::uint64_t x, std::uint64_t r,
                               std::uint64_t s, std::uint64_t t) {
    const std::uint64_t p = phi.size();
    auto at = [&](std::uint64_t y) { return phi[y % p] % p; };
    const std::uint64_t plus = at(x + r + s + t) + at(x + r) + at(x + s) + at(x + t);
    const std::uint64_t minus = at(x + r + s) + at(x + r + t) + at(x + s + t) + at(x);
    return (plus + 4 * p - minus) % p;
}

QuadFitResult fit_quadratic_phase(std::span<const std::uint64_t> phi) {
    const std::uint64_t p = phi.size();
    require(p > 3 && is_prime(p), "fit_quadratic_phase: p must be a prime larger than 3");
    QuadFitResult res;
    for (std::uint64_t x = 0; x < p; ++x) {
        if (third_difference(phi, x, 1, 1, 1) != 0) {
            res.violation = std::array<std::uint64_t, 4>{x, 1, 1, 1};
            return res;
        }
    }
    // Constant second difference D gives phi(x) = c + b x + a x^2 with a = D/2.
    const std::uint64_t c = phi[0] % p;
    const std::uint64_t d1 = (phi[1] % p + p - c) % p;
    const std::uint64_t d2 = (phi[2] % p + 2 * p - 2 * (phi[1] % p) + c) % p;
    const std::uint64_t inv2 = (p + 1) / 2;
    const std::uint64_t a = mul_mod(d2, inv2, p);
    const std::uint64_t b = (d1 + p - a) % p;
    QuadFit fit{p, a, b, c};
    for (std::uint64_t x = 0; x < p; ++x) {
        const std::uint64_t v = (mul_mod(a, mul_mod(x, x, p), p) + mul_mod(b, x, p) + c) % p;
        if (v != phi[x] % p) fail(ErrorKind::consistency, "fit_quadratic_phase: reconstruction mismatch");
    }
    res.fit = fit;
    return res;
}

std::optional<std::array<std::uint64_t, 4>> third_difference_violation(std::span<const std::uint64_t> phi) {
    const std::uint64_t p = phi.size();
    for (std::uint64_t x = 0; x < p; ++x)
        for (std::uint64_t r = 0; r < p; ++r)
            for (std::uint64_t s = 0; s < p; ++s)
                for (std::uint64_t t = 0; t < p; ++t)
                    if (third_difference(phi, x, r, s, t) != 0) return std::array<std::uint64_t, 4>{x, r, s, t};
    return std::nullopt;
}

double additive_quadruple_statistic(std::span<const std::optional<std::uint64_t>> a, const Budget& budget) {
    const std::size_t p = a.size();
    require(is_prime(p), "additive_quadruple_statistic: p must be prime");
    if (p > budget.quadruple_max_p) {
        fail(ErrorKind::budget, "additive_quadruple_statistic: p = " + std::to_string(p) +
                                    " exceeds the budget of " + std::to_string(budget.quadruple_max_p));
    }
    std::vector<std::size_t> h_set;
    for (std::size_t h = 0; h < p; ++h) {
        if (a[h]) h_set.push_back(h);
    }
    auto val = [&](std::size_t h) { return *a[h] % p; };
    std::uint64_t good = 0;
    for (auto h : h_set) {
        for (auto ht : h_set) {
            for (auto hu : h_set) {
                const std::size_t htu = (ht + hu + p - h) % p;
                if (!a[htu]) continue;
                if ((val(htu) + val(h) + 2 * p - val(ht) - val(hu)) % p == 0) ++good;
            }
        }
    }
    const double pd = static_cast<double>(p);
    return static_cast<double>(good) / (pd * pd * pd);
}

AffineMatch best_affine_match(std::span<const std::optional<std::uint64_t>> a) {
    const std::size_t p = a.size();
    AffineMatch best;
    std::size_t h_size = 0;
    for (const auto& v : a) h_size += v.has_value();
    if (h_size == 0) return best;
    std::vector<std::size_t> hist(p);
    for (std::uint64_t alpha = 0; alpha < p; ++alpha) {
        std::fill(hist.begin(), hist.end(), 0);
        for (std::uint64_t h = 0; h < p; ++h) {
            if (!a[h]) continue;
            ++hist[(*a[h] % p + p - mul_mod(alpha, h, p)) % p];
        }
        for (std::uint64_t beta = 0; beta < p; ++beta) {
            if (hist[beta] > best.matches) best = {alpha, beta, hist[beta], 0.0};
        }
    }
    best.fraction = static_cast<double>(best.matches) / static_cast<double>(h_size);
    return best;
}

std::vector<std::optional<std::uint64_t>> two_dimensional_example(std::uint64_t p, std::uint64_t m,
                                                                  std::uint64_t alpha,
                                                                  std::uint64_t beta) {
    require(is_prime(p), "two_dimensional_example: p must be prime");
    require(m >= 1 && 2 * m * m + m < p, "two_dimensional_example: H must embed in Z/pZ");
    std::vector<std::optional<std::uint64_t>> a(p);
    for (std::uint64_t n = 1; n <= m; ++n) {
        for (std::uint64_t k = 1; k <= m; ++k) {
            a[n + 2 * m * k] = (mul_mod(alpha, n, p) + mul_mod(beta, k, p)) % p;
        }
    }
    return a;
}

}  // namespace addcomb
