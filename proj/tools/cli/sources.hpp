#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <addcomb/ap_forms.hpp>
#include <addcomb/zmod.hpp>

#include "cli/config.hpp"

namespace addcomb::cli {

/// Function sources on Z/NZ:
///   file:PATH            JSON or .bin CyclicFn (its own modulus must equal N)
///   const:RE[,IM]        constant
///   interval:A:B         indicator of the residues A..B
///   random[:SEED]        uniform real values in [0, 1]
///   random-complex[:SEED] uniform in the square of half-side 1/sqrt 2
///   phase:C0,C1,...      e_N(C0 + C1 x + C2 x^2 + ...)
///   mangoldt             Lambda(x) for x in [0, N)
///   mangoldt-class:W:B   Lambda restricted to W n + B and rescaled by phi(W)/W,
///                        where W is the product of primes <= the given w;
///                        the result lives on Z/floor(N/W)Z
/// SEED defaults to the run seed.
CyclicFn load_function(const std::string& spec, std::size_t modulus, const RunConfig& cfg);

/// Integer-set sources in [1, N]:
///   file:PATH            whitespace or comma separated integers
///   list:A,B,...         explicit elements
///   interval:A:B         A..B
///   random:DENSITY[:SEED] each n kept with probability DENSITY
///   primes | odd | powers2
IntSet load_set(const std::string& spec, std::int64_t bound, const RunConfig& cfg);

/// Splits "a:b:c" on the separator.
std::vector<std::string> split(const std::string& text, char sep);

}  // namespace addcomb::cli
