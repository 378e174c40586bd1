#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "addcomb/zmod.hpp"

namespace addcomb {

/// {"n": N, "re": [...], "im": [...]}
std::string to_json(const CyclicFn& f);
CyclicFn cyclic_fn_from_json(std::string_view text);

/// Little-endian u64 N followed by N (re, im) float64 pairs. Round trips are
/// bit-exact.
std::string to_binary(const CyclicFn& f);
CyclicFn cyclic_fn_from_binary(std::string_view bytes);

/// Reads either format; binary is recognised by a ".bin" extension.
CyclicFn load_cyclic_fn(const std::filesystem::path& path);
void save_cyclic_fn(const CyclicFn& f, const std::filesystem::path& path);

}  // namespace addcomb
