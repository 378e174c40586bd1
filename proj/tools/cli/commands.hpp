#pragma once

#include <ostream>

#include <addcomb/error.hpp>

namespace addcomb::cli {

/// Process exit status for each failure category.
int exit_code(ErrorKind kind) noexcept;

/// Parses argv, runs one subcommand and writes its report to out. Errors are
/// written to err as {"error": category, "message": text}.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace addcomb::cli
