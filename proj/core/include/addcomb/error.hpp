#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace addcomb {

/// Broad failure categories. The CLI maps each one to a distinct exit code.
enum class ErrorKind {
    input,        // precondition on caller-supplied data violated
    budget,       // configured work or memory budget would be exceeded
    consistency,  // an internal invariant failed (roundoff beyond slack, bug)
    not_found,    // a search finished without a result
    io,           // file or cache access failed
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

inline void require(bool condition, const std::string& message) {
    if (!condition) fail(ErrorKind::input, message);
}

}  // namespace addcomb
