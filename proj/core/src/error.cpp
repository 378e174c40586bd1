#include "addcomb/error.hpp"

namespace addcomb {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::input: return "input";
        case ErrorKind::budget: return "budget";
        case ErrorKind::consistency: return "consistency";
        case ErrorKind::not_found: return "not_found";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

}  // namespace addcomb
