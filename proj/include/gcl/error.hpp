#pragma once

#include <stdexcept>
#include <string>

namespace gcl {

// Error taxonomy, one class per process exit code.
//
//   UsageError    -> exit 1   caller misuse (bad flags, mismatched index sets)
//   InputError    -> exit 2   mathematically invalid input (bad shape/spectrum,
//                             point outside the polytope, non-face edge set,
//                             non-monotone spectrum where one is required)
//   LimitError    -> exit 2   a configured guard was exceeded (enumeration
//                             size/time, oracle dimension); no partial output
//   InternalError -> exit 3   a cross-check or invariant failed; indicates a
//                             bug, never bad input

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

struct LimitError : std::runtime_error {
    explicit LimitError(const std::string& what) : std::runtime_error(what) {}
};

struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace gcl
