#pragma once

#include <stdexcept>
#include <string>

namespace rdex {

/// Plan / configuration problems (CLI exit 2).
struct PlanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem failures (CLI exit 3).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Required inputs absent or incomplete (CLI exit 4).
struct MissingDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unknown reference algorithm or function id (CLI exit 5).
struct BadReferenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rdex
