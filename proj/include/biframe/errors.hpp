#pragma once

#include <stdexcept>
#include <string>

namespace biframe {

// Incompatible algebra dimensions, module spaces, or family lengths.
struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// A mathematical precondition does not hold for the given input
// (not a frame, not a biframe, operator not invertible, ...).
struct PreconditionFailed : std::invalid_argument {
    explicit PreconditionFailed(const std::string& what) : std::invalid_argument(what) {}
};

// A constructed identity failed to verify within tolerance.
struct NumericalBreakdown : std::runtime_error {
    explicit NumericalBreakdown(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; `path` is the JSON pointer of the offending field.
struct SchemaError : std::runtime_error {
    std::string path;
    SchemaError(const std::string& json_path, const std::string& what)
        : std::runtime_error(json_path + ": " + what), path(json_path) {}
};

}  // namespace biframe
