#pragma once

#include <stdexcept>
#include <string>

namespace kdq {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : Error {
    using Error::Error;
};
struct NormalizationError : Error {
    using Error::Error;
};
struct StateError : Error {
    using Error::Error;
};
struct KrausError : Error {
    using Error::Error;
};
struct MarginalError : Error {
    using Error::Error;
};
struct OverlapError : Error {
    using Error::Error;
};
struct ParamError : Error {
    using Error::Error;
};
struct IntegrationError : Error {
    using Error::Error;
};
struct StepSizeError : Error {
    using Error::Error;
};
struct MapError : Error {
    using Error::Error;
};

}  // namespace kdq
