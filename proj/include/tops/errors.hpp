#pragma once

#include <stdexcept>
#include <string>

namespace tops {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooShort : Error {
    using Error::Error;
};

struct NonPositiveValue : Error {
    explicit NonPositiveValue(std::size_t idx)
        : Error("non-positive value at index " + std::to_string(idx)), index(idx) {}
    std::size_t index;
};

struct DegenerateSeries : Error {
    using Error::Error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct OutOfRange : Error {
    using Error::Error;
};

struct ParityViolation : Error {
    using Error::Error;
};

struct InvalidTemperature : Error {
    using Error::Error;
};

struct UnreachableEnd : Error {
    using Error::Error;
};

struct OffsetTooLarge : Error {
    using Error::Error;
};

struct InvalidCoefficient : Error {
    using Error::Error;
};

struct LagOutOfRange : Error {
    using Error::Error;
};

struct InsufficientOverlap : Error {
    using Error::Error;
};

struct EmptySample : Error {
    using Error::Error;
};

struct GridMismatch : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace tops
