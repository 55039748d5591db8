#ifndef DIOPOP_ERRORS_HPP
#define DIOPOP_ERRORS_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace diopop {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter tuple violates a construction invariant (negative entry, a+b = 0, ...).
struct InvalidParams : Error {
    using Error::Error;
};

// Division whose denominator is exactly zero, named after the offending quantity.
struct ZeroDenominator : Error {
    explicit ZeroDenominator(std::string which_)
        : Error("zero denominator: " + which_), which(std::move(which_)) {}
    std::string which;
};

// The evolution map is 0/0 at the requested point.
struct UndefinedImage : Error {
    explicit UndefinedImage(char coordinate_, std::optional<std::size_t> step_ = std::nullopt)
        : Error(std::string("map undefined in ") + coordinate_ + "-coordinate" +
                (step_ ? " at step " + std::to_string(*step_) : std::string())),
          coordinate(coordinate_), step(step_) {}
    char coordinate;
    std::optional<std::size_t> step;
};

// A quadrant coordinate exceeded the divergence threshold Tolerance::big.
struct OverflowError : Error {
    using Error::Error;
};

// Odds transform requested at x = 1 or y = 1.
struct BoundaryState : Error {
    using Error::Error;
};

struct NotAFixedPoint : Error {
    using Error::Error;
};

struct NotSymmetric : Error {
    using Error::Error;
};

// Operation requires the exact rational backend.
struct BackendMismatch : Error {
    using Error::Error;
};

struct NotApplicable : Error {
    using Error::Error;
};

// A single ray of a boundary search found no verdict change; recorded, rarely thrown.
struct NoBracket : Error {
    using Error::Error;
};

// Exact rational operands outgrew the configured bit budget.
struct ResourceLimit : Error {
    explicit ResourceLimit(std::size_t bits_, std::size_t limit_, std::size_t step_)
        : Error("rational operand reached " + std::to_string(bits_) + " bits (limit " +
                std::to_string(limit_) + ") at step " + std::to_string(step_)),
          bits(bits_), limit(limit_), step(step_) {}
    std::size_t bits;
    std::size_t limit;
    std::size_t step;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace diopop

#endif
