#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qsim {

enum class ErrorKind {
    DimensionMismatch,
    NonFinite,
    NonUnitary,
    NotBijective,
    StageDimensionMismatch,
    ResourceLimit,
    NotNormalized,
    EmptyWireSet,
    InvalidWire,
    MalformedTable,
    NotTwoToOne,
    NotInvertible,
    NotCoprime,
    InvalidInstance,
    TriesExhausted,
    AttemptsExhausted,
    InvalidInput,
    ParseError,
    ValidationError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library. The kind is the stable part of the
/// contract; the message is for humans. `location` carries a stage index or a
/// 1-based line number where the kind calls for one.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message,
          std::optional<std::size_t> location = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<std::size_t> location() const noexcept { return location_; }

private:
    ErrorKind kind_;
    std::optional<std::size_t> location_;
};

} // namespace qsim
