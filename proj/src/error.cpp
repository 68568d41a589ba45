#include "qsim/error.hpp"

namespace qsim {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NonUnitary: return "NonUnitary";
    case ErrorKind::NotBijective: return "NotBijective";
    case ErrorKind::StageDimensionMismatch: return "StageDimensionMismatch";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::EmptyWireSet: return "EmptyWireSet";
    case ErrorKind::InvalidWire: return "InvalidWire";
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::NotTwoToOne: return "NotTwoToOne";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::InvalidInstance: return "InvalidInstance";
    case ErrorKind::TriesExhausted: return "TriesExhausted";
    case ErrorKind::AttemptsExhausted: return "AttemptsExhausted";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message,
                     std::optional<std::size_t> location) {
    std::string out(to_string(kind));
    if (location) {
        out += kind == ErrorKind::ParseError || kind == ErrorKind::ValidationError
                   ? " (line " : " (at ";
        out += std::to_string(*location);
        out += ")";
    }
    out += ": ";
    out += message;
    return out;
}

} // namespace

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> location)
    : std::runtime_error(decorate(kind, message, location)), kind_(kind), location_(location) {}

} // namespace qsim
