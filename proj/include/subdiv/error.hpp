#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subdiv {

enum class ErrorKind {
    // validation
    DanglingEdge,
    NonManifold,
    Disconnected,
    InvalidEdge,
    InvalidFace,
    InconsistentOrientation,
    InvalidDocument,
    UnknownVertex,
    NotInterior,
    BoundaryVertex,
    NotAnAnnulus,
    NotARing,
    InvalidMarking,
    HasBoundary,
    UnknownTileType,
    UnknownEdgeType,
    EdgeMismatch,
    NotADisk,
    MissingTileType,
    GluingFailure,
    CarrierMismatch,
    NotATriangulatedDisk,
    NotNested,
    Overlapping,
    NonPositive,
    InvalidArgument,
    // solver
    NoPath,
    IterationLimit,
    TooLarge,
    // io
    IoError,
};

enum class ErrorCategory { validation, solver, io };

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::DanglingEdge: return "DanglingEdge";
    case ErrorKind::NonManifold: return "NonManifold";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::InvalidEdge: return "InvalidEdge";
    case ErrorKind::InvalidFace: return "InvalidFace";
    case ErrorKind::InconsistentOrientation: return "InconsistentOrientation";
    case ErrorKind::InvalidDocument: return "InvalidDocument";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::NotInterior: return "NotInterior";
    case ErrorKind::BoundaryVertex: return "BoundaryVertex";
    case ErrorKind::NotAnAnnulus: return "NotAnAnnulus";
    case ErrorKind::NotARing: return "NotARing";
    case ErrorKind::InvalidMarking: return "InvalidMarking";
    case ErrorKind::HasBoundary: return "HasBoundary";
    case ErrorKind::UnknownTileType: return "UnknownTileType";
    case ErrorKind::UnknownEdgeType: return "UnknownEdgeType";
    case ErrorKind::EdgeMismatch: return "EdgeMismatch";
    case ErrorKind::NotADisk: return "NotADisk";
    case ErrorKind::MissingTileType: return "MissingTileType";
    case ErrorKind::GluingFailure: return "GluingFailure";
    case ErrorKind::CarrierMismatch: return "CarrierMismatch";
    case ErrorKind::NotATriangulatedDisk: return "NotATriangulatedDisk";
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::Overlapping: return "Overlapping";
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NoPath: return "NoPath";
    case ErrorKind::IterationLimit: return "IterationLimit";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

constexpr ErrorCategory category_of(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NoPath:
    case ErrorKind::IterationLimit:
    case ErrorKind::TooLarge:
        return ErrorCategory::solver;
    case ErrorKind::IoError:
        return ErrorCategory::io;
    default:
        return ErrorCategory::validation;
    }
}

// Every failure in the library is reported as an Error carrying its kind;
// the CLI maps the kind's category onto an exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] ErrorCategory category() const noexcept { return category_of(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace subdiv
