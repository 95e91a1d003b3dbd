#pragma once

#include <stdexcept>
#include <string>

namespace locgh {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownPoint : ValidationError {
    using ValidationError::ValidationError;
};
struct SpaceMismatch : ValidationError {
    using ValidationError::ValidationError;
};
struct RootMismatch : ValidationError {
    using ValidationError::ValidationError;
};
struct MissingRoot : ValidationError {
    using ValidationError::ValidationError;
};
struct KindMismatch : ValidationError {
    using ValidationError::ValidationError;
};
struct InvalidCorrespondence : ValidationError {
    using ValidationError::ValidationError;
};
struct MalformedCurve : ValidationError {
    using ValidationError::ValidationError;
};
struct MalformedJumps : ValidationError {
    using ValidationError::ValidationError;
};
struct NotIsometric : ValidationError {
    using ValidationError::ValidationError;
};
struct UnknownKind : ValidationError {
    using ValidationError::ValidationError;
};
struct EmptySet : ValidationError {
    using ValidationError::ValidationError;
};
struct TooLargeForExact : ValidationError {
    using ValidationError::ValidationError;
};
struct AxiomFailure : ValidationError {
    using ValidationError::ValidationError;
};
struct NotConvergent : ValidationError {
    using ValidationError::ValidationError;
};

// Internal assertion: a gluing produced a non-metric. Never expected.
struct MetricAxiomFailure : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace locgh
