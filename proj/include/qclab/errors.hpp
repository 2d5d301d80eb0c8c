#pragma once

#include <stdexcept>
#include <string>

namespace qclab {

// Error taxonomy shared across modules.  Each names the contract it guards.
struct NormalizationError : std::runtime_error { using std::runtime_error::runtime_error; };
struct TruncationError    : std::runtime_error { using std::runtime_error::runtime_error; };
struct SymmetryError      : std::runtime_error { using std::runtime_error::runtime_error; };
struct DomainError        : std::runtime_error { using std::runtime_error::runtime_error; };
struct SingularityError   : std::runtime_error { using std::runtime_error::runtime_error; };
struct IntegrationError   : std::runtime_error { using std::runtime_error::runtime_error; };
struct UnboundedNormError : std::runtime_error { using std::runtime_error::runtime_error; };
struct NotQuasiconformal  : std::runtime_error { using std::runtime_error::runtime_error; };
struct ConvergenceError   : std::runtime_error { using std::runtime_error::runtime_error; };
struct NotConformalThere  : std::runtime_error { using std::runtime_error::runtime_error; };
struct NoRootError        : std::runtime_error { using std::runtime_error::runtime_error; };
struct DimensionError     : std::runtime_error { using std::runtime_error::runtime_error; };

}  // namespace qclab
