#pragma once

#include <stdexcept>
#include <string>

namespace degdist {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoSignChange : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct SingularJacobian : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct DivisionByZeroValuation : Error { using Error::Error; };
struct NonzeroValuation : Error { using Error::Error; };
struct NotContracting : Error { using Error::Error; };
struct VariableMismatch : Error { using Error::Error; };
struct OutsideDisk : Error { using Error::Error; };
struct BeyondSingularity : Error { using Error::Error; };
struct BranchLost : Error { using Error::Error; };
struct NegativeDiscriminant : Error { using Error::Error; };
struct LogDomain : Error { using Error::Error; };
struct SaddleOutOfRange : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

}  // namespace degdist
