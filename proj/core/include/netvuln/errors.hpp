#pragma once

#include <stdexcept>
#include <string>

namespace netvuln {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// parameter domain violations
struct EpsOutOfRange : Error { using Error::Error; };
struct POutOfRange : Error { using Error::Error; };
struct GammaZeroError : Error { using Error::Error; };
struct GammaRangeError : Error { using Error::Error; };
struct AffineRuleError : Error { using Error::Error; };
struct UnorderedRulesError : Error { using Error::Error; };
struct PZeroError : Error { using Error::Error; };
struct TooFewAliveError : Error { using Error::Error; };
struct EmptyDegreeSequence : Error { using Error::Error; };
struct SubcriticalError : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// numerical failures (CLI exit code 3)
struct NoConvergenceError : Error { using Error::Error; };
struct QuadratureTolError : Error { using Error::Error; };
struct InconclusiveError : Error { using Error::Error; };

// configuration failures (CLI exit code 2)
struct ConfigError : Error { using Error::Error; };

}  // namespace netvuln
