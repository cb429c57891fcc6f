#pragma once

#include <stdexcept>
#include <string>

namespace toep {

struct ToepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Point cannot be certified off the symbol curve at maximal refinement.
struct OnCurveError : ToepError {
    using ToepError::ToepError;
};

// A test was invoked outside the hypotheses it needs (e.g. wrong band shape).
struct HypothesisError : ToepError {
    using ToepError::ToepError;
};

struct NonConvergenceError : ToepError {
    using ToepError::ToepError;
};

// Wiener-Hopf factor product failed to reproduce b - w.
struct ReconstructionError : ToepError {
    using ToepError::ToepError;
};

// Finite section is numerically singular at the query point.
struct SingularSectionError : ToepError {
    using ToepError::ToepError;
};

// Interior root count differs from the expected one.
struct MultiplicityError : ToepError {
    using ToepError::ToepError;
};

struct DerivativeVanishesError : ToepError {
    using ToepError::ToepError;
};

struct DenominatorVanishesError : ToepError {
    using ToepError::ToepError;
};

// Query point too close to the curve for stable sampling.
struct NearCurveError : ToepError {
    using ToepError::ToepError;
};

struct ConfigError : ToepError {
    using ToepError::ToepError;
};

} // namespace toep
