#pragma once

#include <stdexcept>
#include <string>

namespace auxinwave {

// A state escaped the physical region (rational-function pole crossed).
// Hard failure by design: never degrade to NaN.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Integration blew past the blow-up guard or produced a non-finite value.
struct InstabilityDetected : std::runtime_error {
    explicit InstabilityDetected(const std::string& what) : std::runtime_error(what) {}
};

// Peak tracking found no snapshot with a detached pulse.
struct NoPulse : std::runtime_error {
    explicit NoPulse(const std::string& what) : std::runtime_error(what) {}
};

// The 5%-of-max level is not crossed on both flanks.
struct WidthUndefined : std::runtime_error {
    explicit WidthUndefined(const std::string& what) : std::runtime_error(what) {}
};

// Root bracketing failed (bad threshold).
struct NoBracket : std::runtime_error {
    explicit NoBracket(const std::string& what) : std::runtime_error(what) {}
};

// A grid function declared "decaying" carries too much mass at the domain edges.
struct TailTooFat : std::runtime_error {
    explicit TailTooFat(const std::string& what) : std::runtime_error(what) {}
};

// The multiplier output kept a larger imaginary part than the quadrature tolerance.
struct ImaginaryLeak : std::runtime_error {
    explicit ImaginaryLeak(const std::string& what) : std::runtime_error(what) {}
};

// Requested point lies outside the truncation domain [-L, L].
struct OutOfDomain : std::runtime_error {
    explicit OutOfDomain(const std::string& what) : std::runtime_error(what) {}
};

// Fixed-point iteration failed to contract within the iteration cap.
struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

// Config file did not parse as the documented JSON schema.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Config parsed but violates a module precondition.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem read/write failure while emitting or loading artifacts.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace auxinwave
