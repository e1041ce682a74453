#pragma once
#include <stdexcept>
#include <string>

namespace vlim {

// Base for all typed failures raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define VLIM_DEFINE_ERROR(Name)                                        \
    struct Name : Error {                                              \
        explicit Name(const std::string& what)                         \
            : Error(std::string(#Name) + ": " + what) {}               \
    }

VLIM_DEFINE_ERROR(NonZeroMean);         // source term has a nonvanishing grid mean
VLIM_DEFINE_ERROR(LatticeSingularity);  // kernel evaluated on (or too close to) a lattice point
VLIM_DEFINE_ERROR(UnderResolved);       // grid spacing too coarse for the requested scale
VLIM_DEFINE_ERROR(BadExponent);         // exponent outside its admissible range
VLIM_DEFINE_ERROR(CflViolation);        // advective step exceeds the stability bound
VLIM_DEFINE_ERROR(BlowupDetected);      // field magnitude left the trust region mid-run
VLIM_DEFINE_ERROR(NotDivergenceFree);   // velocity input fails the solenoidal check
VLIM_DEFINE_ERROR(WindowMismatch);      // requested time outside the stored trajectory window
VLIM_DEFINE_ERROR(InterpolationGap);    // stored snapshots too sparse for the requested step
VLIM_DEFINE_ERROR(MismatchedClouds);    // particle clouds differ in size or anchoring
VLIM_DEFINE_ERROR(TailNotResolved);     // too much quadrature mass maps outside the velocity hull
VLIM_DEFINE_ERROR(UnderResolvedShift);  // velocity-shift magnitude incompatible with the grid
VLIM_DEFINE_ERROR(HydrodynamicRHS);     // right-hand side has a hydrodynamic component it must not
VLIM_DEFINE_ERROR(MissingOperatorCache);// operator cache absent where reuse was requested
VLIM_DEFINE_ERROR(DomainError);         // argument outside the function's domain
VLIM_DEFINE_ERROR(ValidationError);     // configuration value violates a documented constraint
VLIM_DEFINE_ERROR(MissingReport);       // downstream step requires a report that was not produced

#undef VLIM_DEFINE_ERROR

// Parse failures carry the 1-based line number of the offending input line.
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& what)
        : Error("ParseError: line " + std::to_string(line_) + ": " + what), line(line_) {}
};

} // namespace vlim
