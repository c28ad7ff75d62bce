#ifndef SIGHTCONE_ERRORS_HPP
#define SIGHTCONE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sightcone {

/// Base class for all failures raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input/geometry preconditions.
struct DegenerateDirection : Error { using Error::Error; };
struct NoSecondHit : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };
struct CollinearPoints : Error { using Error::Error; };
struct DegenerateVertex : Error { using Error::Error; };
struct InteriorPoint : Error { using Error::Error; };
struct AngleOutOfRange : Error { using Error::Error; };

// Viewpoint classification. OnPlane names the same condition where the
// caller thinks in terms of a single plane rather than a region boundary.
struct RegionBoundary : Error { using Error::Error; };   // z on a facet-plane trace
using OnPlane = RegionBoundary;
struct InsidePolytope : Error { using Error::Error; };

// Congruence machinery.
struct ApexMismatch : Error { using Error::Error; };
struct RadiusMismatch : Error { using Error::Error; };
struct SearchBudgetExceeded : Error { using Error::Error; };
struct FitFailed : Error { using Error::Error; };

// Verifier.
struct UnstableRegion : Error { using Error::Error; };
struct DegenerateSegment : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

} // namespace sightcone

#endif
