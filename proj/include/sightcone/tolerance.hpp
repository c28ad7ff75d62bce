#ifndef SIGHTCONE_TOLERANCE_HPP
#define SIGHTCONE_TOLERANCE_HPP

#include "sightcone/errors.hpp"

namespace sightcone {

/// Single numerical policy threaded through every operation.
/// eps_abs/eps_rel guard geometric predicates; residual_max is the
/// acceptance threshold for congruence fits.
struct Tolerance {
    double eps_abs = 1e-9;
    double eps_rel = 1e-9;
    double residual_max = 1e-7;

    void validate() const {
        if (!(eps_abs > 0.0) || !(eps_rel > 0.0) || !(residual_max > 0.0))
            throw DegenerateInput("Tolerance fields must be positive");
        if (eps_abs > 1e-6)
            throw DegenerateInput("Tolerance.eps_abs must be <= 1e-6");
    }

    /// Length tolerance at the given coordinate scale.
    double len_eps(double scale = 1.0) const {
        return eps_abs + eps_rel * (scale < 0 ? -scale : scale);
    }

    bool near_zero(double v, double scale = 1.0) const {
        return (v < 0 ? -v : v) <= len_eps(scale);
    }
};

} // namespace sightcone

#endif
