#pragma once

#include "mdc/field.hpp"

#include <cstdint>

namespace mdc {

struct RandomFieldOptions {
    bool band_limited = true; // zero every mode with an axis index beyond N/3
    double decay_scale = 1.0; // coefficient envelope 1/(1 + |p/scale|^2)
    bool normalize = true;    // unit L2 norm
};

/// H^{1/2}-regular random trial field: complex Gaussian momentum coefficients
/// with a |p|^{-2} envelope, optionally band-limited.  Deterministic in seed.
/// Returned in the momentum representation.
SpinorField random_field(const SpectralGrid& grid, int ncomp, std::uint64_t seed,
                         const RandomFieldOptions& opt = {});

/// Normalize to unit L2 norm in place; throws on the zero field.
void normalize_l2(SpinorField& f);

} // namespace mdc
