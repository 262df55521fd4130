#include "mdc/random_fields.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace mdc {

SpinorField random_field(const SpectralGrid& grid, int ncomp, std::uint64_t seed,
                         const RandomFieldOptions& opt) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpinorField f(grid, ncomp, Rep::Momentum);
    const int n = grid.n();
    const int band = n / 3;
    std::size_t flat = 0;
    for (int ix = 0; ix < n; ++ix) {
        const int mx = std::abs(grid.mode_of_index(ix));
        for (int iy = 0; iy < n; ++iy) {
            const int my = std::abs(grid.mode_of_index(iy));
            for (int iz = 0; iz < n; ++iz, ++flat) {
                const int mz = std::abs(grid.mode_of_index(iz));
                const bool keep = !opt.band_limited || (mx <= band && my <= band && mz <= band);
                const double s2 = opt.decay_scale * opt.decay_scale;
                const double env = keep ? 1.0 / (1.0 + grid.p2()[flat] / s2) : 0.0;
                for (int c = 0; c < ncomp; ++c) {
                    // always draw so the stream is independent of the band limit
                    const double re = gauss(rng);
                    const double im = gauss(rng);
                    f(flat, c) = env * cxd{re, im};
                }
            }
        }
    }
    if (opt.normalize) normalize_l2(f);
    return f;
}

void normalize_l2(SpinorField& f) {
    const double n2 = norm2_l2(f);
    if (!(n2 > 0.0)) throw std::invalid_argument("normalize_l2: zero field");
    f.scale(1.0 / std::sqrt(n2));
}

} // namespace mdc
