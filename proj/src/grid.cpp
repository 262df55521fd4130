#include "mdc/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mdc {

SpectralGrid::SpectralGrid(int points_per_axis, double box_length)
    : n_(points_per_axis), length_(box_length) {
    if (n_ < 2 || n_ % 2 != 0) throw std::invalid_argument("grid: points_per_axis must be even and >= 2");
    if (!(length_ > 0.0)) throw std::invalid_argument("grid: box_length must be positive");
    h_ = length_ / n_;
    dp_ = 2.0 * std::numbers::pi / length_;
    npts_ = static_cast<std::size_t>(n_) * n_ * n_;

    p2_.resize(npts_);
    lambda_.resize(npts_);
    inv_lambda_.resize(npts_);
    std::size_t flat = 0;
    for (int ix = 0; ix < n_; ++ix) {
        const double px = dp_ * mode_of_index(ix);
        for (int iy = 0; iy < n_; ++iy) {
            const double py = dp_ * mode_of_index(iy);
            for (int iz = 0; iz < n_; ++iz, ++flat) {
                const double pz = dp_ * mode_of_index(iz);
                const double q2 = px * px + py * py + pz * pz;
                p2_[flat] = q2;
                lambda_[flat] = std::sqrt(1.0 + q2);
                inv_lambda_[flat] = 1.0 / lambda_[flat];
            }
        }
    }
}

std::array<double, 3> SpectralGrid::momentum(std::size_t flat) const {
    const int iz = static_cast<int>(flat % n_);
    const int iy = static_cast<int>((flat / n_) % n_);
    const int ix = static_cast<int>(flat / (static_cast<std::size_t>(n_) * n_));
    return {dp_ * mode_of_index(ix), dp_ * mode_of_index(iy), dp_ * mode_of_index(iz)};
}

std::array<double, 3> SpectralGrid::position(std::size_t flat) const {
    const int iz = static_cast<int>(flat % n_);
    const int iy = static_cast<int>((flat / n_) % n_);
    const int ix = static_cast<int>(flat / (static_cast<std::size_t>(n_) * n_));
    return {h_ * ix, h_ * iy, h_ * iz};
}

double SpectralGrid::radius_from_center(std::size_t flat) const {
    const auto y = position(flat);
    double r2 = 0.0;
    for (int d = 0; d < 3; ++d) {
        double t = y[d] - 0.5 * length_;
        t -= length_ * std::round(t / length_);
        r2 += t * t;
    }
    return std::sqrt(r2);
}

} // namespace mdc
