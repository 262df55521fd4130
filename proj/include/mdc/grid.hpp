#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace mdc {

/// Periodic box [0,L)^3 sampled on an N^3 lattice, N even, with the signed
/// momentum lattice p in (2pi/L) {-N/2, ..., N/2-1}^3 (negative Nyquist
/// convention).  Position integrals are h^3 * sums, momentum integrals are
/// dp^3 * sums; with the symmetric (2pi)^{-3/2} Fourier convention this makes
/// the continuum multiplier calculus apply verbatim to sampled transforms.
class SpectralGrid {
public:
    SpectralGrid(int points_per_axis, double box_length);

    int n() const { return n_; }
    double box_length() const { return length_; }
    std::size_t npts() const { return npts_; }
    double spacing() const { return h_; }
    double cell_volume() const { return h_ * h_ * h_; }
    double dp() const { return dp_; }
    double mode_volume() const { return dp_ * dp_ * dp_; }

    /// Signed integer mode for axis index i in [0,N).
    int mode_of_index(int i) const { return i < n_ / 2 ? i : i - n_; }

    std::size_t flat_index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * n_ + iy) * n_ + iz;
    }

    std::array<double, 3> momentum(std::size_t flat) const;
    std::array<double, 3> position(std::size_t flat) const;

    /// Grid node at the box center (the nucleus site); N even puts it on a node.
    std::size_t center_index() const { return flat_index(n_ / 2, n_ / 2, n_ / 2); }

    /// Minimum-image distance from the box center.
    double radius_from_center(std::size_t flat) const;

    /// |p|^2 per flat index.
    const std::vector<double>& p2() const { return p2_; }
    /// lambda(p) = sqrt(1 + |p|^2) per flat index.
    const std::vector<double>& lambda() const { return lambda_; }
    /// 1 / lambda(p).
    const std::vector<double>& inv_lambda() const { return inv_lambda_; }

    bool same_as(const SpectralGrid& other) const {
        return n_ == other.n_ && length_ == other.length_;
    }

private:
    int n_;
    double length_;
    double h_;
    double dp_;
    std::size_t npts_;
    std::vector<double> p2_;
    std::vector<double> lambda_;
    std::vector<double> inv_lambda_;
};

} // namespace mdc
