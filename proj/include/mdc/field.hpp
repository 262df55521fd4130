#pragma once

#include "mdc/grid.hpp"

#include <complex>
#include <vector>

namespace mdc {

using cxd = std::complex<double>;

enum class Rep { Position, Momentum };

/// Grid-sampled function into C^ncomp (ncomp = 1, 2 or 4), stored point-major
/// (interleaved components) in either the position or momentum representation.
///
/// Momentum samples follow the continuum convention: the forward transform
/// carries h^3/(2pi)^{3/2} per raw DFT sum, the inverse dp^3/(2pi)^{3/2}, so
/// Parseval holds exactly between h^3-weighted position sums and dp^3-weighted
/// momentum sums.
class SpinorField {
public:
    SpinorField(const SpectralGrid& grid, int ncomp, Rep rep);

    const SpectralGrid& grid() const { return *grid_; }
    int ncomp() const { return ncomp_; }
    Rep rep() const { return rep_; }
    std::size_t size() const { return data_.size(); }

    cxd& operator()(std::size_t flat, int c) { return data_[flat * ncomp_ + c]; }
    const cxd& operator()(std::size_t flat, int c) const { return data_[flat * ncomp_ + c]; }
    cxd* data() { return data_.data(); }
    const cxd* data() const { return data_.data(); }

    void fill(cxd v);
    void scale(double s);
    void scale(cxd s);

private:
    const SpectralGrid* grid_;
    int ncomp_;
    Rep rep_;
    std::vector<cxd> data_;
};

/// Real scalar field in position space.
struct RealField {
    const SpectralGrid* grid;
    std::vector<double> values;

    explicit RealField(const SpectralGrid& g) : grid(&g), values(g.npts(), 0.0) {}
    /// h^3-weighted integral over the box.
    double integrate() const;
};

/// Change of representation; forward-then-inverse is the identity.
SpinorField transform(const SpinorField& field, Rep target);

/// <f|g>_{L2}: h^3 sum (position) or dp^3 sum (momentum); conjugate-linear in f.
cxd inner_l2(const SpinorField& f, const SpinorField& g);

/// <f|g>_{H^{1/2}} = dp^3 sum lambda(p) (fhat, ghat); fields are transformed
/// to momentum representation as needed.
cxd inner_h_half(const SpinorField& f, const SpinorField& g);

double norm2_l2(const SpinorField& f);
double norm2_h_half(const SpinorField& f);

/// dp^3 sum |p|^2 |fhat|^2 (gradient seminorm squared).
double norm2_grad(const SpinorField& f);

/// f += a * g (same grid/ncomp/rep).
void axpy(cxd a, const SpinorField& g, SpinorField& f);

SpinorField make_constant(const SpectralGrid& g, int ncomp, const std::vector<cxd>& value,
                          Rep rep = Rep::Position);

/// e^{i p.y} spinor with the given amplitude per component; p given by integer
/// modes so it always lies on the lattice.
SpinorField make_plane_wave(const SpectralGrid& g, int ncomp, const std::vector<cxd>& amplitude,
                            const std::array<int, 3>& modes);

} // namespace mdc
