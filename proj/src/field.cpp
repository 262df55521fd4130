#include "mdc/field.hpp"

#include "mdc/fft.hpp"
#include "mdc/simd/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mdc {

namespace {

constexpr double two_pi_3half() {
    return 15.749609945722419; // (2 pi)^{3/2}
}

void check_compatible(const SpinorField& f, const SpinorField& g) {
    if (!f.grid().same_as(g.grid())) throw std::invalid_argument("field: grid mismatch");
    if (f.ncomp() != g.ncomp()) throw std::invalid_argument("field: component count mismatch");
}

} // namespace

SpinorField::SpinorField(const SpectralGrid& grid, int ncomp, Rep rep)
    : grid_(&grid), ncomp_(ncomp), rep_(rep), data_(grid.npts() * ncomp, cxd{0.0, 0.0}) {
    if (ncomp != 1 && ncomp != 2 && ncomp != 4)
        throw std::invalid_argument("field: ncomp must be 1, 2 or 4");
}

void SpinorField::fill(cxd v) {
    for (auto& z : data_) z = v;
}

void SpinorField::scale(double s) {
    for (auto& z : data_) z *= s;
}

void SpinorField::scale(cxd s) {
    for (auto& z : data_) z *= s;
}

double RealField::integrate() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * grid->cell_volume();
}

SpinorField transform(const SpinorField& field, Rep target) {
    if (field.rep() == target) return field;
    const auto& g = field.grid();
    SpinorField out(g, field.ncomp(), target);
    std::copy(field.data(), field.data() + field.size(), out.data());
    if (target == Rep::Momentum) {
        fft::dft3(g.n(), field.ncomp(), out.data(), -1);
        out.scale(g.cell_volume() / two_pi_3half());
    } else {
        fft::dft3(g.n(), field.ncomp(), out.data(), +1);
        out.scale(g.mode_volume() / two_pi_3half());
    }
    return out;
}

cxd inner_l2(const SpinorField& f, const SpinorField& g) {
    check_compatible(f, g);
    if (f.rep() != g.rep()) {
        SpinorField gg = transform(g, f.rep());
        return inner_l2(f, gg);
    }
    const double w = f.rep() == Rep::Position ? f.grid().cell_volume() : f.grid().mode_volume();
    return w * simd::active().dot(f.data(), g.data(), f.size());
}

cxd inner_h_half(const SpinorField& f, const SpinorField& g) {
    check_compatible(f, g);
    SpinorField fm = transform(f, Rep::Momentum);
    SpinorField gm = transform(g, Rep::Momentum);
    return fm.grid().mode_volume() *
           simd::active().weighted_dot(fm.data(), gm.data(), fm.grid().lambda().data(),
                                       fm.grid().npts(), fm.ncomp());
}

double norm2_l2(const SpinorField& f) {
    const double w = f.rep() == Rep::Position ? f.grid().cell_volume() : f.grid().mode_volume();
    return w * simd::active().norm2(f.data(), f.size());
}

double norm2_h_half(const SpinorField& f) {
    SpinorField fm = transform(f, Rep::Momentum);
    return fm.grid().mode_volume() * simd::active().weighted_norm2(fm.data(),
                                                                   fm.grid().lambda().data(),
                                                                   fm.grid().npts(), fm.ncomp());
}

double norm2_grad(const SpinorField& f) {
    SpinorField fm = transform(f, Rep::Momentum);
    return fm.grid().mode_volume() *
           simd::active().weighted_norm2(fm.data(), fm.grid().p2().data(), fm.grid().npts(),
                                         fm.ncomp());
}

void axpy(cxd a, const SpinorField& g, SpinorField& f) {
    check_compatible(f, g);
    if (f.rep() != g.rep()) throw std::invalid_argument("axpy: representation mismatch");
    simd::active().axpy(a, g.data(), f.data(), f.size());
}

SpinorField make_constant(const SpectralGrid& g, int ncomp, const std::vector<cxd>& value,
                          Rep rep) {
    if (static_cast<int>(value.size()) != ncomp)
        throw std::invalid_argument("make_constant: value size != ncomp");
    SpinorField f(g, ncomp, Rep::Position);
    for (std::size_t i = 0; i < g.npts(); ++i)
        for (int c = 0; c < ncomp; ++c) f(i, c) = value[c];
    return rep == Rep::Position ? f : transform(f, rep);
}

SpinorField make_plane_wave(const SpectralGrid& g, int ncomp, const std::vector<cxd>& amplitude,
                            const std::array<int, 3>& modes) {
    if (static_cast<int>(amplitude.size()) != ncomp)
        throw std::invalid_argument("make_plane_wave: amplitude size != ncomp");
    SpinorField f(g, ncomp, Rep::Position);
    const double k = 2.0 * std::numbers::pi / g.n();
    for (int ix = 0; ix < g.n(); ++ix)
        for (int iy = 0; iy < g.n(); ++iy)
            for (int iz = 0; iz < g.n(); ++iz) {
                const double phase = k * (modes[0] * ix + modes[1] * iy + modes[2] * iz);
                const cxd e = std::polar(1.0, phase);
                const std::size_t flat = g.flat_index(ix, iy, iz);
                for (int c = 0; c < ncomp; ++c) f(flat, c) = amplitude[c] * e;
            }
    return f;
}

} // namespace mdc
