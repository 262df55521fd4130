#include "mdc/coulomb.hpp"

#include "mdc/fft.hpp"
#include "mdc/simd/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mdc {

namespace {

constexpr double two_pi_3half = 15.749609945722419; // (2 pi)^{3/2}

SpinorField to_complex(const RealField& f) {
    SpinorField z(*f.grid, 1, Rep::Position);
    for (std::size_t i = 0; i < f.values.size(); ++i) z(i, 0) = cxd{f.values[i], 0.0};
    return z;
}

void check_position(const SpinorField& psi) {
    if (psi.rep() != Rep::Position)
        throw std::invalid_argument("coulomb: position representation required");
    if (psi.ncomp() != 4) throw std::invalid_argument("coulomb: 4-component field required");
}

} // namespace

SpectralKernel::SpectralKernel(const SpectralGrid& grid, Profile profile)
    : grid_(&grid), profile_(profile), k_(grid.npts(), 0.0) {
    const double rc = 0.5 * grid.box_length();
    for (std::size_t i = 0; i < grid.npts(); ++i) {
        const double p2 = grid.p2()[i];
        switch (profile) {
        case Profile::PairCoulomb:
            k_[i] = p2 > 0.0 ? 4.0 * std::numbers::pi / p2 : 0.0;
            break;
        case Profile::NuclearTruncated:
            k_[i] = p2 > 0.0 ? 4.0 * std::numbers::pi * (1.0 - std::cos(std::sqrt(p2) * rc)) / p2
                             : 2.0 * std::numbers::pi * rc * rc;
            break;
        case Profile::InverseSquare:
            k_[i] = p2 > 0.0 ? 2.0 * std::numbers::pi * std::numbers::pi / std::sqrt(p2) : 0.0;
            break;
        }
    }
}

RealField SpectralKernel::position_realization() const {
    // K(y) = (1/L^3) sum_p k(p) e^{ip.y}
    SpinorField z(*grid_, 1, Rep::Momentum);
    for (std::size_t i = 0; i < grid_->npts(); ++i) z(i, 0) = cxd{k_[i] / two_pi_3half, 0.0};
    SpinorField pos = transform(z, Rep::Position);
    RealField out(*grid_);
    for (std::size_t i = 0; i < grid_->npts(); ++i) out.values[i] = pos(i, 0).real();
    return out;
}

SpectralKernel coulomb_kernel(const SpectralGrid& g) {
    return SpectralKernel(g, SpectralKernel::Profile::PairCoulomb);
}
SpectralKernel nuclear_kernel(const SpectralGrid& g) {
    return SpectralKernel(g, SpectralKernel::Profile::NuclearTruncated);
}
SpectralKernel inverse_square_kernel(const SpectralGrid& g) {
    return SpectralKernel(g, SpectralKernel::Profile::InverseSquare);
}

RealField density(const SpinorField& psi) {
    check_position(psi);
    RealField rho(psi.grid());
    for (std::size_t i = 0; i < psi.grid().npts(); ++i) {
        double s = 0.0;
        for (int c = 0; c < 4; ++c) s += std::norm(psi(i, c));
        rho.values[i] = s;
    }
    return rho;
}

std::array<RealField, 3> current(const SpinorField& psi) {
    check_position(psi);
    const auto& g = psi.grid();
    RealField rho(g);
    std::array<RealField, 3> j{RealField(g), RealField(g), RealField(g)};
    simd::active().density_current(psi.data(), rho.values.data(), j[0].values.data(),
                                   j[1].values.data(), j[2].values.data(), g.npts());
    return j;
}

RealField coulomb_convolve(const RealField& f, const SpectralKernel& kernel) {
    SpinorField z = transform(to_complex(f), Rep::Momentum);
    simd::active().apply_real_multiplier(z.data(), kernel.multiplier().data(), z.grid().npts(), 1);
    SpinorField back = transform(z, Rep::Position);
    RealField out(*f.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = back(i, 0).real();
    return out;
}

double pair_energy(const RealField& f, const RealField& g, const SpectralKernel& kernel) {
    SpinorField fm = transform(to_complex(f), Rep::Momentum);
    SpinorField gm = transform(to_complex(g), Rep::Momentum);
    const cxd s = simd::active().weighted_dot(fm.data(), gm.data(), kernel.multiplier().data(),
                                              fm.grid().npts(), 1);
    return fm.grid().mode_volume() * s.real();
}

double oracle_pair_energy(const RealField& f, const RealField& g, const SpectralKernel& kernel) {
    const auto& gr = kernel.grid();
    const int n = gr.n();
    if (n > 16) throw std::invalid_argument("oracle_pair_energy: grid too large (N <= 16)");

    // kernel realization by direct exponential sums, no FFT
    std::vector<double> K(gr.npts(), 0.0);
    for (int jx = 0; jx < n; ++jx)
        for (int jy = 0; jy < n; ++jy)
            for (int jz = 0; jz < n; ++jz) {
                double acc = 0.0;
                std::size_t flat = 0;
                for (int mx = 0; mx < n; ++mx) {
                    const int sx = gr.mode_of_index(mx);
                    for (int my = 0; my < n; ++my) {
                        const int sy = gr.mode_of_index(my);
                        for (int mz = 0; mz < n; ++mz, ++flat) {
                            const int sz = gr.mode_of_index(mz);
                            const double phase =
                                2.0 * std::numbers::pi * (sx * jx + sy * jy + sz * jz) / n;
                            acc += kernel.multiplier()[flat] * std::cos(phase);
                        }
                    }
                }
                const double L3 = gr.box_length() * gr.box_length() * gr.box_length();
                K[gr.flat_index(jx, jy, jz)] = acc / L3;
            }

    const double h6 = gr.cell_volume() * gr.cell_volume();
    double total = 0.0;
    for (int ax = 0; ax < n; ++ax)
        for (int ay = 0; ay < n; ++ay)
            for (int az = 0; az < n; ++az) {
                const double fv = f.values[gr.flat_index(ax, ay, az)];
                if (fv == 0.0) continue;
                double row = 0.0;
                for (int bx = 0; bx < n; ++bx) {
                    const int dx = (ax - bx + n) % n;
                    for (int by = 0; by < n; ++by) {
                        const int dy = (ay - by + n) % n;
                        for (int bz = 0; bz < n; ++bz) {
                            const int dz = (az - bz + n) % n;
                            row += K[gr.flat_index(dx, dy, dz)] *
                                   g.values[gr.flat_index(bx, by, bz)];
                        }
                    }
                }
                total += fv * row;
            }
    return h6 * total;
}

RealField nuclear_potential(int Z, const SpectralKernel& kernel) {
    if (Z < 1) throw std::invalid_argument("nuclear_potential: Z must be >= 1");
    const auto& g = kernel.grid();
    // delta at the box center: deltahat(p) = (2pi)^{-3/2} e^{-ip.y0}
    SpinorField z(g, 1, Rep::Momentum);
    const int n = g.n();
    std::size_t flat = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++flat) {
                const int par = g.mode_of_index(ix) + g.mode_of_index(iy) + g.mode_of_index(iz);
                const double sign = (par % 2 == 0) ? 1.0 : -1.0; // e^{-i pi (mx+my+mz)}
                z(flat, 0) = cxd{sign * kernel.multiplier()[flat] / two_pi_3half, 0.0};
            }
    SpinorField pos = transform(z, Rep::Position);
    RealField v(g);
    for (std::size_t i = 0; i < g.npts(); ++i) v.values[i] = -Z * pos(i, 0).real();
    return v;
}

double external_energy(const RealField& rho, int Z, const SpectralKernel& kernel) {
    if (Z < 1) throw std::invalid_argument("external_energy: Z must be >= 1");
    const RealField v = nuclear_potential(Z, kernel);
    double s = 0.0;
    for (std::size_t i = 0; i < rho.values.size(); ++i) s += v.values[i] * rho.values[i];
    return s * rho.grid->cell_volume();
}

double self_interaction(const SpinorField& psi, double alpha_fs, const SpectralKernel& kernel) {
    check_position(psi);
    const auto& g = psi.grid();
    RealField rho(g);
    std::array<RealField, 3> j{RealField(g), RealField(g), RealField(g)};
    simd::active().density_current(psi.data(), rho.values.data(), j[0].values.data(),
                                   j[1].values.data(), j[2].values.data(), g.npts());
    const double d_rho = pair_energy(rho, rho, kernel);
    double d_j = 0.0;
    for (int k = 0; k < 3; ++k) d_j += pair_energy(j[k], j[k], kernel);
    return 0.5 * alpha_fs * (d_rho - d_j);
}

InteractionTerms compute_interaction_terms(const SpinorField& psi_position,
                                           const SpectralKernel& interaction, const RealField* nuclear_v,
                                           bool with_self_field) {
    check_position(psi_position);
    const auto& g = psi_position.grid();
    InteractionTerms t{RealField(g),
                       {RealField(g), RealField(g), RealField(g)},
                       RealField(g),
                       {RealField(g), RealField(g), RealField(g)}};
    simd::active().density_current(psi_position.data(), t.rho.values.data(),
                                   t.current[0].values.data(), t.current[1].values.data(),
                                   t.current[2].values.data(), g.npts());

    if (with_self_field) {
        // batch (rho, J1, J2, J3) through one 4-component transform
        SpinorField pack(g, 4, Rep::Position);
        for (std::size_t i = 0; i < g.npts(); ++i) {
            pack(i, 0) = cxd{t.rho.values[i], 0.0};
            for (int k = 0; k < 3; ++k) pack(i, k + 1) = cxd{t.current[k].values[i], 0.0};
        }
        SpinorField mom = transform(pack, Rep::Momentum);
        const double dp3 = g.mode_volume();
        double d_rho = 0.0, d_j = 0.0;
        for (std::size_t i = 0; i < g.npts(); ++i) {
            const double k = interaction.multiplier()[i];
            d_rho += k * std::norm(mom(i, 0));
            d_j += k * (std::norm(mom(i, 1)) + std::norm(mom(i, 2)) + std::norm(mom(i, 3)));
        }
        t.d_rho = dp3 * d_rho;
        t.d_j = dp3 * d_j;
        simd::active().apply_real_multiplier(mom.data(), interaction.multiplier().data(), g.npts(), 4);
        SpinorField fields = transform(mom, Rep::Position);
        for (std::size_t i = 0; i < g.npts(); ++i) {
            t.phi.values[i] = fields(i, 0).real();
            for (int k = 0; k < 3; ++k) t.vec_a[k].values[i] = fields(i, k + 1).real();
        }
    }

    if (nuclear_v != nullptr) {
        double s = 0.0;
        for (std::size_t i = 0; i < g.npts(); ++i) s += nuclear_v->values[i] * t.rho.values[i];
        t.v_ext = s * g.cell_volume();
    }
    return t;
}

} // namespace mdc
