#include "mdc/halfspace.hpp"

#include "mdc/simd/kernels.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <stdexcept>

namespace mdc {

void halfline_quadrature(int n_nodes, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n_nodes < 1) throw std::invalid_argument("halfline_quadrature: need at least one node");
    gsl_integration_glfixed_table* t =
        gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n_nodes));
    nodes.resize(n_nodes);
    weights.resize(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
        double ti, wi;
        gsl_integration_glfixed_point(0.0, 1.0, static_cast<std::size_t>(i), &ti, &wi, t);
        const double om = 1.0 - ti;
        nodes[i] = ti / om;
        weights[i] = wi / (om * om);
    }
    gsl_integration_glfixed_table_free(t);
}

HalfSpaceField extend(const SpinorField& trace, int n_nodes) {
    SpinorField tm = transform(trace, Rep::Momentum);
    HalfSpaceField v{&trace.grid(), trace.ncomp(), {}, {}, tm, {}, {}};
    halfline_quadrature(n_nodes, v.x_nodes, v.x_weights);
    const auto& lam = trace.grid().lambda();
    v.values.reserve(n_nodes);
    v.dvalues.reserve(n_nodes);
    for (int j = 0; j < n_nodes; ++j) {
        SpinorField val = tm;
        SpinorField dval = tm;
        const double x = v.x_nodes[j];
        for (std::size_t i = 0; i < trace.grid().npts(); ++i) {
            const double e = std::exp(-x * lam[i]);
            for (int c = 0; c < trace.ncomp(); ++c) {
                val(i, c) *= e;
                dval(i, c) *= -lam[i] * e;
            }
        }
        v.values.push_back(std::move(val));
        v.dvalues.push_back(std::move(dval));
    }
    return v;
}

double h1_norm_optimal(const SpinorField& trace) {
    SpinorField tm = transform(trace, Rep::Momentum);
    const auto& g = trace.grid();
    // int_0^inf (lambda^2 + |p|^2 + 1) e^{-2 lambda x} dx = lambda per mode
    return g.mode_volume() *
           simd::active().weighted_norm2(tm.data(), g.lambda().data(), g.npts(), tm.ncomp());
}

SpinorField dirichlet_to_neumann(const SpinorField& trace) {
    SpinorField tm = transform(trace, Rep::Momentum);
    simd::active().apply_real_multiplier(tm.data(), tm.grid().lambda().data(), tm.grid().npts(),
                                         tm.ncomp());
    return transform(tm, trace.rep());
}

double quadrature_h1_norm(const HalfSpaceField& v) {
    const auto& g = *v.grid;
    std::vector<double> w_y(g.npts());
    for (std::size_t i = 0; i < g.npts(); ++i) w_y[i] = g.p2()[i] + 1.0;
    double total = 0.0;
    for (std::size_t j = 0; j < v.x_nodes.size(); ++j) {
        const double dx2 =
            simd::active().norm2(v.dvalues[j].data(), v.dvalues[j].size());
        const double yterm = simd::active().weighted_norm2(v.values[j].data(), w_y.data(),
                                                           g.npts(), v.ncomp);
        total += v.x_weights[j] * (dx2 + yterm);
    }
    return total * g.mode_volume();
}

void add_perturbation(HalfSpaceField& v, const SpinorField& shape,
                      const std::function<double(double)>& g,
                      const std::function<double(double)>& gp) {
    if (std::abs(g(0.0)) > 1e-14)
        throw std::invalid_argument("add_perturbation: profile must vanish at x = 0");
    SpinorField sm = transform(shape, Rep::Momentum);
    for (std::size_t j = 0; j < v.x_nodes.size(); ++j) {
        const double x = v.x_nodes[j];
        axpy(cxd{g(x), 0.0}, sm, v.values[j]);
        axpy(cxd{gp(x), 0.0}, sm, v.dvalues[j]);
    }
}

} // namespace mdc
