#pragma once

#include "mdc/field.hpp"

#include <functional>
#include <vector>

namespace mdc {

/// Validation layer for the half-space picture: the canonical extension
/// v(x,y) = F^{-1}_y(uhat(p) e^{-x lambda(p)}) of a boundary trace, its
/// H^1(R^4_+) energy, and the Dirichlet-to-Neumann map.  The solver itself
/// works purely on traces; nothing here appears on its hot path.
struct HalfSpaceField {
    const SpectralGrid* grid;
    int ncomp;
    std::vector<double> x_nodes;   // quadrature nodes on (0, inf)
    std::vector<double> x_weights; // matching weights
    SpinorField trace;             // momentum representation, value at x = 0
    // momentum-representation samples and exact x-derivatives per node
    std::vector<SpinorField> values;
    std::vector<SpinorField> dvalues;
};

/// Mapped Gauss-Legendre rule on (0, inf) via x = t/(1-t).
void halfline_quadrature(int n_nodes, std::vector<double>& nodes, std::vector<double>& weights);

/// Canonical per-mode exponential extension of a trace.
HalfSpaceField extend(const SpinorField& trace, int n_nodes = 64);

/// sum_p dp^3 lambda(p) |uhat(p)|^2 via the closed-form x-integral
/// (lambda^2 + |p|^2 + 1)/(2 lambda) = lambda per mode; equals the squared
/// H^{1/2} trace norm.
double h1_norm_optimal(const SpinorField& trace);

/// T u = -d/dx of the canonical extension at x = 0; equals sqrt(-Delta+1) u.
SpinorField dirichlet_to_neumann(const SpinorField& trace);

/// Numerical iint (|d_x v|^2 + |grad_y v|^2 + |v|^2): spectral in y, the
/// configured quadrature in x.
double quadrature_h1_norm(const HalfSpaceField& v);

/// v += profile g(x) * shape(p); g must vanish at x = 0, gp is its derivative.
void add_perturbation(HalfSpaceField& v, const SpinorField& shape,
                      const std::function<double(double)>& g,
                      const std::function<double(double)>& gp);

} // namespace mdc
