#include "mdc/dirac.hpp"

#include "mdc/simd/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace mdc {

namespace {

const cxd I{0.0, 1.0};

// sigma.n acting on a 2-spinor (a1, a2):
//   out1 = n3 a1 + (n1 - i n2) a2
//   out2 = (n1 + i n2) a1 - n3 a2
inline void sigma_dot(const std::array<double, 3>& n, cxd a1, cxd a2, cxd& o1, cxd& o2) {
    const cxd off{n[0], -n[1]};
    o1 = n[2] * a1 + off * a2;
    o2 = std::conj(off) * a1 - n[2] * a2;
}

Mat4 compose_blocks(const Mat2& tl, const Mat2& tr, const Mat2& bl, const Mat2& br) {
    Mat4 m{};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            m[r * 4 + c] = tl[r * 2 + c];
            m[r * 4 + c + 2] = tr[r * 2 + c];
            m[(r + 2) * 4 + c] = bl[r * 2 + c];
            m[(r + 2) * 4 + c + 2] = br[r * 2 + c];
        }
    return m;
}

} // namespace

const DiracMatrices& dirac_matrices() {
    static const DiracMatrices dm = [] {
        DiracMatrices d;
        d.sigma[0] = {cxd{0, 0}, cxd{1, 0}, cxd{1, 0}, cxd{0, 0}};
        d.sigma[1] = {cxd{0, 0}, -I, I, cxd{0, 0}};
        d.sigma[2] = {cxd{1, 0}, cxd{0, 0}, cxd{0, 0}, cxd{-1, 0}};
        const Mat2 zero{};
        const Mat2 id{cxd{1, 0}, cxd{0, 0}, cxd{0, 0}, cxd{1, 0}};
        Mat2 neg_id = id;
        for (auto& z : neg_id) z = -z;
        for (int k = 0; k < 3; ++k) d.alpha[k] = compose_blocks(zero, d.sigma[k], d.sigma[k], zero);
        d.beta = compose_blocks(id, zero, zero, neg_id);
        return d;
    }();
    return dm;
}

FwFactors fw_factors(const std::array<double, 3>& p) {
    FwFactors f;
    const double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    f.lambda = std::sqrt(1.0 + p2);
    f.a_plus = std::sqrt(0.5 * (1.0 + 1.0 / f.lambda));
    f.a_minus = std::sqrt(0.5 * (1.0 - 1.0 / f.lambda));
    if (p2 > 0.0) {
        const double ip = 1.0 / std::sqrt(p2);
        f.unit = {p[0] * ip, p[1] * ip, p[2] * ip};
    } else {
        // a_minus(0) = 0 multiplies the singular direction away; U(0) = I4.
        f.unit = {0.0, 0.0, 0.0};
    }
    return f;
}

FwSymbol fw_symbol_at(const std::array<double, 3>& p) {
    const FwFactors f = fw_factors(p);
    FwSymbol s;
    s.lambda = f.lambda;
    s.a_plus = f.a_plus;
    s.a_minus = f.a_minus;
    s.unit = f.unit;

    Mat2 sn{}; // sigma.unit
    const auto& d = dirac_matrices();
    for (int k = 0; k < 3; ++k)
        for (int e = 0; e < 4; ++e) sn[e] += f.unit[k] * d.sigma[k][e];
    Mat2 id{cxd{1, 0}, cxd{0, 0}, cxd{0, 0}, cxd{1, 0}};
    Mat2 ap_id = id, neg_sn = sn;
    for (auto& z : ap_id) z *= f.a_plus;
    for (auto& z : neg_sn) z = -z;
    Mat2 am_sn = sn, am_neg_sn = neg_sn;
    for (auto& z : am_sn) z *= f.a_minus;
    for (auto& z : am_neg_sn) z *= f.a_minus;
    // U = a+ I + a- [[0, sn], [-sn, 0]]
    s.U = compose_blocks(ap_id, am_sn, am_neg_sn, ap_id);
    Mat2 m_am_sn = am_sn, m_am_neg_sn = am_neg_sn;
    for (auto& z : m_am_sn) z = -z;
    for (auto& z : m_am_neg_sn) z = -z;
    s.Uinv = compose_blocks(ap_id, m_am_sn, m_am_neg_sn, ap_id);
    return s;
}

namespace {

enum class ModeOp { FwForward, FwInverse, ProjPlus, ProjMinus, FreeDirac };

void per_mode_apply(SpinorField& mom, ModeOp op) {
    const auto& g = mom.grid();
    cxd* z = mom.data();
    for (std::size_t i = 0; i < g.npts(); ++i) {
        const auto p = g.momentum(i);
        const FwFactors f = fw_factors(p);
        cxd u1 = z[4 * i], u2 = z[4 * i + 1], l1 = z[4 * i + 2], l2 = z[4 * i + 3];
        switch (op) {
        case ModeOp::FwForward: {
            cxd sl1, sl2, su1, su2;
            sigma_dot(f.unit, l1, l2, sl1, sl2);
            sigma_dot(f.unit, u1, u2, su1, su2);
            z[4 * i] = f.a_plus * u1 + f.a_minus * sl1;
            z[4 * i + 1] = f.a_plus * u2 + f.a_minus * sl2;
            z[4 * i + 2] = f.a_plus * l1 - f.a_minus * su1;
            z[4 * i + 3] = f.a_plus * l2 - f.a_minus * su2;
            break;
        }
        case ModeOp::FwInverse: {
            cxd sl1, sl2, su1, su2;
            sigma_dot(f.unit, l1, l2, sl1, sl2);
            sigma_dot(f.unit, u1, u2, su1, su2);
            z[4 * i] = f.a_plus * u1 - f.a_minus * sl1;
            z[4 * i + 1] = f.a_plus * u2 - f.a_minus * sl2;
            z[4 * i + 2] = f.a_plus * l1 + f.a_minus * su1;
            z[4 * i + 3] = f.a_plus * l2 + f.a_minus * su2;
            break;
        }
        case ModeOp::ProjPlus:
        case ModeOp::ProjMinus: {
            // U, keep one FW block, U^{-1}
            cxd sl1, sl2, su1, su2;
            sigma_dot(f.unit, l1, l2, sl1, sl2);
            sigma_dot(f.unit, u1, u2, su1, su2);
            cxd fu1 = f.a_plus * u1 + f.a_minus * sl1;
            cxd fu2 = f.a_plus * u2 + f.a_minus * sl2;
            cxd fl1 = f.a_plus * l1 - f.a_minus * su1;
            cxd fl2 = f.a_plus * l2 - f.a_minus * su2;
            if (op == ModeOp::ProjPlus) {
                fl1 = fl2 = cxd{0.0, 0.0};
            } else {
                fu1 = fu2 = cxd{0.0, 0.0};
            }
            cxd tl1, tl2, tu1, tu2;
            sigma_dot(f.unit, fl1, fl2, tl1, tl2);
            sigma_dot(f.unit, fu1, fu2, tu1, tu2);
            z[4 * i] = f.a_plus * fu1 - f.a_minus * tl1;
            z[4 * i + 1] = f.a_plus * fu2 - f.a_minus * tl2;
            z[4 * i + 2] = f.a_plus * fl1 + f.a_minus * tu1;
            z[4 * i + 3] = f.a_plus * fl2 + f.a_minus * tu2;
            break;
        }
        case ModeOp::FreeDirac: {
            // (alpha.p + beta): upper' = sigma.p lower + upper, lower' = sigma.p upper - lower
            cxd sl1, sl2, su1, su2;
            sigma_dot({p[0], p[1], p[2]}, l1, l2, sl1, sl2);
            sigma_dot({p[0], p[1], p[2]}, u1, u2, su1, su2);
            z[4 * i] = sl1 + u1;
            z[4 * i + 1] = sl2 + u2;
            z[4 * i + 2] = su1 - l1;
            z[4 * i + 3] = su2 - l2;
            break;
        }
        }
    }
}

SpinorField with_mode_op(const SpinorField& field, ModeOp op) {
    if (field.ncomp() != 4) throw std::invalid_argument("dirac: 4-component field required");
    SpinorField mom = transform(field, Rep::Momentum);
    per_mode_apply(mom, op);
    return transform(mom, field.rep());
}

} // namespace

SpinorField fw_transform(const SpinorField& field, FwDirection dir) {
    return with_mode_op(field, dir == FwDirection::Forward ? ModeOp::FwForward : ModeOp::FwInverse);
}

void fw_rotate_momentum(SpinorField& mom, FwDirection dir) {
    if (mom.ncomp() != 4 || mom.rep() != Rep::Momentum)
        throw std::invalid_argument("fw_rotate_momentum: 4-component momentum field required");
    per_mode_apply(mom, dir == FwDirection::Forward ? ModeOp::FwForward : ModeOp::FwInverse);
}

SpinorField project(const SpinorField& field, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("project: sign must be +1 or -1");
    return with_mode_op(field, sign > 0 ? ModeOp::ProjPlus : ModeOp::ProjMinus);
}

SpinorField apply_sqrt_operator(const SpinorField& field) {
    SpinorField mom = transform(field, Rep::Momentum);
    simd::active().apply_real_multiplier(mom.data(), mom.grid().lambda().data(), mom.grid().npts(),
                                         mom.ncomp());
    return transform(mom, field.rep());
}

SpinorField apply_free_dirac(const SpinorField& field) {
    return with_mode_op(field, ModeOp::FreeDirac);
}

SpinorField join_blocks(const SpinorField& upper, const SpinorField& lower) {
    if (!upper.grid().same_as(lower.grid()) || upper.ncomp() != 2 || lower.ncomp() != 2 ||
        upper.rep() != lower.rep())
        throw std::invalid_argument("join_blocks: need two compatible 2-component fields");
    SpinorField f(upper.grid(), 4, upper.rep());
    for (std::size_t i = 0; i < upper.grid().npts(); ++i) {
        f(i, 0) = upper(i, 0);
        f(i, 1) = upper(i, 1);
        f(i, 2) = lower(i, 0);
        f(i, 3) = lower(i, 1);
    }
    return f;
}

std::array<SpinorField, 2> split_blocks(const SpinorField& four) {
    if (four.ncomp() != 4) throw std::invalid_argument("split_blocks: 4-component field required");
    SpinorField up(four.grid(), 2, four.rep());
    SpinorField lo(four.grid(), 2, four.rep());
    for (std::size_t i = 0; i < four.grid().npts(); ++i) {
        up(i, 0) = four(i, 0);
        up(i, 1) = four(i, 1);
        lo(i, 0) = four(i, 2);
        lo(i, 1) = four(i, 3);
    }
    return {std::move(up), std::move(lo)};
}

} // namespace mdc
