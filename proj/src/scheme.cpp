#include "kljn/scheme.hpp"

#include "kljn/circuit.hpp"
#include "kljn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace kljn {

namespace {

void require_positive(double v, const char* what) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw DomainError(std::string(what) + " must be positive and finite");
    }
}

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

// Gaussian elimination with scaled partial pivoting. Rows of the VMG system
// differ by many orders of magnitude (ohm^2 vs ohm^0), so each row is
// normalised by its largest coefficient first.
Vec3 solve3(Mat3 a, Vec3 b) {
    for (int r = 0; r < 3; ++r) {
        double scale = 0.0;
        for (double v : a[r]) scale = std::max(scale, std::abs(v));
        if (scale == 0.0) throw ConfigurationError("VMG level system is singular (zero row)");
        for (double& v : a[r]) v /= scale;
        b[r] /= scale;
    }
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) < 1e-13) {
            throw ConfigurationError("VMG level system is singular for this resistor quad");
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = col + 1; r < 3; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    Vec3 x{};
    for (int r = 2; r >= 0; --r) {
        double acc = b[r];
        for (int c = r + 1; c < 3; ++c) acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

// Each side of the three equalities, split into its two additive terms so the
// residual can be normalised by the total magnitude involved.
struct SideTerms {
    double hl_a, hl_b, lh_a, lh_b;

    [[nodiscard]] double residual() const {
        const double lhs = hl_a + hl_b;
        const double rhs = lh_a + lh_b;
        const double mag = std::abs(hl_a) + std::abs(hl_b) + std::abs(lh_a) + std::abs(lh_b);
        return mag == 0.0 ? 0.0 : std::abs(lhs - rhs) / mag;
    }
};

}  // namespace

void ResistorQuad::validate() const {
    for (double r : {r_ha, r_la, r_hb, r_lb}) {
        if (!std::isfinite(r) || r <= 0.0) {
            throw InvalidQuadError("all four resistances must be positive and finite");
        }
    }
    if (!(r_ha > r_la)) throw InvalidQuadError("R_HA must exceed R_LA");
    if (!(r_hb > r_lb)) throw InvalidQuadError("R_HB must exceed R_LB");
}

double ResistorQuad::r_p_hl() const { return parallel_resultant(r_ha, r_lb); }
double ResistorQuad::r_p_lh() const { return parallel_resultant(r_la, r_hb); }
double ResistorQuad::r_s_hl() const { return serial_resultant(r_ha, r_lb); }
double ResistorQuad::r_s_lh() const { return serial_resultant(r_la, r_hb); }

double relative_gap(double a, double b) {
    const double m = std::max(std::abs(a), std::abs(b));
    return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

double ConstraintResiduals::max() const { return std::max({voltage, current, power}); }

bool NominalWireStats::secure_states_match(double tol) const {
    const double p_scale = std::sqrt(std::max(u2_wire_hl, u2_wire_lh) *
                                     std::max(i2_wire_hl, i2_wire_lh));
    return relative_gap(u2_wire_hl, u2_wire_lh) <= tol &&
           relative_gap(i2_wire_hl, i2_wire_lh) <= tol &&
           std::abs(p_hl - p_lh) <= tol * p_scale;
}

std::string_view to_string(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::IdealKLJN: return "ideal-KLJN";
        case SchemeKind::GenericVMG: return "generic-VMG";
        case SchemeKind::FCK2: return "FCK2";
        case SchemeKind::FCK3: return "FCK3";
    }
    return "unknown";
}

NoiseLevels levels_from_msv(const ResistorQuad& quad, std::array<double, 4> u2,
                            double bandwidth) {
    quad.validate();
    NoiseLevels lv;
    lv.u2_ha = u2[0];
    lv.u2_la = u2[1];
    lv.u2_hb = u2[2];
    lv.u2_lb = u2[3];
    lv.bandwidth = bandwidth;
    lv.u_la_rms = std::sqrt(u2[1]);
    lv.t_ha = temp_from_msv(lv.u2_ha, quad.r_ha, bandwidth);
    lv.t_la = temp_from_msv(lv.u2_la, quad.r_la, bandwidth);
    lv.t_hb = temp_from_msv(lv.u2_hb, quad.r_hb, bandwidth);
    lv.t_lb = temp_from_msv(lv.u2_lb, quad.r_lb, bandwidth);
    return lv;
}

NoiseLevels solve_vmg_levels(const ResistorQuad& quad, double u_la_rms, double bandwidth) {
    quad.validate();
    require_positive(u_la_rms, "U_LA anchor");
    require_positive(bandwidth, "bandwidth");

    const double ha = quad.r_ha, la = quad.r_la, hb = quad.r_hb, lb = quad.r_lb;
    const double s_hl2 = (ha + lb) * (ha + lb);
    const double s_lh2 = (la + hb) * (la + hb);
    const double u2_la = u_la_rms * u_la_rms;

    // Unknowns x = (u2_ha, u2_hb, u2_lb). Each row is "HL side - LH side = 0"
    // with the known u2_la term moved to the right.
    //   voltage: (u2_ha lb^2 + u2_lb ha^2)/s_hl2 = (u2_la hb^2 + u2_hb la^2)/s_lh2
    //   current: (u2_ha + u2_lb)/s_hl2          = (u2_la + u2_hb)/s_lh2
    //   power:   (u2_ha lb - u2_lb ha)/s_hl2    = (u2_la hb - u2_hb la)/s_lh2
    const Mat3 a{{
        {lb * lb / s_hl2, -la * la / s_lh2, ha * ha / s_hl2},
        {1.0 / s_hl2, -1.0 / s_lh2, 1.0 / s_hl2},
        {lb / s_hl2, la / s_lh2, -ha / s_hl2},
    }};
    const Vec3 b{u2_la * hb * hb / s_lh2, u2_la / s_lh2, u2_la * hb / s_lh2};
    const Vec3 x = solve3(a, b);

    const char* names[] = {"U_HA^2", "U_HB^2", "U_LB^2"};
    for (int i = 0; i < 3; ++i) {
        if (!(x[i] > 0.0)) {
            throw UnphysicalSolutionError(std::string("unphysical solution: ") + names[i] +
                                          " = " + std::to_string(x[i]) + " V^2 is not positive");
        }
    }
    return levels_from_msv(quad, {x[0], u2_la, x[1], x[2]}, bandwidth);
}

double fck2_fourth_resistor(double r_ha, double r_la, double r_lb) {
    require_positive(r_ha, "R_HA");
    require_positive(r_la, "R_LA");
    require_positive(r_lb, "R_LB");
    if (!(r_ha > r_la)) throw InvalidQuadError("R_HA must exceed R_LA");
    const double denom = r_ha * r_la - r_ha * r_lb + r_la * r_lb;
    if (!(denom > 0.0)) {
        throw UnphysicalSolutionError("FCK2: denominator R_HA R_LA - R_HA R_LB + R_LA R_LB is not positive");
    }
    const double r_hb = r_ha * r_la * r_lb / denom;
    if (!(r_hb > r_lb)) {
        throw InvalidQuadError("FCK2: resulting R_HB does not exceed R_LB");
    }
    return r_hb;
}

double fck3_fourth_resistor(double r_ha, double r_la, double r_hb) {
    require_positive(r_ha, "R_HA");
    require_positive(r_la, "R_LA");
    require_positive(r_hb, "R_HB");
    const double r_lb = r_la + r_hb - r_ha;
    if (!(r_lb > 0.0)) {
        throw UnphysicalSolutionError("FCK3: resulting R_LB = R_LA + R_HB - R_HA is not positive");
    }
    if (!(r_lb < r_hb)) {
        throw InvalidQuadError("FCK3: resulting R_LB is not below R_HB");
    }
    return r_lb;
}

SchemeKind classify_scheme(const ResistorQuad& quad) {
    quad.validate();
    if (relative_gap(quad.r_ha, quad.r_hb) <= kResultantEqualityTol &&
        relative_gap(quad.r_la, quad.r_lb) <= kResultantEqualityTol) {
        return SchemeKind::IdealKLJN;
    }
    if (relative_gap(quad.r_p_hl(), quad.r_p_lh()) <= kResultantEqualityTol) {
        return SchemeKind::FCK2;
    }
    if (relative_gap(quad.r_s_hl(), quad.r_s_lh()) <= kResultantEqualityTol) {
        return SchemeKind::FCK3;
    }
    return SchemeKind::GenericVMG;
}

NominalWireStats nominal_wire_stats(const ResistorQuad& quad, const NoiseLevels& lv) {
    quad.validate();
    NominalWireStats st;
    st.r_p_hl = quad.r_p_hl();
    st.r_p_lh = quad.r_p_lh();
    st.r_s_hl = quad.r_s_hl();
    st.r_s_lh = quad.r_s_lh();

    // With independent zero-mean sources on each side of the loop:
    //   <U^2> = (<uA^2> rB^2 + <uB^2> rA^2) / Rs^2
    //   <I^2> = (<uA^2> + <uB^2>) / Rs^2
    //   <U I> = (<uA^2> rB - <uB^2> rA) / Rs^2
    const auto fill = [](double u2a, double ra, double u2b, double rb, double& u2, double& i2,
                         double& p) {
        const double s2 = (ra + rb) * (ra + rb);
        u2 = (u2a * rb * rb + u2b * ra * ra) / s2;
        i2 = (u2a + u2b) / s2;
        p = (u2a * rb - u2b * ra) / s2;
    };
    fill(lv.u2_ha, quad.r_ha, lv.u2_lb, quad.r_lb, st.u2_wire_hl, st.i2_wire_hl, st.p_hl);
    fill(lv.u2_la, quad.r_la, lv.u2_hb, quad.r_hb, st.u2_wire_lh, st.i2_wire_lh, st.p_lh);
    return st;
}

ConstraintResiduals constraint_residuals(const ResistorQuad& quad, const NoiseLevels& lv) {
    quad.validate();
    const double s_hl2 = quad.r_s_hl() * quad.r_s_hl();
    const double s_lh2 = quad.r_s_lh() * quad.r_s_lh();
    const SideTerms voltage{lv.u2_ha * quad.r_lb * quad.r_lb / s_hl2,
                            lv.u2_lb * quad.r_ha * quad.r_ha / s_hl2,
                            lv.u2_la * quad.r_hb * quad.r_hb / s_lh2,
                            lv.u2_hb * quad.r_la * quad.r_la / s_lh2};
    const SideTerms current{lv.u2_ha / s_hl2, lv.u2_lb / s_hl2, lv.u2_la / s_lh2,
                            lv.u2_hb / s_lh2};
    const SideTerms power{lv.u2_ha * quad.r_lb / s_hl2, -lv.u2_lb * quad.r_ha / s_hl2,
                          lv.u2_la * quad.r_hb / s_lh2, -lv.u2_hb * quad.r_la / s_lh2};
    return {voltage.residual(), current.residual(), power.residual()};
}

}  // namespace kljn
