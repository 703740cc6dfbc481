#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace semitoric {

/// Charts on the Hirzebruch surface W_n(alpha, beta), realized as the
/// symplectic quotient of C^4 at level zero of
///   N = ((|u1|^2 + |u2|^2 + n|u3|^2)/2 - (alpha + n beta),
///        (|u3|^2 + |u4|^2)/2 - beta).
/// On the open set U_{l,m} = {u_l != 0, u_m != 0} the residual torus freedom
/// makes u_l, u_m real positive; the remaining two complex entries are the
/// chart coordinates, in which the symplectic form is the standard
/// dx_p ^ dy_p + dx_q ^ dy_q.
enum class ChartId { S2xS2, U13, U14, U23, U24 };

inline const char* to_string(ChartId c) {
    switch (c) {
        case ChartId::S2xS2: return "s2xs2";
        case ChartId::U13: return "U13";
        case ChartId::U14: return "U14";
        case ChartId::U23: return "U23";
        case ChartId::U24: return "U24";
    }
    return "?";
}

struct ChartPoint {
    ChartId chart = ChartId::S2xS2;
    // W charts use c[0..3] = (x_p, y_p, x_q, y_q) with (p,q) the complement
    // of (l,m); the global sphere chart uses all six (x1,y1,z1,x2,y2,z2).
    std::array<double, 6> c{};
};

inline ChartPoint chart_point(ChartId id, double a, double b, double c, double d) {
    return ChartPoint{id, {a, b, c, d, 0.0, 0.0}};
}

inline ChartPoint sphere_point(double x1, double y1, double z1, double x2, double y2, double z2) {
    return ChartPoint{ChartId::S2xS2, {x1, y1, z1, x2, y2, z2}};
}

/// A class representative [u1,u2,u3,u4] on N^{-1}(0).
struct HirzebruchPoint {
    int n = 1;
    double alpha = 1.0, beta = 1.0;
    std::array<std::complex<double>, 4> u{};

    double norm2(int i) const { return std::norm(u[i - 1]); }

    // residuals of the two moment-level constraints
    double level_residual() const {
        double r1 = 0.5 * (norm2(1) + norm2(2) + n * norm2(3)) - (alpha + n * beta);
        double r2 = 0.5 * (norm2(3) + norm2(4)) - beta;
        return std::max(std::fabs(r1), std::fabs(r2));
    }

    // torus action: phi rotates u1, u2 and (n times) u3; psi rotates u3, u4
    HirzebruchPoint rotated(double phi, double psi) const {
        HirzebruchPoint out = *this;
        std::complex<double> e1 = std::polar(1.0, phi);
        std::complex<double> e3 = std::polar(1.0, n * phi + psi);
        std::complex<double> e4 = std::polar(1.0, psi);
        out.u[0] *= e1;
        out.u[1] *= e1;
        out.u[2] *= e3;
        out.u[3] *= e4;
        return out;
    }
};

namespace hirz_detail {

inline double safe_sqrt(double r, const char* where) {
    if (r < -1e-12) throw std::domain_error(std::string(where) + ": negative radicand");
    return std::sqrt(r < 0 ? 0.0 : r);
}

struct ChartSlots {
    int l, m; // real-positive slots
    int p, q; // coordinate slots, p < q
};

inline ChartSlots slots(ChartId id) {
    switch (id) {
        case ChartId::U13: return {1, 3, 2, 4};
        case ChartId::U14: return {1, 4, 2, 3};
        case ChartId::U23: return {2, 3, 1, 4};
        case ChartId::U24: return {2, 4, 1, 3};
        default: throw std::invalid_argument("not a Hirzebruch chart");
    }
}

} // namespace hirz_detail

/// Reconstructs the class representative with the chart's two slots real
/// positive from chart coordinates; throws on negative radicands (outside
/// the chart domain).
inline HirzebruchPoint hirzebruch_lift(int n, double alpha, double beta, ChartId chart,
                                       const std::array<double, 4>& c) {
    auto sl = hirz_detail::slots(chart);
    std::complex<double> up(c[0], c[1]), uq(c[2], c[3]);
    double rp = std::norm(up), rq = std::norm(uq);
    HirzebruchPoint out;
    out.n = n;
    out.alpha = alpha;
    out.beta = beta;
    out.u[sl.p - 1] = up;
    out.u[sl.q - 1] = uq;
    double xl = 0, xm = 0;
    // the complement pair determines which constraint solves which slot
    switch (chart) {
        case ChartId::U13: // coords (u2, u4)
            xm = hirz_detail::safe_sqrt(2 * beta - rq, "U13");
            xl = hirz_detail::safe_sqrt(2 * alpha + n * rq - rp, "U13");
            break;
        case ChartId::U14: // coords (u2, u3)
            xl = hirz_detail::safe_sqrt(2 * (alpha + n * beta) - n * rq - rp, "U14");
            xm = hirz_detail::safe_sqrt(2 * beta - rq, "U14");
            break;
        case ChartId::U23: // coords (u1, u4)
            xm = hirz_detail::safe_sqrt(2 * beta - rq, "U23");
            xl = hirz_detail::safe_sqrt(2 * alpha + n * rq - rp, "U23");
            break;
        case ChartId::U24: // coords (u1, u3)
            xl = hirz_detail::safe_sqrt(2 * (alpha + n * beta) - n * rq - rp, "U24");
            xm = hirz_detail::safe_sqrt(2 * beta - rq, "U24");
            break;
        default: throw std::invalid_argument("hirzebruch_lift: not a Hirzebruch chart");
    }
    out.u[sl.l - 1] = xl;
    out.u[sl.m - 1] = xm;
    return out;
}

/// Projects a class representative into a chart (the two slots must be
/// nonzero there). Inverse of hirzebruch_lift up to the torus action.
inline std::array<double, 4> hirzebruch_chart(const HirzebruchPoint& h, ChartId chart) {
    auto sl = hirz_detail::slots(chart);
    const auto& u = h.u;
    if (std::abs(u[sl.l - 1]) < 1e-14 || std::abs(u[sl.m - 1]) < 1e-14)
        throw std::domain_error("hirzebruch_chart: point outside chart domain");
    // choose phi, psi making u_l and u_m real positive
    double phi = 0, psi = 0;
    if (sl.l == 1 || sl.l == 2) phi = -std::arg(u[sl.l - 1]);
    if (sl.m == 3) psi = -std::arg(u[2]) - h.n * phi;
    else psi = -std::arg(u[3]);
    HirzebruchPoint r = h.rotated(phi, psi);
    return {r.u[sl.p - 1].real(), r.u[sl.p - 1].imag(), r.u[sl.q - 1].real(),
            r.u[sl.q - 1].imag()};
}

// Invariant functions of the explicit systems.
inline double hirz_J(const HirzebruchPoint& h) {
    if (h.n == 2) return 0.5 * (h.norm2(2) + h.norm2(3));
    return 0.5 * h.norm2(2);
}

inline double hirz_R(const HirzebruchPoint& h) {
    if (h.n == 2) return 0.5 * (h.norm2(3) - h.norm2(4));
    return 0.5 * h.norm2(3);
}

inline std::complex<double> hirz_XY(const HirzebruchPoint& h) {
    if (h.n == 2) return std::conj(h.u[0]) * std::conj(h.u[1]) * h.u[2] * std::conj(h.u[3]);
    return std::conj(h.u[0]) * h.u[2] * std::conj(h.u[3]);
}

} // namespace semitoric
