#pragma once

#include <functional>
#include <vector>

#include "semitoric/rational.hpp"
#include "semitoric/systems.hpp"

namespace semitoric {

/// Dense polynomial in s = rho^2 (used for the radial profiles g of the
/// reduced spaces; degree stays tiny).
template <typename T>
struct Poly {
    std::vector<T> c; // c[k] s^k

    T eval(const T& s) const {
        T acc(0);
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * s + c[k];
        return acc;
    }
    Poly deriv() const {
        if (c.size() <= 1) return Poly{{T(0)}};
        Poly d;
        d.c.resize(c.size() - 1);
        for (std::size_t k = 1; k < c.size(); ++k) d.c[k - 1] = T(static_cast<long>(k)) * c[k];
        return d;
    }
    friend Poly operator*(const Poly& p, const Poly& q) {
        Poly r;
        r.c.assign(p.c.size() + q.c.size() - 1, T(0));
        for (std::size_t i = 0; i < p.c.size(); ++i)
            for (std::size_t j = 0; j < q.c.size(); ++j) r.c[i + j] += p.c[i] * q.c[j];
        return r;
    }
};

using PolyD = Poly<double>;

struct RadialTerm {
    double value = 0, d1 = 0, d2 = 0; // value and rho-derivatives
};

/// H^{red,j}(rho, theta) = u(rho) + v(rho) cos(theta) on the reduced space at
/// level j, together with the radial profile polynomial g (in s = rho^2) and
/// the coefficients (a, b, c) for the families of the form
/// a rho^2 + b rho cos(theta) sqrt(g(rho^2)) + c.
struct ReducedHamiltonian {
    FamilyId family;
    double j = 0;
    double rho_min = 0, rho_max = 0; // open radial domain
    double a = 0, b = 0, c = 0;
    PolyD g; // empty for the sphere case
    std::function<RadialTerm(double)> u, v;
    // reduced symplectic density w(rho) drho dtheta
    std::function<double(double)> weight;
    double fiber_height = 0; // total reduced area / (2 pi)
};

namespace red_detail {

// radial part q(s)|_{s = rho^2} with rho-derivatives
inline RadialTerm from_poly(const PolyD& q, const PolyD& dq, const PolyD& ddq, double rho) {
    double s = rho * rho;
    RadialTerm r;
    r.value = q.eval(s);
    double qs = dq.eval(s), qss = ddq.eval(s);
    r.d1 = 2 * rho * qs;
    r.d2 = 4 * s * qss + 2 * qs;
    return r;
}

// b * rho * sqrt(g(rho^2)) with rho-derivatives; g > 0 required
inline RadialTerm sqrt_term(double bcoef, const PolyD& g, const PolyD& dg, const PolyD& ddg,
                            double rho) {
    double s = rho * rho;
    double gv = g.eval(s);
    double gs = dg.eval(s), gss = ddg.eval(s);
    double g1 = 2 * rho * gs;             // dg/drho
    double g2 = 4 * s * gss + 2 * gs;     // d2g/drho2
    double sq = std::sqrt(gv);
    RadialTerm r;
    r.value = bcoef * rho * sq;
    // h = sqrt(g) + rho g' / (2 sqrt(g)) = (2g + rho g') / (2 sqrt(g))
    r.d1 = bcoef * (2 * gv + rho * g1) / (2 * sq);
    // h' = (2 g (rho g'' + 2 g') - rho g'^2) / (4 g^{3/2})
    r.d2 = bcoef * (2 * gv * (rho * g2 + 2 * g1) - rho * g1 * g1) / (4 * gv * sq);
    return r;
}

} // namespace red_detail

/// Coefficients (a, b, c) of the reduced Hamiltonian of the two-parameter
/// family at level j (the one-parameter families are its slices).
struct W2ReducedCoeffs {
    double a, b, c;
};

inline W2ReducedCoeffs w2_reduced_coeffs(const SystemFamily& sys, double s1, double s2, double j) {
    double al = sys.alpha, be = sys.beta, ga = sys.gamma;
    W2ReducedCoeffs r{};
    r.a = s2 - s1 + (2 * j - al - 2 * be) * (s1 * s2 * be - (1 - s1) * (1 - s2) * (al + be)) /
                        (al * (al + 2 * be));
    r.b = ga * ((1 - s1) * (1 - s2) * (al + be) + s1 * s2 * be) / (al * (al + 2 * be));
    r.c = (1 - s1 - s2 + 2 * s1 * s2) * (2 * j - al - 2 * be) * be / (al + 2 * be) +
          (s1 - s2) * be;
    return r;
}

/// Reduced Hamiltonian on M_j^red in cylindrical coordinates. For the
/// sphere-pair system only the focus-focus level of the half-half member is
/// parametrized (coordinates rho = sqrt((1-z1)/(1+z1)), angle difference).
inline ReducedHamiltonian reduced_hamiltonian(const SystemFamily& sys, const ParamValue& pv,
                                              double j) {
    ReducedHamiltonian rh;
    rh.family = sys.id;
    rh.j = j;
    double t = pv.t;
    if (sys.id == FamilyId::HP2Param || sys.id == FamilyId::CoupledAngular) {
        if (sys.id == FamilyId::CoupledAngular || std::fabs(pv.t - 0.5) > 1e-12 ||
            std::fabs(pv.s2 - 0.5) > 1e-12)
            throw std::domain_error(
                "reduced_hamiltonian: sphere reduction is implemented for the half-half member");
        if (std::fabs(j - (sys.R1 - sys.R2)) > 1e-12)
            throw std::domain_error(
                "reduced_hamiltonian: sphere reduction is implemented at level R1 - R2");
        double Th = sys.R2 / sys.R1;
        rh.rho_min = 0;
        rh.rho_max = 1e6; // the chart covers the sphere minus one point
        rh.u = [Th](double rho) {
            double r2 = rho * rho, d = 1 + r2;
            RadialTerm r;
            r.value = (1 - Th) * r2 / (2 * Th * d);
            r.d1 = (1 - Th) / (2 * Th) * 2 * rho / (d * d);
            r.d2 = (1 - Th) / (2 * Th) * 2 * (1 - 3 * r2) / (d * d * d);
            return r;
        };
        rh.v = [Th](double rho) {
            // v = 2 rho^2 sqrt(W) / (Th (1+rho^2)^2), W = Th + (Th-1) rho^2;
            // derivatives by central differences of the smooth closed form
            auto f = [Th](double r) {
                double r2 = r * r, d = 1 + r2;
                return 2 * r2 * std::sqrt(Th + (Th - 1) * r2) / (Th * d * d);
            };
            const double h = 1e-5 * (1 + rho);
            RadialTerm out;
            out.value = f(rho);
            out.d1 = (f(rho + h) - f(rho - h)) / (2 * h);
            out.d2 = (f(rho + h) - 2 * f(rho) + f(rho - h)) / (h * h);
            return out;
        };
        double R1 = sys.R1;
        rh.weight = [R1](double rho) {
            double d = 1 + rho * rho;
            return 4 * R1 * rho / (d * d);
        };
        rh.fiber_height = 2 * sys.R1;
        return rh;
    }

    int n = sys.hirzebruch_n();
    double al = sys.alpha, be = sys.beta;
    if (n == 1) {
        if (!(0 < j && j < al + be))
            throw std::domain_error("reduced_hamiltonian: level outside the J-range");
        rh.g = PolyD{{2 * be, -1.0}} * PolyD{{2 * (al + be - j), -1.0}};
        double smax = std::min(2 * be, 2 * (al + be - j));
        rh.rho_max = std::sqrt(smax);
        switch (sys.id) {
            case FamilyId::W1MovingAB:
                rh.a = 0.5 * (1 - 2 * t);
                rh.b = sys.gamma * t;
                rh.c = 0;
                break;
            case FamilyId::W1Switch:
                rh.a = 0.5 * (1 - 2 * t);
                rh.b = sys.gamma * t * j;
                rh.c = t * be;
                break;
            case FamilyId::W1Hyperbolic:
                rh.a = 0.5 * (1 - 2 * t);
                rh.b = sys.gamma * t;
                rh.c = 0;
                break;
            default: throw std::invalid_argument("reduced_hamiltonian: unsupported family");
        }
    } else if (n == 2) {
        if (!(0 < j && j < al + 2 * be))
            throw std::domain_error("reduced_hamiltonian: level outside the J-range");
        rh.g = PolyD{{2 * (al + 2 * be - j), -1.0}} * PolyD{{2 * j, -1.0}} * PolyD{{2 * be, -1.0}};
        double smax = std::min({2 * be, 2 * j, 2 * (al + 2 * be - j)});
        rh.rho_max = std::sqrt(smax);
        double s1 = pv.t, s2 = pv.s2;
        if (sys.id == FamilyId::W2TransB) {
            s1 = t;
            s2 = 1.0;
        } else if (sys.id == FamilyId::W2TransC) {
            s1 = 0.0;
            s2 = 1.0 - t;
        }
        auto co = w2_reduced_coeffs(sys, s1, s2, j);
        rh.a = co.a;
        rh.b = co.b;
        rh.c = co.c;
    } else {
        throw std::invalid_argument("reduced_hamiltonian: unsupported family");
    }

    PolyD dg = rh.g.deriv(), ddg = dg.deriv();
    double A = rh.a, B = rh.b, C = rh.c;
    PolyD g = rh.g;
    if (sys.id == FamilyId::W1Hyperbolic) {
        // extra radial term 2 t |u1|^2 |u4|^2 on top of the common shape
        PolyD extra = PolyD{{2 * t}} * PolyD{{2 * (al + be - j), -1.0}} * PolyD{{2 * be, -1.0}};
        PolyD upoly = extra;
        upoly.c.resize(std::max<std::size_t>(upoly.c.size(), 2), 0.0);
        upoly.c[1] += A;
        upoly.c[0] += C;
        PolyD du = upoly.deriv(), ddu = du.deriv();
        rh.u = [upoly, du, ddu](double rho) { return red_detail::from_poly(upoly, du, ddu, rho); };
    } else {
        PolyD upoly{{C, A}};
        PolyD du = upoly.deriv(), ddu = du.deriv();
        rh.u = [upoly, du, ddu](double rho) { return red_detail::from_poly(upoly, du, ddu, rho); };
    }
    rh.v = [B, g, dg, ddg](double rho) { return red_detail::sqrt_term(B, g, dg, ddg, rho); };
    rh.weight = [](double rho) { return rho; };
    rh.fiber_height = 0.5 * rh.rho_max * rh.rho_max;
    return rh;
}

inline double reduced_value(const ReducedHamiltonian& rh, double rho, double theta) {
    return rh.u(rho).value + rh.v(rho).value * std::cos(theta);
}

enum class MorseType { Elliptic, Hyperbolic, Degenerate };

inline const char* to_string(MorseType m) {
    switch (m) {
        case MorseType::Elliptic: return "elliptic";
        case MorseType::Hyperbolic: return "hyperbolic";
        default: return "degenerate";
    }
}

struct ReducedCriticalPoint {
    double rho = 0, theta = 0;
    MorseType type = MorseType::Degenerate;
    double d2_rho = 0, d2_theta = 0; // diagonal reduced Hessian entries
    double first_order_residual = 0;
};

/// Critical points of the reduced Hamiltonian. The angular equation forces
/// theta in {0, pi}; the radial equation is solved by bisection on a sign
/// scan, keeping a margin away from the radicand zeros at the chart ends.
inline std::vector<ReducedCriticalPoint> reduced_critical_points(const ReducedHamiltonian& rh,
                                                                 int grid = 2000) {
    std::vector<ReducedCriticalPoint> out;
    const double margin = 1e-7;
    double lo = rh.rho_min + margin * (1 + rh.rho_max);
    double hi = rh.rho_max - margin * (1 + rh.rho_max);
    if (rh.rho_max > 1e5) hi = std::min(hi, 1e3); // unbounded sphere chart
    if (!(lo < hi)) return out;
    for (double cth : {1.0, -1.0}) {
        auto F = [&](double rho) { return rh.u(rho).d1 + cth * rh.v(rho).d1; };
        double prev = F(lo);
        for (int k = 1; k <= grid; ++k) {
            double r = lo + (hi - lo) * k / grid;
            double cur = F(r);
            if ((prev <= 0) != (cur <= 0)) {
                double rl = lo + (hi - lo) * (k - 1) / grid;
                for (int it = 0; it < 100; ++it) {
                    double mid = 0.5 * (rl + r);
                    if ((F(rl) <= 0) == (F(mid) <= 0)) rl = mid;
                    else r = mid;
                }
                double rc = 0.5 * (rl + r);
                ReducedCriticalPoint cp;
                cp.rho = rc;
                cp.theta = cth > 0 ? 0.0 : M_PI;
                cp.d2_rho = rh.u(rc).d2 + cth * rh.v(rc).d2;
                cp.d2_theta = -cth * rh.v(rc).value;
                cp.first_order_residual = std::fabs(F(rc));
                double scale = std::max(std::fabs(cp.d2_rho), std::fabs(cp.d2_theta));
                if (scale < 1e-300 || std::min(std::fabs(cp.d2_rho), std::fabs(cp.d2_theta)) <
                                          1e-8 * scale)
                    cp.type = MorseType::Degenerate;
                else
                    cp.type = cp.d2_rho * cp.d2_theta > 0 ? MorseType::Elliptic
                                                          : MorseType::Hyperbolic;
                out.push_back(cp);
            }
            prev = cur;
        }
    }
    return out;
}

/// f(rho) = 2 rho^2 g g'' + 2 rho g g' - rho^2 g'^2 - 4 g^2, expressed in
/// s = rho^2: f = 8 s^2 g g_ss + 8 s g g_s - 4 s^2 g_s^2 - 4 g^2.
template <typename T>
T profile_f(const Poly<T>& g, const T& s) {
    Poly<T> gs = g.deriv();
    Poly<T> gss = gs.deriv();
    T gv = g.eval(s), g1 = gs.eval(s), g2 = gss.eval(s);
    return T(8) * s * s * gv * g2 + T(8) * s * gv * g1 - T(4) * s * s * g1 * g1 -
           T(4) * gv * gv;
}

struct NegativityCertificate {
    bool negative = true;
    double min_margin = 1e300; // min of -f over the sampled open domain
    int samples = 0;
    bool identity_checked = false; // exact discriminant identity (first surface)
    bool identity_holds = false;
};

/// Exact check of the discriminant identity for the first-surface profile:
/// viewing f/4 as a quadratic in j, its discriminant equals
/// -64 s^3 (2 beta - s)^3 at every rational sample point.
inline bool w1_discriminant_identity(const Rat& alpha, const Rat& beta,
                                     const std::vector<Rat>& samples) {
    for (const Rat& s : samples) {
        // g = (2 beta - s)(2(alpha + beta) - 2j - s) as a linear polynomial in j
        Rat G0 = (Rat(2) * beta - s) * (Rat(2) * (alpha + beta) - s);
        Rat G1 = Rat(-2) * (Rat(2) * beta - s);
        // g_s = -(2(alpha+beta) - 2j - s) - (2 beta - s)
        Rat S0 = -(Rat(2) * (alpha + beta) - s) - (Rat(2) * beta - s);
        Rat S1 = Rat(2);
        Rat g2(2); // g_ss
        // f = 8 s^2 g g_ss + 8 s g g_s - 4 s^2 g_s^2 - 4 g^2, coefficients in j
        auto sq = [](const Rat& a0, const Rat& a1) {
            return std::array<Rat, 3>{a0 * a0, Rat(2) * a0 * a1, a1 * a1};
        };
        auto g_sq = sq(G0, G1);
        auto gs_sq = sq(S0, S1);
        std::array<Rat, 3> f{};
        Rat c8s2 = Rat(8) * s * s, c8s = Rat(8) * s, c4s2 = Rat(4) * s * s;
        // 8 s^2 g * 2
        f[0] += c8s2 * G0 * g2;
        f[1] += c8s2 * G1 * g2;
        // 8 s g g_s
        f[0] += c8s * (G0 * S0);
        f[1] += c8s * (G0 * S1 + G1 * S0);
        f[2] += c8s * (G1 * S1);
        // -4 s^2 g_s^2 - 4 g^2
        for (int k = 0; k < 3; ++k) f[k] -= c4s2 * gs_sq[k] + Rat(4) * g_sq[k];
        // quadratic in j: discriminant of f/4
        Rat P2 = f[2] / Rat(4), P1 = f[1] / Rat(4), P0 = f[0] / Rat(4);
        Rat disc = P1 * P1 - Rat(4) * P2 * P0;
        Rat tb = Rat(2) * beta - s;
        Rat rhs = Rat(-64) * s * s * s * tb * tb * tb;
        if (disc != rhs) return false;
    }
    return true;
}

/// Negativity certificate for the profile f on the open radial domain:
/// dense-grid margin check, plus the exact discriminant identity on the
/// first surface.
inline NegativityCertificate profile_negativity_certificate(const SystemFamily& sys,
                                                            const ParamValue& pv, double j,
                                                            int grid = 10000) {
    if (sys.on_spheres())
        throw std::invalid_argument("profile_negativity_certificate: Hirzebruch families only");
    ReducedHamiltonian rh = reduced_hamiltonian(sys, pv, j);
    NegativityCertificate cert;
    // structural zeros of f sit at the radicand zeros of g; the claim is on
    // the open domain, so the grid keeps a relative margin where rounding in
    // the cancelling polynomial terms would drown the sign
    double lo = 1e-4 * rh.rho_max, hi = rh.rho_max * (1 - 1e-4);
    for (int k = 0; k <= grid; ++k) {
        double rho = lo + (hi - lo) * k / grid;
        double fv = profile_f(rh.g, rho * rho);
        cert.min_margin = std::min(cert.min_margin, -fv);
        if (fv >= 0) cert.negative = false;
        ++cert.samples;
    }
    if (sys.hirzebruch_n() == 1) {
        cert.identity_checked = true;
        std::vector<Rat> samples;
        for (long k = 1; k <= 8; ++k) samples.push_back(Rat(k, 5));
        cert.identity_holds =
            w1_discriminant_identity(Rat(1), Rat(1), samples) &&
            w1_discriminant_identity(Rat(3, 2), Rat(2), samples) &&
            w1_discriminant_identity(Rat(2), Rat(1, 3), samples);
    }
    return cert;
}

} // namespace semitoric
