#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "semitoric/hirzebruch.hpp"

namespace semitoric {

enum class FamilyId {
    CoupledAngular,
    HP2Param,
    W1MovingAB,
    W1Switch,
    W1Hyperbolic,
    W2TransB,
    W2TransC,
    W2TwoParam,
    DegenAppearance,
    DegenBecome,
    DegenCollapse
};

inline const char* to_string(FamilyId id) {
    switch (id) {
        case FamilyId::CoupledAngular: return "coupled";
        case FamilyId::HP2Param: return "hp-2param";
        case FamilyId::W1MovingAB: return "w1-moving";
        case FamilyId::W1Switch: return "w1-switch";
        case FamilyId::W1Hyperbolic: return "w1-hyperbolic";
        case FamilyId::W2TransB: return "w2-trans-b";
        case FamilyId::W2TransC: return "w2-trans-c";
        case FamilyId::W2TwoParam: return "w2-2param";
        case FamilyId::DegenAppearance: return "degen-appearance";
        case FamilyId::DegenBecome: return "degen-become";
        case FamilyId::DegenCollapse: return "degen-collapse";
    }
    return "?";
}

/// Parameter value of a family: t for one-parameter families, (s1, s2) for
/// two-parameter ones (t doubles as s1).
struct ParamValue {
    double t = 0.0;
    double s2 = 0.0;
};

/// An explicit family with fixed geometric parameters. Construction enforces
/// the validity window of the coupling constant.
struct SystemFamily {
    FamilyId id;
    double R1 = 1.0, R2 = 2.0;       // sphere radii (sphere-based families)
    double alpha = 1.0, beta = 1.0;  // Hirzebruch scalings
    double gamma = 0.0;              // coupling strength
    double j0 = 0.0;                 // distinguished level of the degenerate examples
    int arity = 1;

    bool on_spheres() const {
        return id == FamilyId::CoupledAngular || id == FamilyId::HP2Param ||
               id == FamilyId::DegenAppearance || id == FamilyId::DegenBecome ||
               id == FamilyId::DegenCollapse;
    }
    int hirzebruch_n() const {
        switch (id) {
            case FamilyId::W1MovingAB:
            case FamilyId::W1Switch:
            case FamilyId::W1Hyperbolic: return 1;
            case FamilyId::W2TransB:
            case FamilyId::W2TransC:
            case FamilyId::W2TwoParam: return 2;
            default: return 0;
        }
    }
    double nu() const { return beta / alpha; }

    static SystemFamily coupled_angular(double R1, double R2) {
        if (!(0 < R1 && R1 < R2))
            throw std::domain_error("coupled angular momenta requires 0 < R1 < R2");
        SystemFamily s{FamilyId::CoupledAngular};
        s.R1 = R1;
        s.R2 = R2;
        return s;
    }

    static SystemFamily hp_2param(double R1, double R2) {
        if (!(0 < R1 && R1 < R2)) throw std::domain_error("the system requires 0 < R1 < R2");
        SystemFamily s{FamilyId::HP2Param};
        s.R1 = R1;
        s.R2 = R2;
        s.arity = 2;
        return s;
    }

    static SystemFamily w1_moving(double alpha, double beta, double gamma) {
        require_positive(alpha, beta);
        if (!(0 < gamma && gamma < 1.0 / (2.0 * std::sqrt(2.0 * beta))))
            throw std::domain_error("w1-moving requires 0 < gamma < 1/(2 sqrt(2 beta))");
        SystemFamily s{FamilyId::W1MovingAB};
        s.alpha = alpha;
        s.beta = beta;
        s.gamma = gamma;
        return s;
    }

    static SystemFamily w1_switch(double alpha, double beta, double gamma) {
        require_positive(alpha, beta);
        if (!(0 < gamma && gamma < 1.0 / (2.0 * alpha * std::sqrt(2.0 * beta))))
            throw std::domain_error("w1-switch requires 0 < gamma < 1/(2 alpha sqrt(2 beta))");
        SystemFamily s{FamilyId::W1Switch};
        s.alpha = alpha;
        s.beta = beta;
        s.gamma = gamma;
        return s;
    }

    // the hyperbolic behaviour is calibrated only at alpha = beta = gamma = 1
    static SystemFamily w1_hyperbolic(double alpha = 1.0, double beta = 1.0, double gamma = 1.0) {
        require_positive(alpha, beta);
        if (!(gamma > 0)) throw std::domain_error("w1-hyperbolic requires gamma > 0");
        SystemFamily s{FamilyId::W1Hyperbolic};
        s.alpha = alpha;
        s.beta = beta;
        s.gamma = gamma;
        return s;
    }

    static SystemFamily w2_trans_b(double alpha, double beta, double gamma) {
        require_positive(alpha, beta);
        if (!(0 < gamma && gamma < 0.5 * std::sqrt(alpha / beta)))
            throw std::domain_error("w2-trans-b requires 0 < gamma < sqrt(alpha/beta)/2");
        SystemFamily s{FamilyId::W2TransB};
        s.alpha = alpha;
        s.beta = beta;
        s.gamma = gamma;
        return s;
    }

    static SystemFamily w2_trans_c(double alpha, double beta, double gamma) {
        require_positive(alpha, beta);
        if (!(0 < gamma && gamma < 0.5 * std::sqrt(alpha / beta)))
            throw std::domain_error("w2-trans-c requires 0 < gamma < sqrt(alpha/beta)/2");
        SystemFamily s{FamilyId::W2TransC};
        s.alpha = alpha;
        s.beta = beta;
        s.gamma = gamma;
        return s;
    }

    static SystemFamily w2_2param(double alpha, double beta, double gamma) {
        require_positive(alpha, beta);
        double nu = beta / alpha;
        double lo = 1.0 / (2.0 * (1.0 + 2.0 * nu) * std::sqrt(nu));
        double hi = 1.0 / (2.0 * std::sqrt(nu));
        if (!(lo < gamma && gamma < hi))
            throw std::domain_error(
                "w2-2param requires 1/(2(1+2 nu) sqrt(nu)) < gamma < 1/(2 sqrt(nu)), nu = beta/alpha");
        SystemFamily s{FamilyId::W2TwoParam};
        s.alpha = alpha;
        s.beta = beta;
        s.gamma = gamma;
        s.arity = 2;
        return s;
    }

    static SystemFamily degen_appearance(double j0 = -1.0) {
        if (!(-1.0 <= j0 && j0 <= 1.0))
            throw std::domain_error("degen-appearance requires j0 in [-1, 1]");
        SystemFamily s{FamilyId::DegenAppearance};
        s.R1 = s.R2 = 1.0;
        s.j0 = j0;
        return s;
    }

    static SystemFamily degen_become(double j0 = -1.0) {
        if (!(-1.0 <= j0 && j0 <= 1.0)) throw std::domain_error("degen-become requires j0 in [-1, 1]");
        SystemFamily s{FamilyId::DegenBecome};
        s.R1 = s.R2 = 1.0;
        s.j0 = j0;
        return s;
    }

    static SystemFamily degen_collapse(double R1, double R2, double j0) {
        if (!(0 < R1 && R1 < R2)) throw std::domain_error("degen-collapse requires 0 < R1 < R2");
        if (!(-(R1 + R2) < j0 && j0 < R1 + R2))
            throw std::domain_error("degen-collapse requires an interior level j0");
        SystemFamily s{FamilyId::DegenCollapse};
        s.R1 = R1;
        s.R2 = R2;
        s.j0 = j0;
        return s;
    }

private:
    static void require_positive(double alpha, double beta) {
        if (!(alpha > 0 && beta > 0)) throw std::domain_error("scalings must be positive");
    }
};

struct MomentumValue {
    double J = 0, H = 0;
};

namespace sys_detail {

inline void check_sphere_constraints(const ChartPoint& p) {
    double r1 = p.c[0] * p.c[0] + p.c[1] * p.c[1] + p.c[2] * p.c[2] - 1.0;
    double r2 = p.c[3] * p.c[3] + p.c[4] * p.c[4] + p.c[5] * p.c[5] - 1.0;
    if (std::fabs(r1) > 1e-9 || std::fabs(r2) > 1e-9)
        throw std::domain_error("sphere point violates the unit-sphere constraints");
}

inline MomentumValue sphere_value(const SystemFamily& sys, const ParamValue& pv,
                                  const ChartPoint& p) {
    check_sphere_constraints(p);
    double x1 = p.c[0], y1 = p.c[1], z1 = p.c[2];
    double x2 = p.c[3], y2 = p.c[4], z2 = p.c[5];
    double X = x1 * x2 + y1 * y2;
    double t = pv.t, s1 = pv.t, s2 = pv.s2;
    switch (sys.id) {
        case FamilyId::CoupledAngular:
            return {sys.R1 * z1 + sys.R2 * z2, (1 - t) * z1 + t * (X + z1 * z2)};
        case FamilyId::HP2Param:
            return {sys.R1 * z1 + sys.R2 * z2,
                    (1 - s1) * (1 - s2) * z1 + s1 * s2 * z2 + s1 * (1 - s2) * (X + z1 * z2) +
                        s2 * (1 - s1) * (X - z1 * z2)};
        case FamilyId::DegenAppearance: {
            double d = z1 - sys.j0;
            double c = d * d + (1 - 2 * t) * (1 - 2 * t);
            return {z1, z2 * z2 * z2 + c * z2};
        }
        case FamilyId::DegenBecome: {
            double d = z1 - sys.j0;
            double c = (1 - 2 * t) * (1 - 2 * t) + d * d;
            return {z1, (z2 - 1) * (z2 - 1) + c * z2};
        }
        case FamilyId::DegenCollapse: {
            double J = sys.R1 * z1 + sys.R2 * z2;
            return {J, (1 - 2 * t) * z1 + (J - sys.j0) * X};
        }
        default: throw std::invalid_argument("not a sphere family");
    }
}

inline double hirz_H(const SystemFamily& sys, const ParamValue& pv, const HirzebruchPoint& h) {
    double J = hirz_J(h), R = hirz_R(h), X = hirz_XY(h).real();
    double a = sys.alpha, b = sys.beta, g = sys.gamma;
    double t = pv.t, s1 = pv.t, s2 = pv.s2;
    switch (sys.id) {
        case FamilyId::W1MovingAB: return (1 - 2 * t) * R + t * g * X;
        case FamilyId::W1Switch: return (1 - 2 * t) * R + t * (g * J * X + b);
        case FamilyId::W1Hyperbolic:
            return (1 - 2 * t) * R + t * g * X + 2 * t * h.norm2(1) * h.norm2(4);
        case FamilyId::W2TransB:
            return (1 - t) * R +
                   b * t * (g * X + (2 * J - a - 2 * b) * (R + a + b)) / (a * (a + 2 * b));
        case FamilyId::W2TransC:
            return (1 - t) * R + (a + b) * t *
                                     (g * X - (2 * J - a - 2 * b) * (R + b * b / (a + b))) /
                                     (a * (a + 2 * b));
        case FamilyId::W2TwoParam: {
            double H00 =
                (a + b) * (g * X - (2 * J - a - 2 * b) * (R + b * b / (a + b))) / (a * (a + 2 * b));
            double H11 = b * (g * X + (2 * J - a - 2 * b) * (R + a + b)) / (a * (a + 2 * b));
            return (1 - s1) * (1 - s2) * H00 + s2 * (1 - s1) * R - s1 * (1 - s2) * R +
                   s1 * s2 * H11;
        }
        default: throw std::invalid_argument("not a Hirzebruch family");
    }
}

} // namespace sys_detail

/// Momentum-map value at a chart point; chart-domain membership is enforced.
inline MomentumValue evaluate(const SystemFamily& sys, const ParamValue& pv, const ChartPoint& p) {
    if (sys.on_spheres()) {
        if (p.chart != ChartId::S2xS2)
            throw std::domain_error("evaluate: sphere family expects the global sphere chart");
        return sys_detail::sphere_value(sys, pv, p);
    }
    if (p.chart == ChartId::S2xS2)
        throw std::domain_error("evaluate: Hirzebruch family expects a U_{l,m} chart");
    HirzebruchPoint h = hirzebruch_lift(sys.hirzebruch_n(), sys.alpha, sys.beta, p.chart,
                                        {p.c[0], p.c[1], p.c[2], p.c[3]});
    return {hirz_J(h), sys_detail::hirz_H(sys, pv, h)};
}

inline MomentumValue evaluate(const SystemFamily& sys, const ParamValue& pv,
                              const HirzebruchPoint& h) {
    return {hirz_J(h), sys_detail::hirz_H(sys, pv, h)};
}

struct FixedPointEntry {
    std::string label;
    ChartPoint point;
    double J = 0, H = 0;
    double grad_residual = 0; // max |dH|, |dJ| component in chart coordinates
};

struct FixedPointInventory {
    std::vector<FixedPointEntry> points;
    // J-levels whose entire fiber consists of rank-zero points, with the
    // largest sampled |dH| over the fiber as evidence
    std::vector<std::pair<double, double>> degenerate_levels;
    std::vector<std::string> notes;
};

namespace sys_detail {

// max |gradient| component of (J, H) in the chart at p, by central differences
inline double gradient_residual(const SystemFamily& sys, const ParamValue& pv,
                                const ChartPoint& p) {
    int dim = sys.on_spheres() ? 6 : 4;
    double res = 0;
    const double h = 6e-6;
    for (int i = 0; i < dim; ++i) {
        if (sys.on_spheres() && (i == 2 || i == 5)) continue; // z slots are dependent
        ChartPoint pp = p, pm = p;
        pp.c[i] += h;
        pm.c[i] -= h;
        if (sys.on_spheres()) {
            // stay on the spheres: recompute the z coordinate with its sign
            int zi = i < 3 ? 2 : 5;
            int a = i < 3 ? 0 : 3;
            for (ChartPoint* q : {&pp, &pm}) {
                double r2 = q->c[a] * q->c[a] + q->c[a + 1] * q->c[a + 1];
                if (r2 > 1.0) r2 = 1.0;
                q->c[zi] = (p.c[zi] >= 0 ? 1.0 : -1.0) * std::sqrt(1.0 - r2);
            }
        }
        MomentumValue vp = evaluate(sys, pv, pp);
        MomentumValue vm = evaluate(sys, pv, pm);
        res = std::max(res, std::fabs(vp.H - vm.H) / (2 * h));
        res = std::max(res, std::fabs(vp.J - vm.J) / (2 * h));
    }
    return res;
}

inline FixedPointEntry make_entry(const SystemFamily& sys, const ParamValue& pv,
                                  const std::string& label, const ChartPoint& p) {
    MomentumValue v = evaluate(sys, pv, p);
    return {label, p, v.J, v.H, gradient_residual(sys, pv, p)};
}

// positive root bracket refinement by bisection
template <typename F>
double bisect(F&& f, double lo, double hi, double tol, int maxit = 200) {
    double flo = f(lo);
    for (int i = 0; i < maxit && hi - lo > tol; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((flo <= 0) == (fm <= 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Rank-zero points on the fixed sphere u2 = 0 of the moving-point family:
// x3^2 is a root of P in (0, X^-) or (X^-, 2 beta), the sign of x3 follows
// from the defining equation f(x3) = 0.
inline std::pair<double, double> w1_moving_x3(const SystemFamily& sys, double t) {
    double a = sys.alpha, b = sys.beta, g = sys.gamma;
    auto quartic = [&](double X) {
        double q = 3 * X * X - 4 * (a + 2 * b) * X + 4 * b * (a + b);
        double s = (1 - 2 * t) * (1 - 2 * t) * X * (2 * b - X) * (2 * (a + b) - X);
        return t * t * g * g * q * q - s;
    };
    double Xminus = (2.0 / 3.0) * (a + 2 * b - std::sqrt(a * a + a * b + b * b));
    if (t == 0.0) return {0.0, std::sqrt(2 * b)}; // toric limit: poles of the sphere
    double X1 = bisect(quartic, 0.0, Xminus, 1e-14);
    double X2 = bisect(quartic, Xminus, 2 * b, 1e-14);
    // sign selection from the defining equation: for t < 1/2 the negative
    // solution squares to the root below X^-, for t > 1/2 the roles swap; at
    // t = 1/2 both roots coincide with X^-
    if (t < 0.5) return {-std::sqrt(X1), std::sqrt(X2)};
    if (t > 0.5) return {-std::sqrt(X2), std::sqrt(X1)};
    return {-std::sqrt(Xminus), std::sqrt(Xminus)};
}

} // namespace sys_detail

/// All rank-zero points of the system at the given parameter, with
/// closed-form labels where the families have them and root-found fixed
/// points on fixed spheres. Degenerate whole-fiber events are reported in
/// degenerate_levels with sampled residuals.
inline FixedPointInventory fixed_points(const SystemFamily& sys, const ParamValue& pv) {
    FixedPointInventory inv;
    using sys_detail::make_entry;
    if (sys.on_spheres()) {
        const double poles[2] = {1.0, -1.0};
        const char* names[2] = {"N", "S"};
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                ChartPoint p = sphere_point(0, 0, poles[i], 0, 0, poles[j]);
                inv.points.push_back(
                    make_entry(sys, pv, std::string(names[i]) + names[j], p));
            }
        }
        if (sys.id == FamilyId::DegenAppearance && std::fabs(pv.t - 0.5) < 1e-15 &&
            std::fabs(std::fabs(sys.j0) - 1.0) < 1e-15) {
            // the circle z2 = 0 on the fixed sphere z1 = j0 is rank zero at t = 1/2
            double res = 0;
            for (int k = 0; k < 32; ++k) {
                double th = 2 * M_PI * k / 32.0;
                ChartPoint p = sphere_point(0, 0, sys.j0, std::cos(th), std::sin(th), 0);
                res = std::max(res, sys_detail::gradient_residual(sys, pv, p));
            }
            inv.notes.push_back("circle z2=0 on the fixed sphere z1=" + std::to_string(sys.j0) +
                                " is rank zero and degenerate at t=1/2, max residual " +
                                std::to_string(res));
        }
        if (sys.id == FamilyId::DegenCollapse && std::fabs(pv.t - 0.5) < 1e-15) {
            // H_{1/2} is constant on J^{-1}(j0): the fiber collapses
            inv.notes.push_back("level J=" + std::to_string(sys.j0) + " collapses at t=1/2");
        }
        return inv;
    }

    double a = sys.alpha, b = sys.beta;
    int n = sys.hirzebruch_n();
    if (n == 1) {
        ChartPoint C = chart_point(ChartId::U23, 0, 0, 0, 0);
        ChartPoint D = chart_point(ChartId::U24, 0, 0, 0, 0);
        inv.points.push_back(make_entry(sys, pv, "C", C));
        inv.points.push_back(make_entry(sys, pv, "D", D));
        if (sys.id == FamilyId::W1MovingAB) {
            auto [xm, xp] = sys_detail::w1_moving_x3(sys, pv.t);
            // pick the chart keeping the point away from a radicand zero
            auto sphere_entry = [&](const std::string& label, double x3) {
                HirzebruchPoint h;
                h.n = 1;
                h.alpha = a;
                h.beta = b;
                h.u = {std::sqrt(2 * (a + b) - x3 * x3), 0.0, x3,
                       std::sqrt(std::max(0.0, 2 * b - x3 * x3))};
                ChartId chart = x3 * x3 <= b ? ChartId::U14 : ChartId::U13;
                auto c = hirzebruch_chart(h, chart);
                return make_entry(sys, pv, label, chart_point(chart, c[0], c[1], c[2], c[3]));
            };
            inv.points.push_back(sphere_entry("A", xm));
            inv.points.push_back(sphere_entry("B", xp));
        } else if (sys.id == FamilyId::W1Switch) {
            inv.points.push_back(make_entry(sys, pv, "A", chart_point(ChartId::U14, 0, 0, 0, 0)));
            inv.points.push_back(make_entry(sys, pv, "B", chart_point(ChartId::U13, 0, 0, 0, 0)));
            if (std::fabs(pv.t - 0.5) < 1e-15) {
                double res = 0;
                for (int k = 1; k < 16; ++k) {
                    for (int l = 0; l < 8; ++l) {
                        double rho = std::sqrt(2 * b) * k / 16.0;
                        double th = 2 * M_PI * l / 8.0;
                        ChartPoint p = chart_point(ChartId::U14, 0, 0, rho * std::cos(th),
                                                   rho * std::sin(th));
                        res = std::max(res, sys_detail::gradient_residual(sys, pv, p));
                    }
                }
                inv.degenerate_levels.push_back({0.0, res});
                inv.notes.push_back("entire fixed sphere J^{-1}(0) is rank zero at t=1/2");
            }
        } else { // hyperbolic family: search the fixed sphere numerically
            double t = pv.t;
            auto dHdr = [&](double rho, double cth) {
                // radial derivative of H restricted to the fixed sphere at angle 0 or pi
                double s = rho * rho;
                double g1 = (2 * b - s) * (2 * (a + b) - s);
                double dg1 = -2 * rho * ((2 * (a + b) - s) + (2 * b - s));
                double sq = std::sqrt(std::max(g1, 0.0));
                double dX = sq + rho * dg1 / (2 * sq);
                return (1 - 2 * t) * rho + t * sys.gamma * cth * dX +
                       2 * t * (-2 * rho) * ((2 * b - s) + (2 * (a + b) - s));
            };
            for (double cth : {1.0, -1.0}) {
                const int grid = 400;
                double rmax = std::sqrt(2 * b) * (1 - 1e-9);
                double prev = dHdr(rmax / grid, cth);
                for (int k = 2; k <= grid; ++k) {
                    double r = rmax * k / grid;
                    double curv = dHdr(r, cth);
                    if ((prev <= 0) != (curv <= 0)) {
                        double root = sys_detail::bisect(
                            [&](double x) { return dHdr(x, cth); }, rmax * (k - 1) / grid, r,
                            1e-13);
                        inv.points.push_back(make_entry(
                            sys, pv, cth > 0 ? "S+" : "S-",
                            chart_point(ChartId::U14, 0, 0, cth > 0 ? root : -root, 0)));
                    }
                    prev = curv;
                }
            }
        }
    } else {
        ChartPoint A = chart_point(ChartId::U14, 0, 0, 0, 0);
        ChartPoint B = chart_point(ChartId::U13, 0, 0, 0, 0);
        ChartPoint C = chart_point(ChartId::U23, 0, 0, 0, 0);
        ChartPoint D = chart_point(ChartId::U24, 0, 0, 0, 0);
        inv.points.push_back(make_entry(sys, pv, "A", A));
        inv.points.push_back(make_entry(sys, pv, "B", B));
        inv.points.push_back(make_entry(sys, pv, "C", C));
        inv.points.push_back(make_entry(sys, pv, "D", D));
    }
    return inv;
}

struct MomentumImage {
    struct Sample {
        double J, H;
        int stratum;
    };
    struct EnvelopeRow {
        double J, Hmin, Hmax;
    };
    std::vector<Sample> samples;
    std::vector<EnvelopeRow> envelope;
    std::vector<std::pair<double, double>> fixed_point_images;
};

/// Deterministic stratified sampling of the momentum map image with a
/// per-J-slice min/max H envelope and the fixed-point images overlaid.
inline MomentumImage momentum_image(const SystemFamily& sys, const ParamValue& pv,
                                    int resolution) {
    if (resolution < 8) throw std::domain_error("momentum_image: resolution must be >= 8");
    MomentumImage out;
    double jmin = 0, jmax = 0;
    if (sys.on_spheres()) {
        if (sys.id == FamilyId::DegenAppearance || sys.id == FamilyId::DegenBecome) {
            jmin = -1;
            jmax = 1;
        } else {
            jmin = -(sys.R1 + sys.R2);
            jmax = sys.R1 + sys.R2;
        }
    } else {
        jmax = sys.alpha + sys.hirzebruch_n() * sys.beta;
    }
    int nbin = resolution;
    std::vector<double> hmin(nbin, 1e300), hmax(nbin, -1e300);
    auto record = [&](double J, double H, int stratum) {
        out.samples.push_back({J, H, stratum});
        int bin = static_cast<int>((J - jmin) / (jmax - jmin) * nbin);
        if (bin == nbin) bin = nbin - 1;
        if (bin >= 0 && bin < nbin) {
            hmin[bin] = std::min(hmin[bin], H);
            hmax[bin] = std::max(hmax[bin], H);
        }
    };

    if (sys.on_spheres()) {
        for (int i = 0; i <= resolution; ++i) {
            double z1 = -1.0 + 2.0 * i / resolution;
            double r1 = std::sqrt(std::max(0.0, 1 - z1 * z1));
            for (int j = 0; j <= resolution; ++j) {
                double z2 = -1.0 + 2.0 * j / resolution;
                double r2 = std::sqrt(std::max(0.0, 1 - z2 * z2));
                for (int k = 0; k < resolution; ++k) {
                    double ph = 2 * M_PI * k / resolution;
                    ChartPoint p =
                        sphere_point(r1, 0, z1, r2 * std::cos(ph), r2 * std::sin(ph), z2);
                    MomentumValue v = evaluate(sys, pv, p);
                    record(v.J, v.H, 0);
                }
            }
        }
    } else {
        int n = sys.hirzebruch_n();
        double a = sys.alpha, b = sys.beta;
        for (int i = 0; i <= resolution; ++i) {
            double j = jmin + (jmax - jmin) * i / resolution;
            double smax = n == 1 ? std::min(2 * b, 2 * (a + b - j))
                                 : std::min({2 * b, 2 * j, 2 * (a + 2 * b - j)});
            if (smax < 0) continue;
            for (int k = 0; k <= resolution; ++k) {
                double s = smax * k / resolution;
                for (int l = 0; l < resolution; ++l) {
                    double th = 2 * M_PI * l / resolution;
                    HirzebruchPoint h;
                    h.n = n;
                    h.alpha = a;
                    h.beta = b;
                    h.u[2] = std::polar(std::sqrt(s), th);
                    h.u[3] = std::sqrt(std::max(0.0, 2 * b - s));
                    if (n == 1) {
                        h.u[1] = std::sqrt(2 * j);
                        h.u[0] = std::sqrt(std::max(0.0, 2 * (a + b) - 2 * j - s));
                    } else {
                        h.u[1] = std::sqrt(std::max(0.0, 2 * j - s));
                        h.u[0] = std::sqrt(std::max(0.0, 2 * (a + 2 * b) - 2 * j - s));
                    }
                    MomentumValue v = evaluate(sys, pv, h);
                    record(v.J, v.H, 0);
                }
            }
        }
    }
    for (int bIdx = 0; bIdx < nbin; ++bIdx) {
        if (hmin[bIdx] > hmax[bIdx]) continue;
        out.envelope.push_back(
            {jmin + (jmax - jmin) * (bIdx + 0.5) / nbin, hmin[bIdx], hmax[bIdx]});
    }
    for (const auto& fp : fixed_points(sys, pv).points)
        out.fixed_point_images.push_back({fp.J, fp.H});
    return out;
}

} // namespace semitoric
