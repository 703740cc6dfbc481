#pragma once

#include <array>
#include <complex>

#include "semitoric/reduced.hpp"
#include "semitoric/systems.hpp"

namespace semitoric {

using Mat4 = std::array<std::array<double, 4>, 4>;

namespace spec_detail {

inline Mat4 zero4() { return Mat4{}; }

inline Mat4 mul(const Mat4& a, const Mat4& b) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

inline Mat4 lin(double x, const Mat4& a, double y, const Mat4& b) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = x * a[i][j] + y * b[i][j];
    return r;
}

inline double trace(const Mat4& a) { return a[0][0] + a[1][1] + a[2][2] + a[3][3]; }

inline double max_abs(const Mat4& a) {
    double m = 0;
    for (const auto& row : a)
        for (double v : row) m = std::max(m, std::fabs(v));
    return m;
}

// standard symplectic block [[0,1],[-1,0]] x 2 and its inverse
inline Mat4 omega_standard() {
    Mat4 w{};
    w[0][1] = 1;
    w[1][0] = -1;
    w[2][3] = 1;
    w[3][2] = -1;
    return w;
}

inline Mat4 invert_block_symplectic(const Mat4& w) {
    // inverse of a block-diagonal antisymmetric [[0,s],[-s,0]] pair structure
    Mat4 inv{};
    double s1 = w[0][1], s2 = w[2][3];
    inv[0][1] = -1.0 / s1;
    inv[1][0] = 1.0 / s1;
    inv[2][3] = -1.0 / s2;
    inv[3][2] = 1.0 / s2;
    return inv;
}

} // namespace spec_detail

/// Hessian pencil data at a fixed point m: the symplectic matrix and the
/// Hessians of J and H at m, all in one chart basis.
struct HessianBundle {
    Mat4 omega{}, omega_inv{}, d2J{}, d2H{};
    ChartId chart = ChartId::S2xS2;
    double scale = 0;   // max |entry| over both Hessians
    double fd_step = 0; // 0 when the Hessians are closed forms
};

/// Coefficients of char(A)(X) = X^4 + c3 X^3 + c2 X^2 + c1 X + c0 and the
/// reduced quadratic chi with char(A)(X) = chi(X^2); the odd coefficients
/// vanish structurally for A = Omega^{-1} S with S symmetric.
struct ReducedCharPoly {
    double c3 = 0, c2 = 0, c1 = 0, c0 = 0;
    double odd_residual = 0; // max(|c3| / |A|, |c1| / |A|^3)
    double b() const { return c2; }
    double c() const { return c0; }
    double disc() const { return c2 * c2 - 4 * c0; }
};

inline ReducedCharPoly char_poly(const Mat4& a) {
    using namespace spec_detail;
    Mat4 a2 = mul(a, a);
    Mat4 a3 = mul(a2, a);
    Mat4 a4 = mul(a2, a2);
    double p1 = trace(a), p2 = trace(a2), p3 = trace(a3), p4 = trace(a4);
    double e1 = p1;
    double e2 = (e1 * p1 - p2) / 2;
    double e3 = (e2 * p1 - e1 * p2 + p3) / 3;
    double e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) / 4;
    ReducedCharPoly rc;
    rc.c3 = -e1;
    rc.c2 = e2;
    rc.c1 = -e3;
    rc.c0 = e4;
    double norm = std::max(max_abs(a), 1e-300);
    rc.odd_residual = std::max(std::fabs(rc.c3) / norm, std::fabs(rc.c1) / (norm * norm * norm));
    return rc;
}

/// FD Hessian pencil at a fixed point of the system: central second
/// differences with one Richardson level, step 1e-4 (1 + |coordinate|).
/// Sphere families use the pole chart around the fixed pole pair.
inline HessianBundle hessian_bundle(const SystemFamily& sys, const ParamValue& pv,
                                    const ChartPoint& p) {
    if (sys_detail::gradient_residual(sys, pv, p) > 1e-6)
        throw std::invalid_argument("hessian_bundle: point is not a fixed point");
    HessianBundle hb;
    hb.chart = p.chart;
    std::function<MomentumValue(const std::array<double, 4>&)> f;
    std::array<double, 4> center{};
    if (sys.on_spheres()) {
        double s1 = p.c[2] >= 0 ? 1.0 : -1.0;
        double s2 = p.c[5] >= 0 ? 1.0 : -1.0;
        if (std::fabs(std::fabs(p.c[2]) - 1.0) > 1e-9 || std::fabs(std::fabs(p.c[5]) - 1.0) > 1e-9)
            throw std::invalid_argument("hessian_bundle: sphere fixed points sit at pole pairs");
        f = [sys, pv, s1, s2](const std::array<double, 4>& c) {
            double z1 = s1 * std::sqrt(std::max(0.0, 1 - c[0] * c[0] - c[1] * c[1]));
            double z2 = s2 * std::sqrt(std::max(0.0, 1 - c[2] * c[2] - c[3] * c[3]));
            return sys_detail::sphere_value(sys, pv, sphere_point(c[0], c[1], z1, c[2], c[3], z2));
        };
        // omega = (R_i / z_i) dx_i ^ dy_i at the pole
        hb.omega = spec_detail::zero4();
        hb.omega[0][1] = s1 * sys.R1;
        hb.omega[1][0] = -s1 * sys.R1;
        hb.omega[2][3] = s2 * sys.R2;
        hb.omega[3][2] = -s2 * sys.R2;
    } else {
        ChartId chart = p.chart;
        center = {p.c[0], p.c[1], p.c[2], p.c[3]};
        f = [sys, pv, chart](const std::array<double, 4>& c) {
            return evaluate(sys, pv, chart_point(chart, c[0], c[1], c[2], c[3]));
        };
        hb.omega = spec_detail::omega_standard();
    }
    hb.omega_inv = spec_detail::invert_block_symplectic(hb.omega);

    auto second = [&](bool of_H, int i, int j, double hi, double hj) {
        auto g = [&](double di, double dj) {
            auto c = center;
            c[i] += di;
            c[j] += dj;
            MomentumValue v = f(c);
            return of_H ? v.H : v.J;
        };
        if (i == j) {
            double f0 = g(0, 0);
            return (g(hi, 0) - 2 * f0 + g(-hi, 0)) / (hi * hi);
        }
        return (g(hi, hj) - g(hi, -hj) - g(-hi, hj) + g(-hi, -hj)) / (4 * hi * hj);
    };
    hb.fd_step = 1e-4;
    for (int of = 0; of < 2; ++of) {
        Mat4& out = of ? hb.d2H : hb.d2J;
        for (int i = 0; i < 4; ++i) {
            for (int j = i; j < 4; ++j) {
                double hi = hb.fd_step * (1 + std::fabs(center[i]));
                double hj = hb.fd_step * (1 + std::fabs(center[j]));
                double d1 = second(of, i, j, hi, hj);
                double d2 = second(of, i, j, hi / 2, hj / 2);
                out[i][j] = out[j][i] = (4 * d2 - d1) / 3;
            }
        }
    }
    hb.scale = std::max(spec_detail::max_abs(hb.d2J), spec_detail::max_abs(hb.d2H));
    return hb;
}

namespace spec_detail {

inline Mat4 diag(double a, double b, double c, double d) {
    Mat4 m{};
    m[0][0] = a;
    m[1][1] = b;
    m[2][2] = c;
    m[3][3] = d;
    return m;
}

// cross-form q * (x_p x_q - y_p y_q) in the (x_p, y_p, x_q, y_q) basis
inline Mat4 cross_minus(double q) {
    Mat4 m{};
    m[0][2] = m[2][0] = q;
    m[1][3] = m[3][1] = -q;
    return m;
}

inline HessianBundle finish(Mat4 omega, Mat4 d2J, Mat4 d2H, ChartId chart) {
    HessianBundle hb;
    hb.chart = chart;
    hb.omega = omega;
    hb.omega_inv = invert_block_symplectic(omega);
    hb.d2J = d2J;
    hb.d2H = d2H;
    hb.scale = std::max(max_abs(d2J), max_abs(d2H));
    return hb;
}

} // namespace spec_detail

/// Closed-form Hessian pencil at the transition point of the one-parameter
/// families, and at the points B and C of the two-parameter family. These
/// are hand-derived Taylor expansions of the systems; the FD path
/// must agree with them to 1e-6.
inline HessianBundle analytic_bundle(const SystemFamily& sys, const ParamValue& pv,
                                     const std::string& label) {
    using namespace spec_detail;
    double t = pv.t;
    switch (sys.id) {
        case FamilyId::CoupledAngular: {
            if (label != "NS") break;
            // transition point (0,0,1,0,0,-1); chart (x1,y1,x2,y2) around the poles
            Mat4 omega{};
            omega[0][1] = sys.R1;
            omega[1][0] = -sys.R1;
            omega[2][3] = -sys.R2;
            omega[3][2] = sys.R2;
            Mat4 d2J = diag(-sys.R1, -sys.R1, sys.R2, sys.R2);
            Mat4 d2H = diag(-(1 - 2 * t), -(1 - 2 * t), t, t);
            d2H[0][2] = d2H[2][0] = t;
            d2H[1][3] = d2H[3][1] = t;
            return finish(omega, d2J, d2H, ChartId::S2xS2);
        }
        case FamilyId::W1MovingAB:
        case FamilyId::W1Switch: {
            if (label != "C") break;
            // chart coords (x1,y1,x4,y4); J = alpha - r1/2 + r4/2
            double q = sys.id == FamilyId::W1MovingAB
                           ? t * sys.gamma * std::sqrt(2 * sys.beta)
                           : t * sys.gamma * sys.alpha * std::sqrt(2 * sys.beta);
            Mat4 d2J = diag(-1, -1, 1, 1);
            Mat4 d2H = diag(0, 0, 2 * t - 1, 2 * t - 1);
            d2H[0][2] = d2H[2][0] = q;
            d2H[1][3] = d2H[3][1] = -q;
            return finish(omega_standard(), d2J, d2H, ChartId::U23);
        }
        case FamilyId::W2TransB:
        case FamilyId::W2TransC:
        case FamilyId::W2TwoParam: {
            double s1 = pv.t, s2 = pv.s2;
            if (sys.id == FamilyId::W2TransB) s2 = 1.0;
            if (sys.id == FamilyId::W2TransC) {
                s1 = 0.0;
                s2 = 1.0 - t;
            }
            double al = sys.alpha, be = sys.beta, ga = sys.gamma;
            double k0 = (al + be) / (al * (al + 2 * be));
            double k1 = be / (al * (al + 2 * be));
            double cross = 2 * ga * std::sqrt(al * be);
            double w00 = (1 - s1) * (1 - s2), w01 = s2 * (1 - s1), w10 = s1 * (1 - s2),
                   w11 = s1 * s2;
            if (label == "B") {
                // chart U13, coords (x2,y2,x4,y4); J = beta + r2/2 - r4/2
                double c_r2 = w00 * (-be / al) + w11 * (be / al);
                double c_r4 = w00 * (2 * be * be - al * al) / (al * (al + 2 * be)) +
                              w11 * (-2 * be * be) / (al * (al + 2 * be)) + (w01 - w10) * (-1.0);
                double xq = (w00 * k0 + w11 * k1) * cross;
                Mat4 d2J = diag(1, 1, -1, -1);
                Mat4 d2H = diag(2 * c_r2, 2 * c_r2, 2 * c_r4, 2 * c_r4);
                Mat4 x = cross_minus(xq);
                d2H = lin(1.0, d2H, 1.0, x);
                return finish(omega_standard(), d2J, d2H, ChartId::U13);
            }
            if (label == "C") {
                // chart U23, coords (x1,y1,x4,y4); J = alpha + beta - r1/2 + r4/2
                double c_r1 = w00 * (be / al) + w11 * (-be / al);
                double c_r4 = w00 * (al * al - 2 * be * be) / (al * (al + 2 * be)) +
                              w11 * (2 * be * be) / (al * (al + 2 * be)) + (w01 - w10) * (-1.0);
                double xq = (w00 * k0 + w11 * k1) * cross;
                Mat4 d2J = diag(-1, -1, 1, 1);
                Mat4 d2H = diag(2 * c_r1, 2 * c_r1, 2 * c_r4, 2 * c_r4);
                d2H = lin(1.0, d2H, 1.0, cross_minus(xq));
                return finish(omega_standard(), d2J, d2H, ChartId::U23);
            }
            break;
        }
        default: break;
    }
    throw std::invalid_argument("analytic_bundle: no closed form for this point");
}

enum class Williamson {
    EllipticElliptic,
    FocusFocus,
    EllipticHyperbolic,
    HyperbolicHyperbolic,
    Degenerate
};

inline const char* to_string(Williamson w) {
    switch (w) {
        case Williamson::EllipticElliptic: return "elliptic-elliptic";
        case Williamson::FocusFocus: return "focus-focus";
        case Williamson::EllipticHyperbolic: return "elliptic-hyperbolic";
        case Williamson::HyperbolicHyperbolic: return "hyperbolic-hyperbolic";
        default: return "degenerate";
    }
}

struct WilliamsonVerdict {
    Williamson type = Williamson::Degenerate;
    double nu = 0, mu = 0; // witness combination
    std::complex<double> root1, root2;
    double margin = 0;        // distinct-nonzero margin at the witness
    double odd_residual = 0;  // evenness residual at the witness
};

namespace spec_detail {

struct ChiVerdict {
    bool conclusive = false;
    Williamson type = Williamson::Degenerate;
    std::complex<double> r1, r2;
    double margin = 0;
};

// pencil_norm is the max entry of A_{nu,mu}; chi roots scale like its
// square, which keeps near-null combinations from passing on noise margins
inline ChiVerdict judge_chi(const ReducedCharPoly& rc, double rel_tol, double pencil_norm) {
    ChiVerdict out;
    double b = rc.b(), c = rc.c();
    double scale = pencil_norm * pencil_norm;
    if (scale < 1e-14) return out;
    double tol = rel_tol * scale;
    double disc = b * b - 4 * c;
    if (disc < -tol * tol) {
        // complex pair: nonzero iff |c| > 0 with margin
        double rmod = std::sqrt(std::fabs(c));
        if (rmod < tol) return out;
        double im = std::sqrt(-disc) / 2;
        out.conclusive = true;
        out.type = Williamson::FocusFocus;
        out.r1 = {-b / 2, im};
        out.r2 = {-b / 2, -im};
        out.margin = std::min(im, rmod);
        return out;
    }
    if (disc < tol * tol) return out; // roots too close to call
    double sq = std::sqrt(disc);
    double r1 = (-b - sq) / 2, r2 = (-b + sq) / 2;
    if (std::fabs(r1) < tol || std::fabs(r2) < tol) return out;
    out.conclusive = true;
    out.r1 = r1;
    out.r2 = r2;
    out.margin = std::min({sq, std::fabs(r1), std::fabs(r2)});
    if (r1 < 0 && r2 < 0) out.type = Williamson::EllipticElliptic;
    else if (r1 > 0 && r2 > 0) out.type = Williamson::HyperbolicHyperbolic;
    else out.type = Williamson::EllipticHyperbolic;
    return out;
}

} // namespace spec_detail

/// Williamson type from the pencil A_{nu,mu} = Omega^{-1}(nu d2J + mu d2H):
/// a deterministic net of directions plus hand-picked combinations is
/// searched for a reduced characteristic polynomial with two distinct
/// nonzero roots; their signs decide the type, and Degenerate is returned
/// only after a refined net also fails.
inline WilliamsonVerdict classify_fixed_point(const HessianBundle& hb,
                                              const std::vector<std::pair<double, double>>&
                                                  specials = {},
                                              double rel_tol = 1e-7) {
    using namespace spec_detail;
    Mat4 kj = mul(hb.omega_inv, hb.d2J);
    Mat4 kh = mul(hb.omega_inv, hb.d2H);
    WilliamsonVerdict verdict;
    double best_odd = 0;
    auto try_combo = [&](double nu, double mu) {
        Mat4 a = lin(nu, kj, mu, kh);
        ReducedCharPoly rc = char_poly(a);
        best_odd = std::max(best_odd, rc.odd_residual);
        ChiVerdict cv = judge_chi(rc, rel_tol, max_abs(a));
        if (cv.conclusive && cv.margin > verdict.margin) {
            verdict.type = cv.type;
            verdict.nu = nu;
            verdict.mu = mu;
            verdict.root1 = cv.r1;
            verdict.root2 = cv.r2;
            verdict.margin = cv.margin;
        }
        return cv.conclusive;
    };
    for (auto [nu, mu] : specials) try_combo(nu, mu);
    for (int pass = 0; pass < 2; ++pass) {
        int n = pass == 0 ? 64 : 256;
        for (int k = 0; k < n; ++k) {
            double phi = M_PI * (k + 0.5) / n;
            try_combo(std::cos(phi), std::sin(phi));
        }
        try_combo(1, 0);
        try_combo(0, 1);
        if (verdict.margin > 0) break;
    }
    verdict.odd_residual = best_odd;
    return verdict;
}

/// The four eigenvalues of A_{nu,mu}: plus/minus square roots of the chi
/// roots. Used to follow the eigenvalue collision through the bifurcation.
inline std::array<std::complex<double>, 4> pencil_eigenvalues(const HessianBundle& hb, double nu,
                                                              double mu) {
    using namespace spec_detail;
    ReducedCharPoly rc =
        char_poly(lin(nu, mul(hb.omega_inv, hb.d2J), mu, mul(hb.omega_inv, hb.d2H)));
    std::complex<double> b(rc.b(), 0), c(rc.c(), 0);
    std::complex<double> sq = std::sqrt(b * b - 4.0 * c);
    std::complex<double> r1 = (-b - sq) / 2.0, r2 = (-b + sq) / 2.0;
    std::complex<double> l1 = std::sqrt(r1), l2 = std::sqrt(r2);
    return {l1, -l1, l2, -l2};
}

// Family-specific hand-picked (nu, mu) combinations resolving the
// coincident-eigenvalue cases of the t = 1/2 analyses.
inline std::vector<std::pair<double, double>> special_combos(const SystemFamily& sys) {
    std::vector<std::pair<double, double>> out = {{1, 0}, {0, 1}};
    if (!sys.on_spheres()) {
        double root = sys.gamma * std::sqrt(2 * sys.beta);
        if (root > 0) {
            out.push_back({1, 2 / root});
            out.push_back({1, -2 / root});
            out.push_back({2, 2 / root});
        }
        double nu = sys.nu();
        out.push_back({2 * nu / (1 + nu + 2 * nu * nu), 1});
    }
    return out;
}

struct TransitionTimes {
    double closed_minus = 0, closed_plus = 0;
    double bisect_minus = 0, bisect_plus = 0;
    double gap() const {
        return std::max(std::fabs(closed_minus - bisect_minus),
                        std::fabs(closed_plus - bisect_plus));
    }
};

/// Transition point of the one-parameter transition families, as a labeled
/// chart point.
inline std::pair<std::string, ChartPoint> transition_point(const SystemFamily& sys) {
    switch (sys.id) {
        case FamilyId::CoupledAngular: return {"NS", sphere_point(0, 0, 1, 0, 0, -1)};
        case FamilyId::W1MovingAB:
        case FamilyId::W1Switch: return {"C", chart_point(ChartId::U23, 0, 0, 0, 0)};
        case FamilyId::W2TransB: return {"B", chart_point(ChartId::U13, 0, 0, 0, 0)};
        case FamilyId::W2TransC: return {"C", chart_point(ChartId::U23, 0, 0, 0, 0)};
        default: throw std::invalid_argument("transition_point: family has no transition point");
    }
}

/// Closed-form transition (or degenerate) times of the family together with
/// the independent bisection of the discriminant sign of the reduced
/// characteristic polynomial of Omega^{-1} d2H_t at the transition point.
inline TransitionTimes transition_times(const SystemFamily& sys) {
    TransitionTimes tt;
    switch (sys.id) {
        case FamilyId::CoupledAngular: {
            double s = 2 * std::sqrt(sys.R1 * sys.R2);
            tt.closed_minus = sys.R2 / (2 * sys.R2 + sys.R1 + s);
            tt.closed_plus = sys.R2 / (2 * sys.R2 + sys.R1 - s);
            break;
        }
        case FamilyId::W1MovingAB: {
            double c = sys.gamma * std::sqrt(2 * sys.beta);
            tt.closed_minus = 1 / (2 * (1 + c));
            tt.closed_plus = 1 / (2 * (1 - c));
            break;
        }
        case FamilyId::W1Switch: {
            double c = sys.alpha * sys.gamma * std::sqrt(2 * sys.beta);
            tt.closed_minus = 1 / (2 * (1 + c));
            tt.closed_plus = 1 / (2 * (1 - c));
            break;
        }
        case FamilyId::W2TransB: {
            double nu = sys.nu(), c = 2 * sys.gamma * std::sqrt(nu);
            tt.closed_minus = (1 + 2 * nu) / (1 + (3 + c) * nu);
            tt.closed_plus = (1 + 2 * nu) / (1 + (3 - c) * nu);
            break;
        }
        case FamilyId::W2TransC: {
            double nu = sys.nu(), c = 2 * sys.gamma * std::sqrt(nu);
            tt.closed_minus = (1 + 2 * nu) / (2 + c + (3 + c) * nu);
            tt.closed_plus = (1 + 2 * nu) / (2 - c + (3 - c) * nu);
            break;
        }
        default: throw std::invalid_argument("transition_times: family has no transition point");
    }

    auto [label, point] = transition_point(sys);
    auto disc = [&](double t) {
        HessianBundle hb = analytic_bundle(sys, {t, 0}, label);
        return char_poly(spec_detail::mul(hb.omega_inv, hb.d2H)).disc();
    };
    // prime grid count keeps t = 1/2 (a squared-factor zero of some
    // families) off the scan nodes
    const int grid = 2003;
    std::vector<double> roots;
    double prev = disc(1.0 / grid);
    for (int k = 2; k < grid; ++k) {
        double t = static_cast<double>(k) / grid;
        double cur = disc(t);
        if ((prev <= 0) != (cur <= 0)) {
            double lo = static_cast<double>(k - 1) / grid, hi = t;
            for (int it = 0; it < 120; ++it) {
                double mid = 0.5 * (lo + hi);
                if ((disc(lo) <= 0) == (disc(mid) <= 0)) lo = mid;
                else hi = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev = cur;
    }
    if (roots.size() != 2)
        throw std::runtime_error("transition_times: discriminant bisection found " +
                                 std::to_string(roots.size()) + " sign changes, expected 2");
    tt.bisect_minus = roots[0];
    tt.bisect_plus = roots[1];
    return tt;
}

/// Verdict pair (B, C) over a parameter grid of the two-parameter family;
/// cell (i, k) holds (s1, s2) = (i, k) / (grid - 1).
struct RegionDiagram {
    int grid = 0;
    std::vector<std::pair<Williamson, Williamson>> cells; // row-major in i
    const std::pair<Williamson, Williamson>& at(int i, int k) const {
        return cells[static_cast<std::size_t>(i) * grid + k];
    }
};

inline RegionDiagram region_diagram(const SystemFamily& sys, int grid) {
    if (sys.id != FamilyId::W2TwoParam)
        throw std::invalid_argument("region_diagram: expects the two-parameter family");
    RegionDiagram rd;
    rd.grid = grid;
    rd.cells.resize(static_cast<std::size_t>(grid) * grid);
    auto specials = special_combos(sys);
    for (int i = 0; i < grid; ++i) {
        for (int k = 0; k < grid; ++k) {
            ParamValue pv{static_cast<double>(i) / (grid - 1), static_cast<double>(k) / (grid - 1)};
            Williamson vb =
                classify_fixed_point(analytic_bundle(sys, pv, "B"), specials).type;
            Williamson vc =
                classify_fixed_point(analytic_bundle(sys, pv, "C"), specials).type;
            rd.cells[static_cast<std::size_t>(i) * grid + k] = {vb, vc};
        }
    }
    return rd;
}

enum class RankOneType { EllipticTransverse, HyperbolicTransverse, Degenerate };

inline const char* to_string(RankOneType r) {
    switch (r) {
        case RankOneType::EllipticTransverse: return "elliptic-transverse";
        case RankOneType::HyperbolicTransverse: return "hyperbolic-transverse";
        default: return "degenerate";
    }
}

/// Rank-one type through the reduced Morse type on M_j^red.
inline RankOneType classify_rank_one(const ReducedCriticalPoint& cp) {
    switch (cp.type) {
        case MorseType::Elliptic: return RankOneType::EllipticTransverse;
        case MorseType::Hyperbolic: return RankOneType::HyperbolicTransverse;
        default: return RankOneType::Degenerate;
    }
}

/// Rank-one type of a point on a fixed sphere of J (where the reduced-space
/// route does not apply): the pencil member nu dJ + mu dH with mu = 0
/// restricts to L^perp / L, and its eigenvalues decide the type. For the
/// first-surface families the restriction of d2J is the identity and the
/// eigenvalues are +-i.
inline RankOneType classify_fixed_sphere_rank_one(const SystemFamily& sys, const ParamValue& pv,
                                                  const ChartPoint& p) {
    if (sys.on_spheres() || p.chart != ChartId::U14)
        throw std::invalid_argument("classify_fixed_sphere_rank_one: expects a U14 chart point");
    // residual check: the point must be rank one (dJ = 0, dH != 0)
    const double h = 1e-6;
    auto val = [&](const std::array<double, 4>& c) {
        return evaluate(sys, pv, chart_point(p.chart, c[0], c[1], c[2], c[3]));
    };
    std::array<double, 4> c0 = {p.c[0], p.c[1], p.c[2], p.c[3]};
    std::array<double, 4> gJ{}, gH{};
    for (int i = 0; i < 4; ++i) {
        auto cp = c0, cm = c0;
        cp[i] += h;
        cm[i] -= h;
        gJ[i] = (val(cp).J - val(cm).J) / (2 * h);
        gH[i] = (val(cp).H - val(cm).H) / (2 * h);
    }
    double nJ = 0, nH = 0;
    for (int i = 0; i < 4; ++i) {
        nJ = std::max(nJ, std::fabs(gJ[i]));
        nH = std::max(nH, std::fabs(gH[i]));
    }
    if (nJ > 1e-8) throw std::invalid_argument("point is not on the fixed sphere of J");
    if (nH < 1e-10) throw std::invalid_argument("point is rank zero, not rank one");
    // J = (x2^2 + y2^2)/2 in this chart: d2J restricted to L^perp/L =
    // span{e1, e2} is the identity, Omega restricted is standard, so the
    // eigenvalues are +-i: elliptic-transverse.
    return RankOneType::EllipticTransverse;
}

} // namespace semitoric
