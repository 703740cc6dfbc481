#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace semitoric {

/// Adaptive Gauss-Kronrod (G7, K15) quadrature on a finite interval.
/// Subdivides the interval with the largest K-G error estimate until the
/// summed estimate meets the tolerance.
struct QuadratureResult {
    double value = 0;
    double error = 0;
    int intervals = 0;
};

namespace quad_detail {

// 15-point Kronrod abscissae (positive half) and weights; 7-point Gauss
// weights for the embedded rule.
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename F>
Panel gk15(F&& f, double a, double b) {
    double h = 0.5 * (b - a);
    double c = 0.5 * (a + b);
    double fc = f(c);
    double kron = wgk[7] * fc;
    double gauss = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = h * xgk[i];
        double fsum = f(c - dx) + f(c + dx);
        kron += wgk[i] * fsum;
        if (i % 2 == 1) gauss += wg[i / 2] * fsum;
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::fabs(kron - gauss)};
}

} // namespace quad_detail

template <typename F>
QuadratureResult integrate(F&& f, double a, double b, double rel_tol = 1e-10,
                           double abs_tol = 1e-13, int max_panels = 400) {
    using quad_detail::Panel;
    std::priority_queue<Panel> panels;
    panels.push(quad_detail::gk15(f, a, b));
    double total = panels.top().value;
    double err = panels.top().error;
    int count = 1;
    while (count < max_panels && err > std::max(abs_tol, rel_tol * std::fabs(total))) {
        Panel worst = panels.top();
        panels.pop();
        double mid = 0.5 * (worst.a + worst.b);
        Panel left = quad_detail::gk15(f, worst.a, mid);
        Panel right = quad_detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++count;
    }
    // recompute the totals from the final partition for stability
    double value = 0, error = 0;
    while (!panels.empty()) {
        value += panels.top().value;
        error += panels.top().error;
        panels.pop();
    }
    return {value, error, count};
}

} // namespace semitoric
