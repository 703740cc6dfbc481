#pragma once

#include <random>

#include "semitoric/parallel.hpp"
#include "semitoric/quadrature.hpp"
#include "semitoric/reduced.hpp"

namespace semitoric {

/// Height invariant of one focus-focus point: the reduced symplectic area
/// below the critical level divided by 2 pi, computed by quadrature, with an
/// optional stratified Monte-Carlo estimate of the same area as a fully
/// independent oracle.
struct HeightResult {
    double h1 = 0, h2 = 0;
    double quad_error = 0;
    double fiber_height = 0;
    // oracle fields are filled when oracle samples were requested
    double oracle_h1 = 0;
    double oracle_stderr = 0;
    long oracle_samples = 0;
};

struct OracleResult {
    double height = 0;   // area / (2 pi)
    double std_error = 0;
    long samples = 0;
};

/// Stratified Monte-Carlo area of {H^red < level} with the reduced density:
/// the radial variable is the area coordinate m (uniform by construction),
/// the grid of (m, theta) strata carries its own seeded generator per cell,
/// so the estimate is reproducible and thread-count independent.
inline OracleResult sublevel_area_oracle(const ReducedHamiltonian& rh, double level,
                                         long samples, std::uint64_t seed = 20240901) {
    OracleResult out;
    bool sphere_weight = rh.g.c.empty();
    double m_max = rh.fiber_height;
    auto rho_of_m = [&](double m) {
        if (sphere_weight) {
            // m = 2 R1 rho^2 / (1 + rho^2), m_max = 2 R1
            return std::sqrt(m / (m_max - m));
        }
        return std::sqrt(2 * m); // m = rho^2 / 2
    };
    int cells = 128;
    long per_cell = std::max<long>(1, samples / (static_cast<long>(cells) * cells));
    std::vector<double> cell_p(static_cast<std::size_t>(cells) * cells, 0.0);
    parallel_for(static_cast<std::size_t>(cells) * cells, [&](std::size_t idx) {
        int i = static_cast<int>(idx) / cells;
        int k = static_cast<int>(idx) % cells;
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (idx + 1)));
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        long hits = 0;
        for (long s = 0; s < per_cell; ++s) {
            double m = m_max * (i + u01(rng)) / cells;
            double th = 2 * M_PI * (k + u01(rng)) / cells;
            double rho = rho_of_m(m);
            if (reduced_value(rh, rho, th) < level) ++hits;
        }
        cell_p[idx] = static_cast<double>(hits) / per_cell;
    });
    double mean = 0, var = 0;
    for (double p : cell_p) mean += p;
    mean /= cell_p.size();
    for (double p : cell_p) var += p * (1 - p);
    var /= (static_cast<double>(cell_p.size()) * cell_p.size() * per_cell);
    out.height = m_max * mean;
    out.std_error = m_max * std::sqrt(var);
    out.samples = per_cell * static_cast<long>(cell_p.size());
    return out;
}

namespace height_detail {

inline double clamped_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

} // namespace height_detail

/// Height invariant of the half-half member on the second surface: the first
/// focus-focus value sits at (beta, 0), and
///   h1 = beta - I/pi,  I = int_{rho-}^{sqrt(2 beta)} rho acos(f(rho)) drho,
///   f(rho) = alpha^2 / ((alpha+2beta) gamma rho sqrt(2(alpha+beta)-rho^2)).
/// The square-root behaviour of acos at f = 1 is tamed by the substitution
/// rho = rho- + (sqrt(2 beta) - rho-) sin^2(phi).
inline HeightResult height_w2(double alpha, double beta, double gamma, long oracle_samples = 0,
                              std::uint64_t seed = 20240901) {
    SystemFamily sys = SystemFamily::w2_2param(alpha, beta, gamma); // enforces the window
    double rad = std::pow((alpha + 2 * beta) * (alpha + beta) * gamma, 2) - std::pow(alpha, 4);
    if (rad < 0)
        throw std::domain_error(
            "height_w2: (alpha+2beta)^2 (alpha+beta)^2 gamma^2 <= alpha^4, the inner critical "
            "radius is not real");
    double rho_minus =
        std::sqrt(alpha + beta - std::sqrt(rad) / ((alpha + 2 * beta) * gamma));
    double rho_top = std::sqrt(2 * beta);
    if (!(rho_minus < rho_top))
        throw std::domain_error("height_w2: empty integration range");
    auto f = [&](double rho) {
        return alpha * alpha /
               ((alpha + 2 * beta) * gamma * rho * std::sqrt(2 * (alpha + beta) - rho * rho));
    };
    double span = rho_top - rho_minus;
    auto integrand = [&](double phi) {
        double snp = std::sin(phi);
        double rho = rho_minus + span * snp * snp;
        return rho * height_detail::clamped_acos(f(rho)) * span * std::sin(2 * phi);
    };
    QuadratureResult q = integrate(integrand, 0.0, M_PI / 2);
    HeightResult out;
    out.fiber_height = beta;
    out.h1 = beta - q.value / M_PI;
    out.h2 = beta - out.h1;
    out.quad_error = q.error / M_PI;
    if (oracle_samples > 0) {
        auto rh = reduced_hamiltonian(sys, {0.5, 0.5}, beta);
        OracleResult oracle = sublevel_area_oracle(rh, 0.0, oracle_samples, seed);
        out.oracle_h1 = oracle.height;
        out.oracle_stderr = oracle.std_error;
        out.oracle_samples = oracle.samples;
    }
    return out;
}

/// Height invariant of the half-half member of the sphere-pair system: the
/// first focus-focus value is (R1 - R2, 0), and with Theta = R2/R1
///   h1 = 2 R1 (1 - 2 I / pi),
///   I = int_0^{rho_max} rho (1+rho^2)^{-2} acos(F(rho)) drho,
///   F(rho) = (Theta-1)(1+rho^2) / (4 sqrt(Theta + (Theta-1) rho^2)),
///   rho_max^2 = (9 - Theta + 4 sqrt 5) / (Theta - 1).
inline HeightResult height_s2xs2(double R1, double R2, long oracle_samples = 0,
                                 std::uint64_t seed = 20240901) {
    if (!(R2 > R1 && R1 > 0)) throw std::domain_error("height_s2xs2: requires R2 > R1 > 0");
    double Th = R2 / R1;
    double top2 = (9 - Th + 4 * std::sqrt(5.0)) / (Th - 1);
    HeightResult out;
    out.fiber_height = 2 * R1;
    if (top2 <= 0) {
        // the sub-level condition holds everywhere; degenerate configuration
        out.h1 = 2 * R1;
        out.h2 = 0;
        return out;
    }
    double rho_max = std::sqrt(top2);
    auto F = [&](double rho) {
        double d = 1 + rho * rho;
        return (Th - 1) * d / (4 * std::sqrt(Th + (Th - 1) * rho * rho));
    };
    auto integrand = [&](double phi) {
        double rho = rho_max * std::sin(phi);
        double d = 1 + rho * rho;
        return rho / (d * d) * height_detail::clamped_acos(F(rho)) * rho_max * std::cos(phi);
    };
    QuadratureResult q = integrate(integrand, 0.0, M_PI / 2);
    out.h1 = 2 * R1 * (1 - 2 * q.value / M_PI);
    out.h2 = 2 * R1 - out.h1;
    out.quad_error = 2 * R1 * 2 * q.error / M_PI;
    if (oracle_samples > 0) {
        SystemFamily hp = SystemFamily::hp_2param(R1, R2);
        auto rh = reduced_hamiltonian(hp, {0.5, 0.5}, R1 - R2);
        OracleResult oracle = sublevel_area_oracle(rh, 0.0, oracle_samples, seed);
        out.oracle_h1 = oracle.height;
        out.oracle_stderr = oracle.std_error;
        out.oracle_samples = oracle.samples;
    }
    return out;
}

inline void require_matched_scalings(double alpha, double beta, double R1, double R2) {
    if (std::fabs(alpha - 2 * (R2 - R1)) > 1e-12 || std::fabs(beta - 2 * R1) > 1e-12)
        throw std::domain_error(
            "comparison requires alpha = 2(R2 - R1) and beta = 2 R1; otherwise the unmarked "
            "polygons are distinct and the systems are not isomorphic");
}

struct ComparisonRow {
    double gamma = 0;
    double h1_w2 = 0, h1_s2 = 0;
    double err_quad = 0, err_mc = 0;
};

struct ComparisonResult {
    std::vector<ComparisonRow> rows;
    bool monotone_decreasing = true;
    bool crossing_found = false;
    double gamma_star = 0;
};

/// Tabulates the first height of the second-surface family against the
/// constant sphere-pair height at the matched scalings alpha = 2(R2 - R1),
/// beta = 2 R1, over a gamma grid inside the validity window; a sign change
/// is bisected to gamma* at 1e-8.
inline ComparisonResult match_and_compare(double R1, double R2, int grid_points = 20,
                                          long oracle_samples = 0,
                                          std::uint64_t seed = 20240901) {
    double alpha = 2 * (R2 - R1), beta = 2 * R1;
    require_matched_scalings(alpha, beta, R1, R2);
    double nu = beta / alpha;
    double lo = 1.0 / (2.0 * (1.0 + 2.0 * nu) * std::sqrt(nu));
    double hi = 1.0 / (2.0 * std::sqrt(nu));
    double margin = (hi - lo) / 50.0;
    lo += margin;
    hi -= margin;
    ComparisonResult out;
    double h1_s2 = height_s2xs2(R1, R2).h1;
    double prev = 0;
    for (int k = 0; k < grid_points; ++k) {
        double gamma = lo + (hi - lo) * k / (grid_points - 1);
        HeightResult hw = height_w2(alpha, beta, gamma, oracle_samples, seed);
        ComparisonRow row{gamma, hw.h1, h1_s2, hw.quad_error, hw.oracle_stderr};
        if (k > 0 && !(row.h1_w2 < prev)) out.monotone_decreasing = false;
        prev = row.h1_w2;
        out.rows.push_back(row);
    }
    auto diff = [&](double gamma) { return height_w2(alpha, beta, gamma).h1 - h1_s2; };
    for (std::size_t k = 1; k < out.rows.size(); ++k) {
        double a = out.rows[k - 1].gamma, b = out.rows[k].gamma;
        double fa = out.rows[k - 1].h1_w2 - h1_s2, fb = out.rows[k].h1_w2 - h1_s2;
        if ((fa <= 0) == (fb <= 0)) continue;
        while (b - a > 1e-8) {
            double mid = 0.5 * (a + b);
            if ((diff(mid) <= 0) == (fa <= 0)) {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.crossing_found = true;
        out.gamma_star = 0.5 * (a + b);
        break;
    }
    return out;
}

} // namespace semitoric
