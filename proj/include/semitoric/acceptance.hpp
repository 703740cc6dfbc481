#pragma once

#include <chrono>
#include <random>
#include <sstream>

#include "semitoric/heights.hpp"
#include "semitoric/pipeline.hpp"
#include "semitoric/spectral.hpp"

namespace semitoric {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    double budget_seconds = 0;
    std::string detail;
};

struct AcceptanceConfig {
    long oracle_samples = 10000000;
    int region_grid = 41;
    int target_roundtrips = 1000;
    long evenness_draws = 1000;
    long max_pipeline_n = 5;
};

inline AcceptanceConfig quick_config() {
    AcceptanceConfig cfg;
    cfg.oracle_samples = 500000;
    cfg.region_grid = 15;
    cfg.target_roundtrips = 150;
    cfg.evenness_draws = 200;
    cfg.max_pipeline_n = 3;
    return cfg;
}

namespace accept_detail {

using Clock = std::chrono::steady_clock;

struct Timer {
    Clock::time_point start = Clock::now();
    double seconds() const {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }
};

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << (detail.tellp() > 0 ? "; " : "") << what;
        }
    }
    void note(const std::string& what) {
        detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
};

inline CriterionResult finish(int number, const std::string& name, double budget, Timer& timer,
                              Check& chk) {
    CriterionResult r;
    r.number = number;
    r.name = name;
    r.seconds = timer.seconds();
    r.budget_seconds = budget;
    if (r.seconds >= budget)
        chk.require(false, "runtime " + std::to_string(r.seconds) + "s over budget");
    r.pass = chk.pass;
    r.detail = chk.detail.str();
    return r;
}

// shared generators for the polygon round trips (criterion 6)
inline std::vector<MarkedPolygon> seed_polygons() {
    auto pt = [](long x, long y) { return RatPoint{Rat(x), Rat(y)}; };
    std::vector<MarkedPolygon> out;
    out.emplace_back(hull({pt(0, 0), pt(2, 2), pt(5, 2), pt(3, 0)}),
                     std::vector<Mark>{{{Rat(2), Rat(1)}, +1}});
    out.emplace_back(hull({pt(0, 0), pt(1, 0), pt(2, 1), pt(2, 2), pt(1, 2), pt(0, 1)}),
                     std::vector<Mark>{{{Rat(1), Rat(1)}, +1}});
    for (long n : {0L, 1L, 2L, 3L}) {
        out.emplace_back(standard_polygon_0(n, Rat(3, 2), Rat(2)),
                         std::vector<Mark>{{{Rat(2), Rat(1)}, +1}});
        out.emplace_back(standard_polygon_0(n, Rat(1), Rat(1)), std::vector<Mark>{});
    }
    out.emplace_back(hull({pt(0, 0), pt(1, 1), pt(2, 1), pt(3, 0)}),
                     std::vector<Mark>{{{Rat(1), Rat(1, 2)}, +1}, {{Rat(2), Rat(1, 2)}, +1}});
    return out;
}

inline GroupElement random_group_element(std::mt19937& rng, std::size_t s) {
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_int_distribution<long> shear(-3, 3);
    std::uniform_int_distribution<long> shift(-6, 6);
    GroupElement g = GroupElement::identity(s);
    for (auto& f : g.flips) f = sign(rng) ? +1 : -1;
    g.shear_exponent = shear(rng);
    g.vertical_shift = Rat(shift(rng), 2);
    return g;
}

} // namespace accept_detail

/// Criterion 1: transition times of the moving-point family and the verdict
/// sweep of the transition point.
inline CriterionResult criterion_w1_transition(const AcceptanceConfig&) {
    using namespace accept_detail;
    Timer timer;
    Check chk;
    double beta = 2.0;
    SystemFamily sys = SystemFamily::w1_moving(1.0, beta, 9.0 / (20.0 * std::sqrt(2 * beta)));
    TransitionTimes tt = transition_times(sys);
    chk.require(std::fabs(tt.bisect_minus - 10.0 / 29.0) < 1e-6,
                "bisection t- misses 10/29 by " + std::to_string(tt.bisect_minus - 10.0 / 29.0));
    chk.require(std::fabs(tt.bisect_plus - 10.0 / 11.0) < 1e-6,
                "bisection t+ misses 10/11 by " + std::to_string(tt.bisect_plus - 10.0 / 11.0));
    auto specials = special_combos(sys);
    int checked = 0;
    for (int k = 0; k <= 40; ++k) {
        double t = k / 40.0;
        if (std::fabs(t - tt.closed_minus) < 2e-3 || std::fabs(t - tt.closed_plus) < 2e-3)
            continue;
        Williamson expected = (t > tt.closed_minus && t < tt.closed_plus)
                                  ? Williamson::FocusFocus
                                  : Williamson::EllipticElliptic;
        Williamson got =
            classify_fixed_point(analytic_bundle(sys, {t, 0}, "C"), specials).type;
        chk.require(got == expected, "verdict at t=" + std::to_string(t) + " is " +
                                         to_string(got));
        ++checked;
    }
    // spot-check the finite-difference route against the analytic pencils
    for (double t : {0.1, 0.5, 0.95}) {
        auto fd = hessian_bundle(sys, {t, 0}, chart_point(ChartId::U23, 0, 0, 0, 0));
        Williamson got = classify_fixed_point(fd, specials).type;
        Williamson expected = (t > tt.closed_minus && t < tt.closed_plus)
                                  ? Williamson::FocusFocus
                                  : Williamson::EllipticElliptic;
        chk.require(got == expected, "FD verdict mismatch at t=" + std::to_string(t));
    }
    chk.note("t- = " + std::to_string(tt.bisect_minus) + ", t+ = " +
             std::to_string(tt.bisect_plus) + ", " + std::to_string(checked) +
             " sweep points");
    return finish(1, "first-surface transition times and verdict sweep", 5.0, timer, chk);
}

/// Criterion 2: degenerate times of the switch family and the fixed-sphere
/// collapse at t = 1/2.
inline CriterionResult criterion_w1_switch(const AcceptanceConfig&) {
    using namespace accept_detail;
    Timer timer;
    Check chk;
    double alpha = 1.0, beta = 3.0;
    SystemFamily sys =
        SystemFamily::w1_switch(alpha, beta, 3.0 / (8.0 * alpha * std::sqrt(2 * beta)));
    TransitionTimes tt = transition_times(sys);
    chk.require(std::fabs(tt.closed_minus - 4.0 / 11.0) < 1e-12, "closed t- is not 4/11");
    chk.require(std::fabs(tt.closed_plus - 4.0 / 5.0) < 1e-12, "closed t+ is not 4/5");
    chk.require(tt.gap() < 1e-6, "bisection gap " + std::to_string(tt.gap()));
    auto inv = fixed_points(sys, {0.5, 0});
    chk.require(inv.degenerate_levels.size() == 1, "no degenerate level reported at t=1/2");
    if (!inv.degenerate_levels.empty()) {
        chk.require(inv.degenerate_levels[0].first == 0.0, "degenerate level is not J=0");
        chk.require(inv.degenerate_levels[0].second < 1e-10,
                    "sampled sphere residual " +
                        std::to_string(inv.degenerate_levels[0].second));
    }
    chk.require(fixed_points(sys, {0.31, 0}).degenerate_levels.empty(),
                "spurious degenerate level away from t=1/2");
    chk.note("t- = 4/11, t+ = 4/5, sphere residual " +
             (inv.degenerate_levels.empty() ? std::string("n/a")
                                            : std::to_string(inv.degenerate_levels[0].second)));
    return finish(2, "switch-family degenerate times and fixed-sphere collapse", 5.0, timer, chk);
}

/// Criterion 3: coupled angular momenta closed forms against the
/// discriminant bisection, and the half-time verdict.
inline CriterionResult criterion_coupled(const AcceptanceConfig&) {
    using namespace accept_detail;
    Timer timer;
    Check chk;
    SystemFamily sys = SystemFamily::coupled_angular(1, 2);
    TransitionTimes tt = transition_times(sys);
    chk.require(tt.gap() < 1e-9, "closed-form/bisection gap " + std::to_string(tt.gap()));
    auto fd = hessian_bundle(sys, {0.5, 0}, sphere_point(0, 0, 1, 0, 0, -1));
    Williamson got = classify_fixed_point(fd, special_combos(sys)).type;
    chk.require(got == Williamson::FocusFocus,
                std::string("verdict at the transition point is ") + to_string(got));
    chk.note("t- = " + std::to_string(tt.bisect_minus) + ", t+ = " +
             std::to_string(tt.bisect_plus) + ", gap " + std::to_string(tt.gap()));
    return finish(3, "coupled angular momenta times and half-time verdict", 5.0, timer, chk);
}

/// Criterion 4: second-surface transition times, half-half verdicts, and the region
/// diagram topology.
inline CriterionResult criterion_w2(const AcceptanceConfig& cfg) {
    using namespace accept_detail;
    Timer timer;
    Check chk;
    double gamma = 9.0 / 20.0;
    SystemFamily tb = SystemFamily::w2_trans_b(1, 1, gamma);
    SystemFamily tc = SystemFamily::w2_trans_c(1, 1, gamma);
    TransitionTimes ttb = transition_times(tb);
    TransitionTimes ttc = transition_times(tc);
    chk.require(std::fabs(ttb.closed_minus - 3.0 / 4.9) < 1e-12, "closed t- of B family");
    chk.require(std::fabs(ttb.closed_plus - 3.0 / 3.1) < 1e-12, "closed t+ of B family");
    chk.require(ttb.gap() < 1e-6, "B-family bisection gap " + std::to_string(ttb.gap()));
    chk.require(std::fabs(ttc.closed_minus - 3.0 / 6.8) < 1e-12, "closed t- of C family");
    chk.require(std::fabs(ttc.closed_plus - 3.0 / 3.2) < 1e-12, "closed t+ of C family");
    chk.require(ttc.gap() < 1e-6, "C-family bisection gap " + std::to_string(ttc.gap()));

    SystemFamily two = SystemFamily::w2_2param(1, 1, gamma);
    auto specials = special_combos(two);
    auto verdict_at = [&](ChartId chart) {
        return classify_fixed_point(hessian_bundle(two, {0.5, 0.5},
                                                   chart_point(chart, 0, 0, 0, 0)),
                                    specials)
            .type;
    };
    chk.require(verdict_at(ChartId::U13) == Williamson::FocusFocus, "B at (1/2,1/2)");
    chk.require(verdict_at(ChartId::U23) == Williamson::FocusFocus, "C at (1/2,1/2)");
    chk.require(verdict_at(ChartId::U14) == Williamson::EllipticElliptic, "A at (1/2,1/2)");
    chk.require(verdict_at(ChartId::U24) == Williamson::EllipticElliptic, "D at (1/2,1/2)");

    RegionDiagram rd = region_diagram(two, cfg.region_grid);
    // the four open regions of the diagram are the verdict-pair classes
    // (EE,EE), (FF,EE), (EE,FF), (FF,FF); over the grid exactly these four
    // occur, arranged with white corners, the both-focus-focus class at the
    // center, and the one-parameter families along the edges
    auto pair_code = [](const std::pair<Williamson, Williamson>& vc) {
        auto code = [](Williamson w) {
            return w == Williamson::EllipticElliptic ? 0 : w == Williamson::FocusFocus ? 1 : 2;
        };
        int a = code(vc.first), b = code(vc.second);
        if (a == 2 || b == 2) return -1;
        return a * 2 + b;
    };
    int g = rd.grid;
    std::array<long, 4> per_class{};
    long degenerate_cells = 0;
    for (const auto& cell : rd.cells) {
        int code = pair_code(cell);
        if (code < 0) ++degenerate_cells;
        else ++per_class[code];
    }
    for (int l = 0; l < 4; ++l)
        chk.require(per_class[l] > 0, "verdict class " + std::to_string(l) + " is absent");
    chk.require(degenerate_cells <= static_cast<long>(rd.cells.size()) / 20,
                "too many degenerate/hyperbolic cells: " + std::to_string(degenerate_cells));
    for (auto [i, k] : std::vector<std::pair<int, int>>{
             {0, 0}, {g - 1, 0}, {0, g - 1}, {g - 1, g - 1}})
        chk.require(pair_code(rd.at(i, k)) == 0,
                    "corner cell is not elliptic-elliptic for both points");
    chk.require(pair_code(rd.at(g / 2, g / 2)) == 3, "center cell is not double focus-focus");
    // top edge (s2 = 1) must switch exactly at the B-family transition times
    int edge_checked = 0;
    for (int i = 0; i < g; ++i) {
        double t = static_cast<double>(i) / (g - 1);
        if (std::fabs(t - ttb.closed_minus) < 2e-2 || std::fabs(t - ttb.closed_plus) < 2e-2)
            continue;
        bool ff = t > ttb.closed_minus && t < ttb.closed_plus;
        chk.require(rd.at(i, g - 1).first ==
                        (ff ? Williamson::FocusFocus : Williamson::EllipticElliptic),
                    "top-edge verdict off the B-family transition times at t=" + std::to_string(t));
        ++edge_checked;
    }
    chk.note("classes EE/EE:" + std::to_string(per_class[0]) + " FF/EE:" +
             std::to_string(per_class[2 * 1 + 0]) + " EE/FF:" + std::to_string(per_class[1]) +
             " FF/FF:" + std::to_string(per_class[3]) + " cells on a " + std::to_string(g) +
             "x" + std::to_string(g) + " grid, " + std::to_string(edge_checked) +
             " edge cells against the one-parameter times");
    return finish(4, "second-surface transition times and region diagram", 120.0, timer, chk);
}

/// Criterion 5: evenness of the characteristic polynomial over random draws.
inline CriterionResult criterion_evenness(const AcceptanceConfig& cfg) {
    using namespace accept_detail;
    Timer timer;
    Check chk;
    std::mt19937 rng(314159);
    std::uniform_real_distribution<double> angle(0, 2 * M_PI);
    std::uniform_real_distribution<double> tdist(0.05, 0.95);
    std::vector<SystemFamily> families = {
        SystemFamily::coupled_angular(1, 2),
        SystemFamily::w1_moving(1, 2, 9.0 / (20.0 * std::sqrt(4.0))),
        SystemFamily::w1_switch(1, 3, 3.0 / (8.0 * std::sqrt(6.0))),
        SystemFamily::w2_trans_b(1, 1, 0.45),
        SystemFamily::w2_2param(1, 1, 0.45),
    };
    double worst = 0;
    for (long draw = 0; draw < cfg.evenness_draws; ++draw) {
        const auto& sys = families[draw % families.size()];
        ParamValue pv{tdist(rng), tdist(rng)};
        auto inv = fixed_points(sys, pv);
        const auto& e = inv.points[draw % inv.points.size()];
        HessianBundle hb = hessian_bundle(sys, pv, e.point);
        double phi = angle(rng);
        Mat4 a = spec_detail::lin(std::cos(phi), spec_detail::mul(hb.omega_inv, hb.d2J),
                                  std::sin(phi), spec_detail::mul(hb.omega_inv, hb.d2H));
        worst = std::max(worst, char_poly(a).odd_residual);
    }
    chk.require(worst < 1e-10, "odd-coefficient residual " + std::to_string(worst));
    chk.note(std::to_string(cfg.evenness_draws) + " draws, worst odd residual " +
             std::to_string(worst));
    return finish(5, "characteristic polynomial evenness", 60.0, timer, chk);
}

/// Criterion 6: exact polygon algebra.
inline CriterionResult criterion_polygon_algebra(const AcceptanceConfig& cfg) {
    using namespace accept_detail;
    Timer timer;
    Check chk;
    auto pt = [](long x, long y) { return RatPoint{Rat(x), Rat(y)}; };
    MarkedPolygon left(hull({pt(0, 0), pt(2, 2), pt(5, 2), pt(3, 0)}),
                       {{{Rat(2), Rat(1)}, +1}});
    MarkedPolygon right(hull({pt(0, 2), pt(2, 0), pt(3, 0), pt(5, 2)}),
                        {{{Rat(2), Rat(1)}, -1}});
    MarkedPolygon image = apply_group(GroupElement{{-1}, -1, Rat(2)}, left);
    chk.require(image == right, "cut-flip worked example does not reproduce the pair");
    chk.require(orbit_equal(left, right), "polygon pair not orbit-equal");
    MarkedPolygon d20(standard_polygon_0(2, Rat(1), Rat(1)), {});
    MarkedPolygon d21(standard_polygon_1(2, Rat(1), Rat(1)), {});
    chk.require(!orbit_equal(d20, d21), "pre/post transition polygons compare orbit-equal");

    std::mt19937 rng(1234321);
    std::uniform_int_distribution<int> pick_den(1, 4);
    auto seeds = seed_polygons();
    int performed = 0, attempts = 0;
    while (performed < cfg.target_roundtrips && attempts < 20 * cfg.target_roundtrips) {
        const auto& seed = seeds[attempts % seeds.size()];
        ++attempts;
        MarkedPolygon cur = apply_group(random_group_element(rng, seed.mark_count()), seed);
        std::uniform_int_distribution<std::size_t> pick_v(0, cur.polygon().size() - 1);
        RatPoint v = cur.polygon().vertex(pick_v(rng));
        Rat lambda(1, pick_den(rng) * 2);
        ChopOutcome chopped{cur, v, v};
        try {
            chopped = corner_chop_ex(cur, v, lambda);
        } catch (const infeasible_error&) {
            continue;
        } catch (const std::invalid_argument&) {
            continue;
        }
        bool ok_valid = validate(chopped.result).valid;
        bool ok_area =
            cur.polygon().area() - chopped.result.polygon().area() == lambda * lambda / Rat(2);
        bool ok_round = false;
        try {
            ok_round =
                corner_unchop(chopped.result, chopped.edge_a, chopped.edge_b, lambda) == cur;
        } catch (const infeasible_error&) {
        }
        if (!(ok_valid && ok_area && ok_round)) {
            chk.require(false, "round trip failed at attempt " + std::to_string(attempts));
            break;
        }
        ++performed;
    }
    chk.require(performed >= cfg.target_roundtrips,
                "only " + std::to_string(performed) + " feasible round trips");
    chk.note(std::to_string(performed) + " chop/unchop round trips exact");
    return finish(6, "exact polygon algebra", 60.0, timer, chk);
}

/// Criterion 7: the blowup/blowdown pipeline reaches the standard triples.
inline CriterionResult criterion_pipeline(const AcceptanceConfig& cfg) {
    using namespace accept_detail;
    Timer timer;
    Check chk;
    Rat alpha(1), beta(1), y(1, 2);
    for (long n = 1; n <= cfg.max_pipeline_n; ++n) {
        auto result = run_pipeline(n, alpha, beta, default_schedule(n, alpha, beta), y);
        auto target = standard_triple(n, alpha, beta, y);
        chk.require(orbit_equal(result.triple.below, target.below),
                    "below regime differs at n=" + std::to_string(n));
        chk.require(orbit_equal(result.triple.between, target.between),
                    "transition regime differs at n=" + std::to_string(n));
        chk.require(orbit_equal(result.triple.above, target.above),
                    "above regime differs at n=" + std::to_string(n));
        MarkedPolygon plus = remove_cut(result.triple.between, 0, +1);
        MarkedPolygon minus = remove_cut(result.triple.between, 0, -1);
        chk.require(orbit_equal(plus, MarkedPolygon(standard_polygon_0(n, alpha, beta), {})),
                    "cut removal (+1) misses the pre-transition polygon at n=" +
                        std::to_string(n));
        chk.require(orbit_equal(minus, MarkedPolygon(standard_polygon_1(n, alpha, beta), {})),
                    "cut removal (-1) misses the post-transition polygon at n=" +
                        std::to_string(n));
    }
    chk.note("n = 1.." + std::to_string(cfg.max_pipeline_n) + " orbit-exact");
    return finish(7, "blowup/blowdown pipeline", 10.0, timer, chk);
}

/// Criterion 8: rank-one sweeps and the exact discriminant identity.
inline CriterionResult criterion_rank_one(const AcceptanceConfig&) {
    using namespace accept_detail;
    Timer timer;
    Check chk;
    double beta = 2.0;
    SystemFamily w1 = SystemFamily::w1_moving(1, beta, 9.0 / (20.0 * std::sqrt(2 * beta)));
    int w1_points = 0;
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (double j : {0.3, 0.9, 1.5, 2.4, 2.8}) {
            auto cps = reduced_critical_points(reduced_hamiltonian(w1, {t, 0}, j));
            for (const auto& cp : cps) {
                ++w1_points;
                chk.require(classify_rank_one(cp) == RankOneType::EllipticTransverse,
                            "non-elliptic rank-one point on the first surface at t=" +
                                std::to_string(t) + ", j=" + std::to_string(j));
            }
        }
    }
    SystemFamily two = SystemFamily::w2_2param(1, 1, 0.45);
    int w2_points = 0;
    for (double s1 : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        for (double s2 : {0.0, 0.3, 0.5, 0.7, 1.0}) {
            for (double j : {0.4, 0.9, 1.0, 1.6, 2.3}) {
                auto cps = reduced_critical_points(reduced_hamiltonian(two, {s1, s2}, j));
                for (const auto& cp : cps) {
                    ++w2_points;
                    chk.require(classify_rank_one(cp) == RankOneType::EllipticTransverse,
                                "non-elliptic rank-one point on the second surface");
                }
            }
        }
    }
    SystemFamily hyp = SystemFamily::w1_hyperbolic();
    int hyperbolic = 0;
    for (double t : {0.05, 0.1, 0.15, 0.2}) {
        for (double j : {0.15, 0.3, 0.5, 0.8, 1.2}) {
            for (const auto& cp : reduced_critical_points(reduced_hamiltonian(hyp, {t, 0}, j)))
                if (classify_rank_one(cp) == RankOneType::HyperbolicTransverse) ++hyperbolic;
        }
    }
    chk.require(hyperbolic > 0, "no hyperbolic-transverse point found in the modified family");

    std::vector<Rat> samples;
    for (long k = 1; k <= 9; ++k) samples.push_back(Rat(k, 7));
    bool identity = w1_discriminant_identity(Rat(1), Rat(2), samples) &&
                    w1_discriminant_identity(Rat(1), Rat(1), samples) &&
                    w1_discriminant_identity(Rat(7, 3), Rat(5, 11), samples);
    chk.require(identity, "exact discriminant identity fails");
    chk.note(std::to_string(w1_points) + "+" + std::to_string(w2_points) +
             " rank-one points elliptic, " + std::to_string(hyperbolic) +
             " hyperbolic in the modified family");
    return finish(8, "rank-one sweeps and discriminant identity", 120.0, timer, chk);
}

/// Criterion 9: heights. The conservation, oracle-agreement, and
/// monotonicity parts hold; the crossing clause is stated for radii (1,2),
/// where both height formulas put the whole curve above the
/// sphere value, so that sub-check reports red with the crossing exhibited
/// at radii (3,4) instead.
inline CriterionResult criterion_heights(const AcceptanceConfig& cfg) {
    using namespace accept_detail;
    Timer timer;
    Check chk;
    double R1 = 1, R2 = 2;
    double alpha = 2 * (R2 - R1), beta = 2 * R1;
    HeightResult hw = height_w2(alpha, beta, 0.35, cfg.oracle_samples);
    chk.require(std::fabs(hw.h1 + hw.h2 - beta) < 1e-8, "height conservation (second surface)");
    double tol_mc = std::max(1e-4, 3 * hw.oracle_stderr);
    chk.require(std::fabs(hw.h1 - hw.oracle_h1) < tol_mc,
                "quadrature/oracle gap " + std::to_string(hw.h1 - hw.oracle_h1));
    HeightResult hs = height_s2xs2(R1, R2, cfg.oracle_samples);
    chk.require(std::fabs(hs.h1 + hs.h2 - 2 * R1) < 1e-8, "height conservation (spheres)");
    double tol_mc2 = std::max(1e-4, 3 * hs.oracle_stderr);
    chk.require(std::fabs(hs.h1 - hs.oracle_h1) < tol_mc2,
                "sphere quadrature/oracle gap " + std::to_string(hs.h1 - hs.oracle_h1));

    ComparisonResult cmp = match_and_compare(R1, R2, 20);
    chk.require(cmp.monotone_decreasing, "first height is not strictly decreasing in gamma");
    // stated crossing clause, honestly red: over the whole validity window
    // the second-surface heights exceed the sphere height at these radii
    if (!cmp.crossing_found) {
        ComparisonResult cmp34 = match_and_compare(3, 4, 20);
        chk.require(false,
                    "no crossing for radii (1,2): h1 range (" +
                        std::to_string(cmp.rows.back().h1_w2) + ", " +
                        std::to_string(cmp.rows.front().h1_w2) + ") vs sphere " +
                        std::to_string(cmp.rows.front().h1_s2) +
                        " [documented analysis; crossing verified at radii (3,4): gamma* = " +
                        std::to_string(cmp34.crossing_found ? cmp34.gamma_star : -1.0) + "]");
    }
    chk.note("w2 h1 = " + std::to_string(hw.h1) + " (oracle " + std::to_string(hw.oracle_h1) +
             "), sphere h1 = " + std::to_string(hs.h1) + " (oracle " +
             std::to_string(hs.oracle_h1) + ")");
    return finish(9, "height invariants", 180.0, timer, chk);
}

inline std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg) {
    return {
        criterion_w1_transition(cfg), criterion_w1_switch(cfg), criterion_coupled(cfg),
        criterion_w2(cfg),            criterion_evenness(cfg),  criterion_polygon_algebra(cfg),
        criterion_pipeline(cfg),      criterion_rank_one(cfg),  criterion_heights(cfg),
    };
}

} // namespace semitoric
