#include <doctest.h>

#include <cmath>
#include <random>

#include "semitoric/systems.hpp"

using namespace semitoric;

namespace {

// Poisson bracket {J,H} on S^2 x S^2 in action-angle coordinates
// (theta_i, p_i = R_i z_i), where the product form is standard.
double sphere_poisson(const SystemFamily& sys, const ParamValue& pv, double th1, double p1,
                      double th2, double p2) {
    auto val = [&](double a1, double q1, double a2, double q2) {
        double z1 = q1 / sys.R1, z2 = q2 / sys.R2;
        double r1 = std::sqrt(std::max(0.0, 1 - z1 * z1));
        double r2 = std::sqrt(std::max(0.0, 1 - z2 * z2));
        ChartPoint p = sphere_point(r1 * std::cos(a1), r1 * std::sin(a1), z1,
                                    r2 * std::cos(a2), r2 * std::sin(a2), z2);
        return evaluate(sys, pv, p);
    };
    const double h = 1e-5;
    auto d = [&](int slot, bool of_H) {
        double q[4] = {th1, p1, th2, p2};
        q[slot] += h;
        MomentumValue vp = val(q[0], q[1], q[2], q[3]);
        q[slot] -= 2 * h;
        MomentumValue vm = val(q[0], q[1], q[2], q[3]);
        return ((of_H ? vp.H : vp.J) - (of_H ? vm.H : vm.J)) / (2 * h);
    };
    return d(0, false) * d(1, true) - d(1, false) * d(0, true) + d(2, false) * d(3, true) -
           d(3, false) * d(2, true);
}

// Poisson bracket in a Hirzebruch chart, where the symplectic form is standard.
double chart_poisson(const SystemFamily& sys, const ParamValue& pv, ChartId chart,
                     const std::array<double, 4>& c) {
    const double h = 1e-5;
    auto d = [&](int slot, bool of_H) {
        auto q = c;
        q[slot] += h;
        MomentumValue vp = evaluate(sys, pv, chart_point(chart, q[0], q[1], q[2], q[3]));
        q[slot] -= 2 * h;
        MomentumValue vm = evaluate(sys, pv, chart_point(chart, q[0], q[1], q[2], q[3]));
        return ((of_H ? vp.H : vp.J) - (of_H ? vm.H : vm.J)) / (2 * h);
    };
    // omega = dx_p ^ dy_p + dx_q ^ dy_q
    return d(0, false) * d(1, true) - d(1, false) * d(0, true) + d(2, false) * d(3, true) -
           d(3, false) * d(2, true);
}

const FixedPointEntry& find_point(const FixedPointInventory& inv, const std::string& label) {
    for (const auto& e : inv.points)
        if (e.label == label) return e;
    throw std::runtime_error("missing fixed point " + label);
}

} // namespace

TEST_CASE("evaluate on the coupled angular momenta") {
    SystemFamily sys = SystemFamily::coupled_angular(1, 2);
    for (double t : {0.0, 0.3, 1.0}) {
        MomentumValue v = evaluate(sys, {t, 0}, sphere_point(0, 0, 1, 0, 0, 1));
        CHECK(v.J == doctest::Approx(3.0).epsilon(1e-14));
        CHECK(v.H == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(evaluate(sys, {0, 0}, sphere_point(1, 1, 1, 0, 0, 1)), std::domain_error);
}

TEST_CASE("evaluate at the distinguished points of the explicit families") {
    double a = 1.3, b = 0.7;
    SystemFamily moving = SystemFamily::w1_moving(a, b, 0.2 / std::sqrt(2 * b));
    for (double t : {0.0, 0.25, 0.8}) {
        MomentumValue v = evaluate(moving, {t, 0}, chart_point(ChartId::U23, 0, 0, 0, 0)); // C
        CHECK(v.J == doctest::Approx(a).epsilon(1e-13));
        CHECK(v.H == doctest::Approx((1 - 2 * t) * b).epsilon(1e-12));
    }
    SystemFamily sw = SystemFamily::w1_switch(a, b, 0.2 / (a * std::sqrt(2 * b)));
    for (double t : {0.0, 0.25, 0.8}) {
        MomentumValue v = evaluate(sw, {t, 0}, chart_point(ChartId::U24, 0, 0, 0, 0)); // D
        CHECK(v.J == doctest::Approx(a + b).epsilon(1e-13));
        CHECK(v.H == doctest::Approx(t * b).epsilon(1e-12));
    }
}

TEST_CASE("hirzebruch lift reconstructs labeled points and the level constraints") {
    HirzebruchPoint A = hirzebruch_lift(2, 1, 1, ChartId::U14, {0, 0, 0, 0});
    CHECK(A.u[0].real() == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
    CHECK(std::abs(A.u[1]) == doctest::Approx(0.0));
    CHECK(std::abs(A.u[2]) == doctest::Approx(0.0));
    CHECK(A.u[3].real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    HirzebruchPoint C = hirzebruch_lift(1, 0.8, 1.7, ChartId::U23, {0, 0, 0, 0});
    CHECK(std::abs(C.u[0]) == doctest::Approx(0.0));
    CHECK(C.u[1].real() == doctest::Approx(std::sqrt(1.6)).epsilon(1e-15));
    CHECK(C.u[2].real() == doctest::Approx(std::sqrt(3.4)).epsilon(1e-15));

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    for (int i = 0; i < 200; ++i) {
        ChartId chart = std::array{ChartId::U13, ChartId::U14, ChartId::U23, ChartId::U24}[i % 4];
        HirzebruchPoint h = hirzebruch_lift(2, 1.0, 1.0, chart, {u(rng), u(rng), u(rng), u(rng)});
        CHECK(h.level_residual() < 1e-12);
    }
    CHECK_THROWS_AS(hirzebruch_lift(1, 1, 1, ChartId::U14, {0, 0, 10, 0}), std::domain_error);
}

TEST_CASE("chart overlap consistency") {
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> u(-0.35, 0.35);
    SystemFamily sys = SystemFamily::w2_2param(1, 1, 0.45);
    ParamValue pv{0.3, 0.6};
    int compared = 0;
    for (int i = 0; i < 300; ++i) {
        HirzebruchPoint h = hirzebruch_lift(2, 1, 1, ChartId::U13, {u(rng), u(rng), u(rng), u(rng)});
        MomentumValue base = evaluate(sys, pv, h);
        for (ChartId other : {ChartId::U14, ChartId::U23, ChartId::U24}) {
            std::array<double, 4> c;
            try {
                c = hirzebruch_chart(h, other);
            } catch (const std::domain_error&) {
                continue;
            }
            MomentumValue v = evaluate(sys, pv, chart_point(other, c[0], c[1], c[2], c[3]));
            CHECK(std::fabs(v.J - base.J) < 1e-10);
            CHECK(std::fabs(v.H - base.H) < 1e-10);
            ++compared;
        }
    }
    CHECK(compared > 500);
}

TEST_CASE("J does not depend on the family parameter") {
    SystemFamily sys = SystemFamily::w2_trans_b(1, 1, 0.45);
    ChartPoint p = chart_point(ChartId::U13, 0.3, -0.2, 0.1, 0.4);
    double j0 = evaluate(sys, {0.0, 0}, p).J;
    for (double t : {0.17, 0.5, 0.93}) CHECK(evaluate(sys, {t, 0}, p).J == j0);
}

TEST_CASE("Poisson commutation of J and H") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> ang(0.0, 6.0);
    std::uniform_real_distribution<double> frac(-0.8, 0.8);
    std::uniform_real_distribution<double> coord(-0.4, 0.4);

    SystemFamily coupled = SystemFamily::coupled_angular(1, 2);
    SystemFamily hp = SystemFamily::hp_2param(1, 2);
    SystemFamily collapse = SystemFamily::degen_collapse(1, 2, -1.0);
    for (int i = 0; i < 40; ++i) {
        double th1 = ang(rng), th2 = ang(rng);
        double p1 = frac(rng) * 1.0, p2 = frac(rng) * 2.0;
        CHECK(std::fabs(sphere_poisson(coupled, {0.4, 0}, th1, p1, th2, p2)) < 1e-8);
        CHECK(std::fabs(sphere_poisson(hp, {0.3, 0.8}, th1, p1, th2, p2)) < 1e-8);
        CHECK(std::fabs(sphere_poisson(collapse, {0.2, 0}, th1, p1, th2, p2)) < 1e-8);
    }

    SystemFamily w1 = SystemFamily::w1_moving(1, 2, 0.9 / (20 * std::sqrt(2 * 2.0) / 10));
    SystemFamily w2 = SystemFamily::w2_2param(1, 1, 0.45);
    SystemFamily hyp = SystemFamily::w1_hyperbolic();
    for (int i = 0; i < 40; ++i) {
        std::array<double, 4> c = {coord(rng), coord(rng), coord(rng), coord(rng)};
        CHECK(std::fabs(chart_poisson(w1, {0.37, 0}, ChartId::U14, c)) < 1e-8);
        CHECK(std::fabs(chart_poisson(w2, {0.41, 0.66}, ChartId::U13, c)) < 1e-8);
        CHECK(std::fabs(chart_poisson(hyp, {0.52, 0}, ChartId::U23, c)) < 1e-8);
    }
}

TEST_CASE("fixed points of the moving-point family") {
    double a = 1.0, b = 1.0;
    SystemFamily sys = SystemFamily::w1_moving(a, b, 1.0 / (4 * std::sqrt(2 * b)));
    auto inv = fixed_points(sys, {0.5, 0});
    REQUIRE(inv.points.size() == 4);
    double expected = std::sqrt((2.0 / 3.0) * (a + 2 * b - std::sqrt(a * a + a * b + b * b)));
    const auto& A = find_point(inv, "A");
    const auto& B = find_point(inv, "B");
    CHECK(B.point.c[2] == doctest::Approx(expected).epsilon(1e-10));
    CHECK(A.point.c[2] == doctest::Approx(-expected).epsilon(1e-10));
    for (const auto& e : inv.points) CHECK(e.grad_residual < 1e-9);

    CHECK(find_point(inv, "C").J == doctest::Approx(a));
    CHECK(find_point(inv, "D").J == doctest::Approx(a + b));
    CHECK(find_point(inv, "D").H == doctest::Approx(0.0));

    // ordering of the wall points holds across t
    for (double t : {0.1, 0.33, 0.71, 0.95}) {
        auto i2 = fixed_points(sys, {t, 0});
        double xm = find_point(i2, "A").point.c[2];
        double xp = find_point(i2, "B").point.c[2];
        if (find_point(i2, "A").point.chart == ChartId::U13) xm = -std::sqrt(2 * b - xm * xm);
        if (find_point(i2, "B").point.chart == ChartId::U13) {
            double x4 = find_point(i2, "B").point.c[2];
            xp = std::sqrt(2 * b - x4 * x4);
        }
        CHECK(xm < 0);
        CHECK(0 < xp);
        CHECK(xp < std::sqrt(2 * b));
        CHECK(-std::sqrt(2 * b) < xm);
        for (const auto& e : i2.points) CHECK(e.grad_residual < 1e-9);
    }
}

TEST_CASE("fixed points of the switch family and the collapse at t=1/2") {
    double a = 1.0, b = 3.0;
    SystemFamily sys = SystemFamily::w1_switch(a, b, 3.0 / (8 * a * std::sqrt(2 * b)));
    for (double t : {0.2, 0.5, 0.9}) {
        auto inv = fixed_points(sys, {t, 0});
        CHECK(find_point(inv, "A").H == doctest::Approx(t * b).epsilon(1e-12));
        CHECK(find_point(inv, "B").H == doctest::Approx((1 - t) * b).epsilon(1e-12));
        CHECK(find_point(inv, "C").H == doctest::Approx((1 - t) * b).epsilon(1e-12));
        CHECK(find_point(inv, "D").H == doctest::Approx(t * b).epsilon(1e-12));
        for (const auto& e : inv.points) CHECK(e.grad_residual < 1e-9);
    }
    auto inv_half = fixed_points(sys, {0.5, 0});
    REQUIRE(inv_half.degenerate_levels.size() == 1);
    CHECK(inv_half.degenerate_levels[0].first == 0.0);
    CHECK(inv_half.degenerate_levels[0].second < 1e-10);
    CHECK(fixed_points(sys, {0.3, 0}).degenerate_levels.empty());
}

TEST_CASE("fixed points of the second-surface families") {
    double a = 1.0, b = 1.0;
    SystemFamily sys = SystemFamily::w2_trans_b(a, b, 0.45);
    auto inv = fixed_points(sys, {0.4, 0});
    CHECK(find_point(inv, "A").J == doctest::Approx(0.0));
    CHECK(find_point(inv, "B").J == doctest::Approx(b));
    CHECK(find_point(inv, "C").J == doctest::Approx(a + b));
    CHECK(find_point(inv, "D").J == doctest::Approx(a + 2 * b));
    for (const auto& e : inv.points) CHECK(e.grad_residual < 1e-9);

    // H values at the four points, as arranged by the construction
    double t = 0.4;
    CHECK(find_point(inv, "A").H == doctest::Approx(-b).epsilon(1e-12));
    CHECK(find_point(inv, "B").H == doctest::Approx((1 - 2 * t) * b).epsilon(1e-12));
    CHECK(find_point(inv, "C").H == doctest::Approx(b).epsilon(1e-12));
    CHECK(find_point(inv, "D").H == doctest::Approx((2 * t - 1) * b).epsilon(1e-12));
}

TEST_CASE("two-parameter family restricts to both one-parameter families") {
    SystemFamily two = SystemFamily::w2_2param(1, 1, 0.45);
    SystemFamily tb = SystemFamily::w2_trans_b(1, 1, 0.45);
    SystemFamily tc = SystemFamily::w2_trans_c(1, 1, 0.45);
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    for (int i = 0; i < 100; ++i) {
        ChartPoint p = chart_point(ChartId::U13, u(rng), u(rng), u(rng), u(rng));
        double t = i / 100.0;
        CHECK(evaluate(two, {t, 1.0}, p).H ==
              doctest::Approx(evaluate(tb, {t, 0}, p).H).epsilon(1e-13));
        CHECK(evaluate(two, {0.0, 1.0 - t}, p).H ==
              doctest::Approx(evaluate(tc, {t, 0}, p).H).epsilon(1e-13));
    }
}

TEST_CASE("momentum image envelopes at the toric ends") {
    SystemFamily coupled = SystemFamily::coupled_angular(1, 2);
    MomentumImage img = momentum_image(coupled, {0.0, 0}, 24);
    for (const auto& row : img.envelope) {
        CHECK(row.J >= -3.0 - 1e-9);
        CHECK(row.J <= 3.0 + 1e-9);
        // H_0 = z1 ranges over the z1-interval compatible with the J slice
        double lo = std::max(-1.0, (row.J - 2.0) / 2.0 * 2.0 - 0.0);
        (void)lo;
        CHECK(row.Hmax <= 1.0 + 1e-9);
        CHECK(row.Hmin >= -1.0 - 1e-9);
    }

    SystemFamily moving = SystemFamily::w1_moving(1, 2, 0.1);
    MomentumImage img2 = momentum_image(moving, {0.0, 0}, 24);
    // the t=0 system is (J,R) with image the standard Delzant polygon of the
    // first Hirzebruch surface: 0 <= H <= min(beta, alpha + beta - J)
    for (const auto& row : img2.envelope) {
        CHECK(row.Hmin >= -1e-9);
        CHECK(row.Hmin <= 1e-6 + 0.2); // bins have finite width
        CHECK(row.Hmax <= std::min(2.0, 3.0 - row.J) + 0.2);
    }
    CHECK(!img2.fixed_point_images.empty());

    CHECK_THROWS_AS(momentum_image(coupled, {0.0, 0}, 4), std::domain_error);
}

TEST_CASE("parameter windows are enforced at construction") {
    CHECK_THROWS_AS(SystemFamily::coupled_angular(2, 1), std::domain_error);
    CHECK_THROWS_AS(SystemFamily::w1_moving(1, 2, 0.9), std::domain_error);
    CHECK_THROWS_AS(SystemFamily::w1_switch(2, 2, 0.5), std::domain_error);
    CHECK_THROWS_AS(SystemFamily::w2_trans_b(1, 4, 0.3), std::domain_error);
    CHECK_THROWS_AS(SystemFamily::w2_2param(1, 1, 0.1), std::domain_error);  // below window
    CHECK_THROWS_AS(SystemFamily::w2_2param(1, 1, 0.55), std::domain_error); // above window
    CHECK_NOTHROW(SystemFamily::w2_2param(1, 1, 0.45));
    CHECK_THROWS_AS(SystemFamily::degen_collapse(1, 2, 5.0), std::domain_error);
}
