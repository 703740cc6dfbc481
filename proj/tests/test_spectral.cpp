#include <doctest.h>

#include <cmath>
#include <optional>
#include <random>

#include "semitoric/spectral.hpp"

using namespace semitoric;

namespace {

Mat4 pencil_H(const HessianBundle& hb) { return spec_detail::mul(hb.omega_inv, hb.d2H); }

void check_close(const Mat4& a, const Mat4& b, double tol) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(std::fabs(a[i][j] - b[i][j]) < tol);
}

Mat4 m4(std::initializer_list<double> v) {
    Mat4 m{};
    auto it = v.begin();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = *it++;
    return m;
}

} // namespace

TEST_CASE("finite differences match the closed-form pencil at C") {
    double a = 1, b = 2;
    double g = 9.0 / (20.0 * std::sqrt(2 * b));
    SystemFamily sys = SystemFamily::w1_moving(a, b, g);
    for (double t : {0.2, 0.5, 0.77}) {
        HessianBundle fd = hessian_bundle(sys, {t, 0}, chart_point(ChartId::U23, 0, 0, 0, 0));
        double q = t * g * std::sqrt(2 * b);
        Mat4 expected = m4({0, 0, 0, q,
                            0, 0, q, 0,
                            0, q, 0, 1 - 2 * t,
                            q, 0, 2 * t - 1, 0});
        check_close(pencil_H(fd), expected, 1e-6);
        HessianBundle an = analytic_bundle(sys, {t, 0}, "C");
        check_close(pencil_H(an), expected, 1e-13);
        check_close(fd.d2J, an.d2J, 1e-6);
    }
}

TEST_CASE("finite differences match the closed-form pencil at D") {
    double a = 1.2, b = 0.9;
    double g = 0.3 / std::sqrt(2 * b);
    SystemFamily sys = SystemFamily::w1_moving(a, b, g);
    for (double t : {0.3, 0.64}) {
        HessianBundle fd = hessian_bundle(sys, {t, 0}, chart_point(ChartId::U24, 0, 0, 0, 0));
        double q = t * g * std::sqrt(2 * b);
        Mat4 expected = m4({0, 0, 0, -q,
                            0, 0, q, 0,
                            0, -q, 0, 2 * t - 1,
                            q, 0, 1 - 2 * t, 0});
        check_close(pencil_H(fd), expected, 1e-6);
    }
}

TEST_CASE("finite differences match the wall-point pencils") {
    double a = 1, b = 1;
    double g = 1.0 / (4 * std::sqrt(2 * b));
    SystemFamily sys = SystemFamily::w1_moving(a, b, g);
    double t = 0.5;
    auto inv = fixed_points(sys, {t, 0});
    for (const auto& label : {std::string("A"), std::string("B")}) {
        const FixedPointEntry* e = nullptr;
        for (const auto& q : inv.points)
            if (q.label == label) e = &q;
        REQUIRE(e != nullptr);
        REQUIRE(e->point.chart == ChartId::U14);
        double x3 = e->point.c[2];
        double root = std::sqrt((2 * b - x3 * x3) * (2 * (a + b) - x3 * x3));
        double av = -t * g * x3 * (2 * b - x3 * x3) / root;
        double cv = 1 - 2 * t + 2 * t * g * x3 * (x3 * x3 - a - 2 * b) / root;
        // radial second derivative; the P-based route below gives the same
        // value at the wall fixed points
        double num = 3 * std::pow(x3, 6) - 9 * (a + 2 * b) * std::pow(x3, 4) +
                     4 * (a * a + 9 * a * b + 9 * b * b) * x3 * x3 -
                     12 * b * (a * a + 3 * a * b + 2 * b * b);
        double bv = 1 - 2 * t + 2 * t * g * x3 * num / std::pow(root, 3);
        // independent route through P(X) = X^2 (3X^2 - 8(a+2b)X + 24b(a+b)) - 16 b^2 (a+b)^2,
        // valid at the wall fixed points
        double X = x3 * x3;
        double P = X * X * (3 * X * X - 8 * (a + 2 * b) * X + 24 * b * (a + b)) -
                   16 * b * b * (a + b) * (a + b);
        double bv2 = t * g * P / (x3 * std::pow(root, 3));
        CHECK(bv == doctest::Approx(bv2).epsilon(1e-9));
        Mat4 expected = m4({0, -av, 0, 0,
                            av, 0, 0, 0,
                            0, 0, 0, -cv,
                            0, 0, bv, 0});
        HessianBundle fd = hessian_bundle(sys, {t, 0}, e->point);
        check_close(pencil_H(fd), expected, 1e-6);
    }
}

TEST_CASE("finite differences match the closed-form pencils on the second surface") {
    double a = 1, b = 1, g = 0.45;
    SystemFamily tb = SystemFamily::w2_trans_b(a, b, g);
    for (double t : {0.25, 0.7}) {
        HessianBundle fd = hessian_bundle(tb, {t, 0}, chart_point(ChartId::U13, 0, 0, 0, 0));
        double q = b * g * std::sqrt(a * b) * t / (a * (a + 2 * b));
        double d = t - 1 - 2 * b * b * t / (a * (a + 2 * b));
        Mat4 expected = m4({0, -b * t / a, 0, q,
                            b * t / a, 0, q, 0,
                            0, q, 0, -d,
                            q, 0, d, 0});
        for (auto& row : expected)
            for (auto& v : row) v *= 2;
        check_close(pencil_H(fd), expected, 1e-6);
        check_close(pencil_H(analytic_bundle(tb, {t, 0}, "B")), expected, 1e-12);
    }

    // half-half member of the two-parameter family at B and C
    SystemFamily two = SystemFamily::w2_2param(a, b, g);
    double nu = b / a;
    double gn = g * std::sqrt(nu);
    Mat4 expB = m4({0, 0, 0, gn,
                    0, 0, gn, 0,
                    0, gn, 0, 1 / (1 + 2 * nu),
                    gn, 0, -1 / (1 + 2 * nu), 0});
    for (auto& row : expB)
        for (auto& v : row) v /= 2;
    HessianBundle fdB = hessian_bundle(two, {0.5, 0.5}, chart_point(ChartId::U13, 0, 0, 0, 0));
    check_close(pencil_H(fdB), expB, 1e-6);
    check_close(pencil_H(analytic_bundle(two, {0.5, 0.5}, "B")), expB, 1e-12);

    Mat4 expC = m4({0, 0, 0, gn,
                    0, 0, gn, 0,
                    0, gn, 0, -1 / (1 + 2 * nu),
                    gn, 0, 1 / (1 + 2 * nu), 0});
    for (auto& row : expC)
        for (auto& v : row) v /= 2;
    HessianBundle fdC = hessian_bundle(two, {0.5, 0.5}, chart_point(ChartId::U23, 0, 0, 0, 0));
    check_close(pencil_H(fdC), expC, 1e-6);
    check_close(pencil_H(analytic_bundle(two, {0.5, 0.5}, "C")), expC, 1e-12);

    // A at the half-half member, with the 1/2 prefactor; the Taylor
    // expansion of H at A gives the radial entry (alpha+4beta)/(alpha+2beta),
    // the same as at D
    double pref = 0.5;
    double w = 2 * b / (a + 2 * b);
    double x = g * std::sqrt(b * (a + 2 * b)) / a;
    double y = (a + 4 * b) / (a + 2 * b);
    Mat4 expA = m4({0, -w, 0, -x,
                    w, 0, x, 0,
                    0, -x, 0, -y,
                    x, 0, y, 0});
    for (auto& row : expA)
        for (auto& v : row) v *= pref;
    HessianBundle fdA = hessian_bundle(two, {0.5, 0.5}, chart_point(ChartId::U14, 0, 0, 0, 0));
    check_close(pencil_H(fdA), expA, 1e-6);

    double w4 = (a + 4 * b) / (a + 2 * b);
    Mat4 expD = m4({0, w, 0, -x,
                    -w, 0, x, 0,
                    0, -x, 0, w4,
                    x, 0, -w4, 0});
    for (auto& row : expD)
        for (auto& v : row) v *= pref;
    HessianBundle fdD = hessian_bundle(two, {0.5, 0.5}, chart_point(ChartId::U24, 0, 0, 0, 0));
    check_close(pencil_H(fdD), expD, 1e-6);
}

TEST_CASE("hessian_bundle rejects non-fixed points") {
    SystemFamily sys = SystemFamily::w1_moving(1, 2, 0.1);
    CHECK_THROWS_AS(hessian_bundle(sys, {0.4, 0}, chart_point(ChartId::U23, 0.3, 0.1, 0.2, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("classification of the transition point across t") {
    double a = 1, b = 2;
    SystemFamily sys = SystemFamily::w1_moving(a, b, 9.0 / (20.0 * std::sqrt(2 * b)));
    auto specials = special_combos(sys);
    auto classify_at = [&](double t) {
        return classify_fixed_point(analytic_bundle(sys, {t, 0}, "C"), specials).type;
    };
    CHECK(classify_at(0.1) == Williamson::EllipticElliptic);
    CHECK(classify_at(10.0 / 29.0 - 1e-3) == Williamson::EllipticElliptic);
    CHECK(classify_at(0.5) == Williamson::FocusFocus);
    CHECK(classify_at(10.0 / 29.0 + 1e-3) == Williamson::FocusFocus);
    CHECK(classify_at(10.0 / 11.0 + 1e-3) == Williamson::EllipticElliptic);
    CHECK(classify_at(10.0 / 29.0) == Williamson::Degenerate);
    CHECK(classify_at(10.0 / 11.0) == Williamson::Degenerate);

    // toric end via the FD route
    auto fd = hessian_bundle(sys, {0.0, 0}, chart_point(ChartId::U23, 0, 0, 0, 0));
    CHECK(classify_fixed_point(fd, specials).type == Williamson::EllipticElliptic);
}

TEST_CASE("classification at the half-time of the coupled system") {
    SystemFamily sys = SystemFamily::coupled_angular(1, 2);
    auto hb = analytic_bundle(sys, {0.5, 0}, "NS");
    CHECK(classify_fixed_point(hb, special_combos(sys)).type == Williamson::FocusFocus);
    auto fd = hessian_bundle(sys, {0.5, 0}, sphere_point(0, 0, 1, 0, 0, -1));
    check_close(pencil_H(fd), pencil_H(hb), 1e-6);
    CHECK(classify_fixed_point(fd, special_combos(sys)).type == Williamson::FocusFocus);
    // the never-transitioning pole pair stays elliptic-elliptic
    auto other = hessian_bundle(sys, {0.5, 0}, sphere_point(0, 0, -1, 0, 0, 1));
    CHECK(classify_fixed_point(other, special_combos(sys)).type == Williamson::EllipticElliptic);
}

TEST_CASE("non-transition points stay elliptic-elliptic through the sweep") {
    double a = 1, b = 2;
    SystemFamily w1 = SystemFamily::w1_moving(a, b, 9.0 / (20.0 * std::sqrt(2 * b)));
    SystemFamily w2 = SystemFamily::w2_trans_b(1, 1, 0.45);
    auto sp1 = special_combos(w1);
    auto sp2 = special_combos(w2);
    for (int k = 0; k <= 20; ++k) {
        double t = k / 20.0;
        auto inv = fixed_points(w1, {t, 0});
        for (const auto& e : inv.points) {
            if (e.label == "C") continue;
            auto hb = hessian_bundle(w1, {t, 0}, e.point);
            CHECK(classify_fixed_point(hb, sp1).type == Williamson::EllipticElliptic);
        }
        for (const char* lbl : {"A", "C", "D"}) {
            ChartPoint p = lbl == std::string("A")   ? chart_point(ChartId::U14, 0, 0, 0, 0)
                           : lbl == std::string("C") ? chart_point(ChartId::U23, 0, 0, 0, 0)
                                                     : chart_point(ChartId::U24, 0, 0, 0, 0);
            auto hb = hessian_bundle(w2, {t, 0}, p);
            CHECK(classify_fixed_point(hb, sp2).type == Williamson::EllipticElliptic);
        }
    }
}

TEST_CASE("verdict is stable across all conclusive pencil combinations") {
    // the root signs must not depend on which (nu, mu) yields distinct
    // nonzero roots
    std::vector<std::pair<SystemFamily, ParamValue>> cases = {
        {SystemFamily::w1_moving(1, 2, 9.0 / (20.0 * std::sqrt(4.0))), {0.5, 0}},
        {SystemFamily::w1_moving(1, 2, 9.0 / (20.0 * std::sqrt(4.0))), {0.15, 0}},
        {SystemFamily::w2_2param(1, 1, 0.45), {0.5, 0.5}},
        {SystemFamily::coupled_angular(1, 2), {0.5, 0}},
    };
    for (const auto& [sys, pv] : cases) {
        auto inv = fixed_points(sys, pv);
        for (const auto& e : inv.points) {
            HessianBundle hb = hessian_bundle(sys, pv, e.point);
            Mat4 kj = spec_detail::mul(hb.omega_inv, hb.d2J);
            Mat4 kh = spec_detail::mul(hb.omega_inv, hb.d2H);
            std::optional<Williamson> seen;
            for (int k = 0; k < 96; ++k) {
                double phi = M_PI * (k + 0.5) / 96;
                Mat4 a = spec_detail::lin(std::cos(phi), kj, std::sin(phi), kh);
                auto cv = spec_detail::judge_chi(char_poly(a), 1e-7, spec_detail::max_abs(a));
                if (!cv.conclusive) continue;
                if (!seen) seen = cv.type;
                CHECK(*seen == cv.type);
            }
            CHECK(seen.has_value());
        }
    }
}

TEST_CASE("characteristic polynomials are even over random pencils") {
    std::mt19937 rng(90210);
    std::uniform_real_distribution<double> angle(0, 2 * M_PI);
    std::uniform_real_distribution<double> tdist(0.05, 0.95);
    std::vector<SystemFamily> families = {
        SystemFamily::coupled_angular(1, 2),
        SystemFamily::w1_moving(1, 2, 9.0 / (20.0 * std::sqrt(4.0))),
        SystemFamily::w1_switch(1, 3, 3.0 / (8.0 * std::sqrt(6.0))),
        SystemFamily::w2_trans_b(1, 1, 0.45),
        SystemFamily::w2_2param(1, 1, 0.45),
    };
    int draws = 0;
    while (draws < 1000) {
        const auto& sys = families[draws % families.size()];
        ParamValue pv{tdist(rng), tdist(rng)};
        auto inv = fixed_points(sys, pv);
        const auto& e = inv.points[draws % inv.points.size()];
        HessianBundle hb = hessian_bundle(sys, pv, e.point);
        double phi = angle(rng);
        Mat4 a = spec_detail::lin(std::cos(phi), spec_detail::mul(hb.omega_inv, hb.d2J),
                                  std::sin(phi), spec_detail::mul(hb.omega_inv, hb.d2H));
        ReducedCharPoly rc = char_poly(a);
        CHECK(rc.odd_residual < 1e-10);
        ++draws;
    }
}

TEST_CASE("transition times: closed forms against the discriminant bisection") {
    SystemFamily coupled = SystemFamily::coupled_angular(1, 2);
    TransitionTimes tc = transition_times(coupled);
    CHECK(tc.closed_minus == doctest::Approx(2.0 / (5 + 2 * std::sqrt(2.0))).epsilon(1e-14));
    CHECK(tc.closed_plus == doctest::Approx(2.0 / (5 - 2 * std::sqrt(2.0))).epsilon(1e-14));
    CHECK(tc.gap() < 1e-9);

    SystemFamily w1 = SystemFamily::w1_moving(1, 2, 9.0 / (20.0 * std::sqrt(4.0)));
    TransitionTimes t1 = transition_times(w1);
    CHECK(t1.closed_minus == doctest::Approx(10.0 / 29.0).epsilon(1e-14));
    CHECK(t1.closed_plus == doctest::Approx(10.0 / 11.0).epsilon(1e-14));
    CHECK(t1.gap() < 1e-9);

    SystemFamily sw = SystemFamily::w1_switch(1, 3, 3.0 / (8.0 * std::sqrt(6.0)));
    TransitionTimes ts = transition_times(sw);
    CHECK(ts.closed_minus == doctest::Approx(4.0 / 11.0).epsilon(1e-14));
    CHECK(ts.closed_plus == doctest::Approx(4.0 / 5.0).epsilon(1e-14));
    CHECK(ts.gap() < 1e-9);

    SystemFamily tb = SystemFamily::w2_trans_b(1, 1, 0.45);
    TransitionTimes tt = transition_times(tb);
    CHECK(tt.closed_minus == doctest::Approx(3.0 / 4.9).epsilon(1e-14));
    CHECK(tt.closed_plus == doctest::Approx(3.0 / 3.1).epsilon(1e-14));
    CHECK(tt.gap() < 1e-9);

    SystemFamily tcs = SystemFamily::w2_trans_c(1, 1, 0.45);
    TransitionTimes t2 = transition_times(tcs);
    CHECK(t2.closed_minus == doctest::Approx(3.0 / 6.8).epsilon(1e-14));
    CHECK(t2.closed_plus == doctest::Approx(3.0 / 3.2).epsilon(1e-14));
    CHECK(t2.gap() < 1e-9);
}

TEST_CASE("eigenvalues follow the bifurcation pattern near the lower transition time") {
    SystemFamily sys = SystemFamily::coupled_angular(1, 2);
    TransitionTimes tt = transition_times(sys);
    double window = 0.05;
    // before: two distinct pure-imaginary pairs
    auto before = pencil_eigenvalues(analytic_bundle(sys, {tt.closed_minus - window, 0}, "NS"),
                                     0.0, 1.0);
    double maxre = 0, im1 = -1, im2 = -1;
    for (const auto& l : before) maxre = std::max(maxre, std::fabs(l.real()));
    im1 = std::fabs(before[0].imag());
    im2 = std::fabs(before[2].imag());
    CHECK(maxre < 1e-9);
    CHECK(std::fabs(im1 - im2) > 1e-3);
    // after: a quadruple with nonzero real and imaginary parts
    auto after = pencil_eigenvalues(analytic_bundle(sys, {tt.closed_minus + window, 0}, "NS"),
                                    0.0, 1.0);
    for (const auto& l : after) {
        CHECK(std::fabs(l.real()) > 1e-4);
        CHECK(std::fabs(l.imag()) > 1e-4);
    }
}

TEST_CASE("degenerate scenarios from the cubic examples") {
    SystemFamily become = SystemFamily::degen_become(-1.0);
    auto sp = special_combos(become);
    ChartPoint p = sphere_point(0, 0, -1, 0, 0, 1);
    CHECK(classify_fixed_point(hessian_bundle(become, {0.3, 0}, p), sp).type ==
          Williamson::EllipticElliptic);
    CHECK(classify_fixed_point(hessian_bundle(become, {0.5, 0}, p), sp).type ==
          Williamson::Degenerate);
    CHECK(classify_fixed_point(hessian_bundle(become, {0.7, 0}, p), sp).type ==
          Williamson::EllipticElliptic);

    // collapse of an entire level set: the image of the level degenerates
    SystemFamily collapse = SystemFamily::degen_collapse(1, 2, -1.0);
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> u(-1, 1);
    double href = 0;
    bool first = true;
    for (int i = 0; i < 64; ++i) {
        double z1 = u(rng);
        double z2 = (-1.0 - 1.0 * z1) / 2.0;
        if (std::fabs(z2) > 1) continue;
        double phi = 2 * M_PI * i / 64.0;
        double r1 = std::sqrt(1 - z1 * z1), r2 = std::sqrt(1 - z2 * z2);
        MomentumValue v = evaluate(collapse, {0.5, 0},
                                   sphere_point(r1, 0, z1, r2 * std::cos(phi), r2 * std::sin(phi), z2));
        if (first) {
            href = v.H;
            first = false;
        }
        CHECK(v.H == doctest::Approx(href).epsilon(1e-12));
    }
}

TEST_CASE("region diagram of the two-parameter family") {
    SystemFamily two = SystemFamily::w2_2param(1, 1, 0.45);
    RegionDiagram rd = region_diagram(two, 13);
    auto at = [&](int i, int k) { return rd.at(i, k); };
    // corners of the parameter square are toric-like: both elliptic-elliptic
    for (auto [i, k] : std::vector<std::pair<int, int>>{{0, 0}, {12, 0}, {0, 12}, {12, 12}}) {
        CHECK(at(i, k).first == Williamson::EllipticElliptic);
        CHECK(at(i, k).second == Williamson::EllipticElliptic);
    }
    // center: both focus-focus
    CHECK(at(6, 6).first == Williamson::FocusFocus);
    CHECK(at(6, 6).second == Williamson::FocusFocus);
}

TEST_CASE("rank one classification delegates to the reduced Morse type") {
    SystemFamily w1 = SystemFamily::w1_moving(1, 1, 1.0 / (4 * std::sqrt(2.0)));
    auto rh = reduced_hamiltonian(w1, {0.35, 0}, 0.5);
    auto cps = reduced_critical_points(rh);
    REQUIRE(!cps.empty());
    for (const auto& cp : cps)
        CHECK(classify_rank_one(cp) == RankOneType::EllipticTransverse);

    // fixed-sphere rank one points have eigenvalues +-i
    auto inv = fixed_points(w1, {0.35, 0});
    double xa = 0, xb = 0;
    for (const auto& e : inv.points) {
        if (e.label == "A") xa = e.point.c[2];
        if (e.label == "B") xb = e.point.c[2];
    }
    double mid = 0.5 * (xa + xb);
    CHECK(classify_fixed_sphere_rank_one(w1, {0.35, 0},
                                         chart_point(ChartId::U14, 0, 0, mid, 0.2)) ==
          RankOneType::EllipticTransverse);
}
