#include <doctest.h>

#include "semitoric/pipeline.hpp"

using namespace semitoric;

TEST_CASE("standard triples") {
    auto t = standard_triple(1, Rat(1), Rat(1), Rat(1, 2));
    CHECK(t.below.polygon() ==
          hull({{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(2), Rat(1)}, {Rat(2), Rat(0)}}));
    CHECK(t.above.polygon() ==
          hull({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}, {Rat(2), Rat(1)}, {Rat(2), Rat(0)}}));
    CHECK(t.between.mark_count() == 1);
    CHECK(validate(t.between).valid);

    // the n = 0 triple matches the coupled-momenta polygon pair shape
    auto t0 = standard_triple(0, Rat(3), Rat(2), Rat(1));
    CHECK(t0.between.polygon() ==
          hull({{Rat(0), Rat(0)}, {Rat(2), Rat(2)}, {Rat(5), Rat(2)}, {Rat(3), Rat(0)}}));

    CHECK_THROWS_AS(standard_triple(1, Rat(1), Rat(1), Rat(1)), std::domain_error);  // y = beta
    CHECK_THROWS_AS(standard_triple(1, Rat(1), Rat(1), Rat(0)), std::domain_error);  // y = 0
    CHECK_THROWS_AS(standard_triple(-1, Rat(1), Rat(1), Rat(1, 2)), std::domain_error);
    CHECK_THROWS_AS(standard_triple(0, Rat(1), Rat(2), Rat(1, 2)), std::domain_error);
}

TEST_CASE("pipeline reaches the standard triples") {
    Rat alpha(1), beta(1), y(1, 2);
    for (long n = 1; n <= 5; ++n) {
        auto result = run_pipeline(n, alpha, beta, default_schedule(n, alpha, beta), y);
        auto target = standard_triple(n, alpha, beta, y);
        CHECK(orbit_equal(result.triple.below, target.below));
        CHECK(orbit_equal(result.triple.between, target.between));
        CHECK(orbit_equal(result.triple.above, target.above));
        // with the default equal schedule the final representatives coincide
        CHECK(result.triple.between == target.between);
        CHECK(static_cast<long>(result.log.size()) == 2 * n);
    }
}

TEST_CASE("pipeline stage invariants") {
    Rat alpha(2), beta(3), y(5, 4);
    auto result = run_pipeline(4, alpha, beta, default_schedule(4, alpha, beta), y);
    for (const auto& step : result.log) {
        CHECK(validate(step.before).valid);
        CHECK(validate(step.after).valid);
        CHECK(step.before.mark_count() == 1);
        CHECK(step.after.mark_count() == 1);
        long diff = static_cast<long>(step.after.polygon().size()) -
                    static_cast<long>(step.before.polygon().size());
        CHECK(diff == (step.op == "chop" ? 1 : -1));
        // exactly one fake-or-hidden corner on the cut set
        int on_cut = 0;
        for (const auto& v : step.after.polygon().vertices())
            if (step.after.on_cut_set(v)) ++on_cut;
        CHECK(on_cut == 1);
    }
}

TEST_CASE("pipeline transition polygons split into the unmarked pair") {
    Rat alpha(1), beta(2), y(1);
    for (long n = 1; n <= 3; ++n) {
        auto result = run_pipeline(n, alpha, beta, default_schedule(n, alpha, beta), y);
        MarkedPolygon plus = remove_cut(result.triple.between, 0, +1);
        MarkedPolygon minus = remove_cut(result.triple.between, 0, -1);
        CHECK(orbit_equal(plus, MarkedPolygon(standard_polygon_0(n, alpha, beta), {})));
        CHECK(orbit_equal(minus, MarkedPolygon(standard_polygon_1(n, alpha, beta), {})));
    }
}

TEST_CASE("pipeline transition-time bracket") {
    Rat alpha(1), beta(1), y(1, 2);
    auto result = run_pipeline(3, alpha, beta, default_schedule(3, alpha, beta), y);
    // enlarging the first scaling moves both transition times down, so the
    // start times of the construction bound the target ones from below
    CHECK(result.t_minus_start < result.t_minus_target);
    CHECK(result.t_minus_target < 0.5);
    CHECK(0.5 < result.t_plus_start);
    CHECK(result.t_plus_start < result.t_plus_target);
    CHECK(result.t_plus_target <= 1.0);
}

TEST_CASE("pipeline infeasibility") {
    Rat alpha(1), beta(1), y(1, 2);
    CHECK_THROWS_AS(run_pipeline(2, alpha, beta, {Rat(1), Rat(1, 2)}, y), infeasible_error);
    CHECK_THROWS_AS(run_pipeline(1, alpha, beta, {Rat(3, 2)}, y), infeasible_error);
    CHECK_THROWS_AS(run_pipeline(2, alpha, beta, {Rat(1, 2)}, y), std::domain_error);
}
