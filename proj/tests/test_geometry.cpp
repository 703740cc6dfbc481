#include <doctest.h>

#include <random>

#include "semitoric/geometry.hpp"

using namespace semitoric;

namespace {
RatPoint pt(long x, long y) { return {Rat(x), Rat(y)}; }
RatPoint pt(const Rat& x, const Rat& y) { return {x, y}; }
} // namespace

TEST_CASE("rational parsing and arithmetic") {
    CHECK(Rat::parse("3/6") == Rat(1, 2));
    CHECK(Rat::parse("-4/2") == Rat(-2));
    CHECK(Rat::parse("7") == Rat(7));
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK((Rat(2, 3) * Rat(9, 4)).str() == "3/2");
    CHECK(Rat(1, 2).str() == "1/2");
    CHECK(Rat(-1, 2).str() == "-1/2");
    CHECK(Rat(5).str() == "5");
    CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
}

TEST_CASE("apply_shear on lattice matrices") {
    LatticeMatrix T = LatticeMatrix::shear_T();
    CHECK(apply_shear(T, pt(1, 1)) == pt(1, 2));
    CHECK(apply_shear(T.inverse(), pt(2, 2)) == pt(2, 0));
    CHECK(apply_shear(LatticeMatrix::identity(), pt(5, -3)) == pt(5, -3));
    CHECK(T.inverse() * T == LatticeMatrix::identity());
    CHECK(LatticeMatrix::shear_T_pow(3) == T * T * T);
}

TEST_CASE("apply_piecewise single cuts") {
    PiecewiseShear s0({Rat(0)}, {1});
    CHECK(apply_piecewise(s0, pt(1, 1)) == pt(1, 2));
    CHECK(apply_piecewise(s0, pt(-1, 1)) == pt(-1, 1));
    PiecewiseShear s2({Rat(2)}, {1});
    CHECK(apply_piecewise(s2, pt(5, 2)) == pt(5, 5));
}

TEST_CASE("piecewise shear properties") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<long> coord(-20, 20);
    PiecewiseShear zero({Rat(1), Rat(3)}, {0, 0});
    PiecewiseShear fwd({Rat(-1), Rat(2)}, {2, -1});
    for (int i = 0; i < 200; ++i) {
        RatPoint p = pt(Rat(coord(rng), 7), Rat(coord(rng), 5));
        CHECK(apply_piecewise(zero, p) == p);
        CHECK(apply_piecewise(fwd.inverse(), apply_piecewise(fwd, p)) == p);
    }
}

TEST_CASE("sl2z_length") {
    CHECK(sl2z_length(pt(0, 0), pt(2, 2)) == Rat(2));
    CHECK(sl2z_length(pt(0, 0), pt(3, 0)) == Rat(3));
    CHECK(sl2z_length(pt(0, 0), pt(4, 6)) == Rat(2));
    CHECK(sl2z_length(pt(1, 1), pt(1, 1)) == Rat(0));
    CHECK(sl2z_length(pt(0, 0), pt(Rat(1, 2), Rat(1, 2))) == Rat(1, 2));
}

TEST_CASE("sl2z_length invariance under unimodular maps and translation") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> coord(-12, 12);
    std::vector<LatticeMatrix> mats = {
        LatticeMatrix::shear_T_pow(3), {0, -1, 1, 0}, {2, 1, 1, 1}, {1, 0, 0, -1}};
    for (int i = 0; i < 100; ++i) {
        RatPoint a = pt(Rat(coord(rng), 3), Rat(coord(rng), 4));
        RatPoint b = pt(Rat(coord(rng), 3), Rat(coord(rng), 4));
        RatPoint t = pt(coord(rng), coord(rng));
        for (const auto& m : mats) {
            CHECK(sl2z_length(apply_shear(m, a), apply_shear(m, b)) == sl2z_length(a, b));
        }
        CHECK(sl2z_length(a + t, b + t) == sl2z_length(a, b));
    }
}

TEST_CASE("hull basic shapes") {
    ConvexPolygon tri = hull({pt(0, 0), pt(1, 0), pt(0, 1)});
    CHECK(tri.vertices() == std::vector<RatPoint>{pt(0, 0), pt(1, 0), pt(0, 1)});

    ConvexPolygon mid = hull({pt(0, 0), pt(2, 0), pt(1, 0), pt(1, 1)});
    CHECK(mid.vertices() == std::vector<RatPoint>{pt(0, 0), pt(2, 0), pt(1, 1)});

    ConvexPolygon quad = hull({pt(0, 0), pt(2, 2), pt(5, 5), pt(3, 1), pt(2, 0)});
    CHECK(quad.vertices() == std::vector<RatPoint>{pt(0, 0), pt(2, 0), pt(3, 1), pt(5, 5)});

    CHECK_THROWS_AS(hull({pt(0, 0), pt(1, 1), pt(2, 2)}), std::domain_error);
    CHECK_THROWS_AS(hull({pt(0, 0)}), std::domain_error);
}

TEST_CASE("hull is idempotent on random point sets") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> coord(-30, 30);
    for (int i = 0; i < 100; ++i) {
        std::vector<RatPoint> pts;
        for (int j = 0; j < 12; ++j) pts.push_back(pt(coord(rng), coord(rng)));
        try {
            ConvexPolygon h = hull(pts);
            CHECK(hull(h.vertices()) == h);
        } catch (const std::domain_error&) {
            // degenerate draw; nothing to check
        }
    }
}

TEST_CASE("polygon predicates") {
    ConvexPolygon sq = hull({pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)});
    CHECK(sq.contains_strict(pt(1, 1)));
    CHECK(!sq.contains_strict(pt(0, 2)));
    CHECK(sq.on_boundary(pt(0, 2)));
    CHECK(sq.on_boundary(pt(4, 4)));
    CHECK(!sq.on_boundary(pt(5, 2)));
    auto f = sq.fiber(Rat(2));
    REQUIRE(f.has_value());
    CHECK(f->first == Rat(0));
    CHECK(f->second == Rat(4));
    CHECK(sq.cut_exit(pt(2, 1), +1) == pt(2, 4));
    CHECK(sq.cut_exit(pt(2, 1), -1) == pt(2, 0));
    CHECK(sq.area() == Rat(16));
}

TEST_CASE("map_polygon inserts crease vertices and drops collinear ones") {
    // the cut-flip worked example from the coupled angular momenta polygon pair
    ConvexPolygon a = hull({pt(0, 0), pt(2, 2), pt(5, 2), pt(3, 0)});
    PiecewiseShear flip({Rat(2)}, {1});
    auto img = map_polygon(flip, a);
    REQUIRE(img.has_value());
    CHECK(img->vertices() == std::vector<RatPoint>{pt(0, 0), pt(2, 0), pt(3, 1), pt(5, 5)});
}

TEST_CASE("map_polygon detects non-convex images") {
    ConvexPolygon sq = hull({pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)});
    // shearing the right half of a square upward breaks convexity at the crease
    PiecewiseShear bad({Rat(2)}, {1});
    CHECK(!map_polygon(bad, sq).has_value());
}
