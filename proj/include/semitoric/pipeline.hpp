#pragma once

#include <cmath>
#include <optional>

#include "semitoric/marked_polygon.hpp"

namespace semitoric {

/// Polygons of the standard transition family on the n-th Hirzebruch
/// surface: the pre-transition polygon (no marks), the transition polygon
/// (one upward mark over x = beta), and the post-transition polygon.
struct FamilyPolygonTriple {
    MarkedPolygon below;   // t < t^-
    MarkedPolygon between; // t^- < t < t^+
    MarkedPolygon above;   // t > t^+
};

inline ConvexPolygon standard_polygon_0(long n, const Rat& alpha, const Rat& beta) {
    return hull({{Rat(0), Rat(0)},
                 {beta, beta},
                 {alpha + beta, beta},
                 {alpha + Rat(n) * beta, Rat(0)}});
}

inline ConvexPolygon standard_polygon_1(long n, const Rat& alpha, const Rat& beta) {
    return hull({{Rat(0), beta},
                 {beta, Rat(0)},
                 {alpha + beta, beta},
                 {alpha + Rat(n) * beta, Rat(0)}});
}

/// The three standard polygons with mark ordinate y in the open fiber. For
/// n = 0 the listed corners of the post-transition polygon are its actual
/// vertex set only when alpha >= beta; the degenerate combination is
/// rejected.
inline FamilyPolygonTriple standard_triple(long n, const Rat& alpha, const Rat& beta,
                                           const Rat& y) {
    if (n < 0 || !(alpha > Rat(0)) || !(beta > Rat(0)))
        throw std::domain_error("standard_triple: requires n >= 0 and positive scalings");
    if (!(Rat(0) < y && y < beta))
        throw std::domain_error("standard_triple: mark ordinate must lie strictly inside (0, beta)");
    if (n == 0 && beta >= alpha)
        throw std::domain_error(
            "standard_triple: for n = 0 the post-transition polygon requires alpha > beta");
    FamilyPolygonTriple t{
        MarkedPolygon(standard_polygon_0(n, alpha, beta), {}),
        MarkedPolygon(standard_polygon_0(n, alpha, beta), {{{beta, y}, +1}}),
        MarkedPolygon(standard_polygon_1(n, alpha, beta), {})};
    for (const MarkedPolygon* mp : {&t.below, &t.between, &t.above}) {
        auto rep = validate(*mp);
        if (!rep.valid)
            throw std::domain_error("standard_triple: " + rep.violations.front());
    }
    return t;
}

struct PipelineStep {
    int stage = 0;
    std::string op; // "chop" or "unchop"
    RatPoint site_a, site_b; // chop: corner (site_a); unchop: edge endpoints
    Rat lambda;
    MarkedPolygon before, after; // transition-regime polygon around the step
};

struct PipelineResult {
    FamilyPolygonTriple triple;
    std::vector<PipelineStep> log;
    // transition times of the coupled-spins start on W_0(alpha', beta) and of
    // the target scalings (alpha, beta); both times decrease as the first
    // scaling grows, so the start times sit at or below the target ones
    double t_minus_start = 0, t_plus_start = 0;
    double t_minus_target = 0, t_plus_target = 0;
};

namespace pipe_detail {

inline std::pair<double, double> coupled_times(double alpha, double beta) {
    double s = 2 * std::sqrt(alpha * beta);
    return {beta / (2 * beta + alpha + s), beta / (2 * beta + alpha - s)};
}

} // namespace pipe_detail

/// Builds the transition triple of the n-th surface by alternating corner
/// chops and unchops from the 0-th surface triple with enlarged first
/// scaling alpha' = alpha + sum(lambda): each stage chops size lambda at the
/// upper-right corner of all three regime polygons and unchops the
/// resulting lower-right edge (length beta - lambda), trading one slant for
/// one step of the trapezoid.
inline PipelineResult run_pipeline(long n_target, const Rat& alpha, const Rat& beta,
                                   std::vector<Rat> schedule, const Rat& y) {
    if (n_target < 0) throw std::domain_error("run_pipeline: n_target must be >= 0");
    if (static_cast<long>(schedule.size()) != n_target)
        throw std::domain_error("run_pipeline: schedule must provide one size per stage");
    Rat alpha_start = alpha;
    for (const Rat& l : schedule) {
        if (!(l > Rat(0)))
            throw infeasible_error("run_pipeline: chop sizes must be positive");
        alpha_start += l;
    }
    PipelineResult out{standard_triple(0, alpha_start, beta, y), {}, 0, 0, 0, 0};
    Rat a = alpha_start;
    for (long stage = 0; stage < n_target; ++stage) {
        const Rat& lambda = schedule[stage];
        long n = stage;
        if (!(lambda < beta))
            throw infeasible_error("run_pipeline: stage " + std::to_string(stage) +
                                   ": size must stay below the SL2(Z)-length " + beta.str() +
                                   " of the right edge");
        RatPoint corner{a + beta, beta};
        RatPoint bottom_right{a + Rat(n) * beta, Rat(0)};
        FamilyPolygonTriple next = out.triple;
        Rat unchop_len = beta - lambda;
        std::optional<MarkedPolygon> chop_before, chop_after, unchop_after;
        std::optional<RatPoint> unchop_a;
        MarkedPolygon* members[3] = {&next.below, &next.between, &next.above};
        for (int m = 0; m < 3; ++m) {
            MarkedPolygon before = *members[m];
            ChopOutcome chopped = [&] {
                try {
                    return corner_chop_ex(*members[m], corner, lambda);
                } catch (const infeasible_error& e) {
                    throw infeasible_error("run_pipeline: stage " + std::to_string(stage) +
                                           ", chop: " + e.what());
                }
            }();
            if (chopped.result.polygon().size() != members[m]->polygon().size() + 1)
                throw std::logic_error("run_pipeline: chop did not add exactly one corner");
            // the blowdown site starts at the lower of the two fresh corners
            RatPoint p_low =
                chopped.edge_a.y < chopped.edge_b.y ? chopped.edge_a : chopped.edge_b;
            // edge endpoints: new low corner and the old bottom-right corner
            MarkedPolygon glued = [&] {
                try {
                    return corner_unchop(chopped.result, p_low, bottom_right, unchop_len);
                } catch (const infeasible_error& e) {
                    throw infeasible_error("run_pipeline: stage " + std::to_string(stage) +
                                           ", unchop: " + e.what());
                }
            }();
            if (glued.polygon().size() + 1 != chopped.result.polygon().size())
                throw std::logic_error("run_pipeline: unchop did not remove exactly one corner");
            if (m == 1) {
                chop_before = before;
                chop_after = chopped.result;
                unchop_a = p_low;
                unchop_after = glued;
            }
            *members[m] = glued;
        }
        out.log.push_back(PipelineStep{static_cast<int>(stage), "chop", corner, corner, lambda,
                                       *chop_before, *chop_after});
        out.log.push_back(PipelineStep{static_cast<int>(stage), "unchop", *unchop_a,
                                       bottom_right, unchop_len, *chop_after, *unchop_after});
        out.triple = next;
        a = a - lambda;
    }
    auto [tm_start, tp_start] = pipe_detail::coupled_times(alpha_start.to_double(),
                                                           beta.to_double());
    auto [tm_target, tp_target] = pipe_detail::coupled_times(alpha.to_double(), beta.to_double());
    out.t_minus_start = tm_start;
    out.t_plus_start = tp_start;
    out.t_minus_target = tm_target;
    out.t_plus_target = tp_target;
    return out;
}

/// Equal sizes beta/2, bumped on the first stage when that would leave the
/// starting scaling alpha' = alpha + sum(lambda) at or below beta (the 0-th
/// surface triple needs alpha' > beta).
inline std::vector<Rat> default_schedule(long n_target, const Rat& alpha, const Rat& beta) {
    std::vector<Rat> out(static_cast<std::size_t>(n_target), beta / Rat(2));
    if (n_target >= 1) {
        Rat total = alpha;
        for (const Rat& l : out) total += l;
        if (!(total > beta)) out[0] = beta - alpha / Rat(2);
    }
    return out;
}

} // namespace semitoric
