#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "semitoric/geometry.hpp"

namespace semitoric {

// A convex image exists for every flip of a valid marked polygon; anything
// else is reported through these.
struct inadmissible_error : std::runtime_error {
    explicit inadmissible_error(const std::string& w) : std::runtime_error(w) {}
};
struct infeasible_error : std::runtime_error {
    explicit infeasible_error(const std::string& w) : std::runtime_error(w) {}
};

struct Mark {
    RatPoint c;
    int eps = +1; // +1 cut upward, -1 downward

    friend bool operator==(const Mark& a, const Mark& b) { return a.c == b.c && a.eps == b.eps; }
};

enum class CornerClass { Delzant, Hidden, Fake, Invalid };

inline const char* to_string(CornerClass c) {
    switch (c) {
        case CornerClass::Delzant: return "delzant";
        case CornerClass::Hidden: return "hidden";
        case CornerClass::Fake: return "fake";
        default: return "invalid";
    }
}

/// One element of G_s x T: cut flips followed by the global shear T^k and a
/// vertical translation.
struct GroupElement {
    std::vector<int> flips; // eps' in {-1,+1}^s
    long shear_exponent = 0;
    Rat vertical_shift = Rat(0);

    static GroupElement identity(std::size_t s) {
        GroupElement g;
        g.flips.assign(s, +1);
        return g;
    }
};

/// A marked weighted polygon (Delta, c, eps): a convex rational polygon with
/// interior marked points at strictly increasing abscissas and a cut sign per
/// mark. The cut set L is the union of vertical half-lines from each mark,
/// upward for eps = +1 and downward for eps = -1. Structural defects (marks
/// on the boundary, bad corners) are reported by validate(), not at
/// construction.
class MarkedPolygon {
public:
    MarkedPolygon(ConvexPolygon polygon, std::vector<Mark> marks)
        : poly_(std::move(polygon)), marks_(std::move(marks)) {
        for (const auto& m : marks_)
            if (m.eps != 1 && m.eps != -1)
                throw std::invalid_argument("MarkedPolygon: eps must be +-1");
    }

    const ConvexPolygon& polygon() const { return poly_; }
    const std::vector<Mark>& marks() const { return marks_; }
    std::size_t mark_count() const { return marks_.size(); }

    friend bool operator==(const MarkedPolygon& a, const MarkedPolygon& b) {
        return a.poly_ == b.poly_ && a.marks_ == b.marks_;
    }

    // True iff p lies on some cut half-line of L.
    bool on_cut_set(const RatPoint& p) const {
        for (const auto& m : marks_) {
            if (p.x != m.c.x) continue;
            if (m.eps > 0 ? p.y >= m.c.y : p.y <= m.c.y) return true;
        }
        return false;
    }

private:
    ConvexPolygon poly_;
    std::vector<Mark> marks_;
};

namespace detail {

inline mpz_class det2(const std::pair<mpz_class, mpz_class>& u,
                      const std::pair<mpz_class, mpz_class>& v) {
    return u.first * v.second - u.second * v.first;
}

// Tv for T = (1 0; 1 1).
inline std::pair<mpz_class, mpz_class> apply_T(const std::pair<mpz_class, mpz_class>& v) {
    return {v.first, v.first + v.second};
}

} // namespace detail

/// Corner classification at a vertex. u points from the vertex to the next
/// counterclockwise vertex and v to the previous one; this normalization
/// gives det(u,v) = 1 on the standard positive-quadrant corner. A vertex on
/// the cut set is fake when det(u,Tv) = 0 and hidden when det(u,Tv) = 1;
/// off the cut set, Delzant means det(u,v) = 1.
inline CornerClass classify_corner(const MarkedPolygon& mp, const RatPoint& vertex) {
    auto idx = mp.polygon().vertex_index(vertex);
    if (!idx) throw std::invalid_argument("classify_corner: point is not a vertex");
    std::size_t i = *idx;
    std::size_t n = mp.polygon().size();
    auto u = primitive_direction(mp.polygon().vertex(i + 1) - vertex);
    auto v = primitive_direction(mp.polygon().vertex(i + n - 1) - vertex);
    if (mp.on_cut_set(vertex)) {
        mpz_class d = detail::det2(u, detail::apply_T(v));
        if (d == 0) return CornerClass::Fake;
        if (d == 1) return CornerClass::Hidden;
        return CornerClass::Invalid;
    }
    return detail::det2(u, v) == 1 ? CornerClass::Delzant : CornerClass::Invalid;
}

struct ValidityReport {
    bool valid = true;
    std::vector<std::string> violations;

    void fail(const std::string& what) {
        valid = false;
        violations.push_back(what);
    }
};

/// Checks the marked Delzant semitoric polygon conditions on one
/// representative: marks interior with strictly increasing abscissas, every
/// boundary point of the cut set a fake or hidden corner, all other corners
/// Delzant. Reports violations instead of throwing.
inline ValidityReport validate(const MarkedPolygon& mp) {
    ValidityReport rep;
    const auto& marks = mp.marks();
    for (std::size_t j = 0; j < marks.size(); ++j) {
        if (!mp.polygon().contains_strict(marks[j].c))
            rep.fail("mark " + std::to_string(j) + " at " + marks[j].c.str() +
                     " is not interior to the polygon");
        if (j > 0 && !(marks[j - 1].c.x < marks[j].c.x))
            rep.fail("mark abscissas must increase strictly");
    }
    if (!rep.valid) return rep;

    // each cut must leave the polygon through a fake or hidden corner
    for (std::size_t j = 0; j < marks.size(); ++j) {
        RatPoint exit = mp.polygon().cut_exit(marks[j].c, marks[j].eps);
        auto idx = mp.polygon().vertex_index(exit);
        if (!idx) {
            rep.fail("cut " + std::to_string(j) + " exits through edge point " + exit.str() +
                     " which is not a corner");
            continue;
        }
        CornerClass c = classify_corner(mp, exit);
        if (c != CornerClass::Fake && c != CornerClass::Hidden)
            rep.fail("corner " + exit.str() + " on the cut set is " +
                     std::string(to_string(c)) + ", expected fake or hidden");
    }
    for (const auto& v : mp.polygon().vertices()) {
        if (mp.on_cut_set(v)) continue;
        if (classify_corner(mp, v) != CornerClass::Delzant)
            rep.fail("corner " + v.str() + " violates the Delzant condition");
    }
    return rep;
}

/// The piecewise shear realizing the cut flips eps' on the current signs,
/// with exponents u_j = (eps_j - eps_j eps'_j)/2 at the mark abscissas.
inline PiecewiseShear flip_shear(const MarkedPolygon& mp, const std::vector<int>& flips) {
    if (flips.size() != mp.mark_count())
        throw std::invalid_argument("flip_shear: flip vector size mismatch");
    std::vector<Rat> lambdas;
    std::vector<long> expo;
    const auto& marks = mp.marks();
    for (std::size_t j = 0; j < marks.size(); ++j) {
        long u = (marks[j].eps - marks[j].eps * flips[j]) / 2;
        if (u != 0) {
            lambdas.push_back(marks[j].c.x);
            expo.push_back(u);
        }
    }
    return PiecewiseShear(std::move(lambdas), std::move(expo));
}

/// Action of one G_s x T element: cut flips first, then T^k, then the
/// vertical translation. Marks are transported and signs multiplied.
/// Throws inadmissible_error when the flipped polygon fails convexity.
inline MarkedPolygon apply_group(const GroupElement& g, const MarkedPolygon& mp) {
    PiecewiseShear ps = flip_shear(mp, g.flips);
    auto flipped = map_polygon(ps, mp.polygon());
    if (!flipped) throw inadmissible_error("apply_group: cut flip produces a non-convex polygon");
    LatticeMatrix tk = LatticeMatrix::shear_T_pow(g.shear_exponent);
    ConvexPolygon out_poly = map_polygon_affine(tk, g.vertical_shift, *flipped);
    std::vector<Mark> out_marks;
    out_marks.reserve(mp.mark_count());
    for (std::size_t j = 0; j < mp.mark_count(); ++j) {
        RatPoint c = apply_piecewise(ps, mp.marks()[j].c);
        c = apply_shear(tk, c);
        c.y += g.vertical_shift;
        out_marks.push_back({c, mp.marks()[j].eps * g.flips[j]});
    }
    return MarkedPolygon(std::move(out_poly), std::move(out_marks));
}

// Transport of a distinguished point along the same group element.
inline RatPoint apply_group_point(const GroupElement& g, const MarkedPolygon& mp,
                                  const RatPoint& p) {
    RatPoint q = apply_piecewise(flip_shear(mp, g.flips), p);
    q = apply_shear(LatticeMatrix::shear_T_pow(g.shear_exponent), q);
    q.y += g.vertical_shift;
    return q;
}

/// Canonical representative of the G_s x T orbit: flip every cut upward,
/// apply the unique global T^k putting the edge leaving the bottom-left
/// vertex in direction (a, b) with 0 <= b < a, then shift that vertex to
/// height zero. Both group factors are exhausted, so two valid marked
/// polygons are orbit-equal iff their canonical forms coincide.
inline MarkedPolygon canonical_form(const MarkedPolygon& mp) {
    std::vector<int> flips;
    flips.reserve(mp.mark_count());
    for (const auto& m : mp.marks()) flips.push_back(m.eps); // eps' = eps sends eps to +1
    GroupElement up{flips, 0, Rat(0)};
    MarkedPolygon all_up = apply_group(up, mp);

    const RatPoint& v0 = all_up.polygon().vertices().front(); // lex-min vertex
    auto dir = primitive_direction(all_up.polygon().vertex(1) - v0);
    // bottom edge from the lex-min vertex always points strictly rightward
    mpz_class a = dir.first, b = dir.second;
    mpz_class k;
    mpz_cdiv_q(k.get_mpz_t(), mpz_class(-b).get_mpz_t(), a.get_mpz_t());
    if (!k.fits_slong_p()) throw std::overflow_error("canonical_form: shear exponent overflow");
    GroupElement norm = GroupElement::identity(mp.mark_count());
    norm.shear_exponent = k.get_si();
    RatPoint v0_sheared = apply_shear(LatticeMatrix::shear_T_pow(norm.shear_exponent), v0);
    norm.vertical_shift = -v0_sheared.y;
    return apply_group(norm, all_up);
}

/// True iff the two marked weighted polygons lie in one G_s x T orbit.
inline bool orbit_equal(const MarkedPolygon& a, const MarkedPolygon& b) {
    if (a.mark_count() != b.mark_count()) return false;
    return canonical_form(a) == canonical_form(b);
}

namespace detail {

// Closed-triangle membership test.
inline bool triangle_contains(const RatPoint& a, const RatPoint& b, const RatPoint& c,
                              const RatPoint& p) {
    Rat d1 = orient(a, b, p), d2 = orient(b, c, p), d3 = orient(c, a, p);
    bool has_neg = d1 < Rat(0) || d2 < Rat(0) || d3 < Rat(0);
    bool has_pos = d1 > Rat(0) || d2 > Rat(0) || d3 > Rat(0);
    return !(has_neg && has_pos);
}

// Does the closed vertical half-line from c (up if eps > 0) meet the closed
// triangle (a, b, q)?
inline bool halfline_meets_triangle(const RatPoint& c, int eps, const RatPoint& a,
                                    const RatPoint& b, const RatPoint& q) {
    Rat xlo = min(min(a.x, b.x), q.x), xhi = max(max(a.x, b.x), q.x);
    if (c.x < xlo || c.x > xhi) return false;
    // y-extent of the triangle on the line x = c.x
    bool found = false;
    Rat ylo(0), yhi(0);
    const RatPoint tri[3] = {a, b, q};
    for (int i = 0; i < 3; ++i) {
        const RatPoint& p1 = tri[i];
        const RatPoint& p2 = tri[(i + 1) % 3];
        if (p1.x == p2.x) {
            if (p1.x != c.x) continue;
            for (const Rat& y : {p1.y, p2.y}) {
                if (!found) { ylo = yhi = y; found = true; }
                ylo = min(ylo, y); yhi = max(yhi, y);
            }
        } else if (min(p1.x, p2.x) <= c.x && c.x <= max(p1.x, p2.x)) {
            Rat y = p1.y + (p2.y - p1.y) * (c.x - p1.x) / (p2.x - p1.x);
            if (!found) { ylo = yhi = y; found = true; }
            ylo = min(ylo, y); yhi = max(yhi, y);
        }
    }
    if (!found) return false;
    return eps > 0 ? yhi >= c.y : ylo <= c.y;
}

struct ChopSite {
    std::size_t vertex_index;
    RatPoint p_prev, p_next; // new vertices toward the previous/next corner
};

// Feasibility of a corner chop of size lambda at vertex index i of one
// representative; nullopt carries no reason, the caller aggregates.
inline std::optional<ChopSite> chop_site(const MarkedPolygon& mp, std::size_t i, const Rat& lambda,
                                         std::string* why) {
    const auto& poly = mp.polygon();
    std::size_t n = poly.size();
    const RatPoint& q = poly.vertex(i);
    if (mp.on_cut_set(q)) {
        if (why) *why = "corner lies on the cut set";
        return std::nullopt;
    }
    if (classify_corner(mp, q) != CornerClass::Delzant) {
        if (why) *why = "corner is not Delzant";
        return std::nullopt;
    }
    const RatPoint& nxt = poly.vertex(i + 1);
    const RatPoint& prv = poly.vertex(i + n - 1);
    if (!(sl2z_length(q, nxt) > lambda) || !(sl2z_length(q, prv) > lambda)) {
        if (why) *why = "an adjacent edge has SL2(Z)-length <= lambda";
        return std::nullopt;
    }
    auto u = primitive_direction(nxt - q);
    auto v = primitive_direction(prv - q);
    RatPoint pu = {q.x + lambda * Rat(u.first), q.y + lambda * Rat(u.second)};
    RatPoint pv = {q.x + lambda * Rat(v.first), q.y + lambda * Rat(v.second)};
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        if (triangle_contains(q, pu, pv, poly.vertex(j))) {
            if (why) *why = "the simplex reaches another corner";
            return std::nullopt;
        }
    }
    for (const auto& m : mp.marks()) {
        if (halfline_meets_triangle(m.c, m.eps, pu, pv, q)) {
            if (why) *why = "the simplex meets the cut set";
            return std::nullopt;
        }
    }
    return ChopSite{i, pv, pu};
}

inline MarkedPolygon chop_at_site(const MarkedPolygon& mp, const ChopSite& site) {
    std::vector<RatPoint> verts;
    std::size_t n = mp.polygon().size();
    for (std::size_t j = 0; j < n; ++j) {
        if (j == site.vertex_index) {
            verts.push_back(site.p_prev);
            verts.push_back(site.p_next);
        } else {
            verts.push_back(mp.polygon().vertex(j));
        }
    }
    return MarkedPolygon(ConvexPolygon(std::move(verts)), mp.marks());
}

// Enumerate flip vectors, identity first.
inline std::vector<std::vector<int>> all_flip_vectors(std::size_t s) {
    std::vector<std::vector<int>> out;
    std::size_t total = std::size_t(1) << s;
    for (std::size_t mask = 0; mask < total; ++mask) {
        std::vector<int> f(s, +1);
        for (std::size_t j = 0; j < s; ++j)
            if (mask & (std::size_t(1) << j)) f[j] = -1;
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace detail

struct ChopOutcome {
    MarkedPolygon result;
    // endpoints of the new edge, transported back to the caller's
    // representative (the edge itself may be bent by a crease there; the
    // endpoints are what corner_unchop expects)
    RatPoint edge_a, edge_b;
};

/// Semitoric corner chop of size lambda at `vertex`. Feasibility is
/// orbit-level: the 2^s cut-flip representatives are searched for one in
/// which the vertex is Delzant and the simplex avoids the cut set and the
/// other corners; the chop is performed there and the result mapped back to
/// the incoming representative's cut signs.
inline ChopOutcome corner_chop_ex(const MarkedPolygon& mp, const RatPoint& vertex,
                                  const Rat& lambda) {
    if (!(lambda > Rat(0))) throw infeasible_error("corner_chop: size must be positive");
    if (!mp.polygon().vertex_index(vertex))
        throw std::invalid_argument("corner_chop: point is not a vertex");
    std::string last_reason = "no representative admits the chop";
    for (const auto& flips : detail::all_flip_vectors(mp.mark_count())) {
        GroupElement g{flips, 0, Rat(0)};
        MarkedPolygon rep = mp;
        RatPoint q = vertex;
        try {
            rep = apply_group(g, mp);
            q = apply_group_point(g, mp, vertex);
        } catch (const inadmissible_error&) {
            continue;
        }
        auto idx = rep.polygon().vertex_index(q);
        if (!idx) continue; // vertex dissolved into an edge in this representative
        std::string why;
        auto site = detail::chop_site(rep, *idx, lambda, &why);
        if (!site) {
            last_reason = why;
            continue;
        }
        MarkedPolygon chopped = detail::chop_at_site(rep, *site);
        // flips are involutive, so g maps the representative back
        return ChopOutcome{apply_group(g, chopped),
                           apply_group_point(g, chopped, site->p_prev),
                           apply_group_point(g, chopped, site->p_next)};
    }
    throw infeasible_error("corner_chop: " + last_reason);
}

inline MarkedPolygon corner_chop(const MarkedPolygon& mp, const RatPoint& vertex,
                                 const Rat& lambda) {
    return corner_chop_ex(mp, vertex, lambda).result;
}

/// Corner unchop of size lambda at the edge with the given endpoints: the
/// inverse of corner_chop. In some cut-flip representative the endpoints
/// must span a straight edge of SL2(Z)-length lambda whose adjacent edges,
/// extended, meet in a corner whose chop of size lambda restores the input.
inline MarkedPolygon corner_unchop(const MarkedPolygon& mp, const RatPoint& e1,
                                   const RatPoint& e2, const Rat& lambda) {
    if (!(lambda > Rat(0))) throw infeasible_error("corner_unchop: size must be positive");
    std::string last_reason = "no representative admits the unchop";
    for (const auto& flips : detail::all_flip_vectors(mp.mark_count())) {
        GroupElement g{flips, 0, Rat(0)};
        MarkedPolygon rep = mp;
        RatPoint a = e1, b = e2;
        try {
            rep = apply_group(g, mp);
            a = apply_group_point(g, mp, e1);
            b = apply_group_point(g, mp, e2);
        } catch (const inadmissible_error&) {
            continue;
        }
        const auto& poly = rep.polygon();
        std::size_t n = poly.size();
        auto ia = poly.vertex_index(a), ib = poly.vertex_index(b);
        if (!ia || !ib) continue;
        // normalize so that a -> b is the ccw edge
        if ((*ia + 1) % n != *ib) {
            if ((*ib + 1) % n == *ia) { std::swap(a, b); std::swap(ia, ib); }
            else { last_reason = "endpoints are not an edge"; continue; }
        }
        if (sl2z_length(a, b) != lambda) {
            last_reason = "edge has SL2(Z)-length " + sl2z_length(a, b).str() + ", expected " +
                          lambda.str();
            continue;
        }
        const RatPoint& w = poly.vertex(*ia + n - 1);
        const RatPoint& z = poly.vertex(*ib + 1);
        RatPoint du = a - w, dv = b - z;
        Rat den = cross(du, dv);
        if (den.is_zero()) { last_reason = "extended adjacent edges are parallel"; continue; }
        // q = w + t*du = z + s*dv
        Rat t = cross(z - w, dv) / den;
        Rat s = cross(z - w, du) / den;
        RatPoint q = {w.x + t * du.x, w.y + t * du.y};
        // the corner must lie strictly beyond both edge endpoints
        if (!(t > Rat(1)) || !(s > Rat(1))) {
            last_reason = "extended edges meet on the wrong side";
            continue;
        }
        std::vector<RatPoint> verts;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == *ia) verts.push_back(q);
            else if (j == *ib) continue;
            else verts.push_back(poly.vertex(j));
        }
        MarkedPolygon glued(ConvexPolygon(std::move(verts)), rep.marks());
        auto qi = glued.polygon().vertex_index(q);
        if (!qi) { last_reason = "glued corner degenerates"; continue; }
        std::string why;
        auto site = detail::chop_site(glued, *qi, lambda, &why);
        if (!site) { last_reason = "glued triangle infeasible: " + why; continue; }
        if (!(detail::chop_at_site(glued, *site) == rep)) {
            last_reason = "chop of the glued corner does not restore the input";
            continue;
        }
        return apply_group(g, glued);
    }
    throw infeasible_error("corner_unchop: " + last_reason);
}

/// Removes mark j after putting its cut at the required sign (flipping only
/// that cut when needed): the polygon of the returned representative is the
/// flipped one, marks reduced by one. Realizes the cut-forgetting map on
/// representatives.
inline MarkedPolygon remove_cut(const MarkedPolygon& mp, std::size_t j, int required_sign) {
    if (j >= mp.mark_count()) throw std::out_of_range("remove_cut: mark index out of range");
    MarkedPolygon rep = mp;
    if (mp.marks()[j].eps != required_sign) {
        std::vector<int> flips(mp.mark_count(), +1);
        flips[j] = -1;
        rep = apply_group(GroupElement{flips, 0, Rat(0)}, mp);
    }
    std::vector<Mark> marks = rep.marks();
    marks.erase(marks.begin() + static_cast<long>(j));
    return MarkedPolygon(rep.polygon(), std::move(marks));
}

struct SlopeAuditEntry {
    RatPoint vertex;
    Rat slope_left, slope_right;
    Rat expected_change; // w_e - k
    long ff_count = 0;
    bool has_weight = false;
    bool pass = false;
};

struct SlopeAuditReport {
    bool all_pass = true;
    std::vector<SlopeAuditEntry> entries;
};

/// Checks s_r - s_l = w_e - k at every interior top-boundary vertex, where k
/// counts focus-focus abscissas in the fiber and w_e = -1/|ab| when the
/// vertex is the image of an elliptic-elliptic point with S^1-weights (a,b).
inline SlopeAuditReport slope_change_audit(
    const MarkedPolygon& mp,
    const std::vector<std::pair<RatPoint, std::pair<long, long>>>& weights = {},
    const std::optional<std::map<std::string, long>>& ff_counts = std::nullopt) {
    SlopeAuditReport rep;
    const auto& poly = mp.polygon();
    std::size_t n = poly.size();
    Rat xmin = poly.min_x(), xmax = poly.max_x();
    for (std::size_t i = 0; i < n; ++i) {
        const RatPoint& v = poly.vertex(i);
        if (v.x == xmin || v.x == xmax) continue;
        auto f = poly.fiber(v.x);
        if (!f || v.y != f->second) continue; // not on the top boundary
        // ccw: the next vertex from a top corner lies to the left
        const RatPoint& left = poly.vertex(i + 1);
        const RatPoint& right = poly.vertex(i + n - 1);
        if (left.x == v.x || right.x == v.x) continue; // vertical wall corner
        SlopeAuditEntry e;
        e.vertex = v;
        e.slope_left = (v.y - left.y) / (v.x - left.x);
        e.slope_right = (right.y - v.y) / (right.x - v.x);
        if (ff_counts) {
            auto it = ff_counts->find(v.x.str());
            e.ff_count = it == ff_counts->end() ? 0 : it->second;
        } else {
            for (const auto& m : mp.marks())
                if (m.c.x == v.x) ++e.ff_count;
        }
        Rat w_e(0);
        for (const auto& [pt, ab] : weights) {
            if (pt == v) {
                e.has_weight = true;
                long prod = ab.first * ab.second;
                if (prod == 0) throw std::invalid_argument("slope_change_audit: zero weight");
                w_e = Rat(-1, prod < 0 ? -prod : prod);
            }
        }
        e.expected_change = w_e - Rat(e.ff_count);
        e.pass = (e.slope_right - e.slope_left) == e.expected_change;
        if (!e.pass) rep.all_pass = false;
        rep.entries.push_back(e);
    }
    return rep;
}

} // namespace semitoric
