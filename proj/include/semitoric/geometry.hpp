#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "semitoric/rational.hpp"

namespace semitoric {

struct RatPoint {
    Rat x, y;

    friend RatPoint operator+(const RatPoint& a, const RatPoint& b) { return {a.x + b.x, a.y + b.y}; }
    friend RatPoint operator-(const RatPoint& a, const RatPoint& b) { return {a.x - b.x, a.y - b.y}; }
    friend RatPoint operator*(const Rat& s, const RatPoint& p) { return {s * p.x, s * p.y}; }
    friend bool operator==(const RatPoint& a, const RatPoint& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const RatPoint& a, const RatPoint& b) { return !(a == b); }

    std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }
};

inline bool lex_less(const RatPoint& a, const RatPoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

// cross(b-a, c-a); > 0 means c lies strictly left of ray a->b.
inline Rat orient(const RatPoint& a, const RatPoint& b, const RatPoint& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

inline Rat cross(const RatPoint& u, const RatPoint& v) { return u.x * v.y - u.y * v.x; }

/// 2x2 integer matrix; polygon transforms are restricted to det = +-1.
/// The distinguished shear T = (1 0; 1 1) maps (x, y) to (x, x + y) and
/// leaves the vertical direction invariant.
struct LatticeMatrix {
    long a = 1, b = 0, c = 0, d = 1; // row-major: (a b; c d)

    static LatticeMatrix identity() { return {1, 0, 0, 1}; }
    static LatticeMatrix shear_T() { return {1, 0, 1, 1}; }
    // T^k in closed form.
    static LatticeMatrix shear_T_pow(long k) { return {1, 0, k, 1}; }

    long det() const { return a * d - b * c; }

    LatticeMatrix inverse() const {
        long dt = det();
        if (dt != 1 && dt != -1) throw std::domain_error("LatticeMatrix: not unimodular");
        return {dt * d, -dt * b, -dt * c, dt * a};
    }

    friend LatticeMatrix operator*(const LatticeMatrix& m, const LatticeMatrix& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }

    friend bool operator==(const LatticeMatrix& m, const LatticeMatrix& n) {
        return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
    }
};

inline RatPoint apply_shear(const LatticeMatrix& m, const RatPoint& p) {
    return {Rat(m.a) * p.x + Rat(m.b) * p.y, Rat(m.c) * p.x + Rat(m.d) * p.y};
}

/// Composition of the maps t_{l_lambda}^k: identity on {x <= lambda}, T^k
/// relative to an origin on the line x = lambda on {x >= lambda}. The factors
/// commute (each only adds a function of x to y), so the composite is
///   (x, y) |-> (x, y + sum_i k_i * max(0, x - lambda_i)).
struct PiecewiseShear {
    std::vector<Rat> cuts;       // strictly increasing abscissas
    std::vector<long> exponents; // same length as cuts

    PiecewiseShear() = default;
    PiecewiseShear(std::vector<Rat> lambdas, std::vector<long> ks)
        : cuts(std::move(lambdas)), exponents(std::move(ks)) {
        if (cuts.size() != exponents.size())
            throw std::invalid_argument("PiecewiseShear: size mismatch");
        for (std::size_t i = 1; i < cuts.size(); ++i)
            if (!(cuts[i - 1] < cuts[i]))
                throw std::invalid_argument("PiecewiseShear: abscissas must increase strictly");
    }

    bool is_identity() const {
        for (long k : exponents)
            if (k != 0) return false;
        return true;
    }

    PiecewiseShear inverse() const {
        PiecewiseShear inv = *this;
        for (long& k : inv.exponents) k = -k;
        return inv;
    }
};

inline RatPoint apply_piecewise(const PiecewiseShear& ps, const RatPoint& p) {
    Rat y = p.y;
    for (std::size_t i = 0; i < ps.cuts.size(); ++i) {
        if (p.x > ps.cuts[i]) y += Rat(ps.exponents[i]) * (p.x - ps.cuts[i]);
    }
    return {p.x, y};
}

/// SL2(Z)-length of the segment [a, b]: the unique l >= 0 with b - a = l * v
/// where v is the primitive integer vector in the direction of b - a.
inline Rat sl2z_length(const RatPoint& a, const RatPoint& b) {
    RatPoint d = b - a;
    if (d.x.is_zero() && d.y.is_zero()) return Rat(0);
    mpz_class D = d.x.den() * d.y.den() / gcd_z(d.x.den(), d.y.den());
    mpz_class px = d.x.num() * (D / d.x.den());
    mpz_class py = d.y.num() * (D / d.y.den());
    mpz_class g = gcd_z(abs(px), abs(py));
    return Rat(g, D);
}

// Primitive integer vector in the direction of d (d != 0).
inline std::pair<mpz_class, mpz_class> primitive_direction(const RatPoint& d) {
    if (d.x.is_zero() && d.y.is_zero())
        throw std::domain_error("primitive_direction: zero vector");
    mpz_class D = d.x.den() * d.y.den() / gcd_z(d.x.den(), d.y.den());
    mpz_class px = d.x.num() * (D / d.x.den());
    mpz_class py = d.y.num() * (D / d.y.den());
    mpz_class g = gcd_z(abs(px), abs(py));
    return {px / g, py / g};
}

/// Strictly convex rational polygon, counterclockwise, stored starting from
/// the lexicographically smallest vertex so that equal polygons compare equal
/// as vertex lists. Degenerate (0- or 1-dimensional) input is rejected.
class ConvexPolygon {
public:
    explicit ConvexPolygon(std::vector<RatPoint> verts) : v_(std::move(verts)) {
        if (v_.size() < 3) throw std::domain_error("ConvexPolygon: need at least 3 vertices");
        std::size_t n = v_.size();
        for (std::size_t i = 0; i < n; ++i) {
            Rat o = orient(v_[i], v_[(i + 1) % n], v_[(i + 2) % n]);
            if (!(o > Rat(0)))
                throw std::domain_error("ConvexPolygon: vertices must be strictly convex ccw");
        }
        rotate_to_canonical();
    }

    const std::vector<RatPoint>& vertices() const { return v_; }
    std::size_t size() const { return v_.size(); }
    const RatPoint& vertex(std::size_t i) const { return v_[i % v_.size()]; }

    std::optional<std::size_t> vertex_index(const RatPoint& p) const {
        for (std::size_t i = 0; i < v_.size(); ++i)
            if (v_[i] == p) return i;
        return std::nullopt;
    }

    Rat min_x() const { return v_.front().x; } // lex-min vertex is leftmost
    Rat max_x() const {
        Rat m = v_.front().x;
        for (const auto& p : v_) m = max(m, p.x);
        return m;
    }

    bool contains_strict(const RatPoint& p) const {
        std::size_t n = v_.size();
        for (std::size_t i = 0; i < n; ++i)
            if (!(orient(v_[i], v_[(i + 1) % n], p) > Rat(0))) return false;
        return true;
    }

    bool on_boundary(const RatPoint& p) const {
        std::size_t n = v_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const RatPoint& a = v_[i];
            const RatPoint& b = v_[(i + 1) % n];
            if (!orient(a, b, p).is_zero()) continue;
            if (min(a.x, b.x) <= p.x && p.x <= max(a.x, b.x) &&
                min(a.y, b.y) <= p.y && p.y <= max(a.y, b.y))
                return true;
        }
        return false;
    }

    bool contains(const RatPoint& p) const { return contains_strict(p) || on_boundary(p); }

    // [y_min, y_max] of the fiber x = x0; empty if x0 outside [min_x, max_x].
    std::optional<std::pair<Rat, Rat>> fiber(const Rat& x0) const {
        if (x0 < min_x() || x0 > max_x()) return std::nullopt;
        bool found = false;
        Rat lo(0), hi(0);
        std::size_t n = v_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const RatPoint& a = v_[i];
            const RatPoint& b = v_[(i + 1) % n];
            if (a.x == b.x) {
                if (a.x != x0) continue;
                for (const Rat& y : {a.y, b.y}) {
                    if (!found) { lo = hi = y; found = true; }
                    lo = min(lo, y); hi = max(hi, y);
                }
                continue;
            }
            if (min(a.x, b.x) <= x0 && x0 <= max(a.x, b.x)) {
                Rat y = a.y + (b.y - a.y) * (x0 - a.x) / (b.x - a.x);
                if (!found) { lo = hi = y; found = true; }
                lo = min(lo, y); hi = max(hi, y);
            }
        }
        if (!found) return std::nullopt;
        return std::make_pair(lo, hi);
    }

    // Boundary exit point of the vertical ray from an interior point, up or down.
    RatPoint cut_exit(const RatPoint& from, int eps) const {
        auto f = fiber(from.x);
        if (!f) throw std::domain_error("cut_exit: abscissa outside polygon");
        return eps > 0 ? RatPoint{from.x, f->second} : RatPoint{from.x, f->first};
    }

    Rat area() const {
        Rat s(0);
        std::size_t n = v_.size();
        for (std::size_t i = 0; i < n; ++i) s += cross(v_[i], v_[(i + 1) % n]);
        return s / Rat(2);
    }

    friend bool operator==(const ConvexPolygon& p, const ConvexPolygon& q) { return p.v_ == q.v_; }
    friend bool operator!=(const ConvexPolygon& p, const ConvexPolygon& q) { return !(p == q); }

private:
    void rotate_to_canonical() {
        std::size_t best = 0;
        for (std::size_t i = 1; i < v_.size(); ++i)
            if (lex_less(v_[i], v_[best])) best = i;
        std::rotate(v_.begin(), v_.begin() + static_cast<long>(best), v_.end());
    }

    std::vector<RatPoint> v_;
};

/// Convex hull, counterclockwise, collinear points dropped. Throws if the
/// input is 0- or 1-dimensional.
inline ConvexPolygon hull(std::vector<RatPoint> pts) {
    if (pts.empty()) throw std::domain_error("hull: no points");
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::size_t n = pts.size();
    if (n < 3) throw std::domain_error("hull: degenerate polygon");
    std::vector<RatPoint> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) { // lower chain
        while (k >= 2 && !(orient(h[k - 2], h[k - 1], pts[i]) > Rat(0))) --k;
        h[k++] = pts[i];
    }
    std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) { // upper chain
        while (k >= lower && !(orient(h[k - 2], h[k - 1], pts[i]) > Rat(0))) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    if (h.size() < 3) throw std::domain_error("hull: degenerate polygon");
    return ConvexPolygon(std::move(h));
}

/// Image of a polygon under a piecewise shear, as the cyclic boundary list
/// with crease points inserted and collinear vertices dropped. Returns
/// nullopt if the image fails strict convexity (inadmissible flip).
inline std::optional<ConvexPolygon> map_polygon(const PiecewiseShear& ps, const ConvexPolygon& poly) {
    std::vector<RatPoint> chain;
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const RatPoint& a = poly.vertex(i);
        const RatPoint& b = poly.vertex(i + 1);
        chain.push_back(a);
        // insert boundary points where an edge crosses a cut line x = lambda
        std::vector<Rat> xs;
        for (const Rat& lam : ps.cuts)
            if ((a.x < lam && lam < b.x) || (b.x < lam && lam < a.x)) xs.push_back(lam);
        std::sort(xs.begin(), xs.end());
        if (a.x > b.x) std::reverse(xs.begin(), xs.end());
        for (const Rat& lam : xs) {
            Rat y = a.y + (b.y - a.y) * (lam - a.x) / (b.x - a.x);
            chain.push_back({lam, y});
        }
    }
    for (auto& p : chain) p = apply_piecewise(ps, p);
    // drop collinear runs
    std::vector<RatPoint> out;
    std::size_t m = chain.size();
    for (std::size_t i = 0; i < m; ++i) {
        const RatPoint& prev = chain[(i + m - 1) % m];
        const RatPoint& cur = chain[i];
        const RatPoint& next = chain[(i + 1) % m];
        if (!orient(prev, cur, next).is_zero()) out.push_back(cur);
    }
    if (out.size() < 3) return std::nullopt;
    std::size_t q = out.size();
    for (std::size_t i = 0; i < q; ++i)
        if (!(orient(out[i], out[(i + 1) % q], out[(i + 2) % q]) > Rat(0)))
            return std::nullopt;
    return ConvexPolygon(std::move(out));
}

/// Affine image under v |-> M v + (0, shift); M must be unimodular.
inline ConvexPolygon map_polygon_affine(const LatticeMatrix& m, const Rat& vshift,
                                        const ConvexPolygon& poly) {
    std::vector<RatPoint> out;
    out.reserve(poly.size());
    for (const auto& p : poly.vertices()) {
        RatPoint q = apply_shear(m, p);
        out.push_back({q.x, q.y + vshift});
    }
    if (m.det() < 0) std::reverse(out.begin(), out.end());
    return ConvexPolygon(std::move(out));
}

} // namespace semitoric
