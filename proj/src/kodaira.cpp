#include "kodbundle/kodaira.hpp"

#include <algorithm>

namespace kodbundle {

void validate_surface(const KodairaSurface& X) {
    if (X.base.lattice.D() != X.fiber.lattice.D())
        throw FieldMismatch("KodairaSurface: base and fiber in different fields");
    validate_discriminant(X.base.lattice.D());
    if (X.torsion_order < 1)
        throw std::invalid_argument("KodairaSurface: torsion order must be >= 1");
}

void validate_instance(const ChernInstance& inst) {
    validate_surface(inst.surface);
    if (inst.r < 2) throw std::invalid_argument("ChernInstance: r must be >= 2");
    if (inst.c1.torsion < 0 || inst.c1.torsion >= inst.surface.torsion_order)
        throw std::invalid_argument("ChernInstance: torsion residue out of range");
    if (!inst.c1.free.is_zero()) {
        HomLattice H = hom_lattice(inst.surface.base.lattice, inst.surface.fiber.lattice);
        if (!H.contains(inst.c1.free))
            throw std::invalid_argument(
                "ChernInstance: c1 free part is not a map from the base to the fiber");
    }
}

Int ns_degree(const KodairaSurface& X, const NSClass& c) {
    if (c.free.is_zero()) return 0;
    return isogeny_degree(Isogeny(c.free, X.base, X.fiber));
}

Int self_intersection(const KodairaSurface& X, const NSClass& c) {
    return Int(-2) * ns_degree(X, c);
}

Int top_self_intersection(const TopClass& c) {
    return Int(-2) * (c.a11 * c.b21 - c.b11 * c.a21);
}

TopClass to_top_class(const KodairaSurface& X, const NSClass& c) {
    if (c.free.is_zero()) return TopClass{Int(0), Int(0), Int(0), Int(0), c.torsion};
    IntMat2 m = rational_representation(Isogeny(c.free, X.base, X.fiber));
    // alpha-block column = first column of m, beta-block column = second
    return TopClass{m.a, m.c, m.b, m.d, c.torsion};
}

TopClass pushforward_class(const TopClass& c, const IntMat2& fstar) {
    IntMat2 m{c.a11, c.b11, c.a21, c.b21};
    IntMat2 p = m * fstar;
    return TopClass{p.a, p.c, p.b, p.d, c.torsion};
}

const char* region_name(Region r) {
    switch (r) {
        case Region::NoBundle: return "NoBundle";
        case Region::NonFiltrableOnly: return "NonFiltrableOnly";
        default: return "FiltrableRange";
    }
}

Rational delta_of(const ChernInstance& inst) {
    Rational c1sq(self_intersection(inst.surface, inst.c1));
    Rational r(inst.r);
    return (Rational(inst.c2) - (r - 1) / (2 * r) * c1sq) / r;
}

Int big_R(const ChernInstance& inst) {
    Int c1sq = self_intersection(inst.surface, inst.c1);
    // c1^2 = -2 deg is always even, so R is an integer; asserted, not assumed
    if (c1sq % 2 != 0) throw InconsistentInvariants("big_R: odd self-intersection");
    return inst.r * inst.c2 - (inst.r - 1) * (c1sq / 2);
}

InvariantReport invariants(const ChernInstance& inst) {
    validate_instance(inst);
    Rational delta = delta_of(inst);
    Int R = big_R(inst);
    if (Rational(R) != delta * Rational(inst.r * inst.r))
        throw InconsistentInvariants("invariants: R != r^2 * delta");
    Int d = boost::multiprecision::gcd(inst.r, abs(R));
    Rational m = m_bound(inst.surface, inst.r, inst.c1);
    Region region = delta < 0 ? Region::NoBundle
                  : delta < m ? Region::NonFiltrableOnly
                              : Region::FiltrableRange;
    return InvariantReport{delta, R, d, m, region};
}

namespace {

// Gram data of the degree form on Hom(B, E) in its canonical basis:
// deg(x*mu1 + y*mu2) = A x^2 + B x y + C y^2 (positive definite, rational).
struct DegreeForm {
    Rational A, B, C;

    Rational value(const Rational& x, const Rational& y) const {
        return A * x * x + B * x * y + C * y * y;
    }
};

DegreeForm degree_form(const HomLattice& H) {
    Rational scale = H.source().coord_det() / H.target().coord_det();
    Rational A = H.mu1().norm() * scale;
    Rational C = H.mu2().norm() * scale;
    Rational B = Rational(2) * norm_pairing(H.mu1(), H.mu2()) * scale;
    return {A, B, C};
}

// exact minimum of sum_i (p/r - x_i)^2 over integers x_1..x_r with sum p:
// balanced rounding (all x_i are floor(p/r) or floor(p/r) + 1) is optimal by
// the usual exchange argument
Rational balanced_square_sum(const Int& p, const Int& r) {
    Int f = floor_div(p, r);
    Int k = p - r * f;  // number of raised entries, 0 <= k < r
    Rational t = make_rational(p, r);
    Rational lo = t - Rational(f), hi = lo - 1;
    return Rational(k) * hi * hi + Rational(r - k) * lo * lo;
}

struct MBoundSearch {
    DegreeForm q;
    Rational tx, ty;   // target point c1/r in basis coordinates
    Int px, py;        // coordinates of c1 (the decomposition must sum to these)
    long r;
    std::vector<std::pair<Int, Int>> candidates;  // sorted by q(t - x) ascending
    std::vector<Rational> candidate_cost;
    Rational best;

    Rational cost(const Int& x, const Int& y) const {
        return q.value(tx - Rational(x), ty - Rational(y));
    }

    // depth-first search over non-decreasing candidate indices; the last
    // summand is forced by the sum constraint
    void dfs(size_t from, long depth, const Rational& acc, const Int& sx, const Int& sy) {
        if (depth == r - 1) {
            Rational total = acc + cost(px - sx, py - sy);
            if (total < best) best = total;
            return;
        }
        Rational remaining(r - 1 - depth);
        for (size_t i = from; i < candidates.size(); ++i) {
            // the free summands left all cost at least candidate_cost[i]
            if (acc + remaining * candidate_cost[i] >= best) break;
            dfs(i, depth + 1, acc + candidate_cost[i], sx + candidates[i].first,
                sy + candidates[i].second);
        }
    }
};

}  // namespace

Rational m_bound(const KodairaSurface& X, const Int& r, const NSClass& c1) {
    if (r < 2) throw std::invalid_argument("m_bound: r must be >= 2");
    if (c1.free.is_zero()) return Rational(0);  // mu_i = 0 throughout

    HomLattice H = hom_lattice(X.base.lattice, X.fiber.lattice);
    Lattice2 basis(H.mu1(), H.mu2());
    auto [cu, cv] = basis.coords_of(c1.free);
    if (!is_integer(cu) || !is_integer(cv))
        throw std::invalid_argument("m_bound: c1 free part not in Hom(B, E)");
    Int px = numerator(cu), py = numerator(cv);

    MBoundSearch s;
    s.q = degree_form(H);
    s.px = px;
    s.py = py;
    s.tx = make_rational(px, r);
    s.ty = make_rational(py, r);
    s.r = static_cast<long>(r);

    if (px % r == 0 && py % r == 0) return Rational(0);  // exact division kills every term

    // diagonal form: the problem separates into two one-dimensional sums
    // with a closed-form balanced-rounding optimum
    if (s.q.B == 0)
        return (s.q.A * balanced_square_sum(px, r) + s.q.C * balanced_square_sum(py, r)) /
               Rational(r);

    // incumbents: the four rounding corners with the last summand forced,
    // and the axis-balanced decomposition paired two ways
    s.best = Rational(-1);
    for (Int fx = rational_floor(s.tx); fx <= rational_floor(s.tx) + 1; ++fx) {
        for (Int fy = rational_floor(s.ty); fy <= rational_floor(s.ty) + 1; ++fy) {
            Rational total = s.cost(fx, fy) * Rational(r - 1) +
                             s.cost(px - fx * (r - 1), py - fy * (r - 1));
            if (s.best < 0 || total < s.best) s.best = total;
        }
    }
    {
        Int fx = floor_div(px, r), kx = px - r * fx;
        Int fy = floor_div(py, r), ky = py - r * fy;
        for (int flip = 0; flip < 2; ++flip) {
            Rational total(0);
            for (Int i = 0; i < r; ++i) {
                Int xi = fx + (i < kx ? 1 : 0);
                Int yi = fy + ((flip ? (r - 1 - i) : i) < ky ? 1 : 0);
                total += s.cost(xi, yi);
            }
            if (total < s.best) s.best = total;
        }
    }

    // candidate points: every mu with a single term already above the
    // incumbent can be pruned (all terms are non-negative)
    Rational disc = Rational(4) * s.q.A * s.q.C - s.q.B * s.q.B;
    Int bx = isqrt_floor(rational_floor(Rational(4) * s.q.C * s.best / disc)) + 1;
    Int by = isqrt_floor(rational_floor(Rational(4) * s.q.A * s.best / disc)) + 1;
    Int cx = round_nearest(s.tx), cy = round_nearest(s.ty);
    for (Int x = cx - bx; x <= cx + bx; ++x)
        for (Int y = cy - by; y <= cy + by; ++y)
            if (s.cost(x, y) <= s.best) s.candidates.push_back({x, y});
    std::sort(s.candidates.begin(), s.candidates.end(),
              [&](const auto& l, const auto& rr) { return s.cost(l.first, l.second) < s.cost(rr.first, rr.second); });
    s.candidate_cost.reserve(s.candidates.size());
    for (const auto& c : s.candidates) s.candidate_cost.push_back(s.cost(c.first, c.second));

    s.dfs(0, 0, Rational(0), Int(0), Int(0));
    return s.best / Rational(r);
}

PushforwardInvariants pushforward_bundle_invariants(const CoveringClassData& L, const Int& r,
                                                    const KodairaSurface& X) {
    if (!same_curve(L.c1hat.source(), X.base) || !same_curve(L.c1hat.target(), X.fiber))
        throw std::invalid_argument("pushforward_bundle_invariants: c1hat must map B to E");
    if (!same_curve(L.delta.target(), X.fiber))
        throw std::invalid_argument("pushforward_bundle_invariants: delta must end on E");

    Int deg_c1 = isogeny_degree(L.c1hat);
    Int deg_delta = isogeny_degree(L.delta);

    // route 1: 2 r^2 delta = c1^2 - r c^2, with c^2 = -2 deg(c∘j) obtained
    // from the split-degree identity through the intersection oracle
    auto [lhs, rhs] = split_degree_check(deg_c1, deg_delta, r);
    if (lhs != rhs) throw InconsistentInvariants("pushforward_bundle_invariants: oracle mismatch");
    Rational deg_cj = lhs / Rational(r);
    Rational c1sq(-2 * deg_c1);
    Rational csq = Rational(-2) * deg_cj;
    Rational delta_intersection = (c1sq - Rational(r) * csq) / Rational(2 * r * r);

    // route 2: r^2 delta = deg(c∘g^*) = deg(delta)
    Rational delta_degree = make_rational(deg_delta, r * r);

    if (delta_intersection != delta_degree)
        throw InconsistentInvariants(
            "pushforward_bundle_invariants: intersection and degree routes disagree");

    // c1 of the push-forward: c∘f^* = c1hat (free part), torsion configured
    NSClass down{L.c1hat.multiplier(), Int(0)};
    return PushforwardInvariants{r, to_top_class(X, down), delta_degree};
}

TopClass twist_by_fiber(const TopClass& c1, const Int& m, const Int& torsion_order) {
    TopClass out = c1;
    out.torsion = mod_floor(c1.torsion + m, torsion_order);
    return out;
}

}  // namespace kodbundle
