#include "kodbundle/homology.hpp"

namespace kodbundle {

PushforwardMatrix::PushforwardMatrix(int genus, std::vector<Int> entries)
    : genus_(genus), e_(std::move(entries)) {
    if (genus_ < 1 || genus_ > 4)
        throw DimensionMismatch("PushforwardMatrix: genus must be in [1, 4]");
    if (e_.size() != static_cast<size_t>(4 * genus_))
        throw DimensionMismatch("PushforwardMatrix: expected 2 x 2g entries");
}

Int covering_degree(const PushforwardMatrix& P) {
    Int deg = 0;
    int g = P.genus();
    for (int i = 0; i < g; ++i) {
        const Int& a1 = P.at(0, i);
        const Int& a2 = P.at(1, i);
        const Int& b1 = P.at(0, g + i);
        const Int& b2 = P.at(1, g + i);
        deg += a1 * b2 - b1 * a2;
    }
    return deg;
}

ProductSurfaceClass make_class(const ProductSurface& s, Int a, Int b, QuadInt hom) {
    if (!hom.is_zero()) {
        HomLattice H = hom_lattice(s.left.lattice, s.right.lattice);
        if (!H.contains(hom))
            throw std::invalid_argument("make_class: hom part is not a map between the factors");
    }
    return ProductSurfaceClass{s, std::move(a), std::move(b), std::move(hom)};
}

namespace {
// degree of an element of Hom(left, right) extended by deg 0 = 0
Rational hom_degree(const ProductSurface& s, const QuadInt& lambda) {
    if (lambda.is_zero()) return Rational(0);
    return lambda.norm() * s.left.lattice.coord_det() / s.right.lattice.coord_det();
}
}  // namespace

Int product_intersection(const ProductSurfaceClass& x, const ProductSurfaceClass& y) {
    if (!same_surface(x.surface, y.surface))
        throw std::invalid_argument("product_intersection: classes on different surfaces");
    Rational pairing = hom_degree(x.surface, x.hom + y.hom) - hom_degree(x.surface, x.hom) -
                       hom_degree(x.surface, y.hom);
    Rational value = Rational(x.a * y.b + y.a * x.b) - pairing;
    if (!is_integer(value))
        throw std::domain_error("product_intersection: non-integral pairing value");
    return numerator(value);
}

ProductSurfaceClass fiber_class(const ProductSurface& s, const Isogeny& alpha,
                                const std::optional<Isogeny>& beta) {
    if (!same_curve(alpha.source(), s.left))
        throw std::invalid_argument("fiber_class: alpha must start on the left factor");
    Int deg_alpha = isogeny_degree(alpha);
    if (!beta) {
        return make_class(s, Int(0), deg_alpha, QuadInt::zero(s.left.lattice.D()));
    }
    if (!same_curve(beta->source(), s.right))
        throw std::invalid_argument("fiber_class: beta must start on the right factor");
    if (!same_curve(alpha.target(), beta->target()))
        throw std::invalid_argument("fiber_class: alpha and beta must share a target");
    Int deg_beta = isogeny_degree(*beta);
    QuadInt mu = -(compose(dual_isogeny(*beta), alpha).multiplier());
    return make_class(s, deg_beta, deg_alpha, mu);
}

std::pair<Rational, Rational> split_degree_check(const Int& c1deg, const Int& Rdeg, const Int& r) {
    if (r < 2) throw std::invalid_argument("split_degree_check: r must be >= 2");
    if ((c1deg + Rdeg) % r != 0)
        throw NonIntegralDegree("split_degree_check: degree sum not divisible by r");
    // degree-only route through the oracle on a reference product surface
    CurveModel unit{Lattice2(QuadInt::one(1), QuadInt(Rational(0), Rational(1), 1)), "unit"};
    ProductSurface s{unit, unit};
    QuadInt z = QuadInt::zero(1);
    ProductSurfaceClass pullback_theta = make_class(s, Int(r), Int(r), z);  // r(e_B + e_F)
    ProductSurfaceClass fiber = make_class(s, Rdeg, c1deg, z);
    Rational lhs = make_rational(product_intersection(pullback_theta, fiber), r);
    Rational rhs = Rational(c1deg + Rdeg);
    return {lhs, rhs};
}

}  // namespace kodbundle
