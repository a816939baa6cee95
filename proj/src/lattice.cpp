#include "kodbundle/lattice.hpp"

#include <algorithm>

namespace kodbundle {

namespace {

// rational coordinate rows of a lattice basis in the Q-basis (1, sqrt(-D))
struct CoordRows {
    Rational x1, y1, x2, y2;
};

CoordRows coord_rows(const Lattice2& L) {
    return {L.omega1().a(), L.omega1().b(), L.omega2().a(), L.omega2().b()};
}

// integer rows over a common positive denominator
struct IntRows {
    Int x1, y1, x2, y2, den;
};

IntRows clear_denominators(const CoordRows& r) {
    using boost::multiprecision::gcd;
    Int den = denominator(r.x1);
    den = den / gcd(den, denominator(r.y1)) * denominator(r.y1);
    den = den / gcd(den, denominator(r.x2)) * denominator(r.x2);
    den = den / gcd(den, denominator(r.y2)) * denominator(r.y2);
    auto scale = [&](const Rational& q) { return numerator(q) * (den / denominator(q)); };
    return {scale(r.x1), scale(r.y1), scale(r.x2), scale(r.y2), den};
}

Lattice2 from_hnf(const HnfRows& h, const Int& den, long D) {
    return Lattice2(QuadInt(make_rational(h.a, den), make_rational(h.b, den), D),
                    QuadInt(Rational(0), make_rational(h.c, den), D));
}

// dual of the coordinate lattice with respect to the standard dot product
CoordRows dual_rows(const CoordRows& r) {
    Rational dt = r.x1 * r.y2 - r.y1 * r.x2;
    // rows of (G^{-1})^T for G with rows (x1,y1), (x2,y2)
    return {r.y2 / dt, -r.x2 / dt, -r.y1 / dt, r.x1 / dt};
}

Lattice2 lattice_from_rows(const CoordRows& r, long D) {
    IntRows ir = clear_denominators(r);
    HnfRows h = hnf_rows({{ir.x1, ir.y1}, {ir.x2, ir.y2}});
    return from_hnf(h, ir.den, D);
}

}  // namespace

Lattice2::Lattice2(QuadInt w1, QuadInt w2) : w1_(std::move(w1)), w2_(std::move(w2)) {
    if (w1_.D() != w2_.D())
        throw FieldMismatch("Lattice2: basis elements with mixed discriminants");
    Rational dt = w1_.a() * w2_.b() - w1_.b() * w2_.a();
    if (dt == 0) throw std::invalid_argument("Lattice2: basis is linearly dependent over Q");
    if (dt < 0) {
        std::swap(w1_, w2_);
        swapped_ = true;
    }
}

Rational Lattice2::coord_det() const {
    return w1_.a() * w2_.b() - w1_.b() * w2_.a();
}

std::pair<Rational, Rational> Lattice2::coords_of(const QuadInt& x) const {
    if (x.D() != D()) throw FieldMismatch("Lattice2::coords_of: mixed discriminants");
    // solve u*w1 + v*w2 = x in the basis (1, sqrt(-D))
    Rational dt = coord_det();
    Rational u = (x.a() * w2_.b() - x.b() * w2_.a()) / dt;
    Rational v = (w1_.a() * x.b() - w1_.b() * x.a()) / dt;
    return {u, v};
}

bool Lattice2::contains(const QuadInt& x) const {
    auto [u, v] = coords_of(x);
    return is_integer(u) && is_integer(v);
}

QuadInt Lattice2::from_coords(const Rational& u, const Rational& v) const {
    return w1_ * u + w2_ * v;
}

Lattice2 Lattice2::scaled(const QuadInt& factor) const {
    if (factor.is_zero()) throw std::domain_error("Lattice2::scaled: zero factor");
    return Lattice2(w1_ * factor, w2_ * factor);
}

Lattice2 Lattice2::canonical() const {
    return lattice_from_rows(coord_rows(*this), D());
}

bool Lattice2::same_lattice(const Lattice2& other) const {
    if (D() != other.D()) return false;
    Lattice2 a = canonical();
    Lattice2 b = other.canonical();
    return a.omega1() == b.omega1() && a.omega2() == b.omega2();
}

IntMat2 sublattice_matrix(const Lattice2& sub, const Lattice2& sup) {
    auto [u1, v1] = sup.coords_of(sub.omega1());
    auto [u2, v2] = sup.coords_of(sub.omega2());
    if (!is_integer(u1) || !is_integer(v1) || !is_integer(u2) || !is_integer(v2))
        throw NotASublattice("sublattice_matrix: non-integral coordinates");
    // columns are the coordinates of sub's basis vectors
    return {numerator(u1), numerator(u2), numerator(v1), numerator(v2)};
}

Int lattice_index(const Lattice2& sub, const Lattice2& sup) {
    Int dt = sublattice_matrix(sub, sup).det();
    return abs(dt);
}

std::vector<Int> divisors_of(const Int& d) {
    std::vector<Int> divs;
    for (Int a = 1; a * a <= d; ++a) {
        if (d % a == 0) {
            divs.push_back(a);
            if (a * a != d) divs.push_back(d / a);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::vector<Lattice2> enumerate_sublattices(const Lattice2& L, const Int& d) {
    if (d < 1) throw std::invalid_argument("enumerate_sublattices: index must be >= 1");
    std::vector<Lattice2> out;
    for (const Int& a : divisors_of(d)) {
        Int c = d / a;
        for (Int b = 0; b < c; ++b) {
            // row form (a, b; 0, c) in L's basis
            out.push_back(Lattice2(L.omega1() * Rational(a) + L.omega2() * Rational(b),
                                   L.omega2() * Rational(c)));
        }
    }
    return out;
}

Lattice2 lattice_span(long D, const std::vector<QuadInt>& gens) {
    using boost::multiprecision::gcd;
    Int den(1);
    for (const QuadInt& g : gens) {
        if (g.D() != D) throw FieldMismatch("lattice_span: mixed discriminants");
        den = den / gcd(den, denominator(g.a())) * denominator(g.a());
        den = den / gcd(den, denominator(g.b())) * denominator(g.b());
    }
    auto s = [&](const Rational& q) { return numerator(q) * (den / denominator(q)); };
    std::vector<std::array<Int, 2>> rows;
    rows.reserve(gens.size());
    for (const QuadInt& g : gens) rows.push_back({s(g.a()), s(g.b())});
    HnfRows h = hnf_rows(std::move(rows));
    return from_hnf(h, den, D);
}

Lattice2 lattice_sum(const Lattice2& x, const Lattice2& y) {
    if (x.D() != y.D()) throw FieldMismatch("lattice_sum: mixed discriminants");
    return lattice_span(x.D(), {x.omega1(), x.omega2(), y.omega1(), y.omega2()});
}

Lattice2 lattice_intersect(const Lattice2& x, const Lattice2& y) {
    if (x.D() != y.D()) throw FieldMismatch("lattice_intersect: mixed discriminants");
    // (L ∩ M)* = L* + M* for the dot-product dual
    Lattice2 dx = lattice_from_rows(dual_rows(coord_rows(x)), x.D());
    Lattice2 dy = lattice_from_rows(dual_rows(coord_rows(y)), y.D());
    Lattice2 dsum = lattice_sum(dx, dy);
    return lattice_from_rows(dual_rows(coord_rows(dsum)), x.D());
}

HomLattice::HomLattice(QuadInt mu1, QuadInt mu2, Lattice2 source, Lattice2 target)
    : mu1_(std::move(mu1)), mu2_(std::move(mu2)),
      source_(std::move(source)), target_(std::move(target)) {}

bool HomLattice::contains(const QuadInt& lambda) const {
    // coordinates in the (mu1, mu2) basis, which is independent over Q
    Lattice2 basis(mu1_, mu2_);
    auto [u, v] = basis.coords_of(lambda);
    return is_integer(u) && is_integer(v);
}

Rational HomLattice::degree_of(const QuadInt& lambda) const {
    return lambda.norm() * source_.coord_det() / target_.coord_det();
}

QuadInt HomLattice::element(const Int& x, const Int& y) const {
    return mu1_ * Rational(x) + mu2_ * Rational(y);
}

namespace {

// lexicographic positivity used to pin basis signs deterministically
bool lex_positive(const QuadInt& x) {
    return x.a() > 0 || (x.a() == 0 && x.b() > 0);
}

// Lagrange-Gauss reduction: afterwards N(mu1) <= N(mu2) and
// |2 ip(mu1, mu2)| <= N(mu1), signs normalized
void reduce_basis(QuadInt& mu1, QuadInt& mu2) {
    if (mu2.norm() < mu1.norm()) std::swap(mu1, mu2);
    for (;;) {
        Int q = round_nearest(norm_pairing(mu1, mu2) / mu1.norm());
        mu2 = mu2 - mu1 * Rational(q);
        if (mu2.norm() >= mu1.norm()) break;
        std::swap(mu1, mu2);
    }
    if (!lex_positive(mu1)) mu1 = -mu1;
    Rational ip = norm_pairing(mu1, mu2);
    if (ip < 0 || (ip == 0 && !lex_positive(mu2))) mu2 = -mu2;
}

}  // namespace

HomLattice hom_lattice(const Lattice2& A, const Lattice2& B) {
    // lambda*A ⊆ B  iff  lambda in B/w1(A) and lambda in B/w2(A)
    Lattice2 l1 = B.scaled(A.omega1().inverse());
    Lattice2 l2 = B.scaled(A.omega2().inverse());
    Lattice2 H = lattice_intersect(l1, l2).canonical();
    QuadInt mu1 = H.omega1(), mu2 = H.omega2();
    reduce_basis(mu1, mu2);
    return HomLattice(mu1, mu2, A, B);
}

std::vector<QuadInt> enumerate_by_degree(const HomLattice& H, const Int& n) {
    long D = H.mu1().D();
    if (n < 0) throw std::invalid_argument("enumerate_by_degree: negative degree");
    if (n == 0) return {QuadInt::zero(D)};

    // positive-definite norm form of x*mu1 + y*mu2
    Rational A = H.mu1().norm();
    Rational C = H.mu2().norm();
    Rational Bf = Rational(2) * norm_pairing(H.mu1(), H.mu2());
    Rational disc = Rational(4) * A * C - Bf * Bf;  // > 0

    // target norm value: deg = N * det(source)/det(target)
    Rational t = Rational(n) * H.target().coord_det() / H.source().coord_det();

    std::vector<QuadInt> out;
    Int xmax = isqrt_floor(rational_floor(Rational(4) * C * t / disc));
    for (Int x = xmax; x >= -xmax; --x) {
        // C y^2 + (Bf x) y + (A x^2 - t) = 0
        Rational dy = Bf * Bf * Rational(x * x) - Rational(4) * C * (A * Rational(x * x) - t);
        if (dy < 0) continue;
        auto s = exact_sqrt(dy);
        if (!s) continue;
        Rational yplus = (-Bf * Rational(x) + *s) / (Rational(2) * C);
        Rational yminus = (-Bf * Rational(x) - *s) / (Rational(2) * C);
        if (is_integer(yplus)) out.push_back(H.element(x, numerator(yplus)));
        if (*s != 0 && is_integer(yminus)) out.push_back(H.element(x, numerator(yminus)));
    }
    return out;
}

}  // namespace kodbundle
