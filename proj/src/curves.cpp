#include "kodbundle/curves.hpp"

#include <algorithm>
#include <set>

namespace kodbundle {

Isogeny::Isogeny(QuadInt multiplier, CurveModel source, CurveModel target)
    : mult_(std::move(multiplier)), source_(std::move(source)), target_(std::move(target)) {
    if (mult_.is_zero()) throw std::invalid_argument("Isogeny: zero multiplier");
    Lattice2 image = source_.lattice.scaled(mult_);
    auto [u1, v1] = target_.lattice.coords_of(image.omega1());
    auto [u2, v2] = target_.lattice.coords_of(image.omega2());
    if (!is_integer(u1) || !is_integer(v1) || !is_integer(u2) || !is_integer(v2))
        throw std::invalid_argument(
            "Isogeny: multiplier does not map the source lattice into the target lattice");
}

Isogeny identity_isogeny(const CurveModel& E) {
    return Isogeny(QuadInt::one(E.lattice.D()), E, E);
}

IntMat2 rational_representation(const Isogeny& phi) {
    const Lattice2& T = phi.target().lattice;
    auto [u1, v1] = T.coords_of(phi.source().lattice.omega1() * phi.multiplier());
    auto [u2, v2] = T.coords_of(phi.source().lattice.omega2() * phi.multiplier());
    return {numerator(u1), numerator(u2), numerator(v1), numerator(v2)};
}

Int isogeny_degree(const Isogeny& phi) {
    return lattice_index(phi.source().lattice.scaled(phi.multiplier()), phi.target().lattice);
}

Isogeny dual_isogeny(const Isogeny& phi) {
    Int n = isogeny_degree(phi);
    // n / multiplier maps target into source: n kills target/multiplier*source
    QuadInt hat = QuadInt::from_rational(Rational(n), phi.multiplier().D()) / phi.multiplier();
    return Isogeny(hat, phi.target(), phi.source());
}

Isogeny compose(const Isogeny& outer, const Isogeny& inner) {
    if (!same_curve(inner.target(), outer.source()))
        throw std::invalid_argument("compose: inner target and outer source differ");
    return Isogeny(outer.multiplier() * inner.multiplier(), inner.source(), outer.target());
}

TorsionMatrix::TorsionMatrix(Int modulus, IntMat2 entries) : r(std::move(modulus)), m(entries) {
    if (r < 2) throw std::invalid_argument("TorsionMatrix: modulus must be >= 2");
    m.a = mod_floor(m.a, r);
    m.b = mod_floor(m.b, r);
    m.c = mod_floor(m.c, r);
    m.d = mod_floor(m.d, r);
}

TorsionMatrix TorsionMatrix::operator*(const TorsionMatrix& o) const {
    if (r != o.r) throw std::invalid_argument("TorsionMatrix: mixed moduli");
    return TorsionMatrix(r, m * o.m);
}

bool TorsionMatrix::invertible() const {
    return boost::multiprecision::gcd(det_mod(), r) == 1;
}

namespace {
// inverse of a mod r via extended Euclid; requires gcd(a, r) = 1
Int mod_inverse(const Int& a, const Int& r) {
    Int old_r = mod_floor(a, r), cur = r;
    Int old_s = 1, s = 0;
    while (cur != 0) {
        Int q = old_r / cur;
        Int tmp = old_r - q * cur;
        old_r = cur;
        cur = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw NotCoprime("mod_inverse: element not invertible");
    return mod_floor(old_s, r);
}
}  // namespace

TorsionMatrix TorsionMatrix::inverse() const {
    Int dt = det_mod();
    if (boost::multiprecision::gcd(dt, r) != 1)
        throw NotCoprime("TorsionMatrix: determinant not invertible mod r");
    Int dinv = mod_inverse(dt, r);
    IntMat2 adj{m.d, -m.b, -m.c, m.a};
    return TorsionMatrix(r, adj * dinv);
}

TorsionMatrix TorsionMatrix::scaled(const Int& k) const {
    return TorsionMatrix(r, m * mod_floor(k, r));
}

TorsionMatrix torsion_matrix(const Isogeny& phi, const Int& r) {
    return TorsionMatrix(r, rational_representation(phi));
}

WeilType weil_type(const TorsionMatrix& psi) {
    Int dt = psi.det_mod();
    if (dt == psi.r - 1) return WeilType::AntiIsometry;
    if (dt == 1) return WeilType::Isometry;
    return WeilType::Neither;
}

const char* weil_type_name(WeilType t) {
    switch (t) {
        case WeilType::Isometry: return "Isometry";
        case WeilType::AntiIsometry: return "AntiIsometry";
        default: return "Neither";
    }
}

std::pair<CurveModel, Isogeny> cyclic_isogeny(const CurveModel& E, const Int& R) {
    if (R < 1) throw std::invalid_argument("cyclic_isogeny: degree must be >= 1");
    CurveModel F{Lattice2(E.lattice.omega1(), E.lattice.omega2() * Rational(R)),
                 E.label + "_cyc" + R.str()};
    Isogeny delta(QuadInt::one(E.lattice.D()), F, E);
    return {F, delta};
}

SubgroupSpec SubgroupSpec::from_generators(const Int& n,
                                           const std::vector<std::pair<Int, Int>>& gens) {
    if (n < 1) throw std::invalid_argument("SubgroupSpec: modulus must be >= 1");
    std::set<std::pair<Int, Int>> closure;
    closure.insert({Int(0), Int(0)});
    // breadth-first closure under addition of generators
    std::vector<std::pair<Int, Int>> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
        std::vector<std::pair<Int, Int>> next;
        for (const auto& e : frontier) {
            for (const auto& g : gens) {
                std::pair<Int, Int> s{mod_floor(e.first + g.first, n),
                                      mod_floor(e.second + g.second, n)};
                if (closure.insert(s).second) next.push_back(s);
            }
        }
        frontier = std::move(next);
    }
    return SubgroupSpec{n, {closure.begin(), closure.end()}};
}

bool SubgroupSpec::is_closed() const {
    std::set<std::pair<Int, Int>> set(elements.begin(), elements.end());
    if (set.size() != elements.size()) return false;
    if (!set.count({Int(0), Int(0)})) return false;
    for (const auto& e : set)
        if (mod_floor(e.first, modulus) != e.first || mod_floor(e.second, modulus) != e.second)
            return false;
    for (const auto& x : set)
        for (const auto& y : set)
            if (!set.count({mod_floor(x.first + y.first, modulus),
                            mod_floor(x.second + y.second, modulus)}))
                return false;
    return true;
}

std::pair<CurveModel, Isogeny> quotient_curve(const CurveModel& B, const SubgroupSpec& G) {
    if (!G.is_closed())
        throw NotASubgroup("quotient_curve: generators do not close under the group law");
    const Rational n(G.modulus);
    std::vector<QuadInt> gens{B.lattice.omega1(), B.lattice.omega2()};
    for (const auto& e : G.elements) {
        if (e.first == 0 && e.second == 0) continue;
        gens.push_back((B.lattice.omega1() * Rational(e.first) +
                        B.lattice.omega2() * Rational(e.second)) / n);
    }
    CurveModel E1{lattice_span(B.lattice.D(), gens), B.label + "_q"};
    Isogeny u(QuadInt::one(B.lattice.D()), B, E1);
    if (isogeny_degree(u) != G.order())
        throw NotASubgroup("quotient_curve: element list is not the full subgroup");
    return {E1, u};
}

}  // namespace kodbundle
