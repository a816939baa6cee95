#include "kodbundle/constructor.hpp"

namespace kodbundle {

GcdReduction reduce_gcd(const ChernInstance& inst) {
    Int R = big_R(inst);
    Int d = boost::multiprecision::gcd(inst.r, abs(R));
    if (d <= 1 || d >= inst.r)
        throw std::invalid_argument("reduce_gcd: requires 1 < gcd(r, R) < r");

    const KodairaSurface& X = inst.surface;
    const QuadInt& lam = inst.c1.free;
    Lattice2 scaled_fiber = X.fiber.lattice.scaled(QuadInt::from_rational(Rational(d), lam.D()));

    for (const Lattice2& sub : enumerate_sublattices(X.base.lattice, d)) {
        Lattice2 image = sub.scaled(lam);
        auto [u1, v1] = scaled_fiber.coords_of(image.omega1());
        auto [u2, v2] = scaled_fiber.coords_of(image.omega2());
        if (!is_integer(u1) || !is_integer(v1) || !is_integer(u2) || !is_integer(v2)) continue;

        CurveModel cover_base{sub, X.base.label + "_cov" + d.str()};
        KodairaSurface reduced_surface{cover_base, X.fiber, X.torsion_order};
        NSClass c1p{lam / Rational(d), inst.c1.torsion};
        Int c1p_sq = self_intersection(reduced_surface, c1p);
        Int rp = inst.r / d;
        Int c2p = inst.c2 - (d - 1) * (c1p_sq / 2);
        ChernInstance reduced{reduced_surface, rp, c1p, c2p};

        // postconditions: R' = R/d = r'^2 delta' and gcd(r', R') = 1
        Int Rp = big_R(reduced);
        if (Rp * d != R || boost::multiprecision::gcd(rp, abs(Rp)) != 1)
            throw std::logic_error("reduce_gcd: reduction identities failed");

        return GcdReduction{cover_base, sublattice_matrix(sub, X.base.lattice), reduced};
    }
    throw NoReducingCover("reduce_gcd: no index-d sublattice with c1 * B' ⊆ d * E");
}

AntiIsometryData build_anti_isometry(const ChernInstance& inst) {
    Int R = big_R(inst);
    if (boost::multiprecision::gcd(inst.r, abs(R)) != 1)
        throw NotCoprime("build_anti_isometry: gcd(r, R) != 1");
    if (R < 1 || inst.c1.free.is_zero())
        throw std::invalid_argument("build_anti_isometry: needs R >= 1 and nonzero c1 free part");

    auto [F, delta] = cyclic_isogeny(inst.surface.fiber, R);
    Isogeny c1hat(inst.c1.free, inst.surface.base, inst.surface.fiber);
    TorsionMatrix td = torsion_matrix(delta, inst.r);
    TorsionMatrix tc = torsion_matrix(c1hat, inst.r);
    if (!td.invertible() || !tc.invertible())
        throw NotCoprime("build_anti_isometry: torsion matrix not invertible mod r");
    TorsionMatrix psi = td.inverse() * tc;
    if (weil_type(psi) != WeilType::AntiIsometry)
        throw std::logic_error("build_anti_isometry: psi is not an anti-isometry");
    return AntiIsometryData{F, delta, psi};
}

std::vector<std::pair<Int, Isogeny>> reducibility_candidates(const TorsionMatrix& psi,
                                                             const CurveModel& B,
                                                             const CurveModel& F, const Int& r) {
    if (weil_type(psi) != WeilType::AntiIsometry)
        throw std::invalid_argument("reducibility search: psi must be an anti-isometry");
    std::vector<std::pair<Int, Isogeny>> out;
    HomLattice H = hom_lattice(B.lattice, F.lattice);
    for (Int k = 1; k < r; ++k) {
        for (const QuadInt& lambda : enumerate_by_degree(H, k * (r - k))) {
            if (lambda.is_zero()) continue;
            TorsionMatrix th = torsion_matrix(Isogeny(lambda, B, F), r);
            if (th == psi.scaled(k)) {
                out.emplace_back(k, Isogeny(lambda, B, F));
            } else if (th == (-psi).scaled(k)) {
                // normalize the sign so that h[r] ≡ +k psi; this makes the
                // summand-class divisions by r exact on the torsion level
                out.emplace_back(k, Isogeny(-lambda, B, F));
            }
        }
    }
    return out;
}

std::optional<std::pair<Int, Isogeny>> test_reducibility(const TorsionMatrix& psi,
                                                         const CurveModel& B, const CurveModel& F,
                                                         const Int& r) {
    auto candidates = reducibility_candidates(psi, B, F, r);
    if (candidates.empty()) return std::nullopt;
    return candidates.front();
}

namespace {

// intermediate lattices B ⊆ L ⊆ M with [L : B] = m, i.e. subgroups of
// M/B of order m
std::vector<Lattice2> intermediate_lattices(const Lattice2& B, const Lattice2& M, const Int& m) {
    Int total = lattice_index(B, M);
    if (total % m != 0) return {};
    std::vector<Lattice2> out;
    for (const Lattice2& L : enumerate_sublattices(M, total / m)) {
        auto [u1, v1] = L.coords_of(B.omega1());
        auto [u2, v2] = L.coords_of(B.omega2());
        if (is_integer(u1) && is_integer(v1) && is_integer(u2) && is_integer(v2))
            out.push_back(L);
    }
    return out;
}

}  // namespace

std::pair<QuadInt, QuadInt> solve_summand_classes(const DiamondConfigData& diamond,
                                                  const KodairaSurface& X, const NSClass& c1,
                                                  const Isogeny& delta) {
    const Int& k = diamond.k;
    Isogeny h(diamond.h);
    Isogeny f1(diamond.f1), f2(diamond.f2);
    Int r = k + isogeny_degree(f1);  // deg f1 = r - k

    QuadInt delta_h = delta.multiplier() * h.multiplier();
    QuadInt num1 = c1.free * Rational(r - k) + delta_h;
    QuadInt num2 = c1.free * Rational(k) - delta_h;
    QuadInt mu1 = num1 / Rational(r);  // class of c'∘f1
    QuadInt mu2 = num2 / Rational(r);  // class of c''∘f2

    HomLattice hom_BE = hom_lattice(X.base.lattice, X.fiber.lattice);
    if (!mu1.is_zero() && !hom_BE.contains(mu1))
        throw NonIntegralSolution("solve_summand_classes: c'∘f1 not divisible by r");
    if (!mu2.is_zero() && !hom_BE.contains(mu2))
        throw NonIntegralSolution("solve_summand_classes: c''∘f2 not divisible by r");

    // divide out f1 and f2 through their duals: c' = (c'∘f1)∘dual(f1)/(r-k)
    QuadInt cprime = mu1 * dual_isogeny(f1).multiplier() / Rational(r - k);
    QuadInt cdblprime = mu2 * dual_isogeny(f2).multiplier() / Rational(k);

    if (!cprime.is_zero() &&
        !hom_lattice(diamond.E1.lattice, X.fiber.lattice).contains(cprime))
        throw NonIntegralSolution("solve_summand_classes: c' does not descend to E1");
    if (!cdblprime.is_zero() &&
        !hom_lattice(diamond.E2.lattice, X.fiber.lattice).contains(cdblprime))
        throw NonIntegralSolution("solve_summand_classes: c'' does not descend to E2");

    return {cprime, cdblprime};
}

DiamondSolve build_diamond(const Int& k, const Isogeny& h, const Int& r, const KodairaSurface& X,
                           const NSClass& c1, const Isogeny& delta) {
    Int deg_h = isogeny_degree(h);
    if (deg_h != k * (r - k))
        throw std::invalid_argument("build_diamond: deg h must equal k(r-k)");

    const Lattice2& LB = h.source().lattice;
    const Lattice2& LF = h.target().lattice;
    // ker h = ((1/h) F) / B
    Lattice2 preimage = LF.scaled(h.multiplier().inverse());

    std::vector<Lattice2> side1 = intermediate_lattices(LB, preimage, r - k);
    std::vector<Lattice2> side2 = intermediate_lattices(LB, preimage, k);

    for (const Lattice2& L1 : side1) {
        for (const Lattice2& L2 : side2) {
            CurveModel E1{L1, "E1"};
            CurveModel E2{L2, "E2"};
            QuadInt one = QuadInt::one(LB.D());
            DiamondConfigData diamond{
                k,
                E1,
                E2,
                IsogenyData{one, h.source(), E1},
                IsogenyData{one, h.source(), E2},
                IsogenyData{h.multiplier(), E1, h.target()},
                IsogenyData{h.multiplier(), E2, h.target()},
                h.data()};
            try {
                auto [cp, cpp] = solve_summand_classes(diamond, X, c1, delta);
                return DiamondSolve{diamond, cp, cpp};
            } catch (const NonIntegralSolution&) {
                continue;  // backtrack over the subgroup choice
            }
        }
    }
    throw DiamondExhausted("build_diamond: no subgroup choice yields exact summand classes");
}

ConstructionPlan attach_torsion_twist(ConstructionPlan plan, const Int& target_torsion,
                                      const Int& modulus) {
    return ConstructionPlan{
        make_node(TorsionTwistNode{target_torsion, modulus, true, std::move(plan.root)})};
}

ConstructionPlan build_plan(const ChernInstance& inst) {
    validate_instance(inst);
    Rational delta = delta_of(inst);
    if (delta < 0)
        throw NegativeDiscriminant("build_plan: delta = " + delta.str() + " < 0, no bundle exists");

    Int R = big_R(inst);
    Int d = boost::multiprecision::gcd(inst.r, R);  // R >= 0 here; gcd(r, 0) = r

    if (d == inst.r) {
        return ConstructionPlan{make_node(DeformationCaseNode{inst.r, R, d})};
    }

    if (d > 1) {
        GcdReduction red = reduce_gcd(inst);
        ConstructionPlan child = build_plan(red.reduced);
        return ConstructionPlan{make_node(GcdReduceNode{
            d, red.cover_base, red.cover_index_matrix, red.reduced, std::move(child.root)})};
    }

    // d = 1, the coprime core case.  Torsion-level reducibility candidates are only
    // accepted when they discharge into an actual diamond; a candidate with
    // no valid subgroup choice is a false positive of the torsion test, and
    // exhausting every candidate certifies that no diamond splitting exists,
    // which is exactly the irreducible case.
    AntiIsometryData ai = build_anti_isometry(inst);
    PlanPtr node;
    for (const auto& [k, h] : reducibility_candidates(ai.psi, inst.surface.base, ai.F, inst.r)) {
        try {
            DiamondSolve solve = build_diamond(k, h, inst.r, inst.surface, inst.c1, ai.delta);
            node = make_node(DiamondSumNode{solve.diamond, solve.cprime, solve.cdblprime});
            break;
        } catch (const DiamondExhausted&) {
            continue;
        }
    }
    if (!node) {
        Isogeny c1hat(inst.c1.free, inst.surface.base, inst.surface.fiber);
        node = make_node(IrreducibleGenus2Node{ai.F, ai.delta.data(), ai.psi, c1hat.data()});
    }
    return attach_torsion_twist(ConstructionPlan{std::move(node)}, inst.c1.torsion,
                                inst.surface.torsion_order);
}

}  // namespace kodbundle
