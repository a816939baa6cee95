#pragma once

#include <optional>

#include "kodbundle/plan.hpp"

namespace kodbundle {

struct NegativeDiscriminant : std::domain_error {
    using std::domain_error::domain_error;
};
struct NoReducingCover : std::domain_error {
    using std::domain_error::domain_error;
};
struct NonIntegralSolution : std::domain_error {
    using std::domain_error::domain_error;
};
struct DiamondExhausted : std::domain_error {
    using std::domain_error::domain_error;
};

// For 1 < d < r, find an index-d sublattice B' of B with
// c1 * B' ⊆ d * E and form the reduced instance (r' = r/d, c1' = c1/d,
// c2' = c2 - (d-1) c1'^2 / 2) on the surface over B'.
struct GcdReduction {
    CurveModel cover_base;
    IntMat2 cover_index_matrix;
    ChernInstance reduced;
};
GcdReduction reduce_gcd(const ChernInstance& inst);

// Entry data of the coprime core case: cyclic isogeny delta: F -> E of
// degree R and the
// anti-isometry psi = delta[r]^{-1} ∘ c1hat[r].  Requires gcd(r, R) = 1,
// R >= 1 and a nonzero free part.
struct AntiIsometryData {
    CurveModel F;
    Isogeny delta;
    TorsionMatrix psi;
};
AntiIsometryData build_anti_isometry(const ChernInstance& inst);

// All (k, h) with 1 <= k < r, deg h = k(r-k) and h[r] ≡ ±k psi (mod r), in
// canonical order (k ascending, then the canonical Hom-lattice order), each h
// sign-normalized so that h[r] ≡ +k psi.  This torsion-level condition is
// necessary for a diamond but not sufficient; candidates still have to be
// discharged by an actual diamond.
std::vector<std::pair<Int, Isogeny>> reducibility_candidates(const TorsionMatrix& psi,
                                                             const CurveModel& B,
                                                             const CurveModel& F, const Int& r);

// First torsion-level candidate, or none.  Empty means the irreducible
// branch outright.
std::optional<std::pair<Int, Isogeny>> test_reducibility(const TorsionMatrix& psi,
                                                         const CurveModel& B, const CurveModel& F,
                                                         const Int& r);

// Reducible branch: factor h through quotients by subgroups of ker h of
// orders r-k
// and k, backtracking over subgroup choices until the summand classes solve
// exactly.  Throws DiamondExhausted if no choice validates.
struct DiamondSolve {
    DiamondConfigData diamond;
    QuadInt cprime;
    QuadInt cdblprime;
};
DiamondSolve build_diamond(const Int& k, const Isogeny& h, const Int& r, const KodairaSurface& X,
                           const NSClass& c1, const Isogeny& delta);

// Solve c'∘f1 = ((r-k) c1 + delta∘h)/r and c''∘f2 = (k c1 - delta∘h)/r, then
// divide out f1, f2 through their duals; all four divisions must be exact in
// the respective Hom-lattices, else NonIntegralSolution.
std::pair<QuadInt, QuadInt> solve_summand_classes(const DiamondConfigData& diamond,
                                                  const KodairaSurface& X, const NSClass& c1,
                                                  const Isogeny& delta);

// Torsion adjustment wrapper.
ConstructionPlan attach_torsion_twist(ConstructionPlan plan, const Int& target_torsion,
                                      const Int& modulus);

// The full decision procedure: throws NegativeDiscriminant when delta < 0,
// otherwise routes on d = gcd(r, R).
ConstructionPlan build_plan(const ChernInstance& inst);

}  // namespace kodbundle
