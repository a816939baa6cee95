#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kodbundle/lattice.hpp"

namespace kodbundle {

struct NotASubgroup : std::domain_error {
    using std::domain_error::domain_error;
};
struct NotCoprime : std::domain_error {
    using std::domain_error::domain_error;
};

// An elliptic curve C/Lattice in the CM lattice model.
struct CurveModel {
    Lattice2 lattice;
    std::string label;
};

inline bool same_curve(const CurveModel& x, const CurveModel& y) {
    return x.lattice.same_lattice(y.lattice);
}

// Unvalidated isogeny data, as carried inside serialized plans.  The
// verifier checks the containment invariant itself; everything else goes
// through Isogeny, whose constructor enforces it.
struct IsogenyData {
    QuadInt multiplier;
    CurveModel source;
    CurveModel target;
};

// lambda * source.lattice ⊆ target.lattice, lambda nonzero (checked)
class Isogeny {
public:
    Isogeny(QuadInt multiplier, CurveModel source, CurveModel target);
    explicit Isogeny(const IsogenyData& d) : Isogeny(d.multiplier, d.source, d.target) {}

    const QuadInt& multiplier() const { return mult_; }
    const CurveModel& source() const { return source_; }
    const CurveModel& target() const { return target_; }

    IsogenyData data() const { return {mult_, source_, target_}; }

private:
    QuadInt mult_;
    CurveModel source_, target_;
};

// identity map on a curve
Isogeny identity_isogeny(const CurveModel& E);

// integer matrix of the isogeny on H_1 in the two lattice bases; columns are
// the coordinates of multiplier*omega_i(source) in the target basis, and the
// determinant equals the degree (orientation is normalized)
IntMat2 rational_representation(const Isogeny& phi);

Int isogeny_degree(const Isogeny& phi);

// phi_hat with phi∘phi_hat = [deg phi] on target and phi_hat∘phi = [deg phi]
// on source; multiplier deg(phi)/multiplier(phi)
Isogeny dual_isogeny(const Isogeny& phi);

// outer ∘ inner; requires inner.target == outer.source as lattices
Isogeny compose(const Isogeny& outer, const Isogeny& inner);

// 2x2 matrix over Z/r, entries stored in [0, r)
struct TorsionMatrix {
    Int r;
    IntMat2 m;

    TorsionMatrix(Int modulus, IntMat2 entries);

    Int det_mod() const { return mod_floor(m.det(), r); }
    TorsionMatrix operator*(const TorsionMatrix& o) const;
    TorsionMatrix inverse() const;  // throws NotCoprime if det not invertible
    TorsionMatrix scaled(const Int& k) const;
    TorsionMatrix operator-() const { return scaled(r - 1); }

    bool operator==(const TorsionMatrix& o) const { return r == o.r && m == o.m; }
    bool operator!=(const TorsionMatrix& o) const { return !(*this == o); }

    bool invertible() const;
};

// matrix of the induced map source[r] -> target[r] in the bases
// ((1/r)w1, (1/r)w2) of each curve
TorsionMatrix torsion_matrix(const Isogeny& phi, const Int& r);

enum class WeilType { Isometry, AntiIsometry, Neither };

// determinant pairing model of the Weil pairing: AntiIsometry iff
// det ≡ -1 (mod r), Isometry iff det ≡ +1; for r = 2 both hold and
// AntiIsometry is reported
WeilType weil_type(const TorsionMatrix& psi);
const char* weil_type_name(WeilType t);

// F with lattice Z*w1 + Z*(R*w2) inside E's lattice, delta: F -> E induced by
// multiplier 1; kernel is cyclic of order R
std::pair<CurveModel, Isogeny> cyclic_isogeny(const CurveModel& E, const Int& R);

// A finite subgroup of B[n] given by its full element list, coordinates taken
// in the basis ((1/n)w1, (1/n)w2) and reduced mod n.
struct SubgroupSpec {
    Int modulus;                                 // n
    std::vector<std::pair<Int, Int>> elements;   // includes (0, 0)

    static SubgroupSpec from_generators(const Int& n,
                                        const std::vector<std::pair<Int, Int>>& gens);
    bool is_closed() const;
    Int order() const { return Int(elements.size()); }
};

// E1 = B/G with u: B -> E1 induced by multiplier 1; ker u = G, deg u = |G|;
// throws NotASubgroup if the element list is not a subgroup of B[n]
std::pair<CurveModel, Isogeny> quotient_curve(const CurveModel& B, const SubgroupSpec& G);

}  // namespace kodbundle
