#pragma once

#include <string>
#include <utility>

#include "kodbundle/homology.hpp"

namespace kodbundle {

struct InconsistentInvariants : std::logic_error {
    using std::logic_error::logic_error;
};

// A primary Kodaira surface X -> B with fiber E, modeled by the base and
// fiber curves and the order n of the fiber class in Tors NS(X).  Topological
// non-triviality of the bundle is an assumption carried by the type.
struct KodairaSurface {
    CurveModel base;   // B
    CurveModel fiber;  // E
    Int torsion_order; // n >= 1
};

void validate_surface(const KodairaSurface& X);

// Neron-Severi class: free part in Hom(B, E) (0 allowed) plus a torsion
// residue mod n.
struct NSClass {
    QuadInt free;
    Int torsion;
};

// Topological class in genus-1 coordinates (a_11, a_21, b_11, b_21) plus a
// torsion residue mod n.
struct TopClass {
    Int a11, a21, b11, b21;
    Int torsion;
};

struct ChernInstance {
    KodairaSurface surface;
    Int r;       // >= 2
    NSClass c1;
    Int c2;
};

void validate_instance(const ChernInstance& inst);

// degree of the free part as an isogeny B -> E; 0 for free = 0
Int ns_degree(const KodairaSurface& X, const NSClass& c);

// c^2 = -2 deg(c); torsion contributes nothing
Int self_intersection(const KodairaSurface& X, const NSClass& c);

// c^2 = -2 (a_11 b_21 - b_11 a_21) in genus-1 coordinates
Int top_self_intersection(const TopClass& c);

// rational representation of the free part reshaped to TopClass coordinates,
// torsion preserved
TopClass to_top_class(const KodairaSurface& X, const NSClass& c);

// push-forward along a covering with pull-back matrix fstar on H_1:
// matrix of the result is (matrix of c) * fstar; torsion preserved (the class
// of a fiber pushes forward to the class of a fiber)
TopClass pushforward_class(const TopClass& c, const IntMat2& fstar);

enum class Region { NoBundle, NonFiltrableOnly, FiltrableRange };
const char* region_name(Region r);

struct InvariantReport {
    Rational delta;   // (1/r)(c2 - (r-1)/(2r) c1^2)
    Int Rval;         // r^2 * delta = r c2 - (r-1) c1^2 / 2
    Int d;            // gcd(r, |Rval|)
    Rational mbound;  // m(r, c1)
    Region region;
};

Rational delta_of(const ChernInstance& inst);
Int big_R(const ChernInstance& inst);

InvariantReport invariants(const ChernInstance& inst);

// The filtrable-existence threshold
//   m(r, c1) = (1/r) min { sum_i deg(c1/r - mu_i) : mu_i in Hom(B, E),
//                          sum_i mu_i = c1 },
// an exact constrained minimum of a positive-definite form over lattice
// decompositions, computed by branch and bound; torsion is irrelevant.
Rational m_bound(const KodairaSurface& X, const Int& r, const NSClass& c1);

// Line-bundle class data on the covering surface, presented by its two
// legs: the map (x, y) -> c1hat(x) - delta(y) on B x F, descending to the
// quotient.
struct CoveringClassData {
    Isogeny c1hat;  // B -> E
    Isogeny delta;  // F -> E
};

struct PushforwardInvariants {
    Int rank;
    TopClass c1;
    Rational delta;
};

// rank, first Chern class and discriminant of the push-forward of a line
// bundle with class L down a degree-r covering; the discriminant is computed
// two ways (intersection route and degree route) and must agree exactly
PushforwardInvariants pushforward_bundle_invariants(const CoveringClassData& L, const Int& r,
                                                    const KodairaSurface& X);

// add m fiber classes: torsion shifts by m mod n, free part / delta / c2
// unchanged
TopClass twist_by_fiber(const TopClass& c1, const Int& m, const Int& torsion_order);

}  // namespace kodbundle
