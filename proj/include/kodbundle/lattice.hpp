#pragma once

#include <utility>
#include <vector>

#include "kodbundle/exactnum.hpp"
#include "kodbundle/mat2.hpp"

namespace kodbundle {

struct NotASublattice : std::domain_error {
    using std::domain_error::domain_error;
};

// A full rank-2 lattice Z*w1 + Z*w2 inside K = Q(sqrt(-D)).  The basis is
// normalized on construction to positive orientation (the coordinate matrix
// in the Q-basis (1, sqrt(-D)) has positive determinant), so degree maps
// computed from coordinate matrices are positive.
class Lattice2 {
public:
    Lattice2(QuadInt w1, QuadInt w2);

    const QuadInt& omega1() const { return w1_; }
    const QuadInt& omega2() const { return w2_; }
    long D() const { return w1_.D(); }

    // true if the constructor had to swap the given basis to fix orientation
    bool orientation_swapped() const { return swapped_; }

    // determinant of the coordinate matrix in the basis (1, sqrt(-D)); > 0
    Rational coord_det() const;

    // coordinates (u, v) of x in this basis: x = u*w1 + v*w2
    std::pair<Rational, Rational> coords_of(const QuadInt& x) const;

    bool contains(const QuadInt& x) const;

    QuadInt from_coords(const Rational& u, const Rational& v) const;

    // the lattice factor * L (factor nonzero)
    Lattice2 scaled(const QuadInt& factor) const;

    // canonical basis: rows (a, b), (0, c) over a common denominator,
    // a, c > 0, 0 <= b < c; equal lattices have equal canonical bases
    Lattice2 canonical() const;

    bool same_lattice(const Lattice2& other) const;

private:
    QuadInt w1_, w2_;
    bool swapped_ = false;
};

// index of sub in sup; throws NotASublattice if sub is not contained in sup
Int lattice_index(const Lattice2& sub, const Lattice2& sup);

// coordinate matrix of sub's basis in sup's basis (columns are coordinates);
// integral with determinant = index when sub is a sublattice
IntMat2 sublattice_matrix(const Lattice2& sub, const Lattice2& sup);

// all sublattices of index d, in canonical form, ordered by their row form
// (a, b; 0, c): a ascending over divisors of d, then b ascending
std::vector<Lattice2> enumerate_sublattices(const Lattice2& L, const Int& d);

// lattice generated by the given elements of K; must have full rank 2
Lattice2 lattice_span(long D, const std::vector<QuadInt>& gens);

Lattice2 lattice_sum(const Lattice2& x, const Lattice2& y);
Lattice2 lattice_intersect(const Lattice2& x, const Lattice2& y);

// The lattice {lambda in K : lambda * source ⊆ target}, with the induced
// degree form deg(lambda) = N(lambda) * coord_det(source) / coord_det(target)
// (the lattice index of lambda*source in target).
class HomLattice {
public:
    HomLattice(QuadInt mu1, QuadInt mu2, Lattice2 source, Lattice2 target);

    int rank() const { return 2; }  // rank 0 cannot occur in the CM model
    const QuadInt& mu1() const { return mu1_; }
    const QuadInt& mu2() const { return mu2_; }
    const Lattice2& source() const { return source_; }
    const Lattice2& target() const { return target_; }

    bool contains(const QuadInt& lambda) const;

    // degree of the induced isogeny source -> target; extended to K by the
    // same formula (rational, 0 only for lambda = 0)
    Rational degree_of(const QuadInt& lambda) const;

    QuadInt element(const Int& x, const Int& y) const;  // x*mu1 + y*mu2

private:
    QuadInt mu1_, mu2_;
    Lattice2 source_, target_;
};

HomLattice hom_lattice(const Lattice2& A, const Lattice2& B);

// all lambda in H with degree exactly n; canonical order is descending
// lexicographic coordinates (x, y) in the (mu1, mu2) basis; n = 0 yields
// only the zero map
std::vector<QuadInt> enumerate_by_degree(const HomLattice& H, const Int& n);

std::vector<Int> divisors_of(const Int& d);

}  // namespace kodbundle
