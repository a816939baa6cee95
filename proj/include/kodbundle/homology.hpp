#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kodbundle/curves.hpp"

namespace kodbundle {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NonIntegralDegree : std::domain_error {
    using std::domain_error::domain_error;
};

// Matrix of a push-forward H_1(curve of genus g) -> H_1(elliptic curve) in
// symplectic bases: 2 rows, columns ordered a_1..a_g, b_1..b_g.
class PushforwardMatrix {
public:
    PushforwardMatrix(int genus, std::vector<Int> entries);  // row-major, 2 x 2g

    int genus() const { return genus_; }
    const Int& at(int row, int col) const { return e_[static_cast<size_t>(row * 2 * genus_ + col)]; }

private:
    int genus_;
    std::vector<Int> e_;
};

// degree of the covering: sum over i of det [[a_1i, b_1i], [a_2i, b_2i]];
// for genus 1 this is the determinant of the rational representation
Int covering_degree(const PushforwardMatrix& P);

// The product abelian surface B x F with its split intersection lattice:
// classes a*e_B + b*e_F + graph-part(hom), hom in Hom(B, F).
struct ProductSurface {
    CurveModel left;   // B, class e_B = B x {pt}
    CurveModel right;  // F, class e_F = {pt} x F
};

inline bool same_surface(const ProductSurface& x, const ProductSurface& y) {
    return same_curve(x.left, y.left) && same_curve(x.right, y.right);
}

struct ProductSurfaceClass {
    ProductSurface surface;
    Int a;        // coefficient of e_B
    Int b;        // coefficient of e_F
    QuadInt hom;  // primitive hom part, an element of Hom(left, right) (0 allowed)
};

ProductSurfaceClass make_class(const ProductSurface& s, Int a, Int b, QuadInt hom);

// x.a*y.b + y.a*x.b - <hom_x, hom_y> where <l, m> = deg(l+m) - deg l - deg m
// and deg is the isogeny degree left -> right extended by deg 0 = 0;
// symmetric and bilinear
Int product_intersection(const ProductSurfaceClass& x, const ProductSurfaceClass& y);

// class of a fiber of (x, y) -> alpha(x) - beta(y):
// (deg beta) e_B + (deg alpha) e_F + graph(-(dual beta)∘alpha);
// self-intersection 0.  alpha: B -> E, beta: F -> E or absent (zero map).
ProductSurfaceClass fiber_class(const ProductSurface& s, const Isogeny& alpha,
                                const std::optional<Isogeny>& beta);

// Both sides of the split-degree identity
//   r * deg(c∘j) = deg(c∘f^*) + deg(c∘g^*),
// computed through the product-surface intersection oracle on the left and
// directly on the right.  Throws NonIntegralDegree when r does not divide
// (c1deg + Rdeg), i.e. deg(c∘j) would not be an integer.
std::pair<Rational, Rational> split_degree_check(const Int& c1deg, const Int& Rdeg, const Int& r);

}  // namespace kodbundle
