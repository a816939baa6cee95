#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kodbundle/exactnum.hpp"

namespace kodbundle {

// Row-major 2x2 matrix [[a, b], [c, d]] over an exact scalar.
template <class T>
struct Mat2 {
    T a, b, c, d;

    static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }
    static Mat2 zero() { return {T(0), T(0), T(0), T(0)}; }

    T det() const { return a * d - b * c; }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2 operator*(const T& s) const { return {a * s, b * s, c * s, d * s}; }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }

    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    bool operator!=(const Mat2& o) const { return !(*this == o); }

    // column j as a pair (top, bottom)
    std::pair<T, T> col(int j) const {
        return j == 0 ? std::make_pair(a, c) : std::make_pair(b, d);
    }
};

using IntMat2 = Mat2<Int>;
using RatMat2 = Mat2<Rational>;

inline RatMat2 inverse(const RatMat2& m) {
    Rational dt = m.det();
    if (dt == 0) throw std::domain_error("Mat2: inverse of singular matrix");
    return {m.d / dt, -m.b / dt, -m.c / dt, m.a / dt};
}

inline RatMat2 to_rational(const IntMat2& m) {
    return {Rational(m.a), Rational(m.b), Rational(m.c), Rational(m.d)};
}

// Smith normal form invariants (d1, d2) of a 2x2 integer matrix:
// d1 | d2, d1*d2 = |det|.  For 2x2 matrices d1 is the gcd of the entries
// and d2 follows from the determinant (0 for singular matrices).
inline std::pair<Int, Int> smith_form(const IntMat2& m) {
    using boost::multiprecision::gcd;
    Int d1 = gcd(gcd(abs(m.a), abs(m.b)), gcd(abs(m.c), abs(m.d)));
    Int dt = abs(m.det());
    if (d1 == 0) return {Int(0), Int(0)};
    return {d1, dt / d1};
}

// Canonical row form of a full-rank lattice in Z^2 given by generating rows:
// basis rows (a, b), (0, c) with a > 0, c > 0, 0 <= b < c.
struct HnfRows {
    Int a, b, c;
};

inline HnfRows hnf_rows(std::vector<std::array<Int, 2>> rows) {
    // Euclid on the first coordinate until a single pivot row remains.
    for (;;) {
        int pivot = -1;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][0] == 0) continue;
            if (pivot < 0 || abs(rows[i][0]) < abs(rows[pivot][0])) pivot = static_cast<int>(i);
        }
        if (pivot < 0) throw std::domain_error("hnf_rows: rank-deficient input (zero first column)");
        bool reduced_any = false;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i) == pivot || rows[i][0] == 0) continue;
            Int q = floor_div(rows[i][0], rows[pivot][0]);
            rows[i][0] -= q * rows[pivot][0];
            rows[i][1] -= q * rows[pivot][1];
            reduced_any = true;
        }
        if (!reduced_any) {
            // pivot is the unique row with nonzero first coordinate
            if (rows[pivot][0] < 0) {
                rows[pivot][0] = -rows[pivot][0];
                rows[pivot][1] = -rows[pivot][1];
            }
            Int a = rows[pivot][0];
            Int y = rows[pivot][1];
            Int c = 0;
            for (size_t i = 0; i < rows.size(); ++i) {
                if (static_cast<int>(i) == pivot) continue;
                c = boost::multiprecision::gcd(c, abs(rows[i][1]));
            }
            if (c == 0) throw std::domain_error("hnf_rows: rank-deficient input");
            Int b = mod_floor(y, c);
            return {a, b, c};
        }
    }
}

}  // namespace kodbundle
