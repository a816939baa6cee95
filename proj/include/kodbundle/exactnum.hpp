#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace kodbundle {

// All arithmetic in this project is exact.  Int is an arbitrary-precision
// integer, Rational an arbitrary-precision fraction kept in lowest terms
// with positive denominator.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Two elements of Q(sqrt(-D)) with different D met in one operation.
struct FieldMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("make_rational: zero denominator");
    return Rational(num) / Rational(den);
}

inline Int floor_div(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("floor_div: zero divisor");
    Int q = a / b;           // truncates toward zero
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int mod_floor(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

inline Int rational_floor(const Rational& q) {
    return floor_div(numerator(q), denominator(q));
}

inline Int round_nearest(const Rational& q) {
    return rational_floor(q + make_rational(1, 2));
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// floor(sqrt(n)) for n >= 0
inline Int isqrt_floor(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt_floor: negative argument");
    return boost::multiprecision::sqrt(n);
}

inline std::optional<Int> exact_isqrt(const Int& n) {
    if (n < 0) return std::nullopt;
    Int s = isqrt_floor(n);
    if (s * s == n) return s;
    return std::nullopt;
}

// exact square root of a non-negative rational, if it exists in Q
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    auto sn = exact_isqrt(numerator(q));
    auto sd = exact_isqrt(denominator(q));
    if (!sn || !sd) return std::nullopt;
    return make_rational(*sn, *sd);
}

inline bool is_squarefree(long n) {
    if (n <= 0) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

inline void validate_discriminant(long D) {
    if (!is_squarefree(D))
        throw std::invalid_argument("discriminant D must be a positive squarefree integer, got " +
                                    std::to_string(D));
}

// Element a + b*sqrt(-D) of the imaginary quadratic field K = Q(sqrt(-D)).
// D is fixed per value; operations on mixed discriminants throw.
class QuadInt {
public:
    QuadInt(Rational a, Rational b, long D) : a_(std::move(a)), b_(std::move(b)), d_(D) {}

    static QuadInt from_rational(const Rational& a, long D) { return QuadInt(a, Rational(0), D); }
    static QuadInt zero(long D) { return from_rational(Rational(0), D); }
    static QuadInt one(long D) { return from_rational(Rational(1), D); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    long D() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    QuadInt operator-() const { return QuadInt(-a_, -b_, d_); }

    QuadInt operator+(const QuadInt& o) const {
        check(o);
        return QuadInt(a_ + o.a_, b_ + o.b_, d_);
    }
    QuadInt operator-(const QuadInt& o) const {
        check(o);
        return QuadInt(a_ - o.a_, b_ - o.b_, d_);
    }
    QuadInt operator*(const QuadInt& o) const {
        check(o);
        // (a + b w)(a' + b' w) with w^2 = -D
        return QuadInt(a_ * o.a_ - Rational(d_) * b_ * o.b_, a_ * o.b_ + b_ * o.a_, d_);
    }
    QuadInt operator*(const Rational& s) const { return QuadInt(a_ * s, b_ * s, d_); }
    QuadInt operator/(const Rational& s) const {
        if (s == 0) throw std::domain_error("QuadInt: division by zero");
        return QuadInt(a_ / s, b_ / s, d_);
    }
    QuadInt operator/(const QuadInt& o) const { return *this * o.inverse(); }

    QuadInt conj() const { return QuadInt(a_, -b_, d_); }

    // a^2 + D b^2; non-negative, zero iff the element is zero
    Rational norm() const { return a_ * a_ + Rational(d_) * b_ * b_; }

    QuadInt inverse() const {
        if (is_zero()) throw std::domain_error("QuadInt: inverse of zero");
        Rational n = norm();
        return QuadInt(a_ / n, -b_ / n, d_);
    }

    bool operator==(const QuadInt& o) const { return d_ == o.d_ && a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const QuadInt& o) const { return !(*this == o); }

    std::string str() const {
        std::ostringstream os;
        if (b_ == 0) {
            os << a_;
        } else {
            if (a_ != 0) os << a_ << (b_ > 0 ? "+" : "");
            if (b_ == 1) {
                // bare radical
            } else if (b_ == -1) {
                os << "-";
            } else {
                os << b_ << "*";
            }
            os << "sqrt(-" << d_ << ")";
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadInt& q) { return os << q.str(); }

private:
    void check(const QuadInt& o) const {
        if (d_ != o.d_)
            throw FieldMismatch("QuadInt: mixed discriminants " + std::to_string(d_) + " and " +
                                std::to_string(o.d_));
    }

    Rational a_, b_;
    long d_;
};

inline Rational norm(const QuadInt& x) { return x.norm(); }
inline QuadInt conjugate(const QuadInt& x) { return x.conj(); }

// symmetric bilinear form attached to the norm: ip(x,y) = (N(x+y)-N(x)-N(y))/2
inline Rational norm_pairing(const QuadInt& x, const QuadInt& y) {
    return x.a() * y.a() + Rational(x.D()) * x.b() * y.b();
}

}  // namespace kodbundle
