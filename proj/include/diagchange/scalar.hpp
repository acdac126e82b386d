#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace dc {

inline bool is_square_free(std::int64_t n) {
    if (n < 1) return false;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
    }
    return true;
}

// a + b*sqrt(d) with a, b rational and d square-free; d == 0 exactly when b == 0.
// Rationals (d == 0) mix freely with any field; two different non-zero d's do not.
class Scalar {
public:
    Scalar() = default;
    Scalar(long n) : a_(n) {}
    Scalar(mpq_class a) : a_(std::move(a)) { a_.canonicalize(); }
    Scalar(mpq_class a, mpq_class b, std::int64_t d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
        if (d_ < 0 || (d_ > 0 && !is_square_free(d_))) {
            throw NonSquareFreeD(std::to_string(d_));
        }
        a_.canonicalize();
        b_.canonicalize();
        normalize();
    }

    static Scalar rational(long p, long q = 1) {
        if (q == 0) throw DivisionByZero("rational with zero denominator");
        return Scalar(mpq_class(p, q));
    }
    static Scalar sqrt_of(std::int64_t d) { return Scalar(0, 1, d); }

    const mpq_class& rational_part() const { return a_; }
    const mpq_class& surd_part() const { return b_; }
    std::int64_t discriminant() const { return d_; }
    bool is_rational() const { return d_ == 0; }
    bool is_zero() const { return d_ == 0 && sgn(a_) == 0; }

    int sign() const {
        const int sa = sgn(a_);
        const int sb = sgn(b_);
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        // opposite signs: compare a^2 with b^2 d (never equal for square-free d > 1)
        mpq_class lhs = a_ * a_;
        mpq_class rhs = b_ * b_ * d_;
        return cmp(lhs, rhs) > 0 ? sa : sb;
    }

    Scalar operator-() const {
        Scalar r;
        r.a_ = -a_;
        r.b_ = -b_;
        r.d_ = d_;
        return r;
    }

    Scalar& operator+=(const Scalar& o) {
        d_ = common_d(o);
        a_ += o.a_;
        b_ += o.b_;
        normalize();
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        d_ = common_d(o);
        a_ -= o.a_;
        b_ -= o.b_;
        normalize();
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        const std::int64_t d = common_d(o);
        mpq_class a = a_ * o.a_ + b_ * o.b_ * d;
        mpq_class b = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(a);
        b_ = std::move(b);
        d_ = d;
        normalize();
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) throw DivisionByZero("scalar division");
        const std::int64_t d = common_d(o);
        if (o.d_ == 0) {
            a_ /= o.a_;
            b_ /= o.a_;
        } else {
            // multiply by the conjugate of o
            mpq_class norm = o.a_ * o.a_ - o.b_ * o.b_ * d;
            mpq_class a = (a_ * o.a_ - b_ * o.b_ * d) / norm;
            mpq_class b = (b_ * o.a_ - a_ * o.b_) / norm;
            a_ = std::move(a);
            b_ = std::move(b);
        }
        d_ = d;
        normalize();
        return *this;
    }

    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
    friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
    friend int compare(const Scalar& x, const Scalar& y) { return (x - y).sign(); }
    friend bool operator<(const Scalar& x, const Scalar& y) { return compare(x, y) < 0; }
    friend bool operator>(const Scalar& x, const Scalar& y) { return compare(x, y) > 0; }
    friend bool operator<=(const Scalar& x, const Scalar& y) { return compare(x, y) <= 0; }
    friend bool operator>=(const Scalar& x, const Scalar& y) { return compare(x, y) >= 0; }

    // Cheap total order on the representation, for use as a container key.
    friend bool structural_less(const Scalar& x, const Scalar& y) {
        if (x.d_ != y.d_) return x.d_ < y.d_;
        if (int c = cmp(x.a_, y.a_); c != 0) return c < 0;
        return cmp(x.b_, y.b_) < 0;
    }

    Scalar abs() const { return sign() < 0 ? -*this : *this; }

    double to_double() const {
        const double root = std::sqrt(static_cast<double>(d_));
        if (sgn(a_) * sgn(b_) >= 0) return a_.get_d() + b_.get_d() * root;
        // opposite signs cancel; divide the exact norm by the conjugate instead
        mpq_class norm = a_ * a_ - b_ * b_ * d_;
        return norm.get_d() / (a_.get_d() - b_.get_d() * root);
    }

    std::string str() const {
        if (d_ == 0) return a_.get_str();
        std::string s = a_.get_str();
        s += sgn(b_) < 0 ? '-' : '+';
        s += mpq_class(abs_q(b_)).get_str();
        s += "*sqrt(" + std::to_string(d_) + ")";
        return s;
    }

    static Scalar parse(std::string_view text);

private:
    static mpq_class abs_q(const mpq_class& q) { return sgn(q) < 0 ? mpq_class(-q) : q; }

    std::int64_t common_d(const Scalar& o) const {
        if (d_ == 0) return o.d_;
        if (o.d_ == 0 || o.d_ == d_) return d_;
        throw MixedDiscriminant(std::to_string(d_) + " vs " + std::to_string(o.d_));
    }

    void normalize() {
        if (d_ == 1) {
            a_ += b_;
            b_ = 0;
        }
        if (d_ == 0) b_ = 0;
        if (sgn(b_) == 0) d_ = 0;
    }

    mpq_class a_{0};
    mpq_class b_{0};
    std::int64_t d_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

namespace detail {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    bool done() const { return pos == text.size(); }
    char peek() const { return done() ? '\0' : text[pos]; }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }
    bool eat(std::string_view s) {
        if (text.substr(pos, s.size()) != s) return false;
        pos += s.size();
        return true;
    }
    std::string digits() {
        std::size_t start = pos;
        while (!done() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (start == pos) {
            throw SyntaxError("expected digits at offset " + std::to_string(start) + " in '" +
                              std::string(text) + "'");
        }
        return std::string(text.substr(start, pos - start));
    }
    mpq_class rational() {
        bool neg = eat('-');
        mpz_class num(digits());
        mpz_class den(1);
        if (eat('/')) {
            den = mpz_class(digits());
            if (den == 0) throw SyntaxError("zero denominator in '" + std::string(text) + "'");
        }
        mpq_class q(neg ? mpz_class(-num) : num, den);
        q.canonicalize();
        return q;
    }
};

}  // namespace detail

inline Scalar Scalar::parse(std::string_view text) {
    detail::Cursor c{text};
    mpq_class a = c.rational();
    if (c.done()) return Scalar(a);
    int s = 0;
    if (c.eat('+')) {
        s = 1;
    } else if (c.eat('-')) {
        s = -1;
    } else {
        throw SyntaxError("unexpected character in '" + std::string(text) + "'");
    }
    mpq_class b = c.rational();
    if (!c.eat("*sqrt(")) throw SyntaxError("expected '*sqrt(' in '" + std::string(text) + "'");
    std::string ds = c.digits();
    if (!c.eat(')') || !c.done()) throw SyntaxError("trailing input in '" + std::string(text) + "'");
    if (ds.size() > 15) throw SyntaxError("discriminant too large in '" + std::string(text) + "'");
    std::int64_t d = std::stoll(ds);
    if (d != 0 && !is_square_free(d)) throw NonSquareFreeD(ds);
    if (s < 0) b = -b;
    return Scalar(a, b, d);
}

inline Scalar parse_scalar(std::string_view text) { return Scalar::parse(text); }
inline std::string format_scalar(const Scalar& s) { return s.str(); }

}  // namespace dc
