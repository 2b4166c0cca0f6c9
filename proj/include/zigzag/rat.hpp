#pragma once

#include <gmpxx.h>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "zigzag/errors.hpp"

namespace zigzag {

/* Exact rational scalar. Always reduced, denominator positive; every
   coordinate in the library is one of these. No floating point anywhere. */
class Rat {
    mpq_class v_;

public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long n, long d) : v_(n, d) {
        if (d == 0) throw DomainError("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) throw DomainError("rational division by zero");
        return Rat(mpq_class(v_ / o.v_));
    }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }
    bool operator<(const Rat& o) const { return v_ < o.v_; }
    bool operator<=(const Rat& o) const { return v_ <= o.v_; }
    bool operator>(const Rat& o) const { return v_ > o.v_; }
    bool operator>=(const Rat& o) const { return v_ >= o.v_; }

    /* "n/d", or plain "n" when the denominator is 1. */
    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    /* Accepts "n" or "n/d". Throws ParseError on anything else. */
    static Rat parse(const std::string& s);

    /* Decimal rendering with exactly `digits` fractional digits,
       truncated toward zero. Deterministic; used for SVG output only. */
    std::string decimal(int digits) const;

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
        return os << r.str();
    }
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
inline const Rat& min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
inline const Rat& max(const Rat& a, const Rat& b) { return a >= b ? a : b; }
inline Rat midpoint(const Rat& a, const Rat& b) { return (a + b) / Rat(2); }

inline Rat Rat::parse(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class n(s);
            return Rat(mpq_class(n));
        }
        mpz_class n(s.substr(0, slash));
        mpz_class d(s.substr(slash + 1));
        if (d == 0) throw ParseError("rational literal with zero denominator: " + s);
        mpq_class q(n, d);
        q.canonicalize();
        return Rat(q);
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational literal: " + s);
    }
}

inline std::string Rat::decimal(int digits) const {
    mpz_class scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    mpz_class n = num() * scale;
    mpz_class q = n / den(); // mpz division truncates toward zero
    bool neg = q < 0;
    mpz_class a = neg ? mpz_class(-q) : q;
    std::string whole = mpz_class(a / scale).get_str();
    std::string frac = mpz_class(a % scale).get_str();
    frac.insert(frac.begin(), digits - frac.size(), '0');
    std::string out = whole + "." + frac;
    if (neg && (a != 0)) out.insert(out.begin(), '-');
    return out;
}

} // namespace zigzag
