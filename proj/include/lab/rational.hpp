#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "lab/common.hpp"

namespace lab {

// Exact rational number on int64 numerator/denominator with __int128
// intermediates.  Always stored reduced with positive denominator.  The desk
// computations keep magnitudes around p^{Nn} <= 5^12, far below overflow,
// but narrowing from __int128 is checked anyway.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) { assign(n, d); }

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    long long integer_value() const {
        if (den_ != 1) throw InvalidInput("Rat::integer_value: not an integer");
        return num_;
    }

    Rat operator+(const Rat& o) const {
        return make((__int128)num_ * o.den_ + (__int128)o.num_ * den_, (__int128)den_ * o.den_);
    }
    Rat operator-(const Rat& o) const {
        return make((__int128)num_ * o.den_ - (__int128)o.num_ * den_, (__int128)den_ * o.den_);
    }
    Rat operator*(const Rat& o) const {
        return make((__int128)num_ * o.num_, (__int128)den_ * o.den_);
    }
    Rat operator/(const Rat& o) const {
        if (o.num_ == 0) throw InvalidInput("Rat: division by zero");
        return make((__int128)num_ * o.den_, (__int128)den_ * o.num_);
    }
    Rat operator-() const { Rat r; r.num_ = -num_; r.den_ = den_; return r; }

    Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
    Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
    Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const {
        return (__int128)num_ * o.den_ < (__int128)o.num_ * den_;
    }
    bool operator<=(const Rat& o) const { return !(o < *this); }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator>=(const Rat& o) const { return !(*this < o); }

    // base^e for integer e of either sign.
    static Rat pow(long long base, int e) {
        Rat r(1);
        Rat b = e >= 0 ? Rat(base) : Rat(1, base);
        int k = e >= 0 ? e : -e;
        for (int i = 0; i < k; ++i) r *= b;
        return r;
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    static Rat make(__int128 n, __int128 d) {
        if (d == 0) throw InvalidInput("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        Rat r;
        r.num_ = narrow(n);
        r.den_ = narrow(d);
        return r;
    }
    void assign(long long n, long long d) {
        Rat r = make(n, d);
        num_ = r.num_;
        den_ = r.den_;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a;
    }
    static long long narrow(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw InvalidInput("Rat: overflow past int64");
        return static_cast<long long>(v);
    }

    long long num_, den_;
};

}  // namespace lab
