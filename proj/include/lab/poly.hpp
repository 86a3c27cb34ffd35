#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "lab/fp.hpp"

namespace lab {

// Dense univariate polynomial over F_p, coefficients stored ascending and
// normalized (no stored leading zero).  deg(0) = kNegInf.
class FpPoly {
public:
    explicit FpPoly(int p) : fp_(p) {}
    FpPoly(int p, std::vector<long long> coeffs) : fp_(p) {
        c_.reserve(coeffs.size());
        for (long long v : coeffs) c_.push_back(fp_.reduce(v));
        trim();
    }

    static FpPoly zero(int p) { return FpPoly(p); }
    static FpPoly constant(int p, long long v) { return FpPoly(p, {v}); }
    static FpPoly monomial(int p, int degree, long long coeff = 1) {
        FpPoly r(p);
        if (Fp(p).reduce(coeff) != 0) {
            r.c_.assign(static_cast<size_t>(degree) + 1, 0);
            r.c_.back() = r.fp_.reduce(coeff);
        }
        return r;
    }
    // t - x, the monic linear polynomial vanishing at x.
    static FpPoly linear_at(int p, int x) { return FpPoly(p, {-(long long)x, 1}); }

    int p() const { return fp_.p; }
    const Fp& fp() const { return fp_; }
    bool is_zero() const { return c_.empty(); }
    int deg() const { return c_.empty() ? kNegInf : static_cast<int>(c_.size()) - 1; }
    int lc() const { return c_.empty() ? 0 : c_.back(); }
    bool is_monic() const { return lc() == 1; }
    int coeff(int k) const {
        return (k < 0 || k >= static_cast<int>(c_.size())) ? 0 : c_[static_cast<size_t>(k)];
    }
    const std::vector<int>& coeffs() const { return c_; }

    void set_coeff(int k, long long v) {
        if (k < 0) throw InvalidInput("FpPoly::set_coeff: negative exponent");
        if (static_cast<size_t>(k) >= c_.size()) c_.resize(static_cast<size_t>(k) + 1, 0);
        c_[static_cast<size_t>(k)] = fp_.reduce(v);
        trim();
    }

    FpPoly operator+(const FpPoly& o) const {
        require_same(o);
        FpPoly r(fp_.p);
        r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = fp_.add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
        r.trim();
        return r;
    }
    FpPoly operator-(const FpPoly& o) const {
        require_same(o);
        FpPoly r(fp_.p);
        r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = fp_.sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
        r.trim();
        return r;
    }
    FpPoly operator*(const FpPoly& o) const {
        require_same(o);
        FpPoly r(fp_.p);
        if (is_zero() || o.is_zero()) return r;
        r.c_.assign(c_.size() + o.c_.size() - 1, 0);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] = fp_.add(r.c_[i + j], fp_.mul(c_[i], o.c_[j]));
        }
        r.trim();
        return r;
    }
    FpPoly scaled(int s) const {
        FpPoly r(fp_.p);
        s = fp_.reduce(s);
        if (s == 0) return r;
        r.c_ = c_;
        for (int& v : r.c_) v = fp_.mul(v, s);
        return r;
    }
    FpPoly shifted(int k) const {  // multiply by t^k, k >= 0
        FpPoly r(fp_.p);
        if (is_zero()) return r;
        r.c_.assign(static_cast<size_t>(k), 0);
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }

    bool operator==(const FpPoly& o) const { return fp_.p == o.fp_.p && c_ == o.c_; }
    bool operator!=(const FpPoly& o) const { return !(*this == o); }

    int eval(int x) const {
        int r = 0;
        for (size_t i = c_.size(); i-- > 0;) r = fp_.add(fp_.mul(r, fp_.reduce(x)), c_[i]);
        return r;
    }

    // Substitute another polynomial for t.
    FpPoly compose(const FpPoly& g) const {
        FpPoly r(fp_.p);
        for (size_t i = c_.size(); i-- > 0;) {
            r = r * g;
            r = r + FpPoly::constant(fp_.p, c_[i]);
        }
        return r;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int k = deg(); k >= 0; --k) {
            int v = coeff(k);
            if (v == 0) continue;
            if (!s.empty()) s += "+";
            if (k == 0) {
                s += std::to_string(v);
            } else {
                if (v != 1) s += std::to_string(v) + "*";
                s += (k == 1) ? "t" : "t^" + std::to_string(k);
            }
        }
        return s;
    }

private:
    void require_same(const FpPoly& o) const {
        if (fp_.p != o.fp_.p) throw InvalidInput("FpPoly: mixed moduli");
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    Fp fp_;
    std::vector<int> c_;
};

// Euclidean division: a = q*b + r with deg r < deg b.  Throws on b = 0.
inline std::pair<FpPoly, FpPoly> poly_divmod(const FpPoly& a, const FpPoly& b) {
    if (b.is_zero()) throw InvalidInput("poly_divmod: division by zero");
    const Fp& fp = a.fp();
    FpPoly q(a.p()), r = a;
    int binv = fp.inv(b.lc());
    while (!r.is_zero() && r.deg() >= b.deg()) {
        int k = r.deg() - b.deg();
        int s = fp.mul(r.lc(), binv);
        q.set_coeff(k, q.coeff(k) + s);
        r = r - b.shifted(k).scaled(s);
    }
    return {q, r};
}

// Monic gcd; gcd(0, 0) = 0 by convention.
inline FpPoly poly_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = poly_divmod(a, b).second;
        a = b;
        b = r;
    }
    if (!a.is_zero() && !a.is_monic()) a = a.scaled(a.fp().inv(a.lc()));
    return a;
}

inline bool poly_coprime(const FpPoly& a, const FpPoly& b) {
    FpPoly g = poly_gcd(a, b);
    return g.deg() == 0;
}

// Modular inverse of a mod m (coprime required).
inline FpPoly poly_invmod(const FpPoly& a, const FpPoly& m) {
    // Extended Euclid on (a mod m, m).
    FpPoly r0 = poly_divmod(a, m).second, r1 = m;
    FpPoly s0 = FpPoly::constant(a.p(), 1), s1 = FpPoly::zero(a.p());
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divmod(r0, r1);
        FpPoly s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0.deg() != 0) throw InvalidInput("poly_invmod: arguments not coprime");
    return s0.scaled(a.fp().inv(r0.lc()));
}

// Chinese remainder combination: the unique g with deg g < deg l1 + deg l2
// and g = r_i mod l_i, for monic coprime moduli.
inline FpPoly crt_combine(const FpPoly& r1, const FpPoly& l1,
                          const FpPoly& r2, const FpPoly& l2) {
    if (!l1.is_monic() || !l2.is_monic()) throw InvalidInput("crt_combine: moduli must be monic");
    if (r1.deg() >= l1.deg() || r2.deg() >= l2.deg())
        throw InvalidInput("crt_combine: residue degree out of range");
    if (!poly_coprime(l1, l2)) throw InvalidInput("crt_combine: moduli not coprime");
    // g = r2 + l2 * ((r1 - r2) * l2^{-1} mod l1)
    FpPoly t = poly_divmod((r1 - r2) * poly_invmod(l2, l1), l1).second;
    return r2 + l2 * t;
}

}  // namespace lab
