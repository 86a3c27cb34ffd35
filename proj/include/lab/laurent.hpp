#pragma once

#include <map>
#include <optional>
#include <string>

#include "lab/poly.hpp"

namespace lab {

// Truncated Laurent series over F_p with a window [lo, hi] of exponents.
//
// Conventions:
//   * exponents above hi are exactly zero (hi is an exact upper support bound);
//   * exponents in [lo, hi] are stored (absent means zero);
//   * exponents below lo are exactly zero when exact_below is set, and
//     otherwise unknown: any query whose answer depends on them refuses with
//     PrecisionError rather than guessing.
//   * ord is the TOP exponent with a nonzero coefficient ("small" means very
//     negative); it is never the valuation.  ord(0) = nullopt (minus infinity).
class TruncLaurent {
public:
    explicit TruncLaurent(int p) : fp_(p), lo_(0), hi_(-1), exact_below_(true) {}

    TruncLaurent(int p, int lo, int hi, bool exact_below)
        : fp_(p), lo_(lo), hi_(hi), exact_below_(exact_below) {
        if (lo > hi + 1) throw InvalidInput("TruncLaurent: malformed window");
    }

    static TruncLaurent zero(int p) { return TruncLaurent(p); }

    static TruncLaurent monomial(int p, int exp, long long coeff) {
        TruncLaurent r(p, exp, exp, true);
        r.set(exp, coeff);
        return r;
    }

    // Embed a polynomial as an exact series.
    static TruncLaurent from_poly(const FpPoly& a) {
        TruncLaurent r(a.p());
        for (int k = 0; k <= a.deg(); ++k)
            if (a.coeff(k) != 0) r.c_[k] = a.coeff(k);
        if (!a.is_zero()) { r.lo_ = 0; r.hi_ = a.deg(); }
        return r;
    }

    // Series with coefficients b_1, ..., b_len at t^{-1}, ..., t^{-len},
    // exactly zero below: the standard truncated-coefficient-space element.
    static TruncLaurent from_b_coeffs(int p, const std::vector<int>& b) {
        int len = static_cast<int>(b.size());
        TruncLaurent r(p, -len, -1, true);
        if (len == 0) return TruncLaurent(p);
        for (int i = 1; i <= len; ++i) r.set(-i, b[static_cast<size_t>(i - 1)]);
        return r;
    }

    int p() const { return fp_.p; }
    const Fp& fp() const { return fp_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool exact_below() const { return exact_below_; }
    bool is_known_zero() const { return exact_below_ && c_.empty(); }

    bool known_at(int k) const { return k > hi_ || k >= lo_ || exact_below_; }

    int coeff_at(int k) const {
        if (k > hi_) return 0;
        if (k >= lo_) {
            auto it = c_.find(k);
            return it == c_.end() ? 0 : it->second;
        }
        if (exact_below_) return 0;
        throw PrecisionError("TruncLaurent: coefficient of t^" + std::to_string(k) +
                             " lies below the window");
    }

    void set(int k, long long v) {
        if (k < lo_ || k > hi_) throw InvalidInput("TruncLaurent::set: exponent outside window");
        int r = fp_.reduce(v);
        if (r == 0) c_.erase(k); else c_[k] = r;
    }

    TruncLaurent operator+(const TruncLaurent& o) const {
        require_same(o);
        bool exact = exact_below_ && o.exact_below_;
        int hi = std::max(hi_, o.hi_);
        int lo;
        if (exact) {
            lo = std::min(lo_, o.lo_);
        } else if (exact_below_) {
            lo = o.lo_;
        } else if (o.exact_below_) {
            lo = lo_;
        } else {
            lo = std::max(lo_, o.lo_);
        }
        if (lo > hi) return exact ? TruncLaurent(fp_.p) : TruncLaurent(fp_.p, lo, hi, false);
        TruncLaurent r(fp_.p, lo, hi, exact);
        for (int k = lo; k <= hi; ++k) {
            int a = (k >= lo_ || exact_below_) ? coeff_at(k) : 0;       // safe: k >= lo
            int b = (k >= o.lo_ || o.exact_below_) ? o.coeff_at(k) : 0;
            r.set(k, fp_.add(a, b));
        }
        return r;
    }

    TruncLaurent operator-() const {
        TruncLaurent r = *this;
        std::map<int, int> neg;
        for (auto& [k, v] : r.c_) neg[k] = fp_.neg(v);
        r.c_ = std::move(neg);
        return r;
    }
    TruncLaurent operator-(const TruncLaurent& o) const { return *this + (-o); }

    // Product.  The result window is the largest one on which every
    // coefficient is determined by known coefficients of the factors:
    // unknown coefficients of a factor below its lo can only influence result
    // exponents < lo + (other factor's hi).
    TruncLaurent operator*(const TruncLaurent& o) const {
        require_same(o);
        bool exact = exact_below_ && o.exact_below_;
        if (is_known_zero() || o.is_known_zero()) {
            if (exact) return TruncLaurent(fp_.p);
            // A known-zero factor still kills everything.
            if ((exact_below_ && c_.empty()) || (o.exact_below_ && o.c_.empty()))
                return TruncLaurent(fp_.p);
        }
        int hi = hi_ + o.hi_;
        int lo;
        if (exact) {
            lo = lo_ + o.lo_;
        } else {
            lo = kNegInf;
            if (!exact_below_) lo = std::max(lo, lo_ + o.hi_);
            if (!o.exact_below_) lo = std::max(lo, o.lo_ + hi_);
        }
        if (lo > hi) return exact ? TruncLaurent(fp_.p) : TruncLaurent(fp_.p, hi, hi, false);
        TruncLaurent r(fp_.p, lo, hi, exact);
        for (auto& [ka, va] : c_) {
            for (auto& [kb, vb] : o.c_) {
                int k = ka + kb;
                if (k < lo || k > hi) continue;
                r.set(k, fp_.add(r.get_raw(k), fp_.mul(va, vb)));
            }
        }
        return r;
    }

    TruncLaurent scaled(int s) const {
        TruncLaurent r = *this;
        s = fp_.reduce(s);
        std::map<int, int> m;
        if (s != 0)
            for (auto& [k, v] : c_) m[k] = fp_.mul(v, s);
        r.c_ = std::move(m);
        return r;
    }

    // Top exponent with nonzero coefficient; nullopt encodes minus infinity.
    std::optional<int> ord() const {
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            if (it->second != 0) return it->first;
        if (exact_below_) return std::nullopt;
        throw PrecisionError("TruncLaurent::ord: all window coefficients vanish and the tail is unknown");
    }

    // Non-throwing variant: nullopt when the ord is not visible in the window
    // (either genuinely minus infinity or hidden below an inexact floor).
    std::optional<int> ord_known() const {
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            if (it->second != 0) return it->first;
        return std::nullopt;
    }

    // Decidable comparison ord <= bound even when ord itself is unknown below
    // the window (every stored coefficient above the window floor counts).
    bool ord_at_most(int bound) const {
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            if (it->second != 0) return it->first <= bound;
        if (exact_below_) return true;      // ord = -infinity
        return lo_ - 1 <= bound ? true : throw PrecisionError(
            "TruncLaurent::ord_at_most: undecidable at current precision");
    }

    // Coefficient of t^{-1}.
    int res() const { return coeff_at(-1); }

    // Fractional part: exponents <= -1 only.
    TruncLaurent frac() const {
        int hi = std::min(hi_, -1);
        if (lo_ > hi) {
            return exact_below_ ? TruncLaurent(fp_.p) : TruncLaurent(fp_.p, lo_, hi_, false);
        }
        TruncLaurent r(fp_.p, lo_, hi, exact_below_);
        for (auto& [k, v] : c_)
            if (k <= -1) r.c_[k] = v;
        return r;
    }

    std::string str() const {
        if (c_.empty()) return exact_below_ ? "0" : "O(t^" + std::to_string(lo_) + ")";
        std::string s;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            if (!s.empty()) s += "+";
            s += std::to_string(it->second) + "*t^" + std::to_string(it->first);
        }
        if (!exact_below_) s += "+O(t^" + std::to_string(lo_ - 1) + ")";
        return s;
    }

private:
    int get_raw(int k) const {
        auto it = c_.find(k);
        return it == c_.end() ? 0 : it->second;
    }
    void require_same(const TruncLaurent& o) const {
        if (fp_.p != o.fp_.p) throw InvalidInput("TruncLaurent: mixed moduli");
    }

    Fp fp_;
    int lo_, hi_;
    bool exact_below_;
    std::map<int, int> c_;  // nonzero coefficients within [lo, hi]
};

struct LaurentParts {
    std::optional<int> ord;  // nullopt = minus infinity
    int res;
    TruncLaurent frac;
};

inline LaurentParts laurent_parts(const TruncLaurent& a) {
    return LaurentParts{a.ord(), a.res(), a.frac()};
}

// Coefficients q_{-1}, q_{-2}, ..., q_{-depth} of the series expansion of
// h1/h2 in t^{-1}, for deg h1 < deg h2.  Exact to any depth.
inline std::vector<int> rational_series(const FpPoly& h1, const FpPoly& h2, int depth) {
    if (h2.is_zero()) throw InvalidInput("rational_series: zero denominator");
    if (!h1.is_zero() && h1.deg() >= h2.deg())
        throw InvalidInput("rational_series: numerator degree too large");
    const Fp& fp = h1.fp();
    int m = h2.deg();
    int linv = fp.inv(h2.lc());
    // q_k for k = -1 .. -depth, solving (sum q_k t^k) * h2 = h1.
    std::vector<int> q(static_cast<size_t>(std::max(depth, 0)), 0);
    for (int i = 1; i <= depth; ++i) {
        // Match the coefficient of t^{m - i} in q*h2 with h1.
        long long acc = h1.coeff(m - i);
        for (int j = 1; j < i; ++j) {
            // q_{-j} * h2_{m - i + j}
            acc -= static_cast<long long>(q[static_cast<size_t>(j - 1)]) * h2.coeff(m - i + j);
        }
        q[static_cast<size_t>(i - 1)] = fp.mul(fp.reduce(acc), linv);
    }
    return q;
}

// res((h1/h2) * F) for a polynomial F: only the residue of (h1 F mod h2)/h2
// matters, and res(s/h2) is a linear functional of s given by the expansion
// coefficients of 1/h2.
inline int rational_res_times_poly(const FpPoly& h1, const FpPoly& h2, const FpPoly& F) {
    if (h2.deg() <= 0) return 0;  // constant denominator: no fractional part
    const Fp& fp = h1.fp();
    FpPoly s = poly_divmod(h1 * F, h2).second;
    std::vector<int> inv = rational_series(FpPoly::constant(h1.p(), 1), h2, h2.deg());
    long long acc = 0;
    for (int k = 0; k <= s.deg(); ++k) {
        // res(t^k / h2) = coefficient of t^{-1-k} in 1/h2.
        acc += static_cast<long long>(s.coeff(k)) * inv[static_cast<size_t>(k)];
    }
    return fp.reduce(acc);
}

// Expansion of r / h2 as a truncated series on [lo_out, ord(r) - deg h2],
// exact when r is exact.
inline TruncLaurent laurent_div_poly(const TruncLaurent& r, const FpPoly& h2, int lo_out) {
    if (h2.is_zero()) throw InvalidInput("laurent_div_poly: zero denominator");
    const Fp& fp = r.fp();
    int m = h2.deg();
    int hi = r.hi() - m;
    bool exact = r.exact_below();
    if (!exact && lo_out < r.lo() - m)
        throw PrecisionError("laurent_div_poly: requested window exceeds precision");
    // Build coefficients from the top down: coefficient of t^{k+m} of q*h2
    // must match r.  The quotient is an honest infinite series downward, so
    // the result is never exact below its window.
    std::map<int, int> qc;
    int linv = fp.inv(h2.lc());
    for (int k = hi; k >= lo_out; --k) {
        long long acc = r.coeff_at(k + m);
        for (int j = 0; j < m; ++j) {
            auto it = qc.find(k + m - j);
            if (it != qc.end()) acc -= static_cast<long long>(it->second) * h2.coeff(j);
        }
        qc[k] = fp.mul(fp.reduce(acc), linv);
    }
    TruncLaurent out(r.p(), lo_out, std::max(hi, lo_out - 1), false);
    for (auto& [k, v] : qc) out.set(k, v);
    return out;
}

}  // namespace lab
