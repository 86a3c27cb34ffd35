#pragma once

#include <map>
#include <optional>
#include <string>

#include "lab/common.hpp"

namespace lab {

// Element of Z[u,v][[(uv)^{-1}]] truncated below a total-degree floor:
// coefficients with a+b >= floor are stored exactly, everything below the
// floor is unknown territory and queries there refuse.  floor = kNegInf
// marks an exact (polynomial) element.  cap bounds each variable degree.
class HDSeries {
public:
    HDSeries(int floor, int cap) : floor_(floor), cap_(cap) {}

    static HDSeries zero_exact(int cap) { return HDSeries(kNegInf, cap); }
    // coeff * (uv)^k, exact.
    static HDSeries uv_power(int k, long long coeff = 1) {
        HDSeries r(kNegInf, k);
        r.set(k, k, coeff);
        return r;
    }

    int floor() const { return floor_; }
    int cap() const { return cap_; }
    bool exact() const { return is_neg_inf(floor_); }
    const std::map<std::pair<int, int>, long long>& terms() const { return c_; }

    // Largest known total degree that can carry support (used by the floor
    // interval arithmetic); floor-1 for an empty inexact series.
    int top_total() const {
        int best = exact() ? kNegInf : floor_ - 1;
        for (const auto& [k, v] : c_) best = std::max(best, k.first + k.second);
        return best;
    }

    void set(int a, int b, long long v) {
        if (!exact() && a + b < floor_)
            throw InvalidInput("HDSeries::set: below the floor");
        if (a > cap_ || b > cap_) throw InvalidInput("HDSeries::set: above the cap");
        if (v == 0) c_.erase({a, b});
        else c_[{a, b}] = v;
    }

    long long coeff(int a, int b) const {
        if (!exact() && a + b < floor_)
            throw PrecisionError("HDSeries::coeff: total degree below the floor");
        auto it = c_.find({a, b});
        return it == c_.end() ? 0 : it->second;
    }

    HDSeries operator+(const HDSeries& o) const {
        int fl = exact() ? o.floor_ : (o.exact() ? floor_ : std::max(floor_, o.floor_));
        HDSeries r(fl, std::max(cap_, o.cap_));
        auto add_from = [&](const HDSeries& s) {
            for (const auto& [k, v] : s.c_) {
                if (!r.exact() && k.first + k.second < r.floor_) continue;
                long long nv = (r.c_.count(k) ? r.c_[k] : 0) + v;
                if (nv == 0) r.c_.erase(k);
                else r.c_[k] = nv;
            }
        };
        add_from(*this);
        add_from(o);
        return r;
    }
    HDSeries operator-(const HDSeries& o) const { return *this + o.scaled(-1); }
    HDSeries scaled(long long s) const {
        HDSeries r(floor_, cap_);
        if (s != 0)
            for (const auto& [k, v] : c_) r.c_[k] = v * s;
        return r;
    }

    // Product; the unknown tail of a factor can only pollute total degrees
    // below (its floor + the other factor's top total degree).
    HDSeries operator*(const HDSeries& o) const {
        int fl;
        if (exact() && o.exact()) {
            fl = kNegInf;
        } else {
            fl = kNegInf;
            if (!exact()) fl = std::max(fl, floor_ + o.top_total());
            if (!o.exact()) fl = std::max(fl, o.floor_ + top_total());
        }
        HDSeries r(fl, cap_ + o.cap_);
        for (const auto& [ka, va] : c_)
            for (const auto& [kb, vb] : o.c_) {
                std::pair<int, int> k{ka.first + kb.first, ka.second + kb.second};
                if (!r.exact() && k.first + k.second < r.floor_) continue;
                long long nv = (r.c_.count(k) ? r.c_[k] : 0) + va * vb;
                if (nv == 0) r.c_.erase(k);
                else r.c_[k] = nv;
            }
        return r;
    }

    // Multiply by (uv)^k (either sign): shift the whole support.
    HDSeries shift(int k) const {
        HDSeries r(exact() ? kNegInf : floor_ + 2 * k, cap_ + k);
        for (const auto& [key, v] : c_) r.c_[{key.first + k, key.second + k}] = v;
        return r;
    }

    // Discard all coefficients below a higher floor.
    HDSeries raised(int new_floor) const {
        if (!exact() && new_floor < floor_)
            throw InvalidInput("HDSeries::raised: floors only go up");
        HDSeries r(new_floor, cap_);
        for (const auto& [k, v] : c_)
            if (k.first + k.second >= new_floor) r.c_[k] = v;
        return r;
    }

    // Exact halving (for symmetric-square bookkeeping).
    HDSeries halved() const {
        HDSeries r(floor_, cap_);
        for (const auto& [k, v] : c_) {
            if (v % 2 != 0) throw IdentityFailure("HDSeries::halved: odd coefficient");
            r.c_[k] = v / 2;
        }
        return r;
    }

    // Equality of all known coefficients with total degree > bound; both
    // floors must sit at or below bound+1, otherwise the comparison would be
    // vacuous at unknown spots.
    bool agree_above(const HDSeries& o, int bound) const {
        if ((!exact() && floor_ > bound + 1) || (!o.exact() && o.floor_ > bound + 1))
            throw PrecisionError("HDSeries::agree_above: floor above the comparison line");
        auto check = [&](const HDSeries& a, const HDSeries& b) {
            for (const auto& [k, v] : a.c_) {
                if (k.first + k.second <= bound) continue;
                auto it = b.c_.find(k);
                if ((it == b.c_.end() ? 0 : it->second) != v) return false;
            }
            return true;
        };
        return check(*this, o) && check(o, *this);
    }

    std::string csv() const {  // columns: p,q,coeff (known coefficients only)
        std::string out = "p,q,coeff\n";
        for (const auto& [k, v] : c_)
            out += std::to_string(k.first) + "," + std::to_string(k.second) + "," +
                   std::to_string(v) + "\n";
        return out;
    }

private:
    std::map<std::pair<int, int>, long long> c_;
    int floor_, cap_;
};

inline HDSeries hd_mul(const HDSeries& a, const HDSeries& b) { return a * b; }

// Multiply by (1 - (uv)^{-k})^{-1} = sum_{j>=0} (uv)^{-kj}; needs a floor.
HDSeries hd_geo_div(const HDSeries& a, int k);

// Multiply by (1 + (uv)^{-1})^{-1} = sum_{j>=0} (-1)^j (uv)^{-j}.
HDSeries hd_alt_div(const HDSeries& a);

// Diagonal tail of the Hodge-Deligne polynomial of a smooth hypersurface in
// P^{n-1}: coefficient 1 at each (m,m) with m <= n-2, everything of total
// degree <= n-2 unknown.  Requires floor > n-2.
HDSeries hd_hypersurface_lefschetz(int n, int floor);

// Main term for the variety of lines: ((uv)^{-d} X^2 - (uv)^{n-d-2} X) over
// (1 + (uv)^{-1}); valid above the weight line 4n-2d-6 - (n-2^d(d-1))/2^{d-2}.
HDSeries f1_main_term(int n, int d, int floor);

// Closed-form virtual Hodge number of the variety of lines: floor((2n-d-5-p)/2)+1
// on the diagonal / 0 off it when p+q clears the weight line, 0 outside the
// index box [0, 2n-d-5]^2, nothing when the weight line is not cleared.
std::optional<long long> f1_hodge(int n, int d, int p_idx, int q_idx);

// Diagonal tail of HD(Sym^2 X~): coefficient n-1-ceil(K/2) at (K,K) for
// K <= 2n-4; exact above total degree 3n-6 (the conservative floor).
HDSeries sym2_burillo(int n, int floor);

// Independent route to the same tail through (X^2 + X(u^2,v^2))/2.
HDSeries sym2_via_square(int n, int floor);

// (uv)^2 F_1-main-term + (1 + (uv)^{n-2}) X against Sym^2 X, compared on all
// total degrees > 7n/2 (d = 3, n >= 17).  perturb flips one coefficient to
// exercise the comparator.
bool gs_pen_consistency(int n, bool perturb = false);

}  // namespace lab
