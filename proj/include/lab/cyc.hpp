#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lab/fp.hpp"

namespace lab {

// Exact element of Z[zeta_p] for a p-th root of unity zeta, stored on the
// integral basis 1, zeta, ..., zeta^{p-2} (so zeta^{p-1} = -1 - ... -
// zeta^{p-2}).  Coordinates are int64; all desk computations stay far from
// overflow (sums of at most p^{2(de+1)} <= 5^12 unit terms).
class CycSum {
public:
    explicit CycSum(int p) : fp_(p), coord_(static_cast<size_t>(p - 1), 0) {}

    static CycSum zero(int p) { return CycSum(p); }

    static CycSum integer(int p, long long v) {
        CycSum r(p);
        r.coord_[0] = v;
        return r;
    }

    // zeta^a (the additive character psi(a) at a in F_p).
    static CycSum from_exponent(int p, long long a) {
        std::vector<long long> h(static_cast<size_t>(p), 0);
        h[static_cast<size_t>(Fp(p).reduce(a))] = 1;
        return from_histogram(p, h);
    }

    // sum_a h[a] * zeta^a, reduced onto the basis: coord[i] = h[i] - h[p-1].
    static CycSum from_histogram(int p, const std::vector<long long>& h) {
        if (static_cast<int>(h.size()) != p)
            throw InvalidInput("CycSum::from_histogram: histogram must have p entries");
        CycSum r(p);
        for (int i = 0; i < p - 1; ++i)
            r.coord_[static_cast<size_t>(i)] = h[static_cast<size_t>(i)] - h[static_cast<size_t>(p - 1)];
        return r;
    }

    int p() const { return fp_.p; }
    const std::vector<long long>& coords() const { return coord_; }
    long long coord(int i) const { return coord_[static_cast<size_t>(i)]; }

    bool is_zero() const {
        for (long long v : coord_) if (v != 0) return false;
        return true;
    }
    // Basis representation is unique, so rational integers are exactly the
    // elements with vanishing higher coordinates.
    bool is_integer() const {
        for (size_t i = 1; i < coord_.size(); ++i)
            if (coord_[i] != 0) return false;
        return true;
    }
    long long integer_value() const {
        if (!is_integer()) throw InvalidInput("CycSum::integer_value: not a rational integer");
        return coord_[0];
    }

    CycSum operator+(const CycSum& o) const {
        require_same(o);
        CycSum r(fp_.p);
        for (size_t i = 0; i < coord_.size(); ++i) r.coord_[i] = coord_[i] + o.coord_[i];
        return r;
    }
    CycSum operator-(const CycSum& o) const {
        require_same(o);
        CycSum r(fp_.p);
        for (size_t i = 0; i < coord_.size(); ++i) r.coord_[i] = coord_[i] - o.coord_[i];
        return r;
    }
    CycSum operator-() const {
        CycSum r(fp_.p);
        for (size_t i = 0; i < coord_.size(); ++i) r.coord_[i] = -coord_[i];
        return r;
    }
    CycSum scaled(long long s) const {
        CycSum r(fp_.p);
        for (size_t i = 0; i < coord_.size(); ++i) r.coord_[i] = coord_[i] * s;
        return r;
    }

    // Product via cyclic convolution of exponent vectors mod p, then
    // re-reduction of the zeta^{p-1} slot onto the basis.
    CycSum operator*(const CycSum& o) const {
        require_same(o);
        int p = fp_.p;
        std::vector<long long> conv(static_cast<size_t>(p), 0);
        for (int i = 0; i < p - 1; ++i) {
            if (coord_[static_cast<size_t>(i)] == 0) continue;
            for (int j = 0; j < p - 1; ++j) {
                if (o.coord_[static_cast<size_t>(j)] == 0) continue;
                conv[static_cast<size_t>((i + j) % p)] +=
                    coord_[static_cast<size_t>(i)] * o.coord_[static_cast<size_t>(j)];
            }
        }
        return from_histogram(p, conv);
    }

    // Complex conjugation zeta^a -> zeta^{-a}.
    CycSum conjugate() const {
        int p = fp_.p;
        std::vector<long long> h(static_cast<size_t>(p), 0);
        for (int i = 0; i < p - 1; ++i)
            h[static_cast<size_t>((p - i) % p)] += coord_[static_cast<size_t>(i)];
        return from_histogram(p, h);
    }

    bool operator==(const CycSum& o) const { return fp_.p == o.fp_.p && coord_ == o.coord_; }
    bool operator!=(const CycSum& o) const { return !(*this == o); }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = 0; i < coord_.size(); ++i) {
            if (coord_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += std::to_string(coord_[i]);
            if (i > 0) s += "*z^" + std::to_string(i);
        }
        return s;
    }

private:
    void require_same(const CycSum& o) const {
        if (fp_.p != o.fp_.p) throw InvalidInput("CycSum: mixed moduli");
    }

    Fp fp_;
    std::vector<long long> coord_;
};

// sum_{x in F_p} zeta^{c x}: p when c = 0 and 0 otherwise.  Closed form.
inline CycSum char_sum_linear(int p, long long c) {
    if (Fp(p).reduce(c) == 0) return CycSum::integer(p, p);
    return CycSum::zero(p);
}

// Enumeration oracle for char_sum_linear, used to pin the closed form.
inline CycSum char_sum_linear_bruteforce(int p, long long c) {
    Fp fp(p);
    std::vector<long long> h(static_cast<size_t>(p), 0);
    for (int x = 0; x < p; ++x) ++h[static_cast<size_t>(fp.mul(fp.reduce(c), x))];
    return CycSum::from_histogram(p, h);
}

}  // namespace lab
