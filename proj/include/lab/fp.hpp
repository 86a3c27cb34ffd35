#pragma once

#include <vector>

#include "lab/common.hpp"

namespace lab {

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

// Arithmetic context for the prime field F_p.  Elements are plain ints in
// [0, p).  Supported range is 2 <= p <= 97; desk experiments use p <= 13.
struct Fp {
    int p;

    explicit Fp(int p_) : p(p_) {
        if (p < 2 || p > 97 || !is_prime(p))
            throw InvalidInput("Fp: modulus must be a prime in [2, 97], got " + std::to_string(p_));
    }

    int reduce(long long x) const {
        long long r = x % p;
        return static_cast<int>(r < 0 ? r + p : r);
    }
    int add(int a, int b) const { int s = a + b; return s >= p ? s - p : s; }
    int sub(int a, int b) const { int s = a - b; return s < 0 ? s + p : s; }
    int neg(int a) const { return a == 0 ? 0 : p - a; }
    int mul(int a, int b) const { return static_cast<int>(static_cast<long long>(a) * b % p); }

    int pow(int a, long long e) const {
        int r = 1 % p, base = a;
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    int inv(int a) const {
        if (a % p == 0) throw InvalidInput("Fp::inv: division by zero");
        return pow(reduce(a), p - 2);
    }

    bool operator==(const Fp& o) const { return p == o.p; }
};

// Binomial coefficient mod p via Pascal's rule (small arguments only).
inline int binom_mod(int n, int k, const Fp& fp) {
    if (k < 0 || k > n) return 0;
    std::vector<int> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<int> next(static_cast<size_t>(i) + 1, 1);
        for (int j = 1; j < i; ++j)
            next[static_cast<size_t>(j)] = fp.add(row[static_cast<size_t>(j - 1)],
                                                  row[static_cast<size_t>(j)]);
        row = std::move(next);
    }
    return row[static_cast<size_t>(k)];
}

}  // namespace lab
