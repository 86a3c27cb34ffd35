#pragma once

#include <map>
#include <string>
#include <vector>

#include "lab/poly.hpp"

namespace lab {

// Finite Laurent polynomial in t over F_p: exponent -> nonzero coefficient.
using LEntry = std::map<int, int>;

inline int lentry_deg(const LEntry& e) {  // kNegInf for 0
    for (auto it = e.rbegin(); it != e.rend(); ++it)
        if (it->second != 0) return it->first;
    return kNegInf;
}

// Full-rank F_p[t]-lattice spanned by the COLUMNS of an n x n nonsingular
// matrix of finite Laurent polynomials.  The norm is |x| = 2^{deg x} with
// deg of a vector the maximum entry degree.
class TLattice {
public:
    TLattice(int p, int n) : p_(p), n_(n),
        m_(static_cast<size_t>(n), std::vector<LEntry>(static_cast<size_t>(n))) {
        Fp check(p);  // validates the modulus
        if (n < 1) throw InvalidInput("TLattice: rank must be positive");
    }

    int p() const { return p_; }
    int n() const { return n_; }
    const LEntry& at(int i, int j) const {
        return m_[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    void set(int i, int j, LEntry e) {
        Fp fp(p_);
        for (auto it = e.begin(); it != e.end();) {
            it->second = fp.reduce(it->second);
            it = it->second == 0 ? e.erase(it) : std::next(it);
        }
        m_[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(e);
    }

private:
    int p_, n_;
    std::vector<std::vector<LEntry>> m_;  // m_[row][col]
};

struct ReducedBasis {
    // Basis vectors as rows, entry degrees realizing the minima: |x_i| = 2^{sigma_i}.
    std::vector<std::vector<LEntry>> rows;
    std::vector<int> sigma;  // ascending
};

// Reduced basis and successive minima; deg det = sum sigma_i is asserted.
ReducedBasis reduce(const TLattice& lat);

// Successive minima (cached path: callers reduce once and reuse).
std::vector<int> minima(const TLattice& lat);

// deg of det of the basis matrix.
int det_deg(const TLattice& lat);

// nu(Lambda, R) = sum_i max(0, R - sigma_i): F_p-dimension of the ball of
// radius 2^R.  Defined for every integer R.
long long nu(const std::vector<int>& sigma, int R);
long long nu(const TLattice& lat, int R);

// Independent oracle: enumerate u in F_p[t]^n with deg u_i <= degree_cap over
// the reduced basis, count vectors with all coordinate degrees < R, and
// return log_p of the count (which must be an exact power of p).
long long nu_bruteforce(const TLattice& lat, int R, int degree_cap,
                        long long budget = kDefaultBudget);

// Dual lattice: basis t^{-deg det M} * adjugate(M)^T, so that
// sigma_i(Lambda) = -sigma_{n-i+1}(dual) and |det| inverts.
TLattice dual(const TLattice& lat);

// Davenport shrinking data: symmetric U with finite Laurent entries.
struct ShrinkInstance {
    int p = 3;
    int n = 1;
    std::vector<std::vector<LEntry>> U;  // n x n symmetric
    int a = 0;
    int b = 1;  // b > 0
};

// The 2n x 2n block lattice [[t^{-a} I, 0], [t^b U, t^b I]] (column span).
TLattice lattice_ab(const ShrinkInstance& inst);

struct ShrinkResult {
    long long lhs, rhs;
    bool holds;
};

// lhs = nu(Lambda_{a,b}, 0);
// rhs = nu(Lambda_{a-s,b+s}, -s) + n s + n max(floor((a-b)/2), 0).
// CAUTION: this literal bound can fail (e.g. n=1, U=0, a=b=2, s=1 gives
// 2 <= 1); it is reliable on the swept region s <= floor((a-b)/2) with a-b
// even, and trivially at s = 0.
ShrinkResult shrink_check(const ShrinkInstance& inst, int s);

// Sound variant: rhs = nu(Lambda_{a-s,b+s}, 0) + n s + n max(floor((a-b)/2), 0).
// Since M_{a-s,b+s} = t^s M_{a,b}, this radius matches the minima bookkeeping
// (sum of max{0, -s - sigma_i}) and the downstream shrink-by-one application
// (the box |x| < 2^{a-s}, ||Ux|| < 2^{-b-s}); it holds for every instance.
ShrinkResult shrink_check_sound(const ShrinkInstance& inst, int s);

// Self-duality profile of the shrinking lattice: sigma_i + sigma_{2n-i+1} = b - a.
bool shrink_self_dual(const ShrinkInstance& inst);

}  // namespace lab
