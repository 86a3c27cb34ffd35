#pragma once

#include <string>
#include <vector>

#include "lab/poly.hpp"

namespace lab {

struct Monomial {
    std::vector<int> exps;  // length n, entries >= 0, summing to d
    int coeff;              // in [0, p)
};

enum class SmoothMode { DiagonalCertified, UserAsserted };

// A homogeneous form f of degree d in n variables over F_p, together with the
// derived symmetric tensor c_j (j a multi-index of length d) and the n
// multilinear forms Psi_j in d-1 vector arguments.
class HypersurfaceSpec {
public:
    HypersurfaceSpec(int p, int n, int d, std::vector<Monomial> monomials, SmoothMode mode)
        : fp_(p), n_(n), d_(d), mono_(std::move(monomials)), mode_(mode) {
        if (n < 1 || d < 1) throw InvalidInput("HypersurfaceSpec: need n >= 1, d >= 1");
        for (auto& m : mono_) {
            if (static_cast<int>(m.exps.size()) != n)
                throw InvalidInput("HypersurfaceSpec: exponent vector length != n");
            int total = 0;
            for (int e : m.exps) {
                if (e < 0) throw InvalidInput("HypersurfaceSpec: negative exponent");
                total += e;
            }
            if (total != d) throw InvalidInput("HypersurfaceSpec: monomial not of degree d");
            m.coeff = fp_.reduce(m.coeff);
        }
        if (mode_ == SmoothMode::DiagonalCertified) certify_diagonal();
    }

    // Diagonal form sum a_i x_i^d with all a_i nonzero (certified smooth when
    // p does not divide d).
    static HypersurfaceSpec diagonal(int p, int n, int d, const std::vector<int>& a) {
        if (static_cast<int>(a.size()) != n)
            throw InvalidInput("HypersurfaceSpec::diagonal: need n coefficients");
        std::vector<Monomial> ms;
        for (int i = 0; i < n; ++i) {
            Monomial m;
            m.exps.assign(static_cast<size_t>(n), 0);
            m.exps[static_cast<size_t>(i)] = d;
            m.coeff = a[static_cast<size_t>(i)];
            ms.push_back(std::move(m));
        }
        return HypersurfaceSpec(p, n, d, std::move(ms), SmoothMode::DiagonalCertified);
    }

    int p() const { return fp_.p; }
    const Fp& fp() const { return fp_; }
    int n() const { return n_; }
    int d() const { return d_; }
    const std::vector<Monomial>& monomials() const { return mono_; }
    SmoothMode mode() const { return mode_; }

    // f(x) for a point x in F_p^n.
    int eval_point(const std::vector<int>& x) const {
        long long acc = 0;
        for (const auto& m : mono_) {
            int term = m.coeff;
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < m.exps[static_cast<size_t>(j)]; ++k)
                    term = fp_.mul(term, x[static_cast<size_t>(j)]);
            acc += term;
        }
        return fp_.reduce(acc);
    }

    // f(g) for a tuple of polynomials; degree <= d * max deg g_i.
    FpPoly eval_poly(const std::vector<FpPoly>& g) const {
        if (static_cast<int>(g.size()) != n_) throw InvalidInput("eval_poly: tuple length != n");
        FpPoly acc(fp_.p);
        for (const auto& m : mono_) {
            FpPoly term = FpPoly::constant(fp_.p, m.coeff);
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < m.exps[static_cast<size_t>(j)]; ++k)
                    term = term * g[static_cast<size_t>(j)];
            acc = acc + term;
        }
        return acc;
    }

    // Gradient entry (partial f / partial x_j) evaluated at a point.
    int eval_partial_point(int j, const std::vector<int>& x) const {
        long long acc = 0;
        for (const auto& m : mono_) {
            int ej = m.exps[static_cast<size_t>(j)];
            if (ej == 0) continue;
            int term = fp_.mul(m.coeff, fp_.reduce(ej));
            for (int l = 0; l < n_; ++l) {
                int cnt = m.exps[static_cast<size_t>(l)] - (l == j ? 1 : 0);
                for (int k = 0; k < cnt; ++k) term = fp_.mul(term, x[static_cast<size_t>(l)]);
            }
            acc += term;
        }
        return fp_.reduce(acc);
    }

    // #{x in F_p^n : f(x) = 0}, the affine cone count.
    long long count_affine() const {
        long long count = 0;
        std::vector<int> x(static_cast<size_t>(n_), 0);
        do {
            if (eval_point(x) == 0) ++count;
        } while (next_tuple(x, fp_.p));
        return count;
    }

    // #X~(F_p) = (#X - 1)/(p - 1), the projective count.
    long long count_projective() const {
        long long aff = count_affine();
        if ((aff - 1) % (fp_.p - 1) != 0)
            throw IdentityFailure("count_projective: affine count not 1 mod p-1");
        return (aff - 1) / (fp_.p - 1);
    }

    // Symmetric tensor entry c_{j_1..j_d} (indices in [0,n)): the coefficient
    // of the monomial with exponent profile of j, divided by the multinomial
    // d!/prod(E_i!).  Needs p > d so the division is legal.
    int sym_tensor(const std::vector<int>& idx) const {
        if (static_cast<int>(idx.size()) != d_) throw InvalidInput("sym_tensor: index length != d");
        if (fp_.p <= d_) throw InvalidInput("sym_tensor: requires p > d");
        std::vector<int> prof(static_cast<size_t>(n_), 0);
        for (int j : idx) {
            if (j < 0 || j >= n_) throw InvalidInput("sym_tensor: index out of range");
            ++prof[static_cast<size_t>(j)];
        }
        int c = 0;
        for (const auto& m : mono_)
            if (m.exps == prof) { c = m.coeff; break; }
        if (c == 0) return 0;
        // multinomial d! / prod E_i!
        long long multi = factorial(d_);
        for (int e : prof) multi /= factorial(e);
        return fp_.mul(c, fp_.inv(fp_.reduce(multi)));
    }

    // Psi_j(u^(1), ..., u^(d-1)) = d! sum_{j_1..j_{d-1}} c_{j_1..j_{d-1},j}
    // prod u^(k)_{j_k}, for vectors u^(k) in F_p^n.
    int psi(int j, const std::vector<std::vector<int>>& u) const {
        if (static_cast<int>(u.size()) != d_ - 1) throw InvalidInput("psi: need d-1 arguments");
        if (fp_.p <= d_) throw InvalidInput("psi: requires p > d");
        int dfact = fp_.reduce(factorial(d_));
        long long acc = 0;
        std::vector<int> idx(static_cast<size_t>(d_ - 1), 0);
        bool more = d_ > 1;
        if (d_ == 1) return fp_.mul(dfact, sym_tensor({j}));
        do {
            std::vector<int> full = idx;
            full.push_back(j);
            int term = sym_tensor(full);
            if (term != 0) {
                for (int k = 0; k < d_ - 1; ++k)
                    term = fp_.mul(term, u[static_cast<size_t>(k)]
                                             [static_cast<size_t>(idx[static_cast<size_t>(k)])]);
                acc += term;
            }
            more = next_tuple(idx, n_);
        } while (more);
        return fp_.mul(fp_.reduce(acc), dfact);
    }

private:
    void certify_diagonal() const {
        if (d_ % fp_.p == 0)
            throw InvalidInput("HypersurfaceSpec: p divides d, diagonal smoothness fails");
        std::vector<bool> seen(static_cast<size_t>(n_), false);
        for (const auto& m : mono_) {
            int var = -1;
            for (int j = 0; j < n_; ++j)
                if (m.exps[static_cast<size_t>(j)] != 0) {
                    if (var >= 0) throw InvalidInput("HypersurfaceSpec: not diagonal");
                    var = j;
                }
            if (var < 0 || m.coeff == 0) throw InvalidInput("HypersurfaceSpec: zero monomial");
            if (seen[static_cast<size_t>(var)])
                throw InvalidInput("HypersurfaceSpec: repeated diagonal variable");
            seen[static_cast<size_t>(var)] = true;
        }
        for (bool s : seen)
            if (!s) throw InvalidInput("HypersurfaceSpec: diagonal form misses a variable");
    }

    static long long factorial(int k) {
        long long r = 1;
        for (int i = 2; i <= k; ++i) r *= i;
        return r;
    }

public:
    // Odometer over base^|digits| tuples, lowest index fastest; returns false
    // after wrapping back to all zeros.
    static bool next_tuple(std::vector<int>& digits, int base) {
        for (size_t i = 0; i < digits.size(); ++i) {
            if (++digits[i] < base) return true;
            digits[i] = 0;
        }
        return false;
    }

private:
    Fp fp_;
    int n_, d_;
    std::vector<Monomial> mono_;
    SmoothMode mode_;
};

}  // namespace lab
