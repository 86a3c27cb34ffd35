#pragma once

#include <map>
#include <string>
#include <vector>

#include "lab/hypersurface.hpp"
#include "lab/rational.hpp"

namespace lab {

// Integer combination of monomials L^a B^b with a in Z and b in {0, 1, 2},
// where L is the affine-line class and B the formal hypersurface class.
class GClass {
public:
    GClass() = default;

    static GClass term(int a, int b, long long coeff) {
        if (b < 0 || b > 2) throw InvalidInput("GClass: B-degree outside {0,1,2}");
        GClass g;
        if (coeff != 0) g.t_[{a, b}] = coeff;
        return g;
    }
    static GClass zero() { return GClass(); }
    static GClass one() { return term(0, 0, 1); }

    GClass operator+(const GClass& o) const {
        GClass r = *this;
        for (auto& [k, v] : o.t_) {
            long long nv = (r.t_.count(k) ? r.t_[k] : 0) + v;
            if (nv == 0) r.t_.erase(k); else r.t_[k] = nv;
        }
        return r;
    }
    GClass operator-(const GClass& o) const { return *this + o.scaled(-1); }
    GClass scaled(long long s) const {
        GClass r;
        if (s != 0)
            for (auto& [k, v] : t_) r.t_[k] = v * s;
        return r;
    }
    GClass operator*(const GClass& o) const {
        GClass r;
        for (auto& [ka, va] : t_)
            for (auto& [kb, vb] : o.t_) {
                int a = ka.first + kb.first, b = ka.second + kb.second;
                if (b > 2) throw InvalidInput("GClass: product exceeds B-degree cap");
                long long nv = (r.t_.count({a, b}) ? r.t_[{a, b}] : 0) + va * vb;
                if (nv == 0) r.t_.erase({a, b}); else r.t_[{a, b}] = nv;
            }
        return r;
    }
    // Multiply by L^k (k of either sign).
    GClass lshift(int k) const {
        GClass r;
        for (auto& [key, v] : t_) r.t_[{key.first + k, key.second}] = v;
        return r;
    }

    bool operator==(const GClass& o) const { return t_ == o.t_; }

    // Ring map at (L = q, B = c), landing in exact rationals.
    Rat eval(long long q, long long c) const {
        Rat acc;
        for (auto& [key, v] : t_) {
            Rat term = Rat::pow(q, key.first) * Rat(v);
            for (int i = 0; i < key.second; ++i) term = term * Rat(c);
            acc += term;
        }
        return acc;
    }

    // Weighted dimension of a monomial: a + b(n-1); max over support.
    int dim(int n) const {
        int best = kNegInf;
        for (auto& [key, v] : t_)
            best = std::max(best, key.first + key.second * (n - 1));
        return best;
    }

    const std::map<std::pair<int, int>, long long>& terms() const { return t_; }

    std::string str() const {
        if (t_.empty()) return "0";
        std::string s;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += std::to_string(it->second);
            if (it->first.first != 0) s += "*L^" + std::to_string(it->first.first);
            if (it->first.second != 0) s += "*B^" + std::to_string(it->first.second);
        }
        return s;
    }

private:
    std::map<std::pair<int, int>, long long> t_;
};

// #{g in Poly_{<N+1}^n : f(g) = 0 mod t^{N+1}}; 0 for N < 0, #X for N = 0.
long long jet_count(const HypersurfaceSpec& f, int N, long long budget = kDefaultBudget);

// Symbolic class of the N-th jet space, unrolled from the recursion
// [L_N]/L^{(N+1)(n-1)} = [L_{N-1}]/L^{N(n-1)} + L^{N-n-n floor(N/d)} * step,
// step = (L-1) when d does not divide N, and L(B - L^{n-1}) when it does.
GClass jet_class(int n, int d, int N);

// Evaluation of jet_class at (L=p, B=#X) equals jet_count, for all N <= Nmax.
bool jet_recursion_check(const HypersurfaceSpec& f, int Nmax,
                         long long budget = kDefaultBudget);

// The triangular substitution g'_k = sum_{j>=k} C(j,k) x^{j-k} g_j is a
// bijection Lambda_N(f,x) -> Lambda_N(f,0), verified on enumerated sets.
bool lambda_jet_bijection_check(const HypersurfaceSpec& f, int N, int x,
                                long long budget = kDefaultBudget);

// #V_{d+gamma-1} = #Lambda_gamma(f, infinity) * p^{n(e+1-gamma)}, with the
// left side enumerated directly from the definition ord f(y) < -d-gamma+1.
bool V_lambda_check(const HypersurfaceSpec& f, int e, int gamma,
                    long long budget = kDefaultBudget);

// Direct count of V_{d+gamma-1} inside the y-window of e+1 negative exponents.
long long count_V(const HypersurfaceSpec& f, int e, int gamma,
                  long long budget = kDefaultBudget);

}  // namespace lab
