#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lab/approx.hpp"
#include "lab/cyc.hpp"
#include "lab/hypersurface.hpp"
#include "lab/rational.hpp"

namespace lab {

// Derived exponents shared by the delta-method checks.
struct CircleParams {
    int n, d, e;
    long long mu;     // e(n-d) + n - 1 = (e+1)n - (de+1)
    Rat nu_tilde;     // (n - 2^d (d-1)) / 2^{d-2}
    int gamma, delta; // arc knobs
    int m0;           // ceil((de+1)/2)
};

CircleParams circle_params(const HypersurfaceSpec& f, int e, int gamma = -1, int delta = -1);

// Histogram of the value map: hist[idx] = #{g in Poly_{<e+1}^n : the de+1
// coefficients of f(g) encode to idx in base p}.  Index = sum_i c_i p^i.
std::vector<long long> coeff_histogram(const HypersurfaceSpec& f, int e,
                                       long long budget = kDefaultBudget);

// #M_e = #{g : f(g) = 0}, degree-e moduli count; equals coeff_histogram[0].
long long count_Me(const HypersurfaceSpec& f, int e, long long budget = kDefaultBudget);

// S(alpha) = sum_g zeta^{<alpha, f(g)>} with the pairing b_1 c_0 + ... +
// b_{de+1} c_{de} read off a precomputed histogram.
CycSum exp_sum_from_hist(int p, const std::vector<long long>& hist, const std::vector<int>& b);
CycSum exp_sum(const HypersurfaceSpec& f, int e, const std::vector<int>& b,
               long long budget = kDefaultBudget);

// sum over all alpha in F_p^{de+1} of S(alpha) equals p^{de+1} #M_e, and the
// sum is a rational integer.  Returns (lhs, rhs).
std::pair<long long, long long> orthogonality_check(const HypersurfaceSpec& f, int e,
                                                    long long budget = kDefaultBudget);

// Complete local sum T(h2) = sum over h1 (deg < deg h2, coprime, including
// non-monic and zero when deg h2 = 0) and g in (Poly_{<deg h2})^n of
// zeta^{res((h1/h2) f(g))}; rational integer by Galois invariance.
long long singular_T(const HypersurfaceSpec& f, const FpPoly& h2,
                     long long budget = kDefaultBudget);

// S_m = sum over monic h2 of degree m of T(h2); S_0 = T(1) = 1.
long long singular_Sm(const HypersurfaceSpec& f, int m, long long budget = kDefaultBudget);

// T is multiplicative: T(l1 l2) = T(l1) T(l2) for coprime monic l1, l2.
bool crt_mult_check(const HypersurfaceSpec& f, const FpPoly& l1, const FpPoly& l2,
                    long long budget = kDefaultBudget);

// Euler-product regrouping: S_m recomputed via factorization of every monic
// h2 of degree m into prime powers matches the direct sum.
bool euler_coeff_check(const HypersurfaceSpec& f, int m, long long budget = kDefaultBudget);

// #Lambda_N(f, x) = #{g in Poly_{<N}^n : f(g) = 0 mod (t-x)^N}; Lambda_0 has
// one element.  x = nullopt is the place at infinity, realized by the window
// of negative exponents; it enumerates the identical congruence at 0.
long long count_lambda(const HypersurfaceSpec& f, int N, std::optional<int> x,
                       long long budget = kDefaultBudget);

// The primitive subset: additionally g != 0 mod (t - x).
long long count_lambda_star(const HypersurfaceSpec& f, int N, std::optional<int> x,
                            long long budget = kDefaultBudget);

// Local density U_i(f)_x = T((t-x)^i), plus the structural identity
// U_i = p^i #Lambda_i - p^{n+i-1} #Lambda_{i-1} checked on the fly.
long long local_Ui(const HypersurfaceSpec& f, int i, int x,
                   long long budget = kDefaultBudget);

// Telescoping partial product in integer form:
// p^{Nn} + sum_{i=1..N} U_i p^{(N-i)n} = p^N #Lambda_N.  Returns (lhs, rhs).
std::pair<long long, long long> telescoping_check(const HypersurfaceSpec& f, int N, int x,
                                                  long long budget = kDefaultBudget);

// One pass over the place x: compute #Lambda_0..#Lambda_Nmax and U_1..U_Nmax
// once, then verify the structural identity for each U_i and the telescoping
// identity for every N <= Nmax.
bool telescoping_sweep(const HypersurfaceSpec& f, int Nmax, int x,
                       long long budget = kDefaultBudget);

struct DensityReport {
    std::vector<long long> lambda;   // #Lambda_0 .. #Lambda_Nmax
    std::vector<long long> lambda_star;
    std::vector<Rat> r;              // r_N = #Lambda_N / p^{N(n-1)}
    std::optional<Rat> limit;        // closed-form limit, present when n > d
    bool recursion_ok;               // counts satisfy the head + primitive-sum recursion
    bool stabilization_ok;           // #Lambda*_N = p^{(N-1)(n-1)}(p-1)#X~ for N >= 1
    bool resummation_ok;             // r_N matches the resummed closed form per N
};

// Full local-density stack at the place x = 0: enumerated jet counts against
// the recursion with head exponent n(N - ceil(N/d)), the primitive-count
// stabilization, and (for n > d) the exact geometric resummation
// r_N = p^{N - n ceil(N/d)} + C (1 - p^{-(K+1)(n-d)}), K = floor((N-1)/d),
// C = p^{-(n-2)} #X~ (1 - 1/p) / (1 - p^{-(n-d)}).
DensityReport density_check(const HypersurfaceSpec& f, int Nmax,
                            long long budget = kDefaultBudget);

// Perturbation smallness: for m' <= e+1-gamma, deg h2 = m', theta with
// ord theta <= -de-2+gamma and window support down to -de-1, and random g-bar
// (deg <= e), q (deg <= e - m'), the series theta(f(g-bar + h2 q) - f(h2 q))
// has ord <= -e-3+m'+gamma <= -2, decidably at the stored precision.
// With negative_control the bound -2 is probed at m'+gamma = e+2, where it
// must fail for some sample.
bool order_small_check(const HypersurfaceSpec& f, int e, int m_prime, int gamma,
                       int trials, unsigned seed, bool negative_control = false,
                       long long budget = kDefaultBudget);

struct MajorMinorReport {
    long long total_lhs, total_rhs;                      // identity (a)
    std::vector<std::pair<int, bool>> strata;            // (m', identity (b) holds)
    bool v_count_ok;                                     // identity (c)
    std::vector<std::pair<std::string, long long>> cardinalities;
    bool pass;
};

// Integer identities across the arc decomposition of F_p^{de+1}:
//  (a) sum over all alpha of S(alpha) = p^{de+1} #M_e;
//  (b) for each major stratum m', sum over its alpha of S(alpha) * p^{n m'}
//      = S_{m'} * p^gamma * #V_{d+gamma-1};
//  (c) #V_{d+gamma-1} = #Lambda_gamma(f, infinity) * p^{n(e+1-gamma)}.
MajorMinorReport major_minor_check(const HypersurfaceSpec& f, int e, int gamma, int delta,
                                   long long budget = kDefaultBudget);

// Moduli of degree-e maps to projective space versus pointed counts:
// (q-1) #Mor_e = #M_e - (q+1) #M_{e-1} + q #M_{e-2} with #M_{-1} = 1,
// and for e = 1 the line count: #Mor_1 = (q^3 - q) #F_1 when X has lines
// counted by #F_1 = (#M_1 - (q^2-1)#X~ - 1) / ((q-1)(q^3-q)).
struct MorLinesReport {
    long long mor_lhs, mor_rhs;   // (q-1)#Mor_e both ways
    std::optional<long long> lines;  // #F_1 when e = 1 and divisible
    bool pass;
};
MorLinesReport mor_lines_check(const HypersurfaceSpec& f, int e,
                               long long budget = kDefaultBudget);

// Membership agreement between two evaluators of the Weyl system: for u in
// (Poly_{<E}^n)^{d-1}, ord{alpha Psi_j(u)} < -E for all j computed (i) from
// the truncated Laurent product and (ii) from the bilinear coefficient
// formula sum b_{i_1+..+i_{d-1}+i+1} c_{j_1..j_{d-1},j} prod u-coefficients.
bool weyl_id_check(const HypersurfaceSpec& f, int E, const std::vector<int>& b,
                   long long budget = kDefaultBudget);

// Shrinking lemma for exponential-sum supports: with alpha = h1/h2 + theta,
// rho = deg h2, psi = ord theta (kNegInf for theta = 0), whenever
//   (1)  -E-1-(d-1)s < -rho  and  (d-1)(E-1-s) + psi < -rho, and
//   (2)  (d-1)(E-1-s) < rho  or  -E-(d-1)s - psi <= rho,
// every u in (Poly_{<E-s}^n)^{d-1} with ord{alpha Psi_j(u)} < -E-(d-1)s for
// all j in fact satisfies Psi_j(u) = 0 identically.  Verified by enumeration.
bool weyl_vanish_check(const HypersurfaceSpec& f, int E, int s,
                       const FpPoly& h1, const FpPoly& h2, const TruncLaurent* theta,
                       long long budget = kDefaultBudget);

// The diagonal of the Weyl system detects singular points: Psi_j(h,..,h) = 0
// for all j iff grad f vanishes at h(t); for smooth f only h = 0 survives
// (count == 1).  With a singular f the count exceeds 1 (negative control).
long long diag_vanish_count(const HypersurfaceSpec& f, int E, long long budget = kDefaultBudget);

// Exponent bookkeeping: for m in [Delta, Delta + window],
// 2^d m - floor(m/(d-1)) n <= floor((e+1)/(2d-2)) (2^d(d-1) - n) + 2^d(d-1)
// under n > 2^d (d-1), and past the window each full period of d-1 steps
// changes the left side by 2^d(d-1) - n < 0.
bool bounds_check(int n, int d, int e, int window = 6);

}  // namespace lab
