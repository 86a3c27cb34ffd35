#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lab/laurent.hpp"
#include "lab/linalg.hpp"

namespace lab {

// A rational approximation alpha = h1/h2 + theta with h2 monic, coprime to
// h1, deg h1 < deg h2 = m_prime.
struct RatApprox {
    FpPoly h1;
    FpPoly h2;
    TruncLaurent theta;
    int m_prime;
};

// Hankel-kernel Pade solving on the window b_1..b_{m+s}: returns (h1, h2,
// theta) with deg h2 <= m, h2 monic, gcd(h1,h2)=1 and ord(alpha h2 - h1) < -s,
// or nothing iff the s x (m+1) Hankel matrix has trivial kernel.  The kernel
// vector with maximal top index is selected, so deg h2 is the maximal
// admissible degree <= m before gcd reduction.
std::optional<RatApprox> pade(const TruncLaurent& alpha, int m, int s);

// Membership in A^{de+1}_m: the (de+1-m) x (m+1) Hankel matrix built from b
// is rank-deficient.  Always true for m >= ceil((de+1)/2).
bool in_Am(const std::vector<int>& b, int m, int p);

// Smallest m with in_Am(b, m); at most ceil((len(b))/2).
int min_Am(const std::vector<int>& b, int p);

// Major-arc location: the unique stratum m' <= m with
// rk A_{b,m'} <= m' and rk A*_{b,m'} = m' (A* = A minus its last column),
// together with the witness (h1, h2, theta), ord theta <= -de-2+gamma.
// Returns nothing when alpha has no admissible approximation of degree <= m.
std::optional<std::pair<int, RatApprox>> locate_major(const std::vector<int>& b,
                                                      int p, int d, int e, int m, int gamma);

enum class ArcLabel { Major, Minor };

struct ArcEntry {
    std::vector<int> alpha;          // b_1 .. b_{de+1}
    ArcLabel label;
    int m;                           // stratum index m' (major) or m (minor)
    std::optional<RatApprox> approx; // present iff major
};

struct ArcTable {
    int p, d, e, gamma, delta, m0;
    std::vector<ArcEntry> entries;
    // cardinalities[label string] in deterministic order
    std::vector<std::pair<std::string, long long>> cardinalities() const;
    std::string csv() const;  // columns: alpha_coeffs,label,m_prime,h1,h2,theta_ord
};

inline std::string arc_label_str(const ArcEntry& en) {
    return (en.label == ArcLabel::Major ? "Major(" : "Minor(") + std::to_string(en.m) + ")";
}

// Partition of F_p^{de+1} into major strata (membership in M_{Delta,gamma},
// stratified by exact denominator degree m') and minor strata
// Minor(m) = A_{m+1} - A_m - majors, Delta <= m <= m0 - 1.
ArcTable stratify_arcs(int p, int d, int e, int gamma, int delta,
                       long long budget = kDefaultBudget);

// Parameter helpers shared across modules.
inline int default_gamma(int e) { return (e + 2) / 2; }   // ceil((e+1)/2)
inline int default_delta(int e) { return (e + 1) / 2; }   // floor((e+1)/2)
inline int m0_of(int d, int e) { return (d * e + 2) / 2; } // ceil((de+1)/2)

}  // namespace lab
