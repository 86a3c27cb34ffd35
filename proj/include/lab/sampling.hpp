#pragma once

#include <random>
#include <vector>

#include "lab/lattice.hpp"
#include "lab/poly.hpp"

namespace lab {

// Seeded samplers shared by the CLI suites and the test oracles.  All draws
// go through std::mt19937 with explicit seeds so reports stay deterministic.

inline std::vector<int> rand_digits(int len, int p, std::mt19937& rng) {
    std::uniform_int_distribution<int> dist(0, p - 1);
    std::vector<int> out(static_cast<size_t>(len));
    for (int& v : out) v = dist(rng);
    return out;
}

inline FpPoly rand_fppoly(int p, int maxdeg, std::mt19937& rng) {
    std::uniform_int_distribution<int> dist(0, p - 1);
    FpPoly out(p);
    for (int k = 0; k <= maxdeg; ++k) out.set_coeff(k, dist(rng));
    return out;
}

inline LEntry rand_lentry(int p, int lo, int hi, std::mt19937& rng) {
    std::uniform_int_distribution<int> cdist(0, p - 1);
    LEntry e;
    for (int k = lo; k <= hi; ++k) {
        int c = cdist(rng);
        if (c != 0) e[k] = c;
    }
    return e;
}

// Random full-rank lattice: lower triangular with monomial diagonal t^{s_i}
// (nonsingular by construction), random Laurent entries below the diagonal.
inline TLattice rand_lattice(int p, int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> sdist(-2, 2);
    TLattice lat(p, n);
    for (int j = 0; j < n; ++j) {
        LEntry diag;
        diag[sdist(rng)] = 1;
        lat.set(j, j, std::move(diag));
        for (int i = j + 1; i < n; ++i) lat.set(i, j, rand_lentry(p, -2, 2, rng));
    }
    return lat;
}

inline ShrinkInstance rand_shrink(std::mt19937& rng) {
    std::uniform_int_distribution<int> pdist(0, 1), ndist(1, 2), adist(-1, 4), bdist(1, 3);
    ShrinkInstance inst;
    inst.p = pdist(rng) == 0 ? 3 : 5;
    inst.n = ndist(rng);
    inst.a = adist(rng);
    inst.b = bdist(rng);
    inst.U.assign(static_cast<size_t>(inst.n),
                  std::vector<LEntry>(static_cast<size_t>(inst.n)));
    for (int i = 0; i < inst.n; ++i)
        for (int j = i; j < inst.n; ++j) {
            LEntry e = rand_lentry(inst.p, -2, 2, rng);
            inst.U[static_cast<size_t>(i)][static_cast<size_t>(j)] = e;
            inst.U[static_cast<size_t>(j)][static_cast<size_t>(i)] = e;
        }
    return inst;
}

}  // namespace lab
