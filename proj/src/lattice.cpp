#include "lab/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "lab/hypersurface.hpp"

namespace lab {

namespace {

int floordiv(int a, int b) {
    int q = a / b, r = a % b;
    return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

FpPoly lentry_to_poly(const LEntry& e, int p, int shift) {
    FpPoly out(p);
    for (auto& [exp, c] : e) {
        if (exp - shift < 0) throw InvalidInput("lattice: exponent below scaling shift");
        out.set_coeff(exp - shift, c);
    }
    return out;
}

LEntry poly_to_lentry(const FpPoly& a, int shift) {
    LEntry e;
    for (int k = 0; k <= a.deg(); ++k)
        if (a.coeff(k) != 0) e[k + shift] = a.coeff(k);
    return e;
}

int matrix_min_exp(const TLattice& lat) {
    int lo = 0;
    for (int i = 0; i < lat.n(); ++i)
        for (int j = 0; j < lat.n(); ++j)
            for (auto& [exp, c] : lat.at(i, j))
                lo = std::min(lo, exp);
    return lo;
}

int row_deg(const std::vector<FpPoly>& row) {
    int d = kNegInf;
    for (const auto& a : row) d = std::max(d, a.deg());
    return d;
}

// Rightmost entry achieving the row degree.
int pivot_index(const std::vector<FpPoly>& row) {
    int d = row_deg(row);
    for (int j = static_cast<int>(row.size()); j-- > 0;)
        if (row[static_cast<size_t>(j)].deg() == d) return j;
    return -1;
}

FpPoly poly_det(const std::vector<std::vector<FpPoly>>& a, int p) {
    size_t n = a.size();
    if (n == 1) return a[0][0];
    FpPoly acc(p);
    for (size_t i = 0; i < n; ++i) {
        if (a[i][0].is_zero()) continue;
        std::vector<std::vector<FpPoly>> minor;
        for (size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            minor.emplace_back(a[r].begin() + 1, a[r].end());
        }
        FpPoly term = a[i][0] * poly_det(minor, p);
        acc = (i % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

// Weak-Popov form of the rows (in place); terminates by degree-sum descent.
void weak_popov(std::vector<std::vector<FpPoly>>& rows, const Fp& fp) {
    size_t n = rows.size();
    for (;;) {
        std::vector<int> piv(n);
        for (size_t i = 0; i < n; ++i) {
            if (row_deg(rows[i]) <= kNegInf / 2)
                throw InvalidInput("reduce: singular basis matrix");
            piv[i] = pivot_index(rows[i]);
        }
        // Find the lowest pivot column held by two rows.
        int ci = -1, cj = -1;
        for (size_t i = 0; i < n && ci < 0; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (piv[i] == piv[j]) { ci = static_cast<int>(i); cj = static_cast<int>(j); break; }
        if (ci < 0) return;  // all pivots distinct
        // Reduce the row of larger degree by the other (ties: reduce the
        // higher index, keeping the rule deterministic).
        size_t a = static_cast<size_t>(ci), b = static_cast<size_t>(cj);
        if (row_deg(rows[a]) > row_deg(rows[b])) std::swap(a, b);
        int col = piv[static_cast<size_t>(ci)];
        const FpPoly& small = rows[a][static_cast<size_t>(col)];
        const FpPoly& big = rows[b][static_cast<size_t>(col)];
        int factor = fp.mul(big.lc(), fp.inv(small.lc()));
        int kshift = big.deg() - small.deg();
        for (size_t j = 0; j < n; ++j)
            rows[b][j] = rows[b][j] - rows[a][j].shifted(kshift).scaled(factor);
    }
}

std::vector<std::vector<FpPoly>> basis_rows(const TLattice& lat, int shift) {
    int n = lat.n();
    std::vector<std::vector<FpPoly>> rows(
        static_cast<size_t>(n), std::vector<FpPoly>(static_cast<size_t>(n), FpPoly(lat.p())));
    // Basis vectors are the columns of the lattice matrix.
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            rows[static_cast<size_t>(k)][static_cast<size_t>(i)] =
                lentry_to_poly(lat.at(i, k), lat.p(), shift);
    return rows;
}

}  // namespace

ReducedBasis reduce(const TLattice& lat) {
    Fp fp(lat.p());
    int shift = matrix_min_exp(lat);
    auto rows = basis_rows(lat, shift);
    FpPoly det = poly_det(rows, lat.p());
    if (det.is_zero()) throw InvalidInput("reduce: singular basis matrix");
    weak_popov(rows, fp);
    std::vector<size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        int da = row_deg(rows[a]), db = row_deg(rows[b]);
        return da != db ? da < db : a < b;
    });
    ReducedBasis out;
    int degsum = 0;
    for (size_t k : order) {
        int d = row_deg(rows[k]);
        degsum += d;
        out.sigma.push_back(d + shift);
        std::vector<LEntry> r;
        for (const auto& a : rows[k]) r.push_back(poly_to_lentry(a, shift));
        out.rows.push_back(std::move(r));
    }
    if (degsum != det.deg())
        throw IdentityFailure("reduce: sum of minima does not match deg det");
    return out;
}

std::vector<int> minima(const TLattice& lat) { return reduce(lat).sigma; }

int det_deg(const TLattice& lat) {
    int shift = matrix_min_exp(lat);
    auto rows = basis_rows(lat, shift);
    FpPoly det = poly_det(rows, lat.p());
    if (det.is_zero()) throw InvalidInput("det_deg: singular basis matrix");
    return det.deg() + lat.n() * shift;
}

long long nu(const std::vector<int>& sigma, int R) {
    long long acc = 0;
    for (int s : sigma) acc += std::max(0, R - s);
    return acc;
}

long long nu(const TLattice& lat, int R) { return nu(minima(lat), R); }

long long nu_bruteforce(const TLattice& lat, int R, int degree_cap, long long budget) {
    ReducedBasis red = reduce(lat);
    int n = lat.n(), p = lat.p();
    if (degree_cap < R - red.sigma.front())
        throw InvalidInput("nu_bruteforce: degree cap below R - sigma_1");
    long long digits = static_cast<long long>(n) * (degree_cap + 1);
    check_budget(state_count(p, digits), budget, "nu_bruteforce");
    // Work over a uniform polynomial scaling of the reduced rows.
    int shift = 0;
    for (const auto& r : red.rows)
        for (const auto& e : r)
            for (auto& [exp, c] : e) shift = std::min(shift, exp);
    std::vector<std::vector<FpPoly>> rows(
        static_cast<size_t>(n), std::vector<FpPoly>(static_cast<size_t>(n), FpPoly(p)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rows[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                lentry_to_poly(red.rows[static_cast<size_t>(i)][static_cast<size_t>(j)], p, shift);
    int bound = R - shift;  // |v| < 2^R  <=>  scaled degrees < R - shift
    long long count = 0;
    std::vector<int> digitsv(static_cast<size_t>(digits), 0);
    do {
        std::vector<FpPoly> u;
        for (int i = 0; i < n; ++i) {
            std::vector<long long> cs(digitsv.begin() + i * (degree_cap + 1),
                                      digitsv.begin() + (i + 1) * (degree_cap + 1));
            u.emplace_back(p, cs);
        }
        bool short_vec = true;
        for (int j = 0; j < n && short_vec; ++j) {
            FpPoly vj(p);
            for (int i = 0; i < n; ++i)
                vj = vj + u[static_cast<size_t>(i)] * rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (vj.deg() >= bound) short_vec = false;
        }
        if (short_vec) ++count;
    } while (HypersurfaceSpec::next_tuple(digitsv, p));
    long long logv = 0, c = count;
    while (c > 1 && c % p == 0) { c /= p; ++logv; }
    if (c != 1) throw IdentityFailure("nu_bruteforce: count is not a power of p");
    return logv;
}

TLattice dual(const TLattice& lat) {
    int n = lat.n(), p = lat.p();
    int shift = matrix_min_exp(lat);
    // Polynomial matrix P with M = t^{shift} P; dual basis is
    // t^{-deg det M} adj(M)^T = t^{-deg det P - shift} adj(P)^T.
    std::vector<std::vector<FpPoly>> P(
        static_cast<size_t>(n), std::vector<FpPoly>(static_cast<size_t>(n), FpPoly(p)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            P[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                lentry_to_poly(lat.at(i, j), p, shift);
    FpPoly det = poly_det(P, p);
    if (det.is_zero()) throw InvalidInput("dual: singular basis matrix");
    int off = -det.deg() - shift;
    TLattice out(p, n);
    if (n == 1) {
        LEntry one;
        one[off] = 1;
        out.set(0, 0, one);
        return out;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // adj(P)^T[i][j] = cofactor C_{ij} = (-1)^{i+j} det(P without row i, col j).
            std::vector<std::vector<FpPoly>> minor;
            for (int r = 0; r < n; ++r) {
                if (r == i) continue;
                std::vector<FpPoly> row;
                for (int cidx = 0; cidx < n; ++cidx)
                    if (cidx != j) row.push_back(P[static_cast<size_t>(r)][static_cast<size_t>(cidx)]);
                minor.push_back(std::move(row));
            }
            FpPoly cof = poly_det(minor, p);
            if ((i + j) % 2 == 1) cof = FpPoly(p) - cof;
            out.set(i, j, poly_to_lentry(cof, off));
        }
    }
    return out;
}

TLattice lattice_ab(const ShrinkInstance& inst) {
    int n = inst.n, p = inst.p;
    if (inst.b <= 0) throw InvalidInput("lattice_ab: need b > 0");
    if (static_cast<int>(inst.U.size()) != n)
        throw InvalidInput("lattice_ab: U shape mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (inst.U[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                inst.U[static_cast<size_t>(j)][static_cast<size_t>(i)])
                throw InvalidInput("lattice_ab: U must be symmetric");
    TLattice out(p, 2 * n);
    for (int i = 0; i < n; ++i) {
        LEntry ta;
        ta[-inst.a] = 1;
        out.set(i, i, ta);
        LEntry tb;
        tb[inst.b] = 1;
        out.set(n + i, n + i, tb);
        for (int j = 0; j < n; ++j) {
            LEntry e;
            for (auto& [exp, c] : inst.U[static_cast<size_t>(i)][static_cast<size_t>(j)])
                e[exp + inst.b] = c;
            out.set(n + i, j, std::move(e));
        }
    }
    return out;
}

ShrinkResult shrink_check(const ShrinkInstance& inst, int s) {
    if (s < 0) throw InvalidInput("shrink_check: need s >= 0");
    long long lhs = nu(lattice_ab(inst), 0);
    ShrinkInstance shrunk = inst;
    shrunk.a = inst.a - s;
    shrunk.b = inst.b + s;
    long long rhs = nu(lattice_ab(shrunk), -s) +
                    static_cast<long long>(inst.n) * s +
                    static_cast<long long>(inst.n) * std::max(floordiv(inst.a - inst.b, 2), 0);
    return ShrinkResult{lhs, rhs, lhs <= rhs};
}

ShrinkResult shrink_check_sound(const ShrinkInstance& inst, int s) {
    if (s < 0) throw InvalidInput("shrink_check_sound: need s >= 0");
    long long lhs = nu(lattice_ab(inst), 0);
    ShrinkInstance shrunk = inst;
    shrunk.a = inst.a - s;
    shrunk.b = inst.b + s;
    long long rhs = nu(lattice_ab(shrunk), 0) +
                    static_cast<long long>(inst.n) * s +
                    static_cast<long long>(inst.n) * std::max(floordiv(inst.a - inst.b, 2), 0);
    return ShrinkResult{lhs, rhs, lhs <= rhs};
}

bool shrink_self_dual(const ShrinkInstance& inst) {
    std::vector<int> sigma = minima(lattice_ab(inst));
    int n2 = 2 * inst.n;
    for (int i = 0; i < n2; ++i)
        if (sigma[static_cast<size_t>(i)] + sigma[static_cast<size_t>(n2 - 1 - i)] !=
            inst.b - inst.a)
            return false;
    return true;
}

}  // namespace lab
