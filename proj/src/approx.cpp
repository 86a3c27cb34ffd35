#include "lab/approx.hpp"

#include <map>

#include "lab/hypersurface.hpp"

namespace lab {

namespace {

// b_i = coefficient of t^{-i} of alpha, for i = 1..len.
std::vector<int> read_b(const TruncLaurent& alpha, int len) {
    std::vector<int> b(static_cast<size_t>(len), 0);
    for (int i = 1; i <= len; ++i) b[static_cast<size_t>(i - 1)] = alpha.coeff_at(-i);
    return b;
}

// Hankel matrix with rows b_i..b_{i+cols-1} for i = 1..rows (1-indexed b).
FpMat hankel(const std::vector<int>& b, int p, int rows, int cols) {
    FpMat M(p, std::max(rows, 0), cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            M.set(i, j, b[static_cast<size_t>(i + j)]);
    return M;
}

// Polynomial part of alpha * h2 where alpha has the given b-coefficients:
// coefficient of t^k is sum_{j > k} c_j b_{j-k}.
FpPoly poly_part(const std::vector<int>& b, const FpPoly& h2) {
    const Fp& fp = h2.fp();
    FpPoly h1(h2.p());
    for (int k = 0; k < h2.deg(); ++k) {
        long long acc = 0;
        for (int j = k + 1; j <= h2.deg(); ++j) {
            int bi = j - k;  // index into b_1..b_len
            if (bi <= static_cast<int>(b.size()))
                acc += static_cast<long long>(h2.coeff(j)) * b[static_cast<size_t>(bi - 1)];
        }
        h1.set_coeff(k, fp.reduce(acc));
    }
    return h1;
}

TruncLaurent theta_of(const TruncLaurent& alpha, const FpPoly& h1, const FpPoly& h2,
                      int lo_out) {
    TruncLaurent r = alpha * TruncLaurent::from_poly(h2) - TruncLaurent::from_poly(h1);
    return laurent_div_poly(r, h2, lo_out);
}

// Coprimality with the gcd(0, h2) = h2 convention.
bool coprime_pair(const FpPoly& h1, const FpPoly& h2) {
    if (h1.is_zero()) return h2.deg() == 0;
    return poly_coprime(h1, h2);
}

}  // namespace

std::optional<RatApprox> pade(const TruncLaurent& alpha, int m, int s) {
    if (m < 0 || s < 1) throw InvalidInput("pade: need m >= 0, s >= 1");
    std::vector<int> b = read_b(alpha, m + s);  // throws PrecisionError if window short
    FpMat M = hankel(b, alpha.p(), s, m + 1);
    auto kern = M.kernel_basis();
    if (kern.empty()) return std::nullopt;
    // The basis vector for the largest free column has maximal top index.
    const std::vector<int>& c = kern.back();
    FpPoly h2(alpha.p(), std::vector<long long>(c.begin(), c.end()));
    FpPoly h1 = poly_part(b, h2);
    FpPoly g = poly_gcd(h1, h2);
    if (g.deg() >= 1) {
        h1 = poly_divmod(h1, g).first;
        h2 = poly_divmod(h2, g).first;
    }
    int scale = alpha.fp().inv(h2.lc());
    h1 = h1.scaled(scale);
    h2 = h2.scaled(scale);
    int lo_out = alpha.exact_below() ? -(m + s) - h2.deg() - 2 : alpha.lo();
    RatApprox out{h1, h2, theta_of(alpha, h1, h2, lo_out), h2.deg()};
    // Re-verify the advertised contract before returning.
    TruncLaurent r = alpha * TruncLaurent::from_poly(h2) - TruncLaurent::from_poly(h1);
    if (!r.ord_at_most(-s - 1))
        throw IdentityFailure("pade: contract ord(alpha h2 - h1) < -s violated");
    if (!coprime_pair(h1, h2))
        throw IdentityFailure("pade: gcd reduction failed");
    return out;
}

bool in_Am(const std::vector<int>& b, int m, int p) {
    if (m < 0) throw InvalidInput("in_Am: negative m");
    int len = static_cast<int>(b.size());
    int rows = len - m;
    if (rows <= 0) return true;
    FpMat M = hankel(b, p, rows, m + 1);
    return M.rank() < m + 1;
}

int min_Am(const std::vector<int>& b, int p) {
    for (int m = 0;; ++m)
        if (in_Am(b, m, p)) return m;
}

std::optional<std::pair<int, RatApprox>> locate_major(const std::vector<int>& b,
                                                      int p, int d, int e, int m, int gamma) {
    int de1 = d * e + 1;
    if (static_cast<int>(b.size()) != de1)
        throw InvalidInput("locate_major: need de+1 coefficients");
    if (gamma < 1) throw InvalidInput("locate_major: gamma must be positive");
    Fp fp(p);
    for (int mp = 0; mp <= m; ++mp) {
        int rows = de1 - gamma - mp;
        FpMat A = hankel(b, p, rows, mp + 1);
        FpMat Astar = hankel(b, p, rows, mp);
        int rkA = A.rank();
        if (!(rkA <= mp && Astar.rank() == mp)) continue;
        // rk A* = m' forces rk A = m', so the kernel is one-dimensional and
        // its generator has c_{m'} != 0.
        auto kern = A.kernel_basis();
        if (kern.size() != 1 || kern[0][static_cast<size_t>(mp)] == 0)
            throw IdentityFailure("locate_major: kernel shape contradicts rank conditions");
        std::vector<int> c = kern[0];
        int scale = fp.inv(c[static_cast<size_t>(mp)]);
        for (int& v : c) v = fp.mul(v, scale);
        FpPoly h2(p, std::vector<long long>(c.begin(), c.end()));
        FpPoly h1 = poly_part(b, h2);
        if (!coprime_pair(h1, h2))
            throw IdentityFailure("locate_major: witness pair not coprime");
        TruncLaurent alpha = TruncLaurent::from_b_coeffs(p, b);
        TruncLaurent theta = theta_of(alpha, h1, h2, -de1 - 1);
        if (!theta.ord_at_most(-de1 - 1 + gamma))
            throw IdentityFailure("locate_major: ord theta bound violated by witness");
        return std::make_pair(mp, RatApprox{h1, h2, theta, mp});
    }
    return std::nullopt;
}

std::vector<std::pair<std::string, long long>> ArcTable::cardinalities() const {
    // (kind, m) -> count, majors first, each by ascending m.
    std::map<std::pair<int, int>, long long> acc;
    for (const auto& en : entries)
        ++acc[{en.label == ArcLabel::Major ? 0 : 1, en.m}];
    std::vector<std::pair<std::string, long long>> out;
    for (const auto& [key, cnt] : acc) {
        std::string name = (key.first == 0 ? "Major(" : "Minor(") + std::to_string(key.second) + ")";
        out.emplace_back(name, cnt);
    }
    return out;
}

std::string ArcTable::csv() const {
    std::string out = "alpha_coeffs,label,m_prime,h1,h2,theta_ord\n";
    for (const auto& en : entries) {
        std::string alpha;
        for (size_t i = 0; i < en.alpha.size(); ++i) {
            if (i) alpha += ";";
            alpha += std::to_string(en.alpha[i]);
        }
        out += alpha + "," + (en.label == ArcLabel::Major ? "Major" : "Minor") + ",";
        out += std::to_string(en.m) + ",";
        if (en.approx) {
            out += en.approx->h1.str() + "," + en.approx->h2.str() + ",";
            const TruncLaurent& th = en.approx->theta;
            if (th.is_known_zero()) {
                out += "-inf";
            } else if (auto o = th.ord_known()) {
                out += std::to_string(*o);
            } else {
                // window all zero, tail unknown: record the decidable bound
                out += "<" + std::to_string(th.lo());
            }
        } else {
            out += ",,";
        }
        out += "\n";
    }
    return out;
}

ArcTable stratify_arcs(int p, int d, int e, int gamma, int delta, long long budget) {
    if (gamma < delta)
        throw InvalidInput("stratify_arcs: gamma < delta breaks the A_Delta inclusion");
    if (delta < 0 || gamma < 1) throw InvalidInput("stratify_arcs: bad arc parameters");
    int de1 = d * e + 1;
    check_budget(state_count(p, de1), budget, "stratify_arcs");
    ArcTable table{p, d, e, gamma, delta, m0_of(d, e), {}};
    std::vector<int> b(static_cast<size_t>(de1), 0);
    do {
        ArcEntry en;
        en.alpha = b;
        auto loc = locate_major(b, p, d, e, delta, gamma);
        if (loc) {
            en.label = ArcLabel::Major;
            en.m = loc->first;
            if (en.m > e + 1 - gamma)
                throw IdentityFailure("stratify_arcs: major stratum exceeds e+1-gamma");
            en.approx = loc->second;
        } else {
            int mmin = min_Am(b, p);
            if (mmin - 1 < delta)
                throw IdentityFailure("stratify_arcs: A_Delta not contained in the major set");
            if (mmin > table.m0)
                throw IdentityFailure("stratify_arcs: A_{m0} is not the full space");
            en.label = ArcLabel::Minor;
            en.m = mmin - 1;
        }
        table.entries.push_back(std::move(en));
    } while (HypersurfaceSpec::next_tuple(b, p));
    return table;
}

}  // namespace lab
