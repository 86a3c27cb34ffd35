#include "lab/hodge.hpp"

#include <algorithm>

namespace lab {

HDSeries hd_geo_div(const HDSeries& a, int k) {
    if (k < 1) throw InvalidInput("hd_geo_div: need k >= 1");
    if (a.exact()) throw InvalidInput("hd_geo_div: needs a floor (result has infinite tail)");
    HDSeries r(a.floor(), a.cap());
    // result(a0,b0) = sum_j A(a0+kj, b0+kj): spread every known position
    // down by j steps of (k,k) while it stays at or above the floor
    for (const auto& [key, v] : a.terms()) {
        for (int j = 0;; ++j) {
            int a0 = key.first - k * j, b0 = key.second - k * j;
            if (a0 + b0 < r.floor()) break;
            long long cur = 0;
            auto it = r.terms().find({a0, b0});
            if (it != r.terms().end()) cur = it->second;
            r.set(a0, b0, cur + v);
        }
    }
    return r;
}

HDSeries hd_alt_div(const HDSeries& a) {
    if (a.exact()) throw InvalidInput("hd_alt_div: needs a floor (result has infinite tail)");
    HDSeries r(a.floor(), a.cap());
    for (const auto& [key, v] : a.terms()) {
        for (int j = 0;; ++j) {
            int a0 = key.first - j, b0 = key.second - j;
            if (a0 + b0 < r.floor()) break;
            long long cur = 0;
            auto it = r.terms().find({a0, b0});
            if (it != r.terms().end()) cur = it->second;
            r.set(a0, b0, cur + (j % 2 == 0 ? v : -v));
        }
    }
    return r;
}

HDSeries hd_hypersurface_lefschetz(int n, int floor) {
    if (n < 3) throw InvalidInput("hd_hypersurface_lefschetz: need n >= 3");
    if (floor <= n - 2)
        throw InvalidInput("hd_hypersurface_lefschetz: floor must exceed n-2");
    HDSeries r(floor, n - 2);
    for (int m = n - 2; 2 * m >= floor; --m) r.set(m, m, 1);
    return r;
}

HDSeries f1_main_term(int n, int d, int floor) {
    if (d < 2 || n <= (1 << d) * (d - 1))
        throw InvalidInput("f1_main_term: need d >= 2 and n > 2^d(d-1)");
    // weight line 4n-2d-6 - nu~ with nu~ = (n - 2^d(d-1))/2^{d-2}, scaled by
    // 2^{d-2} to stay in integers
    long long scale = 1LL << (d - 2);
    if (static_cast<long long>(floor) * scale <=
        static_cast<long long>(4 * n - 2 * d - 6) * scale - (n - (1LL << d) * (d - 1)))
        throw InvalidInput("f1_main_term: floor below the weight-validity line");
    HDSeries X = hd_hypersurface_lefschetz(n, n - 1);
    HDSeries num = (X * X).shift(-d) - X.shift(n - d - 2);
    HDSeries out = hd_alt_div(num);
    if (out.floor() > floor)
        throw IdentityFailure("f1_main_term: floor propagation exceeded the request");
    return out.raised(floor);
}

std::optional<long long> f1_hodge(int n, int d, int p_idx, int q_idx) {
    if (d < 2 || n <= (1 << d) * (d - 1))
        throw InvalidInput("f1_hodge: need d >= 2 and n > 2^d(d-1)");
    int top = 2 * n - d - 5;
    if (p_idx < 0 || q_idx < 0 || p_idx > top || q_idx > top)
        return 0;  // outside the index box: trivially no class
    long long scale = 1LL << (d - 2);
    bool in_window = static_cast<long long>(p_idx + q_idx) * scale >
                     static_cast<long long>(4 * n - 2 * d - 6) * scale -
                         (n - (1LL << d) * (d - 1));
    if (!in_window) return std::nullopt;
    if (p_idx != q_idx) return 0;
    return (top - p_idx) / 2 + 1;
}

HDSeries sym2_burillo(int n, int floor) {
    if (n < 3) throw InvalidInput("sym2_burillo: need n >= 3");
    if (floor <= n - 2) throw InvalidInput("sym2_burillo: floor must exceed n-2");
    // pairs of unknown-by-known classes live at total degree <= 3(n-2), so
    // the honest floor never drops below 3n-5
    int fl = std::max(floor, 3 * n - 5);
    HDSeries r(fl, 2 * n - 4);
    for (int K = 2 * n - 4; 2 * K >= fl; --K) {
        // #{(p, p') : n-2 >= p >= p' >= 0, p + p' = K}
        long long cnt = std::min(n - 2, K) - (K + 1) / 2 + 1;
        if (cnt > 0) r.set(K, K, cnt);
    }
    return r;
}

HDSeries sym2_via_square(int n, int floor) {
    if (n < 3) throw InvalidInput("sym2_via_square: need n >= 3");
    if (floor <= n - 2) throw InvalidInput("sym2_via_square: floor must exceed n-2");
    HDSeries X = hd_hypersurface_lefschetz(n, n - 1);
    // X evaluated at (u^2, v^2); its own unknowns double in degree
    HDSeries X2(2 * (n - 1), 2 * (n - 2));
    for (const auto& [k, v] : X.terms())
        if (2 * (k.first + k.second) >= X2.floor()) X2.set(2 * k.first, 2 * k.second, v);
    HDSeries sym = ((X * X) + X2).halved();
    int fl = std::max(floor, sym.floor());
    return sym.raised(fl);
}

bool gs_pen_consistency(int n, bool perturb) {
    const int d = 3;
    if (n < 17) throw InvalidInput("gs_pen_consistency: need n >= 17");
    // f1 floor: smallest integer above (7n-8)/2, the d=3 weight line
    int floor_f1 = (7 * n - 8) / 2 + 1;
    HDSeries F1 = f1_main_term(n, d, floor_f1);
    HDSeries X = hd_hypersurface_lefschetz(n, n - 1);
    HDSeries lhs = F1.shift(2) + X + X.shift(n - 2);
    HDSeries rhs = sym2_burillo(n, 2 * n - 3);
    if (perturb) {
        long long top = rhs.coeff(2 * n - 4, 2 * n - 4);
        rhs.set(2 * n - 4, 2 * n - 4, top + 1);
    }
    // compare every total degree strictly above 7n/2: a+b >= floor(7n/2)+1
    return lhs.agree_above(rhs, 7 * n / 2);
}

}  // namespace lab
