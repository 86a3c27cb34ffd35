// Rational approximation on truncated coefficient windows: Hankel-kernel
// solving, the A_m filtration, and the major/minor stratification.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "lab/approx.hpp"
#include "lab/sampling.hpp"

using namespace lab;

TEST_CASE("parameter helpers") {
    CHECK(default_gamma(1) == 1);
    CHECK(default_gamma(2) == 2);
    CHECK(default_gamma(3) == 2);
    CHECK(default_delta(1) == 1);
    CHECK(default_delta(2) == 1);
    CHECK(default_delta(3) == 2);
    CHECK(m0_of(2, 1) == 2);   // ceil(3/2)
    CHECK(m0_of(2, 2) == 3);   // ceil(5/2)
    CHECK(m0_of(3, 1) == 2);   // ceil(4/2)
}

TEST_CASE("pade(alpha, m, m) always succeeds and satisfies its contract") {
    std::mt19937 rng(101);
    for (int p : {3, 5}) {
        for (int iter = 0; iter < 500; ++iter) {
            int m = 1 + iter % 6;
            std::vector<int> b = rand_digits(2 * m, p, rng);
            TruncLaurent alpha = TruncLaurent::from_b_coeffs(p, b);
            auto res = pade(alpha, m, m);
            REQUIRE(res.has_value());  // an m x (m+1) Hankel kernel is never trivial
            CHECK(res->h2.is_monic());
            CHECK(res->h2.deg() <= m);
            CHECK(res->m_prime == res->h2.deg());
            // coprime with the gcd(0, h2) = h2 convention
            if (res->h1.is_zero())
                CHECK(res->h2.deg() == 0);
            else
                CHECK(poly_coprime(res->h1, res->h2));
            // independent re-check of ord(alpha h2 - h1) < -m on the exact window
            TruncLaurent diff = alpha * TruncLaurent::from_poly(res->h2) -
                                TruncLaurent::from_poly(res->h1);
            CHECK(diff.ord_at_most(-m - 1));
            // theta = alpha - h1/h2: multiplying back by h2 recovers the
            // difference on the common window
            TruncLaurent back = res->theta * TruncLaurent::from_poly(res->h2);
            for (int k = std::max(back.lo(), diff.lo()); k <= -m - 1; ++k)
                CHECK(back.coeff_at(k) == diff.coeff_at(k));
        }
    }
}

TEST_CASE("pade refuses malformed calls") {
    TruncLaurent alpha = TruncLaurent::from_b_coeffs(3, {1, 2});
    CHECK_THROWS_AS(pade(alpha, -1, 1), InvalidInput);
    CHECK_THROWS_AS(pade(alpha, 1, 0), InvalidInput);
    // window too short for the requested depth
    TruncLaurent coarse(3, -2, -1, false);
    coarse.set(-1, 1);
    CHECK_THROWS_AS(pade(coarse, 2, 2), PrecisionError);
}

TEST_CASE("A_m filtration is monotone and saturates at ceil(len/2)") {
    std::mt19937 rng(103);
    for (int p : {3, 5}) {
        for (int iter = 0; iter < 300; ++iter) {
            int len = 2 + iter % 6;  // window lengths 2..7
            std::vector<int> b = rand_digits(len, p, rng);
            int full = (len + 1) / 2;
            bool prev = false;
            for (int m = 0; m <= len; ++m) {
                bool now = in_Am(b, m, p);
                if (prev) CHECK(now);  // monotone in m
                prev = now;
            }
            CHECK(in_Am(b, full, p));
            int mn = min_Am(b, p);
            CHECK(mn <= full);
            CHECK(in_Am(b, mn, p));
            if (mn > 0) CHECK_FALSE(in_Am(b, mn - 1, p));
        }
    }
    // rational windows are detected at the denominator degree: b of 1/(t-1)
    // over F_3 is 1,1,1,... with min_Am = 1
    CHECK(min_Am({1, 1, 1, 1, 1}, 3) == 1);
    CHECK(min_Am({0, 0, 0}, 3) == 0);
}

TEST_CASE("locate_major finds the witness exactly on rational-like windows") {
    std::mt19937 rng(107);
    int p = 3, d = 2, e = 1, de1 = d * e + 1;
    int gamma = default_gamma(e), delta = default_delta(e);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<int> b = rand_digits(de1, p, rng);
        auto loc = locate_major(b, p, d, e, delta, gamma);
        if (!loc) continue;
        auto& [mp, ap] = *loc;
        CHECK(mp <= delta);
        CHECK(ap.h2.deg() == mp);
        CHECK(ap.h2.is_monic());
        CHECK(ap.theta.ord_at_most(-de1 - 1 + gamma));
        // reconstruction: alpha = h1/h2 + theta on the stored window
        TruncLaurent alpha = TruncLaurent::from_b_coeffs(p, b);
        TruncLaurent diff = alpha * TruncLaurent::from_poly(ap.h2) -
                            TruncLaurent::from_poly(ap.h1);
        TruncLaurent back = ap.theta * TruncLaurent::from_poly(ap.h2);
        for (int k = std::max(back.lo(), diff.lo()); k <= -1; ++k)
            CHECK(back.coeff_at(k) == diff.coeff_at(k));
    }
}

TEST_CASE("stratify_arcs partitions the coefficient space") {
    for (auto [p, d, e] : {std::tuple<int, int, int>{3, 2, 1},
                           std::tuple<int, int, int>{5, 2, 1},
                           std::tuple<int, int, int>{3, 2, 2}}) {
        int gamma = default_gamma(e), delta = default_delta(e);
        ArcTable table = stratify_arcs(p, d, e, gamma, delta);
        int de1 = d * e + 1;
        long long space = 1;
        for (int i = 0; i < de1; ++i) space *= p;
        CHECK(static_cast<long long>(table.entries.size()) == space);
        // every alpha appears exactly once
        std::set<std::vector<int>> seen;
        for (const auto& en : table.entries) seen.insert(en.alpha);
        CHECK(static_cast<long long>(seen.size()) == space);
        long long total = 0;
        for (const auto& [name, cnt] : table.cardinalities()) {
            CHECK(cnt > 0);
            total += cnt;
        }
        CHECK(total == space);
        for (const auto& en : table.entries) {
            if (en.label == ArcLabel::Major) {
                REQUIRE(en.approx.has_value());
                CHECK(en.m <= e + 1 - gamma);
                CHECK(en.approx->h2.deg() == en.m);
                CHECK(en.approx->theta.ord_at_most(-de1 - 1 + gamma));
            } else {
                CHECK_FALSE(en.approx.has_value());
                CHECK(en.m >= delta);
                CHECK(en.m <= m0_of(d, e) - 1);
                // Minor(m) sits in A_{m+1} - A_m
                CHECK(in_Am(en.alpha, en.m + 1, p));
                CHECK_FALSE(in_Am(en.alpha, en.m, p));
            }
        }
        // the zero window is the Major(0) representative
        CHECK(table.entries.front().label == ArcLabel::Major);
        CHECK(table.entries.front().m == 0);
    }
}

TEST_CASE("arc table serialization") {
    ArcTable table = stratify_arcs(3, 2, 1, 1, 1);
    std::string csv = table.csv();
    CHECK(csv.rfind("alpha_coeffs,label,m_prime,h1,h2,theta_ord\n", 0) == 0);
    // one line per entry plus the header
    size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == table.entries.size() + 1);
    CHECK_THROWS_AS(stratify_arcs(3, 2, 1, 1, 2), InvalidInput);   // gamma < delta
    CHECK_THROWS_AS(stratify_arcs(3, 2, 3, 2, 2, 100), BudgetExceeded);
}
