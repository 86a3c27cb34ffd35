#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lab {

// Degree of the zero polynomial / order of the zero series.  Chosen far from
// INT_MIN so that sums of two sentinels never overflow.
constexpr int kNegInf = -(1 << 28);

inline bool is_neg_inf(int v) { return v <= kNegInf / 2; }

// Thrown when an input violates a documented precondition.
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an enumeration would exceed the configured state budget.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a truncated-series query is undecidable at current precision.
// The policy throughout is to refuse rather than guess.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an exact identity that must hold fails (fatal test condition).
struct IdentityFailure : std::runtime_error {
    explicit IdentityFailure(const std::string& what) : std::runtime_error(what) {}
};

// Number of states of an enumeration over base^digits tuples, as a double so
// that overflow cannot occur while estimating.
inline double state_count(int base, long long digits) {
    return std::pow(static_cast<double>(base), static_cast<double>(digits));
}

// Refuses (by throwing) when the estimated state count exceeds the budget.
inline void check_budget(double states, long long budget, const std::string& where) {
    if (states > static_cast<double>(budget)) {
        throw BudgetExceeded(where + ": estimated state count " + std::to_string(states) +
                             " exceeds budget " + std::to_string(budget));
    }
}

constexpr long long kDefaultBudget = 10000000;  // 10^7 enumeration states

}  // namespace lab
