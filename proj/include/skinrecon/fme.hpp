#pragma once

// Fourier-Motzkin elimination for small systems of linear inequalities
// a . x >= b, in floating point or exact rational arithmetic.

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace skinrecon {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <class T>
struct Inequality {
    std::vector<T> a;
    T b{};
};

template <class T>
struct InequalitySystem {
    std::size_t variables = 0;
    std::vector<Inequality<T>> rows;

    /// Throws invalid-argument if a row has the wrong length.
    void validate() const;
};

inline constexpr std::size_t kFmeMaxVariables = 25;
inline constexpr std::size_t kFmeMaxRows = 1'000'000;

/// Eliminates variable `var`: each row bounding it from below is combined
/// with each row bounding it from above, rows without it are kept.
/// Trivially true rows (0 >= b with b <= 0) and exact duplicates are removed.
/// The result has one variable fewer. Throws resource-limit when the input or
/// the combined output would exceed the desk-scale guard.
template <class T>
InequalitySystem<T> fme_eliminate(const InequalitySystem<T>& sys, std::size_t var);

/// True when the system contains a row 0 >= b with b > 0.
template <class T>
bool has_contradiction(const InequalitySystem<T>& sys);

struct FmeTrace {
    bool feasible = false;
    std::vector<std::size_t> row_counts;  ///< before elimination, then after each step
};

/// Eliminates every variable, last index first.
template <class T>
FmeTrace fme_feasibility(InequalitySystem<T> sys);

/// 4 (n/4)^(2p), exact, for p >= 1; n for p = 0.
Rational fme_worst_case_count(std::size_t n, std::size_t p);

/// Decimal digits of |v| (integer part) and its leading `count` digits.
std::size_t decimal_digits(const BigInt& v);
std::string leading_digits(const BigInt& v, std::size_t count);

InequalitySystem<Rational> to_rational(const InequalitySystem<double>& sys);

}  // namespace skinrecon
