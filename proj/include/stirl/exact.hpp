#pragma once

#include <gmpxx.h>

#include <vector>

namespace stirl {

enum class ExactRowKind {
    stirling_first_kind, // numerators c(n,k), denominator n!
    binomial_shifted,    // numerators C(n-1,k-1), denominator 2^(n-1)
    integer_s_rational   // cleared coefficients of x * prod (x + k^s)
};

/// Arbitrary-precision row. For every kind the normalized probabilities are
/// numerators[k] / common_denominator and common_denominator equals the sum
/// of the numerators, so the row is an exact probability distribution.
struct ExactRow {
    int n;
    ExactRowKind kind;
    long s; // exponent: 1 for Stirling, 0 for binomial, as given otherwise
    std::vector<mpz_class> numerators; // size n+1, numerators[0] == 0
    mpz_class common_denominator;
};

/// Unsigned Stirling numbers of the first kind c(n,k) (permutations of n
/// elements with k cycles) by the triangle recurrence; runs to n >= 2000.
ExactRow stirling_row(int n);

/// Shifted Pascal row C(n-1, k-1).
ExactRow binomial_row(int n);

/// Exact rational expansion of x * prod_{k=1}^{n-1} (x + k^s) for integer s.
/// For s < 0 the roots are rational and the numerators are cleared by
/// ((n-1)!)^|s|. |s| above the cap is rejected (blow-up guard).
ExactRow exact_row_integer_s(int n, long s, long cap = 8);

mpz_class factorial_big(unsigned long n);

/// num/den rounded to double via a 200-bit shifted integer division, so the
/// conversion is accurate to the last double bit even when both operands are
/// thousands of digits long.
double quotient_to_double(const mpz_class& num, const mpz_class& den);

/// Normalized probabilities numerators[k] / sum(numerators) as doubles.
std::vector<double> to_probabilities(const ExactRow& row);

} // namespace stirl
