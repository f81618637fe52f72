#pragma once

#include <vector>

#include "stirl/scale_param.hpp"

namespace stirl {

/// Normalized coefficient row: p[k] is the probability that the interpolated
/// cycle statistic Z_n(s) equals k, i.e. A_{n,k}(s) / P_n(1).
struct ProbabilityRow {
    int n;
    ScaleParam s;
    std::vector<double> p; // size n+1, p[0] == 0
};

/// Natural log of a positive quantity that may not fit the double range.
struct LogValue {
    double log_magnitude;
};

/// Signed log-space residuals of the s <-> -s reflection identity, one per
/// candidate prefactor orientation (the two printed variants disagree; tests
/// pin whichever orientation vanishes).
struct ReflectionReport {
    double residual_prefactor_plus_s;  // prefactor n^s (n!)^s
    double residual_prefactor_minus_s; // prefactor n^-s (n!)^-s
};

/// Success probabilities of the Bernoulli factorization: q[i] = 1/(1 + i^s)
/// for factor i+1, i = 0..n-1. The first factor is deterministic (q[0] = 1).
std::vector<double> bernoulli_probs(int n, ScaleParam s);

/// Poisson-binomial dynamic program over pre-normalized factors (x + r)/(1 + r);
/// every intermediate vector is a probability vector, so no overflow for any n.
ProbabilityRow row_product(int n, ScaleParam s);

/// Raw coefficient triangle A_{m,k}(s) for m = 0..n by the defining recurrence
/// P_m = (x / m^s) * sum_{j<m} P_j. Extended-precision floats, bounded n; this
/// is a cross-check oracle, not the production path.
/// Throws std::overflow_error when the raw magnitudes leave the representable
/// range; use row_product (normalized) instead for such inputs.
std::vector<std::vector<long double>> row_recurrence(int n, ScaleParam s, int cap = 300);

/// log P_n(1) = -s * sum_{k=1}^{n} ln k + sum_{k=1}^{n-1} ln(1 + k^s).
LogValue log_partition(int n, ScaleParam s);

/// Reconstructs ln A_{n,k}(s) = ln p[k] + log P_n(1) from a normalized row.
double log_raw_coefficient(const ProbabilityRow& row, int k);

/// Evaluates P_n^{(s)}(x) against prefactor * x^{n+1} * P_n^{(-s)}(1/x) in log
/// space for both candidate prefactor orientations.
ReflectionReport reflection_residual(int n, ScaleParam s, double x);

/// Checks the structural invariants every row must satisfy: p[0] = 0, entries
/// finite and non-negative, sum within 1e-12*n of 1, log-concavity, and a mode
/// set of at most two adjacent indices. Throws integrity_error on violation.
void validate_row(const ProbabilityRow& row);

} // namespace stirl
