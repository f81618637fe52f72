#pragma once

#include <optional>
#include <vector>

#include "stirl/exact.hpp"
#include "stirl/rows.hpp"

namespace stirl {

/// Mode structure of a row: one peak or a two-element plateau, never more
/// (real-rootedness). darroch_ok records |mode - mu| < 1 for every mode;
/// unique_by_criterion is the sufficient one-mode test when a single mode
/// exists (unset for plateaus).
struct ModeReport {
    int n;
    double s;
    std::vector<int> modes;
    double mu;
    bool darroch_ok;
    std::optional<bool> unique_by_criterion;
};

/// Solution of mu_n(s) = k0 on (0,1) together with the s-window on which the
/// one-mode criterion certifies mode k0 (window endpoints clamped to [0,1]).
struct SParamSolution {
    int n;
    int k0;
    double s_star;
    double residual; // |mu(n, s_star) - k0|
    double s_lo;
    double s_hi;
};

struct ModeScanEntry {
    int n;
    int mode;
    bool criterion_certified; // the one-mode criterion alone certifies this n
};

/// Taylor control of mu_n(s) around s = 0: lhs is the linearization residual,
/// bound is (s^2/2) * max_xi |mu''(xi)| over a refined [0,1] grid.
struct TaylorCheck {
    int n;
    double s;
    double lhs;
    double bound;
    bool ok;
};

/// Float rows merge entries within relative 1e-9 of the maximum into a
/// plateau. If the 1e-6 neighborhood disagrees with the 1e-9 one, the call
/// escalates: exact recomputation when s is an integer within the exact cap,
/// ambiguity_error otherwise. More than two or non-adjacent modes raise
/// integrity_error (they would contradict real-rootedness).
ModeReport find_modes(const ProbabilityRow& row);

/// Exact integer comparison; plateaus are exact ties.
ModeReport find_modes(const ExactRow& row);

/// Builds the row, locates modes, and enforces |mode - mu| < 1 for each mode
/// (integrity_error on violation).
ModeReport darroch_check(int n, double s);

/// k0 <= mu < k0 + 1/(k0+2)  or  k0 - 1/(n-k0+2) < mu <= k0.
bool unique_mode_criterion(double mu_value, int k0, int n);

/// Inverts the strictly decreasing mu_n on [0,1] to hit the integer mean k0
/// by safeguarded Newton with a bisection bracket. Admissible targets are the
/// integers strictly between H_n and (n+1)/2 (std::invalid_argument otherwise,
/// message lists the admissible range); requires n >= 6.
SParamSolution solve_s_for_mean(int n, int k0);

/// Exact Stirling rows for n = 3..n_max: asserts every row has a unique mode
/// (a plateau would contradict the one-mode theorem and raises
/// integrity_error) and flags the n certified by the one-mode criterion
/// alone. Parallelized over bounded batches; STIRL_INTERP_THREADS caps the
/// worker count; result order is deterministic.
std::vector<ModeScanEntry> erdos_unique_mode_scan(int n_max);

/// Verifies |mu_n(s) - (n+1)/2 + (1/4)(sum_{k=2}^{n-1} ln k) s| is within the
/// second-order Taylor remainder bound. s in [0,1].
TaylorCheck taylor_mu_check(int n, double s);

} // namespace stirl
