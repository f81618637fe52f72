#pragma once

#include "stirl/rows.hpp"

namespace stirl {

/// Berry-Esseen certificate: the Kolmogorov distance of the exact row to the
/// normal must sit below the third-moment bound, which sits below the coarse
/// 1/sigma bound.
struct CltReport {
    int n;
    double s;
    double sup_distance; // Kolmogorov distance to N(mu, sigma^2)
    double be_bound;     // 0.7975 * rho_sum / sigma^3
    double coarse_bound; // 0.7975 / sigma
    bool passed;         // sup_distance <= be_bound
};

/// Local limit certificate: max_k |sigma*p[k] - phi((k-mu)/sigma)|.
struct LltReport {
    int n;
    double s;
    double max_dev;
    int argmax_k;
    double empirical_k; // max_dev * sigma (evidence for a universal constant)
};

/// Gaussian approximation of c(n,k)/(n-1)!.
struct ApproxReport {
    int n;
    int k;
    double exact_value;            // c(n,k)/(n-1)!
    double approx_value;           // n * phi((k-mu_n(1))/sigma) / sigma
    double relative_error_percent; // |approx-exact|/exact * 100
};

/// Standard normal CDF/PDF; absolute error <= 1e-12 over |x| <= 8.
double normal_cdf(double x);
double normal_pdf(double x);

/// Exact sup over x of |F_row(x) - Phi((x-mu)/sigma)|. The row CDF is a step
/// function, so the sup is attained at a jump: max over k of the larger of
/// F(k) - Phi(z_k) and Phi(z_k) - F(k-1).
/// continuity_correction instead samples the discrepancy at half-integers,
/// max_k |F(k) - Phi(z_{k+1/2})|, the classical corrected comparison (off by
/// default; the certificates use the plain distance).
double kolmogorov_distance(const ProbabilityRow& row, double mu, double sigma,
                           bool continuity_correction = false);

/// Builds the row and evaluates the Berry-Esseen certificate.
/// Throws std::domain_error for s outside [0,1] (the stated CLT regime).
CltReport clt_check(int n, double s, bool continuity_correction = false);

/// Pointwise PMF-vs-Gaussian deviation report; any real s.
LltReport llt_check(int n, double s);

/// Exact-vs-Gaussian approximation of the Stirling ratio c(n,k)/(n-1)!.
ApproxReport approx_stirling(int n, int k);

} // namespace stirl
