#include "stirl/limit_checks.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "stirl/exact.hpp"
#include "stirl/moments.hpp"
#include "stirl/summation.hpp"

namespace stirl {

namespace {
constexpr double kBerryEsseenC = 0.7975;
constexpr double kInvSqrt2Pi = 0.3989422804014326779; // 1/sqrt(2*pi)
} // namespace

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * M_SQRT1_2);
}

double normal_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double kolmogorov_distance(const ProbabilityRow& row, double mu, double sigma,
                           bool continuity_correction) {
    if (!(sigma > 0.0)) throw std::domain_error("sigma must be positive");

    if (continuity_correction) {
        // half-integer sampling: F is flat at k + 1/2, so the discrepancy
        // there is the classical corrected tail error |F(k) - Phi(z_{k+1/2})|
        CompensatedSum cum;
        double best = normal_cdf((-0.5 - mu) / sigma);
        for (int k = 0; k <= row.n; ++k) {
            cum.add(row.p[static_cast<std::size_t>(k)]);
            double z = (static_cast<double>(k) + 0.5 - mu) / sigma;
            best = std::max(best, std::abs(cum.value() - normal_cdf(z)));
        }
        return best;
    }

    // the row CDF is a step function: the sup is attained just before or at
    // a jump, so scanning the jumps is exact
    CompensatedSum cum;
    double best = 0.0;
    for (int k = 0; k <= row.n; ++k) {
        double z = (static_cast<double>(k) - mu) / sigma;
        double phi = normal_cdf(z);
        best = std::max(best, phi - cum.value()); // just below the jump at k
        cum.add(row.p[static_cast<std::size_t>(k)]);
        best = std::max(best, cum.value() - phi); // at the jump
    }
    return best;
}

CltReport clt_check(int n, double s, bool continuity_correction) {
    if (n < 2) throw std::invalid_argument("clt_check requires n >= 2");
    if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("clt_check requires s in [0,1]");

    ProbabilityRow row = row_product(n, ScaleParam(s));
    double m = mu(n, s);
    double sd = std::sqrt(sigma2(n, s));
    double sup = kolmogorov_distance(row, m, sd, continuity_correction);
    double be = kBerryEsseenC * rho_sum(n, s) / (sd * sd * sd);
    double coarse = kBerryEsseenC / sd;
    return CltReport{n, s, sup, be, coarse, sup <= be};
}

LltReport llt_check(int n, double s) {
    if (n < 2) throw std::invalid_argument("llt_check requires n >= 2");

    ProbabilityRow row = row_product(n, ScaleParam(s));
    double m = mu(n, s);
    double sd = std::sqrt(sigma2(n, s));
    double max_dev = -1.0;
    int argmax = 0;
    for (int k = 0; k <= row.n; ++k) {
        double dev = std::abs(sd * row.p[static_cast<std::size_t>(k)] -
                              normal_pdf((static_cast<double>(k) - m) / sd));
        if (dev > max_dev) {
            max_dev = dev;
            argmax = k;
        }
    }
    return LltReport{n, s, max_dev, argmax, max_dev * sd};
}

ApproxReport approx_stirling(int n, int k) {
    if (n < 2) throw std::invalid_argument("approx_stirling requires n >= 2");
    if (k < 1 || k > n)
        throw std::invalid_argument("k = " + std::to_string(k) + " outside [1, " +
                                    std::to_string(n) + "]");

    ExactRow row = stirling_row(n);
    double exact = quotient_to_double(row.numerators[static_cast<std::size_t>(k)],
                                      factorial_big(static_cast<unsigned long>(n - 1)));
    double m = mu(n, 1.0);
    double sd = std::sqrt(sigma2(n, 1.0));
    // the factor n converts the 1/n! normalization to the 1/(n-1)! convention
    double approx = static_cast<double>(n) * normal_pdf((static_cast<double>(k) - m) / sd) / sd;
    double rel = exact > 0.0 ? std::abs(approx - exact) / exact * 100.0 : INFINITY;
    return ApproxReport{n, k, exact, approx, rel};
}

} // namespace stirl
