#include "stirl/moments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "stirl/summation.hpp"

namespace stirl {

namespace {

void require_positive(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1, got " + std::to_string(n));
}

// w/(1+w)^2, stable for the whole double range via the w <-> 1/w symmetry
double var_term(double w) {
    if (w == 0.0) return 0.0;
    if (w > 1.0) w = 1.0 / w;
    double d = 1.0 + w;
    return w / (d * d);
}

// r(1+r^2)/(1+r)^4, also symmetric under r <-> 1/r
double rho_term(double r) {
    if (r == 0.0) return 0.0;
    if (r > 1.0) r = 1.0 / r;
    double d = 1.0 + r;
    double d2 = d * d;
    return r * (1.0 + r * r) / (d2 * d2);
}

// w(w-1)/(1+w)^3; for w > 1 evaluated as u(1-u)/(1+u)^3 with u = 1/w
// (the expression is antisymmetric under inversion)
double curvature_term(double w) {
    if (w == 0.0) return 0.0;
    if (w > 1.0) {
        double u = 1.0 / w;
        double d = 1.0 + u;
        return u * (1.0 - u) / (d * d * d);
    }
    double d = 1.0 + w;
    return w * (w - 1.0) / (d * d * d);
}

} // namespace

double mu(int n, double s) {
    require_positive(n);
    CompensatedSum acc;
    acc.add(1.0);
    for (int k = 1; k < n; ++k) {
        double w = std::pow(static_cast<double>(k), s);
        acc.add(std::isinf(w) ? 0.0 : 1.0 / (1.0 + w));
    }
    return acc.value();
}

double sigma2(int n, double s) {
    require_positive(n);
    CompensatedSum acc;
    for (int k = 1; k < n; ++k) acc.add(var_term(std::pow(static_cast<double>(k), s)));
    return acc.value();
}

double mu_prime(int n, double s) {
    require_positive(n);
    CompensatedSum acc;
    for (int k = 2; k < n; ++k)
        acc.add(var_term(std::pow(static_cast<double>(k), s)) * std::log(static_cast<double>(k)));
    return -acc.value();
}

double mu_second(int n, double s) {
    require_positive(n);
    CompensatedSum acc;
    for (int k = 2; k < n; ++k) {
        double lk = std::log(static_cast<double>(k));
        acc.add(curvature_term(std::pow(static_cast<double>(k), s)) * lk * lk);
    }
    return acc.value();
}

double rho_sum(int n, double s) {
    require_positive(n);
    CompensatedSum acc;
    for (int k = 1; k < n; ++k) acc.add(rho_term(std::pow(static_cast<double>(k), s)));
    return acc.value();
}

double harmonic(int n, int r) {
    require_positive(n);
    if (r < 1) throw std::invalid_argument("harmonic order must be >= 1");
    CompensatedSum acc;
    for (int k = 1; k <= n; ++k) acc.add(std::pow(static_cast<double>(k), -static_cast<double>(r)));
    return acc.value();
}

MomentSummary moment_summary(int n, double s) {
    require_positive(n);
    double m = mu(n, s);
    double v = sigma2(n, s);
    double rho = rho_sum(n, s);
    double be = v > 0.0 ? rho / (v * std::sqrt(v)) : 0.0;
    return MomentSummary{n, s, m, v, mu_prime(n, s), mu_second(n, s), rho, be};
}

AsymptoticReport asymptotic_report(int n, double s) {
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("asymptotic_report requires s in [0,1]");

    double m = mu(n, s);
    double v = sigma2(n, s);
    double ratio, lower;
    if (s == 1.0) {
        double ln_n = std::log(static_cast<double>(n));
        ratio = m / ln_n;
        lower = ln_n / 4.0;
    } else {
        double scale = std::pow(static_cast<double>(n), 1.0 - s);
        ratio = m * (1.0 - s) / scale;
        lower = (scale - 1.0) / (4.0 - 4.0 * s);
    }
    // 1e-12 relative slack: the s = 0 lower bound is an exact equality
    bool lower_ok = v >= lower * (1.0 - 1e-12);
    bool upper_ok = v <= m * (1.0 + 1e-12);
    return AsymptoticReport{n, s, ratio, lower, v, m, lower_ok, upper_ok};
}

bool zeta_cap_check(int n, double s) {
    require_positive(n);
    if (!(s > 1.0)) throw std::domain_error("zeta_cap_check requires s > 1");

    // partial power sums are monotone by construction; verify anyway on the
    // prefixes, then cap them by a tail-bounded zeta approximation
    CompensatedSum acc;
    double prev = 0.0;
    for (int k = 1; k < n; ++k) {
        acc.add(std::pow(static_cast<double>(k), -s));
        double cur = acc.value();
        if (cur < prev) return false;
        prev = cur;
    }
    double power_sum = acc.value();

    int tail_n = n > 10000 ? n : 10000;
    CompensatedSum zacc;
    for (int k = 1; k < tail_n; ++k) zacc.add(std::pow(static_cast<double>(k), -s));
    // integral tail bound: sum_{k >= N} k^-s <= (N-1)^(1-s)/(s-1)
    double zeta_upper =
        zacc.value() + std::pow(static_cast<double>(tail_n - 1), 1.0 - s) / (s - 1.0);

    return sigma2(n, s) <= power_sum * (1.0 + 1e-12) && power_sum <= zeta_upper;
}

} // namespace stirl
