#include "stirl/exact.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace stirl {

namespace {

void require_positive(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1, got " + std::to_string(n));
}

mpz_class numerator_sum(const std::vector<mpz_class>& nums) {
    mpz_class total = 0;
    for (const auto& v : nums) total += v;
    return total;
}

} // namespace

mpz_class factorial_big(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

ExactRow stirling_row(int n) {
    require_positive(n);
    // c(m+1, k) = m*c(m, k) + c(m, k-1), rolled forward from c(1,1) = 1
    std::vector<mpz_class> row(static_cast<std::size_t>(n) + 1);
    row[1] = 1;
    for (int m = 1; m < n; ++m) {
        for (int k = m + 1; k >= 1; --k) {
            mpz_class next = row[static_cast<std::size_t>(k - 1)];
            mpz_addmul_ui(next.get_mpz_t(), row[static_cast<std::size_t>(k)].get_mpz_t(),
                          static_cast<unsigned long>(m));
            row[static_cast<std::size_t>(k)] = std::move(next);
        }
    }
    return ExactRow{n, ExactRowKind::stirling_first_kind, 1, std::move(row),
                    factorial_big(static_cast<unsigned long>(n))};
}

ExactRow binomial_row(int n) {
    require_positive(n);
    std::vector<mpz_class> row(static_cast<std::size_t>(n) + 1);
    row[1] = 1;
    for (int m = 1; m < n; ++m)
        for (int k = m + 1; k >= 2; --k)
            row[static_cast<std::size_t>(k)] += row[static_cast<std::size_t>(k - 1)];
    mpz_class denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 2, static_cast<unsigned long>(n - 1));
    return ExactRow{n, ExactRowKind::binomial_shifted, 0, std::move(row), std::move(denom)};
}

ExactRow exact_row_integer_s(int n, long s, long cap) {
    require_positive(n);
    if (std::abs(s) > cap)
        throw std::invalid_argument("|s| = " + std::to_string(std::abs(s)) +
                                    " exceeds the exact-path cap " + std::to_string(cap));

    // poly coefficients of x * prod (x + k^s); for s < 0 each factor
    // (x + k^-|s|) is cleared to (k^|s| x + 1), keeping everything integral
    std::vector<mpz_class> poly(static_cast<std::size_t>(n) + 1);
    poly[1] = 1;
    for (int k = 1; k < n; ++k) {
        mpz_class w;
        mpz_ui_pow_ui(w.get_mpz_t(), static_cast<unsigned long>(k),
                      static_cast<unsigned long>(std::abs(s)));
        if (s >= 0) {
            // new[j] = old[j-1] + k^s * old[j]
            for (int j = k + 1; j >= 1; --j) {
                poly[static_cast<std::size_t>(j)] *= w;
                poly[static_cast<std::size_t>(j)] += poly[static_cast<std::size_t>(j - 1)];
            }
        } else {
            // new[j] = k^|s| * old[j-1] + old[j]
            for (int j = k + 1; j >= 1; --j) {
                poly[static_cast<std::size_t>(j)] += w * poly[static_cast<std::size_t>(j - 1)];
            }
        }
    }
    mpz_class denom = numerator_sum(poly);
    return ExactRow{n, ExactRowKind::integer_s_rational, s, std::move(poly), std::move(denom)};
}

double quotient_to_double(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (num == 0) return 0.0;
    // scale the dividend so the integer quotient keeps ~200 significant bits
    // even when num/den is far below 2^-200
    long nb = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
    long db = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    long shift = 200 + (db > nb ? db - nb : 0);
    mpz_class q = (num << shift) / den;
    return std::ldexp(q.get_d(), static_cast<int>(-shift));
}

std::vector<double> to_probabilities(const ExactRow& row) {
    mpz_class total = numerator_sum(row.numerators);
    std::vector<double> p;
    p.reserve(row.numerators.size());
    for (const auto& v : row.numerators) p.push_back(quotient_to_double(v, total));
    return p;
}

} // namespace stirl
