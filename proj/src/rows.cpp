#include "stirl/rows.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "stirl/errors.hpp"
#include "stirl/summation.hpp"

namespace stirl {

namespace {

void require_positive(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1, got " + std::to_string(n));
}

} // namespace

std::vector<double> bernoulli_probs(int n, ScaleParam s) {
    require_positive(n);
    std::vector<double> q(static_cast<std::size_t>(n));
    q[0] = 1.0; // r = h_s(0) = 0 makes the first factor deterministic
    for (int i = 1; i < n; ++i) {
        q[static_cast<std::size_t>(i)] = 1.0 / (1.0 + s.weight(i));
    }
    return q;
}

ProbabilityRow row_product(int n, ScaleParam s) {
    require_positive(n);
    std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
    p[1] = 1.0; // distribution after the deterministic first factor
    for (int k = 2; k <= n; ++k) {
        double w = s.weight(k - 1);
        double q, r;
        if (std::isinf(w)) {
            q = 0.0;
            r = 1.0;
        } else {
            q = 1.0 / (1.0 + w); // success: shifts the count up by one
            r = w / (1.0 + w);
        }
        // in-place convolution, descending so p[j-1] is still the old value
        for (int j = k; j >= 1; --j) {
            p[static_cast<std::size_t>(j)] =
                p[static_cast<std::size_t>(j)] * r + p[static_cast<std::size_t>(j - 1)] * q;
        }
        // p[0] stays 0: the first factor guarantees at least one success
    }
    return ProbabilityRow{n, s, std::move(p)};
}

std::vector<std::vector<long double>> row_recurrence(int n, ScaleParam s, int cap) {
    require_positive(n);
    if (n > cap)
        throw std::invalid_argument("row_recurrence is a bounded oracle (n <= " +
                                    std::to_string(cap) + "); use row_product for larger n");

    std::vector<std::vector<long double>> rows;
    rows.reserve(static_cast<std::size_t>(n) + 1);
    rows.push_back({1.0L}); // P_0 = 1

    // running coefficient sums of P_0 + ... + P_{m-1}
    std::vector<long double> coeff_sum{1.0L};
    for (int m = 1; m <= n; ++m) {
        long double h = powl(static_cast<long double>(m), static_cast<long double>(s.value()));
        std::vector<long double> row(static_cast<std::size_t>(m) + 1, 0.0L);
        for (int c = 1; c <= m; ++c)
            row[static_cast<std::size_t>(c)] = coeff_sum[static_cast<std::size_t>(c - 1)] / h;

        bool bad = false;
        for (long double v : row)
            if (!std::isfinite(v)) bad = true;
        // A_{m,m} = (m!)^{-s} is mathematically positive; zero proves underflow
        if (row[static_cast<std::size_t>(m)] == 0.0L) bad = true;
        if (bad)
            throw std::overflow_error(
                "raw recurrence left the extended float range at m = " + std::to_string(m) +
                "; use the normalized path (row_product)");

        coeff_sum.resize(static_cast<std::size_t>(m) + 1, 0.0L);
        for (int c = 0; c <= m; ++c)
            coeff_sum[static_cast<std::size_t>(c)] += row[static_cast<std::size_t>(c)];
        rows.push_back(std::move(row));
    }
    return rows;
}

LogValue log_partition(int n, ScaleParam s) {
    require_positive(n);
    CompensatedSum acc;
    for (int k = 1; k <= n; ++k) acc.add(-s.value() * std::log(static_cast<double>(k)));
    for (int k = 1; k < n; ++k) {
        double w = s.weight(k);
        // ln(1 + k^s) degrades to s ln k when k^s overflows
        acc.add(std::isinf(w) ? s.value() * std::log(static_cast<double>(k)) : std::log1p(w));
    }
    return LogValue{acc.value()};
}

double log_raw_coefficient(const ProbabilityRow& row, int k) {
    if (k < 0 || k > row.n) throw std::invalid_argument("k out of range");
    return std::log(row.p[static_cast<std::size_t>(k)]) + log_partition(row.n, row.s).log_magnitude;
}

ReflectionReport reflection_residual(int n, ScaleParam s, double x) {
    require_positive(n);
    if (!(x > 0.0)) throw std::invalid_argument("x must be positive");

    double sv = s.value();
    // lhs: log P_n^{(s)}(x) from the product form
    CompensatedSum lhs;
    lhs.add(-sv * std::lgamma(static_cast<double>(n) + 1.0));
    lhs.add(std::log(x));
    for (int k = 1; k < n; ++k) lhs.add(std::log(x + s.weight(k)));

    // log P_n^{(-s)}(1/x)
    ScaleParam ms(-sv);
    double invx = 1.0 / x;
    CompensatedSum rhs;
    rhs.add(sv * std::lgamma(static_cast<double>(n) + 1.0));
    rhs.add(std::log(invx));
    for (int k = 1; k < n; ++k) rhs.add(std::log(invx + ms.weight(k)));
    rhs.add((n + 1) * std::log(x));

    double log_prefactor = sv * (std::log(static_cast<double>(n)) +
                                 std::lgamma(static_cast<double>(n) + 1.0));
    double base = lhs.value() - rhs.value();
    return ReflectionReport{base - log_prefactor, base + log_prefactor};
}

void validate_row(const ProbabilityRow& row) {
    const auto& p = row.p;
    if (row.n < 1 || p.size() != static_cast<std::size_t>(row.n) + 1)
        throw integrity_error("row has inconsistent length");
    if (p[0] != 0.0) throw integrity_error("p[0] must be exactly 0");

    CompensatedSum total;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0) throw integrity_error("row entry not a finite non-negative value");
        total.add(v);
    }
    double sum = total.value();
    if (std::abs(sum - 1.0) > 1e-12 * row.n)
        throw integrity_error("row sums to " + std::to_string(sum) + ", outside 1 +- 1e-12*n");

    // log-concavity, compared in log space so squared tails cannot underflow
    const double log_slack = std::log1p(-1e-9);
    for (int k = 1; k < row.n; ++k) {
        double pk = p[static_cast<std::size_t>(k)];
        if (pk <= 1e-300) continue;
        double lo = p[static_cast<std::size_t>(k - 1)];
        double hi = p[static_cast<std::size_t>(k + 1)];
        if (lo == 0.0 || hi == 0.0) continue; // -inf right-hand side, trivially true
        if (2.0 * std::log(pk) < std::log(lo) + std::log(hi) + log_slack)
            throw integrity_error("log-concavity violated at k = " + std::to_string(k));
    }

    // mode plateau: at most two entries within relative 1e-9 of the max, adjacent
    double vmax = 0.0;
    for (double v : p) vmax = std::max(vmax, v);
    int first = -1, last = -1, count = 0;
    for (int k = 0; k <= row.n; ++k) {
        if (p[static_cast<std::size_t>(k)] >= vmax * (1.0 - 1e-9)) {
            if (first < 0) first = k;
            last = k;
            ++count;
        }
    }
    if (count > 2 || last - first + 1 != count)
        throw integrity_error("mode plateau has " + std::to_string(count) +
                              " entries spanning [" + std::to_string(first) + "," +
                              std::to_string(last) + "]");
}

} // namespace stirl
