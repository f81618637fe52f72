#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "stirl/limit_checks.hpp"
#include "stirl/moments.hpp"
#include "stirl/rows.hpp"
#include "stirl/scale_param.hpp"

using namespace stirl;

namespace {

bool rel_close(double a, double b, double rtol, double atol = 0.0) {
    return std::abs(a - b) <= rtol * std::max(std::abs(a), std::abs(b)) + atol;
}

// composite Simpson quadrature of the density, an oracle for normal_cdf that
// shares no code with the erfc-based implementation
double cdf_by_quadrature(double x) {
    const double lo = -10.0;
    const int panels = 20000;
    double h = (x - lo) / (2 * panels);
    double acc = normal_pdf(lo) + normal_pdf(x);
    for (int i = 1; i < 2 * panels; ++i) acc += normal_pdf(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

double window_delta(int n, double s) {
    auto row = row_product(n, ScaleParam(s));
    double m = mu(n, s);
    double sig = std::sqrt(sigma2(n, s));
    double delta = 0.0;
    for (int k = 0; k <= n; ++k) {
        if (std::abs(k - m) > 2.0 * sig) continue;
        double ratio = sig * row.p[static_cast<std::size_t>(k)] / normal_pdf((k - m) / sig);
        delta = std::max(delta, std::abs(ratio - 1.0));
    }
    return delta;
}

} // namespace

TEST_SUITE("limits") {

TEST_CASE("normal cdf and pdf basics") {
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(rel_close(normal_cdf(1.96), 0.97500210485177952, 1e-14));
    CHECK(rel_close(normal_pdf(0.0), 0.39894228040143268, 1e-14));
    CHECK(rel_close(normal_pdf(1.0), 0.24197072451914337, 1e-14));
    CHECK(normal_cdf(-40.0) == 0.0);
    CHECK(normal_cdf(40.0) == 1.0);
}

TEST_CASE("normal cdf agrees with quadrature") {
    for (double x : {-3.0, -1.0, -0.25, 0.5, 1.96, 2.5}) {
        CAPTURE(x);
        CHECK(rel_close(normal_cdf(x), cdf_by_quadrature(x), 1e-10, 1e-12));
    }
}

TEST_CASE("normal cdf symmetry, monotonicity, derivative") {
    for (double x = 0.0; x <= 8.0; x += 0.37)
        CHECK(rel_close(normal_cdf(-x), 1.0 - normal_cdf(x), 1e-14, 1e-16));

    double prev = -1.0;
    for (int i = 0; i <= 10000; ++i) {
        double x = -10.0 + i * 20.0 / 10000.0;
        double c = normal_cdf(x);
        REQUIRE(c >= prev);
        prev = c;
    }

    const double h = 1e-4;
    for (double x : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
        CAPTURE(x);
        double fd = (normal_cdf(x + h) - normal_cdf(x - h)) / (2 * h);
        CHECK(std::abs(fd - normal_pdf(x)) < 1e-6);
    }
}

TEST_CASE("kolmogorov distance: hand cases") {
    // point mass at 1: sup attained just left of the jump, Phi(0) = 1/2
    ProbabilityRow unit{1, ScaleParam(3.0), {0.0, 1.0}};
    CHECK(rel_close(kolmogorov_distance(unit, 1.0, 1.0), 0.5, 1e-15));

    auto two = row_product(2, ScaleParam(0.0));
    CHECK(rel_close(kolmogorov_distance(two, mu(2, 0.0), std::sqrt(sigma2(2, 0.0))),
                    0.34134474606854295, 1e-13));
}

TEST_CASE("clt certificate at pinned points") {
    auto a = clt_check(1000, 0.0);
    CHECK(rel_close(a.sup_distance, 0.01261986972407126, 1e-10));
    CHECK(rel_close(a.coarse_bound, 0.7975 / std::sqrt(999.0 / 4.0), 1e-13));
    CHECK(a.sup_distance <= a.be_bound);
    CHECK(a.be_bound <= a.coarse_bound);
    CHECK(a.passed);

    auto b = clt_check(100, 1.0);
    CHECK(rel_close(b.sup_distance, 0.13141205657292618, 1e-10));
    CHECK(rel_close(b.coarse_bound, 0.7975 / 1.8847794612247682, 1e-12));
    CHECK(b.passed);

    auto c = clt_check(10000, 0.5);
    CHECK(sigma2(10000, 0.5) >= (std::sqrt(10000.0) - 1.0) / 2.0);
    CHECK(c.passed);
}

TEST_CASE("clt certificate holds across the grid") {
    for (int n : {2, 10, 100, 1000}) {
        for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            CAPTURE(n);
            CAPTURE(s);
            auto r = clt_check(n, s);
            CHECK(r.sup_distance <= r.be_bound);
            CHECK(r.be_bound <= r.coarse_bound * (1.0 + 1e-14));
            CHECK(r.passed);
        }
    }
    CHECK_THROWS_AS(clt_check(100, -0.5), std::domain_error);
    CHECK_THROWS_AS(clt_check(100, 1.5), std::domain_error);
    CHECK_THROWS_AS(clt_check(1, 0.5), std::invalid_argument);
}

TEST_CASE("distance shrinks from n=100 to n=4000") {
    for (double s : {0.0, 0.5, 1.0}) {
        CAPTURE(s);
        CHECK(clt_check(4000, s).sup_distance < clt_check(100, s).sup_distance);
    }
}

TEST_CASE("continuity correction tightens the binomial fit") {
    auto row = row_product(200, ScaleParam(0.0));
    double m = mu(200, 0.0);
    double sig = std::sqrt(sigma2(200, 0.0));
    CHECK(kolmogorov_distance(row, m, sig, true) < kolmogorov_distance(row, m, sig, false));
}

TEST_CASE("local limit report at pinned points") {
    auto a = llt_check(2, 0.0);
    CHECK(rel_close(a.max_dev, 0.0080292754808566502, 1e-12));
    CHECK(a.argmax_k == 1);
    CHECK(rel_close(a.empirical_k, a.max_dev * 0.5, 1e-15));

    auto b = llt_check(100, 1.0);
    CHECK(rel_close(b.max_dev, 0.036599453717763353, 1e-10));
    CHECK(b.argmax_k == 4);

    CHECK_THROWS_AS(llt_check(1, 0.0), std::invalid_argument);
}

TEST_CASE("pointwise ratio near the mean at n=100, s=1") {
    auto row = row_product(100, ScaleParam(1.0));
    double sig = std::sqrt(sigma2(100, 1.0));
    double x5 = (5.0 - mu(100, 1.0)) / sig;
    double ratio = sig * row.p[5] / normal_pdf(x5);
    CHECK(std::abs(ratio - 1.0) < 0.01);
    CHECK(rel_close(ratio, 1.0027661322, 1e-8));
}

TEST_CASE("empirical constant is stable across n") {
    double k100 = llt_check(100, 0.0).empirical_k;
    double k1000 = llt_check(1000, 0.0).empirical_k;
    CHECK(rel_close(k100, 0.00488062844113, 1e-9));
    CHECK(rel_close(k1000, 0.0015736062162, 1e-9));
    double spread = std::max(k100, k1000) / std::min(k100, k1000);
    CHECK(spread < 10.0);

    for (double s : {0.0, 0.5, 1.0}) {
        CAPTURE(s);
        double lo = 1e300, hi = 0.0;
        for (int n : {100, 400, 1600}) {
            double k = llt_check(n, s).empirical_k;
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
        CHECK(hi / lo < 10.0);
    }
}

TEST_CASE("gaussian window ratio tightens with n") {
    // the deviation over the mu +- 2 sigma window drops from n=100 to n=1600;
    // for s below 1 it decreases along the whole chain
    for (double s : {0.0, 0.5, 1.0}) {
        CAPTURE(s);
        CHECK(window_delta(1600, s) < window_delta(100, s));
    }
    for (double s : {0.0, 0.5}) {
        CAPTURE(s);
        double d100 = window_delta(100, s);
        double d400 = window_delta(400, s);
        double d1600 = window_delta(1600, s);
        CHECK(d400 < d100);
        CHECK(d1600 < d400);
    }
}

TEST_CASE("stirling ratio approximation") {
    auto a = approx_stirling(100, 5);
    CHECK(rel_close(a.exact_value, 21.120441510771969, 1e-12));
    CHECK(rel_close(a.approx_value, 21.062180734360151, 1e-12));
    CHECK(rel_close(a.relative_error_percent, 0.27585018, 1e-6));

    auto b = approx_stirling(3, 2);
    CHECK(rel_close(b.exact_value, 1.5, 1e-14));
    CHECK(rel_close(b.approx_value, 1.6911601757930785, 1e-13));

    // far-tail query: fields populated, error large but finite
    auto c = approx_stirling(10, 10);
    CHECK(rel_close(c.exact_value, 2.7557319223985891e-6, 1e-12));
    CHECK(rel_close(c.approx_value, 4.5599741989945779e-8, 1e-12));
    CHECK(c.relative_error_percent > 90.0);
    CHECK(std::isfinite(c.relative_error_percent));

    CHECK_THROWS_AS(approx_stirling(10, 0), std::invalid_argument);
    CHECK_THROWS_AS(approx_stirling(10, 11), std::invalid_argument);
    CHECK_THROWS_AS(approx_stirling(1, 1), std::invalid_argument);
}

} // TEST_SUITE
