#include "stirl/modes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

#include "stirl/errors.hpp"
#include "stirl/moments.hpp"
#include "stirl/summation.hpp"

namespace stirl {

namespace {

constexpr long kExactEscalationCap = 8;

int thread_cap() {
    if (const char* e = std::getenv("STIRL_INTERP_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(e, &end, 10);
        if (end != e && *end == '\0' && v >= 1 && v <= 256) return static_cast<int>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

struct ExactModeResult {
    int mode;
    int status; // 0 unique, 1 plateau, 2 structural violation
};

ExactModeResult exact_mode_of(const std::vector<mpz_class>& nums, int n) {
    int best = 1;
    std::vector<int> ties{1};
    for (int k = 2; k <= n; ++k) {
        int c = cmp(nums[static_cast<std::size_t>(k)], nums[static_cast<std::size_t>(best)]);
        if (c > 0) {
            best = k;
            ties.assign(1, k);
        } else if (c == 0) {
            ties.push_back(k);
        }
    }
    if (ties.size() == 1) return {ties[0], 0};
    if (ties.size() == 2 && ties[1] == ties[0] + 1) return {ties[0], 1};
    return {0, 2};
}

ModeReport build_report(int n, double s, std::vector<int> modes, double mean) {
    bool darroch = true;
    for (int m : modes)
        if (!(std::abs(static_cast<double>(m) - mean) < 1.0)) darroch = false;
    std::optional<bool> unique;
    if (modes.size() == 1) unique = unique_mode_criterion(mean, modes[0], n);
    return ModeReport{n, s, std::move(modes), mean, darroch, unique};
}

// Newton with a hard bisection bracket; mu(n, .) is strictly decreasing on
// [0,1], so f(lo) > 0 > f(hi) is preserved throughout.
double solve_mu_target(int n, double target) {
    double lo = 0.0, hi = 1.0;
    double x = 0.5;
    double f = mu(n, x) - target;
    for (int it = 0; it < 100; ++it) {
        if (f > 0.0)
            lo = x;
        else
            hi = x;
        if (std::abs(f) <= 1e-13) break;
        double fp = mu_prime(n, x);
        double nx = x - f / fp;
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        if (std::abs(nx - x) < 1e-15) {
            x = nx;
            f = mu(n, x) - target;
            break;
        }
        x = nx;
        f = mu(n, x) - target;
    }
    return x;
}

} // namespace

bool unique_mode_criterion(double mu_value, int k0, int n) {
    if (k0 < 0 || k0 > n) throw std::invalid_argument("k0 outside [0, n]");
    double up = static_cast<double>(k0) + 1.0 / (k0 + 2);
    double down = static_cast<double>(k0) - 1.0 / (n - k0 + 2);
    return (k0 <= mu_value && mu_value < up) || (down < mu_value && mu_value <= k0);
}

ModeReport find_modes(const ExactRow& row) {
    ExactModeResult r = exact_mode_of(row.numerators, row.n);
    if (r.status == 2)
        throw integrity_error("exact row at n = " + std::to_string(row.n) +
                              " has a non-unimodal maximum set");
    std::vector<int> modes{r.mode};
    if (r.status == 1) modes.push_back(r.mode + 1);

    mpz_class total = 0, weighted = 0;
    for (int k = 0; k <= row.n; ++k) {
        total += row.numerators[static_cast<std::size_t>(k)];
        mpz_addmul_ui(weighted.get_mpz_t(), row.numerators[static_cast<std::size_t>(k)].get_mpz_t(),
                      static_cast<unsigned long>(k));
    }
    double mean = quotient_to_double(weighted, total);

    double s = row.kind == ExactRowKind::stirling_first_kind  ? 1.0
               : row.kind == ExactRowKind::binomial_shifted   ? 0.0
                                                              : static_cast<double>(row.s);
    return build_report(row.n, s, std::move(modes), mean);
}

ModeReport find_modes(const ProbabilityRow& row) {
    const auto& p = row.p;
    double vmax = 0.0;
    for (double v : p) vmax = std::max(vmax, v);

    std::vector<int> tight, loose;
    for (int k = 0; k <= row.n; ++k) {
        double v = p[static_cast<std::size_t>(k)];
        if (v >= vmax * (1.0 - 1e-9)) tight.push_back(k);
        if (v >= vmax * (1.0 - 1e-6)) loose.push_back(k);
    }
    if (loose != tight) {
        // the float row cannot separate near-ties; decide exactly or refuse
        if (row.s.is_integer() && std::abs(row.s.as_integer()) <= kExactEscalationCap)
            return find_modes(exact_row_integer_s(row.n, row.s.as_integer()));
        throw ambiguity_error("mode detection numerically ambiguous at n = " +
                              std::to_string(row.n) + ", s = " + std::to_string(row.s.value()));
    }
    if (tight.size() > 2 || (tight.size() == 2 && tight[1] != tight[0] + 1))
        throw integrity_error("mode plateau of size " + std::to_string(tight.size()) +
                              " violates unimodality at n = " + std::to_string(row.n));

    CompensatedSum macc;
    for (int k = 1; k <= row.n; ++k) macc.add(static_cast<double>(k) * p[static_cast<std::size_t>(k)]);
    return build_report(row.n, row.s.value(), std::move(tight), macc.value());
}

ModeReport darroch_check(int n, double s) {
    ModeReport rep = find_modes(row_product(n, ScaleParam(s)));
    if (!rep.darroch_ok)
        throw integrity_error("mode further than 1 from the mean at n = " + std::to_string(n) +
                              ", s = " + std::to_string(s));
    return rep;
}

SParamSolution solve_s_for_mean(int n, int k0) {
    if (n < 6) throw std::invalid_argument("mean inversion needs n >= 6");
    double hn = harmonic(n, 1);
    double mid = 0.5 * (n + 1);
    if (!(static_cast<double>(k0) > hn && static_cast<double>(k0) < mid)) {
        int lo = static_cast<int>(std::floor(hn)) + 1;
        int hi = n % 2 == 1 ? (n + 1) / 2 - 1 : n / 2;
        throw std::invalid_argument("k0 = " + std::to_string(k0) + " not strictly between H_n and (n+1)/2; admissible range for n = " +
                                    std::to_string(n) + " is [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    }

    double s_star = solve_mu_target(n, static_cast<double>(k0));
    double residual = std::abs(mu(n, s_star) - static_cast<double>(k0));
    if (residual > 1e-12)
        throw std::runtime_error("residual " + std::to_string(residual) +
                                 " above 1e-12: double precision cannot pin s at this n");

    // window endpoints: where the one-mode criterion inequalities become tight
    double t_up = static_cast<double>(k0) + 1.0 / (k0 + 2);
    double t_down = static_cast<double>(k0) - 1.0 / (n - k0 + 2);
    double s_lo = t_up >= mid ? 0.0 : solve_mu_target(n, t_up);
    double s_hi = t_down <= hn ? 1.0 : solve_mu_target(n, t_down);
    return SParamSolution{n, k0, s_star, residual, s_lo, s_hi};
}

std::vector<ModeScanEntry> erdos_unique_mode_scan(int n_max) {
    if (n_max < 3) throw std::invalid_argument("scan needs n_max >= 3");

    int workers = thread_cap();
    const int batch_cap = std::clamp(4 * workers, 1, 32);

    std::vector<ModeScanEntry> out;
    out.reserve(static_cast<std::size_t>(n_max) - 2);

    // rolling Stirling row and rolling harmonic number
    std::vector<mpz_class> row(static_cast<std::size_t>(n_max) + 1);
    row[1] = 1;
    int n_cur = 1;
    CompensatedSum h;
    h.add(1.0);

    auto advance = [&row, &n_cur]() {
        for (int k = n_cur + 1; k >= 1; --k) {
            mpz_class next = row[static_cast<std::size_t>(k - 1)];
            mpz_addmul_ui(next.get_mpz_t(), row[static_cast<std::size_t>(k)].get_mpz_t(),
                          static_cast<unsigned long>(n_cur));
            row[static_cast<std::size_t>(k)] = std::move(next);
        }
        ++n_cur;
    };

    auto emit = [&out](int n, double hn, const ExactModeResult& r) {
        if (r.status == 1)
            throw integrity_error("plateau at n = " + std::to_string(n) +
                                  " contradicts the one-mode property");
        if (r.status == 2)
            throw integrity_error("non-unimodal maximum set at n = " + std::to_string(n));
        out.push_back(ModeScanEntry{n, r.mode, unique_mode_criterion(hn, r.mode, n)});
    };

    while (n_cur < n_max) {
        int batch = std::min(batch_cap, n_max - n_cur);
        if (workers <= 1 || batch < 2) {
            for (int i = 0; i < batch; ++i) {
                advance();
                h.add(1.0 / n_cur);
                if (n_cur >= 3) emit(n_cur, h.value(), exact_mode_of(row, n_cur));
            }
            continue;
        }

        // copy a window of rows, scan them on the pool, emit in order
        std::vector<std::pair<int, std::vector<mpz_class>>> jobs;
        std::vector<double> hn_at;
        jobs.reserve(static_cast<std::size_t>(batch));
        for (int i = 0; i < batch; ++i) {
            advance();
            h.add(1.0 / n_cur);
            if (n_cur >= 3) {
                jobs.emplace_back(n_cur, std::vector<mpz_class>(
                                             row.begin(), row.begin() + n_cur + 1));
                hn_at.push_back(h.value());
            }
        }
        std::vector<ExactModeResult> results(jobs.size());
        std::atomic<std::size_t> cursor{0};
        auto work = [&jobs, &results, &cursor]() {
            for (std::size_t i = cursor.fetch_add(1); i < jobs.size(); i = cursor.fetch_add(1))
                results[i] = exact_mode_of(jobs[i].second, jobs[i].first);
        };
        std::vector<std::thread> pool;
        int spawn = std::min<std::size_t>(workers, jobs.size());
        pool.reserve(static_cast<std::size_t>(spawn));
        for (int t = 0; t < spawn; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();

        for (std::size_t i = 0; i < jobs.size(); ++i) emit(jobs[i].first, hn_at[i], results[i]);
    }
    return out;
}

TaylorCheck taylor_mu_check(int n, double s) {
    if (n < 3) throw std::invalid_argument("taylor_mu_check requires n >= 3");
    if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("taylor_mu_check requires s in [0,1]");

    CompensatedSum lacc;
    for (int k = 2; k < n; ++k) lacc.add(std::log(static_cast<double>(k)));
    double lhs = std::abs(mu(n, s) - 0.5 * (n + 1) + 0.25 * lacc.value() * s);

    // max |mu''| over [0,1]: coarse grid, then a fine sweep around the argmax
    double best = 0.0;
    int best_i = 0;
    for (int i = 0; i <= 63; ++i) {
        double v = std::abs(mu_second(n, static_cast<double>(i) / 63.0));
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    double lo = std::max(0.0, (best_i - 1) / 63.0);
    double hi = std::min(1.0, (best_i + 1) / 63.0);
    for (int i = 0; i <= 200; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / 200.0;
        best = std::max(best, std::abs(mu_second(n, x)));
    }

    double bound = 0.5 * s * s * best;
    bool ok = lhs <= bound * (1.0 + 1e-12) + 1e-15;
    return TaylorCheck{n, s, lhs, bound, ok};
}

} // namespace stirl
