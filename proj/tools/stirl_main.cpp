#include <charconv>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stirl/errors.hpp"
#include "stirl/exact.hpp"
#include "stirl/limit_checks.hpp"
#include "stirl/modes.hpp"
#include "stirl/moments.hpp"
#include "stirl/rows.hpp"

using nlohmann::ordered_json;

namespace {

// shortest round-trip rendering, used wherever full precision is displayed
std::string fmt_double(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string fixed_digits(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

// truncate toward zero at the given decimal count (display convention for
// quoted reference values)
std::string trunc_digits(double v, int decimals) {
    double scale = std::pow(10.0, decimals);
    return fixed_digits(std::trunc(v * scale) / scale, decimals);
}

ordered_json envelope(const char* command, ordered_json params, ordered_json results) {
    return ordered_json{{"command", command},
                        {"params", std::move(params)},
                        {"results", std::move(results)},
                        {"format_version", "1"}};
}

void emit(const ordered_json& env) {
    std::cout << env.dump(2) << '\n';
}

// "1..10,100,1000" -> {1,...,10,100,1000}
std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    auto read_int = [&text](std::size_t& at) {
        int v = 0;
        auto [p, ec] = std::from_chars(text.data() + at, text.data() + text.size(), v);
        if (ec != std::errc() || v < 1)
            throw std::invalid_argument("bad n-list entry in '" + text + "'");
        at = static_cast<std::size_t>(p - text.data());
        return v;
    };
    while (pos < text.size()) {
        int a = read_int(pos);
        if (text.compare(pos, 2, "..") == 0) {
            pos += 2;
            int b = read_int(pos);
            if (b < a) throw std::invalid_argument("descending range in '" + text + "'");
            for (int v = a; v <= b; ++v) out.push_back(v);
        } else {
            out.push_back(a);
        }
        if (pos < text.size()) {
            if (text[pos] != ',') throw std::invalid_argument("bad n-list separator in '" + text + "'");
            ++pos;
            if (pos == text.size()) throw std::invalid_argument("trailing comma in '" + text + "'");
        }
    }
    if (out.empty()) throw std::invalid_argument("empty n-list");
    return out;
}

int run_row(int n, double s, bool exact, const std::string& format) {
    stirl::ScaleParam sp(s);
    ordered_json params{{"n", n}, {"s", s}, {"exact", exact}, {"format", format}};

    if (exact) {
        if (!sp.is_integer())
            throw std::invalid_argument("--exact requires an integer s, got " + fmt_double(s));
        stirl::ExactRow row = stirl::exact_row_integer_s(n, sp.as_integer());
        std::string den = row.common_denominator.get_str();
        if (format == "csv") {
            std::cout << "k,numerator,denominator,p\n";
            for (int k = 0; k <= row.n; ++k) {
                const auto& num = row.numerators[static_cast<std::size_t>(k)];
                std::cout << k << ',' << num.get_str() << ',' << den << ','
                          << fmt_double(stirl::quotient_to_double(num, row.common_denominator))
                          << '\n';
            }
            return 0;
        }
        ordered_json entries = ordered_json::array();
        for (int k = 0; k <= row.n; ++k) {
            const auto& num = row.numerators[static_cast<std::size_t>(k)];
            entries.push_back(
                ordered_json{{"k", k},
                             {"numerator", num.get_str()},
                             {"p", stirl::quotient_to_double(num, row.common_denominator)}});
        }
        emit(envelope("row", std::move(params),
                      ordered_json{{"n", n}, {"s", s}, {"denominator", den},
                                   {"entries", std::move(entries)}}));
        return 0;
    }

    stirl::ProbabilityRow row = stirl::row_product(n, sp);
    stirl::validate_row(row);
    if (format == "csv") {
        std::cout << "k,p\n";
        for (int k = 0; k <= row.n; ++k)
            std::cout << k << ',' << fmt_double(row.p[static_cast<std::size_t>(k)]) << '\n';
        return 0;
    }
    ordered_json entries = ordered_json::array();
    for (int k = 0; k <= row.n; ++k)
        entries.push_back(ordered_json{{"k", k}, {"p", row.p[static_cast<std::size_t>(k)]}});
    emit(envelope("row", std::move(params),
                  ordered_json{{"n", n}, {"s", s}, {"entries", std::move(entries)}}));
    return 0;
}

int run_moments(int n, double s) {
    auto m = stirl::moment_summary(n, s);
    emit(envelope("moments", ordered_json{{"n", n}, {"s", s}},
                  ordered_json{{"n", m.n},
                               {"s", m.s},
                               {"mu", m.mu},
                               {"sigma2", m.sigma2},
                               {"sigma", std::sqrt(m.sigma2)},
                               {"mu_prime", m.mu_prime},
                               {"mu_second", m.mu_second},
                               {"rho_sum", m.rho_sum},
                               {"be_ratio", m.be_ratio}}));
    return 0;
}

int run_clt(int n, double s, bool correction) {
    auto r = stirl::clt_check(n, s, correction);
    emit(envelope("clt",
                  ordered_json{{"n", n}, {"s", s}, {"continuity_correction", correction}},
                  ordered_json{{"n", r.n},
                               {"s", r.s},
                               {"sup_distance", r.sup_distance},
                               {"be_bound", r.be_bound},
                               {"coarse_bound", r.coarse_bound},
                               {"passed", r.passed}}));
    return r.passed ? 0 : 3;
}

int run_llt(int n, double s) {
    auto r = stirl::llt_check(n, s);
    emit(envelope("llt", ordered_json{{"n", n}, {"s", s}},
                  ordered_json{{"n", r.n},
                               {"s", r.s},
                               {"max_dev", r.max_dev},
                               {"argmax_k", r.argmax_k},
                               {"empirical_k", r.empirical_k}}));
    return 0;
}

int run_modes(int n, double s) {
    auto r = stirl::darroch_check(n, s);
    emit(envelope("modes", ordered_json{{"n", n}, {"s", s}},
                  ordered_json{{"n", r.n},
                               {"s", r.s},
                               {"modes", r.modes},
                               {"mu", r.mu},
                               {"darroch_ok", r.darroch_ok},
                               {"unique_by_criterion", r.unique_by_criterion
                                                           ? ordered_json(*r.unique_by_criterion)
                                                           : ordered_json(nullptr)}}));
    return 0;
}

int run_find_s(int n, int k0) {
    auto sol = stirl::solve_s_for_mean(n, k0);
    auto rep = stirl::find_modes(stirl::row_product(n, stirl::ScaleParam(sol.s_star)));
    emit(envelope("find-s", ordered_json{{"n", n}, {"k0", k0}},
                  ordered_json{{"n", sol.n},
                               {"k0", sol.k0},
                               {"s_star", sol.s_star},
                               {"residual", sol.residual},
                               {"s_lo", sol.s_lo},
                               {"s_hi", sol.s_hi},
                               {"modes_at_s_star", rep.modes}}));
    return 0;
}

int run_approx(int n, int k) {
    auto r = stirl::approx_stirling(n, k);
    emit(envelope("approx", ordered_json{{"n", n}, {"k", k}},
                  ordered_json{{"n", r.n},
                               {"k", r.k},
                               {"exact_value", r.exact_value},
                               {"approx_value", r.approx_value},
                               {"relative_error_percent", r.relative_error_percent}}));
    return 0;
}

int run_table1(const std::string& n_list, bool full) {
    auto ns = parse_n_list(n_list);
    int hw = full ? 22 : 10;
    std::cout << std::setw(6) << "n" << std::setw(hw) << "H_n" << std::setw(9) << "m_n(1)"
              << std::setw(10) << "(n+1)/2" << '\n';
    for (int n : ns) {
        double hn = stirl::harmonic(n, 1);
        std::string mode = "-";
        if (n >= 3) mode = std::to_string(stirl::find_modes(stirl::stirling_row(n)).modes.front());
        std::cout << std::setw(6) << n << std::setw(hw)
                  << (full ? fmt_double(hn) : fixed_digits(hn, 2)) << std::setw(9) << mode
                  << std::setw(10) << fmt_double((n + 1) / 2.0) << '\n';
    }
    return 0;
}

int run_table2(bool full) {
    auto r = stirl::approx_stirling(100, 5);
    std::string exact = full ? fmt_double(r.exact_value) : trunc_digits(r.exact_value, 7);
    std::string approx = full ? fmt_double(r.approx_value) : trunc_digits(r.approx_value, 6);
    std::string err = (full ? fmt_double(r.relative_error_percent)
                            : fixed_digits(r.relative_error_percent, 2)) +
                      "%";
    std::cout << std::left << std::setw(25) << "Exact value" << exact << '\n'
              << std::left << std::setw(25) << "Gaussian approximation" << approx << '\n'
              << std::left << std::setw(25) << "Relative error" << err << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coefficient rows interpolating between binomial and Stirling cycle distributions"};
    app.require_subcommand(1);

    int n = 0, k0 = 0, k = 0;
    double s = 0.0;
    bool exact = false, correction = false, full = false;
    std::string format = "json";
    std::string n_list = "1..10,100,1000";
    int rc = 0;

    auto* row_cmd = app.add_subcommand("row", "Emit one coefficient row as probabilities");
    row_cmd->add_option("--n", n, "row length")->required();
    row_cmd->add_option("--s", s, "interpolation parameter")->required();
    row_cmd->add_flag("--exact", exact, "big-integer path (integer s, |s| <= 8)");
    row_cmd->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    row_cmd->callback([&] { rc = run_row(n, s, exact, format); });

    auto* moments_cmd = app.add_subcommand("moments", "Mean, variance, derivatives, third moments");
    moments_cmd->add_option("--n", n, "row length")->required();
    moments_cmd->add_option("--s", s, "interpolation parameter")->required();
    moments_cmd->callback([&] { rc = run_moments(n, s); });

    auto* clt_cmd = app.add_subcommand("clt", "Normal-approximation certificate (exit 3 on failure)");
    clt_cmd->add_option("--n", n, "row length")->required();
    clt_cmd->add_option("--s", s, "interpolation parameter in [0,1]")->required();
    clt_cmd->add_flag("--continuity-correction", correction, "sample the gap at half-integers");
    clt_cmd->callback([&] { rc = run_clt(n, s, correction); });

    auto* llt_cmd = app.add_subcommand("llt", "Pointwise Gaussian deviation report");
    llt_cmd->add_option("--n", n, "row length")->required();
    llt_cmd->add_option("--s", s, "interpolation parameter")->required();
    llt_cmd->callback([&] { rc = run_llt(n, s); });

    auto* modes_cmd = app.add_subcommand("modes", "Mode set and mean-distance check");
    modes_cmd->add_option("--n", n, "row length")->required();
    modes_cmd->add_option("--s", s, "interpolation parameter")->required();
    modes_cmd->callback([&] { rc = run_modes(n, s); });

    auto* find_cmd = app.add_subcommand("find-s", "Invert the mean to hit an integer target");
    find_cmd->add_option("--n", n, "row length")->required();
    find_cmd->add_option("--k0", k0, "integer mean target")->required();
    find_cmd->callback([&] { rc = run_find_s(n, k0); });

    auto* approx_cmd = app.add_subcommand("approx", "Gaussian approximation of a Stirling ratio");
    approx_cmd->add_option("--n", n, "row length")->required();
    approx_cmd->add_option("--k", k, "index")->required();
    approx_cmd->callback([&] { rc = run_approx(n, k); });

    auto* t1_cmd = app.add_subcommand("table1", "Harmonic numbers, modes, and midpoints");
    t1_cmd->add_option("--n-list", n_list, "comma list with a..b ranges");
    t1_cmd->add_flag("--full", full, "full precision");
    t1_cmd->callback([&] { rc = run_table1(n_list, full); });

    auto* t2_cmd = app.add_subcommand("table2", "Exact vs Gaussian value at n=100, k=5");
    t2_cmd->add_flag("--full", full, "full precision");
    t2_cmd->callback([&] { rc = run_table2(full); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const stirl::integrity_error& e) {
        std::cerr << "integrity error: " << e.what() << '\n';
        return 4;
    } catch (const stirl::ambiguity_error& e) {
        std::cerr << "ambiguous result: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}
