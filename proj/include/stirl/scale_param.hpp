#pragma once

#include <cmath>
#include <stdexcept>

namespace stirl {

/// Exponent s of the weight h_s(k) = k^s, with the convention h_s(0) = 0
/// for every s (including s < 0, where 0^s would otherwise diverge).
class ScaleParam {
public:
    explicit ScaleParam(double s) : s_(s) {
        if (!std::isfinite(s)) throw std::invalid_argument("scale parameter must be finite");
    }

    double value() const noexcept { return s_; }

    /// True when s is an exact integer; enables the exact-arithmetic path.
    bool is_integer() const noexcept {
        return s_ == std::floor(s_) && std::abs(s_) <= 1e15;
    }

    long as_integer() const {
        if (!is_integer()) throw std::logic_error("scale parameter is not an integer");
        return static_cast<long>(s_);
    }

    /// h_s(k) = k^s, h_s(0) = 0.
    double weight(double k) const noexcept {
        if (k == 0.0) return 0.0;
        return std::pow(k, s_);
    }

private:
    double s_;
};

} // namespace stirl
