#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <stdexcept>

namespace ispnav {

// Affinely extended real: a double restricted to R ∪ {-inf, +inf}.
// NaN is rejected at the boundary, so <, ==, etc. form a total order:
// -inf < every finite value < +inf.
class ExtendedReal {
public:
    constexpr ExtendedReal() noexcept : v_(0.0) {}

    explicit ExtendedReal(double v) : v_(v) {
        if (std::isnan(v)) {
            throw std::invalid_argument("ExtendedReal: NaN is not representable");
        }
    }

    static constexpr ExtendedReal infinity() noexcept {
        return ExtendedReal(kInf, Unchecked{});
    }
    static constexpr ExtendedReal neg_infinity() noexcept {
        return ExtendedReal(-kInf, Unchecked{});
    }

    constexpr double value() const noexcept { return v_; }
    constexpr bool is_finite() const noexcept { return v_ > -kInf && v_ < kInf; }

    friend constexpr bool operator==(ExtendedReal a, ExtendedReal b) noexcept {
        return a.v_ == b.v_;
    }
    friend constexpr auto operator<=>(ExtendedReal a, ExtendedReal b) noexcept {
        return a.v_ <=> b.v_;
    }

private:
    struct Unchecked {};
    constexpr ExtendedReal(double v, Unchecked) noexcept : v_(v) {}

    static constexpr double kInf = std::numeric_limits<double>::infinity();

    double v_;
};

} // namespace ispnav
