#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace alphaport {

/// One power-law term D * v^alpha of a conductor characteristic.
struct PowerTerm {
    double coefficient = 1.0;  ///< D > 0
    double exponent = 1.0;     ///< alpha > 0

    bool operator==(const PowerTerm&) const = default;
};

/// Monotone quasi-polynomial characteristic i = f(v) = sum_p D_p v^{alpha_p}.
///
/// Terms are kept sorted by ascending exponent; exponents closer than
/// `kMergeTolerance` are merged by summing their coefficients. Every
/// coefficient and exponent is strictly positive, so f is strictly
/// increasing on v >= 0 with f(0) = 0.
///
/// Only nonnegative arguments are meaningful for the public API. The odd
/// extension f(-v) = -f(v) is available through `eval_signed` for solvers
/// whose iterates may temporarily reverse a branch.
class Characteristic {
public:
    static constexpr double kMergeTolerance = 1e-12;

    /// Throws DomainError on an empty list or on a non-positive or non-finite
    /// coefficient/exponent.
    explicit Characteristic(std::vector<PowerTerm> terms);

    /// Single power law D * v^alpha.
    static Characteristic power_law(double alpha, double coefficient = 1.0);

    const std::vector<PowerTerm>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    double min_exponent() const noexcept { return terms_.front().exponent; }
    double max_exponent() const noexcept { return terms_.back().exponent; }
    double coefficient_sum() const noexcept;

    /// f(v) for v >= 0; DomainError for v < 0.
    double eval(double v) const;

    /// f'(v) for v > 0, or v = 0 when every exponent is >= 1 (the slope is
    /// then finite). DomainError otherwise.
    double slope(double v) const;

    /// The unique v >= 0 with f(v) = i. DomainError for i < 0.
    double invert(double i) const;

    /// Co-content: integral of f from 0 to v, v >= 0.
    double co_content(double v) const;

    /// Odd extension sign(v) f(|v|), defined for every real v.
    double eval_signed(double v) const noexcept;

    /// Slope of the odd extension at |v|. Infinite at 0 for sublinear terms.
    double slope_abs(double v) const noexcept;

    /// Same exponents, coefficients multiplied by `factor` > 0.
    Characteristic scaled(double factor) const;

    bool operator==(const Characteristic&) const = default;

private:
    std::vector<PowerTerm> terms_;
};

/// Term-wise sum of characteristics (the additive effect of short-circuiting
/// corresponding nodes of same-topology circuits). DomainError when empty.
Characteristic combine(std::span<const Characteristic> parts);

/// Parses "D:alpha[,D:alpha...]". Throws ParseError (line 0) on bad syntax
/// and DomainError on non-positive values.
Characteristic parse_characteristic(std::string_view text);

/// Inverse of `parse_characteristic`, using shortest round-trip formatting.
std::string to_string(const Characteristic& f);

}  // namespace alphaport
