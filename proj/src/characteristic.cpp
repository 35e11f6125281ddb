#include "alphaport/characteristic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "alphaport/error.hpp"

namespace alphaport {

namespace {

void check_term(const PowerTerm& t) {
    if (!std::isfinite(t.coefficient) || t.coefficient <= 0.0) {
        throw DomainError("characteristic coefficient must be positive and finite");
    }
    if (!std::isfinite(t.exponent) || t.exponent <= 0.0) {
        throw DomainError("characteristic exponent must be positive and finite");
    }
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view token, std::string_view what) {
    token = trim(token);
    double value = 0.0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (token.empty() || ec != std::errc{} || ptr != end) {
        throw ParseError(0, "invalid " + std::string(what) + " '" + std::string(token) + "'");
    }
    return value;
}

std::string shortest(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ec == std::errc{} ? ptr : buf);
}

}  // namespace

Characteristic::Characteristic(std::vector<PowerTerm> terms) {
    if (terms.empty()) throw DomainError("characteristic needs at least one term");
    for (const auto& t : terms) check_term(t);
    std::sort(terms.begin(), terms.end(),
              [](const PowerTerm& l, const PowerTerm& r) { return l.exponent < r.exponent; });
    for (const auto& t : terms) {
        if (!terms_.empty() && t.exponent - terms_.back().exponent <= kMergeTolerance) {
            terms_.back().coefficient += t.coefficient;
        } else {
            terms_.push_back(t);
        }
    }
}

Characteristic Characteristic::power_law(double alpha, double coefficient) {
    return Characteristic({{coefficient, alpha}});
}

double Characteristic::coefficient_sum() const noexcept {
    double s = 0.0;
    for (const auto& t : terms_) s += t.coefficient;
    return s;
}

double Characteristic::eval(double v) const {
    if (!(v >= 0.0)) throw DomainError("characteristic evaluated at negative voltage");
    return eval_signed(v);
}

double Characteristic::eval_signed(double v) const noexcept {
    const double a = std::fabs(v);
    if (a == 0.0) return 0.0;
    double s = 0.0;
    for (const auto& t : terms_) s += t.coefficient * std::pow(a, t.exponent);
    return v < 0.0 ? -s : s;
}

double Characteristic::slope(double v) const {
    if (!(v >= 0.0)) throw DomainError("slope evaluated at negative voltage");
    if (v == 0.0 && min_exponent() < 1.0) {
        throw DomainError("slope is unbounded at v = 0 for exponents below 1");
    }
    return slope_abs(v);
}

double Characteristic::slope_abs(double v) const noexcept {
    const double a = std::fabs(v);
    double s = 0.0;
    for (const auto& t : terms_) {
        if (a == 0.0) {
            if (t.exponent < 1.0) return std::numeric_limits<double>::infinity();
            if (t.exponent == 1.0) s += t.coefficient;
            continue;
        }
        s += t.coefficient * t.exponent * std::pow(a, t.exponent - 1.0);
    }
    return s;
}

double Characteristic::co_content(double v) const {
    if (!(v >= 0.0)) throw DomainError("co-content evaluated at negative voltage");
    double s = 0.0;
    for (const auto& t : terms_) {
        s += t.coefficient * std::pow(v, t.exponent + 1.0) / (t.exponent + 1.0);
    }
    return s;
}

double Characteristic::invert(double i) const {
    if (!(i >= 0.0)) throw DomainError("cannot invert a negative current");
    if (i == 0.0) return 0.0;
    if (terms_.size() == 1) {
        const auto& t = terms_.front();
        return std::pow(i / t.coefficient, 1.0 / t.exponent);
    }

    const double tol = 1e-14 * i;
    double lo = 0.0;
    double hi = std::max(1.0, std::pow(i / coefficient_sum(), 1.0 / min_exponent()));
    while (eval_signed(hi) < i) {
        lo = hi;
        hi *= 2.0;
    }

    // Safeguarded Newton: fall back to bisection whenever the step leaves
    // the bracket.
    double v = 0.5 * (lo + hi);
    for (int iter = 0; iter < 400; ++iter) {
        const double r = eval_signed(v) - i;
        if (std::fabs(r) <= tol) return v;
        if (r > 0.0) hi = v; else lo = v;
        const double d = slope_abs(v);
        double next = (std::isfinite(d) && d > 0.0) ? v - r / d : lo - 1.0;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == v || hi - lo <= std::numeric_limits<double>::epsilon() * hi) return next;
        v = next;
    }
    return v;
}

Characteristic Characteristic::scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw DomainError("scale factor must be positive");
    auto t = terms_;
    for (auto& term : t) term.coefficient *= factor;
    return Characteristic(std::move(t));
}

Characteristic combine(std::span<const Characteristic> parts) {
    if (parts.empty()) throw DomainError("combine needs at least one characteristic");
    std::vector<PowerTerm> all;
    for (const auto& p : parts) all.insert(all.end(), p.terms().begin(), p.terms().end());
    return Characteristic(std::move(all));
}

Characteristic parse_characteristic(std::string_view text) {
    std::vector<PowerTerm> terms;
    text = trim(text);
    if (text.empty()) throw ParseError(0, "empty characteristic");
    while (true) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        const auto colon = item.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError(0, "characteristic term '" + std::string(item) + "' is not D:alpha");
        }
        terms.push_back({parse_double(item.substr(0, colon), "coefficient"),
                         parse_double(item.substr(colon + 1), "exponent")});
        if (comma == std::string_view::npos) break;
        text = text.substr(comma + 1);
    }
    return Characteristic(std::move(terms));
}

std::string to_string(const Characteristic& f) {
    std::ostringstream out;
    bool first = true;
    for (const auto& t : f.terms()) {
        if (!first) out << ',';
        out << shortest(t.coefficient) << ':' << shortest(t.exponent);
        first = false;
    }
    return out.str();
}

}  // namespace alphaport
