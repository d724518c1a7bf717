#ifndef PBPLAN_RATIONAL_HPP
#define PBPLAN_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pbplan {

/// Exact arbitrary-precision rational number, always kept in lowest terms
/// with a positive denominator. Every cost, reward and bias value in the
/// library is one of these; doubles only appear in rendered reports.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : value_(static_cast<long>(value)) {}
    Rational(std::int64_t num, std::int64_t den) {
        if (den == 0) {
            throw std::domain_error("rational with zero denominator");
        }
        value_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
        value_.canonicalize();
    }

    /// Parses "p/q", "p" or "-p" (surrounding whitespace not allowed).
    static Rational parse(std::string_view text) {
        if (text.empty()) {
            throw std::invalid_argument("empty rational literal");
        }
        auto digits_ok = [](std::string_view s) {
            if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
                s.remove_prefix(1);
            }
            if (s.empty()) {
                return false;
            }
            for (char c : s) {
                if (c < '0' || c > '9') {
                    return false;
                }
            }
            return true;
        };
        const auto slash = text.find('/');
        std::string_view num = text.substr(0, slash);
        std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
        if (!digits_ok(num) || (slash != std::string_view::npos && (!digits_ok(den) || den.front() == '-' || den.front() == '+'))) {
            throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
        }
        Rational r;
        std::string n(num);
        if (n.front() == '+') {
            n.erase(0, 1);
        }
        r.value_.get_num().set_str(n, 10);
        if (slash != std::string_view::npos) {
            std::string d(den);
            if (d.front() == '+') {
                d.erase(0, 1);
            }
            r.value_.get_den().set_str(d, 10);
            if (r.value_.get_den() == 0) {
                throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
            }
        }
        r.value_.canonicalize();
        return r;
    }

    static Rational from_mpq(mpq_class q) {
        Rational r;
        r.value_ = std::move(q);
        r.value_.canonicalize();
        return r;
    }

    const mpq_class& mpq() const { return value_; }

    std::string numerator_str() const { return value_.get_num().get_str(); }
    std::string denominator_str() const { return value_.get_den().get_str(); }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    /// Canonical text: "p/q" in lowest terms, or "p" for integers.
    std::string str() const {
        if (is_integer()) {
            return numerator_str();
        }
        return numerator_str() + "/" + denominator_str();
    }

    double to_double() const { return value_.get_d(); }

    /// Decimal rendering with 15 significant digits; for humans only.
    std::string decimal() const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.15g", to_double());
        return buf;
    }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.sign() == 0) {
            throw std::domain_error("division by zero rational");
        }
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return from_mpq(mpq_class(-a.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class value_{0};
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace pbplan

#endif
