#ifndef PBPLAN_BIAS_SET_HPP
#define PBPLAN_BIAS_SET_HPP

#include "pbplan/rational.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbplan {

/// Closed, possibly empty subinterval of [0,1]; the set of biases for which
/// an edge is among the cheapest-looking choices at its tail.
struct BiasInterval {
    Rational lo{0};
    Rational hi{1};
    bool empty = false;

    static BiasInterval unit() { return {}; }
    static BiasInterval none() { return {Rational(1), Rational(0), true}; }

    bool contains(const Rational& x) const { return !empty && lo <= x && x <= hi; }

    friend bool operator==(const BiasInterval& a, const BiasInterval& b) {
        if (a.empty || b.empty) {
            return a.empty == b.empty;
        }
        return a.lo == b.lo && a.hi == b.hi;
    }
};

/// Union of sorted, pairwise-disjoint closed intervals inside (0,1].
class BiasSet {
public:
    struct Interval {
        Rational lo;
        Rational hi;

        bool operator==(const Interval&) const = default;
    };

    BiasSet() = default;

    /// Validates each interval and merges overlapping ones.
    explicit BiasSet(std::vector<Interval> intervals) {
        if (intervals.empty()) {
            throw std::invalid_argument("bias set must not be empty");
        }
        for (const auto& iv : intervals) {
            if (iv.lo.sign() <= 0 || iv.lo > iv.hi || iv.hi > Rational(1)) {
                throw std::invalid_argument("bias interval [" + iv.lo.str() + ", " + iv.hi.str() +
                                            "] must satisfy 0 < lo <= hi <= 1");
            }
        }
        std::sort(intervals.begin(), intervals.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        for (auto& iv : intervals) {
            if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
                intervals_.back().hi = pbplan::max(intervals_.back().hi, iv.hi);
            } else {
                intervals_.push_back(std::move(iv));
            }
        }
    }

    static BiasSet points(const std::vector<Rational>& values) {
        std::vector<Interval> ivs;
        ivs.reserve(values.size());
        for (const auto& v : values) {
            ivs.push_back({v, v});
        }
        return BiasSet(std::move(ivs));
    }

    static BiasSet single(const Rational& value) { return points({value}); }

    static BiasSet range(const Rational& lo, const Rational& hi) { return BiasSet({{lo, hi}}); }

    const std::vector<Interval>& intervals() const { return intervals_; }

    const Rational& min() const { return intervals_.front().lo; }
    const Rational& max() const { return intervals_.back().hi; }

    /// max B / min B.
    Rational tau() const { return max() / min(); }

    bool is_singleton() const { return intervals_.size() == 1 && intervals_.front().lo == intervals_.front().hi; }

    bool contains(const Rational& x) const {
        return std::any_of(intervals_.begin(), intervals_.end(),
                           [&](const Interval& iv) { return iv.lo <= x && x <= iv.hi; });
    }

    /// Smallest element of (iv ∩ B), if the intersection is non-empty.
    std::optional<Rational> min_within(const BiasInterval& iv) const {
        if (iv.empty) {
            return std::nullopt;
        }
        for (const auto& own : intervals_) {
            if (own.hi < iv.lo) {
                continue;
            }
            if (own.lo > iv.hi) {
                break;
            }
            return pbplan::max(own.lo, iv.lo);
        }
        return std::nullopt;
    }

    bool intersects(const BiasInterval& iv) const { return min_within(iv).has_value(); }

    /// Sorted, deduplicated endpoints of every interval.
    std::vector<Rational> endpoints() const {
        std::vector<Rational> out;
        for (const auto& iv : intervals_) {
            out.push_back(iv.lo);
            if (iv.hi != iv.lo) {
                out.push_back(iv.hi);
            }
        }
        return out;
    }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < intervals_.size(); ++i) {
            if (i) {
                s += ", ";
            }
            const auto& iv = intervals_[i];
            s += iv.lo == iv.hi ? iv.lo.str() : "[" + iv.lo.str() + ", " + iv.hi.str() + "]";
        }
        return s + "}";
    }

private:
    std::vector<Interval> intervals_;
};

} // namespace pbplan

#endif
