#ifndef PBPLAN_FAMILIES_HPP
#define PBPLAN_FAMILIES_HPP

#include "pbplan/bias_set.hpp"
#include "pbplan/rational.hpp"
#include "pbplan/task_graph.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbplan {

/// Two-week training scenario: workouts A (1, 1) and B (3, 9), final race
/// 13 after AA, 1 after BB and 16 after mixing. The graph itself does not
/// depend on eps; eps only fixes the two biases 1/2 - eps and 1/2 + eps.
inline TaskGraph gen_alice_bob(const Rational& eps) {
    if (eps.sign() <= 0 || eps > Rational(1, 54)) {
        throw std::invalid_argument("eps must lie in (0, 1/54], got " + eps.str());
    }
    GraphBuilder gb;
    for (const char* label : {"s", "v_A", "v_B", "v_AA", "v_AB", "v_BB", "t"}) {
        gb.add_node(label);
    }
    gb.add_edge("s", "v_A", 1);
    gb.add_edge("s", "v_B", 3);
    gb.add_edge("v_A", "v_AA", 1);
    gb.add_edge("v_A", "v_AB", 9);
    gb.add_edge("v_B", "v_BB", 9);
    gb.add_edge("v_B", "v_AB", 1);
    gb.add_edge("v_AA", "t", 13);
    gb.add_edge("v_AB", "t", 16);
    gb.add_edge("v_BB", "t", 1);
    return gb.build("s", "t");
}

/// {1/2 - eps, 1/2 + eps}
inline BiasSet alice_bob_biases(const Rational& eps) {
    const Rational half(1, 2);
    return BiasSet::points({half - eps, half + eps});
}

namespace detail {

inline std::int64_t integral_or_throw(const Rational& x, const std::string& what) {
    if (!x.is_integer() || !x.mpq().get_num().fits_slong_p()) {
        throw std::invalid_argument(what + " must be integral, got " + x.str());
    }
    return x.mpq().get_num().get_si();
}

inline std::string v_label(std::int64_t i) { return "v_" + std::to_string(i); }

} // namespace detail

/// Main path v_0..v_{12+4/a} (first edge 2, others 1) with a shortcut
/// v_1 -> w (4) -> t (6 + 3/a). Requires 0 < a <= 3/8 and 4/a integral.
inline TaskGraph gen_pou_family(const Rational& a) {
    if (a.sign() <= 0 || a > Rational(3, 8)) {
        throw std::invalid_argument("a must lie in (0, 3/8], got " + a.str());
    }
    const std::int64_t last = 12 + detail::integral_or_throw(Rational(4) / a, "4/a");
    GraphBuilder gb;
    for (std::int64_t i = 0; i <= last; ++i) {
        gb.add_node(detail::v_label(i));
    }
    gb.add_node("w");
    gb.add_edge(detail::v_label(0), detail::v_label(1), 2);
    for (std::int64_t i = 1; i < last; ++i) {
        gb.add_edge(detail::v_label(i), detail::v_label(i + 1), 1);
    }
    gb.add_edge(detail::v_label(1), "w", 4);
    gb.add_edge("w", detail::v_label(last), Rational(6) + Rational(3) / a);
    return gb.build(detail::v_label(0), detail::v_label(last));
}

/// Main path of 1/a^2 + 1/a + 2 unit edges; shortcuts v_i -> w (2) for
/// 0 <= i <= 1/a^2 sharing w -> t (1/a). Requires 0 < a < 1/2, 1/a integral.
inline TaskGraph gen_pov_family(const Rational& a) {
    if (a.sign() <= 0 || a >= Rational(1, 2)) {
        throw std::invalid_argument("a must lie in (0, 1/2), got " + a.str());
    }
    const std::int64_t inv = detail::integral_or_throw(Rational(1) / a, "1/a");
    const std::int64_t last = inv * inv + inv + 2;
    GraphBuilder gb;
    for (std::int64_t i = 0; i <= last; ++i) {
        gb.add_node(detail::v_label(i));
    }
    gb.add_node("w");
    for (std::int64_t i = 0; i < last; ++i) {
        gb.add_edge(detail::v_label(i), detail::v_label(i + 1), 1);
    }
    for (std::int64_t i = 0; i <= inv * inv; ++i) {
        gb.add_edge(detail::v_label(i), "w", 2);
    }
    gb.add_edge("w", detail::v_label(last), Rational(inv));
    return gb.build(detail::v_label(0), detail::v_label(last));
}

/// Seeded random DAG on exactly n nodes. Nodes 0..n-1 are in topological
/// order; a spine i -> i+1 puts every node on an s-t path, and extra
/// forward (possibly parallel) edges are sprinkled on top. Costs are
/// k/den with k uniform in [0, 4*den].
inline TaskGraph gen_random_dag(std::uint64_t seed, std::size_t n, std::int64_t cost_den) {
    if (n < 2) {
        throw std::invalid_argument("random DAG needs at least 2 nodes");
    }
    if (cost_den < 1) {
        throw std::invalid_argument("cost denominator must be positive");
    }
    std::mt19937_64 rng(seed);
    auto uniform = [&rng](std::uint64_t bound) { return rng() % bound; };
    auto cost = [&]() { return Rational(static_cast<std::int64_t>(uniform(4 * cost_den + 1)), cost_den); };
    GraphBuilder gb;
    for (std::size_t i = 0; i < n; ++i) {
        gb.add_node(i == 0 ? "s" : i + 1 == n ? "t" : "n" + std::to_string(i));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        gb.add_edge(i, i + 1, cost());
    }
    const std::size_t extra = uniform(n + n / 2 + 1);
    for (std::size_t k = 0; k < extra; ++k) {
        std::size_t i = uniform(n - 1);
        std::size_t j = i + 1 + uniform(n - 1 - i);
        gb.add_edge(i, j, cost());
    }
    return gb.build(0, n - 1);
}

} // namespace pbplan

#endif
