#ifndef PBPLAN_TESTS_FIXTURES_HPP
#define PBPLAN_TESTS_FIXTURES_HPP

#include "pbplan/pbplan.hpp"

#include <string>
#include <vector>

namespace fx {

using namespace pbplan;

inline Rational q(const char* text) { return Rational::parse(text); }

inline TaskGraph single_edge(const Rational& c) {
    GraphBuilder gb;
    gb.add_edge("s", "t", c);
    return gb.build("s", "t");
}

/// s -> n1 -> ... -> t with the given costs.
inline TaskGraph path_graph(const std::vector<Rational>& costs) {
    GraphBuilder gb;
    std::string prev = "s";
    for (std::size_t i = 0; i < costs.size(); ++i) {
        std::string next = i + 1 == costs.size() ? "t" : "n" + std::to_string(i + 1);
        gb.add_edge(prev, next, costs[i]);
        prev = next;
    }
    return gb.build("s", "t");
}

inline const Rational kEps = Rational(1, 54);
inline const Rational kAlice = Rational(13, 27);
inline const Rational kBob = Rational(14, 27);

inline TaskGraph alice_bob() { return gen_alice_bob(kEps); }

} // namespace fx

#endif
