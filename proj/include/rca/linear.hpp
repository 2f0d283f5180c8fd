#pragma once

#include <string_view>
#include <vector>

#include "rca/automaton.hpp"

namespace rca {

// One summand of an additive rule over (Z/2)^t: out += matrix * v_offset.
// matrix[r][c] set means output track r reads input track c.
struct LinearTerm {
    Cell offset = 0;
    std::vector<std::vector<bool>> matrix;
};

// Builds the rule f(v)_0 = sum_o M_o v_o (componentwise XOR), checks
// injectivity and synthesizes the inverse. Throws NotReversible otherwise.
ReversibleCA linear_ca(std::size_t tracks, const std::vector<LinearTerm>& terms, const Limits& limits = {});

// Forward rule only, for callers that want to inspect non-reversible cases.
LocalRule linear_rule(std::size_t tracks, const std::vector<LinearTerm>& terms);

// "0:10/01 1:01/00": offset, then matrix rows separated by '/'.
std::vector<LinearTerm> parse_linear_terms(std::string_view text);

// f(v)_0 = (v_0^1 + v_1^2, v_0^2)
std::vector<LinearTerm> two_track_partial_shift();

// f(u + v) == f(u) + f(v), with + either componentwise XOR (q a power of two)
// or addition mod q, on every ring of period <= max_period whose
// configuration pairs fit in the budget.
bool is_additive_on_rings(const ReversibleCA& ca, std::size_t max_period, std::uint64_t budget = 1u << 20);

}  // namespace rca
