#pragma once

#include <span>
#include <vector>

#include "rca/cellset.hpp"
#include "rca/errors.hpp"
#include "rca/local_rule.hpp"

namespace rca {

// A reversible one-dimensional CA: forward and inverse local rules, both
// minimized, so forward().offsets() is N(f) and -inverse().offsets() is the
// dual neighborhood N(dual f).
class ReversibleCA {
public:
    // Checks that both compositions of forward and inverse are the identity.
    static ReversibleCA from_rules(Alphabet alphabet, LocalRule forward, LocalRule inverse,
                                   const Limits& limits = {});
    // For callers that already know the two rules are mutually inverse.
    static ReversibleCA assume_inverse(Alphabet alphabet, LocalRule forward, LocalRule inverse);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::uint32_t q() const noexcept { return alphabet_.size; }
    const LocalRule& forward() const noexcept { return forward_; }
    const LocalRule& inverse() const noexcept { return inverse_; }

    const CellSet& neighborhood() const noexcept { return forward_.offsets(); }
    const CellSet& dual_neighborhood() const noexcept { return dual_nbh_; }

    // f^-1 as a CA in its own right.
    ReversibleCA inverse_ca() const;

    // Structural equality of the minimized rules (track metadata ignored).
    friend bool operator==(const ReversibleCA& a, const ReversibleCA& b) {
        return a.alphabet_.size == b.alphabet_.size && a.forward_ == b.forward_ && a.inverse_ == b.inverse_;
    }

private:
    ReversibleCA(Alphabet alphabet, LocalRule forward, LocalRule inverse);

    Alphabet alphabet_;
    LocalRule forward_;
    LocalRule inverse_;
    CellSet dual_nbh_;
};

// A finite word placed on an arbitrary set of cells.
struct PatternAssignment {
    CellSet support;
    Word symbols;  // aligned with support, ascending

    PatternAssignment() = default;
    PatternAssignment(CellSet support, Word symbols);
    Symbol at(Cell c) const;
};

// Raised by evaluate_at when the pattern does not cover cell + N(f).
class InsufficientSupport : public Error {
public:
    explicit InsufficientSupport(CellSet missing)
        : Error("pattern support is missing cells " + missing.to_string()), missing_(std::move(missing)) {}
    const CellSet& missing() const noexcept { return missing_; }

private:
    CellSet missing_;
};

// One step of f on the ring of period config.size().
Word apply_on_ring(const ReversibleCA& ca, std::span<const Symbol> config);
Word apply_rule_on_ring(const LocalRule& rule, std::span<const Symbol> config);
Symbol evaluate_at(const ReversibleCA& ca, const PatternAssignment& input, Cell cell);

// g after f.
ReversibleCA compose(const ReversibleCA& g, const ReversibleCA& f, const Limits& limits = {});
ReversibleCA power(const ReversibleCA& f, int k, const Limits& limits = {});
// The conjugate of f^-1 by the cell reversal.
ReversibleCA dual(const ReversibleCA& f);
// The conjugate of f by the cell reversal.
ReversibleCA mirror(const ReversibleCA& f);
// f on the first track block, g on the second; symbol = sf * q_g + sg.
ReversibleCA direct_sum(const ReversibleCA& f, const ReversibleCA& g, const Limits& limits = {});

ReversibleCA shift(Cell k, const Alphabet& alphabet = Alphabet::make(2));
ReversibleCA identity(const Alphabet& alphabet = Alphabet::make(2));
// A cellwise symbol permutation (window {0}).
ReversibleCA permutation_ca(std::vector<Symbol> perm);
// Toffoli automaton over (Z/2)^2 stretched by l >= 1:
//   T_l(v)_0 = (v_0^2 + v_0^1 v_l^1, v_l^1).
ReversibleCA toffoli(int l = 1);

}  // namespace rca
