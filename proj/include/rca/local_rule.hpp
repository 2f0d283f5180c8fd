#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rca/cellset.hpp"
#include "rca/errors.hpp"

namespace rca {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

// Symbols are 0..size-1. Tracks, when present, describe size as a product
// (first track most significant) and are only used by constructors and printing.
struct Alphabet {
    std::uint32_t size = 2;
    std::vector<std::uint32_t> tracks;

    static Alphabet make(std::uint32_t q, std::vector<std::uint32_t> tracks = {});
    static Alphabet binary_tracks(std::size_t count);

    // Split a symbol into per-track components, first track first.
    std::vector<std::uint32_t> split(Symbol s) const;
    Symbol join(std::span<const std::uint32_t> parts) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

// A local transition function: the output at cell n is table[index(v|n+offsets)],
// where the word read on the window is indexed lexicographically with the
// earliest (smallest) offset most significant.
class LocalRule {
public:
    LocalRule(std::uint32_t q, CellSet offsets, std::vector<Symbol> table);

    std::uint32_t q() const noexcept { return q_; }
    const CellSet& offsets() const noexcept { return offsets_; }
    const std::vector<Symbol>& table() const noexcept { return table_; }
    std::size_t width() const noexcept { return offsets_.size(); }

    std::uint64_t index_of(std::span<const Symbol> word) const;
    Word word_at(std::uint64_t index) const;
    Symbol operator()(std::span<const Symbol> word) const { return table_[index_of(word)]; }

    friend bool operator==(const LocalRule&, const LocalRule&) = default;

private:
    std::uint32_t q_;
    CellSet offsets_;
    std::vector<Symbol> table_;
};

// Lexicographic index of a word over q symbols, first symbol most significant.
std::uint64_t word_index(std::span<const Symbol> word, std::uint32_t q);
Word index_word(std::uint64_t index, std::size_t length, std::uint32_t q);

// Offsets i such that two windows differing only at i can give different outputs.
CellSet minimal_neighborhood(const LocalRule& rule);
CellSet minimal_neighborhood(const LocalRule& rule, const Alphabet& alphabet);

// The same map read on a subset of the window (the dropped offsets must be inessential).
LocalRule restrict_rule(const LocalRule& rule, const CellSet& keep);
// The same map read on a superset of the window.
LocalRule extend_rule(const LocalRule& rule, const CellSet& window, const Limits& limits = {});
// restrict_rule(rule, minimal_neighborhood(rule))
LocalRule minimize(const LocalRule& rule);

// g after f: window is the Minkowski sum of the windows, result minimized.
LocalRule compose_rules(const LocalRule& g, const LocalRule& f, const Limits& limits = {});
// Conjugation by the cell reversal: offsets negated, table re-indexed.
LocalRule mirror_rule(const LocalRule& rule);

bool is_identity_rule(const LocalRule& rule);
LocalRule identity_rule(std::uint32_t q);

}  // namespace rca
