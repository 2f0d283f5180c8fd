#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rca/automaton.hpp"

namespace rca {

// A block decomposition of f on the ring Z/P, split as
// (words a on X, words b on the rest) -> (words c on Y, words d on the rest):
//
//   g(a) = (g_word[a], g_class[a])      a word on X -> word on Y and a class
//   h(d) = (h_word[d], h_class[d])      d word on ring\Y -> word on ring\X and a class
//   f(a.b) = (g_word[a], h^-1(b, alpha[g_class[a]]))
//
// Words are indexed lexicographically over ascending cells.
struct SemilocalWitness {
    std::uint32_t q = 2;
    std::size_t ring_period = 0;
    CellSet x;
    CellSet y;
    std::uint32_t e_size = 0;
    std::vector<std::uint64_t> g_word;
    std::vector<std::uint32_t> g_class;
    std::vector<std::uint64_t> h_word;
    std::vector<std::uint32_t> h_class;
    std::vector<std::uint32_t> alpha;  // class of a -> class of d

    friend bool operator==(const SemilocalWitness&, const SemilocalWitness&) = default;
};

// Smallest ring on which X, its neighborhood band and its dual band do not wrap onto themselves.
std::size_t default_ring_period(const ReversibleCA& f, const CellSet& x);

// Builds the witness from the equivalence classes of X-words (agreeing off Y in
// every context) and of the dual classes, with the lexicographically least
// context as the reference. Verifies the reconstruction over all q^P configurations.
// Throws PreconditionFailed (property fails, bad placement) or TooLarge.
SemilocalWitness semilocalize(const ReversibleCA& f, const CellSet& x, const CellSet& y, std::size_t ring_period,
                              const Limits& limits = {});

struct WitnessCheck {
    bool ok = false;
    std::uint64_t configurations = 0;
    std::string detail;
};

// Checks g and h are injective, alpha is a permutation, and the witness
// reproduces f on every ring configuration.
WitnessCheck verify_witness(const ReversibleCA& f, const SemilocalWitness& w, const Limits& limits = {});

void write_witness(std::ostream& out, const SemilocalWitness& w);
SemilocalWitness parse_witness(std::istream& in);

}  // namespace rca
