#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rca/automaton.hpp"

namespace rca {

// Index of a rule table over q symbols read as a number, first entry most significant.
std::uint64_t table_index(const LocalRule& rule);

// Calls visit(index, ca) for each injective rule on the window, in ascending
// table index order, until limit automata have been emitted or visit returns false.
// Tables below start_index are skipped.
void for_each_rca(std::uint32_t q, const CellSet& window, std::uint64_t limit,
                  const std::function<bool(std::uint64_t, const ReversibleCA&)>& visit,
                  std::uint64_t start_index = 0, const Limits& limits = {});

std::vector<ReversibleCA> enumerate_rcas(std::uint32_t q, const CellSet& window,
                                         std::uint64_t limit = UINT64_MAX, const Limits& limits = {});

// BN(f) == N(f) ∪ Ñ(f).
bool has_minimal_block_neighborhood(const ReversibleCA& f, const Limits& limits = {});

// Same, for automata additive under componentwise XOR or addition mod q. Additivity is
// re-checked on small rings first; throws PreconditionFailed when it fails.
bool check_subtraction_minimal(const ReversibleCA& f, const Limits& limits = {});

struct ConjectureInstance {
    ReversibleCA ca;
    std::vector<std::string> components;  // human-readable, in direct-sum order
    CellSet n;
    CellSet n_dual;
    CellSet bn;
};

// Direct sum of shifts and shifted Toffoli automata realizing the triple
// (X, X, Z) for Z made of points 2y - x with x, y in X. N, Ñ and BN of the
// result are recomputed and compared; a mismatch throws VerificationFailure.
// By default a shift(x) summand is added only for x not already read by some
// Toffoli summand, which keeps the alphabet small.
ConjectureInstance build_conjecture_instance(const CellSet& x, const CellSet& y, const CellSet& z,
                                             bool include_all_shifts = false, const Limits& limits = {});

struct TripleRecord {
    std::uint32_t q = 2;
    std::uint64_t table_index = 0;
    CellSet n;
    CellSet n_dual;
    CellSet bn;

    friend bool operator==(const TripleRecord&, const TripleRecord&) = default;
};

// Computes the record for one automaton and checks the sandwich
// N ∪ Ñ ⊆ BN ⊆ (N - N + Ñ) ∩ (Ñ - Ñ + N) and BN(dual f) == BN(f).
// Throws VerificationFailure when either fails.
TripleRecord make_record(std::uint64_t index, const ReversibleCA& f, const Limits& limits = {});

// Records every reversible rule on the window for q = 2..qmax, at most limit
// per alphabet. Results go to path:
//
//   survey-format 1
//   window {0,1}
//   q 2
//   <table-index> <N> <Ñ> <BN>
//   ...
//
// An existing file with the same header is resumed: a torn last line is
// dropped and enumeration continues after the last recorded index.
// An empty path keeps everything in memory.
std::vector<TripleRecord> survey(std::uint32_t qmax, const CellSet& window, std::uint64_t limit,
                                 const std::string& path = {}, const Limits& limits = {});

}  // namespace rca
