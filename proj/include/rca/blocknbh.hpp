#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rca/automaton.hpp"

namespace rca {

// Finite reduction of the context-independence check for a split
// (X | complement) -> (Y | complement).
//
// Output cells n outside X - N(f) read only complement cells, so two inputs
// sharing the same context agree there automatically. Only out_band outputs
// are compared, and only in_band context cells can influence them.
struct CheckBand {
    CellSet x;
    CellSet y;
    CellSet out_band;  // (X - N(f)) \ Y
    CellSet in_band;   // (out_band + N(f)) \ X
};

CheckBand make_check_band(const ReversibleCA& f, const CellSet& x, const CellSet& y);

// X contains Y + N(f).
bool is_semicausal(const ReversibleCA& f, const CellSet& x, const CellSet& y);
// X contains Y + dual N(f).
bool is_dual_semicausal(const ReversibleCA& f, const CellSet& x, const CellSet& y);

// True iff whether two X-words agree outside Y does not depend on the context
// they are placed in. Implemented as b-independence of the induced partition
// of the X-words, enumerating every in_band context.
// Throws TooLarge when q^(|X| + |in_band|) exceeds limits.max_evals.
bool condition_three(const ReversibleCA& f, const CellSet& x, const CellSet& y, const Limits& limits = {});

bool is_semilocalizable(const ReversibleCA& f, const CellSet& x, const CellSet& y, const Limits& limits = {});

// Result of placing two X-words a, a2 in contexts u and v.
struct ContextComparison {
    bool agree_under_u = false;      // f(a.u) == f(a2.u) outside Y
    bool agree_under_v = false;      // f(a.v) == f(a2.v) outside Y
    CellSet differing_under_u;
    CellSet differing_under_v;
    bool refutes() const { return agree_under_u && !agree_under_v; }
};

// Evaluates one instance of the context-independence implication on explicit
// words. Contexts must cover the in_band cells; other context cells are ignored.
ContextComparison compare_contexts(const ReversibleCA& f, const CellSet& x, const CellSet& y,
                                   const PatternAssignment& a, const PatternAssignment& a2,
                                   const PatternAssignment& u, const PatternAssignment& v);

// (N - N + Ñ) ∩ (Ñ - Ñ + N)
CellSet individual_bound(const ReversibleCA& f);

// Smallest X with is_semilocalizable(f, X, {0}).
CellSet block_neighborhood(const ReversibleCA& f, const Limits& limits = {});

// One term of the composition bound, k = 1..n.
struct CompositionTerm {
    CellSet c;  // dual neighborhood of f_n...f_{k+1}
    CellSet k;  // c + BN(f_k)
    CellSet d;  // neighborhood of f_{k-1}...f_1
    CellSet v;  // k + d
};

struct CompositionBound {
    std::vector<CompositionTerm> terms;
    CellSet v;
    // False when a partial composite was too large to build and its (dual)
    // neighborhood was replaced by the Minkowski sum of its factors'.
    bool exact_neighborhoods = true;
    std::optional<CellSet> composite_bn;  // BN(f_n...f_1) when computable
    std::optional<bool> contained;        // composite_bn within v
};

// fs[0] is applied first.
CompositionBound composition_bound(std::span<const ReversibleCA> fs, const Limits& limits = {});

// The interval bound on BN(f^k) from the tightest [-a;b] ⊇ N(f), [-c;d] ⊇ Ñ(f).
// a..d may be negative for one-sided neighborhoods.
CellSet iterate_bound(const ReversibleCA& f, int k);

// [-4r;4r] where r bounds |cell| over N and Ñ of both f and g.
CellSet indecomposability_bound(const ReversibleCA& f, const ReversibleCA& g);

struct BoundsReport {
    CellSet n;
    CellSet n_dual;
    CellSet bn;
    CellSet individual_bound;
    CellSet bn_of_dual;
    bool neighborhoods_meet = false;  // N ∩ Ñ nonempty
    bool contains_neighborhoods = false;
    bool within_individual_bound = false;
    bool self_dual = false;
    bool minimal = false;  // BN == N ∪ Ñ

    bool all_pass() const {
        return neighborhoods_meet && contains_neighborhoods && within_individual_bound && self_dual;
    }
};

BoundsReport verify_all_bounds(const ReversibleCA& f, const Limits& limits = {});

}  // namespace rca
