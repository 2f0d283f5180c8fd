#pragma once

// Sampled property checks over the oracle population, shared by the unit
// suite and the acceptance runner. Each returns how many instances exercised
// the property and how many violated it.

#include <map>
#include <string>

#include "oracles.hpp"
#include "rca/blocknbh.hpp"

namespace props {

using namespace rca;

struct Tally {
    int instances = 0;
    int failures = 0;
    int positives = 0;  // instances where the checked predicate came out true
    std::string first_failure;

    void record(bool ok, const std::string& what) {
        ++instances;
        if (!ok && failures++ == 0) first_failure = what;
    }
};

inline std::string describe(const ReversibleCA& f, const CellSet& x, const CellSet& y) {
    return "q=" + std::to_string(f.q()) + " N=" + f.neighborhood().to_string() + " X=" + x.to_string() +
           " Y=" + y.to_string();
}

struct Sampler {
    std::mt19937 rng;
    const std::vector<ReversibleCA>& pop = oracle::population();
    std::vector<CellSet> bn;

    explicit Sampler(unsigned seed) : rng(seed) {
        for (const auto& f : pop) bn.push_back(block_neighborhood(f));
    }

    std::size_t pick() { return std::uniform_int_distribution<std::size_t>(0, pop.size() - 1)(rng); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

    // Each cell of [lo;hi] kept with probability p.
    CellSet subset(Cell lo, Cell hi, double p) {
        std::vector<Cell> cells;
        for (Cell c = lo; c <= hi; ++c)
            if (coin(p)) cells.push_back(c);
        return CellSet(std::move(cells));
    }

    CellSet target() {
        for (;;) {
            auto y = subset(-1, 1, 0.4);
            if (!y.empty()) return y;
        }
    }

    // Semicausal both ways, plus a random part of the widened hull of Y + BN.
    CellSet block_around(std::size_t i, const CellSet& y, double p) {
        const auto& f = pop[i];
        const auto hull = (y + bn[i]).hull();
        return (y + (f.neighborhood() | f.dual_neighborhood())) | subset(hull.min() - 1, hull.max() + 1, p);
    }
};

inline bool affordable(const ReversibleCA& f, const CellSet& x, const CellSet& y, std::uint64_t cap = 1u << 18) {
    const auto band = make_check_band(f, x, y);
    return saturating_pow(f.q(), x.size() + band.in_band.size()) <= cap;
}

// P(X,Y) implies P(X',Y') for X' ⊇ X, Y' ⊆ Y.
inline Tally monotonicity(int wanted) {
    Sampler s(1);
    Tally t;
    for (int attempt = 0; t.instances < wanted && attempt < 100 * wanted; ++attempt) {
        const auto i = s.pick();
        const auto& f = s.pop[i];
        const auto y = s.target();
        const auto x = s.block_around(i, y, 0.6);
        if (!affordable(f, x, y) || !is_semilocalizable(f, x, y)) continue;
        const auto x2 = x | s.subset(x.min() - 2, x.max() + 2, 0.3);
        const auto y2 = s.subset(-1, 1, 0.5) & y;
        if (!affordable(f, x2, y2)) continue;
        t.record(is_semilocalizable(f, x2, y2), describe(f, x2, y2));
    }
    return t;
}

// P(X,Y) and P(X',Y) imply P(X ∩ X', Y).
inline Tally intersection(int wanted) {
    Sampler s(2);
    Tally t;
    for (int attempt = 0; t.instances < wanted && attempt < 200 * wanted; ++attempt) {
        const auto i = s.pick();
        const auto& f = s.pop[i];
        const auto y = s.target();
        const auto x1 = s.block_around(i, y, 0.7), x2 = s.block_around(i, y, 0.7);
        if (!affordable(f, x1, y) || !affordable(f, x2, y)) continue;
        if (!is_semilocalizable(f, x1, y) || !is_semilocalizable(f, x2, y)) continue;
        t.record(is_semilocalizable(f, x1 & x2, y), describe(f, x1 & x2, y));
    }
    return t;
}

// P(X,Y) and P(X,Y') imply P(X, Y ∪ Y').
inline Tally target_union(int wanted) {
    Sampler s(6);
    Tally t;
    for (int attempt = 0; t.instances < wanted && attempt < 200 * wanted; ++attempt) {
        const auto i = s.pick();
        const auto& f = s.pop[i];
        const auto y1 = s.target(), y2 = s.target();
        const auto x = s.block_around(i, y1 | y2, 0.6);
        if (!affordable(f, x, y1 | y2)) continue;
        if (!is_semilocalizable(f, x, y1) || !is_semilocalizable(f, x, y2)) continue;
        t.record(is_semilocalizable(f, x, y1 | y2), describe(f, x, y1 | y2));
    }
    return t;
}

// P(X,Y) iff X ⊇ Y + BN.
inline Tally equivalence(int wanted) {
    Sampler s(3);
    Tally t;
    for (int attempt = 0; t.instances < wanted && attempt < 100 * wanted; ++attempt) {
        const auto i = s.pick();
        const auto& f = s.pop[i];
        const auto y = s.target();
        const auto x = s.coin(0.2) ? s.subset(-3, 3, 0.5) : s.block_around(i, y, 0.6);
        if (x.empty() || !affordable(f, x, y)) continue;
        const bool p = is_semilocalizable(f, x, y);
        t.positives += p;
        t.record(p == (y + s.bn[i]).subset_of(x), describe(f, x, y));
    }
    return t;
}

// BN(g f) ⊆ BN(g) + BN(f) for pairs over the same alphabet.
inline Tally composition(int wanted) {
    Sampler s(4);
    std::map<std::uint32_t, std::vector<std::size_t>> by_q;
    for (std::size_t i = 0; i < s.pop.size(); ++i) by_q[s.pop[i].q()].push_back(i);
    Tally t;
    for (int attempt = 0; t.instances < wanted && attempt < 100 * wanted; ++attempt) {
        const auto i = s.pick();
        const auto& group = by_q[s.pop[i].q()];
        const auto j = group[std::uniform_int_distribution<std::size_t>(0, group.size() - 1)(s.rng)];
        const auto gf = compose(s.pop[j], s.pop[i]);
        const auto x = individual_bound(gf);
        if (!affordable(gf, x, CellSet{0}, 1u << 20)) continue;
        t.record(block_neighborhood(gf).subset_of(s.bn[j] + s.bn[i]),
                 "g: " + describe(s.pop[j], s.bn[j], {}) + " f: " + describe(s.pop[i], s.bn[i], {}));
    }
    return t;
}

// condition_three against the literal widened-window check.
inline Tally band_vs_widened(int wanted) {
    Sampler s(5);
    Tally t;
    for (int attempt = 0; t.instances < wanted && attempt < 200 * wanted; ++attempt) {
        const auto i = s.pick();
        const auto& f = s.pop[i];
        const auto y = s.target();
        const auto x = s.coin(0.3) ? s.subset(-2, 2, 0.5) : s.block_around(i, y, 0.4);
        if (x.empty() || x.size() > 4) continue;
        // contexts times pairs of X-words
        const auto reach = (x - f.neighborhood() + f.neighborhood()) | x;
        const auto ctx = reach.hull().size() + 2 - x.size();
        if (saturating_pow(f.q(), ctx + 2 * x.size()) > (1u << 22)) continue;
        const bool fast = condition_three(f, x, y);
        t.positives += fast;
        t.record(fast == oracle::condition_three_widened(f, oracle::to_cells(x), oracle::to_cells(y)),
                 describe(f, x, y));
    }
    return t;
}

}  // namespace props
