#include "rca/automaton.hpp"

#include <numeric>

namespace rca {

ReversibleCA::ReversibleCA(Alphabet alphabet, LocalRule forward, LocalRule inverse)
    : alphabet_(std::move(alphabet)),
      forward_(minimize(forward)),
      inverse_(minimize(inverse)),
      dual_nbh_(-inverse_.offsets()) {
    if (forward_.q() != alphabet_.size || inverse_.q() != alphabet_.size)
        throw AlphabetMismatch("rule alphabet differs from CA alphabet");
}

ReversibleCA ReversibleCA::assume_inverse(Alphabet alphabet, LocalRule forward, LocalRule inverse) {
    return ReversibleCA(std::move(alphabet), std::move(forward), std::move(inverse));
}

ReversibleCA ReversibleCA::from_rules(Alphabet alphabet, LocalRule forward, LocalRule inverse,
                                      const Limits& limits) {
    ReversibleCA ca(std::move(alphabet), std::move(forward), std::move(inverse));
    if (!is_identity_rule(compose_rules(ca.inverse_, ca.forward_, limits)))
        throw NotReversible("inverse rule does not undo the forward rule");
    if (!is_identity_rule(compose_rules(ca.forward_, ca.inverse_, limits)))
        throw NotReversible("forward rule does not undo the inverse rule");
    return ca;
}

ReversibleCA ReversibleCA::inverse_ca() const { return ReversibleCA(alphabet_, inverse_, forward_); }

PatternAssignment::PatternAssignment(CellSet support_, Word symbols_)
    : support(std::move(support_)), symbols(std::move(symbols_)) {
    if (support.size() != symbols.size())
        throw InvalidInput("pattern has " + std::to_string(symbols.size()) + " symbols for " +
                           std::to_string(support.size()) + " cells");
}

Symbol PatternAssignment::at(Cell c) const {
    auto i = support.index_of(c);
    if (i < 0) throw InsufficientSupport(CellSet{c});
    return symbols[static_cast<std::size_t>(i)];
}

Word apply_rule_on_ring(const LocalRule& rule, std::span<const Symbol> config) {
    const auto period = static_cast<Cell>(config.size());
    if (period < 1) throw InvalidInput("ring period must be at least 1");
    Word out(config.size());
    Word window(rule.width());
    for (Cell n = 0; n < period; ++n) {
        for (std::size_t i = 0; i < rule.width(); ++i) {
            Cell c = (n + rule.offsets()[i]) % period;
            if (c < 0) c += period;
            window[i] = config[static_cast<std::size_t>(c)];
        }
        out[static_cast<std::size_t>(n)] = rule(window);
    }
    return out;
}

Word apply_on_ring(const ReversibleCA& ca, std::span<const Symbol> config) {
    return apply_rule_on_ring(ca.forward(), config);
}

Symbol evaluate_at(const ReversibleCA& ca, const PatternAssignment& input, Cell cell) {
    const CellSet needed = ca.neighborhood().translate(cell);
    const CellSet missing = set_difference(needed, input.support);
    if (!missing.empty()) throw InsufficientSupport(missing);
    Word window;
    for (Cell c : needed) window.push_back(input.at(c));
    return ca.forward()(window);
}

ReversibleCA compose(const ReversibleCA& g, const ReversibleCA& f, const Limits& limits) {
    if (g.q() != f.q())
        throw AlphabetMismatch("cannot compose CAs over alphabets of size " + std::to_string(g.q()) + " and " +
                               std::to_string(f.q()));
    auto forward = compose_rules(g.forward(), f.forward(), limits);
    auto inverse = compose_rules(f.inverse(), g.inverse(), limits);
    const Alphabet& a = g.alphabet().tracks.empty() ? f.alphabet() : g.alphabet();
    return ReversibleCA::assume_inverse(a, std::move(forward), std::move(inverse));
}

ReversibleCA power(const ReversibleCA& f, int k, const Limits& limits) {
    if (k < 1) throw InvalidInput("power exponent must be positive");
    ReversibleCA acc = f;
    for (int i = 1; i < k; ++i) acc = compose(f, acc, limits);
    return acc;
}

ReversibleCA dual(const ReversibleCA& f) {
    return ReversibleCA::assume_inverse(f.alphabet(), mirror_rule(f.inverse()), mirror_rule(f.forward()));
}

ReversibleCA mirror(const ReversibleCA& f) {
    return ReversibleCA::assume_inverse(f.alphabet(), mirror_rule(f.forward()), mirror_rule(f.inverse()));
}

namespace {

LocalRule sum_rule(const LocalRule& f, const LocalRule& g, std::uint32_t qf, std::uint32_t qg,
                   const Limits& limits) {
    const std::uint32_t q = qf * qg;
    const CellSet window = f.offsets() | g.offsets();
    const auto size = checked_pow(q, window.size(), limits.max_table, "direct sum rule table");
    std::vector<std::size_t> fpos, gpos;
    for (Cell c : f.offsets()) fpos.push_back(static_cast<std::size_t>(window.index_of(c)));
    for (Cell c : g.offsets()) gpos.push_back(static_cast<std::size_t>(window.index_of(c)));
    std::vector<Symbol> table(size);
    Word fw(fpos.size()), gw(gpos.size());
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        const Word w = index_word(idx, window.size(), q);
        for (std::size_t i = 0; i < fpos.size(); ++i) fw[i] = w[fpos[i]] / qg;
        for (std::size_t i = 0; i < gpos.size(); ++i) gw[i] = w[gpos[i]] % qg;
        table[idx] = f(fw) * qg + g(gw);
    }
    return LocalRule(q, window, std::move(table));
}

std::vector<std::uint32_t> tracks_of(const Alphabet& a) {
    return a.tracks.empty() ? std::vector<std::uint32_t>{a.size} : a.tracks;
}

}  // namespace

ReversibleCA direct_sum(const ReversibleCA& f, const ReversibleCA& g, const Limits& limits) {
    const std::uint64_t q = std::uint64_t{f.q()} * g.q();
    if (q > (std::uint64_t{1} << 31) || q > limits.max_table)
        throw TooLarge("direct sum alphabet", q, std::min<std::uint64_t>(limits.max_table, std::uint64_t{1} << 31));
    auto tracks = tracks_of(f.alphabet());
    for (auto t : tracks_of(g.alphabet())) tracks.push_back(t);
    auto alphabet = Alphabet::make(static_cast<std::uint32_t>(q), std::move(tracks));
    auto forward = sum_rule(f.forward(), g.forward(), f.q(), g.q(), limits);
    auto inverse = sum_rule(f.inverse(), g.inverse(), f.q(), g.q(), limits);
    return ReversibleCA::assume_inverse(std::move(alphabet), std::move(forward), std::move(inverse));
}

ReversibleCA shift(Cell k, const Alphabet& alphabet) {
    std::vector<Symbol> table(alphabet.size);
    std::iota(table.begin(), table.end(), Symbol{0});
    LocalRule forward(alphabet.size, CellSet{k}, table);
    LocalRule inverse(alphabet.size, CellSet{-k}, std::move(table));
    return ReversibleCA::assume_inverse(alphabet, std::move(forward), std::move(inverse));
}

ReversibleCA identity(const Alphabet& alphabet) { return shift(0, alphabet); }

ReversibleCA permutation_ca(std::vector<Symbol> perm) {
    const auto q = static_cast<std::uint32_t>(perm.size());
    std::vector<Symbol> inv(q, q);
    for (Symbol s = 0; s < q; ++s) {
        if (perm[s] >= q || inv[perm[s]] != q) throw InvalidInput("not a permutation of the alphabet");
        inv[perm[s]] = s;
    }
    auto alphabet = Alphabet::make(q);
    LocalRule forward(q, CellSet{0}, std::move(perm));
    LocalRule inverse(q, CellSet{0}, std::move(inv));
    return ReversibleCA::assume_inverse(std::move(alphabet), std::move(forward), std::move(inverse));
}

ReversibleCA toffoli(int l) {
    if (l < 1) throw InvalidInput("Toffoli stretch must be at least 1");
    const auto alphabet = Alphabet::make(4, {2, 2});
    auto sym = [](unsigned t1, unsigned t2) { return static_cast<Symbol>(2 * t1 + t2); };
    std::vector<Symbol> fwd(16), inv(16);
    for (unsigned a = 0; a < 4; ++a) {
        for (unsigned b = 0; b < 4; ++b) {
            const unsigned a1 = a >> 1, a2 = a & 1, b1 = b >> 1, b2 = b & 1;
            // forward window (v_0, v_l)
            fwd[a * 4 + b] = sym(a2 ^ (a1 & b1), b1);
            // inverse window (v_-l, v_0)
            inv[a * 4 + b] = sym(a2, b1 ^ (a2 & b2));
        }
    }
    LocalRule forward(4, CellSet{0, l}, std::move(fwd));
    LocalRule inverse(4, CellSet{-l, 0}, std::move(inv));
    return ReversibleCA::assume_inverse(alphabet, std::move(forward), std::move(inverse));
}

}  // namespace rca
