#include "rca/local_rule.hpp"

#include <algorithm>
#include <numeric>

namespace rca {

Alphabet Alphabet::make(std::uint32_t q, std::vector<std::uint32_t> tracks) {
    if (q < 2) throw InvalidInput("alphabet size must be at least 2, got " + std::to_string(q));
    if (!tracks.empty()) {
        std::uint64_t product = 1;
        for (auto t : tracks) {
            if (t < 1) throw InvalidInput("track sizes must be positive");
            product *= t;
            if (product > q) break;
        }
        if (product != q)
            throw InvalidInput("product of tracks does not equal alphabet size " + std::to_string(q));
    }
    return Alphabet{q, std::move(tracks)};
}

Alphabet Alphabet::binary_tracks(std::size_t count) {
    if (count == 0 || count > 31) throw InvalidInput("binary track count must be in 1..31");
    return make(std::uint32_t{1} << count, std::vector<std::uint32_t>(count, 2));
}

std::vector<std::uint32_t> Alphabet::split(Symbol s) const {
    if (tracks.empty()) return {s};
    std::vector<std::uint32_t> parts(tracks.size());
    for (std::size_t i = tracks.size(); i-- > 0;) {
        parts[i] = s % tracks[i];
        s /= tracks[i];
    }
    return parts;
}

Symbol Alphabet::join(std::span<const std::uint32_t> parts) const {
    if (tracks.empty()) return parts.empty() ? 0 : parts[0];
    Symbol s = 0;
    for (std::size_t i = 0; i < tracks.size(); ++i) s = s * tracks[i] + parts[i];
    return s;
}

std::uint64_t word_index(std::span<const Symbol> word, std::uint32_t q) {
    std::uint64_t idx = 0;
    for (Symbol s : word) idx = idx * q + s;
    return idx;
}

Word index_word(std::uint64_t index, std::size_t length, std::uint32_t q) {
    Word w(length);
    for (std::size_t i = length; i-- > 0;) {
        w[i] = static_cast<Symbol>(index % q);
        index /= q;
    }
    return w;
}

LocalRule::LocalRule(std::uint32_t q, CellSet offsets, std::vector<Symbol> table)
    : q_(q), offsets_(std::move(offsets)), table_(std::move(table)) {
    if (q_ < 2) throw InvalidInput("rule alphabet size must be at least 2");
    const auto expected = saturating_pow(q_, offsets_.size());
    if (expected != table_.size())
        throw InvalidInput("rule table has " + std::to_string(table_.size()) + " entries, expected " +
                           std::to_string(expected));
    for (Symbol s : table_)
        if (s >= q_) throw InvalidInput("rule table entry " + std::to_string(s) + " outside alphabet");
}

std::uint64_t LocalRule::index_of(std::span<const Symbol> word) const { return word_index(word, q_); }

Word LocalRule::word_at(std::uint64_t index) const { return index_word(index, offsets_.size(), q_); }

namespace {

std::vector<std::uint64_t> strides(std::uint32_t q, std::size_t k) {
    std::vector<std::uint64_t> s(k);
    std::uint64_t p = 1;
    for (std::size_t i = k; i-- > 0;) {
        s[i] = p;
        p *= q;
    }
    return s;
}

// Steps through every word of a given length in lexicographic order.
class Odometer {
public:
    Odometer(std::size_t length, std::uint32_t q) : digits_(length, 0), q_(q) {}
    const Word& digits() const noexcept { return digits_; }
    void next() {
        for (std::size_t i = digits_.size(); i-- > 0;) {
            if (++digits_[i] < q_) return;
            digits_[i] = 0;
        }
    }

private:
    Word digits_;
    std::uint32_t q_;
};

}  // namespace

CellSet minimal_neighborhood(const LocalRule& rule) {
    const auto q = rule.q();
    const auto k = rule.width();
    const auto& table = rule.table();
    const auto stride = strides(q, k);
    std::vector<Cell> keep;
    for (std::size_t i = 0; i < k; ++i) {
        const std::uint64_t low = stride[i];
        const std::uint64_t block = low * q;
        bool essential = false;
        for (std::uint64_t base = 0; base < table.size() && !essential; base += block) {
            for (std::uint64_t lo = 0; lo < low && !essential; ++lo) {
                const Symbol first = table[base + lo];
                for (std::uint32_t d = 1; d < q; ++d) {
                    if (table[base + lo + d * low] != first) {
                        essential = true;
                        break;
                    }
                }
            }
        }
        if (essential) keep.push_back(rule.offsets()[i]);
    }
    return CellSet(std::move(keep));
}

CellSet minimal_neighborhood(const LocalRule& rule, const Alphabet& alphabet) {
    if (alphabet.size != rule.q()) throw AlphabetMismatch("rule and alphabet sizes differ");
    return minimal_neighborhood(rule);
}

LocalRule restrict_rule(const LocalRule& rule, const CellSet& keep) {
    if (!keep.subset_of(rule.offsets())) throw InvalidInput("restriction must keep a subset of the window");
    const auto q = rule.q();
    const auto full = strides(q, rule.width());
    std::vector<std::uint64_t> embed(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) embed[j] = full[rule.offsets().index_of(keep[j])];
    const auto size = saturating_pow(q, keep.size());
    std::vector<Symbol> table(size);
    Odometer od(keep.size(), q);
    for (std::uint64_t idx = 0; idx < size; ++idx, od.next()) {
        std::uint64_t src = 0;
        for (std::size_t j = 0; j < keep.size(); ++j) src += od.digits()[j] * embed[j];
        table[idx] = rule.table()[src];
    }
    return LocalRule(q, keep, std::move(table));
}

LocalRule extend_rule(const LocalRule& rule, const CellSet& window, const Limits& limits) {
    if (!rule.offsets().subset_of(window)) throw InvalidInput("extension window must contain the rule window");
    const auto q = rule.q();
    const auto size = checked_pow(q, window.size(), limits.max_table, "extended rule table");
    std::vector<std::size_t> pos(rule.width());
    for (std::size_t i = 0; i < rule.width(); ++i)
        pos[i] = static_cast<std::size_t>(window.index_of(rule.offsets()[i]));
    const auto inner = strides(q, rule.width());
    std::vector<Symbol> table(size);
    Odometer od(window.size(), q);
    for (std::uint64_t idx = 0; idx < size; ++idx, od.next()) {
        std::uint64_t src = 0;
        for (std::size_t i = 0; i < pos.size(); ++i) src += od.digits()[pos[i]] * inner[i];
        table[idx] = rule.table()[src];
    }
    return LocalRule(q, window, std::move(table));
}

LocalRule minimize(const LocalRule& rule) { return restrict_rule(rule, minimal_neighborhood(rule)); }

LocalRule compose_rules(const LocalRule& g, const LocalRule& f, const Limits& limits) {
    if (g.q() != f.q()) throw AlphabetMismatch("cannot compose rules over different alphabets");
    const auto q = f.q();
    const CellSet window = g.offsets() + f.offsets();
    const auto size = checked_pow(q, window.size(), limits.max_table, "composed rule table");

    const auto gk = g.width();
    const auto fk = f.width();
    const auto fstride = strides(q, fk);
    const auto gstride = strides(q, gk);
    // pos[j * fk + i]: where f's i-th input for g's j-th input sits in the window
    std::vector<std::size_t> pos(gk * fk);
    for (std::size_t j = 0; j < gk; ++j)
        for (std::size_t i = 0; i < fk; ++i)
            pos[j * fk + i] = static_cast<std::size_t>(window.index_of(g.offsets()[j] + f.offsets()[i]));

    std::vector<Symbol> table(size);
    Odometer od(window.size(), q);
    for (std::uint64_t idx = 0; idx < size; ++idx, od.next()) {
        const auto& d = od.digits();
        std::uint64_t gidx = 0;
        for (std::size_t j = 0; j < gk; ++j) {
            std::uint64_t fidx = 0;
            for (std::size_t i = 0; i < fk; ++i) fidx += d[pos[j * fk + i]] * fstride[i];
            gidx += f.table()[fidx] * gstride[j];
        }
        table[idx] = g.table()[gidx];
    }
    return minimize(LocalRule(q, window, std::move(table)));
}

LocalRule mirror_rule(const LocalRule& rule) {
    const auto q = rule.q();
    const auto k = rule.width();
    std::vector<Symbol> table(rule.table().size());
    Odometer od(k, q);
    Word reversed(k);
    for (std::uint64_t idx = 0; idx < table.size(); ++idx, od.next()) {
        std::reverse_copy(od.digits().begin(), od.digits().end(), reversed.begin());
        table[idx] = rule.table()[word_index(reversed, q)];
    }
    return LocalRule(q, -rule.offsets(), std::move(table));
}

bool is_identity_rule(const LocalRule& rule) {
    const auto m = minimize(rule);
    if (m.offsets() != CellSet{0}) return false;
    for (Symbol s = 0; s < m.q(); ++s)
        if (m.table()[s] != s) return false;
    return true;
}

LocalRule identity_rule(std::uint32_t q) {
    std::vector<Symbol> table(q);
    std::iota(table.begin(), table.end(), Symbol{0});
    return LocalRule(q, CellSet{0}, std::move(table));
}

}  // namespace rca
