#include "rca/linear.hpp"

#include <map>

#include "rca/reversibility.hpp"

namespace rca {

LocalRule linear_rule(std::size_t tracks, const std::vector<LinearTerm>& terms) {
    if (tracks == 0 || tracks > 16) throw InvalidInput("linear CA track count must be in 1..16");
    if (terms.empty()) throw InvalidInput("linear CA needs at least one term");
    std::map<Cell, std::vector<std::vector<bool>>> merged;
    for (const auto& term : terms) {
        if (term.matrix.size() != tracks) throw InvalidInput("linear term matrix must have one row per track");
        for (const auto& row : term.matrix)
            if (row.size() != tracks) throw InvalidInput("linear term matrix must be square");
        auto [it, fresh] = merged.try_emplace(term.offset, term.matrix);
        if (!fresh)
            for (std::size_t r = 0; r < tracks; ++r)
                for (std::size_t c = 0; c < tracks; ++c) it->second[r][c] = it->second[r][c] != term.matrix[r][c];
    }

    const auto q = std::uint32_t{1} << tracks;
    std::vector<Cell> offs;
    for (const auto& [o, _] : merged) offs.push_back(o);
    CellSet offsets(offs);
    const auto size = checked_pow(q, offsets.size(), Limits{}.max_table, "linear rule table");
    auto bit = [&](Symbol s, std::size_t track) { return (s >> (tracks - 1 - track)) & 1u; };

    std::vector<Symbol> table(size);
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        const Word w = index_word(idx, offsets.size(), q);
        Symbol out = 0;
        std::size_t j = 0;
        for (const auto& [o, m] : merged) {
            for (std::size_t r = 0; r < tracks; ++r)
                for (std::size_t c = 0; c < tracks; ++c)
                    if (m[r][c] && bit(w[j], c)) out ^= Symbol{1} << (tracks - 1 - r);
            ++j;
        }
        table[idx] = out;
    }
    return LocalRule(q, std::move(offsets), std::move(table));
}

ReversibleCA linear_ca(std::size_t tracks, const std::vector<LinearTerm>& terms, const Limits& limits) {
    const auto rule = linear_rule(tracks, terms);
    return make_reversible(Alphabet::binary_tracks(tracks), rule, limits);
}

std::vector<LinearTerm> parse_linear_terms(std::string_view text) {
    std::vector<LinearTerm> terms;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find_first_of(" \t;", pos);
        if (end == std::string_view::npos) end = text.size();
        const auto tok = text.substr(pos, end - pos);
        pos = end + 1;
        if (tok.empty()) continue;
        const auto colon = tok.find(':');
        if (colon == std::string_view::npos) throw InvalidInput("linear term must be offset:rows, got '" + std::string(tok) + "'");
        LinearTerm term;
        try {
            term.offset = std::stoll(std::string(tok.substr(0, colon)));
        } catch (const std::exception&) {
            throw InvalidInput("bad offset in linear term '" + std::string(tok) + "'");
        }
        auto rows = tok.substr(colon + 1);
        std::size_t rp = 0;
        while (rp <= rows.size()) {
            std::size_t re = rows.find('/', rp);
            if (re == std::string_view::npos) re = rows.size();
            std::vector<bool> row;
            for (char ch : rows.substr(rp, re - rp)) {
                if (ch != '0' && ch != '1') throw InvalidInput("matrix rows must be 0/1 strings");
                row.push_back(ch == '1');
            }
            term.matrix.push_back(std::move(row));
            rp = re + 1;
        }
        terms.push_back(std::move(term));
    }
    return terms;
}

std::vector<LinearTerm> two_track_partial_shift() {
    return {LinearTerm{0, {{true, false}, {false, true}}}, LinearTerm{1, {{false, true}, {false, false}}}};
}

namespace {

template <class Add>
bool additive_under(const ReversibleCA& ca, std::size_t max_period, std::uint64_t budget, Add add) {
    const auto q = ca.q();
    for (std::size_t period = 1; period <= max_period; ++period) {
        const auto configs = saturating_pow(q, period);
        if (configs == UINT64_MAX || configs > budget / configs) break;
        std::vector<Word> images(configs);
        for (std::uint64_t u = 0; u < configs; ++u) images[u] = apply_on_ring(ca, index_word(u, period, q));
        for (std::uint64_t u = 0; u < configs; ++u) {
            const Word wu = index_word(u, period, q);
            for (std::uint64_t v = 0; v < configs; ++v) {
                const Word wv = index_word(v, period, q);
                Word sum(period);
                for (std::size_t i = 0; i < period; ++i) sum[i] = add(wu[i], wv[i]);
                const auto& img = images[word_index(sum, q)];
                for (std::size_t i = 0; i < period; ++i)
                    if (img[i] != add(images[u][i], images[v][i])) return false;
            }
        }
    }
    return true;
}

}  // namespace

bool is_additive_on_rings(const ReversibleCA& ca, std::size_t max_period, std::uint64_t budget) {
    const auto q = ca.q();
    if ((q & (q - 1)) == 0 &&
        additive_under(ca, max_period, budget, [](Symbol a, Symbol b) { return static_cast<Symbol>(a ^ b); }))
        return true;
    return additive_under(ca, max_period, budget, [q](Symbol a, Symbol b) { return static_cast<Symbol>((a + b) % q); });
}

}  // namespace rca
