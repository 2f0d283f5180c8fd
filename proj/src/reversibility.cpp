#include "rca/reversibility.hpp"

#include <sstream>

namespace rca {

namespace {

struct PairEdge {
    std::uint32_t from;
    std::uint32_t to;
    Symbol x1;
    Symbol x2;
};

// Pair graph over de Bruijn states of a contiguous rule. A vertex is a pair of
// overlap words (s1, s2) of length width-1; an edge appends (x1, x2) and exists
// when both extended windows produce the same output.
struct PairGraph {
    std::uint32_t vertex_count = 0;
    std::vector<PairEdge> edges;
    std::vector<std::uint32_t> out_begin, in_begin;  // CSR offsets
    std::vector<std::uint32_t> out_edges, in_edges;  // edge ids

    // Vertices with an infinite path leaving them (forward) or entering them (backward).
    std::vector<char> forward_alive, backward_alive;
};

PairGraph build_pair_graph(const LocalRule& contiguous, const Limits& limits) {
    const std::uint64_t q = contiguous.q();
    const std::size_t w = contiguous.width();
    const std::uint64_t states = saturating_pow(q, w - 1);
    const std::uint64_t vertices = states == UINT64_MAX ? UINT64_MAX : states * states;
    const std::uint64_t work = saturating_pow(q, 2 * w);
    if (vertices > UINT32_MAX || work > limits.max_evals)
        throw TooLarge("pair de Bruijn graph", work, limits.max_evals);

    PairGraph g;
    g.vertex_count = static_cast<std::uint32_t>(vertices);
    const auto& table = contiguous.table();
    for (std::uint64_t s1 = 0; s1 < states; ++s1) {
        for (std::uint64_t s2 = 0; s2 < states; ++s2) {
            for (std::uint64_t x1 = 0; x1 < q; ++x1) {
                const std::uint64_t e1 = s1 * q + x1;
                for (std::uint64_t x2 = 0; x2 < q; ++x2) {
                    const std::uint64_t e2 = s2 * q + x2;
                    if (table[e1] != table[e2]) continue;
                    g.edges.push_back({static_cast<std::uint32_t>(s1 * states + s2),
                                       static_cast<std::uint32_t>((e1 % states) * states + e2 % states),
                                       static_cast<Symbol>(x1), static_cast<Symbol>(x2)});
                }
            }
        }
    }

    const auto n = g.vertex_count;
    g.out_begin.assign(n + 1, 0);
    g.in_begin.assign(n + 1, 0);
    for (const auto& e : g.edges) {
        ++g.out_begin[e.from + 1];
        ++g.in_begin[e.to + 1];
    }
    for (std::uint32_t v = 0; v < n; ++v) {
        g.out_begin[v + 1] += g.out_begin[v];
        g.in_begin[v + 1] += g.in_begin[v];
    }
    g.out_edges.resize(g.edges.size());
    g.in_edges.resize(g.edges.size());
    {
        auto out_fill = g.out_begin;
        auto in_fill = g.in_begin;
        for (std::uint32_t id = 0; id < g.edges.size(); ++id) {
            g.out_edges[out_fill[g.edges[id].from]++] = id;
            g.in_edges[in_fill[g.edges[id].to]++] = id;
        }
    }

    // Trim vertices with no successor (resp. predecessor) until stable.
    auto trim = [&](bool forward) {
        std::vector<char> alive(n, 1);
        std::vector<std::uint32_t> degree(n);
        std::vector<std::uint32_t> queue;
        for (std::uint32_t v = 0; v < n; ++v) {
            degree[v] = forward ? g.out_begin[v + 1] - g.out_begin[v] : g.in_begin[v + 1] - g.in_begin[v];
            if (degree[v] == 0) queue.push_back(v);
        }
        while (!queue.empty()) {
            const auto v = queue.back();
            queue.pop_back();
            if (!alive[v]) continue;
            alive[v] = 0;
            const auto& begin = forward ? g.in_begin : g.out_begin;
            const auto& list = forward ? g.in_edges : g.out_edges;
            for (auto i = begin[v]; i < begin[v + 1]; ++i) {
                const auto& e = g.edges[list[i]];
                const auto other = forward ? e.from : e.to;
                if (alive[other] && --degree[other] == 0) queue.push_back(other);
            }
        }
        return alive;
    };
    g.forward_alive = trim(true);
    g.backward_alive = trim(false);
    return g;
}

void append(std::pair<Word, Word>& out, const PairEdge& e) {
    out.first.push_back(e.x1);
    out.second.push_back(e.x2);
}

std::pair<EventuallyPeriodic, EventuallyPeriodic> extract_witness(const PairGraph& g, const PairEdge& bridge) {
    // Walk backwards from the bridge source until a vertex repeats.
    std::vector<std::uint32_t> seen(g.vertex_count, UINT32_MAX);
    std::vector<PairEdge> back;  // back[t] enters the t-th visited vertex
    std::uint32_t cur = bridge.from;
    seen[cur] = 0;
    std::size_t back_cycle_start = 0;
    for (;;) {
        const PairEdge* pick = nullptr;
        for (auto i = g.in_begin[cur]; i < g.in_begin[cur + 1]; ++i) {
            const auto& e = g.edges[g.in_edges[i]];
            if (g.backward_alive[e.from]) {
                pick = &e;
                break;
            }
        }
        back.push_back(*pick);
        cur = pick->from;
        if (seen[cur] != UINT32_MAX) {
            back_cycle_start = seen[cur];
            break;
        }
        seen[cur] = static_cast<std::uint32_t>(back.size());
    }

    std::fill(seen.begin(), seen.end(), UINT32_MAX);
    std::vector<PairEdge> fwd;
    cur = bridge.to;
    seen[cur] = 0;
    std::size_t fwd_cycle_start = 0;
    for (;;) {
        const PairEdge* pick = nullptr;
        for (auto i = g.out_begin[cur]; i < g.out_begin[cur + 1]; ++i) {
            const auto& e = g.edges[g.out_edges[i]];
            if (g.forward_alive[e.to]) {
                pick = &e;
                break;
            }
        }
        fwd.push_back(*pick);
        cur = pick->to;
        if (seen[cur] != UINT32_MAX) {
            fwd_cycle_start = seen[cur];
            break;
        }
        seen[cur] = static_cast<std::uint32_t>(fwd.size());
    }

    std::pair<Word, Word> left, center, right;
    for (std::size_t t = back.size(); t-- > back_cycle_start;) append(left, back[t]);
    for (std::size_t t = back_cycle_start; t-- > 0;) append(center, back[t]);
    append(center, bridge);
    for (std::size_t t = 0; t < fwd_cycle_start; ++t) append(center, fwd[t]);
    for (std::size_t t = fwd_cycle_start; t < fwd.size(); ++t) append(right, fwd[t]);

    return {EventuallyPeriodic{left.first, center.first, right.first},
            EventuallyPeriodic{left.second, center.second, right.second}};
}

Word expand(const EventuallyPeriodic& c, std::size_t reps) {
    Word out;
    for (std::size_t i = 0; i < reps; ++i) out.insert(out.end(), c.left.begin(), c.left.end());
    out.insert(out.end(), c.center.begin(), c.center.end());
    for (std::size_t i = 0; i < reps; ++i) out.insert(out.end(), c.right.begin(), c.right.end());
    return out;
}

std::string word_text(const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s.empty() ? "-" : s;
}

}  // namespace

InjectivityVerdict is_injective(const LocalRule& rule, const Limits& limits) {
    const LocalRule m = minimize(rule);
    if (m.width() == 0) {
        // Constant rule: every configuration has the same image.
        EventuallyPeriodic zero{{0}, {}, {0}}, one{{1}, {}, {1}};
        return {false, std::make_pair(zero, one)};
    }
    const LocalRule contiguous = extend_rule(m, m.offsets().hull(), limits);
    const PairGraph g = build_pair_graph(contiguous, limits);
    for (const auto& e : g.edges) {
        if (e.x1 != e.x2 && g.backward_alive[e.from] && g.forward_alive[e.to])
            return {false, extract_witness(g, e)};
    }
    return {true, std::nullopt};
}

InjectivityVerdict is_injective(const LocalRule& rule, const Alphabet& alphabet, const Limits& limits) {
    if (alphabet.size != rule.q()) throw AlphabetMismatch("rule and alphabet sizes differ");
    return is_injective(rule, limits);
}

bool check_injectivity_witness(const LocalRule& rule, const std::pair<EventuallyPeriodic, EventuallyPeriodic>& w) {
    const auto& [a, b] = w;
    if (a.left.size() != b.left.size() || a.center.size() != b.center.size() || a.right.size() != b.right.size())
        return false;
    if (a.left.empty() || a.right.empty()) return false;
    const LocalRule m = minimize(rule);
    const std::size_t width = std::max<std::size_t>(1, m.offsets().empty() ? 1 : m.offsets().hull().size());
    const LocalRule h = m.width() == 0 ? extend_rule(m, CellSet{0}) : extend_rule(m, m.offsets().hull());
    const std::size_t reps = width + 2;
    const Word sa = expand(a, reps), sb = expand(b, reps);
    if (sa == sb) return false;
    for (std::size_t p = 0; p + width <= sa.size(); ++p) {
        std::span<const Symbol> wa(sa.data() + p, width), wb(sb.data() + p, width);
        if (h(wa) != h(wb)) return false;
    }
    return true;
}

std::string describe_witness(const std::pair<EventuallyPeriodic, EventuallyPeriodic>& w) {
    std::ostringstream os;
    auto one = [&](const EventuallyPeriodic& c) {
        os << "(" << word_text(c.left) << ")^inf [" << word_text(c.center) << "] (" << word_text(c.right) << ")^inf";
    };
    one(w.first);
    os << " and ";
    one(w.second);
    os << " have the same image";
    return os.str();
}

LocalRule synthesize_inverse(const LocalRule& rule, const Alphabet& alphabet, int max_radius, const Limits& limits) {
    if (alphabet.size != rule.q()) throw AlphabetMismatch("rule and alphabet sizes differ");
    const auto verdict = is_injective(rule, limits);
    if (!verdict.injective) throw NotReversible("rule is not injective: " + describe_witness(*verdict.witness));

    const std::uint32_t q = rule.q();
    const LocalRule m = minimize(rule);
    const LocalRule h = extend_rule(m, m.offsets().hull(), limits);
    const Cell lo_off = h.offsets().min();
    const Cell hi_off = h.offsets().max();
    const std::size_t w = h.width();

    for (int radius = 0; radius <= max_radius; ++radius) {
        const Cell lo = std::min<Cell>(-radius + lo_off, 0);
        const Cell hi = std::max<Cell>(radius + hi_off, 0);
        const auto cells = static_cast<std::size_t>(hi - lo + 1);
        const auto inputs = checked_pow(q, cells, limits.max_evals, "inverse synthesis enumeration");
        const auto images = checked_pow(q, static_cast<std::size_t>(2 * radius + 1), limits.max_table,
                                        "inverse rule table");
        constexpr std::int64_t unseen = -1, conflict = -2;
        std::vector<std::int64_t> centre(images, unseen);

        Word x(cells, 0);
        for (std::uint64_t idx = 0; idx < inputs; ++idx) {
            std::uint64_t img = 0;
            for (Cell n = -radius; n <= radius; ++n) {
                const auto start = static_cast<std::size_t>(n + lo_off - lo);
                std::uint64_t widx = 0;
                for (std::size_t j = 0; j < w; ++j) widx = widx * q + x[start + j];
                img = img * q + h.table()[widx];
            }
            const auto sym = static_cast<std::int64_t>(x[static_cast<std::size_t>(-lo)]);
            auto& slot = centre[img];
            if (slot == unseen)
                slot = sym;
            else if (slot != sym)
                slot = conflict;
            for (std::size_t i = cells; i-- > 0;) {
                if (++x[i] < q) break;
                x[i] = 0;
            }
        }

        bool determined = true;
        for (auto s : centre) {
            if (s < 0) {
                determined = false;
                break;
            }
        }
        if (!determined) continue;

        std::vector<Symbol> table(centre.begin(), centre.end());
        const LocalRule candidate = minimize(LocalRule(q, CellSet::interval(-radius, radius), std::move(table)));
        if (!is_identity_rule(compose_rules(candidate, m, limits)) ||
            !is_identity_rule(compose_rules(m, candidate, limits)))
            throw VerificationFailure("synthesized inverse failed the composition check");
        return candidate;
    }
    throw RadiusCapExceeded(max_radius);
}

ReversibleCA make_reversible(const Alphabet& alphabet, const LocalRule& forward, const Limits& limits) {
    auto inverse = synthesize_inverse(forward, alphabet, limits.max_radius, limits);
    return ReversibleCA::from_rules(alphabet, forward, std::move(inverse), limits);
}

}  // namespace rca
