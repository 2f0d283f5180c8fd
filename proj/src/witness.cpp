#include "rca/witness.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "rca/blocknbh.hpp"

namespace rca {

namespace {

constexpr std::uint64_t kRingCap = std::uint64_t{1} << 22;

CellSet ring_complement(std::size_t period, const CellSet& s) {
    return set_difference(CellSet::interval(0, static_cast<Cell>(period) - 1), s);
}

std::uint64_t sub_index(const Word& w, const CellSet& cells, std::uint32_t q) {
    std::uint64_t idx = 0;
    for (Cell c : cells) idx = idx * q + w[static_cast<std::size_t>(c)];
    return idx;
}

// Index bookkeeping for one split of the ring into (inner cells | outer cells).
struct RingSplit {
    std::vector<std::uint64_t> inner;  // config -> inner word
    std::vector<std::uint64_t> outer;  // config -> outer word
    std::vector<std::uint64_t> config; // inner * outer_count + outer -> config
    std::uint64_t inner_count = 0;
    std::uint64_t outer_count = 0;

    RingSplit(std::size_t period, const CellSet& in, std::uint32_t q, std::uint64_t total) {
        const CellSet out = ring_complement(period, in);
        inner_count = saturating_pow(q, in.size());
        outer_count = saturating_pow(q, out.size());
        inner.resize(total);
        outer.resize(total);
        config.resize(total);
        for (std::uint64_t c = 0; c < total; ++c) {
            const Word w = index_word(c, period, q);
            inner[c] = sub_index(w, in, q);
            outer[c] = sub_index(w, out, q);
            config[inner[c] * outer_count + outer[c]] = c;
        }
    }
};

// First-occurrence labels of a key sequence.
std::vector<std::uint32_t> canonical_labels(const std::vector<std::uint64_t>& keys, std::uint32_t& classes) {
    std::unordered_map<std::uint64_t, std::uint32_t> seen;
    std::vector<std::uint32_t> labels(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        auto [it, fresh] = seen.try_emplace(keys[i], static_cast<std::uint32_t>(seen.size()));
        labels[i] = it->second;
    }
    classes = static_cast<std::uint32_t>(seen.size());
    return labels;
}

std::string word_text(std::uint64_t index, std::size_t length, std::uint32_t q) {
    if (length == 0) return "-";
    const Word w = index_word(index, length, q);
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s;
}

std::uint64_t parse_word(const std::string& text, std::size_t length, std::uint32_t q) {
    if (text == "-") {
        if (length != 0) throw InvalidInput("empty word where " + std::to_string(length) + " symbols expected");
        return 0;
    }
    Word w;
    std::istringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) {
        long long v = -1;
        try {
            v = std::stoll(tok);
        } catch (const std::exception&) {
        }
        if (v < 0 || v >= q) throw InvalidInput("bad symbol '" + tok + "' in witness word");
        w.push_back(static_cast<Symbol>(v));
    }
    if (w.size() != length)
        throw InvalidInput("witness word '" + text + "' has " + std::to_string(w.size()) + " symbols, expected " +
                           std::to_string(length));
    return word_index(w, q);
}

}  // namespace

std::size_t default_ring_period(const ReversibleCA& f, const CellSet& x) {
    const CellSet& n = f.neighborhood();
    const CellSet& nd = f.dual_neighborhood();
    const CellSet span = (x | (x - n + n) | (x - nd + nd)).hull();
    return span.size() + 1;
}

SemilocalWitness semilocalize(const ReversibleCA& f, const CellSet& x, const CellSet& y, std::size_t ring_period,
                              const Limits& limits) {
    const std::uint32_t q = f.q();
    const std::size_t period = ring_period;
    if (period < 1) throw PreconditionFailed("ring period must be at least 1");
    const CellSet ring = CellSet::interval(0, static_cast<Cell>(period) - 1);
    if (!x.subset_of(ring) || !y.subset_of(ring))
        throw PreconditionFailed("X and Y must lie in [0;" + std::to_string(period - 1) + "]");
    const std::size_t needed = default_ring_period(f, x) - 1;
    if (period < needed)
        throw PreconditionFailed("ring period " + std::to_string(period) + " wraps the block onto itself; need at least " +
                                 std::to_string(needed));
    if (!is_semilocalizable(f, x, y, limits))
        throw PreconditionFailed("f is not semilocalizable for X = " + x.to_string() + ", Y = " + y.to_string());

    const std::uint64_t total = checked_pow(q, period, std::min(limits.max_evals, kRingCap), "ring configurations");

    std::vector<std::uint64_t> image(total), preimage(total, UINT64_MAX);
    for (std::uint64_t c = 0; c < total; ++c) {
        image[c] = word_index(apply_on_ring(f, index_word(c, period, q)), q);
        if (preimage[image[c]] != UINT64_MAX) throw VerificationFailure("f is not bijective on the ring");
        preimage[image[c]] = c;
    }

    const RingSplit sx(period, x, q, total);  // a | b
    const RingSplit sy(period, y, q, total);  // c | d
    const auto a_count = sx.inner_count, b_count = sx.outer_count;
    const auto c_count = sy.inner_count, d_count = sy.outer_count;

    SemilocalWitness w;
    w.q = q;
    w.ring_period = period;
    w.x = x;
    w.y = y;

    // g: Y-part of the image must not depend on b.
    w.g_word.resize(a_count);
    for (std::uint64_t a = 0; a < a_count; ++a) {
        w.g_word[a] = sy.inner[image[sx.config[a * b_count]]];
        for (std::uint64_t b = 1; b < b_count; ++b)
            if (sy.inner[image[sx.config[a * b_count + b]]] != w.g_word[a])
                throw PreconditionFailed("image on Y depends on the context on the ring");
    }

    // a ~ a' iff their images agree off Y, in every context.
    std::uint32_t a_classes = 0;
    std::vector<std::uint64_t> keys(a_count);
    for (std::uint64_t b = 0; b < b_count; ++b) {
        for (std::uint64_t a = 0; a < a_count; ++a) keys[a] = sy.outer[image[sx.config[a * b_count + b]]];
        std::uint32_t classes = 0;
        auto labels = canonical_labels(keys, classes);
        if (b == 0) {
            w.g_class = std::move(labels);
            a_classes = classes;
        } else if (labels != w.g_class) {
            throw PreconditionFailed("X-word equivalence depends on the context on the ring");
        }
    }

    // h: the preimage off X must depend only on d.
    w.h_word.resize(d_count);
    for (std::uint64_t d = 0; d < d_count; ++d) {
        w.h_word[d] = sx.outer[preimage[sy.config[d]]];
        for (std::uint64_t c = 1; c < c_count; ++c)
            if (sx.outer[preimage[sy.config[c * d_count + d]]] != w.h_word[d])
                throw PreconditionFailed("preimage off X depends on the image on Y on the ring");
    }

    std::uint32_t d_classes = 0;
    keys.assign(d_count, 0);
    for (std::uint64_t c = 0; c < c_count; ++c) {
        for (std::uint64_t d = 0; d < d_count; ++d) keys[d] = sx.inner[preimage[sy.config[c * d_count + d]]];
        std::uint32_t classes = 0;
        auto labels = canonical_labels(keys, classes);
        if (c == 0) {
            w.h_class = std::move(labels);
            d_classes = classes;
        } else if (labels != w.h_class) {
            throw PreconditionFailed("dual equivalence depends on the Y-word on the ring");
        }
    }

    if (a_classes != d_classes) throw VerificationFailure("class counts on both sides differ");
    w.e_size = a_classes;
    w.alpha.assign(a_classes, UINT32_MAX);
    for (std::uint64_t a = 0; a < a_count; ++a) {
        for (std::uint64_t b = 0; b < b_count; ++b) {
            const auto dc = w.h_class[sy.outer[image[sx.config[a * b_count + b]]]];
            auto& slot = w.alpha[w.g_class[a]];
            if (slot == UINT32_MAX)
                slot = dc;
            else if (slot != dc)
                throw VerificationFailure("class map is not well defined");
        }
    }

    const auto check = verify_witness(f, w, limits);
    if (!check.ok) throw VerificationFailure("witness reconstruction failed: " + check.detail);
    return w;
}

WitnessCheck verify_witness(const ReversibleCA& f, const SemilocalWitness& w, const Limits& limits) {
    WitnessCheck r;
    if (w.q != f.q()) {
        r.detail = "alphabet size differs from the automaton";
        return r;
    }
    const std::uint32_t q = w.q;
    const std::size_t period = w.ring_period;
    const CellSet ring = CellSet::interval(0, static_cast<Cell>(period) - 1);
    if (period < 1 || !w.x.subset_of(ring) || !w.y.subset_of(ring)) {
        r.detail = "X and Y must lie on the ring";
        return r;
    }
    const std::uint64_t total = checked_pow(q, period, std::min(limits.max_evals, kRingCap), "ring configurations");
    const RingSplit sx(period, w.x, q, total);
    const RingSplit sy(period, w.y, q, total);
    const std::uint64_t e = w.e_size;

    if (w.g_word.size() != sx.inner_count || w.g_class.size() != sx.inner_count ||
        w.h_word.size() != sy.outer_count || w.h_class.size() != sy.outer_count || w.alpha.size() != e) {
        r.detail = "table sizes do not match the split";
        return r;
    }

    // g injective into (Y-words x classes)
    std::vector<char> used(sy.inner_count * e, 0);
    for (std::uint64_t a = 0; a < sx.inner_count; ++a) {
        if (w.g_word[a] >= sy.inner_count || w.g_class[a] >= e) {
            r.detail = "g entry out of range";
            return r;
        }
        auto& u = used[w.g_word[a] * e + w.g_class[a]];
        if (u) {
            r.detail = "g is not injective";
            return r;
        }
        u = 1;
    }
    // h injective; keep its inverse
    std::vector<std::uint64_t> h_inverse(sx.outer_count * e, UINT64_MAX);
    for (std::uint64_t d = 0; d < sy.outer_count; ++d) {
        if (w.h_word[d] >= sx.outer_count || w.h_class[d] >= e) {
            r.detail = "h entry out of range";
            return r;
        }
        auto& slot = h_inverse[w.h_word[d] * e + w.h_class[d]];
        if (slot != UINT64_MAX) {
            r.detail = "h is not injective";
            return r;
        }
        slot = d;
    }
    std::vector<char> hit(e, 0);
    for (auto v : w.alpha) {
        if (v >= e || hit[v]) {
            r.detail = "alpha is not a permutation";
            return r;
        }
        hit[v] = 1;
    }

    for (std::uint64_t c = 0; c < total; ++c) {
        const auto a = sx.inner[c], b = sx.outer[c];
        const auto d = h_inverse[b * e + w.alpha[w.g_class[a]]];
        if (d == UINT64_MAX) {
            r.detail = "h^-1 undefined on a reached (b, class) pair";
            return r;
        }
        const std::uint64_t predicted = sy.config[w.g_word[a] * sy.outer_count + d];
        const std::uint64_t actual = word_index(apply_on_ring(f, index_word(c, period, q)), q);
        if (predicted != actual) {
            r.detail = "mismatch on configuration " + word_text(c, period, q);
            return r;
        }
        ++r.configurations;
    }
    r.ok = true;
    return r;
}

void write_witness(std::ostream& out, const SemilocalWitness& w) {
    const CellSet xc = ring_complement(w.ring_period, w.x);
    const CellSet yc = ring_complement(w.ring_period, w.y);
    auto cells = [&](const char* key, const CellSet& s) {
        out << key;
        for (Cell c : s) out << ' ' << c;
        out << '\n';
    };
    out << "witness-format 1\n";
    out << "alphabet " << w.q << '\n';
    out << "ring " << w.ring_period << '\n';
    cells("x", w.x);
    cells("y", w.y);
    out << "classes " << w.e_size << '\n';
    for (std::uint64_t a = 0; a < w.g_word.size(); ++a)
        out << "g " << word_text(a, w.x.size(), w.q) << " -> " << word_text(w.g_word[a], w.y.size(), w.q) << ' '
            << w.g_class[a] << '\n';
    for (std::uint64_t d = 0; d < w.h_word.size(); ++d)
        out << "h " << word_text(d, yc.size(), w.q) << " -> " << word_text(w.h_word[d], xc.size(), w.q) << ' '
            << w.h_class[d] << '\n';
    out << "alpha";
    for (auto v : w.alpha) out << ' ' << v;
    out << '\n';
}

SemilocalWitness parse_witness(std::istream& in) {
    SemilocalWitness w;
    std::string line;
    int number = 0;
    bool header = false, have_alpha = false;
    CellSet xc, yc;
    std::uint64_t a_count = 0, d_count = 0;
    auto fail = [&](const std::string& why) { throw InvalidInput("witness line " + std::to_string(number) + ": " + why); };
    auto read_uint = [&](std::istringstream& ls) {
        long long v = -1;
        if (!(ls >> v) || v < 0) fail("expected a non-negative integer");
        return static_cast<std::uint64_t>(v);
    };
    auto read_cells = [&](std::istringstream& ls) {
        std::vector<Cell> cells;
        for (long long v; ls >> v;) cells.push_back(v);
        if (!ls.eof()) fail("bad cell list");
        return CellSet(std::move(cells));
    };
    auto prepare = [&] {
        if (w.ring_period == 0) fail("ring must precede g/h lines");
        xc = ring_complement(w.ring_period, w.x);
        yc = ring_complement(w.ring_period, w.y);
        a_count = saturating_pow(w.q, w.x.size());
        d_count = saturating_pow(w.q, yc.size());
        if (a_count > kRingCap || d_count > kRingCap) fail("witness too large");
        w.g_word.assign(a_count, UINT64_MAX);
        w.g_class.assign(a_count, 0);
        w.h_word.assign(d_count, UINT64_MAX);
        w.h_class.assign(d_count, 0);
    };
    bool prepared = false;

    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (!header) {
            std::string version;
            ls >> version;
            if (key != "witness-format" || version != "1") fail("missing 'witness-format 1' header");
            header = true;
        } else if (key == "alphabet") {
            w.q = static_cast<std::uint32_t>(read_uint(ls));
            if (w.q < 2) fail("alphabet size must be at least 2");
        } else if (key == "ring") {
            w.ring_period = read_uint(ls);
        } else if (key == "x") {
            w.x = read_cells(ls);
        } else if (key == "y") {
            w.y = read_cells(ls);
        } else if (key == "classes") {
            w.e_size = static_cast<std::uint32_t>(read_uint(ls));
        } else if (key == "g" || key == "h") {
            if (!prepared) {
                prepare();
                prepared = true;
            }
            std::string from, arrow, to;
            ls >> from >> arrow >> to;
            if (arrow != "->") fail("expected '->'");
            const auto cls = read_uint(ls);
            if (key == "g") {
                const auto a = parse_word(from, w.x.size(), w.q);
                w.g_word[a] = parse_word(to, w.y.size(), w.q);
                w.g_class[a] = static_cast<std::uint32_t>(cls);
            } else {
                const auto d = parse_word(from, yc.size(), w.q);
                w.h_word[d] = parse_word(to, xc.size(), w.q);
                w.h_class[d] = static_cast<std::uint32_t>(cls);
            }
        } else if (key == "alpha") {
            for (long long v; ls >> v;) {
                if (v < 0) fail("negative class index");
                w.alpha.push_back(static_cast<std::uint32_t>(v));
            }
            have_alpha = true;
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    if (!header) throw InvalidInput("empty witness file");
    if (!prepared || !have_alpha) throw InvalidInput("witness file is incomplete");
    for (auto v : w.g_word)
        if (v == UINT64_MAX) throw InvalidInput("witness is missing g entries");
    for (auto v : w.h_word)
        if (v == UINT64_MAX) throw InvalidInput("witness is missing h entries");
    return w;
}

}  // namespace rca
