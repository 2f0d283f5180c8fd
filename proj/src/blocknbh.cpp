#include "rca/blocknbh.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <numeric>
#include <thread>

namespace rca {

CheckBand make_check_band(const ReversibleCA& f, const CellSet& x, const CellSet& y) {
    const CellSet& n = f.neighborhood();
    CellSet out_band = set_difference(x - n, y);
    CellSet in_band = set_difference(out_band + n, x);
    return CheckBand{x, y, std::move(out_band), std::move(in_band)};
}

bool is_semicausal(const ReversibleCA& f, const CellSet& x, const CellSet& y) {
    return (y + f.neighborhood()).subset_of(x);
}

bool is_dual_semicausal(const ReversibleCA& f, const CellSet& x, const CellSet& y) {
    return (y + f.dual_neighborhood()).subset_of(x);
}

namespace {

// Evaluates the out_band outputs for every X-word under a given context.
// Output index of (a, j) = x_part[a * out + j] + context_part[j].
class BandEvaluator {
public:
    BandEvaluator(const ReversibleCA& f, const CheckBand& band)
        : table_(f.forward().table()), q_(f.q()), out_(band.out_band.size()) {
        const auto& offsets = f.neighborhood();
        const auto k = offsets.size();
        std::vector<std::uint64_t> stride(k);
        std::uint64_t p = 1;
        for (std::size_t i = k; i-- > 0;) {
            stride[i] = p;
            p *= q_;
        }
        a_count_ = saturating_pow(q_, band.x.size());
        b_count_ = saturating_pow(q_, band.in_band.size());
        b_len_ = band.in_band.size();

        // (position in context word, stride) per output cell
        ctx_terms_.resize(out_);
        std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> x_terms(out_);
        for (std::size_t j = 0; j < out_; ++j) {
            for (std::size_t i = 0; i < k; ++i) {
                const Cell c = band.out_band[j] + offsets[i];
                if (auto xi = band.x.index_of(c); xi >= 0)
                    x_terms[j].emplace_back(static_cast<std::size_t>(xi), stride[i]);
                else
                    ctx_terms_[j].emplace_back(static_cast<std::size_t>(band.in_band.index_of(c)), stride[i]);
            }
        }
        x_part_.assign(a_count_ * out_, 0);
        Word a(band.x.size(), 0);
        for (std::uint64_t ai = 0; ai < a_count_; ++ai) {
            for (std::size_t j = 0; j < out_; ++j) {
                std::uint64_t s = 0;
                for (auto [pos, st] : x_terms[j]) s += a[pos] * st;
                x_part_[ai * out_ + j] = s;
            }
            advance(a);
        }
    }

    std::uint64_t a_count() const { return a_count_; }
    std::uint64_t b_count() const { return b_count_; }
    std::size_t out() const { return out_; }

    // Fills outputs[a * out + j] for the context with index b.
    void evaluate(std::uint64_t b, std::vector<Symbol>& outputs) const {
        const Word ctx = index_word(b, b_len_, q_);
        std::vector<std::uint64_t> ctx_part(out_, 0);
        for (std::size_t j = 0; j < out_; ++j)
            for (auto [pos, st] : ctx_terms_[j]) ctx_part[j] += ctx[pos] * st;
        outputs.resize(a_count_ * out_);
        for (std::uint64_t ai = 0; ai < a_count_; ++ai) {
            const std::uint64_t base = ai * out_;
            for (std::size_t j = 0; j < out_; ++j) outputs[base + j] = table_[x_part_[base + j] + ctx_part[j]];
        }
    }

private:
    void advance(Word& w) const {
        for (std::size_t i = w.size(); i-- > 0;) {
            if (++w[i] < q_) return;
            w[i] = 0;
        }
    }

    const std::vector<Symbol>& table_;
    std::uint32_t q_;
    std::size_t out_;
    std::size_t b_len_ = 0;
    std::uint64_t a_count_ = 0;
    std::uint64_t b_count_ = 0;
    std::vector<std::uint64_t> x_part_;
    std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> ctx_terms_;
};

// Canonical partition of X-words by output vector: label = order of first occurrence.
struct Partition {
    std::vector<std::uint32_t> label;
    std::vector<std::uint64_t> representative;  // least X-word of each class
};

Partition partition_of(const std::vector<Symbol>& outputs, std::uint64_t count, std::size_t width) {
    std::vector<std::uint64_t> order(count);
    std::iota(order.begin(), order.end(), std::uint64_t{0});
    auto less = [&](std::uint64_t a, std::uint64_t b) {
        const int c = std::memcmp(&outputs[a * width], &outputs[b * width], width * sizeof(Symbol));
        return c < 0 || (c == 0 && a < b);
    };
    std::sort(order.begin(), order.end(), less);
    // group id per word, then relabel by first occurrence
    std::vector<std::uint64_t> group(count);
    std::uint64_t g = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        if (i > 0 && std::memcmp(&outputs[order[i] * width], &outputs[order[i - 1] * width], width * sizeof(Symbol)) != 0)
            ++g;
        group[order[i]] = g;
    }
    Partition p;
    p.label.resize(count);
    std::vector<std::uint32_t> relabel(g + 1, UINT32_MAX);
    for (std::uint64_t a = 0; a < count; ++a) {
        auto& r = relabel[group[a]];
        if (r == UINT32_MAX) {
            r = static_cast<std::uint32_t>(p.representative.size());
            p.representative.push_back(a);
        }
        p.label[a] = r;
    }
    return p;
}

// True when outputs induce exactly the reference partition.
bool same_partition(const Partition& ref, const std::vector<Symbol>& outputs, std::size_t width) {
    const std::size_t bytes = width * sizeof(Symbol);
    for (std::uint64_t a = 0; a < ref.label.size(); ++a) {
        const auto rep = ref.representative[ref.label[a]];
        if (std::memcmp(&outputs[a * width], &outputs[rep * width], bytes) != 0) return false;
    }
    std::vector<std::uint64_t> reps = ref.representative;
    std::sort(reps.begin(), reps.end(), [&](std::uint64_t a, std::uint64_t b) {
        return std::memcmp(&outputs[a * width], &outputs[b * width], bytes) < 0;
    });
    for (std::size_t i = 1; i < reps.size(); ++i)
        if (std::memcmp(&outputs[reps[i] * width], &outputs[reps[i - 1] * width], bytes) == 0) return false;
    return true;
}

}  // namespace

bool condition_three(const ReversibleCA& f, const CellSet& x, const CellSet& y, const Limits& limits) {
    const CheckBand band = make_check_band(f, x, y);
    checked_pow(f.q(), x.size() + band.in_band.size(), limits.max_evals, "context-independence check");
    if (band.out_band.empty() || band.in_band.empty()) return true;

    const BandEvaluator eval(f, band);
    std::vector<Symbol> outputs;
    eval.evaluate(0, outputs);
    const Partition ref = partition_of(outputs, eval.a_count(), eval.out());

    const std::uint64_t contexts = eval.b_count();
    const std::uint64_t work = contexts * eval.a_count();
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (work < (1u << 16)) workers = 1;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, contexts - 1));

    std::atomic<bool> independent{true};
    auto run = [&](std::uint64_t first, std::uint64_t step) {
        std::vector<Symbol> local;
        for (std::uint64_t b = first; b < contexts && independent.load(std::memory_order_relaxed); b += step) {
            eval.evaluate(b, local);
            if (!same_partition(ref, local, eval.out())) independent = false;
        }
    };
    if (workers <= 1) {
        run(1, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, 1 + w, workers);
    }
    return independent;
}

bool is_semilocalizable(const ReversibleCA& f, const CellSet& x, const CellSet& y, const Limits& limits) {
    return is_semicausal(f, x, y) && is_dual_semicausal(f, x, y) && condition_three(f, x, y, limits);
}

ContextComparison compare_contexts(const ReversibleCA& f, const CellSet& x, const CellSet& y,
                                   const PatternAssignment& a, const PatternAssignment& a2,
                                   const PatternAssignment& u, const PatternAssignment& v) {
    if (a.support != x || a2.support != x) throw InvalidInput("compared words must be supported exactly on X");
    const CheckBand band = make_check_band(f, x, y);
    for (const auto* ctx : {&u, &v}) {
        const CellSet missing = set_difference(band.in_band, ctx->support);
        if (!missing.empty()) throw InsufficientSupport(missing);
    }
    auto outputs = [&](const PatternAssignment& word, const PatternAssignment& ctx) {
        Word out;
        for (Cell n : band.out_band) {
            Word window;
            for (Cell o : f.neighborhood()) {
                const Cell c = n + o;
                window.push_back(x.contains(c) ? word.at(c) : ctx.at(c));
            }
            out.push_back(f.forward()(window));
        }
        return out;
    };
    auto differing = [&](const Word& p, const Word& r) {
        std::vector<Cell> cells;
        for (std::size_t j = 0; j < p.size(); ++j)
            if (p[j] != r[j]) cells.push_back(band.out_band[j]);
        return CellSet(std::move(cells));
    };
    ContextComparison result;
    result.differing_under_u = differing(outputs(a, u), outputs(a2, u));
    result.differing_under_v = differing(outputs(a, v), outputs(a2, v));
    result.agree_under_u = result.differing_under_u.empty();
    result.agree_under_v = result.differing_under_v.empty();
    return result;
}

CellSet individual_bound(const ReversibleCA& f) {
    const CellSet& n = f.neighborhood();
    const CellSet& nd = f.dual_neighborhood();
    return (n - n + nd) & (nd - nd + n);
}

CellSet block_neighborhood(const ReversibleCA& f, const Limits& limits) {
    const CellSet target{0};
    const CellSet start = individual_bound(f);
    if (!is_semilocalizable(f, start, target, limits))
        throw VerificationFailure("individual bound " + start.to_string() + " is not a block neighborhood");
    // The satisfying sets inside start are closed upwards and under intersection,
    // so a cell is outside the minimum exactly when removing it alone still satisfies.
    std::vector<Cell> keep;
    for (Cell c : start)
        if (!is_semilocalizable(f, start.without(c), target, limits)) keep.push_back(c);
    CellSet bn(std::move(keep));
    if (!is_semilocalizable(f, bn, target, limits))
        throw VerificationFailure("computed block neighborhood " + bn.to_string() + " fails the check");
    return bn;
}

CompositionBound composition_bound(std::span<const ReversibleCA> fs, const Limits& limits) {
    const std::size_t n = fs.size();
    if (n == 0) throw InvalidInput("composition bound needs at least one automaton");
    for (const auto& f : fs)
        if (f.q() != fs[0].q()) throw AlphabetMismatch("composition factors must share an alphabet");

    CompositionBound result;

    // prefix[k] = f_k...f_1 (k = 0..n), suffix[k] = f_n...f_{k+1}
    std::vector<std::optional<ReversibleCA>> prefix(n + 1), suffix(n + 1);
    std::vector<CellSet> prefix_n(n + 1), suffix_nd(n + 1);
    prefix[0] = identity(fs[0].alphabet());
    prefix_n[0] = CellSet{0};
    for (std::size_t k = 1; k <= n; ++k) {
        const auto& f = fs[k - 1];
        if (prefix[k - 1]) {
            try {
                prefix[k] = compose(f, *prefix[k - 1], limits);
            } catch (const TooLarge&) {
                result.exact_neighborhoods = false;
            }
        }
        prefix_n[k] = prefix[k] ? prefix[k]->neighborhood() : f.neighborhood() + prefix_n[k - 1];
    }
    suffix[n] = identity(fs[0].alphabet());
    suffix_nd[n] = CellSet{0};
    for (std::size_t k = n; k-- > 0;) {
        const auto& f = fs[k];  // f_{k+1}
        if (suffix[k + 1]) {
            try {
                suffix[k] = compose(*suffix[k + 1], f, limits);
            } catch (const TooLarge&) {
                result.exact_neighborhoods = false;
            }
        }
        suffix_nd[k] = suffix[k] ? suffix[k]->dual_neighborhood() : suffix_nd[k + 1] + f.dual_neighborhood();
    }

    for (std::size_t k = 1; k <= n; ++k) {
        CompositionTerm term;
        term.c = suffix_nd[k];
        term.k = term.c + block_neighborhood(fs[k - 1], limits);
        term.d = prefix_n[k - 1];
        term.v = term.k + term.d;
        result.v = result.v | term.v;
        result.terms.push_back(std::move(term));
    }

    if (prefix[n]) {
        try {
            result.composite_bn = block_neighborhood(*prefix[n], limits);
            result.contained = result.composite_bn->subset_of(result.v);
        } catch (const TooLarge&) {
        }
    }
    return result;
}

CellSet iterate_bound(const ReversibleCA& f, int k) {
    if (k < 1) throw InvalidInput("iterate bound needs k >= 1");
    const CellSet& n = f.neighborhood();
    const CellSet& nd = f.dual_neighborhood();
    const Cell alpha = -n.min(), beta = n.max();
    const Cell gamma = -nd.min(), delta = nd.max();
    const Cell lo = -(k + 1) * std::max(alpha, gamma) - std::min(beta, delta);
    const Cell hi = (k + 1) * std::max(beta, delta) + std::min(alpha, gamma);
    return CellSet::interval(lo, hi);
}

CellSet indecomposability_bound(const ReversibleCA& f, const ReversibleCA& g) {
    Cell r = 0;
    for (const CellSet* s : {&f.neighborhood(), &f.dual_neighborhood(), &g.neighborhood(), &g.dual_neighborhood()})
        for (Cell c : *s) r = std::max(r, c < 0 ? -c : c);
    return CellSet::interval(-4 * r, 4 * r);
}

BoundsReport verify_all_bounds(const ReversibleCA& f, const Limits& limits) {
    BoundsReport r;
    r.n = f.neighborhood();
    r.n_dual = f.dual_neighborhood();
    r.bn = block_neighborhood(f, limits);
    r.individual_bound = individual_bound(f);
    r.bn_of_dual = block_neighborhood(dual(f), limits);
    r.neighborhoods_meet = !(r.n & r.n_dual).empty();
    r.contains_neighborhoods = (r.n | r.n_dual).subset_of(r.bn);
    r.within_individual_bound = r.bn.subset_of(r.individual_bound);
    r.self_dual = r.bn_of_dual == r.bn;
    r.minimal = r.bn == (r.n | r.n_dual);
    return r;
}

}  // namespace rca
