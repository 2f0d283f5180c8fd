// Runs every acceptance criterion and prints one PASS/FAIL line for each.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "property_checks.hpp"
#include "rca/blocknbh.hpp"
#include "rca/ca_format.hpp"
#include "rca/explorer.hpp"
#include "rca/linear.hpp"
#include "rca/reversibility.hpp"
#include "rca/witness.hpp"

using namespace rca;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Symbol pair(unsigned t1, unsigned t2) { return static_cast<Symbol>(2 * t1 + t2); }

// Rebuilds f on every ring configuration from the witness tables alone and
// compares with direct evaluation of the rule table.
bool reconstruction_oracle(const ReversibleCA& f, const SemilocalWitness& w, std::uint64_t& count) {
    const std::uint32_t q = w.q;
    const std::size_t p = w.ring_period;
    std::vector<std::size_t> xs, bs, ys, ds;
    for (std::size_t c = 0; c < p; ++c) {
        (w.x.contains(static_cast<Cell>(c)) ? xs : bs).push_back(c);
        (w.y.contains(static_cast<Cell>(c)) ? ys : ds).push_back(c);
    }
    auto index_on = [&](const std::vector<Symbol>& config, const std::vector<std::size_t>& cells) {
        std::uint64_t i = 0;
        for (auto c : cells) i = i * q + config[c];
        return i;
    };
    std::map<std::pair<std::uint64_t, std::uint32_t>, std::uint64_t> h_inverse;
    for (std::uint64_t d = 0; d < w.h_word.size(); ++d) h_inverse[{w.h_word[d], w.h_class[d]}] = d;

    const std::uint64_t total = saturating_pow(q, p);
    count = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
        const Word config = index_word(i, p, q);
        const auto a = index_on(config, xs), b = index_on(config, bs);
        const auto it = h_inverse.find({b, w.alpha[w.g_class[a]]});
        if (it == h_inverse.end()) return false;
        std::vector<Symbol> predicted(p);
        const Word yw = index_word(w.g_word[a], ys.size(), q), dw = index_word(it->second, ds.size(), q);
        for (std::size_t k = 0; k < ys.size(); ++k) predicted[ys[k]] = yw[k];
        for (std::size_t k = 0; k < ds.size(); ++k) predicted[ds[k]] = dw[k];
        if (predicted != oracle::ring_image(f.forward(), config)) return false;
        ++count;
    }
    return true;
}

Outcome toffoli_neighborhoods() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto t = toffoli(1);
    const auto n = minimal_neighborhood(t.forward(), t.alphabet());
    const auto nd = t.dual_neighborhood();
    const double s = seconds_since(t0);
    o.expect(n == CellSet{0, 1}, "N = " + n.to_string());
    o.expect(nd == CellSet{0, 1}, "Ñ = " + nd.to_string());
    o.expect(oracle::to_cellset(oracle::neighborhood(t)) == CellSet{0, 1}, "oracle N differs");
    o.expect(oracle::to_cellset(oracle::dual_neighborhood(t)) == CellSet{0, 1}, "oracle Ñ differs");
    o.expect(s < 0.1, "took " + std::to_string(s) + " s");
    return o;
}

Outcome toffoli_block_neighborhood() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto bn = block_neighborhood(toffoli(1));
    const double s = seconds_since(t0);
    o.expect(bn == CellSet{0, 1, 2}, "BN = " + bn.to_string());
    o.expect(s < 5, "took " + std::to_string(s) + " s");
    return o;
}

Outcome counterexample() {
    Outcome o;
    const auto t = toffoli(1);
    o.expect(!condition_three(t, CellSet{0, 1}, CellSet{0}), "condition three holds for X = {0,1}");
    const PatternAssignment a(CellSet{0, 1}, {pair(0, 0), pair(0, 0)});
    const PatternAssignment b(CellSet{0, 1}, {pair(0, 0), pair(1, 1)});
    const PatternAssignment u(CellSet{-1, 2}, {pair(0, 0), pair(1, 0)});
    const PatternAssignment v(CellSet{-1, 2}, {pair(0, 0), pair(0, 0)});
    const auto cmp = compare_contexts(t, CellSet{0, 1}, CellSet{0}, a, b, u, v);
    o.expect(cmp.agree_under_u, "words differ off Y under u");
    o.expect(!cmp.agree_under_v, "words agree off Y under v");
    o.expect(cmp.refutes(), "comparison does not refute");
    return o;
}

Outcome stretched() {
    Outcome o;
    for (int l = 1; l <= 3; ++l) {
        const auto bn = block_neighborhood(toffoli(l));
        o.expect(bn == CellSet{0, l, 2 * l}, "l = " + std::to_string(l) + ": BN = " + bn.to_string());
    }
    return o;
}

Outcome inverse_synthesis() {
    Outcome o;
    const auto t = toffoli(1);
    const auto inv = synthesize_inverse(t.forward(), t.alphabet(), Limits{}.max_radius);
    std::vector<Symbol> expected(16);
    // T^-1(v)_0 = (v_-1^2, v_0^1 + v_-1^2 v_0^2) on the window (v_-1, v_0)
    for (unsigned m = 0; m < 4; ++m)
        for (unsigned z = 0; z < 4; ++z)
            expected[m * 4 + z] = pair(m & 1, (z >> 1) ^ ((m & 1) & (z & 1)));
    o.expect(inv.offsets() == CellSet{-1, 0}, "window " + inv.offsets().to_string());
    o.expect(inv.table() == expected, "table differs");
    return o;
}

Outcome subtraction_minimality() {
    Outcome o;
    std::vector<std::pair<std::string, ReversibleCA>> cases;
    cases.emplace_back("two-track linear", linear_ca(2, two_track_partial_shift()));
    for (std::uint32_t q : {2u, 3u, 4u})
        for (Cell k = -3; k <= 3; ++k)
            cases.emplace_back("shift(" + std::to_string(k) + ") q=" + std::to_string(q), shift(k, Alphabet::make(q)));
    for (const auto& [name, f] : cases) {
        const auto bn = block_neighborhood(f);
        const auto expected = f.neighborhood() | f.dual_neighborhood();
        o.expect(bn == expected, name + ": BN = " + bn.to_string());
        o.expect(check_subtraction_minimal(f), name + ": not minimal");
        const auto by_oracle = oracle::to_cellset(oracle::block_neighborhood_by_subsets(f));
        o.expect(by_oracle == expected, name + ": widened-window oracle gives " + by_oracle.to_string());
    }
    const auto lin = linear_ca(2, two_track_partial_shift());
    o.expect(block_neighborhood(lin) == CellSet{-1, 0, 1}, "linear BN");
    return o;
}

std::vector<ReversibleCA> criterion_seven_population(double& survey_seconds) {
    const auto t0 = Clock::now();
    const auto records = survey(2, CellSet{0, 1}, UINT64_MAX);
    survey_seconds = seconds_since(t0);
    std::vector<ReversibleCA> pop = enumerate_rcas(2, CellSet{0, 1});
    pop.push_back(toffoli(1));
    if (records.size() + 1 != pop.size()) pop.clear();
    return pop;
}

Outcome individual_bounds() {
    Outcome o;
    double s = 0;
    const auto pop = criterion_seven_population(s);
    o.expect(!pop.empty(), "survey and enumeration disagree");
    for (const auto& f : pop) {
        const auto bn = block_neighborhood(f);
        const auto lower = f.neighborhood() | f.dual_neighborhood();
        const auto n = oracle::neighborhood(f), nd = oracle::dual_neighborhood(f);
        const auto upper = oracle::to_cellset(oracle::sum(oracle::sum(n, oracle::neg(n)), nd)) &
                           oracle::to_cellset(oracle::sum(oracle::sum(nd, oracle::neg(nd)), n));
        o.expect(lower.subset_of(bn) && bn.subset_of(upper), "sandwich fails: BN = " + bn.to_string());
    }
    o.expect(s < 60, "survey took " + std::to_string(s) + " s");
    return o;
}

Outcome self_duality() {
    Outcome o;
    double s = 0;
    const auto pop = criterion_seven_population(s);
    o.expect(!pop.empty(), "survey and enumeration disagree");
    for (const auto& f : pop) {
        const auto a = block_neighborhood(f), b = block_neighborhood(dual(f));
        o.expect(a == b, "BN = " + a.to_string() + ", BN(dual) = " + b.to_string());
    }
    return o;
}

Outcome composition_bound_toffoli() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto t = toffoli(1);
    const std::vector<ReversibleCA> fs{t, t};
    const auto cb = composition_bound(fs);
    const auto t2 = compose(t, t);
    const auto bn = block_neighborhood(t2);
    const double s = seconds_since(t0);
    o.expect(cb.v == CellSet::interval(0, 3), "V = " + cb.v.to_string());
    o.expect(bn.subset_of(cb.v), "BN(T^2) = " + bn.to_string());
    // minimality of the computed BN(T^2): it passes and every single removal fails
    o.expect(is_semilocalizable(t2, bn, CellSet{0}), "BN(T^2) does not pass");
    for (Cell c : bn) o.expect(!is_semilocalizable(t2, bn.without(c), CellSet{0}), "removable cell " + std::to_string(c));
    o.expect(s < 120, "took " + std::to_string(s) + " s");
    return o;
}

Outcome iterate_bounds() {
    Outcome o;
    const auto t = toffoli(1);
    o.expect(iterate_bound(t, 2) == CellSet::interval(-1, 3), "k = 2 bound " + iterate_bound(t, 2).to_string());
    for (int k = 1; k <= 2; ++k) {
        const auto bn = block_neighborhood(power(t, k));
        o.expect(bn.subset_of(iterate_bound(t, k)), "k = " + std::to_string(k) + ": BN = " + bn.to_string());
    }
    return o;
}

Outcome witness_exactness() {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / "blocknbh-acceptance";
    std::filesystem::create_directories(dir);
    const auto ca = (dir / "toffoli.ca").string(), wit = (dir / "toffoli.witness").string();
    std::ostringstream out, err;
    o.expect(cli::run({"builtin", "toffoli", "--l", "1", "-o", ca}, out, err) == 0, "builtin failed");
    out.str("");
    const int code = cli::run({"decompose", ca, "--ring", "6", "--cells", "[0;2]", "--target", "{0}", "-o", wit}, out, err);
    o.expect(code == 0, "decompose exit " + std::to_string(code) + ": " + err.str());
    o.expect(out.str().find("reconstruction OK over 4096 configurations\n") != std::string::npos, "no OK line");

    std::ifstream in(wit);
    const auto w = parse_witness(in);
    std::uint64_t count = 0;
    o.expect(reconstruction_oracle(toffoli(1), w, count), "oracle reconstruction failed");
    o.expect(count == 4096, "oracle checked " + std::to_string(count));

    std::ostringstream vout, verr;
    o.expect(cli::run({"verify-witness", ca, wit}, vout, verr) == 0, "verify-witness failed: " + verr.str());
    o.expect(vout.str().find("reconstruction OK over 4096 configurations\n") != std::string::npos, "verify line");
    std::ostringstream rewritten;
    write_witness(rewritten, w);
    std::ifstream again(wit);
    std::stringstream original;
    original << again.rdbuf();
    o.expect(rewritten.str() == original.str(), "witness file does not round-trip");
    return o;
}

Outcome conjecture_instance() {
    Outcome o;
    const auto inst = build_conjecture_instance(CellSet{0, 1}, CellSet{0, 1}, CellSet{0, 1, 2});
    o.expect(inst.ca.neighborhood() == CellSet{0, 1}, "N = " + inst.ca.neighborhood().to_string());
    o.expect(inst.ca.dual_neighborhood() == CellSet{0, 1}, "Ñ = " + inst.ca.dual_neighborhood().to_string());
    const auto bn = block_neighborhood(inst.ca);
    o.expect(bn == CellSet{0, 1, 2}, "BN = " + bn.to_string());
    const auto full = build_conjecture_instance(CellSet{0, 1}, CellSet{0, 1}, CellSet{0, 1, 2}, true);
    o.expect(block_neighborhood(full.ca) == CellSet{0, 1, 2}, "with every shift summand: BN differs");
    return o;
}

Outcome property_suites() {
    Outcome o;
    auto check = [&](const char* name, const props::Tally& t, int wanted) {
        o.expect(t.failures == 0, std::string(name) + ": " + std::to_string(t.failures) + " violations, first " +
                                      t.first_failure);
        o.expect(t.instances >= wanted, std::string(name) + ": only " + std::to_string(t.instances) + " instances");
    };
    check("monotonicity", props::monotonicity(200), 200);
    check("intersection", props::intersection(200), 200);
    check("union closure in Y", props::target_union(200), 200);
    const auto eq = props::equivalence(300);
    check("equivalence", eq, 300);
    o.expect(eq.positives >= 50 && eq.instances - eq.positives >= 50, "equivalence: one-sided sample");
    check("composition", props::composition(200), 200);
    const auto band = props::band_vs_widened(150);
    check("finite band vs widened window", band, 150);
    o.expect(band.positives >= 20 && band.instances - band.positives >= 20, "band: one-sided sample");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"toffoli neighborhoods N = Ñ = {0,1}", toffoli_neighborhoods},
        {"toffoli block neighborhood {0,1,2}", toffoli_block_neighborhood},
        {"failing words for X = {0,1}", counterexample},
        {"stretched toffoli BN = {0,l,2l}", stretched},
        {"inverse synthesis of toffoli", inverse_synthesis},
        {"subtraction automata have BN = N ∪ Ñ", subtraction_minimality},
        {"sandwich on survey population", individual_bounds},
        {"self-duality on survey population", self_duality},
        {"composition bound for toffoli twice", composition_bound_toffoli},
        {"iterate bound for k = 1, 2", iterate_bounds},
        {"witness reconstruction and round trip", witness_exactness},
        {"conjecture instance ({0,1},{0,1},{0,1,2})", conjecture_instance},
        {"property suites", property_suites},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.3f s", seconds_since(t0));
        std::cout << (o.ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << " (" << timing << ")";
        if (!o.ok) std::cout << ": " << o.detail;
        std::cout << std::endl;
        failed += !o.ok;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
