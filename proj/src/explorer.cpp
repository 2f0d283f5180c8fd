#include "rca/explorer.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rca/blocknbh.hpp"
#include "rca/linear.hpp"
#include "rca/reversibility.hpp"

namespace rca {

namespace {

// A surjective rule hits every symbol equally often.
bool balanced(const std::vector<Symbol>& table, std::uint32_t q) {
    std::vector<std::uint64_t> count(q, 0);
    for (auto s : table) ++count[s];
    for (auto c : count)
        if (c * q != table.size()) return false;
    return true;
}

std::string record_line(const TripleRecord& r) {
    return std::to_string(r.table_index) + ' ' + r.n.to_string() + ' ' + r.n_dual.to_string() + ' ' +
           r.bn.to_string();
}

TripleRecord parse_record(const std::string& line, std::uint32_t q) {
    std::istringstream ls(line);
    TripleRecord r;
    r.q = q;
    std::string n, nd, bn;
    if (!(ls >> r.table_index >> n >> nd >> bn)) throw InvalidInput("malformed survey record '" + line + "'");
    r.n = CellSet::parse(n);
    r.n_dual = CellSet::parse(nd);
    r.bn = CellSet::parse(bn);
    return r;
}

}  // namespace

std::uint64_t table_index(const LocalRule& rule) { return word_index(rule.table(), rule.q()); }

void for_each_rca(std::uint32_t q, const CellSet& window, std::uint64_t limit,
                  const std::function<bool(std::uint64_t, const ReversibleCA&)>& visit, std::uint64_t start_index,
                  const Limits& limits) {
    if (q < 2) throw InvalidInput("alphabet size must be at least 2");
    if (window.empty()) throw InvalidInput("window must be nonempty");
    if (limit == 0) return;
    const auto entries = checked_pow(q, window.size(), limits.max_table, "rule table");
    const auto tables = saturating_pow(q, entries);
    if (tables == UINT64_MAX) throw TooLarge("rule tables on the window", tables, UINT64_MAX - 1);
    if (limit == UINT64_MAX && tables > limits.max_evals)
        throw TooLarge("unbounded enumeration of rule tables", tables, limits.max_evals);
    if (start_index >= tables) return;

    const auto alphabet = Alphabet::make(q);
    Word table = index_word(start_index, entries, q);
    std::uint64_t emitted = 0;
    for (std::uint64_t index = start_index; index < tables; ++index) {
        if (balanced(table, q)) {
            LocalRule rule(q, window, table);
            if (is_injective(rule, alphabet, limits).injective) {
                if (!visit(index, make_reversible(alphabet, rule, limits))) return;
                if (++emitted == limit) return;
            }
        }
        for (std::size_t i = entries; i-- > 0;) {
            if (++table[i] < q) break;
            table[i] = 0;
        }
    }
}

std::vector<ReversibleCA> enumerate_rcas(std::uint32_t q, const CellSet& window, std::uint64_t limit,
                                         const Limits& limits) {
    std::vector<ReversibleCA> out;
    for_each_rca(
        q, window, limit,
        [&](std::uint64_t, const ReversibleCA& ca) {
            out.push_back(ca);
            return true;
        },
        0, limits);
    return out;
}

bool has_minimal_block_neighborhood(const ReversibleCA& f, const Limits& limits) {
    return block_neighborhood(f, limits) == (f.neighborhood() | f.dual_neighborhood());
}

bool check_subtraction_minimal(const ReversibleCA& f, const Limits& limits) {
    if (!is_additive_on_rings(f, 6)) throw PreconditionFailed("automaton is not additive under XOR or addition mod q");
    return has_minimal_block_neighborhood(f, limits);
}

ConjectureInstance build_conjecture_instance(const CellSet& x, const CellSet& y, const CellSet& z,
                                             bool include_all_shifts, const Limits& limits) {
    if (x.empty()) throw PreconditionFailed("X must be nonempty");
    if (x != y) throw PreconditionFailed("only X = Y is supported");
    const CellSet upper = (x - x + y) & (y - y + x);
    if (!(x | y).subset_of(z) || !z.subset_of(upper))
        throw PreconditionFailed("Z must satisfy X ∪ Y ⊆ Z ⊆ (X - X + Y) ∩ (Y - Y + X)");

    const auto binary = Alphabet::make(2);
    std::vector<ReversibleCA> parts;
    std::vector<std::string> names;
    CellSet read;
    std::vector<std::pair<ReversibleCA, std::string>> stretched;
    for (Cell target : z) {
        if (x.contains(target)) continue;
        // z = 2y - x; prefer a positive stretch y - x, then the smallest x
        std::optional<std::pair<Cell, Cell>> pick;
        for (Cell xi : x)
            for (Cell yi : x)
                if (xi != yi && 2 * yi - xi == target) {
                    const bool better = !pick || ((yi > xi) && !(pick->second > pick->first));
                    if (better) pick = {xi, yi};
                }
        if (!pick) throw PreconditionFailed("cell " + std::to_string(target) + " is not of the form 2y - x");
        const auto [xi, yi] = *pick;
        const int l = static_cast<int>(yi - xi);
        ReversibleCA t = l > 0 ? toffoli(l) : mirror(toffoli(-l));
        std::string name = std::string(l > 0 ? "toffoli(" : "mirror(toffoli(") + std::to_string(l > 0 ? l : -l) +
                           (l > 0 ? ")" : "))");
        if (xi != 0) {
            t = compose(shift(xi, t.alphabet()), t, limits);
            name = "shift(" + std::to_string(xi) + ") after " + name;
        }
        read = read | CellSet({xi, yi});
        stretched.emplace_back(std::move(t), std::move(name));
    }
    for (Cell xi : x) {
        if (!include_all_shifts && read.contains(xi)) continue;
        parts.push_back(shift(xi, binary));
        names.push_back("shift(" + std::to_string(xi) + ")");
    }
    for (auto& [ca, name] : stretched) {
        parts.push_back(std::move(ca));
        names.push_back(std::move(name));
    }

    ReversibleCA sum = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) sum = direct_sum(sum, parts[i], limits);

    ConjectureInstance inst{sum, names, sum.neighborhood(), sum.dual_neighborhood(), block_neighborhood(sum, limits)};
    if (inst.n != x || inst.n_dual != y || inst.bn != z)
        throw VerificationFailure("built automaton has N = " + inst.n.to_string() + ", Ñ = " + inst.n_dual.to_string() +
                                  ", BN = " + inst.bn.to_string() + "; expected " + x.to_string() + ", " +
                                  y.to_string() + ", " + z.to_string());
    return inst;
}

TripleRecord make_record(std::uint64_t index, const ReversibleCA& f, const Limits& limits) {
    TripleRecord r{f.q(), index, f.neighborhood(), f.dual_neighborhood(), block_neighborhood(f, limits)};
    const CellSet lower = r.n | r.n_dual;
    const CellSet upper = individual_bound(f);
    if (!lower.subset_of(r.bn) || !r.bn.subset_of(upper))
        throw VerificationFailure("table " + std::to_string(index) + ": BN = " + r.bn.to_string() +
                                  " escapes the bounds " + lower.to_string() + " and " + upper.to_string());
    const CellSet bn_dual = block_neighborhood(dual(f), limits);
    if (bn_dual != r.bn)
        throw VerificationFailure("table " + std::to_string(index) + ": BN of the dual is " + bn_dual.to_string() +
                                  ", BN is " + r.bn.to_string());
    return r;
}

std::vector<TripleRecord> survey(std::uint32_t qmax, const CellSet& window, std::uint64_t limit,
                                 const std::string& path, const Limits& limits) {
    const std::string header = "survey-format 1\nwindow " + window.to_string() + "\n";
    std::vector<TripleRecord> records;
    std::uint32_t last_q = 0;
    std::uint64_t resume_from = 0;
    std::uint64_t in_section = 0;

    std::ofstream out;
    if (!path.empty()) {
        std::string text;
        if (std::filesystem::exists(path)) {
            std::ifstream in(path, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        text.resize(text.rfind('\n') == std::string::npos ? 0 : text.rfind('\n') + 1);
        if (text.size() < header.size()) {
            if (!header.starts_with(text)) throw InvalidInput(path + ": not a survey file for this window");
            text.clear();
        } else if (!text.starts_with(header)) {
            throw InvalidInput(path + ": not a survey file for this window");
        }
        std::istringstream body(text.substr(std::min(text.size(), header.size())));
        for (std::string line; std::getline(body, line);) {
            if (line.starts_with("q ")) {
                last_q = static_cast<std::uint32_t>(std::stoul(line.substr(2)));
                resume_from = 0;
                in_section = 0;
            } else {
                if (last_q == 0) throw InvalidInput(path + ": record before any 'q' line");
                records.push_back(parse_record(line, last_q));
                resume_from = records.back().table_index + 1;
                ++in_section;
            }
        }
        out.open(path, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInput("cannot write '" + path + "'");
        out << (text.empty() ? header : text);
        out.flush();
    }

    for (std::uint32_t q = 2; q <= qmax; ++q) {
        if (q < last_q) continue;
        std::uint64_t start = 0, budget = limit;
        if (q == last_q) {
            start = resume_from;
            budget = limit == UINT64_MAX ? limit : limit - std::min(limit, in_section);
            if (budget == 0) continue;
        } else if (out.is_open()) {
            out << "q " << q << '\n';
            out.flush();
        }
        for_each_rca(
            q, window, budget,
            [&](std::uint64_t index, const ReversibleCA& ca) {
                records.push_back(make_record(index, ca, limits));
                if (out.is_open()) {
                    out << record_line(records.back()) << '\n';
                    out.flush();
                }
                return true;
            },
            start, limits);
    }
    return records;
}

}  // namespace rca
