#include "rca/ca_format.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "rca/reversibility.hpp"

namespace rca {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
    std::vector<Line> lines;
    std::string text;
    int number = 0;
    while (std::getline(in, text)) {
        ++number;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        std::size_t first = text.find_first_not_of(" \t");
        if (first == std::string::npos || text[first] == '#') continue;
        std::istringstream ls(text);
        Line line{number, {}};
        for (std::string tok; ls >> tok;) line.tokens.push_back(tok);
        lines.push_back(std::move(line));
    }
    return lines;
}

long long to_integer(const std::string& tok, int line) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw InvalidInput("line " + std::to_string(line) + ": expected an integer, got '" + tok + "'");
    }
}

void write_table(std::ostream& out, const char* key, const std::vector<Symbol>& table) {
    out << key;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (i > 0 && i % 32 == 0) out << '\n';
        out << (i % 32 == 0 && i > 0 ? "" : " ") << table[i];
    }
    out << '\n';
}

void write_offsets(std::ostream& out, const char* key, const CellSet& offsets) {
    out << key;
    for (Cell c : offsets) out << ' ' << c;
    out << '\n';
}

}  // namespace

CaFile parse_ca(std::istream& in) {
    const auto lines = tokenize(in);
    if (lines.empty() || lines[0].tokens.size() != 2 || lines[0].tokens[0] != "ca-format" || lines[0].tokens[1] != "1")
        throw InvalidInput("missing 'ca-format 1' header");

    std::optional<std::uint32_t> q;
    std::vector<std::uint32_t> tracks;
    std::optional<CellSet> offsets, inverse_offsets;
    std::optional<std::vector<Symbol>> table, inverse_table;

    auto read_offsets = [&](const Line& line) {
        std::vector<Cell> cells;
        for (std::size_t i = 1; i < line.tokens.size(); ++i) cells.push_back(to_integer(line.tokens[i], line.number));
        for (std::size_t i = 1; i < cells.size(); ++i)
            if (cells[i] <= cells[i - 1])
                throw InvalidInput("line " + std::to_string(line.number) + ": offsets must be strictly ascending");
        return CellSet(std::move(cells));
    };

    std::size_t li = 1;
    auto read_table = [&](const CellSet& window) {
        if (!q) throw InvalidInput("line " + std::to_string(lines[li].number) + ": table before alphabet");
        const auto expected = checked_pow(*q, window.size(), Limits{}.max_table, "table in file");
        std::vector<Symbol> entries;
        std::size_t ti = 1;
        const int start_line = lines[li].number;
        for (;;) {
            const auto& toks = lines[li].tokens;
            for (; ti < toks.size(); ++ti) {
                if (entries.size() == expected)
                    throw InvalidInput("line " + std::to_string(lines[li].number) + ": too many table entries");
                auto v = to_integer(toks[ti], lines[li].number);
                if (v < 0 || v >= *q)
                    throw InvalidInput("line " + std::to_string(lines[li].number) + ": symbol " + toks[ti] +
                                       " outside alphabet");
                entries.push_back(static_cast<Symbol>(v));
            }
            if (entries.size() == expected) break;
            if (++li >= lines.size())
                throw InvalidInput("line " + std::to_string(start_line) + ": table has " +
                                   std::to_string(entries.size()) + " entries, expected " + std::to_string(expected));
            ti = 0;
        }
        return entries;
    };

    for (; li < lines.size(); ++li) {
        const auto& line = lines[li];
        const auto& key = line.tokens[0];
        const auto where = "line " + std::to_string(line.number) + ": ";
        if (key == "alphabet") {
            if (line.tokens.size() != 2) throw InvalidInput(where + "alphabet takes one value");
            auto v = to_integer(line.tokens[1], line.number);
            if (v < 2 || v > (1ll << 31)) throw InvalidInput(where + "alphabet size must be at least 2");
            q = static_cast<std::uint32_t>(v);
        } else if (key == "tracks") {
            for (std::size_t i = 1; i < line.tokens.size(); ++i) {
                auto v = to_integer(line.tokens[i], line.number);
                if (v < 1) throw InvalidInput(where + "track sizes must be positive");
                tracks.push_back(static_cast<std::uint32_t>(v));
            }
        } else if (key == "offsets") {
            offsets = read_offsets(line);
        } else if (key == "inverse-offsets") {
            inverse_offsets = read_offsets(line);
        } else if (key == "table") {
            if (!offsets) throw InvalidInput(where + "table before offsets");
            table = read_table(*offsets);
        } else if (key == "inverse-table") {
            if (!inverse_offsets) throw InvalidInput(where + "inverse-table before inverse-offsets");
            inverse_table = read_table(*inverse_offsets);
        } else {
            throw InvalidInput(where + "unknown key '" + key + "'");
        }
    }

    if (!q) throw InvalidInput("missing alphabet");
    if (!offsets || !table) throw InvalidInput("missing offsets/table");
    if (inverse_offsets.has_value() != inverse_table.has_value())
        throw InvalidInput("inverse-offsets and inverse-table must appear together");

    CaFile file{Alphabet::make(*q, tracks), LocalRule(*q, *offsets, *table), std::nullopt};
    if (inverse_table) file.inverse = LocalRule(*q, *inverse_offsets, *inverse_table);
    return file;
}

CaFile read_ca_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    try {
        return parse_ca(in);
    } catch (const InvalidInput& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

ReversibleCA to_reversible(const CaFile& file, const Limits& limits) {
    if (file.inverse) return ReversibleCA::from_rules(file.alphabet, file.forward, *file.inverse, limits);
    return make_reversible(file.alphabet, file.forward, limits);
}

ReversibleCA load_ca(const std::string& path, const Limits& limits) { return to_reversible(read_ca_file(path), limits); }

void write_ca(std::ostream& out, const Alphabet& alphabet, const LocalRule& forward,
              const std::optional<LocalRule>& inverse) {
    out << "ca-format 1\n";
    out << "alphabet " << alphabet.size << '\n';
    if (!alphabet.tracks.empty()) {
        out << "tracks";
        for (auto t : alphabet.tracks) out << ' ' << t;
        out << '\n';
    }
    write_offsets(out, "offsets", forward.offsets());
    write_table(out, "table", forward.table());
    if (inverse) {
        write_offsets(out, "inverse-offsets", inverse->offsets());
        write_table(out, "inverse-table", inverse->table());
    }
}

void write_ca(std::ostream& out, const ReversibleCA& ca) { write_ca(out, ca.alphabet(), ca.forward(), ca.inverse()); }

void save_ca(const std::string& path, const ReversibleCA& ca) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    write_ca(out, ca);
}

}  // namespace rca
