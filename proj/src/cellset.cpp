#include "rca/cellset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <ostream>

#include "rca/errors.hpp"

namespace rca {

namespace {

void normalize(std::vector<Cell>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

Cell parse_cell(std::string_view tok) {
    Cell value = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last)
        throw InvalidInput("invalid cell '" + std::string(tok) + "'");
    return value;
}

}  // namespace

CellSet::CellSet(std::initializer_list<Cell> cells) : cells_(cells) { normalize(cells_); }

CellSet::CellSet(std::vector<Cell> cells) : cells_(std::move(cells)) { normalize(cells_); }

CellSet CellSet::interval(Cell lo, Cell hi) {
    CellSet s;
    for (Cell c = lo; c <= hi; ++c) s.cells_.push_back(c);
    return s;
}

Cell CellSet::min() const {
    if (cells_.empty()) throw InvalidInput("min of empty cell set");
    return cells_.front();
}

Cell CellSet::max() const {
    if (cells_.empty()) throw InvalidInput("max of empty cell set");
    return cells_.back();
}

bool CellSet::contains(Cell c) const { return std::binary_search(cells_.begin(), cells_.end(), c); }

bool CellSet::subset_of(const CellSet& other) const {
    return std::includes(other.cells_.begin(), other.cells_.end(), cells_.begin(), cells_.end());
}

std::ptrdiff_t CellSet::index_of(Cell c) const {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), c);
    if (it == cells_.end() || *it != c) return -1;
    return it - cells_.begin();
}

CellSet CellSet::translate(Cell k) const {
    CellSet s = *this;
    for (auto& c : s.cells_) c += k;
    return s;
}

CellSet CellSet::without(Cell c) const {
    CellSet s = *this;
    s.cells_.erase(std::remove(s.cells_.begin(), s.cells_.end(), c), s.cells_.end());
    return s;
}

CellSet CellSet::hull() const {
    if (cells_.empty()) return {};
    return interval(cells_.front(), cells_.back());
}

CellSet operator+(const CellSet& a, const CellSet& b) {
    std::vector<Cell> out;
    out.reserve(a.size() * b.size());
    for (Cell x : a)
        for (Cell y : b) out.push_back(x + y);
    return CellSet(std::move(out));
}

CellSet operator-(const CellSet& a, const CellSet& b) { return a + (-b); }

CellSet operator-(const CellSet& a) {
    std::vector<Cell> out(a.cells_.rbegin(), a.cells_.rend());
    for (auto& c : out) c = -c;
    CellSet s;
    s.cells_ = std::move(out);
    return s;
}

CellSet operator|(const CellSet& a, const CellSet& b) {
    CellSet s;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(s.cells_));
    return s;
}

CellSet operator&(const CellSet& a, const CellSet& b) {
    CellSet s;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(s.cells_));
    return s;
}

CellSet set_difference(const CellSet& a, const CellSet& b) {
    CellSet s;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(s.cells_));
    return s;
}

std::string CellSet::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(cells_[i]);
    }
    out += '}';
    return out;
}

CellSet CellSet::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.size() >= 2 && text.front() == '[' && text.back() == ']') {
        auto inner = text.substr(1, text.size() - 2);
        auto sep = inner.find(';');
        if (sep == std::string_view::npos) throw InvalidInput("interval must be written [lo;hi]");
        return interval(parse_cell(trim(inner.substr(0, sep))), parse_cell(trim(inner.substr(sep + 1))));
    }
    if (auto dots = text.find(".."); dots != std::string_view::npos)
        return interval(parse_cell(trim(text.substr(0, dots))), parse_cell(trim(text.substr(dots + 2))));
    if (!text.empty() && text.front() == '{') {
        if (text.back() != '}') throw InvalidInput("unterminated cell set '" + std::string(text) + "'");
        text = text.substr(1, text.size() - 2);
    }
    std::vector<Cell> cells;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find_first_of(", \t", pos);
        if (end == std::string_view::npos) end = text.size();
        auto tok = trim(text.substr(pos, end - pos));
        if (!tok.empty()) cells.push_back(parse_cell(tok));
        pos = end + 1;
    }
    return CellSet(std::move(cells));
}

std::ostream& operator<<(std::ostream& os, const CellSet& s) { return os << s.to_string(); }

}  // namespace rca
