#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rca {

using Cell = std::int64_t;

// Finite set of integer cell positions, stored sorted and duplicate-free.
// All neighborhoods and block arithmetic are expressed with it.
class CellSet {
public:
    CellSet() = default;
    CellSet(std::initializer_list<Cell> cells);
    explicit CellSet(std::vector<Cell> cells);

    static CellSet interval(Cell lo, Cell hi);  // [lo;hi], empty when lo > hi

    const std::vector<Cell>& cells() const noexcept { return cells_; }
    std::size_t size() const noexcept { return cells_.size(); }
    bool empty() const noexcept { return cells_.empty(); }
    auto begin() const noexcept { return cells_.begin(); }
    auto end() const noexcept { return cells_.end(); }
    Cell operator[](std::size_t i) const { return cells_[i]; }

    Cell min() const;
    Cell max() const;

    bool contains(Cell c) const;
    bool subset_of(const CellSet& other) const;
    // Position of c within the ascending list, or -1.
    std::ptrdiff_t index_of(Cell c) const;

    CellSet translate(Cell k) const;
    CellSet without(Cell c) const;
    CellSet hull() const;  // smallest interval containing the set

    friend CellSet operator+(const CellSet& a, const CellSet& b);  // Minkowski sum
    friend CellSet operator-(const CellSet& a, const CellSet& b);  // {a - b}
    friend CellSet operator-(const CellSet& a);                    // reflection
    friend CellSet operator|(const CellSet& a, const CellSet& b);
    friend CellSet operator&(const CellSet& a, const CellSet& b);
    friend CellSet set_difference(const CellSet& a, const CellSet& b);

    friend bool operator==(const CellSet&, const CellSet&) = default;
    friend auto operator<=>(const CellSet&, const CellSet&) = default;

    // "{0,1,2}"
    std::string to_string() const;
    // Accepts "{0,1,2}", "0,1,2", "0 1 2", "[a;b]" / "a..b" intervals, and "{}".
    static CellSet parse(std::string_view text);

private:
    std::vector<Cell> cells_;
};

inline CellSet minkowski_sum(const CellSet& a, const CellSet& b) { return a + b; }
inline CellSet minkowski_diff(const CellSet& a, const CellSet& b) { return a - b; }
inline CellSet negate(const CellSet& a) { return -a; }

std::ostream& operator<<(std::ostream& os, const CellSet& s);

}  // namespace rca
