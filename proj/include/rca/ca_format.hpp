#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "rca/automaton.hpp"

namespace rca {

// Contents of a `.ca` file before the inverse is known to be valid.
//
//   ca-format 1
//   alphabet <q>
//   tracks <t1> <t2> ...          (optional)
//   offsets <o1> <o2> ...         (ascending)
//   table <q^k symbols>           (may continue on following lines)
//   inverse-offsets ...           (optional, with inverse-table)
//   inverse-table ...
//
// Lines starting with '#' are comments.
struct CaFile {
    Alphabet alphabet;
    LocalRule forward;
    std::optional<LocalRule> inverse;
};

CaFile parse_ca(std::istream& in);
CaFile read_ca_file(const std::string& path);

// Verifies a stored inverse, or synthesizes one when absent.
ReversibleCA to_reversible(const CaFile& file, const Limits& limits = {});
ReversibleCA load_ca(const std::string& path, const Limits& limits = {});

void write_ca(std::ostream& out, const ReversibleCA& ca);
void write_ca(std::ostream& out, const Alphabet& alphabet, const LocalRule& forward,
              const std::optional<LocalRule>& inverse);
void save_ca(const std::string& path, const ReversibleCA& ca);

}  // namespace rca
