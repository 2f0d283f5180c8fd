#pragma once

#include <optional>
#include <string>
#include <utility>

#include "rca/automaton.hpp"

namespace rca {

// ...left left left | center | right right right...
struct EventuallyPeriodic {
    Word left;
    Word center;
    Word right;

    friend bool operator==(const EventuallyPeriodic&, const EventuallyPeriodic&) = default;
};

struct InjectivityVerdict {
    bool injective = true;
    // Two distinct configurations with the same image, aligned cell for cell.
    std::optional<std::pair<EventuallyPeriodic, EventuallyPeriodic>> witness;
};

// Decides injectivity on bi-infinite configurations by searching the pair
// de Bruijn graph for a bi-infinite path that leaves the diagonal.
InjectivityVerdict is_injective(const LocalRule& rule, const Limits& limits = {});
InjectivityVerdict is_injective(const LocalRule& rule, const Alphabet& alphabet, const Limits& limits = {});

// True when the witness configurations differ and have equal images under rule.
bool check_injectivity_witness(const LocalRule& rule, const std::pair<EventuallyPeriodic, EventuallyPeriodic>& w);

std::string describe_witness(const std::pair<EventuallyPeriodic, EventuallyPeriodic>& w);

// Smallest radius R <= max_radius on which every image word determines the
// centre preimage symbol. The candidate is verified by exact composition both
// ways before being returned (minimized).
// Throws NotReversible (non-injective rule) or RadiusCapExceeded.
LocalRule synthesize_inverse(const LocalRule& rule, const Alphabet& alphabet, int max_radius,
                             const Limits& limits = {});

// Promote a forward-only rule to a ReversibleCA.
ReversibleCA make_reversible(const Alphabet& alphabet, const LocalRule& forward, const Limits& limits = {});

}  // namespace rca
