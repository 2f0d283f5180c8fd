#include <doctest.h>

#include "oracles.hpp"
#include "rca/linear.hpp"
#include "rca/reversibility.hpp"

using namespace rca;

TEST_SUITE("injectivity") {
    TEST_CASE("known verdicts") {
        CHECK(is_injective(toffoli(1).forward()).injective);
        CHECK(is_injective(identity_rule(3)).injective);
        CHECK(is_injective(shift(-2).forward()).injective);

        const LocalRule xor_rule(2, CellSet{0, 1}, {0, 1, 1, 0});
        const auto v = is_injective(xor_rule);
        REQUIRE_FALSE(v.injective);
        REQUIRE(v.witness.has_value());
        CHECK(check_injectivity_witness(xor_rule, *v.witness));
        // 0^inf and 1^inf both map to 0^inf
        const EventuallyPeriodic zeros{{0}, {0}, {0}}, ones{{1}, {1}, {1}};
        CHECK(check_injectivity_witness(xor_rule, {zeros, ones}));
    }

    TEST_CASE("constant rule") {
        const LocalRule zero(2, CellSet{0}, {0, 0});
        const auto v = is_injective(zero);
        REQUIRE_FALSE(v.injective);
        CHECK(check_injectivity_witness(zero, *v.witness));
    }

    TEST_CASE("a witness must differ somewhere") {
        const LocalRule xor_rule(2, CellSet{0, 1}, {0, 1, 1, 0});
        const EventuallyPeriodic zeros{{0}, {0}, {0}};
        CHECK_FALSE(check_injectivity_witness(xor_rule, {zeros, zeros}));
    }

    // Exhaustive over every rule table with q <= 3 and window size <= 2.
    TEST_CASE("agrees with ring injectivity on all small rules") {
        struct Space {
            std::uint32_t q;
            CellSet window;
            int periods;
        };
        int injective = 0, checked = 0;
        for (const Space& s : {Space{2, {0}, 6}, Space{3, {0}, 6}, Space{2, {0, 1}, 8}, Space{3, {0, 1}, 6},
                               Space{2, {-1, 1}, 8}}) {
            const std::size_t entries = saturating_pow(s.q, s.window.size());
            const std::uint64_t tables = saturating_pow(s.q, entries);
            for (std::uint64_t t = 0; t < tables; ++t) {
                const LocalRule rule(s.q, s.window, index_word(t, entries, s.q));
                const auto verdict = is_injective(rule);
                const bool rings = oracle::injective_on_rings(rule, s.periods);
                ++checked;
                if (verdict.injective) {
                    ++injective;
                    CHECK(rings);
                } else {
                    REQUIRE(verdict.witness.has_value());
                    CHECK(check_injectivity_witness(rule, *verdict.witness));
                }
                // On these windows every non-injective rule already collides on a short ring.
                CHECK(verdict.injective == rings);
            }
        }
        CHECK(checked == 4 + 27 + 16 + 19683 + 16);
        // 2 + 6 on {0}; 4 + 48 on {0,1}; 4 on {-1,1}
        CHECK(injective == 2 + 6 + 4 + 48 + 4);
    }
}

TEST_SUITE("inverse synthesis") {
    TEST_CASE("toffoli inverse") {
        const auto t = toffoli(1);
        const auto inv = synthesize_inverse(t.forward(), t.alphabet(), 8);
        CHECK(inv.offsets() == CellSet{-1, 0});
        // T^-1(v)_0 = (v_-1^2, v_0^1 + v_-1^2 v_0^2)
        std::vector<Symbol> expected(16);
        for (unsigned a = 0; a < 4; ++a)
            for (unsigned b = 0; b < 4; ++b)
                expected[a * 4 + b] = static_cast<Symbol>(2 * (a & 1) + ((b >> 1) ^ ((a & 1) & (b & 1))));
        CHECK(inv.table() == expected);
    }

    TEST_CASE("shift inverse") {
        for (Cell k = -3; k <= 3; ++k)
            CHECK(synthesize_inverse(shift(k).forward(), Alphabet::make(2), 8) == shift(-k).forward());
    }

    TEST_CASE("linear inverse") {
        const auto fwd = linear_rule(2, two_track_partial_shift());
        const auto inv = synthesize_inverse(fwd, Alphabet::binary_tracks(2), 8);
        CHECK(is_identity_rule(minimize(compose_rules(inv, fwd))));
        CHECK(is_identity_rule(minimize(compose_rules(fwd, inv))));
        CHECK(inv.offsets() == CellSet{0, 1});
    }

    TEST_CASE("recovers stored inverses") {
        for (const auto& f : oracle::population())
            CHECK(synthesize_inverse(f.forward(), f.alphabet(), 8) == f.inverse());
    }

    TEST_CASE("errors") {
        const LocalRule xor_rule(2, CellSet{0, 1}, {0, 1, 1, 0});
        CHECK_THROWS_AS(synthesize_inverse(xor_rule, Alphabet::make(2), 8), NotReversible);
        // (toffoli after a track shift)^3 needs an inverse radius beyond 1
        const auto f = power(compose(toffoli(1), oracle::track_shift(1)), 3);
        CHECK_THROWS_AS(synthesize_inverse(f.forward(), f.alphabet(), 1), RadiusCapExceeded);
        CHECK(synthesize_inverse(f.forward(), f.alphabet(), 8) == f.inverse());
    }

    TEST_CASE("make_reversible") {
        const auto t = toffoli(1);
        CHECK(make_reversible(t.alphabet(), t.forward()) == t);
        CHECK_THROWS_AS(make_reversible(Alphabet::make(2), LocalRule(2, CellSet{0}, {1, 1})), NotReversible);
    }
}
