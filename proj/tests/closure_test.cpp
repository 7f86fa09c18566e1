#include <gtest/gtest.h>

#include "closure_lab/closure.hpp"
#include "oracles.hpp"

using namespace closure_lab;

namespace {

Ideal gen(const RingPtr& r, std::string_view gens) {
    return ideal_from_literals(r, parse_element_literals(gens));
}

std::vector<std::string> strs(const FiniteRing& r, const std::vector<Element>& xs) {
    std::vector<std::string> out;
    for (Element x : xs) out.push_back(r.to_string(x));
    return out;
}

const std::vector<std::string> kRings = {"Z8",        "Z16",       "Z12",      "Z36",
                                         "Z4 x Z2",   "Z8 x Z2",   "Z4 x Z4",  "Z4 (+) Z2",
                                         "Z4 (+) Z4", "Z8 (+) Z2", "Z2 (+) Z2", "Z16/(8)",
                                         "Z9 x Z3",   "Z27"};

}  // namespace

TEST(MnClosed, Examples) {
    auto z8 = build_ring("Z8");
    auto d = is_mn_closed(gen(z8, "4"), 3, 1);
    EXPECT_FALSE(d.holds);
    EXPECT_EQ(z8->to_string(*d.witness), "2");
    auto z16 = build_ring("Z16");
    auto e = is_mn_closed(gen(z16, "8"), 2, 1);
    EXPECT_FALSE(e.holds);
    EXPECT_EQ(z16->to_string(*e.witness), "4");
}

TEST(MnClosed, TrivialWhenMAtMostN) {
    for (const auto& spec : kRings) {
        auto en = enumerate_ideals(build_ring(spec));
        for (const Ideal& I : en.ideals) {
            if (!I.is_proper()) continue;
            for (unsigned m = 1; m <= 4; ++m)
                for (unsigned n = m; n <= 5; ++n) ASSERT_TRUE(is_mn_closed(I, m, n).holds);
        }
    }
}

TEST(WeaklyMnClosed, Examples) {
    auto z8 = build_ring("Z8");
    EXPECT_TRUE(is_weakly_mn_closed(gen(z8, "4"), 3, 1).holds);
    auto d = is_weakly_mn_closed(gen(z8, "4"), 2, 1);
    EXPECT_FALSE(d.holds);
    EXPECT_EQ(z8->to_string(*d.witness), "2");
    EXPECT_TRUE(is_weakly_mn_closed(gen(build_ring("Z16"), "8"), 2, 1).holds);
}

TEST(WeaklyMnClosed, ImproperIdealRejected) {
    auto z8 = build_ring("Z8");
    EXPECT_THROW(is_weakly_mn_closed(gen(z8, "1"), 2, 1), PreconditionError);
    EXPECT_THROW(classify(gen(z8, "1"), 2, 1), PreconditionError);
    EXPECT_THROW(is_mn_closed(gen(z8, "2"), 0, 1), PreconditionError);
}

TEST(WeaklyMnClosed, MatchesOracleOnCyclicRings) {
    for (std::uint64_t nm = 2; nm <= 48; ++nm) {
        auto r = FiniteRing::make_cyclic(nm);
        for (std::uint64_t d : oracle::divisors(nm)) {
            if (d == 1) continue;
            auto I = ideal_from_generators(r, {r->element(d % nm)});
            auto set = oracle::zn_ideal(d, nm);
            for (unsigned m = 1; m <= 5; ++m)
                for (unsigned n = 1; n <= 5; ++n) {
                    ASSERT_EQ(is_weakly_mn_closed(I, m, n).holds,
                              oracle::zn_weakly_closed(nm, set, m, n));
                    ASSERT_EQ(is_mn_closed(I, m, n).holds, oracle::zn_closed(nm, set, m, n));
                }
        }
    }
}

TEST(UnbreakableZero, Examples) {
    auto z16 = build_ring("Z16");
    EXPECT_EQ(strs(*z16, unbreakable_zero_elements(gen(z16, "8"), 2, 1)),
              (std::vector<std::string>{"4", "12"}));
    auto z8 = build_ring("Z8");
    EXPECT_EQ(strs(*z8, unbreakable_zero_elements(gen(z8, "4"), 3, 1)),
              (std::vector<std::string>{"2", "6"}));
    EXPECT_TRUE(unbreakable_zero_elements(gen(build_ring("Z6"), "3"), 2, 1).empty());
}

TEST(Classify, Examples) {
    auto z8 = build_ring("Z8");
    auto a = classify(gen(z8, "4"), 3, 1);
    EXPECT_EQ(a.status, ClosureStatus::weakly_only);
    EXPECT_EQ(z8->to_string(*a.witness), "2");
    auto b = classify(gen(z8, "4"), 2, 1);
    EXPECT_EQ(b.status, ClosureStatus::not_weakly);
    EXPECT_EQ(z8->to_string(*b.witness), "2");
    auto c = classify(gen(build_ring("Z6"), "3"), 2, 1);
    EXPECT_EQ(c.status, ClosureStatus::closed);
    EXPECT_FALSE(c.witness.has_value());
    EXPECT_EQ(to_string(ClosureStatus::weakly_only), "weakly_only");
}

// Report invariants plus the unbreakable-zero parenthetical, exhaustively.
TEST(Classify, WitnessInvariants) {
    for (const auto& spec : kRings) {
        auto r = build_ring(spec);
        for (const Ideal& I : enumerate_ideals(r).ideals) {
            if (!I.is_proper()) continue;
            for (unsigned m = 1; m <= 6; ++m)
                for (unsigned n = 1; n <= 6; ++n) {
                    auto rep = classify(I, m, n);
                    auto ubz = unbreakable_zero_elements(I, m, n);
                    switch (rep.status) {
                        case ClosureStatus::closed:
                            ASSERT_TRUE(ubz.empty());
                            for (Element x : r->elements())
                                if (I.contains(r->power(x, m))) ASSERT_TRUE(I.contains(r->power(x, n)));
                            break;
                        case ClosureStatus::weakly_only:
                            ASSERT_EQ(r->power(*rep.witness, m), r->zero());
                            ASSERT_FALSE(I.contains(r->power(*rep.witness, n)));
                            ASSERT_FALSE(ubz.empty());
                            ASSERT_EQ(ubz.front(), *rep.witness);
                            break;
                        case ClosureStatus::not_weakly: {
                            Element xm = r->power(*rep.witness, m);
                            ASSERT_NE(xm, r->zero());
                            ASSERT_TRUE(I.contains(xm));
                            ASSERT_FALSE(I.contains(r->power(*rep.witness, n)));
                            break;
                        }
                    }
                    // closed implies weakly closed.
                    if (is_mn_closed(I, m, n)) ASSERT_TRUE(is_weakly_mn_closed(I, m, n).holds);
                }
        }
    }
}

TEST(Classify, ReducedRingsAgree) {
    for (std::uint64_t n = 2; n <= 70; ++n) {
        if (!oracle::squarefree(n)) continue;
        auto r = FiniteRing::make_cyclic(n);
        ASSERT_TRUE(r->is_reduced());
        for (const Ideal& I : enumerate_ideals(r).ideals) {
            if (!I.is_proper()) continue;
            for (unsigned m = 1; m <= 5; ++m)
                for (unsigned k = 1; k <= 5; ++k)
                    ASSERT_EQ(is_mn_closed(I, m, k).holds, is_weakly_mn_closed(I, m, k).holds);
        }
    }
}

TEST(WeaklyPrimeRadical, Examples) {
    auto z16 = build_ring("Z16");
    auto rad = is_weakly_radical(gen(z16, "8"));
    EXPECT_FALSE(rad.holds);
    EXPECT_EQ(z16->to_string(*rad.witness), "2");
    EXPECT_EQ(rad.exponent, 3u);
    EXPECT_FALSE(is_weakly_prime(gen(z16, "8")).holds);

    auto z8 = build_ring("Z8");
    auto wp = is_weakly_prime(gen(z8, "4"));
    EXPECT_FALSE(wp.holds);
    EXPECT_EQ(z8->to_string(wp.witness->first), "2");
    EXPECT_EQ(z8->to_string(wp.witness->second), "2");

    EXPECT_TRUE(is_weakly_prime(zero_ideal(build_ring("Z5"))).holds);
    // {0} is weakly prime in every ring.
    EXPECT_TRUE(is_weakly_prime(zero_ideal(z8)).holds);
    EXPECT_TRUE(is_weakly_radical(gen(z8, "2")).holds);
}

TEST(NAbsorbing, Examples) {
    auto z8 = build_ring("Z8");
    EXPECT_TRUE(is_n_absorbing(zero_ideal(z8), 2, true).holds);
    auto d = is_n_absorbing(zero_ideal(z8), 2, false);
    EXPECT_FALSE(d.holds);
    ASSERT_EQ(d.witness.size(), 3u);
    for (Element x : d.witness) EXPECT_EQ(z8->to_string(x), "2");
    // Prime ideals are 1-absorbing.
    EXPECT_TRUE(is_n_absorbing(gen(z8, "2"), 1, false).holds);
}

TEST(NAbsorbing, WeaklyOneAbsorbingIsWeaklyPrime) {
    for (const auto& spec : kRings) {
        auto r = build_ring(spec);
        for (const Ideal& I : enumerate_ideals(r).ideals)
            if (I.is_proper())
                ASSERT_EQ(is_n_absorbing(I, 1, true).holds, is_weakly_prime(I).holds) << spec;
    }
}

TEST(NAbsorbing, BudgetExceeded) {
    auto r = build_ring("Z64");
    EXPECT_THROW(is_n_absorbing(zero_ideal(r), 3, true, 1u << 20), BudgetExceeded);
    EXPECT_NO_THROW(is_n_absorbing(zero_ideal(r), 2, true, 1u << 20));
}

// Closure-level properties quantified over enumerated (ring, ideal, m, n).
TEST(ClosureProperties, MonotoneInN) {
    for (const auto& spec : kRings) {
        for (const Ideal& I : enumerate_ideals(build_ring(spec)).ideals) {
            if (!I.is_proper()) continue;
            for (unsigned m = 1; m <= 6; ++m)
                for (unsigned n = 1; n <= 6; ++n) {
                    if (!is_weakly_mn_closed(I, m, n)) continue;
                    for (unsigned n2 = n; n2 <= 7; ++n2)
                        ASSERT_TRUE(is_weakly_mn_closed(I, m, n2).holds) << spec;
                }
        }
    }
}

TEST(ClosureProperties, WeaklyOnlyIdealsAreNil) {
    for (const auto& spec : kRings) {
        auto r = build_ring(spec);
        for (const Ideal& I : enumerate_ideals(r).ideals) {
            if (!I.is_proper()) continue;
            for (unsigned m = 2; m <= 6; ++m)
                for (unsigned n = 1; n < m; ++n) {
                    auto rep = classify(I, m, n);
                    if (rep.status != ClosureStatus::weakly_only) continue;
                    for (Element i : I.elements()) {
                        ASSERT_TRUE(r->is_nilpotent(i));
                        for (Element a : unbreakable_zero_elements(I, m, n))
                            ASSERT_EQ(r->power(r->add(a, i), m), r->zero());
                    }
                }
        }
    }
}

TEST(ClosureProperties, IntersectionsStayWeaklyClosed) {
    for (const auto& spec : kRings) {
        auto en = enumerate_ideals(build_ring(spec));
        for (const Ideal& A : en.ideals)
            for (const Ideal& B : en.ideals) {
                if (!A.is_proper() || !B.is_proper()) continue;
                auto C = intersection(A, B);
                for (unsigned m = 2; m <= 5; ++m)
                    for (unsigned n = 1; n < m; ++n)
                        if (is_weakly_mn_closed(A, m, n) && is_weakly_mn_closed(B, m, n))
                            ASSERT_TRUE(is_weakly_mn_closed(C, m, n).holds);
            }
    }
}
