#include <gtest/gtest.h>

#include "polarity_mc/fol.hpp"
#include "polarity_mc/lattice.hpp"
#include "polarity_mc/semantics.hpp"
#include "polarity_mc/simrel.hpp"
#include "support/brute_force.hpp"
#include "support/generators.hpp"
#include "support/kripke_oracle.hpp"

using namespace polarity_mc;
using namespace polarity_mc::testing;

namespace {

const ModelShape small{1, 3, 1, 3, 2};

bool has_clause(const std::vector<SimViolation>& vs, int clause, bool converse = false) {
    for (const auto& v : vs) {
        if (v.clause == clause && v.converse == converse) {
            return true;
        }
    }
    return false;
}

SimPair lifted_pair(const Relation& z) {
    return {z, z};
}

}  // namespace

TEST(IsSimulation, TrivialPairs) {
    Rng rng(61);
    for (int round = 0; round < 100; ++round) {
        const LEModel m1 = random_model(rng);
        const LEModel m2 = random_model(rng);
        EXPECT_TRUE(is_simulation(m1, m2, empty_pair(m1, m2)).empty());
        EXPECT_TRUE(is_bisimulation(m1, m2, empty_pair(m1, m2)).empty());
        EXPECT_TRUE(is_simulation(m1, m1, identity_pair(m1)).empty());
        EXPECT_TRUE(is_bisimulation(m1, m1, identity_pair(m1)).empty());
    }
}

TEST(IsSimulation, ShapeAndVocabularyErrors) {
    const LEModel m1 = load_fixture("fig1_m1.json");
    const LEModel m2 = load_fixture("fig1_m2.json");
    EXPECT_THROW(is_simulation(m1, m2, empty_pair(m2, m1)), ModelError);
    const LEModel other(m2.polarity(), m2.r_box(), m2.r_dia(), {{"p", m2.value("p")}});
    EXPECT_THROW(is_simulation(m1, other, empty_pair(m1, other)), ModelError);
    EXPECT_THROW(greatest_simulation(m1, other), ModelError);
}

TEST(IsSimulation, FigureOneClauseTwo) {
    const LEModel m1 = load_fixture("fig1_m1.json");
    const LEModel m2 = load_fixture("fig1_m2.json");
    SimPair z = empty_pair(m1, m2);
    z.s.insert(m1.objects().index_of("a1"), 0);
    z.t.insert(m1.attributes().index_of("y1"), 0);
    const auto vs = is_simulation(m1, m2, z);
    EXPECT_TRUE(has_clause(vs, 2));
    bool found = false;
    for (const auto& v : vs) {
        if (v.clause == 2) {
            found = v.left == m1.attributes().index_of("y1") && v.right == 0;
        }
    }
    EXPECT_TRUE(found);
}

TEST(IsSimulation, AgreesWithNaiveChecker) {
    Rng rng(62);
    for (int round = 0; round < 2000; ++round) {
        const LEModel m1 = random_model(rng, small);
        const LEModel m2 = random_model(rng, small);
        SimPair z{random_relation(rng, m1.objects().size(), m2.objects().size(), 0.6),
                  random_relation(rng, m1.attributes().size(), m2.attributes().size(), 0.6)};
        EXPECT_EQ(is_simulation(m1, m2, z).empty(), naive_is_simulation(m1, m2, z));
        const SimPair zt{z.s.transposed(), z.t.transposed()};
        EXPECT_EQ(is_bisimulation(m1, m2, z).empty(),
                  naive_is_simulation(m1, m2, z) && naive_is_simulation(m2, m1, zt));
    }
}

TEST(Greatest, FigureOne) {
    const LEModel m1 = load_fixture("fig1_m1.json");
    const LEModel m2 = load_fixture("fig1_m2.json");
    const auto a1 = m1.objects().index_of("a1");
    const SimPair bisim = greatest_bisimulation(m1, m2);
    EXPECT_FALSE(bisim.s.contains(a1, 0));
    EXPECT_EQ(greatest_simulation(m1, m2), brute_force_simulation_union(m1, m2));
    EXPECT_EQ(greatest_simulation(m2, m1), brute_force_simulation_union(m2, m1));
    EXPECT_EQ(bisim, brute_force_bisimulation_union(m1, m2));
}

TEST(Greatest, SelfContainsIdentity) {
    Rng rng(63);
    for (int round = 0; round < 100; ++round) {
        const LEModel m = random_model(rng, {1, 5, 1, 5});
        const SimPair g = greatest_simulation(m, m);
        const SimPair b = greatest_bisimulation(m, m);
        for (std::size_t a = 0; a < m.objects().size(); ++a) {
            EXPECT_TRUE(g.s.contains(a, a));
            EXPECT_TRUE(b.s.contains(a, a));
        }
        for (std::size_t x = 0; x < m.attributes().size(); ++x) {
            EXPECT_TRUE(g.t.contains(x, x));
            EXPECT_TRUE(b.t.contains(x, x));
        }
    }
}

TEST(Greatest, SoundMaximalAndConvergent) {
    Rng rng(64);
    for (int round = 0; round < 200; ++round) {
        const LEModel m1 = random_model(rng);
        const LEModel m2 = random_model(rng);
        const RefinementTrace trace = refine_simulation(m1, m2);
        const SimPair& g = trace.result;
        EXPECT_TRUE(is_simulation(m1, m2, g).empty());
        for (std::size_t i = 1; i < trace.sizes.size(); ++i) {
            EXPECT_LT(trace.sizes[i], trace.sizes[i - 1]);
        }
        const std::size_t bound = m1.objects().size() * m2.objects().size() +
                                  m1.attributes().size() * m2.attributes().size();
        EXPECT_LE(trace.sizes.size(), bound + 1);
        // adding back any single missing pair breaks the simulation
        for (std::size_t u = 0; u < m1.objects().size(); ++u) {
            for (std::size_t v = 0; v < m2.objects().size(); ++v) {
                if (!g.s.contains(u, v)) {
                    SimPair bigger = g;
                    bigger.s.insert(u, v);
                    EXPECT_FALSE(is_simulation(m1, m2, bigger).empty());
                }
            }
        }
        for (std::size_t u = 0; u < m1.attributes().size(); ++u) {
            for (std::size_t v = 0; v < m2.attributes().size(); ++v) {
                if (!g.t.contains(u, v)) {
                    SimPair bigger = g;
                    bigger.t.insert(u, v);
                    EXPECT_FALSE(is_simulation(m1, m2, bigger).empty());
                }
            }
        }
        EXPECT_TRUE(is_bisimulation(m1, m2, greatest_bisimulation(m1, m2)).empty());
    }
}

TEST(Greatest, MatchesBruteForceUnion) {
    Rng rng(65);
    for (int round = 0; round < 40; ++round) {
        const LEModel m1 = random_model(rng, {1, 2, 1, 3});
        const LEModel m2 = random_model(rng, {1, 3, 1, 2});
        EXPECT_EQ(greatest_simulation(m1, m2), brute_force_simulation_union(m1, m2)) << round;
        EXPECT_EQ(greatest_bisimulation(m1, m2), brute_force_bisimulation_union(m1, m2)) << round;
    }
}

TEST(Greatest, EmptyCarriersAreAllowed) {
    const LEModel m1 = load_fixture("fig1_m1.json");
    const Polarity p(Carrier({"a"}), Carrier{}, Relation(1, 0));
    const LEModel m2(p, Relation(1, 0), Relation(0, 1),
                     {{"p", Concept{p.objects().all(), ElementSet(0)}}, {"q", Concept{p.objects().all(), ElementSet(0)}}});
    const SimPair g = greatest_simulation(m1, m2);
    EXPECT_TRUE(is_simulation(m1, m2, g).empty());
    EXPECT_EQ(g.s.pair_count(), 2U);
}

TEST(Invariance, SimulationsPreserveAndReflect) {
    Rng rng(66);
    const auto formulas = enumerate_formulas({"p", "q"}, 2);
    for (int round = 0; round < 60; ++round) {
        const LEModel m1 = random_model(rng);
        const LEModel m2 = random_model(rng);
        const SimPair g = greatest_simulation(m1, m2);
        SatisfactionEvaluator s1(m1);
        SatisfactionEvaluator s2(m2);
        for (const auto& f : formulas) {
            const Truth& t1 = s1(f);
            const Truth& t2 = s2(f);
            for (const auto& [a1, a2] : g.s.pairs()) {
                ASSERT_TRUE(!t1.objects.test(a1) || t2.objects.test(a2)) << print_formula(*f);
            }
            for (const auto& [x1, x2] : g.t.pairs()) {
                ASSERT_TRUE(!t2.attributes.test(x2) || t1.attributes.test(x1)) << print_formula(*f);
            }
        }
    }
}

TEST(Invariance, TranslationsPreservedAlongSimulations) {
    Rng rng(67);
    const auto formulas = enumerate_formulas({"p"}, 2);
    for (int round = 0; round < 15; ++round) {
        const LEModel m1 = random_model(rng, small);
        const LEModel m2 = random_model(rng, small);
        const LEModel n1(m1.polarity(), m1.r_box(), m1.r_dia(), {{"p", m1.value("p")}});
        const LEModel n2(m2.polarity(), m2.r_box(), m2.r_dia(), {{"p", m2.value("p")}});
        const SimPair g = greatest_simulation(n1, n2);
        for (const auto& f : formulas) {
            const FolFormula t = st_g(*f);
            const auto v1 = FolEvaluator(n1, t).eval_all(VarSort::g);
            const auto v2 = FolEvaluator(n2, t).eval_all(VarSort::g);
            for (const auto& [a1, a2] : g.s.pairs()) {
                ASSERT_TRUE(!v1[a1] || v2[a2]) << print_formula(*f);
            }
        }
    }
}

TEST(Oracle, ReflexiveOnSameModel) {
    Rng rng(68);
    for (int round = 0; round < 100; ++round) {
        const LEModel m = random_model(rng);
        const EquivReport r = modal_equiv_oracle(m, m);
        for (std::size_t a = 0; a < m.objects().size(); ++a) {
            EXPECT_TRUE(r.equiv_a.contains(a, a));
        }
        for (std::size_t x = 0; x < m.attributes().size(); ++x) {
            EXPECT_TRUE(r.equiv_x.contains(x, x));
        }
    }
}

TEST(Oracle, FigureOneSeparatedByDiamond) {
    const LEModel m1 = load_fixture("fig1_m1.json");
    const LEModel m2 = load_fixture("fig1_m2.json");
    const EquivReport r = modal_equiv_oracle(m1, m2);
    EXPECT_FALSE(r.forward_a.contains(m1.objects().index_of("a1"), 0));
    EXPECT_TRUE(hm_check(m1, m2).ok());
}

TEST(Oracle, MatchesEnumeration) {
    Rng rng(69);
    const auto formulas = enumerate_formulas({"p", "q"}, 3);
    for (int round = 0; round < 6; ++round) {
        const LEModel m1 = random_model(rng, small);
        const LEModel m2 = random_model(rng, small);
        const EquivReport r = modal_equiv_oracle(m1, m2);
        const EnumeratedEquiv e = enumerated_equivalence(m1, truth_table(m1, formulas), m2, truth_table(m2, formulas));
        EXPECT_EQ(r.forward_a, e.forward_a);
        EXPECT_EQ(r.backward_a, e.backward_a);
        EXPECT_EQ(r.forward_x, e.forward_x);
        EXPECT_EQ(r.backward_x, e.backward_x);
    }
}

TEST(Oracle, LatticeCap) {
    Caps caps;
    caps.lattice = 2;
    const LEModel m = load_fixture("fig1_m1.json");
    EXPECT_THROW(modal_equiv_oracle(m, m, caps), CapError);
}

TEST(HennessyMilner, RandomPairs) {
    Rng rng(70);
    for (int round = 0; round < 100; ++round) {
        const LEModel m1 = random_model(rng);
        const LEModel m2 = random_model(rng);
        const HmReport r = hm_check(m1, m2);
        ASSERT_TRUE(r.ok()) << r.discrepancies.front().relation << " " << r.discrepancies.front().detail;
        const EquivReport e = modal_equiv_oracle(m1, m2);
        const Bisimilarity b = bisimilar_points(m1, m2);
        EXPECT_EQ(b.objects, e.equiv_a);
        EXPECT_EQ(b.attributes, e.equiv_x);
    }
}

TEST(HennessyMilner, BisimulationPairsAreEquivalent) {
    Rng rng(71);
    for (int round = 0; round < 100; ++round) {
        const LEModel m1 = random_model(rng);
        const LEModel m2 = random_model(rng);
        const SimPair b = greatest_bisimulation(m1, m2);
        const EquivReport e = modal_equiv_oracle(m1, m2);
        for (const auto& [u, v] : b.s.pairs()) {
            EXPECT_TRUE(e.equiv_a.contains(u, v));
        }
        for (const auto& [u, v] : b.t.pairs()) {
            EXPECT_TRUE(e.equiv_x.contains(u, v));
        }
    }
}

TEST(KripkeLift, BisimulationsCorrespond) {
    Rng rng(72);
    for (int round = 0; round < 200; ++round) {
        const KripkeModel k1 = random_kripke(rng, 4, 2);
        const KripkeModel k2 = random_kripke(rng, 4, 2);
        const LEModel l1 = lift_kripke(k1);
        const LEModel l2 = lift_kripke(k2);
        const Relation z = random_relation(rng, k1.worlds().size(), k2.worlds().size(), 0.5);
        EXPECT_EQ(is_kripke_bisimulation(k1, k2, z), is_bisimulation(l1, l2, lifted_pair(z)).empty());
        const Relation g = greatest_kripke_bisimulation(k1, k2);
        EXPECT_TRUE(is_bisimulation(l1, l2, lifted_pair(g)).empty());
        const SimPair lg = greatest_bisimulation(l1, l2);
        EXPECT_EQ(lg.s, g);
        EXPECT_EQ(lg.t, g);
    }
}

// A Kripke simulation need not lift: clause 5 of the lifted pair is the back
// condition. One dead-end world simulated by one reflexive world.
TEST(KripkeLift, SimulationHalfFails) {
    ElementSet none(1);
    Relation loop(1, 1);
    loop.insert(0, 0);
    const KripkeModel k1(Carrier({"u"}), Relation(1, 1), {{"p", none}});
    const KripkeModel k2(Carrier({"v"}), loop, {{"p", none}});
    Relation z(1, 1);
    z.insert(0, 0);
    EXPECT_TRUE(is_kripke_simulation(k1, k2, z));
    const auto vs = is_simulation(lift_kripke(k1), lift_kripke(k2), lifted_pair(z));
    EXPECT_TRUE(has_clause(vs, 5));
}

TEST(Saturation, EmptySigmaAndBottom) {
    const LEModel m = load_fixture("fig1_m1.json");
    EXPECT_EQ(m_saturation_witness(m, {}, "a1", SaturationContext::incidence_attributes), "x1");
    EXPECT_EQ(m_saturation_witness(m, {fm::bot()}, "a1", SaturationContext::incidence_attributes), "x1");
    EXPECT_EQ(m_saturation_witness(m, {fm::var("q")}, "a1", SaturationContext::incidence_attributes), "x1");
    EXPECT_EQ(m_saturation_witness(m, {fm::top()}, "a1", SaturationContext::incidence_attributes), std::nullopt);
    // b1 I x1, so only y1 is available
    EXPECT_EQ(m_saturation_witness(m, {}, "b1", SaturationContext::incidence_attributes), "y1");
    EXPECT_EQ(m_saturation_witness(m, {fm::var("q")}, "b1", SaturationContext::incidence_attributes), std::nullopt);
    EXPECT_EQ(m_saturation_witness(m, {}, "x1", SaturationContext::incidence_objects), "a1");
    EXPECT_THROW(m_saturation_witness(m, {}, "x1", SaturationContext::incidence_attributes), ModelError);
}

TEST(Saturation, WitnessIsCorrect) {
    Rng rng(73);
    const auto formulas = enumerate_formulas({"p", "q"}, 1);
    const SaturationContext contexts[] = {SaturationContext::incidence_attributes, SaturationContext::incidence_objects,
                                          SaturationContext::box_attributes, SaturationContext::dia_objects};
    for (int round = 0; round < 200; ++round) {
        const LEModel m = random_model(rng);
        SatisfactionEvaluator sat(m);
        std::vector<Formula> sigma;
        std::uniform_int_distribution<std::size_t> pick(0, formulas.size() - 1);
        for (int i = 0; i < 3; ++i) {
            sigma.push_back(formulas[pick(rng)]);
        }
        for (const auto ctx : contexts) {
            const bool object_point = ctx == SaturationContext::incidence_attributes ||
                                      ctx == SaturationContext::box_attributes;
            const Carrier& points = object_point ? m.objects() : m.attributes();
            const Carrier& targets = object_point ? m.attributes() : m.objects();
            for (std::size_t u = 0; u < points.size(); ++u) {
                ElementSet candidates = targets.none();
                for (std::size_t v = 0; v < targets.size(); ++v) {
                    bool related = false;
                    switch (ctx) {
                    case SaturationContext::incidence_attributes:
                        related = m.incidence().contains(u, v);
                        break;
                    case SaturationContext::incidence_objects:
                        related = m.incidence().contains(v, u);
                        break;
                    case SaturationContext::box_attributes:
                        related = m.r_box().contains(u, v);
                        break;
                    case SaturationContext::dia_objects:
                        related = m.r_dia().contains(u, v);
                        break;
                    }
                    candidates[v] = !related;
                }
                for (const auto& f : sigma) {
                    candidates &= object_point ? sat(f).attributes : sat(f).objects;
                }
                const auto w = m_saturation_witness(m, sigma, points.name(u), ctx);
                if (candidates.none()) {
                    EXPECT_FALSE(w.has_value());
                } else {
                    ASSERT_TRUE(w.has_value());
                    EXPECT_EQ(*w, targets.name(candidates.find_first()));
                }
            }
        }
    }
}

// In the filter-ideal extension a satisfiable sigma at the attributes
// {J | F and J disjoint} is witnessed by the principal ideal of the join of
// the extensions of sigma.
TEST(Saturation, FilterIdealExtensionOfFigureOne) {
    const LEModel m = load_fixture("fig1_m2.json");
    const auto fi = filter_ideal_extension(m);
    const auto formulas = enumerate_formulas({"p", "q"}, 2);
    ExtensionEvaluator ext(m);
    Rng rng(74);
    std::uniform_int_distribution<std::size_t> pick(0, formulas.size() - 1);
    for (int round = 0; round < 300; ++round) {
        std::vector<Formula> sigma;
        for (int i = 0; i < 3; ++i) {
            sigma.push_back(formulas[pick(rng)]);
        }
        std::size_t j = fi.lattice.bottom();
        for (const auto& f : sigma) {
            j = fi.lattice.join(j, fi.lattice.index_of(ext(f)));
        }
        const std::size_t ideal = fi.ideal_index(principal_ideal(fi.lattice, j));
        for (std::size_t f = 0; f < fi.filters.size(); ++f) {
            const auto w = m_saturation_witness(fi.model, sigma, fi.model.objects().name(f),
                                                SaturationContext::incidence_attributes);
            const bool expected = !fi.model.incidence().contains(f, ideal);
            EXPECT_EQ(w.has_value(), expected);
        }
    }
}
