#include <gtest/gtest.h>

#include "polarity_mc/model_io.hpp"
#include "polarity_mc/simrel.hpp"
#include "support/brute_force.hpp"
#include "support/generators.hpp"
#include "support/kripke_oracle.hpp"

using namespace polarity_mc;
using namespace polarity_mc::testing;

namespace {

std::vector<std::string> names_where(const KripkeModel& k, const ElementSet& set) {
    return k.worlds().names_of(set);
}

Relation pairs_of(std::size_t n1, std::size_t n2, std::initializer_list<std::pair<std::size_t, std::size_t>> list) {
    Relation r(n1, n2);
    for (const auto& [u, v] : list) r.insert(u, v);
    return r;
}

}  // namespace

TEST(KripkeOracle, TruthOnHandExample) {
    const KripkeModel k = load_kripke(fixture("kripke_a.json"));
    // u -> v, u -> w, v -> v; p at v, q at u and w
    using V = std::vector<std::string>;
    EXPECT_EQ(names_where(k, kripke_truth(k, *parse_formula("box p"))), (V{"v", "w"}));
    EXPECT_EQ(names_where(k, kripke_truth(k, *parse_formula("dia q"))), (V{"u"}));
    EXPECT_EQ(names_where(k, kripke_truth(k, *parse_formula("dia top"))), (V{"u", "v"}));
    EXPECT_EQ(names_where(k, kripke_truth(k, *parse_formula("box bot"))), (V{"w"}));
    EXPECT_EQ(names_where(k, kripke_truth(k, *parse_formula("p | q"))), (V{"u", "v", "w"}));
    EXPECT_EQ(names_where(k, kripke_truth(k, *parse_formula("p & q"))), V{});
}

TEST(KripkeOracle, BisimulationChecks) {
    const KripkeModel a = load_kripke(fixture("kripke_a.json"));
    const KripkeModel b = load_kripke(fixture("kripke_b.json"));
    // v and t are reflexive p-worlds
    EXPECT_TRUE(is_kripke_bisimulation(a, b, pairs_of(3, 2, {{1, 1}})));
    EXPECT_TRUE(is_kripke_simulation(a, b, pairs_of(3, 2, {{1, 1}})));
    // u has a dead-end successor, s does not
    EXPECT_FALSE(is_kripke_bisimulation(a, b, pairs_of(3, 2, {{0, 0}, {1, 1}})));
    EXPECT_FALSE(is_kripke_bisimulation(a, b, pairs_of(3, 2, {{1, 0}})));
    EXPECT_TRUE(is_kripke_bisimulation(a, b, Relation(3, 2)));
    EXPECT_EQ(greatest_kripke_bisimulation(a, b), pairs_of(3, 2, {{1, 1}}));
    EXPECT_EQ(greatest_kripke_bisimulation(a, a), pairs_of(3, 3, {{0, 0}, {1, 1}, {2, 2}}));
}

TEST(KripkeOracle, SimulationIsWeakerThanBisimulation) {
    // w0 -> w1 simulated by a world that also sees a second p-free world
    const KripkeModel small(Carrier({"w0", "w1"}), pairs_of(2, 2, {{0, 1}}), {});
    const KripkeModel big(Carrier({"v0", "v1", "v2"}), pairs_of(3, 3, {{0, 1}, {0, 2}, {2, 2}}), {});
    const Relation z = pairs_of(2, 3, {{0, 0}, {1, 1}});
    EXPECT_TRUE(is_kripke_simulation(small, big, z));
    EXPECT_FALSE(is_kripke_bisimulation(small, big, z));
}

TEST(NaiveFormulaCount, SmallValues) {
    EXPECT_EQ(naive_formula_count(0, 0), 2U);
    EXPECT_EQ(naive_formula_count(1, 0), 3U);
    // 3 atoms, 6 modal, 3 + 3 binary
    EXPECT_EQ(naive_formula_count(1, 1), 15U);
    EXPECT_EQ(naive_formula_count(2, 1), 24U);
}

TEST(BruteForceConcepts, FigureOne) {
    EXPECT_EQ(brute_force_concepts(load_fixture("fig1_m1.json").polarity()).size(), 3U);
    EXPECT_EQ(brute_force_concepts(load_fixture("fig1_m2.json").polarity()).size(), 2U);
    EXPECT_EQ(brute_force_concepts(load_fixture("chain3.json").polarity()).size(), 3U);
}

TEST(NaiveSimulation, FigureOne) {
    const LEModel m1 = load_fixture("fig1_m1.json");
    const LEModel m2 = load_fixture("fig1_m2.json");
    EXPECT_TRUE(naive_is_simulation(m1, m2, empty_pair(m1, m2)));
    EXPECT_FALSE(naive_is_simulation(m1, m2, full_pair(m1, m2)));
    EXPECT_TRUE(naive_is_simulation(m2, m2, identity_pair(m2)));
    EXPECT_TRUE(naive_is_simulation(m1, m1, identity_pair(m1)));
}

TEST(BruteForceUnion, SingletonModel) {
    const LEModel m2 = load_fixture("fig1_m2.json");
    EXPECT_EQ(brute_force_simulation_union(m2, m2), identity_pair(m2));
    EXPECT_EQ(brute_force_bisimulation_union(m2, m2), identity_pair(m2));
}

TEST(BruteForceUnion, RefusesLargeSearches) {
    Rng rng(5);
    const LEModel big = random_model(rng, {5, 5, 5, 5});
    EXPECT_THROW(brute_force_simulation_union(big, big), std::invalid_argument);
}

TEST(TruthTable, FigureOne) {
    const LEModel m1 = load_fixture("fig1_m1.json");
    const TruthTable t = truth_table(m1, {parse_formula("p"), parse_formula("q"), parse_formula("bot")});
    ASSERT_EQ(t.objects.size(), 3U);
    EXPECT_EQ(t.objects[0], 0b11U);
    EXPECT_EQ(t.objects[1], 0b10U);
    EXPECT_EQ(t.objects[2], 0U);
    // x >- phi iff x is in the intent
    EXPECT_EQ(t.attributes[0], 0U);
    EXPECT_EQ(t.attributes[1], 0b01U);
    EXPECT_EQ(t.attributes[2], 0b11U);
}

TEST(EnumeratedEquivalence, IdentityOnSameModel) {
    Rng rng(17);
    const LEModel m = random_model(rng, {2, 3, 2, 3});
    const auto formulas = enumerate_formulas(m.variables(), 2);
    const TruthTable t = truth_table(m, formulas);
    const EnumeratedEquiv e = enumerated_equivalence(m, t, m, t);
    for (std::size_t a = 0; a < m.objects().size(); ++a) EXPECT_TRUE(e.forward_a.contains(a, a));
    for (std::size_t x = 0; x < m.attributes().size(); ++x) EXPECT_TRUE(e.backward_x.contains(x, x));
}

TEST(Generators, RandomModelsAreValid) {
    Rng rng(3);
    for (int round = 0; round < 200; ++round) {
        const LEModel m = random_model(rng);
        EXPECT_TRUE(validate_model(m).ok());
        EXPECT_GE(m.objects().size(), 1U);
        EXPECT_LE(m.attributes().size(), 4U);
    }
}

TEST(Generators, SeedsAreReproducible) {
    Rng a(42);
    Rng b(42);
    EXPECT_EQ(model_to_json(random_model(a)), model_to_json(random_model(b)));
    EXPECT_EQ(print_formula(*random_formula(a, {"p", "q"}, 4)), print_formula(*random_formula(b, {"p", "q"}, 4)));
}
