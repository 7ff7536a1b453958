#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polarity_mc/caps.hpp"
#include "polarity_mc/formula.hpp"
#include "polarity_mc/model.hpp"

namespace polarity_mc {

/// S relates objects of the left model to objects of the right model, T
/// relates attributes of the left model to attributes of the right model.
struct SimPair {
    Relation s;
    Relation t;

    friend bool operator==(const SimPair&, const SimPair&) = default;
};

SimPair empty_pair(const LEModel& m1, const LEModel& m2);
SimPair full_pair(const LEModel& m1, const LEModel& m2);
SimPair identity_pair(const LEModel& m);

/// One failed instance of a simulation clause. Clauses 1, 3 and 5 fail at a
/// pair of S, clauses 2, 4 and 6 at a pair of T. `converse` marks failures of
/// (S^-1, T^-1) as a simulation from the right model to the left one; the
/// pair is then still reported in the original orientation.
struct SimViolation {
    int clause;
    bool converse;
    std::size_t left;   // index in the left model
    std::size_t right;  // index in the right model
    std::string witness;
};

/// Throws ModelError when the relation shapes do not match the models or the
/// models interpret different variables.
std::vector<SimViolation> is_simulation(const LEModel& m1, const LEModel& m2, const SimPair& z);
std::vector<SimViolation> is_bisimulation(const LEModel& m1, const LEModel& m2, const SimPair& z);

struct RefinementTrace {
    SimPair result;
    /// |S| + |T| before the first round and after every round.
    std::vector<std::size_t> sizes;
};

/// Starts from the pairs allowed by clauses 1 and 2 and deletes every pair
/// violating clauses 3-6 in the same round until nothing changes.
RefinementTrace refine_simulation(const LEModel& m1, const LEModel& m2);
/// Same scheme with the converse clauses added.
RefinementTrace refine_bisimulation(const LEModel& m1, const LEModel& m2);

SimPair greatest_simulation(const LEModel& m1, const LEModel& m2);
SimPair greatest_bisimulation(const LEModel& m1, const LEModel& m2);

/// Modal transfer relations between two models:
///   forward_a  (A1 x A2): a1 |- phi implies a2 |- phi
///   backward_a (A2 x A1): a2 |- phi implies a1 |- phi
///   forward_x  (X1 x X2): x1 >- phi implies x2 >- phi
///   backward_x (X2 x X1): x2 >- phi implies x1 >- phi
/// equiv_a = forward_a & backward_a^-1, equiv_x = forward_x & backward_x^-1.
struct EquivReport {
    Relation forward_a;
    Relation backward_a;
    Relation forward_x;
    Relation backward_x;
    Relation equiv_a;
    Relation equiv_x;
    /// Number of (extension in m1, extension in m2) pairs reached.
    std::size_t closure_pairs = 0;
    /// Rounds of the closure; every pair is the value of a formula whose
    /// nesting depth is at most this number.
    std::size_t closure_depth = 0;
};

/// Closes {(V1(p), V2(p))} together with the top and bottom pairs under the
/// componentwise operations and reads the transfer relations off the result.
/// Throws CapError when either polarity exceeds the lattice cap.
EquivReport modal_equiv_oracle(const LEModel& m1, const LEModel& m2, const Caps& caps = caps_from_env());

struct HmDiscrepancy {
    std::string relation;
    std::string left;
    std::string right;
    std::string detail;
};

struct HmReport {
    std::vector<HmDiscrepancy> discrepancies;
    bool ok() const { return discrepancies.empty(); }
};

/// Compares the oracle with the greatest simulations in both directions:
///
///   a1 ~>A a2   iff  (a1, a2) in S of greatest_simulation(m1, m2)
///   a2 ~>A a1   iff  (a2, a1) in S of greatest_simulation(m2, m1)
///   x1 ~>X x2   iff  (x2, x1) in T of greatest_simulation(m2, m1)
///   x2 ~>X x1   iff  (x1, x2) in T of greatest_simulation(m1, m2)
///
/// The attribute rows flip direction: simulations reflect >-.
HmReport hm_check(const LEModel& m1, const LEModel& m2, const Caps& caps = caps_from_env());

struct Bisimilarity {
    Relation objects;     // A1 x A2
    Relation attributes;  // X1 x X2
};

/// Points related by some simulation in each direction, the two simulations
/// chosen independently.
Bisimilarity bisimilar_points(const LEModel& m1, const LEModel& m2);

/// Which complement image a saturation clause ranges over.
enum class SaturationContext {
    incidence_attributes,  // {x' | not a I x'}, point is an object
    incidence_objects,     // {a' | not a' I x}, point is an attribute
    box_attributes,        // {x' | not a R_box x'}, point is an object
    dia_objects,           // {a' | not x R_dia a'}, point is an attribute
};

/// First element, in declaration order, of the selected set that satisfies
/// every formula of `sigma` (>- for attributes, |- for objects). A finite
/// sigma is finitely satisfiable exactly when it is satisfiable, so nothing
/// is returned only when no such element exists.
std::optional<std::string> m_saturation_witness(const LEModel& m, const std::vector<Formula>& sigma,
                                                std::string_view point, SaturationContext context);

}  // namespace polarity_mc
