#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace polarity_mc {

/// Subset of a carrier, indexed by declaration order.
using ElementSet = boost::dynamic_bitset<>;

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Sort { object, attribute };

const char* to_string(Sort sort);

/// Finite, ordered set of identifiers of one sort. Declaration order fixes
/// the bit index of each element and every iteration order downstream.
class Carrier {
public:
    Carrier() = default;
    explicit Carrier(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    bool empty() const { return names_.empty(); }
    const std::string& name(std::size_t index) const { return names_.at(index); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws ModelError naming the unknown identifier.
    std::size_t index_of(std::string_view name) const;

    ElementSet none() const { return ElementSet(names_.size()); }
    ElementSet all() const { return ~ElementSet(names_.size()); }
    ElementSet subset(std::span<const std::string> names) const;
    std::vector<std::string> names_of(const ElementSet& set) const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Binary relation between two index ranges, stored as adjacency sets in both
/// directions so that universal preimages cost one intersection per argument.
class Relation {
public:
    Relation() = default;
    Relation(std::size_t sources, std::size_t targets);

    std::size_t source_count() const { return rows_.size(); }
    std::size_t target_count() const { return cols_.size(); }

    bool contains(std::size_t source, std::size_t target) const { return rows_[source].test(target); }
    void insert(std::size_t source, std::size_t target);
    void erase(std::size_t source, std::size_t target);

    /// Targets related to `source`.
    const ElementSet& row(std::size_t source) const { return rows_[source]; }
    /// Sources related to `target`.
    const ElementSet& col(std::size_t target) const { return cols_[target]; }

    /// R^(0)[targets] = {u | for all v in targets: u R v}.
    ElementSet common_sources(const ElementSet& targets) const;
    /// R^(1)[sources] = {v | for all u in sources: u R v}.
    ElementSet common_targets(const ElementSet& sources) const;

    Relation transposed() const;
    Relation intersected(const Relation& other) const;
    std::size_t pair_count() const;
    std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

    friend bool operator==(const Relation& lhs, const Relation& rhs) { return lhs.rows_ == rhs.rows_; }

private:
    std::vector<ElementSet> rows_;
    std::vector<ElementSet> cols_;
};

/// Galois-stable pair; identity is determined by the extent.
struct Concept {
    ElementSet extent;
    ElementSet intent;

    bool operator==(const Concept& other) const { return extent == other.extent && intent == other.intent; }
};

/// c <= d iff extent(c) is contained in extent(d).
bool leq(const Concept& lhs, const Concept& rhs);

/// Formal context (A, X, I). Object and attribute names must be disjoint.
class Polarity {
public:
    Polarity() = default;
    Polarity(Carrier objects, Carrier attributes, Relation incidence);

    const Carrier& objects() const { return objects_; }
    const Carrier& attributes() const { return attributes_; }
    const Relation& incidence() const { return incidence_; }

    /// B^up: attributes shared by every object of B.
    ElementSet up(const ElementSet& objects) const;
    /// Y^down: objects having every attribute of Y.
    ElementSet down(const ElementSet& attributes) const;

    ElementSet close_objects(const ElementSet& objects) const { return down(up(objects)); }
    ElementSet close_attributes(const ElementSet& attributes) const { return up(down(attributes)); }
    bool is_extent(const ElementSet& objects) const { return close_objects(objects) == objects; }
    bool is_intent(const ElementSet& attributes) const { return close_attributes(attributes) == attributes; }
    bool is_concept(const Concept& c) const;

    /// (B^up^down, B^up)
    Concept concept_from_extent(const ElementSet& objects) const;
    /// (Y^down, Y^down^up)
    Concept concept_from_intent(const ElementSet& attributes) const;

    Concept object_concept(std::size_t a) const;
    Concept attribute_concept(std::size_t x) const;

    /// Element of either sort by name.
    std::optional<std::pair<Sort, std::size_t>> locate(std::string_view name) const;

private:
    Carrier objects_;
    Carrier attributes_;
    Relation incidence_;
};

ElementSet galois_up(const Polarity& p, const ElementSet& objects);
ElementSet galois_down(const Polarity& p, const ElementSet& attributes);

/// Propositional variable name -> concept.
using Valuation = std::map<std::string, Concept>;

/// Polarity plus R_box (A x X), R_dia (X x A) and a concept-valued valuation.
/// Construction only checks shapes; I-compatibility and concept-hood are
/// reported by validate_model.
class LEModel {
public:
    LEModel() = default;
    LEModel(Polarity polarity, Relation r_box, Relation r_dia, Valuation valuation);

    const Polarity& polarity() const { return polarity_; }
    const Carrier& objects() const { return polarity_.objects(); }
    const Carrier& attributes() const { return polarity_.attributes(); }
    const Relation& incidence() const { return polarity_.incidence(); }
    const Relation& r_box() const { return r_box_; }
    const Relation& r_dia() const { return r_dia_; }
    const Valuation& valuation() const { return valuation_; }

    /// Throws ModelError for an unknown variable.
    const Concept& value(std::string_view variable) const;
    std::vector<std::string> variables() const;

private:
    Polarity polarity_;
    Relation r_box_;
    Relation r_dia_;
    Valuation valuation_;
};

enum class RelationKind { incidence, box, dia };
enum class PreimageKind { universal_sources, universal_targets };

/// Universal preimage of one of the model's relations: kind (0) maps target
/// sets to sources, kind (1) maps source sets to targets. R_box relates A to X,
/// R_dia relates X to A. Throws ModelError when `argument` has the wrong sort.
ElementSet rel_preimage(const LEModel& m, RelationKind relation, PreimageKind kind, const ElementSet& argument);

struct Violation {
    enum class Kind {
        box_sources_unstable,   // R_box^(0)[x] not an extent
        box_targets_unstable,   // R_box^(1)[a] not an intent
        dia_sources_unstable,   // R_dia^(0)[a] not an intent
        dia_targets_unstable,   // R_dia^(1)[x] not an extent
        valuation_not_concept,
    };
    Kind kind;
    std::string element;  // point or variable the check was made at
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_model(const LEModel& m);

/// Smallest supersets of the given relations that are I-compatible. Only adds
/// pairs; iterates closure of rows and columns to a fixpoint.
Relation make_box_compatible(const Polarity& p, Relation r_box);
Relation make_dia_compatible(const Polarity& p, Relation r_dia);

class KripkeModel {
public:
    KripkeModel() = default;
    KripkeModel(Carrier worlds, Relation accessibility, std::map<std::string, ElementSet> valuation);

    const Carrier& worlds() const { return worlds_; }
    const Relation& accessibility() const { return accessibility_; }
    const std::map<std::string, ElementSet>& valuation() const { return valuation_; }

private:
    Carrier worlds_;
    Relation accessibility_;
    std::map<std::string, ElementSet> valuation_;
};

/// LE(k): objects w_A and attributes w_X for each world w, I is inequality,
/// R_box and R_dia are the complement of accessibility, and p denotes
/// (V(p), complement of V(p)). Bit indices of both sorts coincide with the
/// world indices.
LEModel lift_kripke(const KripkeModel& k);

}  // namespace polarity_mc
