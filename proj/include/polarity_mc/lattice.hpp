#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polarity_mc/caps.hpp"
#include "polarity_mc/model.hpp"

namespace polarity_mc {

/// (A^up^down, A^up)
Concept top_concept(const Polarity& p);
/// (X^down, X^down^up)
Concept bottom_concept(const Polarity& p);
/// (extent(c) & extent(d), that set^up)
Concept meet(const Polarity& p, const Concept& c, const Concept& d);
/// ((intent(c) & intent(d))^down, intent(c) & intent(d))
Concept join(const Polarity& p, const Concept& c, const Concept& d);

/// (R_box^(0)[intent c], R_box^(0)[intent c]^up). Throws ModelError if c is
/// not a concept of the model's polarity.
Concept box_op(const LEModel& m, const Concept& c);
/// (R_dia^(0)[extent c]^down, R_dia^(0)[extent c]).
Concept dia_op(const LEModel& m, const Concept& c);

/// Set of concepts of a lattice, by concept index.
using ConceptSet = boost::dynamic_bitset<>;

/// All concepts of a finite polarity, ordered by extent size and then by
/// extent bits, so the bottom comes first and the top last.
class ConceptLattice {
public:
    ConceptLattice() = default;
    /// Throws CapError when |A| + |X| exceeds `caps.lattice`.
    explicit ConceptLattice(const Polarity& p, const Caps& caps = caps_from_env());

    std::size_t size() const { return concepts_.size(); }
    const std::vector<Concept>& concepts() const { return concepts_; }
    const Concept& at(std::size_t i) const { return concepts_.at(i); }

    std::optional<std::size_t> find(const Concept& c) const;
    /// Throws ModelError when c is not a concept of this lattice.
    std::size_t index_of(const Concept& c) const;

    std::size_t bottom() const { return 0; }
    std::size_t top() const { return concepts_.size() - 1; }
    bool leq(std::size_t i, std::size_t j) const { return up_[i].test(j); }
    /// Concepts above (resp. below) concept i, including i.
    const ConceptSet& up_set(std::size_t i) const { return up_[i]; }
    const ConceptSet& down_set(std::size_t i) const { return down_[i]; }

    std::size_t meet(std::size_t i, std::size_t j) const;
    std::size_t join(std::size_t i, std::size_t j) const;

    std::size_t object_concept(std::size_t a) const { return object_concepts_.at(a); }
    std::size_t attribute_concept(std::size_t x) const { return attribute_concepts_.at(x); }

    /// Pairs (i, j) with i < j and nothing strictly between.
    std::vector<std::pair<std::size_t, std::size_t>> covers() const;

    ConceptSet none() const { return ConceptSet(concepts_.size()); }

private:
    std::vector<Concept> concepts_;
    std::map<ElementSet, std::size_t> by_extent_;
    std::map<ElementSet, std::size_t> by_intent_;
    std::vector<ConceptSet> up_;
    std::vector<ConceptSet> down_;
    std::vector<std::size_t> object_concepts_;
    std::vector<std::size_t> attribute_concepts_;
};

inline ConceptLattice concept_lattice(const Polarity& p, const Caps& caps = caps_from_env()) {
    return ConceptLattice(p, caps);
}

bool is_filter(const ConceptLattice& l, const ConceptSet& members);
bool is_ideal(const ConceptLattice& l, const ConceptSet& members);

/// Every filter (resp. ideal), including the whole lattice, in ascending
/// order of the membership bitmask. Throws CapError when the lattice has more
/// than `caps.filters` concepts.
std::vector<ConceptSet> all_filters(const ConceptLattice& l, const Caps& caps = caps_from_env());
std::vector<ConceptSet> all_ideals(const ConceptLattice& l, const Caps& caps = caps_from_env());

ConceptSet principal_filter(const ConceptLattice& l, std::size_t c);
ConceptSet principal_ideal(const ConceptLattice& l, std::size_t c);

/// The extension model has filters F0, F1, ... as objects and ideals J0, J1,
/// ... as attributes, numbered as in `filters` and `ideals`.
struct FilterIdealExtension {
    ConceptLattice lattice;
    std::vector<ConceptSet> filters;
    std::vector<ConceptSet> ideals;
    LEModel model;

    std::size_t filter_index(const ConceptSet& f) const;
    std::size_t ideal_index(const ConceptSet& j) const;
};

/// Throws CapError when the concept lattice exceeds the filter cap.
FilterIdealExtension filter_ideal_extension(const LEModel& m, const Caps& caps = caps_from_env());

/// Hasse diagram in Graphviz DOT, one node per concept labelled with its
/// extent and intent.
std::string hasse_dot(const ConceptLattice& l, const Polarity& p);

}  // namespace polarity_mc
