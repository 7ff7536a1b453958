#include "polarity_mc/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace polarity_mc {

Concept top_concept(const Polarity& p) {
    return p.concept_from_extent(p.objects().all());
}

Concept bottom_concept(const Polarity& p) {
    return p.concept_from_intent(p.attributes().all());
}

Concept meet(const Polarity& p, const Concept& c, const Concept& d) {
    ElementSet extent = c.extent & d.extent;
    ElementSet intent = p.up(extent);
    return {std::move(extent), std::move(intent)};
}

Concept join(const Polarity& p, const Concept& c, const Concept& d) {
    ElementSet intent = c.intent & d.intent;
    ElementSet extent = p.down(intent);
    return {std::move(extent), std::move(intent)};
}

Concept box_op(const LEModel& m, const Concept& c) {
    if (!m.polarity().is_concept(c)) {
        throw ModelError("box operand is not a concept");
    }
    ElementSet extent = m.r_box().common_sources(c.intent);
    ElementSet intent = m.polarity().up(extent);
    return {std::move(extent), std::move(intent)};
}

Concept dia_op(const LEModel& m, const Concept& c) {
    if (!m.polarity().is_concept(c)) {
        throw ModelError("diamond operand is not a concept");
    }
    ElementSet intent = m.r_dia().common_sources(c.extent);
    ElementSet extent = m.polarity().down(intent);
    return {std::move(extent), std::move(intent)};
}

namespace {

bool extent_order(const ElementSet& lhs, const ElementSet& rhs) {
    const auto l = lhs.count();
    const auto r = rhs.count();
    if (l != r) {
        return l < r;
    }
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (lhs.test(i) != rhs.test(i)) {
            return rhs.test(i);
        }
    }
    return false;
}

}  // namespace

ConceptLattice::ConceptLattice(const Polarity& p, const Caps& caps) {
    const std::size_t na = p.objects().size();
    const std::size_t nx = p.attributes().size();
    if (na + nx > caps.lattice) {
        throw CapError("polarity has " + std::to_string(na + nx) + " elements, lattice cap is " +
                       std::to_string(caps.lattice));
    }
    // Every extent is an intersection of attribute extents x^down; the empty
    // intersection is A.
    std::vector<ElementSet> extents{p.objects().all()};
    std::map<ElementSet, bool> seen{{extents.front(), true}};
    for (std::size_t x = 0; x < nx; ++x) {
        const ElementSet& column = p.incidence().col(x);
        const std::size_t current = extents.size();
        for (std::size_t i = 0; i < current; ++i) {
            ElementSet candidate = extents[i] & column;
            if (seen.emplace(candidate, true).second) {
                extents.push_back(std::move(candidate));
            }
        }
    }
    std::sort(extents.begin(), extents.end(), extent_order);

    concepts_.reserve(extents.size());
    for (auto& extent : extents) {
        ElementSet intent = p.up(extent);
        by_extent_.emplace(extent, concepts_.size());
        by_intent_.emplace(intent, concepts_.size());
        concepts_.push_back({std::move(extent), std::move(intent)});
    }

    const std::size_t n = concepts_.size();
    up_.assign(n, ConceptSet(n));
    down_.assign(n, ConceptSet(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (concepts_[i].extent.is_subset_of(concepts_[j].extent)) {
                up_[i].set(j);
                down_[j].set(i);
            }
        }
    }
    for (std::size_t a = 0; a < na; ++a) {
        object_concepts_.push_back(index_of(p.object_concept(a)));
    }
    for (std::size_t x = 0; x < nx; ++x) {
        attribute_concepts_.push_back(index_of(p.attribute_concept(x)));
    }
}

std::optional<std::size_t> ConceptLattice::find(const Concept& c) const {
    auto it = by_extent_.find(c.extent);
    if (it == by_extent_.end() || concepts_[it->second].intent != c.intent) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t ConceptLattice::index_of(const Concept& c) const {
    if (auto i = find(c)) {
        return *i;
    }
    throw ModelError("pair is not a concept of the lattice");
}

std::size_t ConceptLattice::meet(std::size_t i, std::size_t j) const {
    return by_extent_.at(concepts_.at(i).extent & concepts_.at(j).extent);
}

std::size_t ConceptLattice::join(std::size_t i, std::size_t j) const {
    return by_intent_.at(concepts_.at(i).intent & concepts_.at(j).intent);
}

std::vector<std::pair<std::size_t, std::size_t>> ConceptLattice::covers() const {
    std::vector<std::pair<std::size_t, std::size_t>> result;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) {
            if (i == j || !leq(i, j)) {
                continue;
            }
            ConceptSet between = up_[i] & down_[j];
            if (between.count() == 2) {
                result.emplace_back(i, j);
            }
        }
    }
    return result;
}

bool is_filter(const ConceptLattice& l, const ConceptSet& members) {
    if (members.size() != l.size() || members.none()) {
        return false;
    }
    for (auto i = members.find_first(); i != ConceptSet::npos; i = members.find_next(i)) {
        if (!l.up_set(i).is_subset_of(members)) {
            return false;
        }
        for (auto j = members.find_next(i); j != ConceptSet::npos; j = members.find_next(j)) {
            if (!members.test(l.meet(i, j))) {
                return false;
            }
        }
    }
    return true;
}

bool is_ideal(const ConceptLattice& l, const ConceptSet& members) {
    if (members.size() != l.size() || members.none()) {
        return false;
    }
    for (auto i = members.find_first(); i != ConceptSet::npos; i = members.find_next(i)) {
        if (!l.down_set(i).is_subset_of(members)) {
            return false;
        }
        for (auto j = members.find_next(i); j != ConceptSet::npos; j = members.find_next(j)) {
            if (!members.test(l.join(i, j))) {
                return false;
            }
        }
    }
    return true;
}

namespace {

template <typename Law>
std::vector<ConceptSet> enumerate_subsets(const ConceptLattice& l, const Caps& caps, Law law) {
    if (l.size() > caps.filters) {
        throw CapError("lattice has " + std::to_string(l.size()) + " concepts, filter cap is " +
                       std::to_string(caps.filters));
    }
    std::vector<ConceptSet> result;
    const unsigned long limit = 1UL << l.size();
    for (unsigned long mask = 1; mask < limit; ++mask) {
        ConceptSet members(l.size(), mask);
        if (law(l, members)) {
            result.push_back(std::move(members));
        }
    }
    return result;
}

}  // namespace

std::vector<ConceptSet> all_filters(const ConceptLattice& l, const Caps& caps) {
    return enumerate_subsets(l, caps, is_filter);
}

std::vector<ConceptSet> all_ideals(const ConceptLattice& l, const Caps& caps) {
    return enumerate_subsets(l, caps, is_ideal);
}

ConceptSet principal_filter(const ConceptLattice& l, std::size_t c) {
    if (c >= l.size()) {
        throw ModelError("concept index out of range");
    }
    return l.up_set(c);
}

ConceptSet principal_ideal(const ConceptLattice& l, std::size_t c) {
    if (c >= l.size()) {
        throw ModelError("concept index out of range");
    }
    return l.down_set(c);
}

std::size_t FilterIdealExtension::filter_index(const ConceptSet& f) const {
    auto it = std::find(filters.begin(), filters.end(), f);
    if (it == filters.end()) {
        throw ModelError("not a filter of the lattice");
    }
    return static_cast<std::size_t>(it - filters.begin());
}

std::size_t FilterIdealExtension::ideal_index(const ConceptSet& j) const {
    auto it = std::find(ideals.begin(), ideals.end(), j);
    if (it == ideals.end()) {
        throw ModelError("not an ideal of the lattice");
    }
    return static_cast<std::size_t>(it - ideals.begin());
}

FilterIdealExtension filter_ideal_extension(const LEModel& m, const Caps& caps) {
    FilterIdealExtension ext;
    ext.lattice = ConceptLattice(m.polarity(), caps);
    ext.filters = all_filters(ext.lattice, caps);
    ext.ideals = all_ideals(ext.lattice, caps);
    const auto& l = ext.lattice;

    std::vector<std::size_t> box_of(l.size());
    std::vector<std::size_t> dia_of(l.size());
    for (std::size_t c = 0; c < l.size(); ++c) {
        box_of[c] = l.index_of(box_op(m, l.at(c)));
        dia_of[c] = l.index_of(dia_op(m, l.at(c)));
    }

    const std::size_t nf = ext.filters.size();
    const std::size_t nj = ext.ideals.size();
    Relation incidence(nf, nj);
    Relation r_box(nf, nj);
    Relation r_dia(nj, nf);
    for (std::size_t f = 0; f < nf; ++f) {
        const ConceptSet& filter = ext.filters[f];
        for (std::size_t j = 0; j < nj; ++j) {
            const ConceptSet& ideal = ext.ideals[j];
            if (filter.intersects(ideal)) {
                incidence.insert(f, j);
            }
            for (auto c = ideal.find_first(); c != ConceptSet::npos; c = ideal.find_next(c)) {
                if (filter.test(box_of[c])) {
                    r_box.insert(f, j);
                    break;
                }
            }
            for (auto c = filter.find_first(); c != ConceptSet::npos; c = filter.find_next(c)) {
                if (ideal.test(dia_of[c])) {
                    r_dia.insert(j, f);
                    break;
                }
            }
        }
    }

    std::vector<std::string> filter_names;
    std::vector<std::string> ideal_names;
    for (std::size_t f = 0; f < nf; ++f) {
        filter_names.push_back("F" + std::to_string(f));
    }
    for (std::size_t j = 0; j < nj; ++j) {
        ideal_names.push_back("J" + std::to_string(j));
    }

    Valuation valuation;
    for (const auto& [name, value] : m.valuation()) {
        const std::size_t c = l.index_of(value);
        ElementSet extent(nf);
        ElementSet intent(nj);
        for (std::size_t f = 0; f < nf; ++f) {
            extent[f] = ext.filters[f].test(c);
        }
        for (std::size_t j = 0; j < nj; ++j) {
            intent[j] = ext.ideals[j].test(c);
        }
        valuation.emplace(name, Concept{std::move(extent), std::move(intent)});
    }

    Polarity polarity(Carrier(std::move(filter_names)), Carrier(std::move(ideal_names)), std::move(incidence));
    ext.model = LEModel(std::move(polarity), std::move(r_box), std::move(r_dia), std::move(valuation));
    return ext;
}

namespace {

std::string brace(const std::vector<std::string>& names) {
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i) {
        out += (i ? "," : "") + names[i];
    }
    return out + "}";
}

}  // namespace

std::string hasse_dot(const ConceptLattice& l, const Polarity& p) {
    std::ostringstream out;
    out << "digraph concepts {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < l.size(); ++i) {
        out << "  c" << i << " [label=\"" << brace(p.objects().names_of(l.at(i).extent)) << "\\n"
            << brace(p.attributes().names_of(l.at(i).intent)) << "\"];\n";
    }
    for (const auto& [lower, upper] : l.covers()) {
        out << "  c" << lower << " -> c" << upper << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace polarity_mc
