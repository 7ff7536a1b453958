#include "polarity_mc/model.hpp"

#include <algorithm>

namespace polarity_mc {

const char* to_string(Sort sort) {
    return sort == Sort::object ? "object" : "attribute";
}

Carrier::Carrier(std::vector<std::string> names) : names_(std::move(names)) {
    index_.reserve(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) {
            throw ModelError("empty element identifier");
        }
        if (!index_.emplace(names_[i], i).second) {
            throw ModelError("duplicate element identifier '" + names_[i] + "'");
        }
    }
}

std::optional<std::size_t> Carrier::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t Carrier::index_of(std::string_view name) const {
    if (auto index = find(name)) {
        return *index;
    }
    throw ModelError("unknown element '" + std::string(name) + "'");
}

ElementSet Carrier::subset(std::span<const std::string> names) const {
    ElementSet result = none();
    for (const auto& name : names) {
        result.set(index_of(name));
    }
    return result;
}

std::vector<std::string> Carrier::names_of(const ElementSet& set) const {
    std::vector<std::string> result;
    for (auto i = set.find_first(); i != ElementSet::npos; i = set.find_next(i)) {
        result.push_back(names_.at(i));
    }
    return result;
}

Relation::Relation(std::size_t sources, std::size_t targets)
    : rows_(sources, ElementSet(targets)), cols_(targets, ElementSet(sources)) {}

void Relation::insert(std::size_t source, std::size_t target) {
    rows_.at(source).set(target);
    cols_.at(target).set(source);
}

void Relation::erase(std::size_t source, std::size_t target) {
    rows_.at(source).reset(target);
    cols_.at(target).reset(source);
}

ElementSet Relation::common_sources(const ElementSet& targets) const {
    ElementSet result = ~ElementSet(rows_.size());
    for (auto v = targets.find_first(); v != ElementSet::npos; v = targets.find_next(v)) {
        result &= cols_[v];
    }
    return result;
}

ElementSet Relation::common_targets(const ElementSet& sources) const {
    ElementSet result = ~ElementSet(cols_.size());
    for (auto u = sources.find_first(); u != ElementSet::npos; u = sources.find_next(u)) {
        result &= rows_[u];
    }
    return result;
}

Relation Relation::transposed() const {
    Relation result;
    result.rows_ = cols_;
    result.cols_ = rows_;
    return result;
}

Relation Relation::intersected(const Relation& other) const {
    if (source_count() != other.source_count() || target_count() != other.target_count()) {
        throw ModelError("relation shapes differ");
    }
    Relation result(source_count(), target_count());
    for (std::size_t u = 0; u < rows_.size(); ++u) {
        result.rows_[u] = rows_[u] & other.rows_[u];
    }
    for (std::size_t v = 0; v < cols_.size(); ++v) {
        result.cols_[v] = cols_[v] & other.cols_[v];
    }
    return result;
}

std::size_t Relation::pair_count() const {
    std::size_t count = 0;
    for (const auto& row : rows_) {
        count += row.count();
    }
    return count;
}

std::vector<std::pair<std::size_t, std::size_t>> Relation::pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> result;
    for (std::size_t u = 0; u < rows_.size(); ++u) {
        for (auto v = rows_[u].find_first(); v != ElementSet::npos; v = rows_[u].find_next(v)) {
            result.emplace_back(u, v);
        }
    }
    return result;
}

bool leq(const Concept& lhs, const Concept& rhs) {
    return lhs.extent.is_subset_of(rhs.extent);
}

Polarity::Polarity(Carrier objects, Carrier attributes, Relation incidence)
    : objects_(std::move(objects)), attributes_(std::move(attributes)), incidence_(std::move(incidence)) {
    if (incidence_.source_count() != objects_.size() || incidence_.target_count() != attributes_.size()) {
        throw ModelError("incidence relation does not match the carriers");
    }
    for (const auto& name : objects_.names()) {
        if (attributes_.find(name)) {
            throw ModelError("identifier '" + name + "' is declared both as object and attribute");
        }
    }
}

ElementSet Polarity::up(const ElementSet& objects) const {
    if (objects.size() != objects_.size()) {
        throw ModelError("object set has the wrong size");
    }
    return incidence_.common_targets(objects);
}

ElementSet Polarity::down(const ElementSet& attributes) const {
    if (attributes.size() != attributes_.size()) {
        throw ModelError("attribute set has the wrong size");
    }
    return incidence_.common_sources(attributes);
}

bool Polarity::is_concept(const Concept& c) const {
    return c.extent.size() == objects_.size() && c.intent.size() == attributes_.size() &&
           up(c.extent) == c.intent && down(c.intent) == c.extent;
}

Concept Polarity::concept_from_extent(const ElementSet& objects) const {
    ElementSet intent = up(objects);
    ElementSet extent = down(intent);
    return {std::move(extent), std::move(intent)};
}

Concept Polarity::concept_from_intent(const ElementSet& attributes) const {
    ElementSet extent = down(attributes);
    ElementSet intent = up(extent);
    return {std::move(extent), std::move(intent)};
}

Concept Polarity::object_concept(std::size_t a) const {
    ElementSet single = objects_.none();
    single.set(a);
    return concept_from_extent(single);
}

Concept Polarity::attribute_concept(std::size_t x) const {
    ElementSet single = attributes_.none();
    single.set(x);
    return concept_from_intent(single);
}

std::optional<std::pair<Sort, std::size_t>> Polarity::locate(std::string_view name) const {
    if (auto a = objects_.find(name)) {
        return std::pair{Sort::object, *a};
    }
    if (auto x = attributes_.find(name)) {
        return std::pair{Sort::attribute, *x};
    }
    return std::nullopt;
}

ElementSet galois_up(const Polarity& p, const ElementSet& objects) {
    return p.up(objects);
}

ElementSet galois_down(const Polarity& p, const ElementSet& attributes) {
    return p.down(attributes);
}

LEModel::LEModel(Polarity polarity, Relation r_box, Relation r_dia, Valuation valuation)
    : polarity_(std::move(polarity)), r_box_(std::move(r_box)), r_dia_(std::move(r_dia)),
      valuation_(std::move(valuation)) {
    const auto na = polarity_.objects().size();
    const auto nx = polarity_.attributes().size();
    if (r_box_.source_count() != na || r_box_.target_count() != nx) {
        throw ModelError("R_box must relate objects to attributes");
    }
    if (r_dia_.source_count() != nx || r_dia_.target_count() != na) {
        throw ModelError("R_dia must relate attributes to objects");
    }
    for (const auto& [name, value] : valuation_) {
        if (value.extent.size() != na || value.intent.size() != nx) {
            throw ModelError("valuation of '" + name + "' does not match the carriers");
        }
    }
}

const Concept& LEModel::value(std::string_view variable) const {
    auto it = valuation_.find(std::string(variable));
    if (it == valuation_.end()) {
        throw ModelError("unknown variable '" + std::string(variable) + "'");
    }
    return it->second;
}

std::vector<std::string> LEModel::variables() const {
    std::vector<std::string> result;
    result.reserve(valuation_.size());
    for (const auto& entry : valuation_) {
        result.push_back(entry.first);
    }
    return result;
}

ElementSet rel_preimage(const LEModel& m, RelationKind relation, PreimageKind kind, const ElementSet& argument) {
    const Relation* rel = nullptr;
    Sort source_sort = Sort::object;
    Sort target_sort = Sort::attribute;
    switch (relation) {
    case RelationKind::incidence:
        rel = &m.incidence();
        break;
    case RelationKind::box:
        rel = &m.r_box();
        break;
    case RelationKind::dia:
        rel = &m.r_dia();
        std::swap(source_sort, target_sort);
        break;
    }
    const bool to_sources = kind == PreimageKind::universal_sources;
    const Sort expected = to_sources ? target_sort : source_sort;
    const std::size_t expected_size = to_sources ? rel->target_count() : rel->source_count();
    if (argument.size() != expected_size) {
        throw ModelError(std::string("preimage argument must be a set of ") + to_string(expected) + "s");
    }
    return to_sources ? rel->common_sources(argument) : rel->common_targets(argument);
}

namespace {

ElementSet singleton(std::size_t size, std::size_t index) {
    ElementSet s(size);
    s.set(index);
    return s;
}

}  // namespace

ValidationReport validate_model(const LEModel& m) {
    ValidationReport report;
    const auto& p = m.polarity();
    const auto& objects = p.objects();
    const auto& attributes = p.attributes();

    for (std::size_t x = 0; x < attributes.size(); ++x) {
        const ElementSet sources = m.r_box().common_sources(singleton(attributes.size(), x));
        if (!p.is_extent(sources)) {
            report.violations.push_back({Violation::Kind::box_sources_unstable, attributes.name(x),
                                         "R_box^(0)[" + attributes.name(x) + "] is not Galois-stable"});
        }
    }
    for (std::size_t a = 0; a < objects.size(); ++a) {
        const ElementSet targets = m.r_box().common_targets(singleton(objects.size(), a));
        if (!p.is_intent(targets)) {
            report.violations.push_back({Violation::Kind::box_targets_unstable, objects.name(a),
                                         "R_box^(1)[" + objects.name(a) + "] is not Galois-stable"});
        }
    }
    for (std::size_t a = 0; a < objects.size(); ++a) {
        const ElementSet sources = m.r_dia().common_sources(singleton(objects.size(), a));
        if (!p.is_intent(sources)) {
            report.violations.push_back({Violation::Kind::dia_sources_unstable, objects.name(a),
                                         "R_dia^(0)[" + objects.name(a) + "] is not Galois-stable"});
        }
    }
    for (std::size_t x = 0; x < attributes.size(); ++x) {
        const ElementSet targets = m.r_dia().common_targets(singleton(attributes.size(), x));
        if (!p.is_extent(targets)) {
            report.violations.push_back({Violation::Kind::dia_targets_unstable, attributes.name(x),
                                         "R_dia^(1)[" + attributes.name(x) + "] is not Galois-stable"});
        }
    }
    for (const auto& [name, value] : m.valuation()) {
        if (!p.is_concept(value)) {
            report.violations.push_back({Violation::Kind::valuation_not_concept, name,
                                         "V(" + name + ") is not a formal concept"});
        }
    }
    return report;
}

namespace {

// Closes the columns with `close_cols` and the rows with `close_rows` until
// both are stable. Closure operators are extensive, so this only adds pairs.
template <typename CloseCols, typename CloseRows>
Relation close_relation(Relation r, CloseCols close_cols, CloseRows close_rows) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t v = 0; v < r.target_count(); ++v) {
            const ElementSet closed = close_cols(r.col(v));
            for (auto u = closed.find_first(); u != ElementSet::npos; u = closed.find_next(u)) {
                if (!r.contains(u, v)) {
                    r.insert(u, v);
                    changed = true;
                }
            }
        }
        for (std::size_t u = 0; u < r.source_count(); ++u) {
            const ElementSet closed = close_rows(r.row(u));
            for (auto v = closed.find_first(); v != ElementSet::npos; v = closed.find_next(v)) {
                if (!r.contains(u, v)) {
                    r.insert(u, v);
                    changed = true;
                }
            }
        }
    }
    return r;
}

}  // namespace

Relation make_box_compatible(const Polarity& p, Relation r_box) {
    return close_relation(
        std::move(r_box), [&](const ElementSet& s) { return p.close_objects(s); },
        [&](const ElementSet& s) { return p.close_attributes(s); });
}

Relation make_dia_compatible(const Polarity& p, Relation r_dia) {
    return close_relation(
        std::move(r_dia), [&](const ElementSet& s) { return p.close_attributes(s); },
        [&](const ElementSet& s) { return p.close_objects(s); });
}

KripkeModel::KripkeModel(Carrier worlds, Relation accessibility, std::map<std::string, ElementSet> valuation)
    : worlds_(std::move(worlds)), accessibility_(std::move(accessibility)), valuation_(std::move(valuation)) {
    if (accessibility_.source_count() != worlds_.size() || accessibility_.target_count() != worlds_.size()) {
        throw ModelError("accessibility relation does not match the worlds");
    }
    for (const auto& [name, worlds] : valuation_) {
        if (worlds.size() != worlds_.size()) {
            throw ModelError("valuation of '" + name + "' does not match the worlds");
        }
    }
}

LEModel lift_kripke(const KripkeModel& k) {
    const auto n = k.worlds().size();
    std::vector<std::string> object_names;
    std::vector<std::string> attribute_names;
    for (const auto& w : k.worlds().names()) {
        object_names.push_back(w + "_A");
        attribute_names.push_back(w + "_X");
    }
    Relation incidence(n, n);
    Relation r_box(n, n);
    Relation r_dia(n, n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (u != v) {
                incidence.insert(u, v);
            }
            if (!k.accessibility().contains(u, v)) {
                r_box.insert(u, v);
                r_dia.insert(u, v);
            }
        }
    }
    Valuation valuation;
    for (const auto& [name, worlds] : k.valuation()) {
        valuation.emplace(name, Concept{worlds, ~worlds});
    }
    Polarity polarity(Carrier(std::move(object_names)), Carrier(std::move(attribute_names)), std::move(incidence));
    return LEModel(std::move(polarity), std::move(r_box), std::move(r_dia), std::move(valuation));
}

}  // namespace polarity_mc
