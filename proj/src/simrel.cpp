#include "polarity_mc/simrel.hpp"

#include "polarity_mc/lattice.hpp"
#include "polarity_mc/semantics.hpp"

namespace polarity_mc {

namespace {

void require_same_vocabulary(const LEModel& m1, const LEModel& m2) {
    if (m1.variables() != m2.variables()) {
        throw ModelError("models interpret different sets of variables");
    }
}

void require_shape(const LEModel& m1, const LEModel& m2, const SimPair& z) {
    if (z.s.source_count() != m1.objects().size() || z.s.target_count() != m2.objects().size()) {
        throw ModelError("S must relate objects of the left model to objects of the right model");
    }
    if (z.t.source_count() != m1.attributes().size() || z.t.target_count() != m2.attributes().size()) {
        throw ModelError("T must relate attributes of the left model to attributes of the right model");
    }
}

constexpr unsigned clause_bit(int clause) {
    return 1U << clause;
}

constexpr unsigned propositional_clauses = clause_bit(1) | clause_bit(2);
constexpr unsigned structural_clauses = clause_bit(3) | clause_bit(4) | clause_bit(5) | clause_bit(6);

// Checks the selected clauses for (s, t) as a simulation from `from` to `to`.
// Pairs are reported in from/to orientation.
void check_direction(const LEModel& from, const LEModel& to, const Relation& s, const Relation& t, unsigned clauses,
                     bool converse, std::vector<SimViolation>& out) {
    auto report = [&](int clause, std::size_t u, std::size_t v, std::string witness) {
        out.push_back({clause, converse, u, v, std::move(witness)});
    };
    const auto& from_a = from.objects();
    const auto& from_x = from.attributes();
    const auto& to_a = to.objects();
    const auto& to_x = to.attributes();

    for (const auto& [u, v] : s.pairs()) {
        if (clauses & clause_bit(1)) {
            for (const auto& [name, value] : from.valuation()) {
                if (value.extent.test(u) && !to.value(name).extent.test(v)) {
                    report(1, u, v, from_a.name(u) + " |- " + name + " but " + to_a.name(v) + " does not");
                }
            }
        }
        if (clauses & clause_bit(3)) {
            const ElementSet candidates = ~from.incidence().row(u);
            for (std::size_t x2 = 0; x2 < to_x.size(); ++x2) {
                if (!to.incidence().contains(v, x2) && !candidates.intersects(t.col(x2))) {
                    report(3, u, v,
                           "not " + to_a.name(v) + " I " + to_x.name(x2) + ", no x with not " + from_a.name(u) +
                               " I x and x T " + to_x.name(x2));
                }
            }
        }
        if (clauses & clause_bit(5)) {
            const ElementSet candidates = ~from.r_box().row(u);
            for (std::size_t x2 = 0; x2 < to_x.size(); ++x2) {
                if (!to.r_box().contains(v, x2) && !candidates.intersects(t.col(x2))) {
                    report(5, u, v,
                           "not " + to_a.name(v) + " R_box " + to_x.name(x2) + ", no x with not " + from_a.name(u) +
                               " R_box x and x T " + to_x.name(x2));
                }
            }
        }
    }

    for (const auto& [u, v] : t.pairs()) {
        if (clauses & clause_bit(2)) {
            for (const auto& [name, value] : from.valuation()) {
                if (to.value(name).intent.test(v) && !value.intent.test(u)) {
                    report(2, u, v, to_x.name(v) + " >- " + name + " but " + from_x.name(u) + " does not");
                }
            }
        }
        if (clauses & clause_bit(4)) {
            const ElementSet candidates = ~to.incidence().col(v);
            for (std::size_t a1 = 0; a1 < from_a.size(); ++a1) {
                if (!from.incidence().contains(a1, u) && !candidates.intersects(s.row(a1))) {
                    report(4, u, v,
                           "not " + from_a.name(a1) + " I " + from_x.name(u) + ", no a with not a I " +
                               to_x.name(v) + " and " + from_a.name(a1) + " S a");
                }
            }
        }
        if (clauses & clause_bit(6)) {
            const ElementSet candidates = ~to.r_dia().row(v);
            for (std::size_t a1 = 0; a1 < from_a.size(); ++a1) {
                if (!from.r_dia().contains(u, a1) && !candidates.intersects(s.row(a1))) {
                    report(6, u, v,
                           "not " + from_x.name(u) + " R_dia " + from_a.name(a1) + ", no a with not " +
                               to_x.name(v) + " R_dia a and " + from_a.name(a1) + " S a");
                }
            }
        }
    }
}

void check_converse(const LEModel& m1, const LEModel& m2, const SimPair& z, unsigned clauses,
                    std::vector<SimViolation>& out) {
    std::vector<SimViolation> reversed;
    check_direction(m2, m1, z.s.transposed(), z.t.transposed(), clauses, true, reversed);
    for (auto& v : reversed) {
        std::swap(v.left, v.right);
        out.push_back(std::move(v));
    }
}

bool is_object_clause(int clause) {
    return clause % 2 == 1;
}

std::size_t pair_size(const SimPair& z) {
    return z.s.pair_count() + z.t.pair_count();
}

RefinementTrace refine(const LEModel& m1, const LEModel& m2, bool with_converse) {
    require_same_vocabulary(m1, m2);
    RefinementTrace trace;
    SimPair z = full_pair(m1, m2);

    auto apply = [&](const std::vector<SimViolation>& violations) {
        for (const auto& v : violations) {
            if (is_object_clause(v.clause)) {
                z.s.erase(v.left, v.right);
            } else {
                z.t.erase(v.left, v.right);
            }
        }
    };

    std::vector<SimViolation> initial;
    check_direction(m1, m2, z.s, z.t, propositional_clauses, false, initial);
    if (with_converse) {
        check_converse(m1, m2, z, propositional_clauses, initial);
    }
    apply(initial);
    trace.sizes.push_back(pair_size(z));

    while (true) {
        std::vector<SimViolation> violations;
        check_direction(m1, m2, z.s, z.t, structural_clauses, false, violations);
        if (with_converse) {
            check_converse(m1, m2, z, structural_clauses, violations);
        }
        if (violations.empty()) {
            break;
        }
        apply(violations);
        trace.sizes.push_back(pair_size(z));
    }
    trace.result = std::move(z);
    return trace;
}

}  // namespace

SimPair empty_pair(const LEModel& m1, const LEModel& m2) {
    return {Relation(m1.objects().size(), m2.objects().size()),
            Relation(m1.attributes().size(), m2.attributes().size())};
}

SimPair full_pair(const LEModel& m1, const LEModel& m2) {
    SimPair z = empty_pair(m1, m2);
    for (std::size_t u = 0; u < m1.objects().size(); ++u) {
        for (std::size_t v = 0; v < m2.objects().size(); ++v) {
            z.s.insert(u, v);
        }
    }
    for (std::size_t u = 0; u < m1.attributes().size(); ++u) {
        for (std::size_t v = 0; v < m2.attributes().size(); ++v) {
            z.t.insert(u, v);
        }
    }
    return z;
}

SimPair identity_pair(const LEModel& m) {
    SimPair z = empty_pair(m, m);
    for (std::size_t a = 0; a < m.objects().size(); ++a) {
        z.s.insert(a, a);
    }
    for (std::size_t x = 0; x < m.attributes().size(); ++x) {
        z.t.insert(x, x);
    }
    return z;
}

std::vector<SimViolation> is_simulation(const LEModel& m1, const LEModel& m2, const SimPair& z) {
    require_same_vocabulary(m1, m2);
    require_shape(m1, m2, z);
    std::vector<SimViolation> out;
    check_direction(m1, m2, z.s, z.t, propositional_clauses | structural_clauses, false, out);
    return out;
}

std::vector<SimViolation> is_bisimulation(const LEModel& m1, const LEModel& m2, const SimPair& z) {
    std::vector<SimViolation> out = is_simulation(m1, m2, z);
    check_converse(m1, m2, z, propositional_clauses | structural_clauses, out);
    return out;
}

RefinementTrace refine_simulation(const LEModel& m1, const LEModel& m2) {
    return refine(m1, m2, false);
}

RefinementTrace refine_bisimulation(const LEModel& m1, const LEModel& m2) {
    return refine(m1, m2, true);
}

SimPair greatest_simulation(const LEModel& m1, const LEModel& m2) {
    return refine_simulation(m1, m2).result;
}

SimPair greatest_bisimulation(const LEModel& m1, const LEModel& m2) {
    return refine_bisimulation(m1, m2).result;
}

namespace {

struct AlgebraTables {
    ConceptLattice lattice;
    std::vector<std::size_t> box;
    std::vector<std::size_t> dia;

    AlgebraTables(const LEModel& m, const Caps& caps) : lattice(m.polarity(), caps) {
        for (std::size_t c = 0; c < lattice.size(); ++c) {
            box.push_back(lattice.index_of(box_op(m, lattice.at(c))));
            dia.push_back(lattice.index_of(dia_op(m, lattice.at(c))));
        }
    }
};

}  // namespace

EquivReport modal_equiv_oracle(const LEModel& m1, const LEModel& m2, const Caps& caps) {
    require_same_vocabulary(m1, m2);
    const AlgebraTables t1(m1, caps);
    const AlgebraTables t2(m2, caps);
    const auto& l1 = t1.lattice;
    const auto& l2 = t2.lattice;

    std::vector<bool> seen(l1.size() * l2.size(), false);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::pair<std::size_t, std::size_t>> fresh;
    auto add = [&](std::size_t c, std::size_t d, std::vector<std::pair<std::size_t, std::size_t>>& into) {
        const std::size_t key = c * l2.size() + d;
        if (!seen[key]) {
            seen[key] = true;
            into.emplace_back(c, d);
        }
    };

    for (const auto& [name, value] : m1.valuation()) {
        add(l1.index_of(value), l2.index_of(m2.value(name)), fresh);
    }
    add(l1.top(), l2.top(), fresh);
    add(l1.bottom(), l2.bottom(), fresh);

    EquivReport report;
    while (!fresh.empty()) {
        pairs.insert(pairs.end(), fresh.begin(), fresh.end());
        std::vector<std::pair<std::size_t, std::size_t>> next;
        for (const auto& [c, d] : fresh) {
            add(t1.box[c], t2.box[d], next);
            add(t1.dia[c], t2.dia[d], next);
            for (const auto& [c2, d2] : pairs) {
                add(l1.meet(c, c2), l2.meet(d, d2), next);
                add(l1.join(c, c2), l2.join(d, d2), next);
            }
        }
        if (!next.empty()) {
            ++report.closure_depth;
        }
        fresh = std::move(next);
    }
    report.closure_pairs = pairs.size();

    const std::size_t na1 = m1.objects().size();
    const std::size_t na2 = m2.objects().size();
    const std::size_t nx1 = m1.attributes().size();
    const std::size_t nx2 = m2.attributes().size();
    std::vector<ElementSet> fa(na1, ~ElementSet(na2));
    std::vector<ElementSet> ba(na2, ~ElementSet(na1));
    std::vector<ElementSet> fx(nx1, ~ElementSet(nx2));
    std::vector<ElementSet> bx(nx2, ~ElementSet(nx1));
    for (const auto& [c, d] : pairs) {
        const Concept& left = l1.at(c);
        const Concept& right = l2.at(d);
        for (auto a = left.extent.find_first(); a != ElementSet::npos; a = left.extent.find_next(a)) {
            fa[a] &= right.extent;
        }
        for (auto a = right.extent.find_first(); a != ElementSet::npos; a = right.extent.find_next(a)) {
            ba[a] &= left.extent;
        }
        for (auto x = left.intent.find_first(); x != ElementSet::npos; x = left.intent.find_next(x)) {
            fx[x] &= right.intent;
        }
        for (auto x = right.intent.find_first(); x != ElementSet::npos; x = right.intent.find_next(x)) {
            bx[x] &= left.intent;
        }
    }
    auto to_relation = [](const std::vector<ElementSet>& rows, std::size_t targets) {
        Relation r(rows.size(), targets);
        for (std::size_t u = 0; u < rows.size(); ++u) {
            for (auto v = rows[u].find_first(); v != ElementSet::npos; v = rows[u].find_next(v)) {
                r.insert(u, v);
            }
        }
        return r;
    };
    report.forward_a = to_relation(fa, na2);
    report.backward_a = to_relation(ba, na1);
    report.forward_x = to_relation(fx, nx2);
    report.backward_x = to_relation(bx, nx1);
    report.equiv_a = report.forward_a.intersected(report.backward_a.transposed());
    report.equiv_x = report.forward_x.intersected(report.backward_x.transposed());
    return report;
}

namespace {

void compare_relations(const std::string& label, const Relation& expected, const Relation& actual,
                       const Carrier& sources, const Carrier& targets, const char* expected_name,
                       const char* actual_name, std::vector<HmDiscrepancy>& out) {
    for (std::size_t u = 0; u < sources.size(); ++u) {
        for (std::size_t v = 0; v < targets.size(); ++v) {
            const bool e = expected.contains(u, v);
            const bool a = actual.contains(u, v);
            if (e != a) {
                out.push_back({label, sources.name(u), targets.name(v),
                               std::string(e ? "in " : "not in ") + expected_name + ", " + (a ? "in " : "not in ") +
                                   actual_name});
            }
        }
    }
}

}  // namespace

HmReport hm_check(const LEModel& m1, const LEModel& m2, const Caps& caps) {
    const EquivReport oracle = modal_equiv_oracle(m1, m2, caps);
    const SimPair forward = greatest_simulation(m1, m2);
    const SimPair backward = greatest_simulation(m2, m1);

    HmReport report;
    compare_relations("a1 ~>A a2", oracle.forward_a, forward.s, m1.objects(), m2.objects(), "modal transfer",
                      "S of the simulation 1->2", report.discrepancies);
    compare_relations("a2 ~>A a1", oracle.backward_a, backward.s, m2.objects(), m1.objects(), "modal transfer",
                      "S of the simulation 2->1", report.discrepancies);
    compare_relations("x1 ~>X x2", oracle.forward_x, backward.t.transposed(), m1.attributes(), m2.attributes(),
                      "modal transfer", "T^-1 of the simulation 2->1", report.discrepancies);
    compare_relations("x2 ~>X x1", oracle.backward_x, forward.t.transposed(), m2.attributes(), m1.attributes(),
                      "modal transfer", "T^-1 of the simulation 1->2", report.discrepancies);
    return report;
}

Bisimilarity bisimilar_points(const LEModel& m1, const LEModel& m2) {
    const SimPair forward = greatest_simulation(m1, m2);
    const SimPair backward = greatest_simulation(m2, m1);
    return {forward.s.intersected(backward.s.transposed()), forward.t.intersected(backward.t.transposed())};
}

std::optional<std::string> m_saturation_witness(const LEModel& m, const std::vector<Formula>& sigma,
                                                std::string_view point, SaturationContext context) {
    const bool from_object =
        context == SaturationContext::incidence_attributes || context == SaturationContext::box_attributes;
    const Carrier& point_carrier = from_object ? m.objects() : m.attributes();
    auto index = point_carrier.find(point);
    if (!index) {
        throw ModelError("'" + std::string(point) + "' is not " + (from_object ? "an object" : "an attribute") +
                         " of the model");
    }
    const std::size_t p = *index;

    ElementSet candidates;
    switch (context) {
    case SaturationContext::incidence_attributes:
        candidates = ~m.incidence().row(p);
        break;
    case SaturationContext::incidence_objects:
        candidates = ~m.incidence().col(p);
        break;
    case SaturationContext::box_attributes:
        candidates = ~m.r_box().row(p);
        break;
    case SaturationContext::dia_objects:
        candidates = ~m.r_dia().row(p);
        break;
    }

    SatisfactionEvaluator eval(m);
    for (const auto& phi : sigma) {
        candidates &= from_object ? eval(phi).attributes : eval(phi).objects;
    }
    const auto first = candidates.find_first();
    if (first == ElementSet::npos) {
        return std::nullopt;
    }
    return from_object ? m.attributes().name(first) : m.objects().name(first);
}

}  // namespace polarity_mc
