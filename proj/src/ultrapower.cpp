#include "polarity_mc/ultrapower.hpp"

#include <stdexcept>

namespace polarity_mc {

std::size_t tuple_component(std::size_t tuple, std::size_t base, std::size_t i) {
    for (std::size_t j = 0; j < i; ++j) {
        tuple /= base;
    }
    return tuple % base;
}

namespace {

std::size_t checked_power(std::size_t base, std::size_t k, std::size_t cap, const char* what) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < k; ++i) {
        n *= base;
        if (n > cap) {
            throw CapError(std::string(what) + " power exceeds cap " + std::to_string(cap));
        }
    }
    return n;
}

class PrincipalUltrafilter {
public:
    PrincipalUltrafilter(std::size_t k, std::size_t k0) : k_(k), k0_(k0) {}

    bool contains(const boost::dynamic_bitset<>& indices) const { return indices.test(k0_); }

    template <typename Pred>
    bool holds_almost_everywhere(Pred pred) const {
        boost::dynamic_bitset<> indices(k_);
        for (std::size_t i = 0; i < k_; ++i) {
            indices[i] = pred(i);
        }
        return contains(indices);
    }

private:
    std::size_t k_;
    std::size_t k0_;
};

struct Classes {
    std::vector<std::size_t> of_tuple;
    std::vector<std::size_t> representatives;
};

Classes quotient_classes(std::size_t base, std::size_t count, const PrincipalUltrafilter& u) {
    Classes c;
    c.of_tuple.resize(count);
    for (std::size_t s = 0; s < count; ++s) {
        bool found = false;
        for (std::size_t r = 0; r < c.representatives.size() && !found; ++r) {
            const std::size_t rep = c.representatives[r];
            if (u.holds_almost_everywhere(
                    [&](std::size_t i) { return tuple_component(s, base, i) == tuple_component(rep, base, i); })) {
                c.of_tuple[s] = r;
                found = true;
            }
        }
        if (!found) {
            c.of_tuple[s] = c.representatives.size();
            c.representatives.push_back(s);
        }
    }
    return c;
}

std::string tuple_name(const Carrier& carrier, std::size_t tuple, std::size_t k) {
    std::string name = "[";
    for (std::size_t i = 0; i < k; ++i) {
        name += (i ? "," : "") + carrier.name(tuple_component(tuple, carrier.size(), i));
    }
    return name + "]";
}

}  // namespace

Ultrapower ultrapower_principal(const LEModel& m, std::size_t k, std::size_t k0, const Caps& caps) {
    if (k == 0 || k0 >= k) {
        throw std::invalid_argument("ultrapower needs k >= 1 and 0 <= k0 < k");
    }
    const std::size_t na = m.objects().size();
    const std::size_t nx = m.attributes().size();
    const std::size_t object_tuples = checked_power(na, k, caps.power, "object");
    const std::size_t attribute_tuples = checked_power(nx, k, caps.power, "attribute");
    const PrincipalUltrafilter u(k, k0);

    const Classes objects = na == 0 ? Classes{} : quotient_classes(na, object_tuples, u);
    const Classes attributes = nx == 0 ? Classes{} : quotient_classes(nx, attribute_tuples, u);

    std::vector<std::string> object_names;
    std::vector<std::string> attribute_names;
    for (std::size_t rep : objects.representatives) {
        object_names.push_back(tuple_name(m.objects(), rep, k));
    }
    for (std::size_t rep : attributes.representatives) {
        attribute_names.push_back(tuple_name(m.attributes(), rep, k));
    }

    const std::size_t ca = objects.representatives.size();
    const std::size_t cx = attributes.representatives.size();
    Relation incidence(ca, cx);
    Relation r_box(ca, cx);
    Relation r_dia(cx, ca);
    for (std::size_t i = 0; i < ca; ++i) {
        const std::size_t s = objects.representatives[i];
        for (std::size_t j = 0; j < cx; ++j) {
            const std::size_t t = attributes.representatives[j];
            auto related = [&](const Relation& r, bool object_first) {
                return u.holds_almost_everywhere([&](std::size_t idx) {
                    const std::size_t a = tuple_component(s, na, idx);
                    const std::size_t x = tuple_component(t, nx, idx);
                    return object_first ? r.contains(a, x) : r.contains(x, a);
                });
            };
            if (related(m.incidence(), true)) {
                incidence.insert(i, j);
            }
            if (related(m.r_box(), true)) {
                r_box.insert(i, j);
            }
            if (related(m.r_dia(), false)) {
                r_dia.insert(j, i);
            }
        }
    }

    Valuation valuation;
    for (const auto& [name, value] : m.valuation()) {
        Concept c{ElementSet(ca), ElementSet(cx)};
        for (std::size_t i = 0; i < ca; ++i) {
            const std::size_t s = objects.representatives[i];
            c.extent[i] =
                u.holds_almost_everywhere([&](std::size_t idx) { return value.extent.test(tuple_component(s, na, idx)); });
        }
        for (std::size_t j = 0; j < cx; ++j) {
            const std::size_t t = attributes.representatives[j];
            c.intent[j] =
                u.holds_almost_everywhere([&](std::size_t idx) { return value.intent.test(tuple_component(t, nx, idx)); });
        }
        valuation.emplace(name, std::move(c));
    }

    Ultrapower up;
    up.k = k;
    up.k0 = k0;
    up.object_class = objects.of_tuple;
    up.attribute_class = attributes.of_tuple;
    for (std::size_t rep : objects.representatives) {
        up.object_iso.push_back(tuple_component(rep, na, k0));
    }
    for (std::size_t rep : attributes.representatives) {
        up.attribute_iso.push_back(tuple_component(rep, nx, k0));
    }
    Polarity polarity(Carrier(std::move(object_names)), Carrier(std::move(attribute_names)), std::move(incidence));
    up.quotient = LEModel(std::move(polarity), std::move(r_box), std::move(r_dia), std::move(valuation));
    return up;
}

std::vector<std::string> verify_isomorphism(const LEModel& base, const Ultrapower& up) {
    std::vector<std::string> problems;
    const LEModel& q = up.quotient;
    auto check_bijection = [&](const std::vector<std::size_t>& map, std::size_t target, const char* what) {
        std::vector<bool> hit(target, false);
        for (std::size_t image : map) {
            if (image >= target || hit[image]) {
                problems.push_back(std::string(what) + " map is not injective");
                return;
            }
            hit[image] = true;
        }
        if (map.size() != target) {
            problems.push_back(std::string(what) + " map is not surjective");
        }
    };
    check_bijection(up.object_iso, base.objects().size(), "object");
    check_bijection(up.attribute_iso, base.attributes().size(), "attribute");
    if (!problems.empty()) {
        return problems;
    }
    for (std::size_t i = 0; i < q.objects().size(); ++i) {
        const std::size_t a = up.object_iso[i];
        for (std::size_t j = 0; j < q.attributes().size(); ++j) {
            const std::size_t x = up.attribute_iso[j];
            const std::string where = q.objects().name(i) + ", " + q.attributes().name(j);
            if (q.incidence().contains(i, j) != base.incidence().contains(a, x)) {
                problems.push_back("I differs at " + where);
            }
            if (q.r_box().contains(i, j) != base.r_box().contains(a, x)) {
                problems.push_back("R_box differs at " + where);
            }
            if (q.r_dia().contains(j, i) != base.r_dia().contains(x, a)) {
                problems.push_back("R_dia differs at " + where);
            }
        }
    }
    for (const auto& [name, value] : base.valuation()) {
        const Concept& image = q.value(name);
        for (std::size_t i = 0; i < q.objects().size(); ++i) {
            if (image.extent.test(i) != value.extent.test(up.object_iso[i])) {
                problems.push_back("extent of " + name + " differs at " + q.objects().name(i));
            }
        }
        for (std::size_t j = 0; j < q.attributes().size(); ++j) {
            if (image.intent.test(j) != value.intent.test(up.attribute_iso[j])) {
                problems.push_back("intent of " + name + " differs at " + q.attributes().name(j));
            }
        }
    }
    return problems;
}

std::vector<std::string> los_violations(const LEModel& base, const Ultrapower& up, const FolFormula& phi) {
    const std::vector<FolVar> vars = [&] {
        auto free = free_variables(*phi);
        return std::vector<FolVar>(free.begin(), free.end());
    }();
    const std::size_t na = base.objects().size();
    const std::size_t nx = base.attributes().size();
    const PrincipalUltrafilter u(up.k, up.k0);

    std::vector<std::size_t> radix;
    for (const auto& v : vars) {
        radix.push_back(v.sort == VarSort::g ? up.object_class.size() : up.attribute_class.size());
    }
    std::size_t total = 1;
    for (std::size_t r : radix) {
        total *= r;
    }

    FolEvaluator in_quotient(up.quotient, phi);
    FolEvaluator in_base(base, phi);
    std::vector<std::string> problems;
    std::vector<std::size_t> tuples(vars.size());
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t rest = code;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            tuples[i] = rest % radix[i];
            rest /= radix[i];
        }
        SortedValuation qv;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (vars[i].sort == VarSort::g) {
                qv.objects[vars[i].name] = up.quotient.objects().name(up.object_class[tuples[i]]);
            } else {
                qv.attributes[vars[i].name] = up.quotient.attributes().name(up.attribute_class[tuples[i]]);
            }
        }
        const bool quotient_truth = in_quotient.eval(qv);
        const bool pointwise = u.holds_almost_everywhere([&](std::size_t idx) {
            SortedValuation bv;
            for (std::size_t i = 0; i < vars.size(); ++i) {
                if (vars[i].sort == VarSort::g) {
                    bv.objects[vars[i].name] = base.objects().name(tuple_component(tuples[i], na, idx));
                } else {
                    bv.attributes[vars[i].name] = base.attributes().name(tuple_component(tuples[i], nx, idx));
                }
            }
            return in_base.eval(bv);
        });
        if (quotient_truth != pointwise) {
            std::string where;
            for (std::size_t i = 0; i < vars.size(); ++i) {
                where += (i ? ", " : "") + vars[i].name + "=" +
                         tuple_name(vars[i].sort == VarSort::g ? base.objects() : base.attributes(), tuples[i], up.k);
            }
            problems.push_back(print_fol(*phi) + " at " + where);
        }
    }
    return problems;
}

}  // namespace polarity_mc
