#include "polarity_mc/semantics.hpp"

#include "polarity_mc/lattice.hpp"

namespace polarity_mc {

ExtensionEvaluator::ExtensionEvaluator(const LEModel& model)
    : model_(&model), top_(top_concept(model.polarity())), bottom_(bottom_concept(model.polarity())) {}

const Concept& ExtensionEvaluator::operator()(const Formula& phi) {
    if (auto it = cache_.find(phi.get()); it != cache_.end()) {
        return it->second;
    }
    const Polarity& p = model_->polarity();
    Concept result;
    switch (phi->op) {
    case Op::var:
        result = model_->value(phi->name);
        break;
    case Op::top:
        result = top_;
        break;
    case Op::bot:
        result = bottom_;
        break;
    case Op::conj:
        result = meet(p, (*this)(phi->left), (*this)(phi->right));
        break;
    case Op::disj:
        result = join(p, (*this)(phi->left), (*this)(phi->right));
        break;
    case Op::box:
        result = box_op(*model_, (*this)(phi->left));
        break;
    case Op::dia:
        result = dia_op(*model_, (*this)(phi->left));
        break;
    }
    keep_alive_.push_back(phi);
    return cache_.emplace(phi.get(), std::move(result)).first->second;
}

Concept extension(const LEModel& m, const Formula& phi) {
    ExtensionEvaluator eval(m);
    return eval(phi);
}

SatisfactionEvaluator::SatisfactionEvaluator(const LEModel& model) : model_(&model) {}

const Truth& SatisfactionEvaluator::operator()(const Formula& phi) {
    if (auto it = cache_.find(phi.get()); it != cache_.end()) {
        return it->second;
    }
    if (phi->left) {
        (*this)(phi->left);
    }
    if (phi->right) {
        (*this)(phi->right);
    }
    Truth truth = compute(*phi);
    keep_alive_.push_back(phi);
    return cache_.emplace(phi.get(), std::move(truth)).first->second;
}

// a with aIx for every x in `attributes`
ElementSet SatisfactionEvaluator::objects_below(const ElementSet& attributes) const {
    const auto& incidence = model_->incidence();
    ElementSet result(model_->objects().size());
    for (std::size_t a = 0; a < result.size(); ++a) {
        bool all = true;
        for (std::size_t x = 0; x < attributes.size() && all; ++x) {
            if (attributes.test(x) && !incidence.contains(a, x)) {
                all = false;
            }
        }
        result[a] = all;
    }
    return result;
}

// x with aIx for every a in `objects`
ElementSet SatisfactionEvaluator::attributes_above(const ElementSet& objects) const {
    const auto& incidence = model_->incidence();
    ElementSet result(model_->attributes().size());
    for (std::size_t x = 0; x < result.size(); ++x) {
        bool all = true;
        for (std::size_t a = 0; a < objects.size() && all; ++a) {
            if (objects.test(a) && !incidence.contains(a, x)) {
                all = false;
            }
        }
        result[x] = all;
    }
    return result;
}

Truth SatisfactionEvaluator::compute(const FormulaNode& phi) {
    const std::size_t na = model_->objects().size();
    const std::size_t nx = model_->attributes().size();
    Truth t{ElementSet(na), ElementSet(nx)};
    switch (phi.op) {
    case Op::var: {
        const Concept& v = model_->value(phi.name);
        t.objects = v.extent;
        t.attributes = v.intent;
        break;
    }
    case Op::top:
        t.objects.set();
        t.attributes = attributes_above(t.objects);
        break;
    case Op::bot:
        t.attributes.set();
        t.objects = objects_below(t.attributes);
        break;
    case Op::conj: {
        const Truth& l = cache_.at(phi.left.get());
        const Truth& r = cache_.at(phi.right.get());
        for (std::size_t a = 0; a < na; ++a) {
            t.objects[a] = l.objects.test(a) && r.objects.test(a);
        }
        t.attributes = attributes_above(t.objects);
        break;
    }
    case Op::disj: {
        const Truth& l = cache_.at(phi.left.get());
        const Truth& r = cache_.at(phi.right.get());
        for (std::size_t x = 0; x < nx; ++x) {
            t.attributes[x] = l.attributes.test(x) && r.attributes.test(x);
        }
        t.objects = objects_below(t.attributes);
        break;
    }
    case Op::box: {
        const Truth& inner = cache_.at(phi.left.get());
        for (std::size_t a = 0; a < na; ++a) {
            bool all = true;
            for (std::size_t x = 0; x < nx && all; ++x) {
                if (inner.attributes.test(x) && !model_->r_box().contains(a, x)) {
                    all = false;
                }
            }
            t.objects[a] = all;
        }
        t.attributes = attributes_above(t.objects);
        break;
    }
    case Op::dia: {
        const Truth& inner = cache_.at(phi.left.get());
        for (std::size_t x = 0; x < nx; ++x) {
            bool all = true;
            for (std::size_t a = 0; a < na && all; ++a) {
                if (inner.objects.test(a) && !model_->r_dia().contains(x, a)) {
                    all = false;
                }
            }
            t.attributes[x] = all;
        }
        t.objects = objects_below(t.attributes);
        break;
    }
    }
    return t;
}

bool satisfies_a(const LEModel& m, std::string_view a, const Formula& phi) {
    const std::size_t index = m.objects().index_of(a);
    return SatisfactionEvaluator(m).at_object(index, phi);
}

bool satisfies_x(const LEModel& m, std::string_view x, const Formula& phi) {
    const std::size_t index = m.attributes().index_of(x);
    return SatisfactionEvaluator(m).at_attribute(index, phi);
}

bool models_sequent(const LEModel& m, const Sequent& s) {
    ExtensionEvaluator eval(m);
    const ElementSet lhs = eval(s.lhs).extent;
    return lhs.is_subset_of(eval(s.rhs).extent);
}

bool models_sequent_dual(const LEModel& m, const Sequent& s) {
    ExtensionEvaluator eval(m);
    const ElementSet rhs = eval(s.rhs).intent;
    return rhs.is_subset_of(eval(s.lhs).intent);
}

}  // namespace polarity_mc
