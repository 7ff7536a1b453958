#pragma once

#include <string_view>
#include <unordered_map>

#include "polarity_mc/formula.hpp"
#include "polarity_mc/model.hpp"

namespace polarity_mc {

/// Interpretation of formulas as concepts through the complex algebra.
/// Results are cached per formula node, so evaluating many formulas that
/// share subterms costs one step per distinct node.
class ExtensionEvaluator {
public:
    explicit ExtensionEvaluator(const LEModel& model);

    /// Throws ModelError for a variable outside the valuation.
    const Concept& operator()(const Formula& phi);

    const LEModel& model() const { return *model_; }

private:
    const LEModel* model_;
    Concept top_;
    Concept bottom_;
    std::unordered_map<const FormulaNode*, Concept> cache_;
    std::vector<Formula> keep_alive_;
};

Concept extension(const LEModel& m, const Formula& phi);

/// Truth of a formula at every object and every attribute.
struct Truth {
    ElementSet objects;     // a with a |- phi
    ElementSet attributes;  // x with x >- phi
};

/// Pointwise evaluation of the satisfaction clauses, one quantifier at a
/// time. Independent of the complex-algebra route; results cached per node.
class SatisfactionEvaluator {
public:
    explicit SatisfactionEvaluator(const LEModel& model);

    const Truth& operator()(const Formula& phi);

    bool at_object(std::size_t a, const Formula& phi) { return (*this)(phi).objects.test(a); }
    bool at_attribute(std::size_t x, const Formula& phi) { return (*this)(phi).attributes.test(x); }

private:
    Truth compute(const FormulaNode& phi);
    ElementSet objects_below(const ElementSet& attributes) const;
    ElementSet attributes_above(const ElementSet& objects) const;

    const LEModel* model_;
    std::unordered_map<const FormulaNode*, Truth> cache_;
    std::vector<Formula> keep_alive_;
};

/// M, a |- phi. Throws ModelError for an unknown object or variable.
bool satisfies_a(const LEModel& m, std::string_view a, const Formula& phi);
/// M, x >- phi. Throws ModelError for an unknown attribute or variable.
bool satisfies_x(const LEModel& m, std::string_view x, const Formula& phi);

/// extent(lhs) is contained in extent(rhs).
bool models_sequent(const LEModel& m, const Sequent& s);
/// intent(rhs) is contained in intent(lhs).
bool models_sequent_dual(const LEModel& m, const Sequent& s);

}  // namespace polarity_mc
