#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "polarity_mc/formula.hpp"
#include "polarity_mc/model.hpp"

namespace polarity_mc {

/// Variable sorts of the two-sorted language: G ranges over objects, M over
/// attributes.
enum class VarSort { g, m };

struct FolVar {
    VarSort sort;
    std::string name;

    friend bool operator==(const FolVar&, const FolVar&) = default;
    friend auto operator<=>(const FolVar&, const FolVar&) = default;
};

enum class FolOp {
    equals,     // same-sorted variables
    pred_a,     // P_A(g)
    pred_x,     // P_X(m)
    incidence,  // g I m
    rel_box,    // g R_box m
    rel_dia,    // m R_dia g
    negation,
    conjunction,
    disjunction,
    implication,
    forall,
    exists,
};

struct FolNode;
using FolFormula = std::shared_ptr<const FolNode>;

struct FolNode {
    FolOp op;
    std::string predicate;  // variable name of P_A / P_X
    FolVar first;           // atom arguments, or the bound variable
    FolVar second;
    FolFormula left;  // also the body of quantifiers and negation
    FolFormula right;
};

/// Constructors check sorts and throw std::invalid_argument on mismatch.
namespace fol {
FolVar g(std::string name);
FolVar m(std::string name);
FolFormula equals(FolVar lhs, FolVar rhs);
FolFormula pred_a(std::string predicate, FolVar g);
FolFormula pred_x(std::string predicate, FolVar m);
FolFormula incidence(FolVar g, FolVar m);
FolFormula rel_box(FolVar g, FolVar m);
FolFormula rel_dia(FolVar m, FolVar g);
FolFormula negation(FolFormula body);
FolFormula conjunction(FolFormula lhs, FolFormula rhs);
FolFormula disjunction(FolFormula lhs, FolFormula rhs);
FolFormula implication(FolFormula lhs, FolFormula rhs);
FolFormula forall(FolVar bound, FolFormula body);
FolFormula exists(FolVar bound, FolFormula body);
}  // namespace fol

std::set<FolVar> free_variables(const FolNode& f);
std::size_t size(const FolNode& f);

/// `forall m0:M. (I(g,m0))`, `PA_p(g)`, `Rdia(m,g0)`, connectives ~ /\ \/ ->.
std::string print_fol(const FolNode& f);

/// Standard translations. The free variable is `g` (resp. `m`); bound
/// variables are g0, g1, ... and m0, m1, ... numbered in pre-order.
FolFormula st_g(const FormulaNode& phi, const std::string& g = "g");
FolFormula st_m(const FormulaNode& phi, const std::string& m = "m");

/// Assignment of model elements, by name, to free variables.
struct SortedValuation {
    std::map<std::string, std::string> objects;     // G-variable -> element of A
    std::map<std::string, std::string> attributes;  // M-variable -> element of X
};

/// Evaluates one formula against one model. Subformula results are memoized
/// per assignment of their free variables, so repeated queries (for example
/// the same formula at every point) stay cheap.
class FolEvaluator {
public:
    FolEvaluator(const LEModel& model, FolFormula formula);

    /// Throws ModelError on an unbound free variable, an unknown element or an
    /// element of the wrong sort.
    bool eval(const SortedValuation& v);
    /// Formula with a single free variable of the given sort, evaluated at
    /// every element of that sort.
    std::vector<bool> eval_all(VarSort sort);

private:
    struct Compiled {
        FolOp op;
        const Concept* predicate = nullptr;
        std::size_t slot1 = 0;
        std::size_t slot2 = 0;
        int left = -1;
        int right = -1;
        std::vector<std::size_t> free_slots;
        std::vector<signed char> memo;  // -1 unknown
    };

    int compile(const FolNode& f, std::map<FolVar, std::size_t>& scope);
    bool eval_node(int index);
    std::size_t domain(std::size_t slot) const;

    const LEModel* model_;
    FolFormula formula_;
    std::vector<Compiled> nodes_;
    std::vector<VarSort> slot_sorts_;
    std::map<FolVar, std::size_t> free_slots_;
    std::vector<std::size_t> env_;
    int root_ = -1;
};

bool fol_eval(const LEModel& model, const FolFormula& formula, const SortedValuation& v);

}  // namespace polarity_mc
