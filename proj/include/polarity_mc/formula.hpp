#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polarity_mc {

enum class Op { var, top, bot, conj, disj, box, dia };

struct FormulaNode;
/// Immutable, freely shared formula tree.
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
    Op op;
    std::string name;  // variables only
    Formula left;      // also the operand of box/dia
    Formula right;
};

namespace fm {
Formula var(std::string name);
Formula top();
Formula bot();
Formula conj(Formula lhs, Formula rhs);
Formula disj(Formula lhs, Formula rhs);
Formula box(Formula inner);
Formula dia(Formula inner);
}  // namespace fm

/// Total structural order: operator rank first, then variable names, then
/// children from left to right.
int compare(const FormulaNode& lhs, const FormulaNode& rhs);
bool equal(const Formula& lhs, const Formula& rhs);

/// Connective nesting depth; atoms have depth 0.
std::size_t depth(const FormulaNode& f);
std::size_t size(const FormulaNode& f);
/// Variables in order of first occurrence.
std::vector<std::string> variables(const FormulaNode& f);

struct Sequent {
    Formula lhs;
    Formula rhs;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Grammar, loosest first:
///   disj := conj ('|' conj)*
///   conj := unary ('&' unary)*
///   unary := 'box' unary | 'dia' unary | atom
///   atom := 'top' | 'bot' | [a-z][a-zA-Z0-9_]* | '(' disj ')'
Formula parse_formula(std::string_view text);
/// `lhs |- rhs`
Sequent parse_sequent(std::string_view text);

/// Minimal parentheses, e.g. "box (p | q) & dia r".
std::string print_formula(const FormulaNode& f);
std::string print_sequent(const Sequent& s);

constexpr std::size_t default_enumeration_cap = 3;

/// All formulas over `vocab`, top and bot with nesting depth <= `max_depth`,
/// one per canonical form: the two arguments of every conjunction and
/// disjunction are distinct and ordered by `compare`. Formulas of smaller
/// depth come first; subterms are shared between results. Throws
/// std::invalid_argument when `max_depth` exceeds `cap`.
std::vector<Formula> enumerate_formulas(const std::vector<std::string>& vocab, std::size_t max_depth,
                                        std::size_t cap = default_enumeration_cap);

/// Number of formulas enumerate_formulas returns, without building them.
std::size_t count_formulas(std::size_t vocab_size, std::size_t max_depth);

}  // namespace polarity_mc
