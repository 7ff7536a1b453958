#include "polarity_mc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace polarity_mc {

namespace fm {

Formula var(std::string name) {
    return std::make_shared<const FormulaNode>(FormulaNode{Op::var, std::move(name), nullptr, nullptr});
}

Formula top() {
    static const Formula node = std::make_shared<const FormulaNode>(FormulaNode{Op::top, {}, nullptr, nullptr});
    return node;
}

Formula bot() {
    static const Formula node = std::make_shared<const FormulaNode>(FormulaNode{Op::bot, {}, nullptr, nullptr});
    return node;
}

Formula conj(Formula lhs, Formula rhs) {
    return std::make_shared<const FormulaNode>(FormulaNode{Op::conj, {}, std::move(lhs), std::move(rhs)});
}

Formula disj(Formula lhs, Formula rhs) {
    return std::make_shared<const FormulaNode>(FormulaNode{Op::disj, {}, std::move(lhs), std::move(rhs)});
}

Formula box(Formula inner) {
    return std::make_shared<const FormulaNode>(FormulaNode{Op::box, {}, std::move(inner), nullptr});
}

Formula dia(Formula inner) {
    return std::make_shared<const FormulaNode>(FormulaNode{Op::dia, {}, std::move(inner), nullptr});
}

}  // namespace fm

int compare(const FormulaNode& lhs, const FormulaNode& rhs) {
    if (&lhs == &rhs) {
        return 0;
    }
    if (lhs.op != rhs.op) {
        return lhs.op < rhs.op ? -1 : 1;
    }
    switch (lhs.op) {
    case Op::var:
        return lhs.name.compare(rhs.name) < 0 ? -1 : (lhs.name == rhs.name ? 0 : 1);
    case Op::top:
    case Op::bot:
        return 0;
    case Op::box:
    case Op::dia:
        return compare(*lhs.left, *rhs.left);
    case Op::conj:
    case Op::disj:
        if (int c = compare(*lhs.left, *rhs.left); c != 0) {
            return c;
        }
        return compare(*lhs.right, *rhs.right);
    }
    return 0;
}

bool equal(const Formula& lhs, const Formula& rhs) {
    return compare(*lhs, *rhs) == 0;
}

std::size_t depth(const FormulaNode& f) {
    switch (f.op) {
    case Op::var:
    case Op::top:
    case Op::bot:
        return 0;
    case Op::box:
    case Op::dia:
        return 1 + depth(*f.left);
    case Op::conj:
    case Op::disj:
        return 1 + std::max(depth(*f.left), depth(*f.right));
    }
    return 0;
}

std::size_t size(const FormulaNode& f) {
    std::size_t n = 1;
    if (f.left) {
        n += size(*f.left);
    }
    if (f.right) {
        n += size(*f.right);
    }
    return n;
}

namespace {

void collect_variables(const FormulaNode& f, std::vector<std::string>& out) {
    if (f.op == Op::var) {
        if (std::find(out.begin(), out.end(), f.name) == out.end()) {
            out.push_back(f.name);
        }
        return;
    }
    if (f.left) {
        collect_variables(*f.left, out);
    }
    if (f.right) {
        collect_variables(*f.right, out);
    }
}

}  // namespace

std::vector<std::string> variables(const FormulaNode& f) {
    std::vector<std::string> out;
    collect_variables(f, out);
    return out;
}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line),
      column_(column) {}

namespace {

enum class Tok { ident, top, bot, box, dia, amp, bar, turnstile, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

const char* describe(Tok kind) {
    switch (kind) {
    case Tok::ident:
        return "variable";
    case Tok::top:
        return "'top'";
    case Tok::bot:
        return "'bot'";
    case Tok::box:
        return "'box'";
    case Tok::dia:
        return "'dia'";
    case Tok::amp:
        return "'&'";
    case Tok::bar:
        return "'|'";
    case Tok::turnstile:
        return "'|-'";
    case Tok::lparen:
        return "'('";
    case Tok::rparen:
        return "')'";
    case Tok::end:
        return "end of input";
    }
    return "token";
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        i += n;
        column += n;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++i;
            ++line;
            column = 1;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        const std::size_t start_column = column;
        if (c == '&') {
            tokens.push_back({Tok::amp, "&", line, start_column});
            advance(1);
        } else if (c == '|') {
            if (i + 1 < text.size() && text[i + 1] == '-') {
                tokens.push_back({Tok::turnstile, "|-", line, start_column});
                advance(2);
            } else {
                tokens.push_back({Tok::bar, "|", line, start_column});
                advance(1);
            }
        } else if (c == '(') {
            tokens.push_back({Tok::lparen, "(", line, start_column});
            advance(1);
        } else if (c == ')') {
            tokens.push_back({Tok::rparen, ")", line, start_column});
            advance(1);
        } else if (c >= 'a' && c <= 'z') {
            std::size_t j = i + 1;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
                ++j;
            }
            std::string word(text.substr(i, j - i));
            Tok kind = Tok::ident;
            if (word == "top") {
                kind = Tok::top;
            } else if (word == "bot") {
                kind = Tok::bot;
            } else if (word == "box") {
                kind = Tok::box;
            } else if (word == "dia") {
                kind = Tok::dia;
            }
            tokens.push_back({kind, std::move(word), line, start_column});
            advance(j - i);
        } else {
            throw ParseError(std::string("unknown token '") + c + "'", line, start_column);
        }
    }
    tokens.push_back({Tok::end, "", line, column});
    return tokens;
}

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

    Formula formula() { return disjunction(); }

    const Token& peek() const { return tokens_[pos_]; }

    void expect(Tok kind) {
        if (peek().kind != kind) {
            fail(std::string("expected ") + describe(kind));
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
        throw ParseError(what + ", found " + found, t.line, t.column);
    }

private:
    Formula disjunction() {
        Formula result = conjunction();
        while (peek().kind == Tok::bar) {
            ++pos_;
            result = fm::disj(result, conjunction());
        }
        return result;
    }

    Formula conjunction() {
        Formula result = unary();
        while (peek().kind == Tok::amp) {
            ++pos_;
            result = fm::conj(result, unary());
        }
        return result;
    }

    Formula unary() {
        switch (peek().kind) {
        case Tok::box:
            ++pos_;
            return fm::box(unary());
        case Tok::dia:
            ++pos_;
            return fm::dia(unary());
        case Tok::top:
            ++pos_;
            return fm::top();
        case Tok::bot:
            ++pos_;
            return fm::bot();
        case Tok::ident: {
            std::string name = peek().text;
            ++pos_;
            return fm::var(std::move(name));
        }
        case Tok::lparen: {
            ++pos_;
            Formula inner = disjunction();
            expect(Tok::rparen);
            return inner;
        }
        default:
            fail("expected a formula");
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

int precedence(Op op) {
    switch (op) {
    case Op::disj:
        return 1;
    case Op::conj:
        return 2;
    case Op::box:
    case Op::dia:
        return 3;
    default:
        return 4;
    }
}

void print(const FormulaNode& f, std::string& out);

void print_operand(const FormulaNode& f, int min_precedence, std::string& out) {
    if (precedence(f.op) < min_precedence) {
        out += '(';
        print(f, out);
        out += ')';
    } else {
        print(f, out);
    }
}

void print(const FormulaNode& f, std::string& out) {
    switch (f.op) {
    case Op::var:
        out += f.name;
        return;
    case Op::top:
        out += "top";
        return;
    case Op::bot:
        out += "bot";
        return;
    case Op::box:
    case Op::dia: {
        out += f.op == Op::box ? "box" : "dia";
        const bool grouped = precedence(f.left->op) < precedence(Op::box);
        out += grouped ? " (" : " ";
        print(*f.left, out);
        if (grouped) {
            out += ')';
        }
        return;
    }
    case Op::conj:
    case Op::disj: {
        const int p = precedence(f.op);
        // left-associative: equal precedence needs no parentheses on the left
        print_operand(*f.left, p, out);
        out += f.op == Op::conj ? " & " : " | ";
        print_operand(*f.right, p + 1, out);
        return;
    }
    }
}

}  // namespace

Formula parse_formula(std::string_view text) {
    Parser parser(text);
    Formula result = parser.formula();
    if (parser.peek().kind != Tok::end) {
        parser.fail("unexpected trailing input");
    }
    return result;
}

Sequent parse_sequent(std::string_view text) {
    Parser parser(text);
    Formula lhs = parser.formula();
    parser.expect(Tok::turnstile);
    Formula rhs = parser.formula();
    if (parser.peek().kind != Tok::end) {
        parser.fail("unexpected trailing input");
    }
    return {std::move(lhs), std::move(rhs)};
}

std::string print_formula(const FormulaNode& f) {
    std::string out;
    print(f, out);
    return out;
}

std::string print_sequent(const Sequent& s) {
    return print_formula(*s.lhs) + " |- " + print_formula(*s.rhs);
}

std::vector<Formula> enumerate_formulas(const std::vector<std::string>& vocab, std::size_t max_depth,
                                        std::size_t cap) {
    if (max_depth > cap) {
        throw std::invalid_argument("enumeration depth " + std::to_string(max_depth) + " exceeds cap " +
                                    std::to_string(cap));
    }
    std::unordered_set<std::string> seen;
    std::vector<Formula> all;
    for (const auto& name : vocab) {
        if (!seen.insert(name).second) {
            throw std::invalid_argument("duplicate variable '" + name + "' in vocabulary");
        }
        all.push_back(fm::var(name));
    }
    all.push_back(fm::top());
    all.push_back(fm::bot());

    std::size_t fresh_begin = 0;  // first formula of the previous depth
    for (std::size_t d = 1; d <= max_depth; ++d) {
        const std::size_t previous = all.size();
        std::vector<Formula> next;
        for (std::size_t i = fresh_begin; i < previous; ++i) {
            next.push_back(fm::box(all[i]));
        }
        for (std::size_t i = fresh_begin; i < previous; ++i) {
            next.push_back(fm::dia(all[i]));
        }
        for (Op op : {Op::conj, Op::disj}) {
            for (std::size_t j = fresh_begin; j < previous; ++j) {
                for (std::size_t i = 0; i < j; ++i) {
                    const Formula* lhs = &all[i];
                    const Formula* rhs = &all[j];
                    if (compare(**lhs, **rhs) > 0) {
                        std::swap(lhs, rhs);
                    }
                    next.push_back(op == Op::conj ? fm::conj(*lhs, *rhs) : fm::disj(*lhs, *rhs));
                }
            }
        }
        fresh_begin = previous;
        all.insert(all.end(), std::make_move_iterator(next.begin()), std::make_move_iterator(next.end()));
    }
    return all;
}

std::size_t count_formulas(std::size_t vocab_size, std::size_t max_depth) {
    std::size_t n = vocab_size + 2;
    for (std::size_t d = 1; d <= max_depth; ++d) {
        n = vocab_size + 2 + 2 * n + n * (n - 1);
    }
    return n;
}

}  // namespace polarity_mc
