#include "polarity_mc/fol.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace polarity_mc {

namespace {

FolFormula make(FolNode node) {
    return std::make_shared<const FolNode>(std::move(node));
}

void require(const FolVar& v, VarSort sort, const char* where) {
    if (v.sort != sort) {
        throw std::invalid_argument(std::string(where) + ": variable '" + v.name + "' has the wrong sort");
    }
}

const char* sort_label(VarSort sort) {
    return sort == VarSort::g ? "G" : "M";
}

}  // namespace

namespace fol {

FolVar g(std::string name) {
    return {VarSort::g, std::move(name)};
}

FolVar m(std::string name) {
    return {VarSort::m, std::move(name)};
}

FolFormula equals(FolVar lhs, FolVar rhs) {
    if (lhs.sort != rhs.sort) {
        throw std::invalid_argument("equality between variables of different sorts");
    }
    return make({FolOp::equals, {}, std::move(lhs), std::move(rhs), nullptr, nullptr});
}

FolFormula pred_a(std::string predicate, FolVar g) {
    require(g, VarSort::g, "P_A");
    return make({FolOp::pred_a, std::move(predicate), std::move(g), {}, nullptr, nullptr});
}

FolFormula pred_x(std::string predicate, FolVar m) {
    require(m, VarSort::m, "P_X");
    return make({FolOp::pred_x, std::move(predicate), std::move(m), {}, nullptr, nullptr});
}

FolFormula incidence(FolVar g, FolVar m) {
    require(g, VarSort::g, "I");
    require(m, VarSort::m, "I");
    return make({FolOp::incidence, {}, std::move(g), std::move(m), nullptr, nullptr});
}

FolFormula rel_box(FolVar g, FolVar m) {
    require(g, VarSort::g, "R_box");
    require(m, VarSort::m, "R_box");
    return make({FolOp::rel_box, {}, std::move(g), std::move(m), nullptr, nullptr});
}

FolFormula rel_dia(FolVar m, FolVar g) {
    require(m, VarSort::m, "R_dia");
    require(g, VarSort::g, "R_dia");
    return make({FolOp::rel_dia, {}, std::move(m), std::move(g), nullptr, nullptr});
}

FolFormula negation(FolFormula body) {
    return make({FolOp::negation, {}, {}, {}, std::move(body), nullptr});
}

FolFormula conjunction(FolFormula lhs, FolFormula rhs) {
    return make({FolOp::conjunction, {}, {}, {}, std::move(lhs), std::move(rhs)});
}

FolFormula disjunction(FolFormula lhs, FolFormula rhs) {
    return make({FolOp::disjunction, {}, {}, {}, std::move(lhs), std::move(rhs)});
}

FolFormula implication(FolFormula lhs, FolFormula rhs) {
    return make({FolOp::implication, {}, {}, {}, std::move(lhs), std::move(rhs)});
}

FolFormula forall(FolVar bound, FolFormula body) {
    return make({FolOp::forall, {}, std::move(bound), {}, std::move(body), nullptr});
}

FolFormula exists(FolVar bound, FolFormula body) {
    return make({FolOp::exists, {}, std::move(bound), {}, std::move(body), nullptr});
}

}  // namespace fol

namespace {

bool is_atom(FolOp op) {
    return op <= FolOp::rel_dia;
}

bool has_two_arguments(FolOp op) {
    return op == FolOp::equals || op == FolOp::incidence || op == FolOp::rel_box || op == FolOp::rel_dia;
}

void collect_free(const FolNode& f, std::set<FolVar>& bound, std::set<FolVar>& out) {
    if (is_atom(f.op)) {
        if (!bound.count(f.first)) {
            out.insert(f.first);
        }
        if (has_two_arguments(f.op) && !bound.count(f.second)) {
            out.insert(f.second);
        }
        return;
    }
    if (f.op == FolOp::forall || f.op == FolOp::exists) {
        const bool shadowing = bound.count(f.first) > 0;
        bound.insert(f.first);
        collect_free(*f.left, bound, out);
        if (!shadowing) {
            bound.erase(f.first);
        }
        return;
    }
    collect_free(*f.left, bound, out);
    if (f.right) {
        collect_free(*f.right, bound, out);
    }
}

void print(const FolNode& f, std::string& out);

void print_operand(const FolNode& f, std::string& out) {
    if (is_atom(f.op)) {
        print(f, out);
    } else {
        out += '(';
        print(f, out);
        out += ')';
    }
}

void print(const FolNode& f, std::string& out) {
    switch (f.op) {
    case FolOp::equals:
        out += f.first.name + " = " + f.second.name;
        return;
    case FolOp::pred_a:
        out += "PA_" + f.predicate + "(" + f.first.name + ")";
        return;
    case FolOp::pred_x:
        out += "PX_" + f.predicate + "(" + f.first.name + ")";
        return;
    case FolOp::incidence:
        out += "I(" + f.first.name + "," + f.second.name + ")";
        return;
    case FolOp::rel_box:
        out += "Rbox(" + f.first.name + "," + f.second.name + ")";
        return;
    case FolOp::rel_dia:
        out += "Rdia(" + f.first.name + "," + f.second.name + ")";
        return;
    case FolOp::negation:
        out += "~";
        print_operand(*f.left, out);
        return;
    case FolOp::conjunction:
    case FolOp::disjunction:
    case FolOp::implication: {
        print_operand(*f.left, out);
        out += f.op == FolOp::conjunction ? " /\\ " : (f.op == FolOp::disjunction ? " \\/ " : " -> ");
        print_operand(*f.right, out);
        return;
    }
    case FolOp::forall:
    case FolOp::exists:
        out += f.op == FolOp::forall ? "forall " : "exists ";
        out += f.first.name + ":" + sort_label(f.first.sort) + ". (";
        print(*f.left, out);
        out += ")";
        return;
    }
}

struct Fresh {
    std::size_t g = 0;
    std::size_t m = 0;

    FolVar next_g() { return fol::g("g" + std::to_string(g++)); }
    FolVar next_m() { return fol::m("m" + std::to_string(m++)); }
};

FolFormula translate_m(const FormulaNode& phi, const FolVar& m, Fresh& fresh);

FolFormula translate_g(const FormulaNode& phi, const FolVar& g, Fresh& fresh) {
    switch (phi.op) {
    case Op::var:
        return fol::pred_a(phi.name, g);
    case Op::top:
        return fol::equals(g, g);
    case Op::bot: {
        FolVar m = fresh.next_m();
        return fol::forall(m, fol::incidence(g, m));
    }
    case Op::conj: {
        FolFormula lhs = translate_g(*phi.left, g, fresh);
        FolFormula rhs = translate_g(*phi.right, g, fresh);
        return fol::conjunction(std::move(lhs), std::move(rhs));
    }
    case Op::disj: {
        FolVar m = fresh.next_m();
        FolFormula lhs = translate_m(*phi.left, m, fresh);
        FolFormula rhs = translate_m(*phi.right, m, fresh);
        return fol::forall(m, fol::implication(fol::conjunction(std::move(lhs), std::move(rhs)), fol::incidence(g, m)));
    }
    case Op::box: {
        FolVar m = fresh.next_m();
        FolFormula body = translate_m(*phi.left, m, fresh);
        return fol::forall(m, fol::implication(std::move(body), fol::rel_box(g, m)));
    }
    case Op::dia: {
        FolVar m = fresh.next_m();
        FolFormula body = translate_m(phi, m, fresh);
        return fol::forall(m, fol::implication(std::move(body), fol::incidence(g, m)));
    }
    }
    throw std::logic_error("unhandled formula operator");
}

FolFormula translate_m(const FormulaNode& phi, const FolVar& m, Fresh& fresh) {
    switch (phi.op) {
    case Op::var:
        return fol::pred_x(phi.name, m);
    case Op::bot:
        return fol::equals(m, m);
    case Op::top: {
        FolVar g = fresh.next_g();
        return fol::forall(g, fol::incidence(g, m));
    }
    case Op::disj: {
        FolFormula lhs = translate_m(*phi.left, m, fresh);
        FolFormula rhs = translate_m(*phi.right, m, fresh);
        return fol::conjunction(std::move(lhs), std::move(rhs));
    }
    case Op::conj: {
        FolVar g = fresh.next_g();
        FolFormula lhs = translate_g(*phi.left, g, fresh);
        FolFormula rhs = translate_g(*phi.right, g, fresh);
        return fol::forall(g, fol::implication(fol::conjunction(std::move(lhs), std::move(rhs)), fol::incidence(g, m)));
    }
    case Op::dia: {
        FolVar g = fresh.next_g();
        FolFormula body = translate_g(*phi.left, g, fresh);
        return fol::forall(g, fol::implication(std::move(body), fol::rel_dia(m, g)));
    }
    case Op::box: {
        FolVar g = fresh.next_g();
        FolFormula body = translate_g(phi, g, fresh);
        return fol::forall(g, fol::implication(std::move(body), fol::incidence(g, m)));
    }
    }
    throw std::logic_error("unhandled formula operator");
}

bool is_generated_name(const std::string& name, char prefix) {
    return name.size() > 1 && name[0] == prefix &&
           std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::set<FolVar> free_variables(const FolNode& f) {
    std::set<FolVar> bound;
    std::set<FolVar> out;
    collect_free(f, bound, out);
    return out;
}

std::size_t size(const FolNode& f) {
    std::size_t n = 1;
    if (f.left) {
        n += size(*f.left);
    }
    if (f.right) {
        n += size(*f.right);
    }
    return n;
}

std::string print_fol(const FolNode& f) {
    std::string out;
    print(f, out);
    return out;
}

FolFormula st_g(const FormulaNode& phi, const std::string& g) {
    if (is_generated_name(g, 'g')) {
        throw std::invalid_argument("free variable '" + g + "' collides with generated bound variables");
    }
    Fresh fresh;
    return translate_g(phi, fol::g(g), fresh);
}

FolFormula st_m(const FormulaNode& phi, const std::string& m) {
    if (is_generated_name(m, 'm')) {
        throw std::invalid_argument("free variable '" + m + "' collides with generated bound variables");
    }
    Fresh fresh;
    return translate_m(phi, fol::m(m), fresh);
}

FolEvaluator::FolEvaluator(const LEModel& model, FolFormula formula) : model_(&model), formula_(std::move(formula)) {
    std::map<FolVar, std::size_t> scope;
    root_ = compile(*formula_, scope);
    env_.assign(slot_sorts_.size(), 0);
}

std::size_t FolEvaluator::domain(std::size_t slot) const {
    return slot_sorts_[slot] == VarSort::g ? model_->objects().size() : model_->attributes().size();
}

int FolEvaluator::compile(const FolNode& f, std::map<FolVar, std::size_t>& scope) {
    auto slot_of = [&](const FolVar& v) {
        if (auto it = scope.find(v); it != scope.end()) {
            return it->second;
        }
        auto [it, inserted] = free_slots_.emplace(v, slot_sorts_.size());
        if (inserted) {
            slot_sorts_.push_back(v.sort);
        }
        return it->second;
    };

    Compiled node;
    node.op = f.op;
    if (is_atom(f.op)) {
        node.slot1 = slot_of(f.first);
        node.free_slots.push_back(node.slot1);
        if (has_two_arguments(f.op)) {
            node.slot2 = slot_of(f.second);
            node.free_slots.push_back(node.slot2);
        }
        if (f.op == FolOp::pred_a || f.op == FolOp::pred_x) {
            node.predicate = &model_->value(f.predicate);
        }
    } else if (f.op == FolOp::forall || f.op == FolOp::exists) {
        node.slot1 = slot_sorts_.size();
        slot_sorts_.push_back(f.first.sort);
        auto previous = scope.find(f.first);
        std::optional<std::size_t> shadowed;
        if (previous != scope.end()) {
            shadowed = previous->second;
        }
        scope[f.first] = node.slot1;
        node.left = compile(*f.left, scope);
        if (shadowed) {
            scope[f.first] = *shadowed;
        } else {
            scope.erase(f.first);
        }
        for (std::size_t s : nodes_[node.left].free_slots) {
            if (s != node.slot1) {
                node.free_slots.push_back(s);
            }
        }
    } else {
        node.left = compile(*f.left, scope);
        node.free_slots = nodes_[node.left].free_slots;
        if (f.right) {
            node.right = compile(*f.right, scope);
            const auto& more = nodes_[node.right].free_slots;
            node.free_slots.insert(node.free_slots.end(), more.begin(), more.end());
        }
    }
    std::sort(node.free_slots.begin(), node.free_slots.end());
    node.free_slots.erase(std::unique(node.free_slots.begin(), node.free_slots.end()), node.free_slots.end());

    std::size_t table = 1;
    for (std::size_t s : node.free_slots) {
        table *= std::max<std::size_t>(domain(s), 1);
        if (table > 4096) {
            break;
        }
    }
    if (table <= 4096) {
        node.memo.assign(table, -1);
    }
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size() - 1);
}

bool FolEvaluator::eval_node(int index) {
    Compiled& node = nodes_[index];
    std::size_t key = 0;
    if (!node.memo.empty()) {
        for (std::size_t s : node.free_slots) {
            key = key * domain(s) + env_[s];
        }
        if (node.memo[key] >= 0) {
            return node.memo[key] != 0;
        }
    }

    bool result = false;
    switch (node.op) {
    case FolOp::equals:
        result = env_[node.slot1] == env_[node.slot2];
        break;
    case FolOp::pred_a:
        result = node.predicate->extent.test(env_[node.slot1]);
        break;
    case FolOp::pred_x:
        result = node.predicate->intent.test(env_[node.slot1]);
        break;
    case FolOp::incidence:
        result = model_->incidence().contains(env_[node.slot1], env_[node.slot2]);
        break;
    case FolOp::rel_box:
        result = model_->r_box().contains(env_[node.slot1], env_[node.slot2]);
        break;
    case FolOp::rel_dia:
        result = model_->r_dia().contains(env_[node.slot1], env_[node.slot2]);
        break;
    case FolOp::negation:
        result = !eval_node(node.left);
        break;
    case FolOp::conjunction:
        result = eval_node(node.left) && eval_node(nodes_[index].right);
        break;
    case FolOp::disjunction:
        result = eval_node(node.left) || eval_node(nodes_[index].right);
        break;
    case FolOp::implication:
        result = !eval_node(node.left) || eval_node(nodes_[index].right);
        break;
    case FolOp::forall:
    case FolOp::exists: {
        const bool universal = node.op == FolOp::forall;
        const std::size_t slot = node.slot1;
        const int body = node.left;
        const std::size_t saved = env_[slot];
        result = universal;
        for (std::size_t e = 0, n = domain(slot); e < n; ++e) {
            env_[slot] = e;
            if (eval_node(body) != universal) {
                result = !universal;
                break;
            }
        }
        env_[slot] = saved;
        break;
    }
    }
    if (!nodes_[index].memo.empty()) {
        nodes_[index].memo[key] = result ? 1 : 0;
    }
    return result;
}

bool FolEvaluator::eval(const SortedValuation& v) {
    for (const auto& [var, slot] : free_slots_) {
        const auto& names = var.sort == VarSort::g ? v.objects : v.attributes;
        const auto& other = var.sort == VarSort::g ? v.attributes : v.objects;
        auto it = names.find(var.name);
        if (it == names.end()) {
            if (other.count(var.name)) {
                throw ModelError("variable '" + var.name + "' is assigned an element of the wrong sort");
            }
            throw ModelError("unbound free variable '" + var.name + "'");
        }
        const Carrier& carrier = var.sort == VarSort::g ? model_->objects() : model_->attributes();
        auto index = carrier.find(it->second);
        if (!index) {
            if (model_->polarity().locate(it->second)) {
                throw ModelError("element '" + it->second + "' assigned to '" + var.name + "' has the wrong sort");
            }
            throw ModelError("unknown element '" + it->second + "'");
        }
        env_[slot] = *index;
    }
    return eval_node(root_);
}

std::vector<bool> FolEvaluator::eval_all(VarSort sort) {
    if (free_slots_.size() > 1 || (free_slots_.size() == 1 && free_slots_.begin()->first.sort != sort)) {
        throw ModelError("formula must have at most one free variable of the requested sort");
    }
    const std::size_t n = sort == VarSort::g ? model_->objects().size() : model_->attributes().size();
    std::vector<bool> result(n);
    for (std::size_t e = 0; e < n; ++e) {
        if (!free_slots_.empty()) {
            env_[free_slots_.begin()->second] = e;
        }
        result[e] = eval_node(root_);
    }
    return result;
}

bool fol_eval(const LEModel& model, const FolFormula& formula, const SortedValuation& v) {
    return FolEvaluator(model, formula).eval(v);
}

}  // namespace polarity_mc
