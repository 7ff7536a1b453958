#include "polarity_mc/cli.hpp"

#include <algorithm>
#include <fstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polarity_mc/fol.hpp"
#include "polarity_mc/formula.hpp"
#include "polarity_mc/lattice.hpp"
#include "polarity_mc/model_io.hpp"
#include "polarity_mc/semantics.hpp"
#include "polarity_mc/simrel.hpp"
#include "polarity_mc/ultrapower.hpp"

namespace polarity_mc {

namespace {

using nlohmann::ordered_json;

/// Model-level failure that has already been described; maps to exit 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string model;
    std::string left;
    std::string right;
    std::string kripke;
    std::string formula;
    std::string sequent;
    std::string point;
    std::string side;
    std::string sort;
    std::string out;
    std::string dot;
    std::size_t k = 2;
    std::size_t k0 = 0;
    bool json = false;
};

LEModel load_valid(const std::string& path, std::ostream& err) {
    LoadedModel loaded = load_model(path);
    for (const auto& w : loaded.warnings) {
        err << "warning: " << w << "\n";
    }
    const ValidationReport report = validate_model(loaded.model);
    if (!report.ok()) {
        std::string message = path + ": not an LE-model";
        for (const auto& v : report.violations) {
            message += "\n  " + v.message;
        }
        throw UsageError(message);
    }
    return std::move(loaded.model);
}

Formula parse_option_formula(const std::string& text) {
    try {
        return parse_formula(text);
    } catch (const ParseError& e) {
        throw UsageError(std::string("formula:") + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw UsageError("cannot write '" + path + "'");
    }
    file << content;
}

std::string braces(const std::vector<std::string>& names) {
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i) {
        out += (i ? "," : "") + names[i];
    }
    return out + "}";
}

std::string pairs_text(const Relation& r, const Carrier& sources, const Carrier& targets) {
    std::string out = "{";
    bool first = true;
    for (const auto& [u, v] : r.pairs()) {
        out += (first ? "(" : ", (") + sources.name(u) + "," + targets.name(v) + ")";
        first = false;
    }
    return out + "}";
}

ordered_json pairs_json(const Relation& r, const Carrier& sources, const Carrier& targets) {
    ordered_json list = ordered_json::array();
    for (const auto& [u, v] : r.pairs()) {
        list.push_back({sources.name(u), targets.name(v)});
    }
    return list;
}

void print_relations(std::ostream& out, bool json, const char* first_label, const Relation& first,
                     const char* second_label, const Relation& second, const LEModel& m1, const LEModel& m2) {
    if (json) {
        ordered_json j;
        j[first_label] = pairs_json(first, m1.objects(), m2.objects());
        j[second_label] = pairs_json(second, m1.attributes(), m2.attributes());
        out << j.dump(2) << "\n";
    } else {
        out << first_label << " = " << pairs_text(first, m1.objects(), m2.objects()) << "\n";
        out << second_label << " = " << pairs_text(second, m1.attributes(), m2.attributes()) << "\n";
    }
}

int cmd_parse(const Options& o, std::ostream& out) {
    if (!o.sequent.empty()) {
        try {
            out << print_sequent(parse_sequent(o.sequent)) << "\n";
        } catch (const ParseError& e) {
            throw UsageError(std::string("sequent:") + e.what());
        }
        return 0;
    }
    if (o.formula.empty()) {
        throw UsageError("parse needs --formula or --sequent");
    }
    out << print_formula(*parse_option_formula(o.formula)) << "\n";
    return 0;
}

int cmd_sat(const Options& o, std::ostream& out, std::ostream& err) {
    const LEModel m = load_valid(o.model, err);
    const Formula phi = parse_option_formula(o.formula);
    bool result = false;
    if (o.side == "a") {
        result = satisfies_a(m, o.point, phi);
    } else if (o.side == "x") {
        result = satisfies_x(m, o.point, phi);
    } else {
        throw UsageError("--side must be 'a' or 'x'");
    }
    out << (result ? "true" : "false") << "\n";
    return result ? 0 : 1;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
    const LEModel m = load_valid(o.model, err);
    Sequent s;
    try {
        s = parse_sequent(o.sequent);
    } catch (const ParseError& e) {
        throw UsageError(std::string("sequent:") + e.what());
    }
    const bool result = models_sequent(m, s);
    out << (result ? "true" : "false") << "\n";
    return result ? 0 : 1;
}

int cmd_lattice(const Options& o, std::ostream& out, std::ostream& err) {
    const LEModel m = load_valid(o.model, err);
    const ConceptLattice l(m.polarity());
    if (!o.dot.empty()) {
        write_text_file(o.dot, hasse_dot(l, m.polarity()));
    }
    if (o.json) {
        ordered_json j;
        j["concepts"] = ordered_json::array();
        for (const auto& c : l.concepts()) {
            j["concepts"].push_back(
                {{"extent", m.objects().names_of(c.extent)}, {"intent", m.attributes().names_of(c.intent)}});
        }
        j["covers"] = ordered_json::array();
        for (const auto& [lower, upper] : l.covers()) {
            j["covers"].push_back({lower, upper});
        }
        out << j.dump(2) << "\n";
        return 0;
    }
    out << l.size() << (l.size() == 1 ? " concept" : " concepts") << "\n";
    for (std::size_t i = 0; i < l.size(); ++i) {
        out << "c" << i << ": " << braces(m.objects().names_of(l.at(i).extent)) << " "
            << braces(m.attributes().names_of(l.at(i).intent)) << "\n";
    }
    for (const auto& [lower, upper] : l.covers()) {
        out << "c" << lower << " < c" << upper << "\n";
    }
    return 0;
}

int cmd_sim(const Options& o, std::ostream& out, std::ostream& err, bool bisim) {
    const LEModel m1 = load_valid(o.left, err);
    const LEModel m2 = load_valid(o.right, err);
    const SimPair z = bisim ? greatest_bisimulation(m1, m2) : greatest_simulation(m1, m2);
    print_relations(out, o.json, "S", z.s, "T", z.t, m1, m2);
    return 0;
}

int cmd_bisimilar(const Options& o, std::ostream& out, std::ostream& err) {
    const LEModel m1 = load_valid(o.left, err);
    const LEModel m2 = load_valid(o.right, err);
    const Bisimilarity b = bisimilar_points(m1, m2);
    print_relations(out, o.json, "objects", b.objects, "attributes", b.attributes, m1, m2);
    return 0;
}

int cmd_hm_verify(const Options& o, std::ostream& out, std::ostream& err) {
    const LEModel m1 = load_valid(o.left, err);
    const LEModel m2 = load_valid(o.right, err);
    const HmReport report = hm_check(m1, m2);
    if (o.json) {
        ordered_json j;
        j["agreement"] = report.ok();
        j["discrepancies"] = ordered_json::array();
        for (const auto& d : report.discrepancies) {
            j["discrepancies"].push_back(
                {{"relation", d.relation}, {"left", d.left}, {"right", d.right}, {"detail", d.detail}});
        }
        out << j.dump(2) << "\n";
    } else if (report.ok()) {
        out << "agreement\n";
    } else {
        for (const auto& d : report.discrepancies) {
            out << d.relation << ": (" << d.left << "," << d.right << ") " << d.detail << "\n";
        }
    }
    return report.ok() ? 0 : 1;
}

int cmd_fi_extend(const Options& o, std::ostream& out, std::ostream& err) {
    const LEModel m = load_valid(o.model, err);
    const FilterIdealExtension ext = filter_ideal_extension(m);
    const std::string model_json = model_to_json(ext.model);

    ordered_json legend;
    legend["concepts"] = ordered_json::array();
    for (const auto& c : ext.lattice.concepts()) {
        legend["concepts"].push_back(
            {{"extent", m.objects().names_of(c.extent)}, {"intent", m.attributes().names_of(c.intent)}});
    }
    auto members = [](const ConceptSet& set) {
        std::vector<std::size_t> list;
        for (auto i = set.find_first(); i != ConceptSet::npos; i = set.find_next(i)) {
            list.push_back(i);
        }
        return list;
    };
    legend["filters"] = ordered_json::object();
    for (std::size_t f = 0; f < ext.filters.size(); ++f) {
        legend["filters"]["F" + std::to_string(f)] = members(ext.filters[f]);
    }
    legend["ideals"] = ordered_json::object();
    for (std::size_t j = 0; j < ext.ideals.size(); ++j) {
        legend["ideals"]["J" + std::to_string(j)] = members(ext.ideals[j]);
    }

    if (o.out.empty()) {
        out << model_json;
        return 0;
    }
    write_text_file(o.out, model_json);
    write_text_file(o.out + ".legend.json", legend.dump(2) + "\n");
    out << ext.filters.size() << " filters, " << ext.ideals.size() << " ideals written to " << o.out << "\n";
    return 0;
}

int cmd_translate(const Options& o, std::ostream& out) {
    const Formula phi = parse_option_formula(o.formula);
    if (o.sort == "g") {
        out << print_fol(*st_g(*phi)) << "\n";
    } else if (o.sort == "m") {
        out << print_fol(*st_m(*phi)) << "\n";
    } else {
        throw UsageError("--sort must be 'g' or 'm'");
    }
    return 0;
}

int cmd_lift(const Options& o, std::ostream& out) {
    const LEModel m = lift_kripke(load_kripke(o.kripke));
    const std::string text = model_to_json(m);
    if (o.out.empty()) {
        out << text;
    } else {
        write_text_file(o.out, text);
    }
    return 0;
}

int cmd_ultrapower(const Options& o, std::ostream& out, std::ostream& err) {
    const LEModel m = load_valid(o.model, err);
    const Ultrapower up = ultrapower_principal(m, o.k, o.k0);
    const std::vector<std::string> problems = verify_isomorphism(m, up);
    const std::string text = model_to_json(up.quotient);
    if (o.out.empty()) {
        out << text;
    } else {
        write_text_file(o.out, text);
    }
    for (std::size_t i = 0; i < up.object_iso.size(); ++i) {
        out << up.quotient.objects().name(i) << " -> " << m.objects().name(up.object_iso[i]) << "\n";
    }
    for (std::size_t j = 0; j < up.attribute_iso.size(); ++j) {
        out << up.quotient.attributes().name(j) << " -> " << m.attributes().name(up.attribute_iso[j]) << "\n";
    }
    for (const auto& p : problems) {
        out << "not an isomorphism: " << p << "\n";
    }
    return problems.empty() ? 0 : 1;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
    LoadedModel loaded = load_model(o.model);
    for (const auto& w : loaded.warnings) {
        err << "warning: " << w << "\n";
    }
    const ValidationReport report = validate_model(loaded.model);
    if (report.ok()) {
        out << "ok\n";
        return 0;
    }
    for (const auto& v : report.violations) {
        out << o.model << ": " << v.message << "\n";
    }
    return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Model checker for polarity-based semantics of non-distributive modal logic", "polarity-mc"};
    app.require_subcommand(1);
    Options o;

    auto* parse = app.add_subcommand("parse", "Parse and pretty-print a formula or sequent");
    parse->add_option("--formula", o.formula, "Formula");
    parse->add_option("--sequent", o.sequent, "Sequent 'lhs |- rhs'");

    auto* sat = app.add_subcommand("sat", "Decide a |- phi (--side a) or x >- phi (--side x)");
    sat->add_option("--model", o.model, "Model file")->required();
    sat->add_option("--point", o.point, "Object or attribute")->required();
    sat->add_option("--formula", o.formula, "Formula")->required();
    sat->add_option("--side", o.side, "a or x")->required();

    auto* check = app.add_subcommand("check", "Decide whether the model satisfies a sequent");
    check->add_option("--model", o.model, "Model file")->required();
    check->add_option("--sequent", o.sequent, "Sequent 'lhs |- rhs'")->required();

    auto* lattice = app.add_subcommand("lattice", "List the concepts of the model's polarity");
    lattice->add_option("--model", o.model, "Model file")->required();
    lattice->add_option("--dot", o.dot, "Write the Hasse diagram to this DOT file");
    lattice->add_flag("--json", o.json, "JSON output");

    std::vector<CLI::App*> pair_commands;
    for (const char* name : {"sim", "bisim", "bisimilar", "hm-verify"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--left", o.left, "Left model file")->required();
        sub->add_option("--right", o.right, "Right model file")->required();
        sub->add_flag("--json", o.json, "JSON output");
        pair_commands.push_back(sub);
    }
    pair_commands[0]->description("Greatest simulation from the left model to the right one");
    pair_commands[1]->description("Greatest bisimulation between the two models");
    pair_commands[2]->description("Points related by simulations in both directions");
    pair_commands[3]->description("Compare modal transfer with the greatest simulations");

    auto* fi = app.add_subcommand("fi-extend", "Filter-ideal extension of the model");
    fi->add_option("--model", o.model, "Model file")->required();
    fi->add_option("--out", o.out, "Output model file; a .legend.json sidecar is written next to it");

    auto* translate = app.add_subcommand("translate", "Standard translation into two-sorted first-order logic");
    translate->add_option("--formula", o.formula, "Formula")->required();
    translate->add_option("--sort", o.sort, "g or m")->required();

    auto* lift = app.add_subcommand("lift", "LE-model of a Kripke model");
    lift->add_option("--kripke", o.kripke, "Kripke model file")->required();
    lift->add_option("--out", o.out, "Output model file");

    auto* ultra = app.add_subcommand("ultrapower", "Quotient of a power by a principal ultrafilter");
    ultra->add_option("--model", o.model, "Model file")->required();
    ultra->add_option("--k", o.k, "Index set size")->check(CLI::PositiveNumber);
    ultra->add_option("--k0", o.k0, "Index generating the ultrafilter");
    ultra->add_option("--out", o.out, "Output model file");

    auto* validate = app.add_subcommand("validate", "Report I-compatibility and valuation problems");
    validate->add_option("--model", o.model, "Model file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (parse->parsed()) {
            return cmd_parse(o, out);
        }
        if (sat->parsed()) {
            return cmd_sat(o, out, err);
        }
        if (check->parsed()) {
            return cmd_check(o, out, err);
        }
        if (lattice->parsed()) {
            return cmd_lattice(o, out, err);
        }
        if (pair_commands[0]->parsed()) {
            return cmd_sim(o, out, err, false);
        }
        if (pair_commands[1]->parsed()) {
            return cmd_sim(o, out, err, true);
        }
        if (pair_commands[2]->parsed()) {
            return cmd_bisimilar(o, out, err);
        }
        if (pair_commands[3]->parsed()) {
            return cmd_hm_verify(o, out, err);
        }
        if (fi->parsed()) {
            return cmd_fi_extend(o, out, err);
        }
        if (translate->parsed()) {
            return cmd_translate(o, out);
        }
        if (lift->parsed()) {
            return cmd_lift(o, out);
        }
        if (ultra->parsed()) {
            return cmd_ultrapower(o, out, err);
        }
        if (validate->parsed()) {
            return cmd_validate(o, out, err);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace polarity_mc
