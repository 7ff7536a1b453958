#include "polarity_mc/model_io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace polarity_mc {

using nlohmann::json;
using nlohmann::ordered_json;

InputError::InputError(std::string source, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      source_(std::move(source)), line_(line), column_(column) {}

InputError::InputError(std::string source, std::string path, const std::string& message)
    : std::runtime_error(source + ": " + path + ": " + message), source_(std::move(source)), path_(std::move(path)) {}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(path.string(), "", "cannot open file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

namespace {

json parse_json(std::string_view text, const std::string& source) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string message = e.what();
        if (auto pos = message.find("syntax error"); pos != std::string::npos) {
            message = message.substr(pos);
        }
        throw InputError(source, line, column, message);
    }
}

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& path, const std::string& message) const {
        throw InputError(source_, path, message);
    }

    void require_object(const json& j, const std::string& path) const {
        if (!j.is_object()) {
            fail(path, "expected an object");
        }
    }

    void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) const {
        for (const auto& [key, value] : j.items()) {
            bool known = false;
            for (const char* k : keys) {
                known = known || key == k;
            }
            if (!known) {
                fail(path.empty() ? key : path + "." + key, "unknown key");
            }
        }
    }

    std::vector<std::string> names(const json& j, const std::string& path) const {
        if (!j.is_array()) {
            fail(path, "expected an array of identifiers");
        }
        std::vector<std::string> out;
        std::set<std::string> seen;
        for (std::size_t i = 0; i < j.size(); ++i) {
            const std::string item_path = path + "[" + std::to_string(i) + "]";
            if (!j[i].is_string() || j[i].get<std::string>().empty()) {
                fail(item_path, "expected a non-empty string");
            }
            std::string name = j[i].get<std::string>();
            if (!seen.insert(name).second) {
                fail(item_path, "duplicate identifier '" + name + "'");
            }
            out.push_back(std::move(name));
        }
        return out;
    }

    std::size_t element(const json& j, const std::string& path, const Carrier& carrier, const Carrier* other,
                        const char* sort) const {
        if (!j.is_string()) {
            fail(path, "expected an identifier");
        }
        const std::string name = j.get<std::string>();
        if (auto index = carrier.find(name)) {
            return *index;
        }
        if (other != nullptr && other->find(name)) {
            fail(path, "'" + name + "' is not " + sort + " (sort mismatch)");
        }
        fail(path, "unknown " + std::string(sort) + " '" + name + "'");
    }

    ElementSet subset(const json& j, const std::string& path, const Carrier& carrier, const Carrier* other,
                      const char* sort) const {
        if (!j.is_array()) {
            fail(path, "expected an array of identifiers");
        }
        ElementSet out = carrier.none();
        for (std::size_t i = 0; i < j.size(); ++i) {
            out.set(element(j[i], path + "[" + std::to_string(i) + "]", carrier, other, sort));
        }
        return out;
    }

    Relation pairs(const json& root, const char* key, const Carrier& sources, const Carrier& targets,
                   const char* source_sort, const char* target_sort) const {
        Relation r(sources.size(), targets.size());
        if (!root.contains(key)) {
            return r;
        }
        const json& j = root.at(key);
        if (!j.is_array()) {
            fail(key, "expected an array of pairs");
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            const std::string path = std::string(key) + "[" + std::to_string(i) + "]";
            if (!j[i].is_array() || j[i].size() != 2) {
                fail(path, std::string("expected a pair [") + source_sort + ", " + target_sort + "]");
            }
            const std::size_t u = element(j[i][0], path + "[0]", sources, &targets, source_sort);
            const std::size_t v = element(j[i][1], path + "[1]", targets, &sources, target_sort);
            r.insert(u, v);
        }
        return r;
    }

private:
    std::string source_;
};

}  // namespace

LoadedModel parse_model(std::string_view text, const std::string& source) {
    const json root = parse_json(text, source);
    const Reader reader(source);
    reader.require_object(root, "(root)");
    reader.allow_keys(root, "", {"A", "X", "I", "R_box", "R_dia", "V"});
    if (!root.contains("A")) {
        reader.fail("A", "missing object list");
    }
    if (!root.contains("X")) {
        reader.fail("X", "missing attribute list");
    }
    Carrier objects(reader.names(root.at("A"), "A"));
    Carrier attributes(reader.names(root.at("X"), "X"));
    for (std::size_t x = 0; x < attributes.size(); ++x) {
        if (objects.find(attributes.name(x))) {
            reader.fail("X[" + std::to_string(x) + "]",
                        "identifier '" + attributes.name(x) + "' is declared both as object and attribute");
        }
    }

    Relation incidence = reader.pairs(root, "I", objects, attributes, "object", "attribute");
    Relation r_box = reader.pairs(root, "R_box", objects, attributes, "object", "attribute");
    Relation r_dia = reader.pairs(root, "R_dia", attributes, objects, "attribute", "object");
    Polarity polarity(objects, attributes, std::move(incidence));

    LoadedModel loaded;
    Valuation valuation;
    if (root.contains("V")) {
        const json& v = root.at("V");
        reader.require_object(v, "V");
        for (const auto& [name, entry] : v.items()) {
            const std::string path = "V." + name;
            bool valid_name = !name.empty() && name[0] >= 'a' && name[0] <= 'z';
            for (char c : name) {
                valid_name = valid_name && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
            }
            if (!valid_name || name == "top" || name == "bot" || name == "box" || name == "dia") {
                reader.fail(path, "'" + name + "' is not a valid variable name");
            }
            reader.require_object(entry, path);
            reader.allow_keys(entry, path, {"extent", "intent"});
            if (!entry.contains("extent")) {
                reader.fail(path + ".extent", "missing extent");
            }
            ElementSet extent = reader.subset(entry.at("extent"), path + ".extent", objects, &attributes, "object");
            Concept c;
            if (entry.contains("intent")) {
                c.extent = std::move(extent);
                c.intent = reader.subset(entry.at("intent"), path + ".intent", attributes, &objects, "attribute");
            } else {
                c = polarity.concept_from_extent(extent);
                if (c.extent != extent) {
                    loaded.warnings.push_back(source + ": " + path +
                                              ": extent is not Galois-closed; using its closure");
                }
            }
            valuation.emplace(name, std::move(c));
        }
    }
    loaded.model = LEModel(std::move(polarity), std::move(r_box), std::move(r_dia), std::move(valuation));
    return loaded;
}

LoadedModel load_model(const std::filesystem::path& path) {
    return parse_model(read_file(path), path.string());
}

KripkeModel parse_kripke(std::string_view text, const std::string& source) {
    const json root = parse_json(text, source);
    const Reader reader(source);
    reader.require_object(root, "(root)");
    reader.allow_keys(root, "", {"W", "R", "V"});
    if (!root.contains("W")) {
        reader.fail("W", "missing world list");
    }
    Carrier worlds(reader.names(root.at("W"), "W"));
    Relation accessibility = reader.pairs(root, "R", worlds, worlds, "world", "world");
    std::map<std::string, ElementSet> valuation;
    if (root.contains("V")) {
        const json& v = root.at("V");
        reader.require_object(v, "V");
        for (const auto& [name, entry] : v.items()) {
            valuation.emplace(name, reader.subset(entry, "V." + name, worlds, nullptr, "world"));
        }
    }
    return KripkeModel(std::move(worlds), std::move(accessibility), std::move(valuation));
}

KripkeModel load_kripke(const std::filesystem::path& path) {
    return parse_kripke(read_file(path), path.string());
}

std::string model_to_json(const LEModel& m) {
    ordered_json out;
    out["A"] = m.objects().names();
    out["X"] = m.attributes().names();
    auto pairs = [](const Relation& r, const Carrier& sources, const Carrier& targets) {
        ordered_json list = ordered_json::array();
        for (const auto& [u, v] : r.pairs()) {
            list.push_back({sources.name(u), targets.name(v)});
        }
        return list;
    };
    out["I"] = pairs(m.incidence(), m.objects(), m.attributes());
    out["R_box"] = pairs(m.r_box(), m.objects(), m.attributes());
    out["R_dia"] = pairs(m.r_dia(), m.attributes(), m.objects());
    ordered_json v = ordered_json::object();
    for (const auto& [name, c] : m.valuation()) {
        v[name] = {{"extent", m.objects().names_of(c.extent)}, {"intent", m.attributes().names_of(c.intent)}};
    }
    out["V"] = std::move(v);
    return out.dump(2) + "\n";
}

}  // namespace polarity_mc
