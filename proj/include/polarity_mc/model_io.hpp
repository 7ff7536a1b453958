#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polarity_mc/model.hpp"

namespace polarity_mc {

/// Malformed or invalid model file. `what()` reads
/// "<source>:<line>:<column>: <message>" for syntax errors and
/// "<source>: <json path>: <message>" for semantic ones.
class InputError : public std::runtime_error {
public:
    InputError(std::string source, std::size_t line, std::size_t column, const std::string& message);
    InputError(std::string source, std::string path, const std::string& message);

    const std::string& source() const { return source_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& path() const { return path_; }

private:
    std::string source_;
    std::size_t line_ = 0;
    std::size_t column_ = 0;
    std::string path_;
};

struct LoadedModel {
    LEModel model;
    std::vector<std::string> warnings;
};

/// Keys "A", "X", "I", "R_box", "R_dia", "V"; see the README for the format.
/// A valuation without "intent" is closed to (extent^up^down, extent^up),
/// with a warning when the extent was not already closed. Structural problems
/// throw InputError; I-compatibility is not checked here.
LoadedModel parse_model(std::string_view text, const std::string& source = "<input>");
LoadedModel load_model(const std::filesystem::path& path);

/// Keys "W", "R", "V".
KripkeModel parse_kripke(std::string_view text, const std::string& source = "<input>");
KripkeModel load_kripke(const std::filesystem::path& path);

/// Pretty-printed JSON with keys in the order A, X, I, R_box, R_dia, V.
std::string model_to_json(const LEModel& m);

std::string read_file(const std::filesystem::path& path);

}  // namespace polarity_mc
