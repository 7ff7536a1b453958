#include "polarity_mc/caps.hpp"

#include <charconv>
#include <cstdlib>

namespace polarity_mc {

Caps parse_caps(std::string_view text, Caps base) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const std::string_view item = text.substr(pos, end - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("malformed cap entry '" + std::string(item) + "'");
        }
        const std::string_view key = item.substr(0, eq);
        const std::string_view digits = item.substr(eq + 1);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || value == 0) {
            throw std::invalid_argument("cap '" + std::string(key) + "' needs a positive integer");
        }
        if (key == "lattice") {
            base.lattice = value;
        } else if (key == "filters") {
            base.filters = value;
        } else if (key == "power") {
            base.power = value;
        } else {
            throw std::invalid_argument("unknown cap '" + std::string(key) + "'");
        }
        pos = end + 1;
    }
    return base;
}

Caps caps_from_env() {
    const char* value = std::getenv("POLARITY_MC_CAPS");
    if (value == nullptr || *value == '\0') {
        return {};
    }
    return parse_caps(value);
}

}  // namespace polarity_mc
