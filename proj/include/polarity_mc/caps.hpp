#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polarity_mc {

class CapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Size limits for the exponential constructions.
struct Caps {
    std::size_t lattice = 64;   // |A| + |X| for concept enumeration
    std::size_t filters = 12;   // concepts for filter/ideal enumeration
    std::size_t power = 4096;   // |A|^k and |X|^k for ultrapowers
};

/// Parses "lattice=NN,filters=NN,power=NN"; missing keys keep their defaults.
/// Throws std::invalid_argument on malformed input.
Caps parse_caps(std::string_view text, Caps base = {});

/// Defaults overridden by the POLARITY_MC_CAPS environment variable.
Caps caps_from_env();

}  // namespace polarity_mc
