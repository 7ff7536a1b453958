#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polarity_mc/caps.hpp"
#include "polarity_mc/fol.hpp"
#include "polarity_mc/model.hpp"

namespace polarity_mc {

/// Quotient of the k-th power of a model by the principal ultrafilter
/// {K' subset of {0..k-1} | k0 in K'}.
struct Ultrapower {
    std::size_t k = 0;
    std::size_t k0 = 0;
    LEModel quotient;
    /// Class of every object (attribute) tuple, tuples numbered in mixed
    /// radix with component 0 least significant.
    std::vector<std::size_t> object_class;
    std::vector<std::size_t> attribute_class;
    /// Isomorphism onto the base model: class [s] goes to s(k0).
    std::vector<std::size_t> object_iso;
    std::vector<std::size_t> attribute_iso;
};

/// Component `i` of tuple number `tuple` over a carrier of size `base`.
std::size_t tuple_component(std::size_t tuple, std::size_t base, std::size_t i);

/// Throws std::invalid_argument unless k >= 1 and k0 < k, and CapError when
/// |A|^k or |X|^k exceeds `caps.power`.
Ultrapower ultrapower_principal(const LEModel& m, std::size_t k, std::size_t k0, const Caps& caps = caps_from_env());

/// Problems with the claimed isomorphism (not a bijection, or some relation
/// or valuation not preserved and reflected); empty when it is one.
std::vector<std::string> verify_isomorphism(const LEModel& base, const Ultrapower& up);

/// For every assignment of tuples to the free variables of `phi`, compares
/// truth in the quotient at the classes with membership of
/// {i | base satisfies phi at the i-th components} in the ultrafilter.
/// Returns one line per mismatch.
std::vector<std::string> los_violations(const LEModel& base, const Ultrapower& up, const FolFormula& phi);

}  // namespace polarity_mc
