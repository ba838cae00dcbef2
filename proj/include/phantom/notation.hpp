#pragma once

#include <string_view>

#include "phantom/picard_lattice.hpp"

namespace phantom {

// Accepts linear combinations of H, E<i>, E (= sum of all E_i), K, F, D<i>,
// e.g. "7H-4E1-2E2-2E3", "57H-18*E", "-3F", "K-F+D1", and JSON arrays
// "[h,e1,...,e10]".
DivisorClass parse_divisor_class(std::string_view text);

}  // namespace phantom
