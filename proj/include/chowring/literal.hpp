#pragma once

// Text syntax for cycles.
//
//   literal := term (("+" | "-") term)*
//   term    := [coef "*"] vertex ["^" k] vertex ["^" k] ...
//
// Tokens are whitespace-separated; the coefficient may be glued to the first
// vertex ("-3/2*00"). Cube vertices are bitstrings ("101"); product vertices
// are comma-separated index tuples ("0,2,1").

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chowring/chow.hpp"

namespace chowring {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split_tokens(std::string_view text);

/// C-basis cycle on I^d.
Cycle parse_cube_cycle(std::span<const std::string> tokens, int d);
/// Sum of products of F_v, expanded into the C basis on I^d.
Cycle parse_fourier_cycle(std::span<const std::string> tokens, int d);
/// Cycle on Gamma^d.
Cycle parse_product_cycle(std::span<const std::string> tokens, const Ambient& ambient);

std::string format_cycle(const Cycle& a);

}  // namespace chowring
