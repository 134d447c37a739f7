#include "chowring/literal.hpp"

#include <charconv>
#include <functional>
#include <sstream>

#include "chowring/fourier.hpp"

namespace chowring {

namespace {

struct RawTerm {
  Rational coef = 1;
  std::vector<std::pair<std::string, std::uint32_t>> vertices;
};

std::vector<RawTerm> parse_terms(std::span<const std::string> tokens) {
  if (tokens.empty()) throw ParseError("empty cycle literal");
  std::vector<RawTerm> terms(1);
  Rational sign = 1;
  for (std::string token : tokens) {
    if (token == "+" || token == "-") {
      if (terms.back().vertices.empty()) throw ParseError("operator '" + token + "' without a preceding term");
      terms.emplace_back();
      sign = token == "-" ? -1 : 1;
      terms.back().coef = sign;
      continue;
    }
    RawTerm& term = terms.back();
    if (auto star = token.find('*'); star != std::string::npos) {
      if (!term.vertices.empty()) throw ParseError("coefficient '" + token + "' must start its term");
      try {
        term.coef = sign * parse_rational(token.substr(0, star));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
      token.erase(0, star + 1);
      if (token.empty()) continue;
    }
    std::uint32_t mult = 1;
    if (auto caret = token.find('^'); caret != std::string::npos) {
      const std::string_view exp = std::string_view(token).substr(caret + 1);
      auto [p, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), mult);
      if (ec != std::errc{} || p != exp.data() + exp.size() || mult == 0)
        throw ParseError("bad multiplicity in '" + token + "'");
      token.erase(caret);
    }
    if (token.empty()) throw ParseError("missing vertex");
    term.vertices.emplace_back(token, mult);
  }
  if (terms.back().vertices.empty()) throw ParseError("cycle literal ends without a term");
  return terms;
}

// Builds the cycle from terms, turning each vertex token into a degree-one cycle.
Cycle assemble(const Ambient& ambient, std::span<const RawTerm> terms,
               const std::function<Cycle(const std::string&)>& vertex) {
  Cycle total(ambient, 0);
  bool first = true;
  for (const auto& term : terms) {
    Cycle product = Cycle::one(ambient);
    for (const auto& [token, mult] : term.vertices) {
      const Cycle v = vertex(token);
      for (std::uint32_t k = 0; k < mult; ++k) product = product * v;
    }
    product *= term.coef;
    int deg = 0;
    for (const auto& [token, mult] : term.vertices) deg += static_cast<int>(mult);
    if (first) {
      total = Cycle(ambient, deg);
      first = false;
    } else if (deg != total.degree()) {
      throw DegreeError("cycle literal mixes degrees " + std::to_string(total.degree()) + " and " +
                        std::to_string(deg));
    }
    total += product;
  }
  return total;
}

ProductVertex parse_index_tuple(const std::string& token) {
  ProductVertex p;
  std::string_view rest = token;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view part = rest.substr(0, comma);
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
      throw ParseError("bad product vertex '" + token + "'");
    p.coords.push_back(value);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return p;
}

}  // namespace

std::vector<std::string> split_tokens(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> out;
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

Cycle parse_cube_cycle(std::span<const std::string> tokens, int d) {
  const Ambient cube = Ambient::cube(d);
  const auto terms = parse_terms(tokens);
  return assemble(cube, terms, [&](const std::string& token) {
    try {
      return Cycle::vertex(cube, parse_bitstring(token, d).bits);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  });
}

Cycle parse_fourier_cycle(std::span<const std::string> tokens, int d) {
  const Ambient cube = Ambient::cube(d);
  const auto terms = parse_terms(tokens);
  return assemble(cube, terms, [&](const std::string& token) {
    CubeVertex v;
    try {
      v = parse_bitstring(token, d);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    return f_to_c(FourierCycle::basis(d, v));
  });
}

Cycle parse_product_cycle(std::span<const std::string> tokens, const Ambient& ambient) {
  if (ambient.is_cube()) return parse_cube_cycle(tokens, ambient.dimension());
  const auto terms = parse_terms(tokens);
  return assemble(ambient, terms, [&](const std::string& token) {
    const ProductVertex p = parse_index_tuple(token);
    try {
      return Cycle::vertex(ambient, ambient.encode(p));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  });
}

std::string format_cycle(const Cycle& a) {
  if (a.is_zero()) return "0";
  const Ambient& ambient = a.ambient();
  const int d = ambient.dimension();
  auto vertex_text = [&](VertexId v) {
    if (ambient.is_cube()) return to_bitstring(CubeVertex{static_cast<std::uint32_t>(v)}, d);
    std::string s;
    const auto p = ambient.decode(v);
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(p.coords[i]);
    }
    return s;
  };
  std::string out;
  bool first = true;
  for (const auto& [m, q] : a.sorted_terms()) {
    if (!first) out += " + ";
    first = false;
    if (q != 1 || m.degree() == 0) out += to_string(q) + (m.degree() ? "*" : "");
    bool first_factor = true;
    for (const auto& f : m.factors()) {
      if (!first_factor) out += ' ';
      first_factor = false;
      out += vertex_text(f.vertex);
      if (f.multiplicity > 1) out += '^' + std::to_string(f.multiplicity);
    }
  }
  return out;
}

}  // namespace chowring
