#include "raogeo/arcspec.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "raogeo/errors.hpp"

namespace raogeo {
namespace {

struct Token {
  std::string_view text;
  int column;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    tokens.push_back({s.substr(start, i - start), static_cast<int>(start + 1)});
  }
  return tokens;
}

double number(const Token& tok) {
  double v = 0.0;
  const char* begin = tok.text.data();
  const char* end = begin + tok.text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("expected a number, got '" + std::string(tok.text) + "'", 1,
                     tok.column);
  return v;
}

}  // namespace

Arc parse_arc_spec(std::string_view spec) {
  const std::vector<Token> tokens = tokenize(spec);
  if (tokens.empty()) throw ParseError("empty arc descriptor", 1, 1);
  const std::string_view kind = tokens[0].text;

  if (kind == "line") {
    if (tokens.size() != 5)
      throw ParseError("line needs 4 numbers: x0 y0 x1 y1", 1, tokens[0].column);
    return make_line({number(tokens[1]), number(tokens[2])},
                     {number(tokens[3]), number(tokens[4])});
  }
  if (kind == "circle") {
    if (tokens.size() != 6)
      throw ParseError("circle needs 5 numbers: cx cy r t0 t1", 1, tokens[0].column);
    return make_circle({number(tokens[1]), number(tokens[2])}, number(tokens[3]),
                       number(tokens[4]), number(tokens[5]));
  }
  if (kind == "polyline") {
    if (tokens.size() < 5 || tokens.size() % 2 == 0)
      throw ParseError("polyline needs an even count of at least 4 numbers", 1,
                       tokens[0].column);
    std::vector<std::complex<double>> pts;
    for (std::size_t i = 1; i + 1 < tokens.size(); i += 2)
      pts.emplace_back(number(tokens[i]), number(tokens[i + 1]));
    return make_polyline(std::move(pts));
  }
  throw ParseError("unknown arc kind '" + std::string(kind) +
                       "' (expected line, circle, or polyline)",
                   1, tokens[0].column);
}

ComplexMap builtin_map(std::string_view name) {
  ComplexMap map;
  if (name == "identity") {
    map.eval = [](std::complex<double> z) { return z; };
    map.deriv = [](std::complex<double>) { return std::complex<double>(1.0, 0.0); };
    return map;
  }
  if (name == "square") {
    map.eval = [](std::complex<double> z) { return z * z; };
    map.deriv = [](std::complex<double> z) { return 2.0 * z; };
    return map;
  }
  if (name == "exp") {
    map.eval = [](std::complex<double> z) { return std::exp(z); };
    map.deriv = [](std::complex<double> z) { return std::exp(z); };
    return map;
  }
  if (name == "reciprocal") {
    map.eval = [](std::complex<double> z) { return 1.0 / z; };
    map.deriv = [](std::complex<double> z) { return -1.0 / (z * z); };
    return map;
  }
  if (name == "conjugate") {
    // Anti-conformal; no complex derivative anywhere.
    map.eval = [](std::complex<double> z) { return std::conj(z); };
    return map;
  }
  throw DomainError("unknown map '" + std::string(name) +
                    "' (expected identity, square, exp, reciprocal, or conjugate)");
}

}  // namespace raogeo
