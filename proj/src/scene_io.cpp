#include "raogeo/scene_io.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>
#include <vector>

#include "raogeo/errors.hpp"

namespace raogeo {
namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start + 1)});
  }
  return tokens;
}

std::optional<PointLabel> parse_label(std::string_view s) {
  if (s == "A0") return PointLabel::A0;
  if (s == "B0") return PointLabel::B0;
  if (s == "C0") return PointLabel::C0;
  if (s == "C1") return PointLabel::C1;
  return std::nullopt;
}

double parse_coord(const Token& tok, int line_no) {
  double value = 0.0;
  const char* begin = tok.text.data();
  const char* end = begin + tok.text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("non-numeric coordinate '" + std::string(tok.text) + "'",
                     line_no, tok.column);
  return value;
}

}  // namespace

Scene parse_scene(std::string_view text) {
  std::array<std::optional<Eigen::Vector3d>, 4> points;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    ++line_no;
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);

    std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) {
      if (nl == text.size()) break;
      continue;
    }

    // Accept both "A0 = x y z" and "A0= x y z" style by splitting a '='
    // glued to a token.
    std::vector<Token> split;
    for (const Token& t : tokens) {
      std::string_view s = t.text;
      int col = t.column;
      while (true) {
        const std::size_t eq = s.find('=');
        if (eq == std::string_view::npos) {
          if (!s.empty()) split.push_back({s, col});
          break;
        }
        if (eq > 0) split.push_back({s.substr(0, eq), col});
        split.push_back({s.substr(eq, 1), col + static_cast<int>(eq)});
        s = s.substr(eq + 1);
        col += static_cast<int>(eq) + 1;
      }
    }

    if (split.size() < 2 || split[1].text != "=")
      throw ParseError("expected 'LABEL = x y z'", line_no, split[0].column);
    const auto label = parse_label(split[0].text);
    if (!label)
      throw ParseError("unknown point label '" + std::string(split[0].text) + "'",
                       line_no, split[0].column);
    if (split.size() != 5) {
      throw ParseError("expected exactly 3 coordinates for " +
                           std::string(split[0].text),
                       line_no, split.size() > 2 ? split[2].column : split[1].column);
    }
    const Eigen::Vector3d p(parse_coord(split[2], line_no),
                            parse_coord(split[3], line_no),
                            parse_coord(split[4], line_no));
    auto& slot = points[static_cast<std::size_t>(*label)];
    if (slot)
      throw ParseError("duplicate label " + label_name(*label), line_no,
                       split[0].column);
    slot = p;

    if (nl == text.size()) break;
  }

  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i])
      throw ParseError("missing point " + label_name(static_cast<PointLabel>(i)),
                       line_no, 1);
  }
  return make_scene(*points[0], *points[1], *points[2], *points[3]);
}

std::string serialize_scene(const Scene& s) {
  std::string out;
  char buf[128];
  for (const ScenePoint* p : {&s.a0, &s.b0, &s.c0, &s.c1}) {
    std::snprintf(buf, sizeof(buf), "%s = %.17g %.17g %.17g\n",
                  label_name(p->label).c_str(), p->coords[0], p->coords[1],
                  p->coords[2]);
    out += buf;
  }
  return out;
}

}  // namespace raogeo
