#include "billiards/polygon_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "billiards/error.hpp"

namespace billiards {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view token, std::size_t line) {
  token = trim(token);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    parse_fail(line, "bad number '" + std::string(token) + "'");
  }
  return value;
}

std::vector<Point> parse_points(std::string_view body, std::size_t line) {
  std::vector<Point> points;
  std::size_t pos = 0;
  while (true) {
    const auto open = body.find('(', pos);
    if (open == std::string_view::npos) {
      if (!trim(body.substr(pos)).empty()) parse_fail(line, "unexpected text after points");
      break;
    }
    if (!trim(body.substr(pos, open - pos)).empty()) parse_fail(line, "unexpected text before '('");
    const auto close = body.find(')', open);
    if (close == std::string_view::npos) parse_fail(line, "missing ')'");
    const std::string_view inner = body.substr(open + 1, close - open - 1);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos) parse_fail(line, "point needs two coordinates");
    points.push_back({parse_number(inner.substr(0, comma), line), parse_number(inner.substr(comma + 1), line)});
    pos = close + 1;
  }
  if (points.empty()) parse_fail(line, "no points");
  return points;
}

}  // namespace

std::string format_real(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

RawPolygon parse_polygon(std::string_view text) {
  RawPolygon raw;
  bool have_outer = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    ++line_no;
    start = end + 1;
    if (line.empty() || line.front() == '#') continue;

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) parse_fail(line_no, "expected 'key: value'");
    const std::string_view key = trim(line.substr(0, colon));
    const std::string_view body = line.substr(colon + 1);

    if (key == "outer") {
      if (have_outer) parse_fail(line_no, "duplicate outer record");
      raw.outer = parse_points(body, line_no);
      have_outer = true;
    } else if (key == "hole") {
      raw.holes.push_back(parse_points(body, line_no));
    } else if (key == "labels") {
      std::istringstream in{std::string(body)};
      std::string label;
      raw.labels.clear();
      while (in >> label) raw.labels.push_back(label);
    } else if (key == "anchor") {
      const std::string_view token = trim(body);
      std::size_t anchor = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), anchor);
      if (ec != std::errc() || ptr != token.data() + token.size()) parse_fail(line_no, "bad anchor index");
      raw.anchor = anchor;
    } else {
      parse_fail(line_no, "unknown record '" + std::string(key) + "'");
    }
  }
  if (!have_outer) throw Error(ErrorCode::ParseError, "missing outer record");
  return raw;
}

Polygon read_polygon_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return validate_polygon(parse_polygon(buffer.str()));
}

std::string format_polygon(const Polygon& polygon) {
  std::ostringstream out;
  auto write_ring = [&](const char* key, const std::vector<Point>& ring) {
    out << key << ':';
    for (const Point& p : ring) out << " (" << format_real(p.x) << ',' << format_real(p.y) << ')';
    out << '\n';
  };
  write_ring("outer", polygon.outer());
  for (const auto& hole : polygon.holes()) write_ring("hole", hole);
  out << "labels:";
  for (const Edge& e : polygon.edges()) out << ' ' << e.label;
  out << "\nanchor: " << polygon.anchor_vertex() << '\n';
  return out.str();
}

}  // namespace billiards
