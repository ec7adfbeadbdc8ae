#pragma once

// JSON documents for data, fans, actions and morphisms.
//
// Every document is an object carrying "kind" and "version" next to its
// payload fields.  Rationals are written as canonical strings ("3/2", "-4");
// on input, JSON integers are accepted as well, floating-point literals never.
// Output is deterministic: keys sorted, two-space indentation, trailing
// newline.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sphfan/cone.hpp"
#include "sphfan/error.hpp"
#include "sphfan/galois.hpp"
#include "sphfan/morphism.hpp"
#include "sphfan/rational.hpp"
#include "sphfan/spherical.hpp"

namespace sphfan::io {

using Json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

// Syntax errors carry line/column (1-based); structural errors carry the
// JSON path of the offending value.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  ParseError(const std::string& message, std::string path)
      : Error(path + ": " + message), path_(std::move(path)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& path() const { return path_; }

 private:
  std::size_t line_ = 0;
  std::size_t column_ = 0;
  std::string path_;
};

// ---------------------------------------------------------------------------
// Writing

inline Json rat_json(const Rat& r) { return r.str(); }

inline Json vec_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rat_json(x));
  return out;
}

inline Json vecs_json(const std::vector<Vec>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(vec_json(v));
  return out;
}

inline Json palette_json(const Palette& p) {
  Json out = Json::array();
  for (const auto& c : p) out.push_back(c);
  return out;
}

inline Json colored_cone_json(const ColoredCone& cc) {
  return Json{{"generators", vecs_json(cc.cone.generators())}, {"colors", palette_json(cc.palette)}};
}

inline Json envelope(const char* kind) { return Json{{"kind", kind}, {"version", kFormatVersion}}; }

inline Json to_json(const SphericalDatum& d) {
  Json j = envelope("datum");
  j["rank"] = d.rank();
  j["valuation_cone"] = Json{{"generators", vecs_json(d.valuation_cone().generators())}};
  Json colors = Json::array();
  for (const auto& c : d.colors()) colors.push_back(Json{{"name", c.name}, {"rho", vec_json(c.rho)}});
  j["colors"] = std::move(colors);
  return j;
}

inline Json to_json(const ColoredFan& fan) {
  Json j = envelope("fan");
  Json cones = Json::array();
  for (const auto& cc : fan.cones()) cones.push_back(colored_cone_json(cc));
  j["cones"] = std::move(cones);
  return j;
}

inline Json integer_json(const Rat& r) {
  if (r.numerator().fits_slong_p()) return static_cast<std::int64_t>(r.numerator().get_si());
  return r.str();
}

inline Json to_json(const GaloisAction& a) {
  Json j = envelope("action");
  Json elements = Json::array();
  for (const auto& g : a.elements()) {
    Json m = Json::array();
    for (std::size_t i = 0; i < g.matrix.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t k = 0; k < g.matrix.cols(); ++k) row.push_back(integer_json(g.matrix(i, k)));
      m.push_back(std::move(row));
    }
    Json perm = Json::object();
    for (const auto& [from, to] : g.color_perm) perm[from] = to;
    elements.push_back(Json{{"name", g.name}, {"matrix", std::move(m)}, {"color_perm", std::move(perm)}});
  }
  j["elements"] = std::move(elements);
  return j;
}

inline Json to_json(const FanMorphism& m) {
  Json j = envelope("morphism");
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.linear_map.rows(); ++i) rows.push_back(vec_json(m.linear_map.row(i)));
  j["matrix"] = std::move(rows);
  Json dom = Json::array();
  for (const auto& c : m.domain_colors) dom.push_back(c);
  j["domain_colors"] = std::move(dom);
  Json cmap = Json::object();
  for (const auto& [from, to] : m.color_map) cmap[from] = to;
  j["color_map"] = std::move(cmap);
  return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

template <typename T>
std::string serialize(const T& value) {
  return dump(to_json(value));
}

// ---------------------------------------------------------------------------
// Reading

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  // nlohmann reports the 1-based byte position of the offending character.
  const std::size_t end = byte == 0 ? 0 : std::min(byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// A JSON value plus the path used in error messages.
class Node {
 public:
  Node(const Json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const Json& value() const { return value_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, path_); }

  void expect_object(const std::set<std::string>& allowed) const {
    if (!value_.is_object()) fail("expected an object");
    for (const auto& [key, v] : value_.items())
      if (allowed.count(key) == 0) Node(v, path_ + "." + key).fail("unknown field");
  }

  Node field(const std::string& key) const {
    if (!value_.contains(key)) fail("missing field \"" + key + "\"");
    return Node(value_.at(key), path_ + "." + key);
  }

  std::vector<Node> elements() const {
    if (!value_.is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < value_.size(); ++i)
      out.emplace_back(value_[i], path_ + "[" + std::to_string(i) + "]");
    return out;
  }

  std::string string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  Rat rational() const {
    if (value_.is_number_float()) fail("floating-point literals are not allowed; write rationals as \"p/q\"");
    if (value_.is_number_unsigned()) return Rat(mpz_class(std::to_string(value_.get<std::uint64_t>())));
    if (value_.is_number_integer()) return Rat(mpz_class(std::to_string(value_.get<std::int64_t>())));
    if (!value_.is_string()) fail("expected a rational (string or integer)");
    try {
      return Rat::parse(value_.get<std::string>());
    } catch (const DomainError& e) {
      fail(e.what());
    }
  }

  Rat integer() const {
    const Rat r = rational();
    if (!r.is_integer()) fail("expected an integer");
    return r;
  }

  std::size_t natural() const {
    if (!value_.is_number_unsigned() && !(value_.is_number_integer() && value_.get<std::int64_t>() >= 0)) {
      fail("expected a non-negative integer");
    }
    return value_.get<std::size_t>();
  }

  Vec vector(std::size_t n) const {
    const auto items = elements();
    if (items.size() != n) fail("expected " + std::to_string(n) + " entries, got " + std::to_string(items.size()));
    Vec v;
    v.reserve(n);
    for (const auto& x : items) v.push_back(x.rational());
    return v;
  }

  std::vector<Vec> vectors(std::size_t n) const {
    std::vector<Vec> out;
    for (const auto& x : elements()) out.push_back(x.vector(n));
    return out;
  }

  std::map<std::string, std::string> string_map() const {
    if (!value_.is_object()) fail("expected an object");
    std::map<std::string, std::string> out;
    for (const auto& [key, v] : value_.items()) out.emplace(key, Node(v, path_ + "." + key).string());
    return out;
  }

 private:
  const Json& value_;
  std::string path_;
};

inline Json parse_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ParseError(e.what(), line, column);
  }
}

inline void check_envelope(const Node& root, const char* kind, std::set<std::string> fields) {
  fields.insert("kind");
  fields.insert("version");
  root.expect_object(fields);
  const Node k = root.field("kind");
  if (k.string() != kind) k.fail(std::string("expected kind \"") + kind + "\", got \"" + k.string() + "\"");
  const Node v = root.field("version");
  if (v.string() != kFormatVersion) v.fail("unsupported version \"" + v.string() + "\"");
}

inline Palette palette(const Node& node, const SphericalDatum& d) {
  Palette p;
  for (const auto& c : node.elements()) {
    const std::string name = c.string();
    if (!d.has_color(name)) c.fail("unknown color \"" + name + "\"");
    p.insert(name);
  }
  return p;
}

}  // namespace detail

// Kind tag of a document, without further validation.
inline std::string document_kind(std::string_view text) {
  const Json j = detail::parse_text(text);
  const detail::Node root(j, "$");
  if (!j.is_object()) root.fail("expected an object");
  return root.field("kind").string();
}

inline SphericalDatum parse_datum(std::string_view text) {
  const Json j = detail::parse_text(text);
  const detail::Node root(j, "$");
  detail::check_envelope(root, "datum", {"rank", "valuation_cone", "colors"});
  const std::size_t n = root.field("rank").natural();
  const auto vc = root.field("valuation_cone");
  vc.expect_object({"generators"});
  const Cone v = Cone::from_generators(n, vc.field("generators").vectors(n));
  std::vector<Color> colors;
  std::set<std::string> names;
  for (const auto& c : root.field("colors").elements()) {
    c.expect_object({"name", "rho"});
    std::string name = c.field("name").string();
    if (!names.insert(name).second) c.field("name").fail("duplicate color \"" + name + "\"");
    colors.push_back({std::move(name), c.field("rho").vector(n)});
  }
  return SphericalDatum(n, v, std::move(colors));
}

inline ColoredFan parse_fan(std::string_view text, const SphericalDatum& d) {
  const Json j = detail::parse_text(text);
  const detail::Node root(j, "$");
  detail::check_envelope(root, "fan", {"cones"});
  std::vector<ColoredCone> cones;
  for (const auto& c : root.field("cones").elements()) {
    c.expect_object({"generators", "colors"});
    cones.push_back({Cone::from_generators(d.rank(), c.field("generators").vectors(d.rank())),
                     detail::palette(c.field("colors"), d)});
  }
  if (cones.empty()) root.field("cones").fail("a colored fan must be nonempty");
  return ColoredFan(cones);
}

inline GaloisAction parse_action(std::string_view text, const SphericalDatum& d) {
  const Json j = detail::parse_text(text);
  const detail::Node root(j, "$");
  detail::check_envelope(root, "action", {"elements"});
  std::vector<GroupElement> elements;
  std::set<std::string> names;
  for (const auto& e : root.field("elements").elements()) {
    e.expect_object({"name", "matrix", "color_perm"});
    GroupElement g;
    g.name = e.field("name").string();
    if (!names.insert(g.name).second) e.field("name").fail("duplicate element name \"" + g.name + "\"");
    const auto rows = e.field("matrix").elements();
    if (rows.size() != d.rank()) e.field("matrix").fail("expected " + std::to_string(d.rank()) + " rows");
    g.matrix = Mat(d.rank(), d.rank());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto entries = rows[i].elements();
      if (entries.size() != d.rank()) rows[i].fail("expected " + std::to_string(d.rank()) + " entries");
      for (std::size_t k = 0; k < entries.size(); ++k) g.matrix(i, k) = entries[k].integer();
    }
    const auto perm_node = e.field("color_perm");
    g.color_perm = perm_node.string_map();
    for (const auto& [from, to] : g.color_perm) {
      if (!d.has_color(from)) perm_node.fail("unknown color \"" + from + "\"");
      if (!d.has_color(to)) perm_node.fail("unknown color \"" + to + "\"");
    }
    elements.push_back(std::move(g));
  }
  if (elements.empty()) root.field("elements").fail("a group action needs at least one element");
  return GaloisAction(d, std::move(elements));
}

inline FanMorphism parse_morphism(std::string_view text, const SphericalDatum& source, const SphericalDatum& target) {
  const Json j = detail::parse_text(text);
  const detail::Node root(j, "$");
  detail::check_envelope(root, "morphism", {"matrix", "domain_colors", "color_map"});
  const auto rows = root.field("matrix").elements();
  if (rows.size() != target.rank()) root.field("matrix").fail("expected " + std::to_string(target.rank()) + " rows");
  Mat m(target.rank(), source.rank());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Vec r = rows[i].vector(source.rank());
    for (std::size_t k = 0; k < r.size(); ++k) m(i, k) = r[k];
  }
  std::set<std::string> domain;
  for (const auto& c : root.field("domain_colors").elements()) {
    const std::string name = c.string();
    if (!source.has_color(name)) c.fail("unknown color \"" + name + "\"");
    domain.insert(name);
  }
  const auto cmap_node = root.field("color_map");
  auto cmap = cmap_node.string_map();
  for (const auto& [from, to] : cmap) {
    if (domain.count(from) == 0) cmap_node.fail("color \"" + from + "\" is not in domain_colors");
    if (!target.has_color(to)) cmap_node.fail("unknown color \"" + to + "\"");
  }
  for (const auto& c : domain)
    if (cmap.count(c) == 0) cmap_node.fail("color \"" + c + "\" in domain_colors has no image");
  return FanMorphism{source, target, std::move(m), std::move(domain), std::move(cmap)};
}

}  // namespace sphfan::io
