#include "deltafan/io.hpp"

#include <rapidjson/error/en.h>
#include <rapidjson/reader.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace deltafan {

std::uint64_t fan_id(const Fan& f) {
  const std::string s = io::to_json(f);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace io {

namespace {

std::string located(const std::string& what, std::size_t line, std::size_t column, const std::string& path) {
  std::string out = "line " + std::to_string(line) + ", column " + std::to_string(column);
  if (!path.empty()) out += ", at " + path;
  return out + ": " + what;
}

// Tracks line and column of a monotonically advancing byte offset.
class Position {
 public:
  explicit Position(std::string_view text) : text_(text) {}
  std::pair<std::size_t, std::size_t> at(std::size_t offset) {
    for (; seen_ < offset && seen_ < text_.size(); ++seen_) {
      if (text_[seen_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
    return {line_, col_};
  }

 private:
  std::string_view text_;
  std::size_t seen_ = 0, line_ = 1, col_ = 1;
};

class Builder : public rapidjson::BaseReaderHandler<rapidjson::UTF8<>, Builder> {
 public:
  Builder(const rapidjson::StringStream& stream, Position& pos) : stream_(stream), pos_(pos) {}

  bool Null() { return put(Json{}); }
  bool Bool(bool b) { return put(Json::boolean(b)); }
  bool RawNumber(const char* s, rapidjson::SizeType n, bool) {
    Json v;
    v.type = Json::Type::number;
    v.text.assign(s, n);
    return put(std::move(v));
  }
  bool String(const char* s, rapidjson::SizeType n, bool) {
    if (const auto it = shielded_.find(stream_.Tell()); it != shielded_.end()) {
      Json v;
      v.type = Json::Type::number;
      v.text = it->second;
      return put(std::move(v));
    }
    return put(Json::string(std::string(s, n)));
  }
  bool StartObject() {
    open_.push_back(Json::object());
    return true;
  }
  bool Key(const char* s, rapidjson::SizeType n, bool) {
    if (shielded_.count(stream_.Tell())) {
      error_ = "Missing a name for object member.";
      return false;
    }
    std::string k(s, n);
    for (const auto& [existing, v] : open_.back().fields) {
      if (existing == k) {
        error_ = "duplicate field \"" + k + "\"";
        return false;
      }
    }
    keys_.push_back(std::move(k));
    return true;
  }
  bool EndObject(rapidjson::SizeType) { return close(); }
  bool StartArray() {
    open_.push_back(Json::array());
    return true;
  }
  bool EndArray(rapidjson::SizeType) { return close(); }

  Json root;
  std::string error_;  // set when the handler stops the parse
  std::map<std::size_t, std::string> shielded_;  // start offset -> integer text

 private:
  bool close() {
    Json v = std::move(open_.back());
    open_.pop_back();
    return put(std::move(v));
  }
  bool put(Json v) {
    std::tie(v.line, v.column) = pos_.at(stream_.Tell());
    if (open_.empty()) {
      root = std::move(v);
    } else if (open_.back().type == Json::Type::array) {
      open_.back().items.push_back(std::move(v));
    } else {
      open_.back().fields.emplace_back(std::move(keys_.back()), std::move(v));
      keys_.pop_back();
    }
    return true;
  }

  const rapidjson::StringStream& stream_;
  Position& pos_;
  std::vector<Json> open_;
  std::vector<std::string> keys_;
};

// RapidJSON refuses integers beyond double range even in raw-number mode.
// Long integer tokens are swapped for same-length string placeholders, so
// offsets stay exact, and the builder restores them by start offset. The
// reader works on a local stream copy inside strings, so Tell() in the
// handler still points at the opening quote.
std::map<std::size_t, std::string> shield_long_integers(std::string& buf) {
  constexpr std::size_t kLong = 19;
  std::map<std::size_t, std::string> out;
  bool in_string = false, escaped = false;
  for (std::size_t i = 0; i < buf.size();) {
    const char c = buf[i];
    if (in_string) {
      if (escaped) escaped = false;
      else if (c == '\\') escaped = true;
      else if (c == '"') in_string = false;
      ++i;
      continue;
    }
    if (c == '"') {
      in_string = true;
      ++i;
      continue;
    }
    if (c != '-' && !std::isdigit(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t j = i + (c == '-');
    while (j < buf.size() && std::isdigit(static_cast<unsigned char>(buf[j]))) ++j;
    const bool integer = j == buf.size() || (buf[j] != '.' && buf[j] != 'e' && buf[j] != 'E');
    const bool canonical = buf[i + (c == '-')] != '0';
    if (integer && canonical && j - i - (c == '-') >= kLong) {
      out.emplace(i, buf.substr(i, j - i));
      buf[i] = '"';
      std::fill(buf.begin() + static_cast<std::ptrdiff_t>(i) + 1, buf.begin() + static_cast<std::ptrdiff_t>(j) - 1, '0');
      buf[j - 1] = '"';
    }
    i = j;
  }
  return out;
}

bool is_scalar(const Json& v) { return v.type != Json::Type::array && v.type != Json::Type::object; }

void escape(const std::string& s, std::string& out) {
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

void write(const Json& v, std::size_t indent, std::string& out) {
  const std::string pad(2 * indent + 2, ' ');
  switch (v.type) {
    case Json::Type::null: out += "null"; return;
    case Json::Type::boolean: out += v.flag ? "true" : "false"; return;
    case Json::Type::number: out += v.text; return;
    case Json::Type::string: escape(v.text, out); return;
    case Json::Type::array: {
      if (v.items.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(v.items.begin(), v.items.end(), is_scalar);
      out += flat ? "[" : "[\n";
      for (std::size_t i = 0; i < v.items.size(); ++i) {
        if (!flat) out += pad;
        write(v.items[i], indent + 1, out);
        if (i + 1 < v.items.size()) out += flat ? ", " : ",\n";
      }
      if (!flat) out += "\n" + std::string(2 * indent, ' ');
      out += "]";
      return;
    }
    case Json::Type::object: {
      if (v.fields.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      for (std::size_t i = 0; i < v.fields.size(); ++i) {
        out += pad;
        escape(v.fields[i].first, out);
        out += ": ";
        write(v.fields[i].second, indent + 1, out);
        if (i + 1 < v.fields.size()) out += ",";
        out += "\n";
      }
      out += std::string(2 * indent, ' ') + "}";
      return;
    }
  }
}

// ---- schema decoding ----

[[noreturn]] void fail(const Json& v, const std::string& path, const std::string& what) {
  throw FormatError(what, v.line, v.column, path);
}

const char* type_name(Json::Type t) {
  switch (t) {
    case Json::Type::null: return "null";
    case Json::Type::boolean: return "a boolean";
    case Json::Type::number: return "a number";
    case Json::Type::string: return "a string";
    case Json::Type::array: return "an array";
    case Json::Type::object: return "an object";
  }
  return "a value";
}

void expect(const Json& v, Json::Type t, const std::string& path) {
  if (v.type != t) fail(v, path, std::string("expected ") + type_name(t) + ", found " + type_name(v.type));
}

// Object fields by name; unknown names are rejected, missing required ones too.
class Fields {
 public:
  Fields(const Json& obj, std::string path, std::initializer_list<const char*> allowed)
      : obj_(obj), path_(std::move(path)) {
    expect(obj, Json::Type::object, path_);
    for (const auto& [k, v] : obj.fields) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
        fail(v, path_ + "." + k, "unknown field \"" + k + "\"");
    }
  }
  const Json& at(const char* key) const {
    if (const Json* v = obj_.find(key)) return *v;
    fail(obj_, path_, std::string("missing field \"") + key + "\"");
  }
  const Json* optional(const char* key) const { return obj_.find(key); }
  std::string path(const char* key) const { return path_ + "." + key; }

 private:
  const Json& obj_;
  std::string path_;
};

Integer as_integer(const Json& v, const std::string& path) {
  expect(v, Json::Type::number, path);
  const auto& s = v.text;
  const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
  const bool digits = s.size() > start && std::all_of(s.begin() + start, s.end(), [](char c) { return c >= '0' && c <= '9'; });
  if (!digits) fail(v, path, "expected an integer, found " + s);
  return Integer(s);
}

std::size_t as_size(const Json& v, const std::string& path) {
  const Integer x = as_integer(v, path);
  if (x < 0 || x > Integer(std::numeric_limits<std::uint32_t>::max())) fail(v, path, "expected a nonnegative index");
  return x.convert_to<std::size_t>();
}

bool as_bool(const Json& v, const std::string& path) {
  expect(v, Json::Type::boolean, path);
  return v.flag;
}

std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

IntVector as_vector(const Json& v, const std::string& path, std::size_t dim) {
  expect(v, Json::Type::array, path);
  if (v.items.size() != dim)
    fail(v, path, "expected " + std::to_string(dim) + " coordinates, found " + std::to_string(v.items.size()));
  std::vector<Integer> c;
  for (std::size_t i = 0; i < v.items.size(); ++i) c.push_back(as_integer(v.items[i], at_index(path, i)));
  return IntVector(std::move(c));
}

std::vector<IntVector> as_vectors(const Json& v, const std::string& path, std::size_t dim) {
  expect(v, Json::Type::array, path);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < v.items.size(); ++i) out.push_back(as_vector(v.items[i], at_index(path, i), dim));
  return out;
}

ConeIndices as_indices(const Json& v, const std::string& path) {
  expect(v, Json::Type::array, path);
  ConeIndices out;
  for (std::size_t i = 0; i < v.items.size(); ++i) out.push_back(as_size(v.items[i], at_index(path, i)));
  return out;
}

std::vector<ConeIndices> as_cones(const Json& v, const std::string& path) {
  expect(v, Json::Type::array, path);
  std::vector<ConeIndices> out;
  for (std::size_t i = 0; i < v.items.size(); ++i) out.push_back(as_indices(v.items[i], at_index(path, i)));
  return out;
}

std::size_t as_dim(const Json& v, const std::string& path) {
  const Integer d = as_integer(v, path);
  if (d < 1 || d > Integer(LatticePolytope::kMaxDim))
    fail(v, path, "dimension must be between 1 and " + std::to_string(LatticePolytope::kMaxDim));
  return d.convert_to<std::size_t>();
}

// Library constructors reject inconsistent data with std::invalid_argument;
// report those against the document root. A flat polytope keeps its own type.
template <class F>
auto guarded(const Json& doc, F&& build) {
  try {
    return build();
  } catch (const FormatError&) {
    throw;
  } catch (const DegeneratePolytopeError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(doc, "$", e.what());
  }
}

}  // namespace

FormatError::FormatError(const std::string& what, std::size_t line, std::size_t column, std::string path)
    : std::runtime_error(located(what, line, column, path)), line_(line), column_(column), path_(std::move(path)) {}

Json Json::boolean(bool b) {
  Json v;
  v.type = Type::boolean;
  v.flag = b;
  return v;
}

Json Json::number(const Integer& x) {
  Json v;
  v.type = Type::number;
  v.text = x.str();
  return v;
}

Json Json::number(std::uint64_t x) {
  Json v;
  v.type = Type::number;
  v.text = std::to_string(x);
  return v;
}

Json Json::string(std::string s) {
  Json v;
  v.type = Type::string;
  v.text = std::move(s);
  return v;
}

Json Json::array(std::vector<Json> items) {
  Json v;
  v.type = Type::array;
  v.items = std::move(items);
  return v;
}

Json Json::object() {
  Json v;
  v.type = Type::object;
  return v;
}

Json& Json::add(std::string key, Json value) {
  fields.emplace_back(std::move(key), std::move(value));
  return *this;
}

const Json* Json::find(std::string_view key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return &v;
  return nullptr;
}

Json parse_json(std::string_view text) {
  std::string buf(text);
  rapidjson::StringStream stream(buf.c_str());
  Position pos(text);
  Builder builder(stream, pos);
  builder.shielded_ = shield_long_integers(buf);
  rapidjson::Reader reader;
  const auto result = reader.Parse<rapidjson::kParseNumbersAsStringsFlag>(stream, builder);
  if (result.IsError()) {
    Position at(text);
    const auto [line, col] = at.at(result.Offset());
    std::string what = rapidjson::GetParseError_En(result.Code());
    if (!builder.error_.empty()) what = builder.error_;
    throw FormatError(what, line, col, "");
  }
  return std::move(builder.root);
}

std::string dump(const Json& value) {
  std::string out;
  write(value, 0, out);
  return out;
}

Json encode(const IntVector& v) {
  Json a = Json::array();
  for (const auto& c : v) a.items.push_back(Json::number(c));
  return a;
}

Json encode(const std::vector<IntVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.items.push_back(encode(v));
  return a;
}

Json encode(const std::vector<ConeIndices>& cones) {
  Json a = Json::array();
  for (const auto& c : cones) {
    Json row = Json::array();
    for (auto i : c) row.items.push_back(Json::number(static_cast<std::uint64_t>(i)));
    a.items.push_back(std::move(row));
  }
  return a;
}

Json encode(const LatticePolytope& p) {
  Json o = Json::object();
  o.add("dim", Json::number(static_cast<std::uint64_t>(p.dim())));
  o.add("vertices", encode(p.vertices()));
  return o;
}

Json encode(const Fan& f) {
  Json o = Json::object();
  o.add("dim", Json::number(static_cast<std::uint64_t>(f.dim())));
  o.add("points", encode(f.points()));
  o.add("max_cones", encode(f.max_cones()));
  return o;
}

Json encode(const FlipMove& m) {
  Json circuit = Json::object();
  circuit.add("support", encode(std::vector<ConeIndices>{m.circuit.support}).items.front());
  circuit.add("coeffs", encode(IntVector(m.circuit.coeffs)));
  Json o = Json::object();
  o.add("circuit", std::move(circuit));
  o.add("removed", encode(m.removed));
  o.add("added", encode(m.added));
  o.add("wall_cones", encode(m.wall_cones));
  return o;
}

Json encode(const SmoothnessCertificate& c) {
  Json o = Json::object();
  o.add("fan_id", Json::string(hex_id(c.fan_id)));
  o.add("smooth", Json::boolean(c.smooth));
  Json cones = Json::array();
  for (const auto& e : c.cones) {
    Json x = Json::object();
    x.add("cone", encode(std::vector<ConeIndices>{e.cone}).items.front());
    x.add("class", Json::string(to_string(e.cls)));
    x.add("sum", encode(e.sum));
    x.add("r", Json::number(e.r));
    x.add("witness", e.witness ? encode(*e.witness) : Json::null_value());
    cones.items.push_back(std::move(x));
  }
  o.add("cones", std::move(cones));
  return o;
}

LatticePolytope decode_polytope(const Json& doc) {
  const Fields f(doc, "$", {"dim", "vertices"});
  const std::size_t d = as_dim(f.at("dim"), f.path("dim"));
  const auto vertices = as_vectors(f.at("vertices"), f.path("vertices"), d);
  return guarded(doc, [&] { return LatticePolytope::hull(vertices); });
}

Fan decode_fan(const Json& doc) {
  const Fields f(doc, "$", {"dim", "points", "max_cones"});
  const std::size_t d = as_dim(f.at("dim"), f.path("dim"));
  auto points = as_vectors(f.at("points"), f.path("points"), d);
  auto cones = as_cones(f.at("max_cones"), f.path("max_cones"));
  return guarded(doc, [&] { return Fan(d, std::move(points), std::move(cones)); });
}

FlipMove decode_move(const Json& doc) {
  const Fields f(doc, "$", {"circuit", "removed", "added", "wall_cones"});
  const Fields c(f.at("circuit"), f.path("circuit"), {"support", "coeffs"});
  FlipMove m;
  m.circuit.support = as_indices(c.at("support"), c.path("support"));
  const Json& coeffs = c.at("coeffs");
  expect(coeffs, Json::Type::array, c.path("coeffs"));
  if (coeffs.items.size() != m.circuit.support.size())
    fail(coeffs, c.path("coeffs"), "coeffs and support differ in length");
  if (!std::is_sorted(m.circuit.support.begin(), m.circuit.support.end()))
    fail(c.at("support"), c.path("support"), "support must be ascending");
  for (std::size_t i = 0; i < coeffs.items.size(); ++i) {
    Integer b = as_integer(coeffs.items[i], at_index(c.path("coeffs"), i));
    const auto p = m.circuit.support[i];
    (b > 0 ? m.circuit.plus : b < 0 ? m.circuit.minus : m.circuit.zero).push_back(p);
    m.circuit.coeffs.push_back(std::move(b));
  }
  m.removed = as_cones(f.at("removed"), f.path("removed"));
  m.added = as_cones(f.at("added"), f.path("added"));
  m.wall_cones = as_cones(f.at("wall_cones"), f.path("wall_cones"));
  return m;
}

SmoothnessCertificate decode_certificate(const Json& doc) {
  const Fields f(doc, "$", {"fan_id", "smooth", "cones"});
  SmoothnessCertificate out;
  const Json& id = f.at("fan_id");
  expect(id, Json::Type::string, f.path("fan_id"));
  const bool hex = id.text.size() == 16 && std::all_of(id.text.begin(), id.text.end(), [](char ch) {
                     return (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'f');
                   });
  if (!hex) fail(id, f.path("fan_id"), "expected 16 lowercase hex digits");
  out.fan_id = std::stoull(id.text, nullptr, 16);
  out.smooth = as_bool(f.at("smooth"), f.path("smooth"));
  const Json& cones = f.at("cones");
  expect(cones, Json::Type::array, f.path("cones"));
  for (std::size_t i = 0; i < cones.items.size(); ++i) {
    const std::string path = at_index(f.path("cones"), i);
    const Fields e(cones.items[i], path, {"cone", "class", "sum", "r", "witness"});
    CertificateEntry entry;
    entry.cone = as_indices(e.at("cone"), e.path("cone"));
    const Json& cls = e.at("class");
    expect(cls, Json::Type::string, e.path("class"));
    const auto parsed = cone_class_from_string(cls.text);
    if (!parsed) fail(cls, e.path("class"), "unknown cone class \"" + cls.text + "\"");
    entry.cls = *parsed;
    const Json& sum = e.at("sum");
    expect(sum, Json::Type::array, e.path("sum"));
    entry.sum = as_vector(sum, e.path("sum"), sum.items.size());
    entry.r = as_integer(e.at("r"), e.path("r"));
    const Json& w = e.at("witness");
    if (w.type != Json::Type::null) entry.witness = as_vector(w, e.path("witness"), entry.sum.dim());
    out.cones.push_back(std::move(entry));
  }
  return out;
}

LatticePolytope parse_polytope(std::string_view text) { return decode_polytope(parse_json(text)); }
Fan parse_fan(std::string_view text) { return decode_fan(parse_json(text)); }
FlipMove parse_move(std::string_view text) { return decode_move(parse_json(text)); }
SmoothnessCertificate parse_certificate(std::string_view text) { return decode_certificate(parse_json(text)); }

std::string to_json(const LatticePolytope& p) { return dump(encode(p)) + "\n"; }
std::string to_json(const Fan& f) { return dump(encode(f)) + "\n"; }
std::string to_json(const FlipMove& m) { return dump(encode(m)) + "\n"; }
std::string to_json(const SmoothnessCertificate& c) { return dump(encode(c)) + "\n"; }

std::string hex_id(std::uint64_t id) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(id));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace io
}  // namespace deltafan
