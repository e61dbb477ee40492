// JSON file formats for polytopes, fans, flip moves and certificates. Integers
// are unbounded decimal literals; output is deterministic byte for byte.

#ifndef DELTAFAN_IO_HPP
#define DELTAFAN_IO_HPP

#include "deltafan/circuitflip.hpp"
#include "deltafan/fan.hpp"
#include "deltafan/polytope.hpp"
#include "deltafan/smoothcert.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace deltafan {

/// FNV-1a 64 of the fan's canonical serialization.
std::uint64_t fan_id(const Fan& f);

namespace io {

/// Syntax errors carry a 1-based line and column; schema errors also carry
/// the JSON path of the offending value.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line, std::size_t column, std::string path);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& path() const { return path_; }

 private:
  std::size_t line_, column_;
  std::string path_;
};

/// A JSON document with numbers kept as their decimal text.
struct Json {
  enum class Type { null, boolean, number, string, array, object };
  Type type = Type::null;
  std::string text;  // number literal or string contents
  bool flag = false;
  std::vector<Json> items;
  std::vector<std::pair<std::string, Json>> fields;
  std::size_t line = 0, column = 0;  // where the value ends in the source

  static Json null_value() { return Json{}; }
  static Json boolean(bool b);
  static Json number(const Integer& x);
  static Json number(std::uint64_t x);
  static Json string(std::string s);
  static Json array(std::vector<Json> items = {});
  static Json object();
  Json& add(std::string key, Json value);  // objects keep insertion order
  const Json* find(std::string_view key) const;
};

Json parse_json(std::string_view text);

/// Two-space indentation; arrays holding only scalars stay on one line.
std::string dump(const Json& value);

Json encode(const IntVector& v);
Json encode(const std::vector<IntVector>& vs);
Json encode(const std::vector<ConeIndices>& cones);
Json encode(const LatticePolytope& p);  // {dim, vertices}
Json encode(const Fan& f);              // {dim, points, max_cones}
Json encode(const FlipMove& m);         // {circuit: {support, coeffs}, removed, added, wall_cones}
Json encode(const SmoothnessCertificate& c);

LatticePolytope decode_polytope(const Json& doc);
Fan decode_fan(const Json& doc);
FlipMove decode_move(const Json& doc);
SmoothnessCertificate decode_certificate(const Json& doc);

LatticePolytope parse_polytope(std::string_view text);
Fan parse_fan(std::string_view text);
FlipMove parse_move(std::string_view text);
SmoothnessCertificate parse_certificate(std::string_view text);

std::string to_json(const LatticePolytope& p);
std::string to_json(const Fan& f);
std::string to_json(const FlipMove& m);
std::string to_json(const SmoothnessCertificate& c);

std::string hex_id(std::uint64_t id);

/// Whole file contents; std::runtime_error when unreadable.
std::string read_file(const std::string& path);

}  // namespace io
}  // namespace deltafan

#endif  // DELTAFAN_IO_HPP
