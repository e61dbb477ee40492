#include "deltafan/cli.hpp"

#include "deltafan/circuitflip.hpp"
#include "deltafan/io.hpp"
#include "deltafan/smoothcert.hpp"
#include "deltafan/triangulate.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

namespace deltafan::cli {

namespace {

// Bad invocation or unreadable input: exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Session {
 public:
  Session(const RunConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

  const RunConfig& cfg() const { return cfg_; }

  std::string input(const std::optional<std::string>& flag, const char* what) const {
    if (flag) return *flag;
    if (!cfg_.inputs.empty()) return cfg_.inputs.front();
    throw UsageError(cfg_.command + ": missing " + what + " file");
  }
  std::string required(const std::optional<std::string>& flag, const char* name) const {
    if (!flag) throw UsageError(cfg_.command + ": --" + std::string(name) + " is required");
    return *flag;
  }

  template <class Parse>
  auto load(const std::string& path, Parse&& parse) const {
    std::string text;
    try {
      text = io::read_file(path);
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
    try {
      return parse(text);
    } catch (const io::FormatError& e) {
      throw UsageError(path + ": " + e.what());
    } catch (const DegeneratePolytopeError& e) {
      throw UsageError(path + ": " + e.what());
    }
  }
  LatticePolytope polytope(const std::string& path) const {
    return load(path, [](const std::string& t) { return io::parse_polytope(t); });
  }
  Fan fan(const std::string& path) const {
    return load(path, [](const std::string& t) { return io::parse_fan(t); });
  }
  FlipMove move(const std::string& path) const {
    return load(path, [](const std::string& t) { return io::parse_move(t); });
  }

  // Single result: to --output or stdout.
  void emit(const std::string& text) const {
    if (cfg_.output) {
      write_file(*cfg_.output, text);
    } else if (!cfg_.quiet) {
      out_ << text;
    }
  }

  // List result: one file per item under --output, else one JSON document.
  void emit_items(const std::vector<std::pair<std::string, io::Json>>& items, io::Json doc,
                  const std::function<std::string(std::size_t)>& summary) const {
    if (!cfg_.output) {
      emit(io::dump(doc) + "\n");
      return;
    }
    std::error_code ec;
    std::filesystem::create_directories(*cfg_.output, ec);
    if (ec) throw UsageError("cannot create directory " + *cfg_.output + ": " + ec.message());
    for (std::size_t i = 0; i < items.size(); ++i) {
      write_file((std::filesystem::path(*cfg_.output) / items[i].first).string(), io::dump(items[i].second) + "\n");
      say(items[i].first + ": " + summary(i));
    }
  }

  void say(const std::string& line) const {
    if (!cfg_.quiet) out_ << line << "\n";
  }
  std::ostream& err() const { return err_; }

 private:
  static void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) throw UsageError("cannot write " + path);
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

std::string numbered(const char* stem, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%04zu.json", stem, i);
  return buf;
}

const char* tf(bool b) { return b ? "true" : "false"; }

io::Json indices(const ConeIndices& c) { return io::encode(std::vector<ConeIndices>{c}).items.front(); }

int check_reflexive(const Session& s) {
  const auto p = s.polytope(s.input(std::nullopt, "polytope"));
  const bool refl = is_reflexive(p);
  s.say(std::string("reflexive: ") + tf(refl) + ", facets: " + std::to_string(p.facets().size()));
  return refl ? ok : verdict_false;
}

int dual_cmd(const Session& s) {
  s.emit(io::to_json(dual(s.polytope(s.input(std::nullopt, "polytope")))));
  return ok;
}

int lattice_points_cmd(const Session& s) {
  const auto p = s.polytope(s.input(std::nullopt, "polytope"));
  io::Json doc = io::Json::object();
  doc.add("dim", io::Json::number(static_cast<std::uint64_t>(p.dim())));
  doc.add("points", io::encode(p.points()));
  io::Json flags = io::Json::array();
  for (bool b : p.boundary_flags()) flags.items.push_back(io::Json::boolean(b));
  doc.add("boundary", std::move(flags));
  s.emit(io::dump(doc) + "\n");
  return ok;
}

int face_fan_cmd(const Session& s) {
  s.emit(io::to_json(face_fan(s.polytope(s.input(std::nullopt, "polytope")))));
  return ok;
}

int mpcp_cmd(const Session& s) {
  s.emit(io::to_json(mpcp(s.polytope(s.input(std::nullopt, "polytope")), s.cfg().seed)));
  return ok;
}

int validate_fan(const Session& s) {
  const auto f = s.fan(s.input(s.cfg().fan, "fan"));
  const auto p = s.polytope(s.required(s.cfg().polytope, "polytope"));
  const auto report = validate_delta_maximal(f, p);
  s.say(std::string("valid: ") + tf(report.verdict));
  for (const auto& v : report.violations) s.say(to_string(v.kind) + ": " + v.detail);
  return report.verdict ? ok : verdict_false;
}

int enumerate_fans(const Session& s) {
  const auto p = s.polytope(s.input(std::nullopt, "polytope"));
  std::vector<Fan> fans;
  bool truncated = false;
  try {
    fans = enumerate_delta_maximal(p, s.cfg().limit);
  } catch (const LimitExceededError& e) {
    fans = e.partial();
    truncated = true;
    s.err() << "enumerate-fans: more than " << s.cfg().limit << " fans; output truncated\n";
  }
  std::vector<std::pair<std::string, io::Json>> items;
  io::Json all = io::Json::array();
  std::vector<bool> projective;
  for (std::size_t i = 0; i < fans.size(); ++i) {
    items.emplace_back(numbered("fan", i), io::encode(fans[i]));
    all.items.push_back(io::encode(fans[i]));
    projective.push_back(fans[i].projective == Tristate::yes);
  }
  io::Json doc = io::Json::object();
  doc.add("count", io::Json::number(static_cast<std::uint64_t>(fans.size())));
  doc.add("truncated", io::Json::boolean(truncated));
  doc.add("fans", std::move(all));
  s.emit_items(items, std::move(doc), [&](std::size_t i) {
    return std::to_string(fans[i].max_cones().size()) + " max cones, projective: " + tf(projective[i]);
  });
  return truncated ? verdict_false : ok;
}

int maximal_cones(const Session& s) {
  const auto p = s.polytope(s.input(std::nullopt, "polytope"));
  io::Json cones = io::Json::array();
  for (const auto& c : enumerate_maximal_cones(p)) {
    io::Json e = io::Json::object();
    e.add("cone", indices(c.generators));
    e.add("common_facet", io::Json::boolean(c.in_common_face));
    cones.items.push_back(std::move(e));
  }
  io::Json doc = io::Json::object();
  doc.add("points", io::encode(p.nonzero_points()));
  doc.add("cones", std::move(cones));
  s.emit(io::dump(doc) + "\n");
  return ok;
}

int goodness(const Session& s) {
  const auto p = s.polytope(s.input(std::nullopt, "polytope"));
  const auto report = has_good_maximal_cones(p);
  io::Json cones = io::Json::array();
  for (const auto& r : report.results) {
    io::Json e = io::Json::object();
    e.add("cone", indices(r.cone));
    e.add("sum", io::encode(r.sum));
    e.add("r", io::Json::number(r.r));
    e.add("good", io::Json::boolean(r.good));
    cones.items.push_back(std::move(e));
  }
  io::Json doc = io::Json::object();
  doc.add("all_good", io::Json::boolean(report.all_good));
  doc.add("points", io::encode(p.nonzero_points()));
  doc.add("cones", std::move(cones));
  s.emit(io::dump(doc) + "\n");
  return report.all_good ? ok : verdict_false;
}

int certificate(const Session& s) {
  const auto f = s.fan(s.input(s.cfg().fan, "fan"));
  const auto p = s.polytope(s.required(s.cfg().polytope, "polytope"));
  const auto c = smoothness_certificate(f, p);
  s.emit(io::to_json(c));
  return c.smooth ? ok : verdict_false;
}

int find_flips_cmd(const Session& s) {
  const auto f = s.fan(s.input(s.cfg().fan, "fan"));
  const auto moves = s.cfg().polytope ? find_flips(f, s.polytope(*s.cfg().polytope)) : find_flips(f);
  std::vector<std::pair<std::string, io::Json>> items;
  io::Json all = io::Json::array();
  io::Json targets = io::Json::array();
  std::vector<bool> projective;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    items.emplace_back(numbered("move", i), io::encode(moves[i]));
    all.items.push_back(io::encode(moves[i]));
    projective.push_back(is_projective(flip(f, moves[i])));
    targets.items.push_back(io::Json::boolean(projective.back()));
  }
  io::Json doc = io::Json::object();
  doc.add("source_projective", io::Json::boolean(is_projective(f)));
  doc.add("moves", std::move(all));
  doc.add("target_projective", std::move(targets));
  s.emit_items(items, std::move(doc), [&](std::size_t i) {
    return "removes " + std::to_string(moves[i].removed.size()) + ", adds " +
           std::to_string(moves[i].added.size()) + ", target projective: " + tf(projective[i]);
  });
  return ok;
}

int flip_cmd(const Session& s) {
  const auto f = s.fan(s.input(s.cfg().fan, "fan"));
  const auto m = s.move(s.required(s.cfg().move, "move"));
  s.emit(io::to_json(flip(f, m)));
  return ok;
}

int refine(const Session& s) {
  const auto f = s.fan(s.input(s.cfg().fan, "fan"));
  const auto into = s.polytope(s.required(s.cfg().into, "into"));
  s.emit(io::to_json(refine_to(f, into, s.cfg().seed)));
  return ok;
}

int remark_witness_cmd(const Session& s) {
  const auto p = s.polytope(s.input(std::nullopt, "polytope"));
  const auto w = remark_witness(p);
  io::Json doc = io::Json::object();
  if (w) {
    io::Json e = io::Json::object();
    e.add("cone", indices(w->cone));
    e.add("generators", io::encode(w->generators));
    e.add("det", io::Json::number(w->det));
    doc.add("witness", std::move(e));
  } else {
    doc.add("witness", io::Json::null_value());
  }
  s.emit(io::dump(doc) + "\n");
  return w ? ok : verdict_false;
}

const std::map<std::string, int (*)(const Session&)>& table() {
  static const std::map<std::string, int (*)(const Session&)> t{
      {"check-reflexive", check_reflexive}, {"dual", dual_cmd},
      {"lattice-points", lattice_points_cmd}, {"face-fan", face_fan_cmd},
      {"mpcp", mpcp_cmd}, {"validate-fan", validate_fan},
      {"enumerate-fans", enumerate_fans}, {"maximal-cones", maximal_cones},
      {"goodness", goodness}, {"certificate", certificate},
      {"find-flips", find_flips_cmd}, {"flip", flip_cmd},
      {"refine", refine}, {"remark-witness", remark_witness_cmd},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, f] : table()) v.push_back(k);
    return v;
  }();
  return names;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto it = table().find(config.command);
  if (it == table().end()) {
    err << "error: unknown command '" << config.command << "'\n";
    return usage_error;
  }
  const Session session(config, out, err);
  try {
    return it->second(session);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::invalid_argument& e) {
    err << config.command << ": " << e.what() << "\n";
    return verdict_false;
  } catch (const std::domain_error& e) {
    err << config.command << ": " << e.what() << "\n";
    return verdict_false;
  } catch (const std::runtime_error& e) {
    err << config.command << ": " << e.what() << "\n";
    return verdict_false;
  }
}

}  // namespace deltafan::cli
