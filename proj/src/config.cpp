#include "mdem/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mdem/errors.hpp"

namespace mdem {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

struct Value {
  enum class Kind { string, number, boolean, array };
  Kind kind = Kind::number;
  std::string str;
  double num = 0.0;
  bool flag = false;
  std::vector<Value> items;
  int line = 0;
};

using Table = std::map<std::string, Value>;

struct Document {
  std::map<std::string, Table> tables;
  std::map<std::string, std::vector<Table>> arrays;
};

bool bare_key(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
      return false;
  return true;
}

bool bare_path(const std::string& s) {
  size_t start = 0;
  while (true) {
    const size_t dot = s.find('.', start);
    const std::string part =
        dot == std::string::npos ? s.substr(start) : s.substr(start, dot - start);
    if (!bare_key(part)) return false;
    if (dot == std::string::npos) return true;
    start = dot + 1;
  }
}

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

class ValueParser {
 public:
  ValueParser(const std::string& text, int line) : s_(text), line_(line) {}

  Value parse() {
    Value v = parse_value();
    skip_ws();
    if (pos_ != s_.size())
      fail(where() + "trailing characters after value: '" + s_.substr(pos_) + "'");
    return v;
  }

 private:
  std::string where() const { return "line " + std::to_string(line_) + ": "; }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  Value parse_value() {
    skip_ws();
    if (pos_ >= s_.size()) fail(where() + "missing value");
    const char c = s_[pos_];
    if (c == '"') return parse_string();
    if (c == '[') return parse_array();
    if (s_.compare(pos_, 4, "true") == 0 && at_boundary(pos_ + 4)) {
      pos_ += 4;
      Value v;
      v.kind = Value::Kind::boolean;
      v.flag = true;
      v.line = line_;
      return v;
    }
    if (s_.compare(pos_, 5, "false") == 0 && at_boundary(pos_ + 5)) {
      pos_ += 5;
      Value v;
      v.kind = Value::Kind::boolean;
      v.line = line_;
      return v;
    }
    return parse_number();
  }

  bool at_boundary(size_t p) const {
    if (p >= s_.size()) return true;
    const char c = s_[p];
    return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ']';
  }

  Value parse_string() {
    Value v;
    v.kind = Value::Kind::string;
    v.line = line_;
    ++pos_;  // opening quote
    while (pos_ < s_.size() && s_[pos_] != '"') {
      char c = s_[pos_];
      if (c == '\\') {
        if (pos_ + 1 >= s_.size()) fail(where() + "dangling escape in string");
        const char e = s_[pos_ + 1];
        if (e == '"' || e == '\\')
          c = e;
        else
          fail(where() + std::string("unsupported escape '\\") + e + "'");
        ++pos_;
      }
      v.str += c;
      ++pos_;
    }
    if (pos_ >= s_.size()) fail(where() + "unterminated string");
    ++pos_;  // closing quote
    return v;
  }

  Value parse_array() {
    Value v;
    v.kind = Value::Kind::array;
    v.line = line_;
    ++pos_;  // '['
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == ']') {
      ++pos_;
      return v;
    }
    while (true) {
      v.items.push_back(parse_value());
      skip_ws();
      if (pos_ >= s_.size()) fail(where() + "unterminated array");
      if (s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (s_[pos_] == ']') {
        ++pos_;
        return v;
      }
      fail(where() + "expected ',' or ']' in array");
    }
  }

  Value parse_number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double num = std::strtod(begin, &end);
    if (end == begin) fail(where() + "bad value near '" + s_.substr(pos_) + "'");
    pos_ += static_cast<size_t>(end - begin);
    if (!at_boundary(pos_))
      fail(where() + "bad number near '" + s_.substr(pos_) + "'");
    Value v;
    v.num = num;
    v.line = line_;
    return v;
  }

  const std::string& s_;
  int line_;
  size_t pos_ = 0;
};

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

Document parse_document(const std::string& text) {
  Document doc;
  Table* current = &doc.tables[""];
  std::string current_path;

  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      const bool is_array = line.size() >= 2 && line[1] == '[';
      const std::string closer = is_array ? "]]" : "]";
      if (line.size() < 2 * closer.size() ||
          line.compare(line.size() - closer.size(), closer.size(), closer) != 0)
        fail("line " + std::to_string(line_no) + ": malformed table header");
      const std::string path = trim(line.substr(
          closer.size(), line.size() - 2 * closer.size()));
      if (!bare_path(path))
        fail("line " + std::to_string(line_no) + ": bad table name '" + path + "'");
      if (is_array) {
        doc.arrays[path].emplace_back();
        current = &doc.arrays[path].back();
      } else {
        if (doc.tables.count(path))
          fail("line " + std::to_string(line_no) + ": duplicate section [" +
               path + "]");
        current = &doc.tables[path];
      }
      current_path = path;
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (!bare_key(key))
      fail("line " + std::to_string(line_no) + ": bad key '" + key + "'");
    if (current->count(key))
      fail("line " + std::to_string(line_no) + ": duplicate key '" +
           (current_path.empty() ? key : current_path + "." + key) + "'");
    (*current)[key] = ValueParser(line.substr(eq + 1), line_no).parse();
  }
  return doc;
}

// --- schema -----------------------------------------------------------

const std::map<std::string, std::set<std::string>>& section_schema() {
  static const std::map<std::string, std::set<std::string>> schema = {
      {"run", {"method", "output"}},
      {"material", {"youngs", "poisson", "mu", "lambda"}},
      {"domain", {"x0", "y0", "x1", "y1", "hole_center", "hole_radius"}},
      {"sampling", {"nx", "ny", "n_boundary", "rule"}},
      {"network", {"widths", "activation", "seed"}},
      {"schedule",
       {"adam_iters", "adam_lr", "lbfgs_iters", "stop_rel", "stop_window",
        "log_every"}},
      {"loss", {"w_r", "w_t", "w_u", "w_p", "j_floor", "penalty_scale"}},
      {"transform", {"mode", "shift_u", "scale_u", "shift_p", "scale_p"}},
      {"fem", {"load_steps", "tol_r"}},
  };
  return schema;
}

const std::set<std::string>& bc_schema() {
  static const std::set<std::string> keys = {
      "label", "edge",       "kind",  "t0",       "t1",
      "components", "value", "traction", "hole_index", "n_points"};
  return keys;
}

void check_keys(const Table& table, const std::set<std::string>& allowed,
                const std::string& name) {
  for (const auto& [key, value] : table) {
    (void)value;
    if (!allowed.count(key)) fail("unknown key " + name + "." + key);
  }
}

void validate_section_path(const Document& doc) {
  for (const auto& [path, table] : doc.tables) {
    if (path.empty()) {
      for (const auto& [key, value] : table) {
        (void)value;
        fail("unknown key " + key + " at top level");
      }
      continue;
    }
    if (section_schema().count(path)) {
      check_keys(table, section_schema().at(path), path);
      continue;
    }
    if (path.rfind("profile.", 0) == 0) {
      const std::string rest = path.substr(8);
      const size_t dot = rest.find('.');
      const std::string name = dot == std::string::npos ? rest : rest.substr(0, dot);
      if (name != "desk" && name != "paper")
        fail("unknown profile section [" + path + "] (expected desk or paper)");
      if (dot == std::string::npos) {
        if (!table.empty())
          fail("unknown key " + path + "." + table.begin()->first);
        continue;
      }
      const std::string sect = rest.substr(dot + 1);
      if (!section_schema().count(sect))
        fail("unknown section [" + path + "]");
      check_keys(table, section_schema().at(sect), path);
      continue;
    }
    fail("unknown section [" + path + "]");
  }
  for (const auto& [path, list] : doc.arrays) {
    const bool base = path == "bc";
    const bool overlay = path.rfind("profile.", 0) == 0 &&
                         path.size() > 11 &&
                         path.compare(path.size() - 3, 3, ".bc") == 0;
    if (!base && !overlay) fail("unknown section [[" + path + "]]");
    for (size_t i = 0; i < list.size(); ++i)
      check_keys(list[i], bc_schema(),
                 path + "[" + std::to_string(i) + "]");
  }
}

void apply_profile(Document& doc, const std::string& profile) {
  if (profile.empty()) return;
  if (profile != "desk" && profile != "paper")
    fail("unknown profile '" + profile + "' (expected desk or paper)");
  const std::string prefix = "profile." + profile;
  for (const auto& [path, table] : doc.tables) {
    if (path.rfind(prefix + ".", 0) != 0) continue;
    Table& dst = doc.tables[path.substr(prefix.size() + 1)];
    for (const auto& [key, value] : table) dst[key] = value;
  }
  for (const auto& [path, list] : doc.arrays) {
    if (path.rfind(prefix + ".", 0) != 0) continue;
    doc.arrays[path.substr(prefix.size() + 1)] = list;
  }
}

// --- typed extraction -------------------------------------------------

class Section {
 public:
  Section(const Document& doc, const std::string& path) : path_(path) {
    const auto it = doc.tables.find(path);
    table_ = it == doc.tables.end() ? nullptr : &it->second;
  }
  Section(const Table& table, const std::string& path)
      : path_(path), table_(&table) {}

  bool exists() const { return table_ != nullptr; }

  const Value* find(const std::string& key) const {
    if (!table_) return nullptr;
    const auto it = table_->find(key);
    return it == table_->end() ? nullptr : &it->second;
  }

  std::string req_str(const std::string& key) const {
    const Value* v = require(key);
    if (v->kind != Value::Kind::string) wrong(key, "a string");
    return v->str;
  }

  std::string str(const std::string& key, const std::string& fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->kind != Value::Kind::string) wrong(key, "a string");
    return v->str;
  }

  double req_num(const std::string& key) const {
    const Value* v = require(key);
    if (v->kind != Value::Kind::number) wrong(key, "a number");
    return v->num;
  }

  double num(const std::string& key, double fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->kind != Value::Kind::number) wrong(key, "a number");
    return v->num;
  }

  long long integer(const std::string& key, long long fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    return as_int(*v, key);
  }

  long long req_integer(const std::string& key) const {
    return as_int(*require(key), key);
  }

  std::vector<double> req_num_array(const std::string& key) const {
    const Value* v = require(key);
    if (v->kind != Value::Kind::array) wrong(key, "an array");
    std::vector<double> out;
    for (const Value& item : v->items) {
      if (item.kind != Value::Kind::number) wrong(key, "an array of numbers");
      out.push_back(item.num);
    }
    return out;
  }

  std::vector<std::string> str_array(const std::string& key, size_t n) const {
    const Value* v = require(key);
    if (v->kind != Value::Kind::array || v->items.size() != n)
      wrong(key, "an array of " + std::to_string(n) + " strings");
    std::vector<std::string> out;
    for (const Value& item : v->items) {
      if (item.kind != Value::Kind::string)
        wrong(key, "an array of " + std::to_string(n) + " strings");
      out.push_back(item.str);
    }
    return out;
  }

  const std::string& path() const { return path_; }

 private:
  const Value* require(const std::string& key) const {
    const Value* v = find(key);
    if (!v) fail("missing required key " + path_ + "." + key);
    return v;
  }

  [[noreturn]] void wrong(const std::string& key, const std::string& what) const {
    fail(path_ + "." + key + " must be " + what);
  }

  long long as_int(const Value& v, const std::string& key) const {
    if (v.kind != Value::Kind::number || v.num != std::floor(v.num) ||
        std::abs(v.num) > 9.0e15)
      wrong(key, "an integer");
    return static_cast<long long>(v.num);
  }

  std::string path_;
  const Table* table_ = nullptr;
};

Expr parse_expr(const std::string& text, const std::string& field) {
  try {
    return Expr::parse(text);
  } catch (const ConfigError& e) {
    fail(field + ": " + e.what());
  }
}

EdgeId parse_edge(const std::string& s, const std::string& field) {
  if (s == "left") return EdgeId::left;
  if (s == "right") return EdgeId::right;
  if (s == "bottom") return EdgeId::bottom;
  if (s == "top") return EdgeId::top;
  if (s == "hole") return EdgeId::hole;
  fail(field + " must be one of left, right, bottom, top, hole");
}

BcKind parse_kind(const std::string& s, const std::string& field) {
  if (s == "dirichlet") return BcKind::dirichlet;
  if (s == "traction") return BcKind::traction;
  if (s == "free") return BcKind::free_edge;
  fail(field + " must be one of dirichlet, traction, free");
}

BoundarySegmentSpec extract_bc(const Table& table, size_t index,
                               const DomainSpec& domain, int n_boundary) {
  const std::string name = "bc[" + std::to_string(index) + "]";
  const Section s(table, name);

  BoundarySegmentSpec seg;
  seg.edge = parse_edge(s.req_str("edge"), name + ".edge");
  seg.kind = parse_kind(s.req_str("kind"), name + ".kind");
  seg.label = s.str("label", "bc" + std::to_string(index));
  seg.t0 = s.num("t0", 0.0);
  seg.t1 = s.num("t1", 1.0);
  if (!(seg.t0 >= 0.0 && seg.t0 < seg.t1 && seg.t1 <= 1.0))
    fail(name + ": need 0 <= t0 < t1 <= 1");

  seg.hole_index = static_cast<int>(s.integer("hole_index", 0));
  if (seg.edge == EdgeId::hole) {
    if (seg.hole_index < 0 ||
        seg.hole_index >= static_cast<int>(domain.holes.size()))
      fail(name + ".hole_index does not match a declared hole");
  } else if (s.find("hole_index")) {
    fail(name + ".hole_index is only valid for edge = \"hole\"");
  }

  const long long n_points = s.integer("n_points", 0);
  if (n_points < 0) fail(name + ".n_points must be non-negative");
  seg.n_points = n_points > 0 ? static_cast<int>(n_points) : n_boundary;

  if (seg.kind == BcKind::dirichlet) {
    if (s.find("traction"))
      fail(name + ".traction is not valid for kind = \"dirichlet\"");
    seg.components = s.str("components", "xy");
    if (seg.components != "x" && seg.components != "y" && seg.components != "xy")
      fail(name + ".components must be \"x\", \"y\", or \"xy\"");
    if (s.find("value")) {
      const auto exprs = s.str_array("value", 2);
      seg.dirichlet_value = {parse_expr(exprs[0], name + ".value[0]"),
                             parse_expr(exprs[1], name + ".value[1]")};
    }
  } else {
    if (s.find("value")) fail(name + ".value requires kind = \"dirichlet\"");
    if (s.find("components"))
      fail(name + ".components requires kind = \"dirichlet\"");
    if (seg.kind == BcKind::traction) {
      const auto exprs = s.str_array("traction", 2);
      seg.traction = {parse_expr(exprs[0], name + ".traction[0]"),
                      parse_expr(exprs[1], name + ".traction[1]")};
    } else if (s.find("traction")) {
      fail(name + ".traction requires kind = \"traction\"");
    }
  }
  return seg;
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::string& profile) {
  Document doc = parse_document(text);
  validate_section_path(doc);
  apply_profile(doc, profile);

  RunConfig cfg;

  const Section run(doc, "run");
  if (!run.exists()) fail("missing section [run]");
  cfg.method = run.req_str("method");
  if (cfg.method != "pinn" && cfg.method != "dem" && cfg.method != "mdem" &&
      cfg.method != "fem")
    fail("run.method must be one of pinn, dem, mdem, fem");
  cfg.output_dir = run.str("output", "runs/" + cfg.method);
  if (cfg.output_dir.empty()) fail("run.output must not be empty");

  const Section mt(doc, "material");
  if (!mt.exists()) fail("missing section [material]");
  const bool lame = mt.find("mu") || mt.find("lambda");
  const bool engineering = mt.find("youngs") || mt.find("poisson");
  if (lame == engineering)
    fail("material: give either youngs + poisson or mu + lambda");
  if (engineering) {
    const double youngs = mt.req_num("youngs");
    const double poisson = mt.req_num("poisson");
    if (youngs <= 0.0) fail("material.youngs must be positive");
    if (!(poisson >= 0.0 && poisson < 0.5))
      fail("material.poisson must lie in [0, 0.5)");
    cfg.material = MaterialParams::from_youngs_poisson(youngs, poisson);
  } else {
    const double mu = mt.req_num("mu");
    const double lambda = mt.req_num("lambda");
    if (mu <= 0.0) fail("material.mu must be positive");
    if (lambda < 0.0) fail("material.lambda must be non-negative");
    cfg.material = MaterialParams{lambda, mu};
  }

  const Section dm(doc, "domain");
  if (!dm.exists()) fail("missing section [domain]");
  cfg.domain.rect = {dm.num("x0", 0.0), dm.num("y0", 0.0), dm.num("x1", 1.0),
                     dm.num("y1", 1.0)};
  if (!(cfg.domain.rect.width() > 0.0) || !(cfg.domain.rect.height() > 0.0))
    fail("domain: need x0 < x1 and y0 < y1");
  if (dm.find("hole_center") || dm.find("hole_radius")) {
    const auto center = dm.req_num_array("hole_center");
    if (center.size() != 2) fail("domain.hole_center must be [x, y]");
    const double radius = dm.req_num("hole_radius");
    if (radius <= 0.0) fail("domain.hole_radius must be positive");
    cfg.domain.holes.push_back({{center[0], center[1]}, radius});
  }

  const Section sp(doc, "sampling");
  if (!sp.exists()) fail("missing section [sampling]");
  cfg.nx = static_cast<int>(sp.req_integer("nx"));
  cfg.ny = static_cast<int>(sp.req_integer("ny"));
  if (cfg.nx < 2 || cfg.ny < 2) fail("sampling.nx and sampling.ny must be >= 2");
  const long long n_boundary = sp.integer("n_boundary", 0);
  if (n_boundary < 0) fail("sampling.n_boundary must be non-negative");
  const std::string rule = sp.str("rule", "trapezoid");
  if (rule == "trapezoid")
    cfg.rule = BoundaryRule::trapezoid;
  else if (rule == "simpson")
    cfg.rule = BoundaryRule::simpson;
  else
    fail("sampling.rule must be \"trapezoid\" or \"simpson\"");

  const auto bc_it = doc.arrays.find("bc");
  if (bc_it != doc.arrays.end()) {
    for (size_t i = 0; i < bc_it->second.size(); ++i)
      cfg.domain.segments.push_back(
          extract_bc(bc_it->second[i], i, cfg.domain,
                     static_cast<int>(n_boundary)));
  }

  const Section net(doc, "network");
  if (cfg.method != "fem" && !net.exists()) fail("missing section [network]");
  if (net.exists()) {
    const auto widths = net.req_num_array("widths");
    if (widths.size() < 2) fail("network.widths needs at least two layers");
    for (double w : widths) {
      if (w != std::floor(w) || w < 1.0 || w > 1e6)
        fail("network.widths must hold positive integers");
      cfg.widths.push_back(static_cast<int>(w));
    }
    if (cfg.widths.front() != 2) fail("network.widths must start with 2 inputs");
    if (cfg.widths.back() != 2 && cfg.widths.back() != 6)
      fail("network.widths must end with 2 or 6 outputs");
    if (cfg.method == "mdem" && cfg.widths.back() != 6)
      fail("network.widths must end with 6 outputs for method mdem");
    if ((cfg.method == "pinn" || cfg.method == "dem") && cfg.widths.back() != 2)
      fail("network.widths must end with 2 outputs for method " + cfg.method);
    const std::string act = net.str("activation", "tanh");
    if (act == "tanh")
      cfg.activation = Activation::tanh_fn;
    else if (act == "softplus")
      cfg.activation = Activation::softplus_fn;
    else
      fail("network.activation must be \"tanh\" or \"softplus\"");
    const long long seed = net.integer("seed", 1);
    if (seed < 0) fail("network.seed must be non-negative");
    cfg.seed = static_cast<uint64_t>(seed);
  }

  const Section sc(doc, "schedule");
  if (sc.exists()) {
    cfg.schedule.adam_iters = static_cast<int>(sc.integer("adam_iters", 0));
    cfg.schedule.adam.lr = sc.num("adam_lr", cfg.schedule.adam.lr);
    cfg.schedule.lbfgs_iters = static_cast<int>(sc.integer("lbfgs_iters", 0));
    cfg.schedule.stop_rel = sc.num("stop_rel", cfg.schedule.stop_rel);
    cfg.schedule.stop_window =
        static_cast<int>(sc.integer("stop_window", cfg.schedule.stop_window));
    cfg.schedule.log_every =
        static_cast<int>(sc.integer("log_every", cfg.schedule.log_every));
    if (cfg.schedule.adam_iters < 0) fail("schedule.adam_iters must be >= 0");
    if (cfg.schedule.adam.lr <= 0.0) fail("schedule.adam_lr must be positive");
    if (cfg.schedule.lbfgs_iters < 0) fail("schedule.lbfgs_iters must be >= 0");
    if (cfg.schedule.stop_rel < 0.0) fail("schedule.stop_rel must be >= 0");
    if (cfg.schedule.stop_window < 1) fail("schedule.stop_window must be >= 1");
    if (cfg.schedule.log_every < 1) fail("schedule.log_every must be >= 1");
  }

  const Section ls(doc, "loss");
  if (ls.exists()) {
    cfg.weights.w_r = ls.num("w_r", cfg.weights.w_r);
    cfg.weights.w_t = ls.num("w_t", cfg.weights.w_t);
    cfg.weights.w_u = ls.num("w_u", cfg.weights.w_u);
    cfg.weights.w_p = ls.num("w_p", cfg.weights.w_p);
    if (cfg.weights.w_r < 0.0 || cfg.weights.w_t < 0.0 ||
        cfg.weights.w_u < 0.0 || cfg.weights.w_p < 0.0)
      fail("loss weights must be >= 0");
    cfg.j_floor = ls.num("j_floor", cfg.j_floor);
    if (cfg.j_floor <= 0.0) fail("loss.j_floor must be positive");
    cfg.penalty_scale = ls.num("penalty_scale", cfg.penalty_scale);
    if (cfg.penalty_scale < 0.0) fail("loss.penalty_scale must be >= 0");
  }

  const Section tf(doc, "transform");
  if (tf.exists()) {
    const std::string mode = tf.str("mode", "a_priori");
    if (mode == "a_priori")
      cfg.transform.mode = OutputTransform::Mode::a_priori;
    else if (mode == "trained")
      cfg.transform.mode = OutputTransform::Mode::trained;
    else
      fail("transform.mode must be \"a_priori\" or \"trained\"");
    const bool has_fields = tf.find("shift_u") || tf.find("scale_u") ||
                            tf.find("shift_p") || tf.find("scale_p");
    if (cfg.transform.mode == OutputTransform::Mode::trained && has_fields)
      fail("transform: shift/scale fields require mode = \"a_priori\"");
    if (tf.find("shift_u")) {
      const auto e = tf.str_array("shift_u", 2);
      cfg.transform.shift_u = {parse_expr(e[0], "transform.shift_u[0]"),
                               parse_expr(e[1], "transform.shift_u[1]")};
    }
    if (tf.find("scale_u")) {
      const auto e = tf.str_array("scale_u", 2);
      cfg.transform.scale_u = {parse_expr(e[0], "transform.scale_u[0]"),
                               parse_expr(e[1], "transform.scale_u[1]")};
    }
    if (tf.find("shift_p")) {
      const auto e = tf.str_array("shift_p", 4);
      for (int i = 0; i < 4; ++i)
        cfg.transform.shift_p[static_cast<size_t>(i)] =
            parse_expr(e[static_cast<size_t>(i)],
                       "transform.shift_p[" + std::to_string(i) + "]");
    }
    if (tf.find("scale_p")) {
      const auto e = tf.str_array("scale_p", 4);
      for (int i = 0; i < 4; ++i)
        cfg.transform.scale_p[static_cast<size_t>(i)] =
            parse_expr(e[static_cast<size_t>(i)],
                       "transform.scale_p[" + std::to_string(i) + "]");
    }
  }

  const Section fm(doc, "fem");
  if (fm.exists()) {
    cfg.fem.load_steps = static_cast<int>(fm.integer("load_steps", 1));
    if (cfg.fem.load_steps < 1) fail("fem.load_steps must be >= 1");
    cfg.fem.tol_r = fm.num("tol_r", 1e-9);
    if (cfg.fem.tol_r <= 0.0) fail("fem.tol_r must be positive");
  }

  if (cfg.method == "fem") {
    bool pinned = false;
    for (const BoundarySegmentSpec& seg : cfg.domain.segments)
      pinned = pinned || seg.kind == BcKind::dirichlet;
    if (!pinned) fail("method fem needs at least one dirichlet bc");
  }

  return cfg;
}

RunConfig load_run_config(const std::string& path, const std::string& profile) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), profile);
}

}  // namespace mdem
