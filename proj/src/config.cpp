#include "weylcheck/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace weyl {

namespace {

// Parsed value tree: leaves are strings/numbers/bools, interior nodes arrays.
struct Value {
  enum Kind { kString, kNumber, kBool, kArray } kind = kString;
  std::string str;
  double num = 0;
  bool flag = false;
  std::vector<Value> items;
};

struct Parser {
  const std::string& s;
  const std::string& origin;
  size_t i = 0;
  int line = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
  }

  bool eof() const { return i >= s.size(); }
  char peek() const { return s[i]; }

  void advance() {
    if (s[i] == '\n') ++line;
    ++i;
  }

  void skip_blank(bool cross_lines) {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (c == '\n' && cross_lines) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string bare_key() {
    size_t start = i;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                      peek() == '-'))
      advance();
    if (i == start) fail("expected a key");
    return s.substr(start, i - start);
  }

  std::string quoted() {
    advance();  // opening quote
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      char c = peek();
      advance();
      if (c == '"') break;
      if (c == '\\') {
        if (eof()) fail("unterminated escape");
        char e = peek();
        advance();
        if (e == '"' || e == '\\')
          out.push_back(e);
        else
          fail("unsupported escape in string");
        continue;
      }
      out.push_back(c);
    }
    return out;
  }

  Value value() {
    skip_blank(false);
    if (eof()) fail("expected a value");
    char c = peek();
    if (c == '"') {
      Value v;
      v.kind = Value::kString;
      v.str = quoted();
      return v;
    }
    if (c == '[') {
      advance();
      Value v;
      v.kind = Value::kArray;
      skip_blank(true);
      if (!eof() && peek() == ']') {
        advance();
        return v;
      }
      while (true) {
        v.items.push_back(value());
        skip_blank(true);
        if (eof()) fail("unterminated array");
        if (peek() == ',') {
          advance();
          skip_blank(true);
          if (!eof() && peek() == ']') {
            advance();
            break;
          }
          continue;
        }
        if (peek() == ']') {
          advance();
          break;
        }
        fail("expected ',' or ']' in array");
      }
      return v;
    }
    if (s.compare(i, 4, "true") == 0) {
      i += 4;
      Value v;
      v.kind = Value::kBool;
      v.flag = true;
      return v;
    }
    if (s.compare(i, 5, "false") == 0) {
      i += 5;
      Value v;
      v.kind = Value::kBool;
      v.flag = false;
      return v;
    }
    size_t start = i;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' ||
                      peek() == '-' || peek() == '.' ))
      advance();
    std::string tok = s.substr(start, i - start);
    if (tok.empty()) fail("expected a value");
    char* end = nullptr;
    double d = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) fail("malformed number '" + tok + "'");
    Value v;
    v.kind = Value::kNumber;
    v.num = d;
    return v;
  }

  void end_of_statement() {
    skip_blank(false);
    if (!eof() && peek() != '\n') fail("unexpected trailing text");
  }
};

using Table = std::map<std::string, Value>;  // flattened "section.key"

Table parse_toml(const std::string& text, const std::string& origin) {
  Parser p{text, origin};
  Table out;
  std::set<std::string> sections;
  std::string section;
  while (true) {
    p.skip_blank(true);
    if (p.eof()) break;
    if (p.peek() == '[') {
      p.advance();
      std::string name = p.bare_key();
      while (!p.eof() && p.peek() == '.') {
        p.advance();
        name += "." + p.bare_key();
      }
      if (p.eof() || p.peek() != ']') p.fail("expected ']' after table name");
      p.advance();
      p.end_of_statement();
      if (!sections.insert(name).second) p.fail("table [" + name + "] declared twice");
      section = name;
      continue;
    }
    std::string key = p.bare_key();
    p.skip_blank(false);
    if (p.eof() || p.peek() != '=') p.fail("expected '=' after key '" + key + "'");
    p.advance();
    Value v = p.value();
    p.end_of_statement();
    std::string full = section.empty() ? key : section + "." + key;
    if (!out.emplace(full, std::move(v)).second) p.fail("key '" + full + "' set twice");
  }
  return out;
}

// Lookup helpers; every consumed key is crossed off so leftovers can be
// reported as unknown.
struct Fields {
  Table table;
  std::string origin;

  const Value* take(const std::string& key) {
    auto it = table.find(key);
    if (it == table.end()) return nullptr;
    taken.push_back(key);
    return &it->second;
  }

  void finish() {
    for (const auto& k : taken) table.erase(k);
    if (!table.empty())
      throw ConfigError(origin + ": unknown key '" + table.begin()->first + "'");
  }

  std::vector<std::string> taken;
};

[[noreturn]] void fail_key(const std::string& origin, const std::string& key,
                           const std::string& msg) {
  throw ConfigError(origin + ": " + key + ": " + msg);
}

double need_number(const Fields& f, const Value& v, const std::string& key) {
  if (v.kind != Value::kNumber) fail_key(f.origin, key, "expected a number");
  return v.num;
}

long long need_int(const Fields& f, const Value& v, const std::string& key) {
  double d = need_number(f, v, key);
  long long n = static_cast<long long>(d);
  if (static_cast<double>(n) != d) fail_key(f.origin, key, "expected an integer");
  return n;
}

std::vector<std::string> need_strings(const Fields& f, const Value& v, const std::string& key) {
  if (v.kind != Value::kArray) fail_key(f.origin, key, "expected an array");
  std::vector<std::string> out;
  for (const Value& it : v.items) {
    if (it.kind != Value::kString) fail_key(f.origin, key, "expected an array of strings");
    out.push_back(it.str);
  }
  return out;
}

Expr parse_entry(const std::string& text, const std::vector<std::string>& coords,
                 const std::string& origin, const std::string& key) {
  try {
    return parse_expr(text, coords);
  } catch (const ParseError& e) {
    fail_key(origin, key, "bad expression '" + text + "': " + e.what());
  }
}

std::vector<Expr> parse_entries(Fields& f, const Value& v, const std::string& key,
                                const std::vector<std::string>& coords, size_t count,
                                const char* what) {
  std::vector<std::string> texts = need_strings(f, v, key);
  if (texts.size() != count)
    fail_key(f.origin, key,
             std::string(what) + " needs " + std::to_string(count) + " entries, got " +
                 std::to_string(texts.size()));
  std::vector<Expr> out;
  for (size_t k = 0; k < texts.size(); ++k)
    out.push_back(parse_entry(texts[k], coords, f.origin, key + "[" + std::to_string(k) + "]"));
  return out;
}

Chart read_chart(Fields& f, const std::string& prefix, bool allow_line) {
  Chart c;
  const Value* dim = f.take(prefix + ".dim");
  if (!dim) fail_key(f.origin, prefix + ".dim", "missing");
  long long d = need_int(f, *dim, prefix + ".dim");
  int lo_dim = allow_line ? 1 : 2;
  if (d < lo_dim || d > kMaxDim)
    fail_key(f.origin, prefix + ".dim",
             "dimension must be between " + std::to_string(lo_dim) + " and " +
                 std::to_string(kMaxDim));
  c.dim = static_cast<int>(d);

  const Value* coords = f.take(prefix + ".coords");
  if (!coords) fail_key(f.origin, prefix + ".coords", "missing");
  c.coords = need_strings(f, *coords, prefix + ".coords");
  if (static_cast<int>(c.coords.size()) != c.dim)
    fail_key(f.origin, prefix + ".coords", "expected one name per dimension");

  const Value* box = f.take(prefix + ".box");
  if (!box) fail_key(f.origin, prefix + ".box", "missing");
  if (box->kind != Value::kArray || static_cast<int>(box->items.size()) != c.dim)
    fail_key(f.origin, prefix + ".box", "expected one [lo, hi] pair per dimension");
  for (int k = 0; k < c.dim; ++k) {
    const Value& pair = box->items[static_cast<size_t>(k)];
    if (pair.kind != Value::kArray || pair.items.size() != 2 ||
        pair.items[0].kind != Value::kNumber || pair.items[1].kind != Value::kNumber)
      fail_key(f.origin, prefix + ".box", "expected [lo, hi] number pairs");
    c.box[static_cast<size_t>(k)] = {pair.items[0].num, pair.items[1].num};
    if (!(c.box[static_cast<size_t>(k)].first < c.box[static_cast<size_t>(k)].second))
      fail_key(f.origin, prefix + ".box", "box bounds must satisfy lo < hi");
  }

  if (const Value* ori = f.take(prefix + ".orientation")) {
    long long o = need_int(f, *ori, prefix + ".orientation");
    if (o != 1 && o != -1) fail_key(f.origin, prefix + ".orientation", "must be 1 or -1");
    c.orientation = static_cast<int>(o);
  }
  return c;
}

}  // namespace

Bundle load_bundle(const std::string& text, const std::string& origin) {
  Fields f{parse_toml(text, origin), origin, {}};
  Bundle b;
  b.source = text;

  b.domain.chart = read_chart(f, "chart", false);
  const int m = b.domain.chart.dim;
  const auto& coords = b.domain.chart.coords;

  const Value* metric = f.take("metric.upper");
  if (!metric) fail_key(origin, "metric.upper", "missing");
  b.domain.metric = parse_entries(f, *metric, "metric.upper", coords,
                                  static_cast<size_t>(m * (m + 1) / 2),
                                  "the packed metric upper triangle");

  if (const Value* lee = f.take("lee_form.components"))
    b.domain.lee = parse_entries(f, *lee, "lee_form.components", coords,
                                 static_cast<size_t>(m), "the lee form");

  const Value* mapc = f.take("map.components");
  bool has_codomain = f.table.count("weyl.codomain.dim") > 0;
  if (mapc && !has_codomain)
    fail_key(origin, "weyl.codomain", "a [map] needs a [weyl.codomain] structure");
  if (!mapc && has_codomain)
    fail_key(origin, "map.components", "a [weyl.codomain] structure needs a [map]");
  if (mapc) {
    WeylStructure N;
    N.chart = read_chart(f, "weyl.codomain", true);
    const int n = N.chart.dim;
    const Value* nm = f.take("weyl.codomain.metric");
    if (!nm) fail_key(origin, "weyl.codomain.metric", "missing");
    N.metric = parse_entries(f, *nm, "weyl.codomain.metric", N.chart.coords,
                             static_cast<size_t>(n * (n + 1) / 2),
                             "the packed metric upper triangle");
    if (const Value* nl = f.take("weyl.codomain.lee"))
      N.lee = parse_entries(f, *nl, "weyl.codomain.lee", N.chart.coords,
                            static_cast<size_t>(n), "the lee form");
    b.map = parse_entries(f, *mapc, "map.components", coords, static_cast<size_t>(n),
                          "the map");
    if (n >= m) fail_key(origin, "map.components", "the map must lower the dimension");
    b.codomain = std::move(N);
  }

  if (const Value* jent = f.take("complex_structure.entries")) {
    JField jf;
    jf.m = m;
    jf.entries = parse_entries(f, *jent, "complex_structure.entries", coords,
                               static_cast<size_t>(m * m),
                               "the row-major structure matrix");
    b.jfield = std::move(jf);
  }

  if (const Value* kv = f.take("weyl.k")) {
    if (kv->kind != Value::kString) fail_key(origin, "weyl.k", "expected an expression string");
    b.kfun = parse_entry(kv->str, coords, origin, "weyl.k");
  }

  if (const Value* vert = f.take("distribution.vertical")) {
    for (const std::string& name : need_strings(f, *vert, "distribution.vertical")) {
      int idx = -1;
      for (int k = 0; k < m; ++k)
        if (coords[static_cast<size_t>(k)] == name) idx = k;
      if (idx < 0)
        fail_key(origin, "distribution.vertical", "'" + name + "' is not a chart coordinate");
      for (int seen : b.vertical)
        if (seen == idx)
          fail_key(origin, "distribution.vertical", "'" + name + "' listed twice");
      b.vertical.push_back(idx);
    }
    if (static_cast<int>(b.vertical.size()) >= m)
      fail_key(origin, "distribution.vertical", "the vertical span must be a proper subspace");
  }

  if (const Value* pts = f.take("run.points")) {
    long long n = need_int(f, *pts, "run.points");
    if (n < 1 || n > 100000) fail_key(origin, "run.points", "must be between 1 and 100000");
    b.run.points = static_cast<int>(n);
  }
  if (const Value* seed = f.take("run.seed")) b.run.seed = need_int(f, *seed, "run.seed");
  if (const Value* tol = f.take("run.tol")) {
    b.run.tol = need_number(f, *tol, "run.tol");
    if (!(b.run.tol > 0)) fail_key(origin, "run.tol", "must be positive");
  }
  if (const Value* tasks = f.take("run.tasks"))
    b.run.tasks = need_strings(f, *tasks, "run.tasks");

  f.finish();

  try {
    b.domain.chart.validate(false);
    if (b.codomain) b.codomain->chart.validate(true);
  } catch (const std::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return b;
}

Bundle load_bundle_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_bundle(ss.str(), path);
}

}  // namespace weyl
