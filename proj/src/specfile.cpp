#include "ringstab/specfile.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace ringstab {
namespace {

struct KeyValue {
  std::string value;
  std::size_t line = 0, col = 0;       // location of the key
  std::size_t value_col = 0;           // location of the value
  bool used = false;
};

struct Section {
  std::string name;
  std::size_t line = 0, col = 0;
  std::map<std::string, KeyValue> keys;  // insertion not needed; keys unique
  std::vector<std::string> key_order;
};

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
      return false;
  return true;
}

[[noreturn]] void fail(const std::string& origin, std::size_t line,
                       std::size_t col, const std::string& msg) {
  throw SpecParseError(origin, line, col, msg);
}

std::uint64_t parse_uint(const std::string& origin, const KeyValue& kv,
                         const std::string& key, std::uint64_t max_value) {
  const std::string& v = kv.value;
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    fail(origin, kv.line, kv.value_col,
         "key '" + key + "' expects a non-negative integer, got '" + v + "'");
  errno = 0;
  char* end = nullptr;
  unsigned long long parsed = std::strtoull(v.c_str(), &end, 10);
  if (errno != 0 || end != v.c_str() + v.size() || parsed > max_value)
    fail(origin, kv.line, kv.value_col,
         "value '" + v + "' for key '" + key + "' out of range (max " +
             std::to_string(max_value) + ")");
  return parsed;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(v);
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (!v.empty() && v.back() == ',') out.push_back("");
  return out;
}

std::vector<elem> parse_table(const std::string& origin, const KeyValue& kv,
                              const std::string& key, unsigned order) {
  std::vector<std::string> items = split_list(kv.value);
  std::vector<elem> out;
  out.reserve(items.size());
  for (const std::string& it : items) {
    if (it.empty() || it.find_first_not_of("0123456789") != std::string::npos)
      fail(origin, kv.line, kv.value_col,
           "table '" + key + "' contains a non-integer entry '" + it + "'");
    unsigned long v = std::strtoul(it.c_str(), nullptr, 10);
    if (v >= order)
      fail(origin, kv.line, kv.value_col,
           "table '" + key + "' entry " + it + " out of range for order " +
               std::to_string(order));
    out.push_back(static_cast<elem>(v));
  }
  if (out.size() != std::size_t(order) * order)
    fail(origin, kv.line, kv.value_col,
         "table '" + key + "' has " + std::to_string(out.size()) +
             " entries, expected " + std::to_string(order) + "*" +
             std::to_string(order) + " = " +
             std::to_string(std::size_t(order) * order));
  return out;
}

class SectionReader {
public:
  SectionReader(const std::string& origin, Section& s)
      : origin_(origin), s_(s) {}

  const KeyValue* get(const std::string& key) {
    auto it = s_.keys.find(key);
    if (it == s_.keys.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  const KeyValue& require(const std::string& key) {
    const KeyValue* kv = get(key);
    if (!kv)
      fail(origin_, s_.line, s_.col,
           "ring '" + s_.name + "' (family " + family_ + ") is missing key '" +
               key + "'");
    return *kv;
  }

  void set_family(const std::string& f) { family_ = f; }

  void reject_unused() const {
    for (const std::string& k : s_.key_order) {
      const KeyValue& kv = s_.keys.at(k);
      if (!kv.used)
        fail(origin_, kv.line, kv.col,
             "unknown key '" + k + "' for family " + family_);
    }
  }

private:
  const std::string& origin_;
  Section& s_;
  std::string family_ = "?";
};

Ring lookup(const std::string& origin, const SpecFile& out,
            const KeyValue& kv, const std::string& name) {
  const RingDecl* d = out.find(name);
  if (!d)
    fail(origin, kv.line, kv.value_col,
         "reference to undeclared ring '" + name +
             "' (rings must be declared earlier in the file)");
  return d->ring;
}

}  // namespace

const RingDecl* SpecFile::find(const std::string& name) const {
  for (const RingDecl& d : rings)
    if (d.name == name) return &d;
  return nullptr;
}

SpecFile parse_ring_spec_text(const std::string& text,
                              const std::string& origin) {
  // Pass 1: tokenize into sections.
  Section top;  // pseudo-section for keys before the first header
  top.name = "<top>";
  std::vector<Section> sections;
  Section* cur = &top;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    // Strip comments (# or ;) outside of nothing special: values never
    // contain those characters in this grammar.
    std::size_t cut = raw.find_first_of("#;");
    std::string line = raw.substr(0, cut);
    std::string body = trim(line);
    if (body.empty()) continue;

    std::size_t first = line.find_first_not_of(" \t");
    if (body.front() == '[') {
      if (body.back() != ']')
        fail(origin, lineno, first + 1, "unterminated section header");
      std::string inner = trim(body.substr(1, body.size() - 2));
      if (inner.rfind("ring", 0) != 0 ||
          (inner.size() > 4 && !std::isspace(static_cast<unsigned char>(inner[4]))))
        fail(origin, lineno, first + 1,
             "only [ring NAME] sections are supported, got [" + inner + "]");
      std::string name = trim(inner.substr(4));
      if (!valid_name(name))
        fail(origin, lineno, first + 1,
             "section needs a name: [ring NAME] with NAME of [A-Za-z0-9_-]");
      for (const Section& s : sections)
        if (s.name == name)
          fail(origin, lineno, first + 1,
               "duplicate ring name '" + name + "'");
      sections.push_back({});
      cur = &sections.back();
      cur->name = name;
      cur->line = lineno;
      cur->col = first + 1;
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty())
      fail(origin, lineno, first + 1,
           "expected 'key = value' or a [ring NAME] header");
    std::string key = trim(line.substr(0, eq));
    if (!valid_name(key))
      fail(origin, lineno, first + 1, "malformed key '" + key + "'");
    KeyValue kv;
    kv.value = trim(line.substr(eq + 1));
    kv.line = lineno;
    kv.col = first + 1;
    std::size_t vpos = line.find_first_not_of(" \t", eq + 1);
    kv.value_col = (vpos == std::string::npos ? eq + 2 : vpos + 1);
    if (cur->keys.count(key))
      fail(origin, lineno, kv.col,
           "duplicate key '" + key + "' in section [" +
               (cur == &top ? std::string("top level") : "ring " + cur->name) +
               "]");
    cur->keys.emplace(key, kv);
    cur->key_order.push_back(key);
  }

  SpecFile out;
  out.origin = origin;

  // Top-level defaults.
  {
    SectionReader r(origin, top);
    r.set_family("<top level>");
    if (const KeyValue* kv = r.get("n"))
      out.default_n = unsigned(parse_uint(origin, *kv, "n", 16));
    if (const KeyValue* kv = r.get("cap"))
      out.default_cap = std::size_t(
          parse_uint(origin, *kv, "cap", std::uint64_t(1) << 32));
    r.reject_unused();
  }

  // Pass 2: build rings in declaration order.
  for (Section& s : sections) {
    SectionReader r(origin, s);
    const KeyValue& fam_kv = r.require("family");
    const std::string fam = fam_kv.value;
    r.set_family(fam);

    RingDecl decl;
    decl.name = s.name;
    decl.n = out.default_n;
    decl.cap = out.default_cap;
    if (const KeyValue* kv = r.get("n"))
      decl.n = unsigned(parse_uint(origin, *kv, "n", 16));
    if (const KeyValue* kv = r.get("cap"))
      decl.cap = std::size_t(
          parse_uint(origin, *kv, "cap", std::uint64_t(1) << 32));

    try {
      if (fam == "zmod") {
        unsigned m = unsigned(
            parse_uint(origin, r.require("m"), "m", FiniteRing::default_order_cap));
        decl.ring = FiniteRing::zmod(m);
      } else if (fam == "trunc_poly" || fam == "matrix" ||
                 fam == "upper_triangular") {
        const KeyValue& base_kv = r.require("base");
        Ring base = lookup(origin, out, base_kv, base_kv.value);
        unsigned k = unsigned(parse_uint(origin, r.require("k"), "k", 16));
        if (fam == "trunc_poly")
          decl.ring = FiniteRing::trunc_poly(base, k);
        else if (fam == "matrix")
          decl.ring = FiniteRing::matrix_ring(k, base);
        else
          decl.ring = FiniteRing::upper_triangular(k, base);
      } else if (fam == "product") {
        const KeyValue& parts_kv = r.require("parts");
        std::vector<Ring> parts;
        for (const std::string& p : split_list(parts_kv.value)) {
          if (p.empty())
            fail(origin, parts_kv.line, parts_kv.value_col,
                 "empty entry in 'parts' list");
          parts.push_back(lookup(origin, out, parts_kv, p));
        }
        if (parts.size() < 2)
          fail(origin, parts_kv.line, parts_kv.value_col,
               "'parts' needs at least two rings");
        decl.ring = FiniteRing::product(parts);
      } else if (fam == "explicit") {
        unsigned order = unsigned(parse_uint(origin, r.require("order"),
                                             "order",
                                             FiniteRing::default_order_cap));
        std::vector<elem> add =
            parse_table(origin, r.require("add"), "add", order);
        std::vector<elem> mul =
            parse_table(origin, r.require("mul"), "mul", order);
        decl.ring = FiniteRing::from_tables(order, std::move(add),
                                            std::move(mul),
                                            "explicit:" + s.name);
      } else {
        fail(origin, fam_kv.line, fam_kv.value_col,
             "unknown family '" + fam +
                 "' (expected zmod, trunc_poly, matrix, upper_triangular, "
                 "product or explicit)");
      }
    } catch (const SpecParseError&) {
      throw;
    } catch (const RingstabError& e) {
      // Axiom violations and factory failures carry the section location.
      fail(origin, s.line, s.col,
           "ring '" + s.name + "' failed to build: " + e.what());
    }

    r.reject_unused();
    out.rings.push_back(std::move(decl));
  }

  if (out.rings.empty())
    fail(origin, lineno ? lineno : 1, 1, "spec declares no rings");
  return out;
}

SpecFile parse_ring_spec(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw RingstabError("cannot open ring spec '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_ring_spec_text(ss.str(), path);
}

}  // namespace ringstab
