#include "dgforge/io.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <vector>

namespace dgforge {

namespace {

struct Token {
  enum Kind { word, star, equals, plus, minus } kind = word;
  std::string text;
  int col = 1;
};

struct Line {
  int number = 0;
  std::string key;
  int key_col = 1;
  std::vector<Token> rest;
  std::string raw;  // text after the key
  int raw_col = 1;
};

class Document {
 public:
  Document(const std::string& text, std::string source) : source_(std::move(source)) {
    std::istringstream in(text);
    std::string s;
    int n = 0;
    while (std::getline(in, s)) {
      ++n;
      if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
      if (!s.empty() && s.back() == '\r') s.pop_back();
      std::size_t i = s.find_first_not_of(" \t");
      if (i == std::string::npos) continue;
      Line l;
      l.number = n;
      std::size_t j = s.find_first_of(" \t", i);
      l.key = s.substr(i, j == std::string::npos ? std::string::npos : j - i);
      l.key_col = static_cast<int>(i) + 1;
      if (j != std::string::npos) {
        std::size_t k = s.find_first_not_of(" \t", j);
        if (k != std::string::npos) {
          l.raw = s.substr(k);
          while (!l.raw.empty() && (l.raw.back() == ' ' || l.raw.back() == '\t')) l.raw.pop_back();
          l.raw_col = static_cast<int>(k) + 1;
          tokenize(l, s, k);
        }
      }
      lines_.push_back(std::move(l));
    }
    if (lines_.empty() || lines_.front().key != "dgforge/1" || !lines_.front().raw.empty())
      fail(lines_.empty() ? 1 : lines_.front().number, lines_.empty() ? 1 : lines_.front().key_col,
           "expected version tag 'dgforge/1' on the first line");
  }

  [[noreturn]] void fail(int line, int col, const std::string& msg) const {
    throw Error(Errc::invalid_input, source_ + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
  [[noreturn]] void fail(const Line& l, const std::string& msg) const { fail(l.number, l.key_col, msg); }
  [[noreturn]] void fail(const Line& l, const Token& t, const std::string& msg) const { fail(l.number, t.col, msg); }

  const std::vector<Line>& lines() const { return lines_; }
  const std::string& source() const { return source_; }

  std::string kind() const {
    for (auto& l : lines_)
      if (l.key == "kind") return l.raw;
    fail(lines_.front().number, 1, "missing 'kind' line");
  }

 private:
  static void tokenize(Line& l, const std::string& s, std::size_t from) {
    for (std::size_t i = from; i < s.size();) {
      char c = s[i];
      if (c == ' ' || c == '\t') {
        ++i;
        continue;
      }
      Token t;
      t.col = static_cast<int>(i) + 1;
      if (c == '*' || c == '=' || c == '+' || c == '-') {
        t.kind = c == '*' ? Token::star : c == '=' ? Token::equals : c == '+' ? Token::plus : Token::minus;
        t.text = std::string(1, c);
        ++i;
      } else {
        std::size_t j = i;
        while (j < s.size() && std::string(" \t*=+-").find(s[j]) == std::string::npos) ++j;
        t.text = s.substr(i, j - i);
        i = j;
      }
      l.rest.push_back(std::move(t));
    }
  }

  std::string source_;
  std::vector<Line> lines_;
};

bool numeric(const std::string& w) {
  if (w.empty()) return false;
  auto slash = w.find('/');
  auto digits = [](const std::string& s) { return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos; };
  if (slash == std::string::npos) return digits(w);
  return digits(w.substr(0, slash)) && digits(w.substr(slash + 1));
}

template <class K> struct Names {
  std::map<std::string, int> index;
  int find(const Document& doc, const Line& l, const Token& t, const char* what) const {
    auto it = index.find(t.text);
    if (it == index.end()) doc.fail(l, t, std::string("unknown ") + what + " '" + t.text + "'");
    return it->second;
  }
};

/** Combination of names starting at token position pos, to the end of the line. */
template <class K>
Combination<K> parse_combination(const Document& doc, const Line& l, std::size_t pos, const Names<K>& names,
                                 const FieldSpec& field, const char* what) {
  std::map<int, K> acc;
  const auto& ts = l.rest;
  if (pos >= ts.size()) doc.fail(l.number, l.raw_col + static_cast<int>(l.raw.size()), "missing right hand side");
  bool first = true;
  while (pos < ts.size()) {
    K sign = scalar<K>(field, 1);
    if (ts[pos].kind == Token::plus || ts[pos].kind == Token::minus) {
      if (ts[pos].kind == Token::minus) sign = scalar<K>(field, -1);
      ++pos;
    } else if (!first) {
      doc.fail(l, ts[pos], "expected '+' or '-'");
    }
    first = false;
    if (pos >= ts.size() || ts[pos].kind != Token::word) doc.fail(l.number, pos < ts.size() ? ts[pos].col : l.raw_col, "expected a term");
    const Token& w = ts[pos++];
    bool has_name = pos < ts.size() && (ts[pos].kind == Token::word || ts[pos].kind == Token::star);
    if (has_name) {
      if (!numeric(w.text)) doc.fail(l, w, "expected a coefficient before '" + ts[pos].text + "'");
      if (ts[pos].kind == Token::star) ++pos;
      if (pos >= ts.size() || ts[pos].kind != Token::word) doc.fail(l, w, "coefficient without a basis element");
      K c = sign * ScalarTraits<K>::parse(field, w.text);
      int i = names.find(doc, l, ts[pos++], what);
      auto [it, fresh] = acc.try_emplace(i, c);
      if (!fresh) it->second += c;
    } else if (names.index.count(w.text)) {
      int i = names.index.at(w.text);
      auto [it, fresh] = acc.try_emplace(i, sign);
      if (!fresh) it->second += sign;
    } else if (numeric(w.text) && is_zero(ScalarTraits<K>::parse(field, w.text))) {
      continue;
    } else {
      doc.fail(l, w, std::string("unknown ") + what + " '" + w.text + "'");
    }
  }
  Combination<K> out;
  for (auto& [i, x] : acc)
    if (!is_zero(x)) out.emplace_back(i, x);
  return out;
}

std::vector<BasisElement> parse_basis(const Document& doc, const Line& l, std::set<std::string>& seen) {
  std::vector<BasisElement> out;
  std::istringstream in(l.raw);
  std::string word;
  std::size_t at = 0;
  while (in >> word) {
    at = l.raw.find(word, at);
    int col = l.raw_col + static_cast<int>(at);
    at += word.size();
    auto colon = word.rfind(':');
    if (colon == std::string::npos || colon == 0) doc.fail(l.number, col, "expected name:degree, got '" + word + "'");
    std::string name = word.substr(0, colon), deg = word.substr(colon + 1);
    if (name.find_first_of("*=+-") != std::string::npos) doc.fail(l.number, col, "basis names may not contain * = + -");
    std::size_t used = 0;
    int d = 0;
    try {
      d = std::stoi(deg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (deg.empty() || used != deg.size()) doc.fail(l.number, col, "bad degree '" + deg + "'");
    if (!seen.insert(name).second) doc.fail(l.number, col, "duplicate basis name '" + name + "'");
    out.push_back({name, d});
  }
  if (out.empty()) doc.fail(l, "empty basis line");
  return out;
}

/** Splits "a * b = rhs": returns the two names and the position of the right hand side. */
std::tuple<const Token*, const Token*, std::size_t> product_lhs(const Document& doc, const Line& l) {
  const auto& ts = l.rest;
  if (ts.size() < 4 || ts[0].kind != Token::word || ts[1].kind != Token::star || ts[2].kind != Token::word ||
      ts[3].kind != Token::equals)
    doc.fail(l.number, l.raw_col, "expected 'left * right = combination'");
  return {&ts[0], &ts[2], 4};
}

std::pair<const Token*, std::size_t> diff_lhs(const Document& doc, const Line& l) {
  const auto& ts = l.rest;
  if (ts.size() < 2 || ts[0].kind != Token::word || ts[1].kind != Token::equals)
    doc.fail(l.number, l.raw_col, "expected 'name = combination'");
  return {&ts[0], 2};
}

template <class K> std::string term_text(const K& x, const std::string& name, bool first) {
  std::string c = to_string(x);
  bool negative = !c.empty() && c[0] == '-';
  if (negative) c.erase(0, 1);
  std::string out = first ? (negative ? "-" : "") : (negative ? " - " : " + ");
  if (c != "1") out += c + " ";
  return out + name;
}

template <class K> std::string combination_text(const Combination<K>& c, const std::vector<BasisElement>& basis) {
  if (c.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c.size(); ++k) out += term_text(c[k].second, basis[c[k].first].name, k == 0);
  return out;
}

}  // namespace

FieldSpec peek_field(const std::string& text, const std::string& source) {
  Document doc(text, source);
  for (auto& l : doc.lines())
    if (l.key == "field") {
      try {
        return FieldSpec::parse(l.raw);
      } catch (const Error& e) {
        doc.fail(l.number, l.raw_col, e.what());
      }
    }
  return FieldSpec::rational();
}

template <class K> FdDga<K> parse_algebra(const std::string& text, const std::string& source) {
  Document doc(text, source);
  if (doc.kind() != "algebra") doc.fail(doc.lines().front().number, 1, "not an algebra document");
  FieldSpec field = peek_field(text, source);
  if (!ScalarTraits<K>::accepts(field)) doc.fail(1, 1, "field " + field.to_string() + " does not match the scalar type");
  std::vector<BasisElement> basis;
  std::set<std::string> seen;
  Names<K> names;
  const Line* unit_line = nullptr;
  for (auto& l : doc.lines()) {
    if (l.key == "basis") {
      for (auto& b : parse_basis(doc, l, seen)) {
        names.index[b.name] = static_cast<int>(basis.size());
        basis.push_back(b);
      }
    } else if (l.key == "unit") {
      if (unit_line) doc.fail(l, "unit given twice");
      unit_line = &l;
    } else if (l.key != "dgforge/1" && l.key != "kind" && l.key != "field" && l.key != "mul" && l.key != "diff") {
      doc.fail(l, "unknown key '" + l.key + "'");
    }
  }
  if (basis.empty()) return FdDga<K>::zero_ring(field);
  if (!unit_line) doc.fail(doc.lines().back().number, 1, "unit required");
  if (unit_line->rest.size() != 1) doc.fail(*unit_line, "expected a single basis name after 'unit'");
  const int unit = names.find(doc, *unit_line, unit_line->rest[0], "basis element");
  const int n = static_cast<int>(basis.size());
  std::vector<Combination<K>> mul(static_cast<std::size_t>(n) * n), diff(n);
  std::vector<bool> mul_set(mul.size(), false), diff_set(n, false);
  for (auto& l : doc.lines()) {
    if (l.key == "mul") {
      auto [x, y, pos] = product_lhs(doc, l);
      int i = names.find(doc, l, *x, "basis element"), j = names.find(doc, l, *y, "basis element");
      std::size_t at = static_cast<std::size_t>(i) * n + j;
      if (mul_set[at]) doc.fail(l, "product " + x->text + " * " + y->text + " given twice");
      mul_set[at] = true;
      mul[at] = parse_combination<K>(doc, l, pos, names, field, "basis element");
    } else if (l.key == "diff") {
      auto [x, pos] = diff_lhs(doc, l);
      int i = names.find(doc, l, *x, "basis element");
      if (diff_set[i]) doc.fail(l, "differential of " + x->text + " given twice");
      diff_set[i] = true;
      diff[i] = parse_combination<K>(doc, l, pos, names, field, "basis element");
    }
  }
  for (int i = 0; i < n; ++i) {
    Combination<K> e{{i, scalar<K>(field, 1)}};
    if (!mul_set[static_cast<std::size_t>(unit) * n + i]) mul[static_cast<std::size_t>(unit) * n + i] = e;
    if (!mul_set[static_cast<std::size_t>(i) * n + unit]) mul[static_cast<std::size_t>(i) * n + unit] = e;
  }
  return FdDga<K>(field, std::move(basis), unit, std::move(mul), std::move(diff));
}

ModuleHeader peek_module(const std::string& text, const std::string& source) {
  Document doc(text, source);
  if (doc.kind() != "module") doc.fail(doc.lines().front().number, 1, "not a module document");
  ModuleHeader h;
  for (auto& l : doc.lines()) {
    if (l.key == "algebra") h.algebra = l.raw;
    if (l.key == "over") {
      if (l.raw == "A")
        h.opposite = false;
      else if (l.raw == "A^op")
        h.opposite = true;
      else
        doc.fail(l.number, l.raw_col, "expected 'A' or 'A^op'");
    }
  }
  return h;
}

template <class K> DgModule<K> parse_module(const std::string& text, const std::string& source, DgaPtr<K> algebra) {
  Document doc(text, source);
  peek_module(text, source);
  const auto& a = *algebra;
  const FieldSpec field = a.field();
  std::vector<BasisElement> basis;
  std::set<std::string> seen;
  Names<K> names, alg;
  for (int i = 0; i < a.dim(); ++i) alg.index[a.name(i)] = i;
  for (auto& l : doc.lines()) {
    if (l.key == "basis") {
      for (auto& b : parse_basis(doc, l, seen)) {
        names.index[b.name] = static_cast<int>(basis.size());
        basis.push_back(b);
      }
    } else if (l.key != "dgforge/1" && l.key != "kind" && l.key != "algebra" && l.key != "over" && l.key != "act" &&
               l.key != "diff") {
      doc.fail(l, "unknown key '" + l.key + "'");
    }
  }
  const int n = static_cast<int>(basis.size()), na = a.dim();
  std::vector<Combination<K>> action(static_cast<std::size_t>(n) * na), diff(n);
  std::vector<bool> act_set(action.size(), false), diff_set(n, false);
  for (auto& l : doc.lines()) {
    if (l.key == "act") {
      auto [x, y, pos] = product_lhs(doc, l);
      int i = names.find(doc, l, *x, "module basis element"), j = alg.find(doc, l, *y, "algebra basis element");
      std::size_t at = static_cast<std::size_t>(i) * na + j;
      if (act_set[at]) doc.fail(l, "action " + x->text + " * " + y->text + " given twice");
      act_set[at] = true;
      action[at] = parse_combination<K>(doc, l, pos, names, field, "module basis element");
    } else if (l.key == "diff") {
      auto [x, pos] = diff_lhs(doc, l);
      int i = names.find(doc, l, *x, "module basis element");
      if (diff_set[i]) doc.fail(l, "differential of " + x->text + " given twice");
      diff_set[i] = true;
      diff[i] = parse_combination<K>(doc, l, pos, names, field, "module basis element");
    }
  }
  if (!a.is_zero_ring())
    for (int i = 0; i < n; ++i) {
      std::size_t at = static_cast<std::size_t>(i) * na + a.unit();
      if (!act_set[at]) action[at] = {{i, scalar<K>(field, 1)}};
    }
  return DgModule<K>(std::move(algebra), std::move(basis), std::move(action), std::move(diff));
}

template <class K> std::string emit_algebra(const FdDga<K>& a) {
  std::ostringstream os;
  os << "dgforge/1\nkind algebra\nfield " << (a.field().is_rational() ? "Q" : "Fp:" + std::to_string(a.field().prime))
     << "\n";
  if (a.is_zero_ring()) return os.str();
  os << "basis";
  for (auto& b : a.basis()) os << " " << b.name << ":" << b.degree;
  os << "\n";
  os << "unit " << a.name(a.unit()) << "\n";
  const int u = a.unit();
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      const auto& p = a.product(i, j);
      Combination<K> implied = (i == u) ? Combination<K>{{j, a.lit(1)}} : Combination<K>{{i, a.lit(1)}};
      if (i == u || j == u) {
        if (p == implied) continue;
      } else if (p.empty()) {
        continue;
      }
      os << "mul " << a.name(i) << " * " << a.name(j) << " = " << combination_text(p, a.basis()) << "\n";
    }
  for (int i = 0; i < a.dim(); ++i)
    if (!a.differential(i).empty())
      os << "diff " << a.name(i) << " = " << combination_text(a.differential(i), a.basis()) << "\n";
  return os.str();
}

template <class K> std::string emit_module(const DgModule<K>& m, const std::string& algebra_ref, bool opposite) {
  const auto& a = m.algebra();
  std::ostringstream os;
  os << "dgforge/1\nkind module\nalgebra " << algebra_ref << "\nover " << (opposite ? "A^op" : "A") << "\n";
  if (m.dim()) {
    os << "basis";
    for (auto& b : m.basis()) os << " " << b.name << ":" << b.degree;
    os << "\n";
  }
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      const auto& p = m.action(i, j);
      if (j == a.unit() && p == Combination<K>{{i, a.lit(1)}}) continue;
      if (j != a.unit() && p.empty()) continue;
      os << "act " << m.name(i) << " * " << a.name(j) << " = " << combination_text(p, m.basis()) << "\n";
    }
  for (int i = 0; i < m.dim(); ++i)
    if (!m.differential(i).empty())
      os << "diff " << m.name(i) << " = " << combination_text(m.differential(i), m.basis()) << "\n";
  return os.str();
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::invalid_input, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

#define DGFORGE_INSTANTIATE(K)                                                                           \
  template FdDga<K> parse_algebra<K>(const std::string&, const std::string&);                            \
  template DgModule<K> parse_module<K>(const std::string&, const std::string&, DgaPtr<K>);               \
  template std::string emit_algebra<K>(const FdDga<K>&);                                                 \
  template std::string emit_module<K>(const DgModule<K>&, const std::string&, bool);

DGFORGE_INSTANTIATE(Rational)
DGFORGE_INSTANTIATE(Fp)

}  // namespace dgforge
