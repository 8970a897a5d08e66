#include "kappa/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "kappa/construct.hpp"
#include "kappa/errors.hpp"

namespace kappa {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(1, static_cast<int>(pos) + 1, msg);
  }
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected identifier");
    return s.substr(start, pos - start);
  }
  long long integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      fail("expected integer");
    return std::stoll(s.substr(start, pos - start));
  }
};

struct Parser {
  Cursor cur;
  RunCaps caps;
  std::filesystem::path base_dir;

  FiniteGroup descriptor() {
    std::string head = cur.ident();
    if (head == "cyclic") {
      cur.expect('(');
      long long n = cur.integer();
      cur.expect(')');
      if (n < 1) cur.fail("cyclic: order must be >= 1");
      return cyclic(static_cast<std::uint32_t>(n), caps.max_order);
    }
    if (head == "abelian") return abelian(abelian_body(), caps.max_order);
    if (head == "direct") {
      cur.expect('(');
      FiniteGroup a = descriptor();
      cur.expect(',');
      FiniteGroup b = descriptor();
      cur.expect(')');
      return direct_product(a, b, caps.max_order);
    }
    if (head == "semidirect") return semidirect_body();
    if (head == "perm") return perm_body();
    if (head == "catalog") return catalog_body();
    if (head == "cayley") {
      cur.expect('(');
      std::size_t start = cur.pos;
      while (cur.pos < cur.s.size() && cur.s[cur.pos] != ')') ++cur.pos;
      if (cur.pos >= cur.s.size()) cur.fail("unterminated cayley path");
      std::string path = cur.s.substr(start, cur.pos - start);
      cur.expect(')');
      // trim
      while (!path.empty() && std::isspace(static_cast<unsigned char>(path.front())))
        path.erase(path.begin());
      while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back()))) path.pop_back();
      if (path.empty()) cur.fail("empty cayley path");
      std::filesystem::path p(path);
      if (p.is_relative()) p = base_dir / p;
      return load_cayley_table(p, caps);
    }
    cur.fail("unknown constructor '" + head + "'");
  }

  AbelianType abelian_body() {
    AbelianType t;
    cur.expect('[');
    t.prime_powers.push_back(u32_int("abelian factor"));
    while (cur.accept(',')) t.prime_powers.push_back(u32_int("abelian factor"));
    cur.expect(']');
    return t;
  }

  std::uint32_t u32_int(const char* what) {
    long long v = cur.integer();
    if (v < 0) cur.fail(std::string(what) + " must be non-negative");
    return static_cast<std::uint32_t>(v);
  }

  FiniteGroup semidirect_body() {
    cur.expect('(');
    std::string inner = cur.ident();
    if (inner != "abelian") cur.fail("semidirect base must be abelian[...]");
    AbelianType base = abelian_body();
    cur.expect(',');
    std::uint32_t q = u32_int("acting order");
    cur.expect(',');
    std::string kw = cur.ident();
    if (kw != "action") cur.fail("expected action{...}");
    cur.expect('{');
    ActionSpec act;
    act.images.resize(base.prime_powers.size());
    std::vector<char> seen(base.prime_powers.size(), 0);
    do {
      std::uint32_t gen = gen_index(base.prime_powers.size());
      cur.expect('-');
      cur.expect('>');
      ActionSpec::Word w = word(base.prime_powers.size());
      if (seen[gen]) cur.fail("duplicate image for generator");
      seen[gen] = 1;
      act.images[gen] = std::move(w);
    } while (cur.accept(','));
    cur.expect('}');
    cur.expect(')');
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) cur.fail("missing image for generator #" + std::to_string(i));
    return semidirect(base, q, act, caps.max_order);
  }

  std::uint32_t gen_index(std::size_t rank) {
    cur.skip_ws();
    if (cur.pos >= cur.s.size()) cur.fail("expected generator letter");
    char c = cur.s[cur.pos];
    if (c < 'a' || c > 'z') cur.fail("generator must be a letter a..z");
    std::uint32_t idx = static_cast<std::uint32_t>(c - 'a');
    if (idx >= rank) cur.fail("generator letter beyond base rank");
    ++cur.pos;
    return idx;
  }

  ActionSpec::Word word(std::size_t rank) {
    ActionSpec::Word w;
    cur.skip_ws();
    if (cur.peek() == '1') {
      cur.accept('1');
      return w;  // identity word
    }
    do {
      std::uint32_t g = gen_index(rank);
      long long e = 1;
      if (cur.accept('^')) e = cur.integer();
      w.push_back({g, e});
    } while (cur.accept('*'));
    return w;
  }

  FiniteGroup perm_body() {
    cur.expect('(');
    std::uint32_t degree = u32_int("degree");
    cur.expect(')');
    cur.expect('{');
    std::vector<std::vector<std::uint32_t>> gens;
    do {
      gens.push_back(perm_generator(degree));
    } while (cur.accept(','));
    cur.expect('}');
    return from_permutations(degree, gens, caps.max_order);
  }

  // one generator = one or more cycles, e.g. (0 1)(2 3)
  std::vector<std::uint32_t> perm_generator(std::uint32_t degree) {
    std::vector<std::uint32_t> img(degree);
    for (std::uint32_t i = 0; i < degree; ++i) img[i] = i;
    bool any = false;
    while (cur.peek() == '(') {
      cur.expect('(');
      any = true;
      std::vector<std::uint32_t> cyc;
      while (cur.peek() != ')') {
        long long v = cur.integer();
        if (v < 0 || v >= degree) cur.fail("cycle point out of range");
        cyc.push_back(static_cast<std::uint32_t>(v));
      }
      cur.expect(')');
      if (cyc.size() > 1)
        for (std::size_t i = 0; i < cyc.size(); ++i) {
          if (img[cyc[i]] != cyc[i]) cur.fail("point repeated in generator");
          img[cyc[i]] = cyc[(i + 1) % cyc.size()];
        }
    }
    if (!any) cur.fail("expected a cycle");
    return img;
  }

  FiniteGroup catalog_body() {
    cur.expect('(');
    std::string name = cur.ident();
    std::vector<std::pair<std::string, long long>> params;  // name may be empty
    while (cur.accept(',')) {
      cur.skip_ws();
      if (std::isalpha(static_cast<unsigned char>(cur.peek()))) {
        std::string pname = cur.ident();
        cur.expect('=');
        params.push_back({pname, cur.integer()});
      } else {
        params.push_back({"", cur.integer()});
      }
    }
    cur.expect(')');
    return catalog(name, resolve_params(name, params), caps.max_order);
  }

  std::vector<long long> resolve_params(const std::string& name,
                                        const std::vector<std::pair<std::string, long long>>& in) {
    static const std::vector<std::pair<std::string, std::vector<std::string>>> schema = {
        {"dihedral", {"order"}},      {"quaternion", {"order"}}, {"semidihedral", {"order"}},
        {"modular", {"p", "n"}},      {"heisenberg", {"p"}},     {"extraspecial", {"p", "sign"}},
        {"a5", {}},                   {"example72", {}},         {"fermat_family", {"p"}},
        {"mersenne_family", {"q", "r"}},
    };
    const std::vector<std::string>* names = nullptr;
    for (const auto& [n, ps] : schema)
      if (n == name) names = &ps;
    if (!names) cur.fail("unknown catalog entry '" + name + "'");
    bool any_named = false, any_positional = false;
    for (const auto& [n, v] : in) (n.empty() ? any_positional : any_named) = true;
    if (any_named && any_positional) cur.fail("catalog: mix of named and positional parameters");
    if (!any_named) {
      std::vector<long long> out;
      for (const auto& [n, v] : in) out.push_back(v);
      return out;
    }
    std::vector<long long> out(names->size(), 0);
    std::vector<char> set(names->size(), 0);
    for (const auto& [n, v] : in) {
      bool found = false;
      for (std::size_t i = 0; i < names->size(); ++i)
        if ((*names)[i] == n) {
          out[i] = v;
          set[i] = 1;
          found = true;
        }
      if (!found) cur.fail("catalog " + name + ": unknown parameter '" + n + "'");
    }
    for (std::size_t i = 0; i < names->size(); ++i)
      if (!set[i]) cur.fail("catalog " + name + ": missing parameter '" + (*names)[i] + "'");
    return out;
  }
};

}  // namespace

FiniteGroup parse_group(const std::string& descriptor, const RunCaps& caps,
                        const std::filesystem::path& base_dir) {
  Parser p{Cursor{descriptor}, caps, base_dir};
  FiniteGroup g = p.descriptor();
  if (!p.cur.done()) p.cur.fail("trailing input after descriptor");
  return g;
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus file: " + path.string());
  std::vector<CorpusEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string text = line, name;
    if (auto hash = text.find('#'); hash != std::string::npos) {
      name = text.substr(hash + 1);
      text = text.substr(0, hash);
    }
    auto trim = [](std::string& s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    };
    trim(text);
    trim(name);
    if (text.empty()) continue;  // blank or full-line comment
    out.push_back({name.empty() ? text : name, text, lineno});
  }
  return out;
}

FiniteGroup load_cayley_table(const std::filesystem::path& path, const RunCaps& caps) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open cayley file: " + path.string());
  std::vector<std::vector<std::uint32_t>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    std::vector<std::uint32_t> row;
    long long v;
    while (ss >> v) {
      if (v < 0) throw ParseError(lineno, 1, "negative table entry");
      row.push_back(static_cast<std::uint32_t>(v));
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(1, 1, "empty cayley table");
  std::uint32_t n = static_cast<std::uint32_t>(rows[0].size());
  if (rows.size() != n)
    throw ParseError(1, 1, "cayley table must be square: " + std::to_string(rows.size()) +
                               " rows of width " + std::to_string(n));
  std::vector<std::uint32_t> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw ParseError(1, 1, "ragged cayley table row");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  FiniteGroup g = FiniteGroup::from_table(n, std::move(flat), path.filename().string(), caps);
  if (g.identity() != 0) throw InputError("cayley table: element 0 must be the identity");
  return g;
}

}  // namespace kappa
