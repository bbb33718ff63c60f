#include "katlcl/loader.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace katlcl {

// ---------------------------------------------------------------------------
// literals

namespace {

std::string trim(const std::string &s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos)
    return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_commas(const std::string &body) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : body) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else
      cur += ch;
  }
  if (!trim(cur).empty())
    out.push_back(trim(cur));
  return out;
}

int parse_int(const std::string &s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size())
      throw std::invalid_argument(s);
    return v;
  } catch (const std::exception &) {
    throw ParseError("expected an integer, got '" + s + "'", 0);
  }
}

} // namespace

TestSet parse_literal(const Model &m, ConcreteKind kind, const std::string &raw) {
  std::string s = trim(raw);
  bool top_prefix = false;
  if (s.rfind("top{", 0) == 0) {
    top_prefix = true;
    s = s.substr(3);
  }
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw ParseError("literal must be {...} or top{...}: '" + raw + "'", 0);
  if (top_prefix && kind != ConcreteKind::ToppCodomains)
    throw SemanticError("codomain literal used where a test is expected: " + raw);
  std::string body = trim(s.substr(1, s.size() - 2));
  std::vector<std::string> entries =
      body.empty() ? std::vector<std::string>{} : split_commas(body);

  switch (m.kind()) {
  case ModelKind::RelationalFull: {
    TestSet p(m.carrier_size());
    for (const auto &e : entries) {
      std::size_t dots = e.find("..");
      if (dots != std::string::npos) {
        int a = parse_int(trim(e.substr(0, dots)));
        int b = parse_int(trim(e.substr(dots + 2)));
        if (b < a)
          throw SemanticError("empty range '" + e + "'");
        for (int z = a; z <= b; ++z)
          p.set(m.point_index(z));
      } else
        p.set(m.point_index(parse_int(e)));
    }
    return p;
  }
  case ModelKind::GuardedStringTests: {
    std::size_t nb = m.gs_tests().size();
    TestSet p(m.gs_atom_count());
    for (const auto &e : entries) {
      if (e.size() != nb)
        throw SemanticError("atom '" + e + "' must have " + std::to_string(nb) +
                            " signs");
      int idx = 0;
      for (std::size_t i = 0; i < nb; ++i) {
        if (e[i] == '+')
          idx |= 1 << i;
        else if (e[i] != '-')
          throw SemanticError("atom '" + e + "' may only use + and -");
      }
      p.set(idx);
    }
    return p;
  }
  case ModelKind::ExplicitTable: {
    if (entries.size() != 1)
      throw SemanticError("table literal needs exactly one element name: " + raw);
    const auto &names = m.table_names();
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == entries[0]) {
        TestSet one = m.table_one_hot(static_cast<int>(i));
        if (kind == ConcreteKind::ToppCodomains) {
          Elem e{Elem::Kind::TableId, {}, {}, static_cast<int>(i)};
          return m.top_mul(e); // top{x} denotes the element T.x
        }
        if (!m.is_test(one))
          throw SemanticError("'" + entries[0] + "' is not a test element");
        return one;
      }
    throw SemanticError("unknown table element '" + entries[0] + "'");
  }
  }
  throw std::logic_error("bad model kind");
}

std::string print_literal(const Model &m, ConcreteKind kind, const TestSet &p) {
  std::string prefix = kind == ConcreteKind::ToppCodomains ? "top" : "";
  return prefix + show_test(m, p);
}

// ---------------------------------------------------------------------------
// model files

namespace {

std::vector<std::string> words(const std::string &line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string w;
  while (in >> w)
    out.push_back(w);
  return out;
}

Elem parse_generator(const Model &m, const std::vector<std::string> &w,
                     std::size_t &i, const std::string &origin, int lineno) {
  auto err = [&](const std::string &msg) {
    throw ParseError(origin + ":" + std::to_string(lineno) + ": " + msg, 0);
  };
  if (i >= w.size())
    err("missing generator");
  std::string g = w[i++];
  int n = m.carrier_size();
  Elem e{Elem::Kind::Rel, std::vector<TestSet>(n, TestSet(n)), {}, -1};
  if (g == "succ") {
    for (int z = m.carrier_lo(); z < m.carrier_hi(); ++z)
      e.rel[m.point_index(z)].set(m.point_index(z + 1));
    return e;
  }
  if (g == "empty")
    return e;
  if (g == "full")
    return m.one_elem();
  if (g == "ge" || g == "lt") {
    if (i >= w.size())
      err("generator '" + g + "' needs a bound");
    int k = parse_int(w[i++]);
    for (int z = m.carrier_lo(); z <= m.carrier_hi(); ++z)
      if ((g == "ge") ? z >= k : z < k)
        e.rel[m.point_index(z)].set(m.point_index(z));
    return e;
  }
  if (g == "pairs") {
    // remaining tokens of the form (x,y)(x,y)... possibly split by spaces
    std::string all;
    while (i < w.size() && (w[i][0] == '(' || all.empty() || all.back() != ')'))
      all += w[i++];
    std::size_t pos = 0;
    while (pos < all.size()) {
      if (all[pos] != '(')
        err("expected '(' in pair list");
      std::size_t close = all.find(')', pos);
      std::size_t comma = all.find(',', pos);
      if (close == std::string::npos || comma == std::string::npos || comma > close)
        err("malformed pair in pair list");
      int x = parse_int(all.substr(pos + 1, comma - pos - 1));
      int y = parse_int(all.substr(comma + 1, close - comma - 1));
      e.rel[m.point_index(x)].set(m.point_index(y));
      pos = close + 1;
    }
    return e;
  }
  err("unknown generator '" + g + "'");
  return e;
}

bool is_subidentity(const Model &m, const Elem &e) {
  for (int x = 0; x < m.carrier_size(); ++x)
    for (std::size_t y = e.rel[x].find_first(); y != TestSet::npos;
         y = e.rel[x].find_next(y))
      if (static_cast<int>(y) != x)
        return false;
  return true;
}

} // namespace

LoadedModel load_model_text(const std::string &text, const std::string &origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto err = [&](const std::string &msg) {
    throw ParseError(origin + ":" + std::to_string(lineno) + ": " + msg, 0);
  };

  std::vector<std::vector<std::string>> lines;
  std::vector<int> linenos;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    auto w = words(line);
    if (!w.empty()) {
      lines.push_back(std::move(w));
      linenos.push_back(lineno);
    }
  }
  if (lines.empty())
    throw ParseError(origin + ": empty model file", 0);

  lineno = linenos[0];
  const auto &head = lines[0];
  if (head[0] != "model")
    err("model file must start with a 'model' line");

  LoadedModel lm{Model::relational(0, 0), {}, {}, {}};
  std::size_t li = 1;

  auto reserved = [](const std::string &n) { return n == "0" || n == "1"; };
  auto declare = [&](AtomKind kind, const std::string &name, Elem ok, Elem er) {
    if (reserved(name))
      err("atom name '" + name + "' is reserved");
    if (lm.sigma.count(name) || lm.b.count(name))
      err("duplicate atom '" + name + "'");
    (kind == AtomKind::Action ? lm.sigma : lm.b).insert(name);
    lm.eval.define(kind, name, std::move(ok), std::move(er));
  };

  if (head.size() >= 2 && head[1] == "relational") {
    if (li >= lines.size() || lines[li][0] != "carrier" || lines[li].size() != 3)
      err("relational model needs a 'carrier L U' line");
    lineno = linenos[li];
    lm.model = Model::relational(parse_int(lines[li][1]), parse_int(lines[li][2]));
    ++li;
    for (; li < lines.size(); ++li) {
      lineno = linenos[li];
      const auto &w = lines[li];
      if ((w[0] != "action" && w[0] != "test") || w.size() < 4 || w[2] != "ok")
        err("expected 'action NAME ok GEN [err GEN]' or 'test NAME ok GEN'");
      std::size_t i = 3;
      Elem ok = parse_generator(lm.model, w, i, origin, lineno);
      Elem er = lm.model.zero_elem();
      if (i < w.size()) {
        if (w[0] == "test" || w[i] != "err")
          err("unexpected trailing tokens");
        ++i;
        er = parse_generator(lm.model, w, i, origin, lineno);
      }
      if (w[0] == "test") {
        if (!is_subidentity(lm.model, ok))
          err("test '" + w[1] + "' must evaluate to a sub-identity");
        declare(AtomKind::PrimTest, w[1], std::move(ok), std::move(er));
      } else
        declare(AtomKind::Action, w[1], std::move(ok), std::move(er));
    }
    return lm;
  }

  if (head.size() >= 2 && head[1] == "guarded-strings") {
    std::vector<std::string> b(head.begin() + 2, head.end());
    lm.model = Model::guarded_strings(b);
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (reserved(b[k]))
        err("test name '" + b[k] + "' is reserved");
      Elem t{Elem::Kind::TestVal, {}, lm.model.gs_prim_test(static_cast<int>(k)),
             -1};
      declare(AtomKind::PrimTest, b[k], std::move(t), lm.model.zero_elem());
    }
    for (; li < lines.size(); ++li) {
      lineno = linenos[li];
      const auto &w = lines[li];
      if (w[0] != "action" || w.size() != 2)
        err("guarded-string models take 'action NAME' lines only");
      declare(AtomKind::Action, w[1],
              Elem{Elem::Kind::GsAction, {}, {}, static_cast<int>(li)},
              lm.model.zero_elem());
    }
    return lm;
  }

  if (head.size() >= 2 && head[1] == "a3") {
    lm.model = Model::a3();
    auto elem_by_name = [&](const std::string &n) -> Elem {
      const auto &names = lm.model.table_names();
      for (std::size_t k = 0; k < names.size(); ++k)
        if (names[k] == n)
          return Elem{Elem::Kind::TableId, {}, {}, static_cast<int>(k)};
      err("unknown element '" + n + "'");
      return {};
    };
    for (; li < lines.size(); ++li) {
      lineno = linenos[li];
      const auto &w = lines[li];
      if ((w[0] != "action" && w[0] != "test") ||
          (w.size() != 4 && w.size() != 6) || w[2] != "ok")
        err("expected 'action NAME ok ELEM [err ELEM]' or 'test NAME ok ELEM'");
      Elem ok = elem_by_name(w[3]);
      Elem er = lm.model.zero_elem();
      if (w.size() == 6) {
        if (w[0] == "test" || w[4] != "err")
          err("unexpected trailing tokens");
        er = elem_by_name(w[5]);
      }
      if (w[0] == "test") {
        if (!lm.model.is_test(lm.model.table_one_hot(ok.id)))
          err("'" + w[3] + "' is not a test element");
        declare(AtomKind::PrimTest, w[1], std::move(ok), std::move(er));
      } else
        declare(AtomKind::Action, w[1], std::move(ok), std::move(er));
    }
    return lm;
  }

  err("unknown model kind '" + (head.size() > 1 ? head[1] : "") + "'");
  return lm;
}

LoadedModel load_model_file(const std::filesystem::path &file) {
  std::ifstream in(file);
  if (!in)
    throw SemanticError("cannot open model file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return load_model_text(ss.str(), file.filename().string());
}

// ---------------------------------------------------------------------------
// domain files

GaloisInsertion load_domain_text(const std::string &text, const Model &m,
                                 ConcreteKind kind, const std::string &origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto err = [&](const std::string &msg) {
    throw ParseError(origin + ":" + std::to_string(lineno) + ": " + msg, 0);
  };

  std::string head;
  std::vector<GaloisInsertion::TableElem> elems;
  std::vector<std::pair<std::string, std::string>> order;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    auto w = words(line);
    if (w.empty())
      continue;
    if (w[0] == "domain") {
      if (!head.empty() || w.size() != 2)
        err("expected a single 'domain NAME' line");
      head = w[1];
    } else if (w[0] == "elem") {
      if (head != "table")
        err("'elem' lines belong to table domains");
      if (w.size() != 4 || w[2] != "gamma")
        err("expected 'elem NAME gamma LITERAL'");
      elems.push_back({w[1], parse_literal(m, kind, w[3])});
    } else if (w[0] == "order") {
      if (head != "table" || w.size() != 4 || w[2] != "<=")
        err("expected 'order NAME <= NAME'");
      order.emplace_back(w[1], w[3]);
    } else
      err("unexpected line '" + w[0] + "'");
  }
  if (head.empty())
    err("missing 'domain' line");
  if (head == "trivial")
    return GaloisInsertion::trivial(m, kind);
  if (head == "parity") {
    if (kind != ConcreteKind::Tests)
      throw SemanticError("parity domain abstracts tests only");
    return GaloisInsertion::parity(m);
  }
  if (head == "sign")
    return GaloisInsertion::sign(m, kind);
  if (head == "interval")
    return GaloisInsertion::interval(m, kind);
  if (head == "table")
    return GaloisInsertion::from_table(m, kind, std::move(elems), order);
  err("unknown domain '" + head + "'");
  throw std::logic_error("unreachable");
}

GaloisInsertion load_domain_file(const std::filesystem::path &file,
                                 const Model &m, ConcreteKind kind) {
  std::ifstream in(file);
  if (!in)
    throw SemanticError("cannot open domain file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return load_domain_text(ss.str(), m, kind, file.filename().string());
}

// ---------------------------------------------------------------------------
// triples

namespace {

ConcreteKind kind_of(System sys) {
  return system_on_topp(sys) ? ConcreteKind::ToppCodomains : ConcreteKind::Tests;
}

} // namespace

Triple parse_triple(const LoadedModel &lm, System sys, const std::string &s) {
  ConcreteKind kind = kind_of(sys);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
      ++i;
  };
  auto bracket_group = [&]() -> std::string {
    skip_ws();
    if (i >= s.size() || s[i] != '[')
      throw ParseError("expected '[' in triple", i);
    std::size_t close = s.find(']', i);
    if (close == std::string::npos)
      throw ParseError("unterminated '[' in triple", i);
    std::string body = s.substr(i + 1, close - i - 1);
    i = close + 1;
    return trim(body);
  };

  Triple tr;
  tr.system = sys;
  tr.pre = parse_literal(lm.model, kind, bracket_group());
  skip_ws();
  std::size_t term_start = i;
  std::size_t next = s.find('[', i);
  if (next == std::string::npos)
    throw ParseError("triple lacks a postcondition", i);
  std::string term_text = trim(s.substr(term_start, next - term_start));
  tr.term = parse_term(term_text, lm.sigma, lm.b);
  i = next;

  while (true) {
    skip_ws();
    if (i >= s.size())
      break;
    std::string body = bracket_group();
    std::size_t colon = body.find(':');
    std::string tag = colon == std::string::npos ? "" : trim(body.substr(0, colon));
    std::string lit = colon == std::string::npos ? body : trim(body.substr(colon + 1));
    if (tag == "ok")
      tr.ok = parse_literal(lm.model, kind, lit);
    else if (tag == "err")
      tr.err = parse_literal(lm.model, kind, lit);
    else if (tag.empty())
      tr.ok = parse_literal(lm.model, kind, lit);
    else
      throw SemanticError("unknown postcondition tag '" + tag + "'");
  }
  if (!tr.ok && !tr.err)
    throw ParseError("triple lacks a postcondition", i);
  if (!system_has_pairs(sys) && tr.err)
    throw SemanticError("system " + system_name(sys) +
                        " takes a single postcondition");
  return tr;
}

// ---------------------------------------------------------------------------
// derivation s-expressions

namespace {

struct SToken {
  enum class Kind { LParen, RParen, LBrack, RBrack, Keyword, Literal, Str, Word };
  Kind kind;
  std::string text;
  std::size_t pos;
};

std::vector<SToken> slex(const std::string &s) {
  std::vector<SToken> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (ch == ';') { // comment to end of line
      while (i < s.size() && s[i] != '\n')
        ++i;
      continue;
    }
    if (ch == '(') {
      out.push_back({SToken::Kind::LParen, "(", i++});
      continue;
    }
    if (ch == ')') {
      out.push_back({SToken::Kind::RParen, ")", i++});
      continue;
    }
    if (ch == '[') {
      out.push_back({SToken::Kind::LBrack, "[", i++});
      continue;
    }
    if (ch == ']') {
      out.push_back({SToken::Kind::RBrack, "]", i++});
      continue;
    }
    if (ch == ':') {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                              s[j] == '-' || s[j] == '\''))
        ++j;
      out.push_back({SToken::Kind::Keyword, s.substr(i + 1, j - i - 1), i});
      i = j;
      continue;
    }
    if (ch == '"') {
      std::size_t j = s.find('"', i + 1);
      if (j == std::string::npos)
        throw ParseError("unterminated string", i);
      out.push_back({SToken::Kind::Str, s.substr(i + 1, j - i - 1), i});
      i = j + 1;
      continue;
    }
    if (ch == '{' || (ch == 't' && s.compare(i, 4, "top{") == 0)) {
      std::size_t open = s.find('{', i);
      std::size_t j = s.find('}', open);
      if (j == std::string::npos)
        throw ParseError("unterminated literal", i);
      out.push_back({SToken::Kind::Literal, s.substr(i, j - i + 1), i});
      i = j + 1;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                            s[j] == '-' || s[j] == '_'))
      ++j;
    if (j == i)
      throw ParseError(std::string("unexpected character '") + ch + "'", i);
    out.push_back({SToken::Kind::Word, s.substr(i, j - i), i});
    i = j;
  }
  return out;
}

struct SParser {
  const LoadedModel &lm;
  System sys;
  std::vector<SToken> toks;
  std::size_t i = 0;

  ConcreteKind kind() const { return kind_of(sys); }

  const SToken &peek() const {
    if (i >= toks.size())
      throw ParseError("unexpected end of derivation", 0);
    return toks[i];
  }
  SToken next() {
    const SToken &t = peek();
    ++i;
    return t;
  }
  void expect(SToken::Kind k, const std::string &what) {
    if (peek().kind != k)
      throw ParseError("expected " + what + " at position " +
                           std::to_string(peek().pos),
                       peek().pos);
    ++i;
  }

  TestSet literal() {
    const SToken &t = peek();
    if (t.kind != SToken::Kind::Literal)
      throw ParseError("expected a {...} literal", t.pos);
    ++i;
    return parse_literal(lm.model, kind(), t.text);
  }

  TermPtr term_str() {
    const SToken &t = peek();
    if (t.kind != SToken::Kind::Str)
      throw ParseError("expected a quoted term", t.pos);
    ++i;
    return parse_term(t.text, lm.sigma, lm.b);
  }

  Eps eps_word(const std::string &w, std::size_t pos) {
    if (w == "ok")
      return Eps::Ok;
    if (w == "err")
      return Eps::Err;
    if (w == "both")
      return Eps::Both;
    throw ParseError("expected ok, err or both", pos);
  }

  Derivation node() {
    expect(SToken::Kind::LParen, "'('");
    const SToken &rt = peek();
    if (rt.kind != SToken::Kind::Word)
      throw ParseError("expected a rule name", rt.pos);
    Derivation n;
    n.rule = rt.text;
    ++i;

    bool ul_like = sys == System::UL || sys == System::IL;

    if (n.rule == "transfer") {
      const SToken &a = peek();
      if (a.kind != SToken::Kind::Word)
        throw ParseError("transfer expects an atom name", a.pos);
      n.atom = a.text;
      ++i;
      n.side_pre = literal();
    } else if (n.rule == "empty" || n.rule == "iterate-zero") {
      n.side_term = term_str();
      n.side_pre = literal();
    } else if (n.rule == "short-circuit") {
      n.side_term = term_str();
    } else if (n.rule == "choice" && ul_like) {
      const SToken &p = peek();
      if (p.kind != SToken::Kind::Word || (p.text != "1" && p.text != "2"))
        throw ParseError("choice expects a position 1 or 2", p.pos);
      n.choice_pos = p.text == "1" ? 1 : 2;
      ++i;
      n.side_term = term_str();
    }

    // keyword arguments in any order, then children
    while (true) {
      const SToken &t = peek();
      if (t.kind == SToken::Kind::Keyword) {
        std::string kw = t.text;
        ++i;
        if (kw == "pre" || kw == "pre'")
          n.side_pre = literal();
        else if (kw == "post" || kw == "post'" || kw == "ok")
          n.relax_ok = literal();
        else if (kw == "err")
          n.relax_err = literal();
        else if (kw == "eps") {
          const SToken &w = peek();
          if (w.kind != SToken::Kind::Word)
            throw ParseError("expected ok, err or both", w.pos);
          n.eps = eps_word(w.text, w.pos);
          ++i;
        } else if (kw == "chain") {
          expect(SToken::Kind::LBrack, "'['");
          while (peek().kind != SToken::Kind::RBrack)
            n.chain.push_back(literal());
          expect(SToken::Kind::RBrack, "']'");
        } else
          throw ParseError("unknown keyword :" + kw, t.pos);
        continue;
      }
      if (t.kind == SToken::Kind::LParen) {
        n.children.push_back(node());
        continue;
      }
      break;
    }
    expect(SToken::Kind::RParen, "')'");
    return n;
  }
};

void print_node(const Model &m, System sys, const Derivation &n,
                std::ostringstream &out, int indent) {
  ConcreteKind kind = kind_of(sys);
  auto lit = [&](const TestSet &p) { return print_literal(m, kind, p); };
  std::string pad(indent, ' ');
  out << pad << "(" << n.rule;
  if (n.rule == "transfer")
    out << " " << n.atom << " " << lit(*n.side_pre);
  else if (n.rule == "empty" || n.rule == "iterate-zero")
    out << " \"" << pretty_term(n.side_term) << "\" " << lit(*n.side_pre);
  else if (n.rule == "short-circuit")
    out << " \"" << pretty_term(n.side_term) << "\"";
  else if (n.rule == "choice" &&
           (sys == System::UL || sys == System::IL))
    out << " " << n.choice_pos << " \"" << pretty_term(n.side_term) << "\"";
  else if (n.rule == "relax" || n.rule == "consequence") {
    if (n.side_pre)
      out << " :pre " << lit(*n.side_pre);
    if (n.relax_ok)
      out << (system_has_pairs(sys) ? " :ok " : " :post ") << lit(*n.relax_ok);
    if (n.relax_err)
      out << " :err " << lit(*n.relax_err);
  }
  if (n.eps)
    out << " :eps "
        << (*n.eps == Eps::Ok ? "ok" : *n.eps == Eps::Err ? "err" : "both");
  if (!n.chain.empty()) {
    out << " :chain [";
    for (std::size_t k = 0; k < n.chain.size(); ++k)
      out << (k ? " " : "") << lit(n.chain[k]);
    out << "]";
  }
  for (const auto &ch : n.children) {
    out << "\n";
    print_node(m, sys, ch, out, indent + 2);
  }
  out << ")";
}

} // namespace

Derivation parse_derivation_text(const LoadedModel &lm, System sys,
                                 const std::string &text) {
  SParser p{lm, sys, slex(text)};
  Derivation d = p.node();
  if (p.i != p.toks.size())
    throw ParseError("trailing input after derivation", p.toks[p.i].pos);
  return d;
}

Derivation parse_derivation_file(const LoadedModel &lm, System sys,
                                 const std::filesystem::path &file) {
  std::ifstream in(file);
  if (!in)
    throw SemanticError("cannot open derivation file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_derivation_text(lm, sys, ss.str());
}

std::string print_derivation(const Model &m, System sys, const Derivation &d) {
  std::ostringstream out;
  print_node(m, sys, d, out, 0);
  out << "\n";
  return out.str();
}

} // namespace katlcl
