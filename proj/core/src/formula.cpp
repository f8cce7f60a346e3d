#include "lewiskit/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace lewiskit {

namespace {

Formula make(Kind k, std::string name, Formula l, Formula r) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

}  // namespace

Formula var(const std::string& name) {
  static std::unordered_map<std::string, Formula> pool;
  auto it = pool.find(name);
  if (it != pool.end()) return it->second;
  auto f = make(Kind::Var, name, nullptr, nullptr);
  pool.emplace(name, f);
  return f;
}

Formula falsum() {
  static const Formula f = make(Kind::Const0, "", nullptr, nullptr);
  return f;
}

Formula verum() {
  static const Formula f = make(Kind::Const1, "", nullptr, nullptr);
  return f;
}

Formula conj(Formula a, Formula b) { return make(Kind::And, "", std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return make(Kind::Or, "", std::move(a), std::move(b)); }
Formula imp(Formula a, Formula b) { return make(Kind::Imp, "", std::move(a), std::move(b)); }
Formula cf(Formula a, Formula b) { return make(Kind::Cf, "", std::move(a), std::move(b)); }

Formula neg(Formula a) { return imp(std::move(a), falsum()); }

Formula iff(Formula a, Formula b) { return conj(imp(a, b), imp(b, a)); }

Formula might_cf(Formula a, Formula b) { return neg(cf(std::move(a), neg(std::move(b)))); }

Formula box(Formula a) { return cf(neg(a), a); }

Formula dia(Formula a) { return neg(box(neg(std::move(a)))); }

Formula prec_eq(Formula a, Formula b) {
  Formula ab = disj(a, b);
  return imp(might_cf(ab, ab), might_cf(ab, a));
}

Formula prec(Formula a, Formula b) { return neg(prec_eq(std::move(b), std::move(a))); }

Formula sim_eq(Formula a, Formula b) { return conj(prec_eq(a, b), prec_eq(b, a)); }

bool equal(const Formula& a, const Formula& b) {
  // Pointer fast path plus a visited-pair memo: formulas are DAGs, and a
  // naive recursion could revisit shared subterms exponentially often.
  struct PairHash {
    std::size_t operator()(const std::pair<const Node*, const Node*>& p) const {
      return std::hash<const Node*>()(p.first) * 1000003u ^
             std::hash<const Node*>()(p.second);
    }
  };
  std::unordered_set<std::pair<const Node*, const Node*>, PairHash> seen;
  auto rec = [&](auto&& self, const Node* x, const Node* y) -> bool {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind) return false;
    if (x->kind == Kind::Var) return x->name == y->name;
    if (x->kind == Kind::Const0 || x->kind == Kind::Const1) return true;
    if (seen.count({x, y})) return true;
    seen.insert({x, y});
    return self(self, x->lhs.get(), y->lhs.get()) &&
           self(self, x->rhs.get(), y->rhs.get());
  };
  return rec(rec, a.get(), b.get());
}

std::size_t dag_size(const Formula& f) {
  std::unordered_set<const Node*> seen;
  auto rec = [&](auto&& self, const Node* n) -> void {
    if (!n || seen.count(n)) return;
    seen.insert(n);
    self(self, n->lhs.get());
    self(self, n->rhs.get());
  };
  rec(rec, f.get());
  return seen.size();
}

std::vector<std::string> variables(const Formula& f) {
  std::set<std::string> vs;
  std::unordered_set<const Node*> seen;
  auto rec = [&](auto&& self, const Node* n) -> void {
    if (!n || seen.count(n)) return;
    seen.insert(n);
    if (n->kind == Kind::Var) vs.insert(n->name);
    self(self, n->lhs.get());
    self(self, n->rhs.get());
  };
  rec(rec, f.get());
  return {vs.begin(), vs.end()};
}

Formula substitute(const Formula& f, const Substitution& sigma) {
  std::unordered_map<const Node*, Formula> memo;
  auto rec = [&](auto&& self, const Formula& n) -> Formula {
    auto it = memo.find(n.get());
    if (it != memo.end()) return it->second;
    Formula out;
    switch (n->kind) {
      case Kind::Var: {
        auto s = sigma.find(n->name);
        out = (s == sigma.end()) ? n : s->second;
        break;
      }
      case Kind::Const0:
      case Kind::Const1:
        out = n;
        break;
      default: {
        Formula l = self(self, n->lhs);
        Formula r = self(self, n->rhs);
        out = (l == n->lhs && r == n->rhs) ? n : make(n->kind, "", l, r);
      }
    }
    memo.emplace(n.get(), out);
    return out;
  };
  return rec(rec, f);
}

Formula box_iterate(Formula f, int n) {
  for (int i = 0; i < n; ++i) f = box(f);
  return f;
}

Equation tau(const Formula& f) { return Equation{f, verum()}; }

Formula delta(const Equation& e) { return iff(e.lhs, e.rhs); }

ParseError::ParseError(std::size_t pos, const std::string& what)
    : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"),
      position(pos) {}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  End, LParen, RParen, And, Or, Imp, Iff, Cf, MightCf, Neg, Box, Dia,
  Zero, One, Ident
};

struct Lexer {
  std::string_view src;
  std::size_t pos = 0;
  Tok tok = Tok::End;
  std::size_t tok_pos = 0;
  std::string ident;

  explicit Lexer(std::string_view s) : src(s) { next(); }

  [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
    throw ParseError(at, msg);
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  void next() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    tok_pos = pos;
    if (pos >= src.size()) {
      tok = Tok::End;
      return;
    }
    char c = src[pos];
    switch (c) {
      case '(': ++pos; tok = Tok::LParen; return;
      case ')': ++pos; tok = Tok::RParen; return;
      case '&': ++pos; tok = Tok::And; return;
      case '~': ++pos; tok = Tok::Neg; return;
      case '|':
        if (pos + 1 < src.size() && src[pos + 1] == '>') {
          pos += 2;
          tok = Tok::Cf;
        } else {
          ++pos;
          tok = Tok::Or;
        }
        return;
      case '-':
        if (pos + 1 < src.size() && src[pos + 1] == '>') {
          pos += 2;
          tok = Tok::Imp;
          return;
        }
        fail(pos, "expected '->'");
      case '<':
        if (pos + 2 < src.size() && src[pos + 1] == '-' && src[pos + 2] == '>') {
          pos += 3;
          tok = Tok::Iff;
          return;
        }
        fail(pos, "expected '<->'");
      case '0':
      case '1':
        if (pos + 1 < src.size() && ident_char(src[pos + 1]))
          fail(pos, "malformed constant");
        ++pos;
        tok = (c == '0') ? Tok::Zero : Tok::One;
        return;
      default: break;
    }
    // "m|>" is a single token; it takes precedence over reading "m" as an
    // identifier (write "m |> q" to use a variable named m).
    if (c == 'm' && pos + 2 < src.size() && src[pos + 1] == '|' && src[pos + 2] == '>') {
      pos += 3;
      tok = Tok::MightCf;
      return;
    }
    if (ident_start(c)) {
      std::size_t start = pos;
      while (pos < src.size() && ident_char(src[pos])) ++pos;
      ident.assign(src.substr(start, pos - start));
      if (ident == "box") tok = Tok::Box;
      else if (ident == "dia") tok = Tok::Dia;
      else tok = Tok::Ident;
      return;
    }
    fail(pos, std::string("unexpected character '") + c + "'");
  }
};

struct Parser {
  Lexer lx;

  explicit Parser(std::string_view s) : lx(s) {}

  Formula run() {
    Formula f = parse_iff();
    if (lx.tok != Tok::End) lx.fail(lx.tok_pos, "unexpected trailing input");
    return f;
  }

  // Each level collects right-associatively.
  Formula parse_iff() {
    Formula a = parse_imp();
    if (lx.tok != Tok::Iff) return a;
    lx.next();
    return iff(a, parse_iff());
  }

  Formula parse_imp() {
    Formula a = parse_cf();
    if (lx.tok != Tok::Imp) return a;
    lx.next();
    return imp(a, parse_imp());
  }

  Formula parse_cf() {
    Formula a = parse_or();
    if (lx.tok == Tok::Cf) {
      lx.next();
      return cf(a, parse_cf());
    }
    if (lx.tok == Tok::MightCf) {
      lx.next();
      return might_cf(a, parse_cf());
    }
    return a;
  }

  Formula parse_or() {
    Formula a = parse_and();
    if (lx.tok != Tok::Or) return a;
    lx.next();
    return disj(a, parse_or());
  }

  Formula parse_and() {
    Formula a = parse_unary();
    if (lx.tok != Tok::And) return a;
    lx.next();
    return conj(a, parse_and());
  }

  Formula parse_unary() {
    switch (lx.tok) {
      case Tok::Neg: lx.next(); return neg(parse_unary());
      case Tok::Box: lx.next(); return box(parse_unary());
      case Tok::Dia: lx.next(); return dia(parse_unary());
      default: return parse_atom();
    }
  }

  Formula parse_atom() {
    switch (lx.tok) {
      case Tok::Zero: lx.next(); return falsum();
      case Tok::One: lx.next(); return verum();
      case Tok::Ident: {
        Formula f = var(lx.ident);
        lx.next();
        return f;
      }
      case Tok::LParen: {
        std::size_t open = lx.tok_pos;
        lx.next();
        Formula f = parse_iff();
        if (lx.tok != Tok::RParen) lx.fail(open, "unbalanced '('");
        lx.next();
        return f;
      }
      case Tok::End: lx.fail(lx.tok_pos, "unexpected end of input");
      default: lx.fail(lx.tok_pos, "expected a formula");
    }
  }
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

// Binding strength; higher binds tighter. Matches the grammar levels.
enum Level { LvImp = 1, LvCf = 2, LvOr = 3, LvAnd = 4, LvUnary = 5 };

bool is_neg_pattern(const Node* n) {
  return n->kind == Kind::Imp && n->rhs->kind == Kind::Const0;
}

// box f == (~f) |> f  ==  Imp(f,0) |> f
bool is_box_pattern(const Node* n) {
  return n->kind == Kind::Cf && is_neg_pattern(n->lhs.get()) &&
         equal(n->lhs->lhs, n->rhs);
}

void print_rec(const Node* n, int min_level, std::string& out) {
  if (is_box_pattern(n)) {
    out += "box ";
    print_rec(n->rhs.get(), LvUnary, out);
    return;
  }
  if (is_neg_pattern(n)) {
    out += '~';
    print_rec(n->lhs.get(), LvUnary, out);
    return;
  }
  int level;
  const char* op;
  switch (n->kind) {
    case Kind::Var: out += n->name; return;
    case Kind::Const0: out += '0'; return;
    case Kind::Const1: out += '1'; return;
    case Kind::And: level = LvAnd; op = " & "; break;
    case Kind::Or: level = LvOr; op = " | "; break;
    case Kind::Cf: level = LvCf; op = " |> "; break;
    case Kind::Imp: level = LvImp; op = " -> "; break;
    default: level = LvImp; op = "?"; break;
  }
  bool parens = level < min_level;
  if (parens) out += '(';
  // Right-associative: the left operand needs strictly tighter binding.
  print_rec(n->lhs.get(), level + 1, out);
  out += op;
  print_rec(n->rhs.get(), level, out);
  if (parens) out += ')';
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  print_rec(f.get(), 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Axiom schemas
// ---------------------------------------------------------------------------

namespace {

Formula P() { return var("p"); }
Formula Q() { return var("q"); }
Formula R() { return var("r"); }

Formula build_schema(const std::string& id, UniformityReading u) {
  const Formula p = P(), q = Q(), r = R();
  if (id == "A1") return imp(p, imp(q, p));
  if (id == "A2") return imp(imp(p, imp(q, r)), imp(imp(p, q), imp(p, r)));
  if (id == "A3") return imp(imp(neg(q), neg(p)), imp(p, q));
  if (id == "AndDef1") return imp(conj(p, q), neg(imp(p, neg(q))));
  if (id == "AndDef2") return imp(neg(imp(p, neg(q))), conj(p, q));
  if (id == "OrDef1") return imp(disj(p, q), imp(neg(p), q));
  if (id == "OrDef2") return imp(imp(neg(p), q), disj(p, q));
  if (id == "ZeroDef1") return imp(falsum(), neg(verum()));
  if (id == "ZeroDef2") return imp(neg(verum()), falsum());
  if (id == "OneDef1") return imp(verum(), imp(falsum(), falsum()));
  if (id == "OneDef2") return imp(imp(falsum(), falsum()), verum());
  if (id == "Truth") return verum();
  if (id == "L1") return cf(p, p);
  if (id == "L2")
    return imp(conj(cf(p, q), cf(q, p)), iff(cf(p, r), cf(q, r)));
  if (id == "L3") {
    Formula pq = disj(p, q);
    return disj(cf(pq, p),
                disj(cf(pq, q), iff(cf(pq, r), conj(cf(p, r), cf(q, r)))));
  }
  if (id == "L4") return iff(cf(p, conj(q, r)), conj(cf(p, q), cf(p, r)));
  if (id == "W") return imp(cf(p, q), imp(p, q));
  if (id == "C")
    return conj(imp(cf(p, q), imp(p, q)), imp(conj(p, q), cf(p, q)));
  if (id == "N") return imp(box(p), dia(p));
  if (id == "T") return imp(box(p), p);
  if (id == "S") return disj(cf(p, q), cf(p, neg(q)));
  if (id == "U") {
    Formula first = (u == UniformityReading::Implication)
                        ? imp(dia(p), box(dia(p)))
                        : cf(dia(p), box(dia(p)));
    return conj(first, imp(box(p), box(box(p))));
  }
  if (id == "A")
    return conj(imp(prec_eq(p, q), box(prec_eq(p, q))),
                imp(prec(p, q), box(prec(p, q))));
  throw std::invalid_argument("unknown axiom schema: " + id);
}

}  // namespace

const std::vector<std::string>& schema_ids() {
  static const std::vector<std::string> ids = {
      "A1", "A2", "A3", "AndDef1", "AndDef2", "OrDef1", "OrDef2",
      "ZeroDef1", "ZeroDef2", "OneDef1", "OneDef2", "Truth",
      "L1", "L2", "L3", "L4", "W", "C", "N", "T", "S", "U", "A"};
  return ids;
}

bool is_schema_id(const std::string& id) {
  const auto& ids = schema_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

Formula schema(const std::string& id, UniformityReading u) {
  return build_schema(id, u);
}

bool match_schema(const Formula& pattern, const Formula& instance,
                  Substitution& out) {
  auto rec = [&](auto&& self, const Node* pat, const Formula& ins) -> bool {
    switch (pat->kind) {
      case Kind::Var: {
        auto it = out.find(pat->name);
        if (it == out.end()) {
          out.emplace(pat->name, ins);
          return true;
        }
        return equal(it->second, ins);
      }
      case Kind::Const0:
      case Kind::Const1:
        return ins->kind == pat->kind;
      default:
        return ins->kind == pat->kind && self(self, pat->lhs.get(), ins->lhs) &&
               self(self, pat->rhs.get(), ins->rhs);
    }
  };
  return rec(rec, pattern.get(), instance);
}

}  // namespace lewiskit
