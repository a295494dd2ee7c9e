#include <cctype>
#include <map>
#include <set>

#include "rgfo/error.hpp"
#include "rgfo/formula.hpp"

namespace rgfo {
namespace {

enum class Tok { Ident, LParen, RParen, And, Or, Not, Implies, Iff, Adj, NotAdj, Eq, NotEq, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

bool quantifier_shaped(const std::string& s) {
  return s.size() >= 2 && (s[0] == 'E' || s[0] == 'A');
}

bool is_relation(Tok t) { return t == Tok::Adj || t == Tok::NotAdj || t == Tok::Eq || t == Tok::NotEq; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t{Tok::End, {}, line, col};
    auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      out.push_back(t);
      advance(j - i);
      continue;
    }
    std::size_t len = 1;
    if (starts("<->")) {
      t.kind = Tok::Iff;
      len = 3;
    } else if (starts("->")) {
      t.kind = Tok::Implies;
      len = 2;
    } else if (starts("!~")) {
      t.kind = Tok::NotAdj;
      len = 2;
    } else if (starts("!=")) {
      t.kind = Tok::NotEq;
      len = 2;
    } else {
      switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '&': t.kind = Tok::And; break;
        case '|': t.kind = Tok::Or; break;
        case '!': t.kind = Tok::Not; break;
        case '~': t.kind = Tok::Adj; break;
        case '=': t.kind = Tok::Eq; break;
        default:
          throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
      }
    }
    out.push_back(t);
    advance(len);
  }
  out.push_back({Tok::End, {}, line, col});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const ParseOptions& opts) : toks_(std::move(toks)) {
    for (const auto& t : toks_)
      if (t.kind == Tok::Ident) taken_.insert(t.text);
    for (const auto& name : opts.free_vars) {
      if (free_.count(name)) continue;
      free_[name] = fresh_id(name, true);
    }
  }

  Formula run() {
    NodePtr root = parse_iff();
    if (peek().kind != Tok::End) fail("unexpected trailing input", peek());
    return Formula(root, names_);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> names_;
  std::set<std::string> taken_;
  std::set<std::string> used_names_;
  std::map<std::string, VarId> free_;
  std::vector<std::pair<std::string, VarId>> scope_;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& what, const Token& at) const {
    throw SyntaxError(what, at.line, at.col);
  }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what, peek());
    take();
  }

  VarId fresh_id(const std::string& base, bool keep) {
    std::string name = base;
    if (!keep || used_names_.count(name)) {
      for (unsigned k = 2;; ++k) {
        name = base + "_" + std::to_string(k);
        if (!used_names_.count(name) && !taken_.count(name)) break;
      }
    }
    used_names_.insert(name);
    names_.push_back(name);
    return static_cast<VarId>(names_.size() - 1);
  }

  VarId lookup(const Token& t) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == t.text) return it->second;
    auto f = free_.find(t.text);
    if (f != free_.end()) return f->second;
    throw UnboundVariableError("unbound variable '" + t.text + "' at " + std::to_string(t.line) + ":" +
                               std::to_string(t.col));
  }

  // Deep copy with fresh ids for every bound variable, used when desugaring
  // a biconditional duplicates its operands.
  NodePtr rebind(const NodePtr& n, std::map<VarId, VarId>& sub) {
    auto map = [&](VarId v) {
      auto it = sub.find(v);
      return it == sub.end() ? v : it->second;
    };
    switch (n->kind) {
      case Kind::Atom:
        return make_atom(n->rel, map(n->a), map(n->b));
      case Kind::Exists:
      case Kind::Forall: {
        VarId fresh = fresh_id(names_[n->var], false);
        auto saved = sub.find(n->var) == sub.end() ? std::optional<VarId>() : std::optional<VarId>(sub[n->var]);
        sub[n->var] = fresh;
        NodePtr body = rebind(n->kids[0], sub);
        if (saved)
          sub[n->var] = *saved;
        else
          sub.erase(n->var);
        return make_quant(quant_of(*n), fresh, body);
      }
      case Kind::And:
      case Kind::Or:
      case Kind::Not: {
        std::vector<NodePtr> kids;
        for (const auto& k : n->kids) kids.push_back(rebind(k, sub));
        if (n->kind == Kind::Not) return make_not(kids[0]);
        return n->kind == Kind::And ? make_and(std::move(kids)) : make_or(std::move(kids));
      }
      default:
        return n;
    }
  }

  NodePtr copy(const NodePtr& n) {
    std::map<VarId, VarId> sub;
    return rebind(n, sub);
  }

  NodePtr parse_iff() {
    NodePtr lhs = parse_implies();
    while (peek().kind == Tok::Iff) {
      take();
      NodePtr rhs = parse_implies();
      NodePtr l2 = copy(lhs), r2 = copy(rhs);
      lhs = make_and({make_or({make_not(lhs), rhs}), make_or({l2, make_not(r2)})});
    }
    return lhs;
  }

  NodePtr parse_implies() {
    NodePtr lhs = parse_or();
    if (peek().kind != Tok::Implies) return lhs;
    take();
    NodePtr rhs = parse_implies();
    return make_or({make_not(lhs), rhs});
  }

  NodePtr parse_or() {
    std::vector<NodePtr> kids{parse_and()};
    while (peek().kind == Tok::Or) {
      take();
      kids.push_back(parse_and());
    }
    return kids.size() == 1 ? kids[0] : make_or(std::move(kids));
  }

  NodePtr parse_and() {
    std::vector<NodePtr> kids{parse_unary()};
    while (peek().kind == Tok::And) {
      take();
      kids.push_back(parse_unary());
    }
    return kids.size() == 1 ? kids[0] : make_and(std::move(kids));
  }

  NodePtr parse_unary() {
    const Token& t = peek();
    if (t.kind == Tok::Not) {
      take();
      if (peek().kind == Tok::LParen || peek().kind == Tok::Ident) return make_not(parse_unary_allowing_self());
      return make_not(parse_unary());
    }
    if (t.kind == Tok::Ident && quantifier_shaped(t.text) && !is_relation(peek(1).kind)) return parse_quant();
    return parse_primary(false);
  }

  // Operand of '!': a self-atom is accepted here so that normalize can
  // report it, mirroring how such input is read by a human.
  NodePtr parse_unary_allowing_self() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && quantifier_shaped(t.text) && !is_relation(peek(1).kind)) return parse_quant();
    return parse_primary(true);
  }

  NodePtr parse_quant() {
    Token q = take();
    Quant kind = q.text[0] == 'E' ? Quant::Exists : Quant::Forall;
    std::string var;
    bool keyword = q.text == "Ex" || q.text == "Ax";
    if (keyword && peek().kind == Tok::Ident && !quantifier_shaped(peek().text) && !is_relation(peek(1).kind)) {
      var = take().text;
    } else {
      var = q.text.substr(1);
      if (quantifier_shaped(var)) fail("variable name '" + var + "' is reserved for quantifiers", q);
    }
    VarId id = fresh_id(var, true);
    scope_.emplace_back(var, id);
    NodePtr body = parse_unary();
    scope_.pop_back();
    return make_quant(kind, id, body);
  }

  NodePtr parse_primary(bool allow_self) {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      take();
      NodePtr inner;
      if (allow_self && peek().kind == Tok::Ident && is_relation(peek(1).kind) && peek(3).kind == Tok::RParen) {
        inner = parse_atom(true);
      } else {
        inner = parse_iff();
      }
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Ident) return parse_atom(allow_self);
    if (t.kind == Tok::End) fail("unexpected end of input", t);
    fail("expected formula", t);
  }

  NodePtr parse_atom(bool allow_self) {
    Token lhs = take();
    if (quantifier_shaped(lhs.text)) fail("variable name '" + lhs.text + "' is reserved for quantifiers", lhs);
    Token op = take();
    Rel rel;
    switch (op.kind) {
      case Tok::Adj: rel = Rel::Adj; break;
      case Tok::NotAdj: rel = Rel::NotAdj; break;
      case Tok::Eq: rel = Rel::Eq; break;
      case Tok::NotEq: rel = Rel::NotEq; break;
      default: fail("expected relation (~, !~, =, !=)", op);
    }
    const Token& rhs = peek();
    if (rhs.kind != Tok::Ident) fail("expected variable", rhs);
    if (quantifier_shaped(rhs.text)) fail("variable name '" + rhs.text + "' is reserved for quantifiers", rhs);
    take();
    VarId a = lookup(lhs), b = lookup(rhs);
    if (a == b && !allow_self) {
      const char* what = rel == Rel::Adj || rel == Rel::NotAdj ? "self-adjacency atom rejected"
                                                               : "self-equality atom rejected";
      fail(what, lhs);
    }
    return make_atom(rel, a, b);
  }
};

}  // namespace

Formula parse(std::string_view text, const ParseOptions& opts) {
  for (const auto& name : opts.free_vars)
    if (quantifier_shaped(name)) throw PreconditionError("variable name '" + name + "' is reserved for quantifiers");
  Parser p(lex(text), opts);
  return p.run();
}

}  // namespace rgfo
