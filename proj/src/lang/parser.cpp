#include "xv/lang/parser.hpp"

#include <cctype>
#include <set>

namespace xv::lang {

std::string to_string(const Pos& p) {
  return std::to_string(p.line) + ":" + std::to_string(p.col);
}

SyntaxError::SyntaxError(Pos p, const std::string& msg)
    : std::runtime_error(to_string(p) + ": " + msg), pos(p) {}

namespace {

enum class Tok { Ident, UIdent, Int, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  Pos pos;
};

const char* const kSymbols[] = {".?.", ":+:", ":<:", ":-:", "::", "->", "=>", "\\", "=", "(",
                                ")",   ",",   ":",   "+",   "*",  "?",  ".",  "_"};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Pos pos{line, col};
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Int, src.substr(i, j - i), pos});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) ||
        (c == '_' && i + 1 < src.size() && ident_char(src[i + 1]))) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word = src.substr(i, j - i);
      Tok k = std::isupper(static_cast<unsigned char>(c)) ? Tok::UIdent : Tok::Ident;
      out.push_back({k, word, pos});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const char* sym : kSymbols) {
      std::string s(sym);
      if (src.compare(i, s.size(), s) == 0) {
        out.push_back({Tok::Sym, s, pos});
        advance(s.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError(pos, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", Pos{line, col}});
  return out;
}

const std::set<std::string> kReserved = {"data", "type", "default", "let", "in",
                                         "main", "forall", "fails", "self"};

class Parser {
 public:
  Parser(std::vector<Token> toks, Program* prog) : toks_(std::move(toks)), prog_(prog) {}

  bool done() const { return peek().kind == Tok::End; }
  const Token& peek(std::size_t k = 0) const {
    std::size_t j = std::min(pos_ + k, toks_.size() - 1);
    return toks_[j];
  }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_sym(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool at_word(const char* w) const {
    return (peek().kind == Tok::Ident || peek().kind == Tok::UIdent) && peek().text == w;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of declaration" : "'" + t.text + "'";
    throw SyntaxError(t.pos, msg + ", found " + got);
  }
  void expect_sym(const char* s) {
    if (!at_sym(s)) fail(std::string("expected '") + s + "'");
    next();
  }
  void expect_word(const char* w) {
    if (!at_word(w)) fail(std::string("expected '") + w + "'");
    next();
  }
  std::string expect_lower() {
    if (peek().kind != Tok::Ident || kReserved.count(peek().text)) fail("expected a name");
    return next().text;
  }
  std::string expect_upper() {
    if (peek().kind != Tok::UIdent) fail("expected a capitalised name");
    return next().text;
  }
  void expect_end() {
    if (!done()) fail("unexpected trailing input");
  }

  // ---- declarations -----------------------------------------------------

  void declaration() {
    Pos pos = peek().pos;
    if (at_word("data")) {
      next();
      DataDecl d;
      d.pos = pos;
      d.functor = expect_upper();
      std::optional<std::string> param;
      if (peek().kind == Tok::Ident && !kReserved.count(peek().text)) param = next().text;
      expect_sym("=");
      d.ctor = expect_upper();
      while (!done()) {
        if (at_word("self") || (param && peek().kind == Tok::Ident && peek().text == *param)) {
          next();
          d.fields.push_back(FieldKind::Self);
        } else if (at_word("Int")) {
          next();
          d.fields.push_back(FieldKind::Int);
        } else if (at_word("Bool")) {
          next();
          d.fields.push_back(FieldKind::Bool);
        } else {
          fail("expected a field (self, Int or Bool)");
        }
      }
      prog_->datas.push_back(std::move(d));
    } else if (at_word("type")) {
      next();
      TypeAlias a;
      a.pos = pos;
      a.name = expect_upper();
      expect_sym("=");
      a.type = type();
      expect_end();
      prog_->aliases.push_back(std::move(a));
    } else if (at_word("default")) {
      next();
      DefaultAst d;
      d.pos = pos;
      std::size_t start = pos_;
      expect_sym("(");
      d.pattern = pred();
      expect_sym(")");
      expect_end();
      for (std::size_t k = start; k < pos_; ++k) {
        if (!d.text.empty() && toks_[k].text != ")" && toks_[k - 1].text != "(") d.text += " ";
        d.text += toks_[k].text;
      }
      if (d.pattern.kind != PredKind::Minus || d.pattern.open_output)
        throw SyntaxError(pos, "default declarations have the form (T :-: g = h)");
      prog_->defaults.push_back(std::move(d));
    } else if (at_word("let")) {
      next();
      LetDecl l;
      l.pos = pos;
      l.name = expect_lower();
      if (at_sym(":")) {
        next();
        l.sig = scheme();
      }
      expect_sym("=");
      l.body = expr();
      expect_end();
      prog_->lets.push_back(std::move(l));
    } else if (at_word("main")) {
      next();
      if (prog_->main) throw SyntaxError(pos, "duplicate main");
      expect_sym("=");
      MainDecl m{expr(), pos};
      expect_end();
      prog_->main = std::move(m);
    } else {
      fail("expected a declaration (data, type, default, let or main)");
    }
  }

  SchemeAst scheme() {
    SchemeAst s;
    if (at_word("forall")) {
      next();
      while (!at_sym(".")) s.vars.push_back(expect_lower());
      next();
    }
    if (has_context()) {
      if (at_sym("(") && context_is_parenthesised()) {
        next();
        if (!at_sym(")")) {
          s.preds.push_back(pred());
          while (at_sym(",")) {
            next();
            s.preds.push_back(pred());
          }
        }
        expect_sym(")");
      } else {
        s.preds.push_back(pred());
      }
      expect_sym("=>");
    }
    s.body = type();
    return s;
  }

  // A "=>" at paren depth 0 before the binding "=".
  bool has_context() const {
    int depth = 0;
    for (std::size_t k = pos_; k < toks_.size(); ++k) {
      const Token& t = toks_[k];
      if (t.kind == Tok::End) return false;
      if (t.kind != Tok::Sym) continue;
      if (t.text == "(") ++depth;
      if (t.text == ")") --depth;
      if (depth == 0 && t.text == "=>") return true;
      if (depth == 0 && t.text == "=") return false;
    }
    return false;
  }

  // "(" ... ")" immediately followed by "=>", and the group holds a
  // comma list or a predicate operator at its top level.
  bool context_is_parenthesised() const {
    int depth = 0;
    for (std::size_t k = pos_; k < toks_.size(); ++k) {
      const Token& t = toks_[k];
      if (t.kind == Tok::Sym && t.text == "(") ++depth;
      if (t.kind == Tok::Sym && t.text == ")") {
        if (--depth == 0)
          return toks_[k + 1].kind == Tok::Sym && toks_[k + 1].text == "=>";
      }
      if (t.kind == Tok::End) return false;
    }
    return false;
  }

  // ---- predicates and types ---------------------------------------------

  PredAst pred() {
    PredAst p;
    p.pos = peek().pos;
    if (at_word("In") || at_word("IsIn")) {
      next();
      p.kind = PredKind::In;
      p.args = {atype(), atype()};
      if (at_word("fails")) {
        next();
        p.kind = PredKind::NotIn;
      }
      return p;
    }
    if (at_word("Into")) {
      next();
      p.kind = PredKind::Leq;
      p.args = {atype(), atype()};
      return p;
    }
    if (at_word("Minus")) {
      next();
      p.kind = PredKind::Minus;
      p.args = {atype(), atype()};
      p.open_output = true;
      return p;
    }
    if (at_word("Functor")) {
      next();
      p.kind = PredKind::Functor;
      p.args = {atype()};
      return p;
    }
    TypeAst lhs = ctype();
    if (at_sym(":<:")) {
      next();
      p.kind = PredKind::Leq;
      p.args = {lhs, ctype()};
      return p;
    }
    if (at_sym(":-:")) {
      next();
      p.kind = PredKind::Minus;
      p.args = {lhs, ctype()};
      if (at_sym("=")) {
        next();
        p.args.push_back(ctype());
      } else {
        p.open_output = true;
      }
      return p;
    }
    fail("expected a predicate");
  }

  TypeAst type() {
    TypeAst t = ctype();
    if (at_sym("->")) {
      Pos pos = next().pos;
      TypeAst r = type();
      return TypeAst{TypeAst::Tag::Fun, "", {std::move(t), std::move(r)}, pos};
    }
    return t;
  }

  TypeAst ctype() {
    TypeAst t = btype();
    if (at_sym(":+:")) {
      Pos pos = next().pos;
      TypeAst r = ctype();
      return TypeAst{TypeAst::Tag::Coprod, "", {std::move(t), std::move(r)}, pos};
    }
    return t;
  }

  bool at_atype() const {
    const Token& t = peek();
    if (t.kind == Tok::UIdent) return true;
    if (t.kind == Tok::Ident) return !kReserved.count(t.text);
    return at_sym("(");
  }

  TypeAst btype() {
    Pos pos = peek().pos;
    if (at_word("Fix")) {
      next();
      return TypeAst{TypeAst::Tag::Fix, "", {atype()}, pos};
    }
    TypeAst head = atype();
    while (at_atype()) head = TypeAst{TypeAst::Tag::App, "", {std::move(head), atype()}, pos};
    return head;
  }

  TypeAst atype() {
    Pos pos = peek().pos;
    if (at_sym("(")) {
      next();
      TypeAst t = type();
      if (at_sym(",")) {
        next();
        TypeAst s = type();
        expect_sym(")");
        return TypeAst{TypeAst::Tag::Pair, "", {std::move(t), std::move(s)}, pos};
      }
      expect_sym(")");
      return t;
    }
    if (at_word("Fix")) fail("Fix needs parentheses in argument position");
    if (peek().kind == Tok::UIdent) {
      std::string n = next().text;
      if (n == "Int") return TypeAst{TypeAst::Tag::Int, "", {}, pos};
      if (n == "Bool") return TypeAst{TypeAst::Tag::Bool, "", {}, pos};
      return TypeAst{TypeAst::Tag::Name, n, {}, pos};
    }
    if (peek().kind == Tok::Ident && !kReserved.count(peek().text))
      return TypeAst{TypeAst::Tag::Var, next().text, {}, pos};
    fail("expected a type");
  }

  // ---- expressions ------------------------------------------------------

  ExprPtr make(Expr::Tag tag, Pos pos) {
    auto e = std::make_shared<Expr>();
    e->tag = tag;
    e->pos = pos;
    e->id = prog_->next_id++;
    return e;
  }

  ExprPtr expr() {
    ExprPtr e = branch_expr();
    if (at_sym("::")) {
      Pos pos = next().pos;
      ExprPtr a = make(Expr::Tag::Ann, pos);
      a->kids = {e};
      a->ann = type();
      return a;
    }
    return e;
  }

  ExprPtr binop(const char* op, ExprPtr l, ExprPtr r, Pos pos) {
    ExprPtr e = make(Expr::Tag::BinOp, pos);
    e->name = op;
    e->kids = {std::move(l), std::move(r)};
    return e;
  }

  ExprPtr branch_expr() {
    ExprPtr l = tag_expr();
    if (at_sym("?")) {
      Pos pos = next().pos;
      return binop("?", l, branch_expr(), pos);
    }
    return l;
  }

  ExprPtr tag_expr() {
    ExprPtr l = sum_expr();
    if (at_sym(".?.")) {
      Pos pos = next().pos;
      return binop(".?.", l, tag_expr(), pos);
    }
    return l;
  }

  ExprPtr sum_expr() {
    ExprPtr l = prod_expr();
    while (at_sym("+")) {
      Pos pos = next().pos;
      l = binop("+", l, prod_expr(), pos);
    }
    return l;
  }

  ExprPtr prod_expr() {
    ExprPtr l = app_expr();
    while (at_sym("*")) {
      Pos pos = next().pos;
      l = binop("*", l, app_expr(), pos);
    }
    return l;
  }

  bool at_atom() const {
    const Token& t = peek();
    if (t.kind == Tok::Int || t.kind == Tok::UIdent) return true;
    if (t.kind == Tok::Ident) return !kReserved.count(t.text) || t.text == "let";
    return at_sym("(") || at_sym("\\");
  }

  ExprPtr app_expr() {
    if (!at_atom()) fail("expected an expression");
    ExprPtr f = atom();
    while (at_atom()) {
      bool last = at_sym("\\") || at_word("let");
      ExprPtr a = make(Expr::Tag::App, f->pos);
      a->kids = {f, atom()};
      f = a;
      if (last) break;
    }
    return f;
  }

  ExprPtr atom() {
    Pos pos = peek().pos;
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      ExprPtr e = make(Expr::Tag::Int, pos);
      try {
        e->ival = std::stoll(next().text);
      } catch (const std::out_of_range&) {
        throw SyntaxError(pos, "integer literal out of range");
      }
      return e;
    }
    if (t.kind == Tok::UIdent && (t.text == "True" || t.text == "False")) {
      ExprPtr e = make(Expr::Tag::Bool, pos);
      e->bval = next().text == "True";
      return e;
    }
    if (at_word("let")) {
      next();
      ExprPtr e = make(Expr::Tag::Let, pos);
      e->name = expect_lower();
      expect_sym("=");
      ExprPtr bound = expr();
      expect_word("in");
      e->kids = {bound, expr()};
      return e;
    }
    if (t.kind == Tok::Ident || t.kind == Tok::UIdent) {
      ExprPtr e = make(Expr::Tag::Var, pos);
      e->name = next().text;
      return e;
    }
    if (at_sym("\\")) {
      next();
      ExprPtr e = make(Expr::Tag::Lam, pos);
      while (!at_sym("->")) e->params.push_back(pattern());
      if (e->params.empty()) fail("expected a pattern");
      next();
      e->kids = {expr()};
      return e;
    }
    if (at_sym("(")) {
      next();
      ExprPtr inner = expr();
      if (at_sym(",")) {
        next();
        ExprPtr p = make(Expr::Tag::Pair, pos);
        p->kids = {inner, expr()};
        expect_sym(")");
        return p;
      }
      expect_sym(")");
      return inner;
    }
    fail("expected an expression");
  }

  Pattern pattern() {
    Pattern p;
    p.pos = peek().pos;
    if (at_sym("_")) {
      next();
      p.tag = Pattern::Tag::Wild;
      return p;
    }
    if (peek().kind == Tok::Ident) {
      p.tag = Pattern::Tag::Var;
      p.name = expect_lower();
      return p;
    }
    if (at_sym("(")) {
      next();
      if (peek().kind != Tok::UIdent) {
        Pattern inner = pattern();
        expect_sym(")");
        return inner;
      }
      p.name = next().text;
      if (p.name == "In")
        p.tag = Pattern::Tag::In;
      else if (p.name == "Inl")
        p.tag = Pattern::Tag::Inl;
      else if (p.name == "Inr")
        p.tag = Pattern::Tag::Inr;
      else
        p.tag = Pattern::Tag::Con;
      while (!at_sym(")")) p.subs.push_back(pattern());
      next();
      if (p.tag != Pattern::Tag::Con && p.subs.size() != 1)
        throw SyntaxError(p.pos, p.name + " patterns take exactly one argument");
      return p;
    }
    if (peek().kind == Tok::UIdent) {
      p.tag = Pattern::Tag::Con;
      p.name = next().text;
      return p;
    }
    fail("expected a pattern");
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Program* prog_;
};

// Splits the token stream at tokens in column 1.
std::vector<std::vector<Token>> split_decls(const std::vector<Token>& toks) {
  std::vector<std::vector<Token>> out;
  for (const Token& t : toks) {
    if (t.kind == Tok::End) break;
    if (t.pos.col == 1 || out.empty()) {
      if (t.pos.col != 1) throw SyntaxError(t.pos, "declarations must start in column 1");
      out.emplace_back();
    }
    out.back().push_back(t);
  }
  for (auto& chunk : out) {
    Pos end = chunk.back().pos;
    end.col += static_cast<int>(chunk.back().text.size());
    chunk.push_back({Tok::End, "", end});
  }
  return out;
}

}  // namespace

Program parse_program(const std::string& text) {
  Program prog;
  for (auto& chunk : split_decls(lex(text))) {
    Parser p(std::move(chunk), &prog);
    p.declaration();
  }
  return prog;
}

ExprPtr parse_expr(const std::string& text, Program& prog) {
  Parser p(lex(text), &prog);
  ExprPtr e = p.expr();
  p.expect_end();
  return e;
}

TypeAst parse_type(const std::string& text) {
  Program prog;
  Parser p(lex(text), &prog);
  TypeAst t = p.type();
  p.expect_end();
  return t;
}

PredAst parse_pred(const std::string& text) {
  Program prog;
  Parser p(lex(text), &prog);
  PredAst pr = p.pred();
  p.expect_end();
  return pr;
}

std::string to_string(const TypeAst& t) {
  auto atomic = [](const TypeAst& a) {
    bool simple = a.tag == TypeAst::Tag::Name || a.tag == TypeAst::Tag::Var ||
                  a.tag == TypeAst::Tag::Int || a.tag == TypeAst::Tag::Bool ||
                  a.tag == TypeAst::Tag::Pair;
    return simple ? to_string(a) : "(" + to_string(a) + ")";
  };
  switch (t.tag) {
    case TypeAst::Tag::Name:
    case TypeAst::Tag::Var: return t.name;
    case TypeAst::Tag::Int: return "Int";
    case TypeAst::Tag::Bool: return "Bool";
    case TypeAst::Tag::Coprod: return atomic(t.args[0]) + " :+: " + atomic(t.args[1]);
    case TypeAst::Tag::Fix: return "Fix " + atomic(t.args[0]);
    case TypeAst::Tag::Fun: return atomic(t.args[0]) + " -> " + to_string(t.args[1]);
    case TypeAst::Tag::Pair: return "(" + to_string(t.args[0]) + ", " + to_string(t.args[1]) + ")";
    case TypeAst::Tag::App: return to_string(t.args[0]) + " " + atomic(t.args[1]);
  }
  return "?";
}

std::string to_string(const Pattern& p) {
  switch (p.tag) {
    case Pattern::Tag::Var: return p.name;
    case Pattern::Tag::Wild: return "_";
    default: {
      if (p.subs.empty()) return p.name;
      std::string s = "(" + p.name;
      for (const Pattern& q : p.subs) s += " " + to_string(q);
      return s + ")";
    }
  }
}

std::string to_string(const Expr& e) {
  switch (e.tag) {
    case Expr::Tag::Int: return std::to_string(e.ival);
    case Expr::Tag::Bool: return e.bval ? "True" : "False";
    case Expr::Tag::Var: return e.name;
    case Expr::Tag::App: return "(" + to_string(*e.kids[0]) + " " + to_string(*e.kids[1]) + ")";
    case Expr::Tag::Lam: {
      std::string s = "(\\";
      for (const Pattern& p : e.params) s += to_string(p) + " ";
      return s + "-> " + to_string(*e.kids[0]) + ")";
    }
    case Expr::Tag::Let:
      return "(let " + e.name + " = " + to_string(*e.kids[0]) + " in " + to_string(*e.kids[1]) + ")";
    case Expr::Tag::Pair: return "(" + to_string(*e.kids[0]) + ", " + to_string(*e.kids[1]) + ")";
    case Expr::Tag::BinOp:
      return "(" + to_string(*e.kids[0]) + " " + e.name + " " + to_string(*e.kids[1]) + ")";
    case Expr::Tag::Ann: return "(" + to_string(*e.kids[0]) + " :: " + to_string(*e.ann) + ")";
  }
  return "?";
}

}  // namespace xv::lang
