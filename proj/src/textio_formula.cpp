#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "prooftk/textio.hpp"

namespace prooftk::textio {

namespace {

enum class Tok {
  Ident,
  LParen,
  RParen,
  Comma,
  Dot,
  Arrow,
  Bar,
  Amp,
  Tilde,
  LBracket,
  RBracket,
  Turnstile,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Arrow: return "'->'";
    case Tok::Bar: return "'|'";
    case Tok::Amp: return "'&'";
    case Tok::Tilde: return "'~'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Turnstile: return "'|-'";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        break;
      }
    }
    SourceSpan span{line_, col_, pos_};
    if (pos_ >= text_.size()) {
      cur_ = {Tok::End, "", span};
      return;
    }
    char c = text_[pos_];
    if (ident_start(c)) {
      std::string s;
      while (pos_ < text_.size() && ident_char(text_[pos_])) {
        s += text_[pos_];
        bump();
      }
      cur_ = {Tok::Ident, std::move(s), span};
      return;
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      bump();
      bump();
      cur_ = {Tok::Arrow, "->", span};
      return;
    }
    if (c == '|' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
      bump();
      bump();
      cur_ = {Tok::Turnstile, "|-", span};
      return;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case '|': k = Tok::Bar; break;
      case '&': k = Tok::Amp; break;
      case '~': k = Tok::Tilde; break;
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         span);
    }
    bump();
    cur_ = {k, std::string(1, c), span};
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token cur_{Tok::End, "", {}};
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool is_keyword(const Token& t, const char* kw) {
  return t.kind == Tok::Ident && lower(t.text) == kw;
}

class FormulaParser {
 public:
  explicit FormulaParser(Lexer& lex) : lex_(lex) {}

  FormulaRef formula() { return imp(); }

  Token expect(Tok kind) {
    if (lex_.peek().kind != kind)
      throw ParseError(std::string("expected ") + tok_name(kind) + ", found " +
                           tok_name(lex_.peek().kind),
                       lex_.peek().span, {tok_name(kind)});
    return lex_.take();
  }

 private:
  FormulaRef imp() {
    FormulaRef l = disj();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return Formula::imp(std::move(l), imp());  // right-associative
    }
    return l;
  }

  FormulaRef disj() {
    FormulaRef l = conj();
    if (lex_.peek().kind == Tok::Bar) {
      lex_.take();
      return Formula::disj(std::move(l), disj());
    }
    return l;
  }

  FormulaRef conj() {
    FormulaRef l = unary();
    if (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      return Formula::conj(std::move(l), conj());
    }
    return l;
  }

  FormulaRef unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::LParen: {
        lex_.take();
        FormulaRef f = formula();
        expect(Tok::RParen);
        return f;
      }
      case Tok::LBracket: {
        lex_.take();
        FormulaRef f = formula();
        expect(Tok::RBracket);
        return Formula::frozen(std::move(f));
      }
      case Tok::Tilde: {
        lex_.take();
        Token id = expect(Tok::Ident);
        if (is_keyword(id, "top") || is_keyword(id, "bot") ||
            is_keyword(id, "forall") || is_keyword(id, "exists"))
          throw ParseError("'~' applies to atoms only", id.span);
        return atom_tail(id, /*negated=*/true);
      }
      case Tok::Ident: {
        if (is_keyword(t, "top")) {
          lex_.take();
          return Formula::top();
        }
        if (is_keyword(t, "bot")) {
          lex_.take();
          return Formula::bot();
        }
        if (is_keyword(t, "forall") || is_keyword(t, "exists")) {
          bool universal = is_keyword(t, "forall");
          lex_.take();
          Token var = expect(Tok::Ident);
          expect(Tok::Dot);
          bound_.push_back(var.text);
          FormulaRef body = formula();  // extends right as far as possible
          bound_.pop_back();
          return universal ? Formula::forall(var.text, std::move(body))
                           : Formula::exists(var.text, std::move(body));
        }
        Token id = lex_.take();
        return atom_tail(id, /*negated=*/false);
      }
      default:
        throw ParseError(std::string("expected formula, found ") +
                             tok_name(t.kind),
                         t.span,
                         {"identifier", "'('", "'['", "'~'", "top", "bot"});
    }
  }

  FormulaRef atom_tail(const Token& id, bool negated) {
    std::vector<Term> args;
    if (lex_.peek().kind == Tok::LParen) {
      lex_.take();
      args.push_back(term());
      while (lex_.peek().kind == Tok::Comma) {
        lex_.take();
        args.push_back(term());
      }
      expect(Tok::RParen);
    }
    return negated ? Formula::neg_atom(id.text, std::move(args))
                   : Formula::atom(id.text, std::move(args));
  }

  Term term() {
    Token id = expect(Tok::Ident);
    if (lex_.peek().kind == Tok::LParen) {
      lex_.take();
      std::vector<Term> args;
      args.push_back(term());
      while (lex_.peek().kind == Tok::Comma) {
        lex_.take();
        args.push_back(term());
      }
      expect(Tok::RParen);
      return Term::app(id.text, std::move(args));
    }
    bool bound = std::find(bound_.rbegin(), bound_.rend(), id.text) !=
                 bound_.rend();
    return bound ? Term::var(id.text) : Term::cst(id.text);
  }

  Lexer& lex_;
  std::vector<std::string> bound_;
};

// --- rectification: rename bound variables apart -------------------------

void collect_term_idents(const Term& t, const std::set<std::string>& bound,
                         std::set<std::string>& out) {
  if (t.kind != Term::Kind::Var || !bound.count(t.name)) out.insert(t.name);
  for (const Term& a : t.args) collect_term_idents(a, bound, out);
}

void collect_free_idents(const FormulaRef& f, std::set<std::string>& bound,
                         std::set<std::string>& out) {
  switch (f->kind()) {
    case Conn::Atom:
    case Conn::NegAtom:
      for (const Term& t : f->args()) collect_term_idents(t, bound, out);
      break;
    case Conn::Forall:
    case Conn::Exists: {
      bool fresh = bound.insert(f->name()).second;
      collect_free_idents(f->left(), bound, out);
      if (fresh) bound.erase(f->name());
      break;
    }
    case Conn::Frozen:
      collect_free_idents(f->left(), bound, out);
      break;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
      collect_free_idents(f->left(), bound, out);
      collect_free_idents(f->right(), bound, out);
      break;
    default:
      break;
  }
}

Term rect_term(const Term& t, const std::map<std::string, std::string>& env) {
  if (t.kind == Term::Kind::Var) {
    auto it = env.find(t.name);
    return Term::var(it == env.end() ? t.name : it->second);
  }
  if (t.kind == Term::Kind::Const) return t;
  std::vector<Term> args;
  for (const Term& a : t.args) args.push_back(rect_term(a, env));
  return Term::app(t.name, std::move(args));
}

FormulaRef rect(const FormulaRef& f, std::map<std::string, std::string>& env,
                std::set<std::string>& used) {
  switch (f->kind()) {
    case Conn::Atom:
    case Conn::NegAtom: {
      std::vector<Term> args;
      for (const Term& t : f->args()) args.push_back(rect_term(t, env));
      return f->kind() == Conn::Atom
                 ? Formula::atom(f->name(), std::move(args))
                 : Formula::neg_atom(f->name(), std::move(args));
    }
    case Conn::Forall:
    case Conn::Exists: {
      std::string name = f->name();
      if (used.count(name)) {
        int i = 1;
        while (used.count(name + std::to_string(i))) ++i;
        name = name + std::to_string(i);
      }
      used.insert(name);
      auto old = env.find(f->name()) != env.end()
                     ? std::optional<std::string>(env[f->name()])
                     : std::nullopt;
      env[f->name()] = name;
      FormulaRef body = rect(f->left(), env, used);
      if (old)
        env[f->name()] = *old;
      else
        env.erase(f->name());
      return f->kind() == Conn::Forall ? Formula::forall(name, body)
                                       : Formula::exists(name, body);
    }
    case Conn::Frozen:
      return Formula::frozen(rect(f->left(), env, used));
    case Conn::And:
      return Formula::conj(rect(f->left(), env, used),
                           rect(f->right(), env, used));
    case Conn::Or:
      return Formula::disj(rect(f->left(), env, used),
                           rect(f->right(), env, used));
    case Conn::Imp:
      return Formula::imp(rect(f->left(), env, used),
                          rect(f->right(), env, used));
    default:
      return f;
  }
}

FormulaRef rectify(const FormulaRef& f) {
  // Free idents are off limits; binders then claim names in traversal order.
  std::set<std::string> used, bound;
  collect_free_idents(f, bound, used);
  std::map<std::string, std::string> env;
  return rect(f, env, used);
}

}  // namespace

FormulaRef parse_formula(const std::string& text) {
  Lexer lex(text);
  FormulaParser p(lex);
  FormulaRef f = p.formula();
  if (lex.peek().kind != Tok::End)
    throw ParseError(std::string("trailing input: ") +
                         tok_name(lex.peek().kind),
                     lex.peek().span);
  return rectify(f);
}

Sequent parse_sequent(const std::string& text) {
  Lexer lex(text);
  FormulaParser p(lex);
  std::vector<FormulaRef> ctx;
  if (lex.peek().kind != Tok::Turnstile) {
    ctx.push_back(p.formula());
    while (lex.peek().kind == Tok::Comma) {
      lex.take();
      ctx.push_back(p.formula());
    }
  }
  p.expect(Tok::Turnstile);
  FormulaRef goal = p.formula();
  if (lex.peek().kind != Tok::End)
    throw ParseError(std::string("trailing input: ") +
                         tok_name(lex.peek().kind),
                     lex.peek().span);
  for (auto& f : ctx) f = rectify(f);
  return Sequent(std::move(ctx), rectify(goal));
}

std::string print_term(const Term& t) { return term_to_string(t); }

namespace {

// Precedence: -> is 1, | is 2, & is 3; primaries are 4. A quantifier prints
// bare only where its body can extend to the end of the enclosing scope,
// i.e. at context precedence <= 1.
void print_rec(std::ostream& os, const FormulaRef& f, int ctx) {
  switch (f->kind()) {
    case Conn::Atom:
    case Conn::NegAtom: {
      if (f->kind() == Conn::NegAtom) os << '~';
      os << f->name();
      if (!f->args().empty()) {
        os << '(';
        for (std::size_t i = 0; i < f->args().size(); ++i) {
          if (i) os << ", ";
          os << term_to_string(f->args()[i]);
        }
        os << ')';
      }
      break;
    }
    case Conn::Top: os << "top"; break;
    case Conn::Bot: os << "bot"; break;
    case Conn::Frozen:
      os << '[';
      print_rec(os, f->left(), 1);
      os << ']';
      break;
    case Conn::Imp:
    case Conn::Or:
    case Conn::And: {
      int p = f->kind() == Conn::Imp ? 1 : f->kind() == Conn::Or ? 2 : 3;
      const char* op = f->kind() == Conn::Imp ? " -> "
                       : f->kind() == Conn::Or ? " | "
                                               : " & ";
      bool paren = p < ctx;
      if (paren) os << '(';
      print_rec(os, f->left(), p + 1);
      os << op;
      print_rec(os, f->right(), p);  // right-associative
      if (paren) os << ')';
      break;
    }
    case Conn::Forall:
    case Conn::Exists: {
      bool paren = ctx > 1;
      if (paren) os << '(';
      os << (f->kind() == Conn::Forall ? "forall " : "exists ") << f->name()
         << ". ";
      print_rec(os, f->left(), 1);
      if (paren) os << ')';
      break;
    }
  }
}

}  // namespace

std::string print_formula(const FormulaRef& f) {
  std::ostringstream os;
  print_rec(os, f, 1);
  return os.str();
}

std::string print_sequent(const Sequent& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.context().size(); ++i) {
    if (i) os << ", ";
    print_rec(os, s.context()[i], 1);
  }
  if (!s.context().empty()) os << ' ';
  os << "|- ";
  print_rec(os, s.goal(), 1);
  return os.str();
}

}  // namespace prooftk::textio
