#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "prooftk/textio.hpp"

namespace prooftk::textio {

namespace {

struct Line {
  std::string text;
  int number;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  std::string cur;
  int n = 1;
  for (char c : text) {
    if (c == '\n') {
      out.push_back({cur, n++});
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back({cur, n});
  return out;
}

std::string strip_comment(const std::string& s) {
  auto pos = s.find('#');
  return pos == std::string::npos ? s : s.substr(0, pos);
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c);
  });
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// A forward-only scanner over one physical line; all the line formats are
// simple enough that this plus recursion covers them.
class Cursor {
 public:
  Cursor(const std::string& s, int line) : s_(s), line_(line) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
  }

  bool at_end() {
    skip_ws();
    return i_ >= s_.size();
  }

  SourceSpan span() {
    skip_ws();
    return {line_, static_cast<int>(i_) + 1, i_};
  }

  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  bool eat(const std::string& lit) {
    skip_ws();
    if (s_.compare(i_, lit.size(), lit) == 0) {
      i_ += lit.size();
      return true;
    }
    return false;
  }

  void expect(const std::string& lit) {
    if (!eat(lit))
      throw ParseError("expected '" + lit + "'", span(), {lit});
  }

  bool at_ident() { return ident_start(peek()); }

  std::string ident() {
    skip_ws();
    if (i_ >= s_.size() || !ident_start(s_[i_]))
      throw ParseError("expected identifier", span(), {"identifier"});
    std::string out;
    while (i_ < s_.size() && ident_char(s_[i_])) out += s_[i_++];
    return out;
  }

  // A maximal run of non-space characters; empty at end of line.
  std::string word() {
    skip_ws();
    std::string out;
    while (i_ < s_.size() &&
           !std::isspace(static_cast<unsigned char>(s_[i_])))
      out += s_[i_++];
    return out;
  }

  // Raw text between a '(' and its matching ')', nesting respected.
  std::string paren_payload() {
    expect("(");
    int depth = 1;
    std::string out;
    while (i_ < s_.size()) {
      char ch = s_[i_++];
      if (ch == '(') ++depth;
      if (ch == ')' && --depth == 0) return out;
      out += ch;
    }
    throw ParseError("unterminated '('", {line_, static_cast<int>(i_) + 1, i_});
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
  int line_;
};

// --- APDS rule files -----------------------------------------------------

// One argument of a parsed atom, flattened to its symbol spine: "g x" and
// "g(x)" both become {g, x}, "eps" becomes {eps}.
struct RawAtom {
  std::string pred;
  std::vector<std::vector<std::string>> args;
  SourceSpan span;
};

std::vector<std::string> parse_spine(Cursor& c) {
  std::vector<std::string> out;
  out.push_back(c.ident());
  for (;;) {
    if (c.peek() == '(') {
      c.eat("(");
      auto inner = parse_spine(c);
      c.expect(")");
      out.insert(out.end(), inner.begin(), inner.end());
    } else if (c.at_ident()) {
      out.push_back(c.ident());
    } else {
      break;
    }
  }
  return out;
}

RawAtom parse_raw_atom(Cursor& c, std::string pred) {
  RawAtom a;
  a.span = c.span();
  a.pred = pred.empty() ? c.ident() : std::move(pred);
  c.expect("(");
  a.args.push_back(parse_spine(c));
  while (c.eat(",")) a.args.push_back(parse_spine(c));
  c.expect(")");
  return a;
}

bool is_eps(const std::vector<std::string>& arg) {
  return arg.size() == 1 && lower(arg[0]) == "eps";
}

apds::ApdsRule classify_rule(const std::string& name, const RawAtom& head,
                             const std::vector<RawAtom>& premises) {
  auto unary = [](const RawAtom& a) -> const std::vector<std::string>& {
    if (a.args.size() != 1)
      throw KindError("predicate " + a.pred + " is not unary", a.span);
    return a.args[0];
  };
  auto plain_premise = [&](const RawAtom& p, const std::string& var) {
    const auto& arg = unary(p);
    if (arg.size() != 1 || arg[0] != var || is_eps(arg))
      throw KindError("premise of " + head.pred + " rule must be P(" + var +
                          ")",
                      p.span);
  };

  apds::ApdsRule r;
  r.name = name;
  r.head = head.pred;
  const auto& h = unary(head);

  if (is_eps(h)) {
    if (!premises.empty())
      throw KindError("an eps rule takes no premises", head.span);
    r.kind = apds::RuleKind::IntroEps;
    return r;
  }
  if (h.size() == 2) {
    r.kind = apds::RuleKind::IntroPush;
    r.symbol = h[0];
    for (const auto& p : premises) {
      plain_premise(p, h[1]);
      r.premises.push_back(p.pred);
    }
    return r;
  }
  if (h.size() != 1)
    throw KindError("head must be Q(g x), Q(eps), or Q(x)", head.span);
  const std::string& var = h[0];

  if (!premises.empty()) {
    const auto& first = unary(premises[0]);
    if (first.size() == 2 && first[1] == var) {
      r.kind = apds::RuleKind::Elim;
      r.symbol = first[0];
      r.elim_first = premises[0].pred;
      for (std::size_t i = 1; i < premises.size(); ++i) {
        plain_premise(premises[i], var);
        r.premises.push_back(premises[i].pred);
      }
      return r;
    }
  }
  r.kind = apds::RuleKind::Neutral;
  for (const auto& p : premises) {
    plain_premise(p, var);
    r.premises.push_back(p.pred);
  }
  return r;
}

std::string apds_rule_line(const apds::ApdsRule& r) {
  std::ostringstream os;
  if (!r.name.empty()) os << r.name << " : ";
  os << r.head;
  switch (r.kind) {
    case apds::RuleKind::IntroPush: os << '(' << r.symbol << " x)"; break;
    case apds::RuleKind::IntroEps: os << "(eps)"; break;
    default: os << "(x)"; break;
  }
  std::vector<std::string> parts;
  if (r.kind == apds::RuleKind::Elim)
    parts.push_back(r.elim_first + "(" + r.symbol + " x)");
  for (const auto& p : r.premises) parts.push_back(p + "(x)");
  for (std::size_t i = 0; i < parts.size(); ++i)
    os << (i == 0 ? " <- " : ", ") << parts[i];
  os << '.';
  return os.str();
}

std::string print_apds_impl(const apds::ApdsSystem& system,
                            const apds::ApdsSystem* base) {
  std::set<std::tuple<apds::RuleKind, std::string, std::string, std::string,
                      std::vector<std::string>>>
      base_keys;
  if (base)
    for (const auto& r : base->rules()) base_keys.insert(r.key());
  std::ostringstream os;
  os << "predicates:";
  for (const auto& p : system.predicates()) os << ' ' << p;
  os << '\n';
  if (!system.symbols().empty()) {
    os << "symbols:";
    for (const auto& g : system.symbols()) os << ' ' << g;
    os << '\n';
  }
  for (const auto& r : system.rules()) {
    os << apds_rule_line(r);
    if (base && !base_keys.count(r.key())) os << " # sat";
    os << '\n';
  }
  return os.str();
}

// --- proof records -------------------------------------------------------

Term parse_term_text(Cursor& c) {
  std::string id = c.ident();
  if (c.peek() == '(') {
    c.eat("(");
    std::vector<Term> args;
    args.push_back(parse_term_text(c));
    while (c.eat(",")) args.push_back(parse_term_text(c));
    c.expect(")");
    return Term::app(id, std::move(args));
  }
  return Term::cst(id);
}

struct RecordLine {
  int depth;
  RuleInstance rule;
  Sequent sequent;
  SourceSpan span;
};

void records_rec(std::ostringstream& os, const Proof& p, int depth) {
  os << std::string(2 * depth, ' ') << p.rule().rule_id;
  if (p.rule().principal)
    os << " principal=(" << print_formula(p.rule().principal) << ')';
  if (p.rule().witness)
    os << " witness=(" << print_term(*p.rule().witness) << ')';
  if (p.rule().fresh_var) os << " fresh=" << *p.rule().fresh_var;
  os << " :: " << print_sequent(p.conclusion()) << '\n';
  for (const auto& q : p.premises()) records_rec(os, *q, depth + 1);
}

// Inference-bar layout: premises side by side over a bar, conclusion under
// it, the rule name to the right of the bar.
struct Block {
  std::vector<std::string> lines;  // top first, all padded to width
  std::size_t width = 0;
  std::size_t bar_extent = 0;  // width without the trailing rule label
};

Block tree_rec(const Proof& p) {
  std::string concl = print_sequent(p.conclusion());
  std::string label = ' ' + p.rule().rule_id;
  if (p.premises().empty()) {
    std::string bar(concl.size(), '-');
    Block b;
    b.bar_extent = concl.size();
    b.width = concl.size() + label.size();
    b.lines = {bar + label, concl + std::string(label.size(), ' ')};
    return b;
  }
  std::vector<Block> prems;
  for (const auto& q : p.premises()) prems.push_back(tree_rec(*q));
  std::size_t tallest = 0, row_width = 0;
  for (const auto& b : prems) tallest = std::max(tallest, b.lines.size());
  for (std::size_t i = 0; i < prems.size(); ++i)
    row_width += prems[i].width + (i ? 3 : 0);
  std::vector<std::string> rows(tallest);
  for (std::size_t i = 0; i < prems.size(); ++i) {
    std::size_t pad = tallest - prems[i].lines.size();
    for (std::size_t j = 0; j < tallest; ++j) {
      if (i) rows[j] += "   ";
      rows[j] += j < pad ? std::string(prems[i].width, ' ')
                         : prems[i].lines[j - pad];
    }
  }
  std::size_t bar = std::max(row_width, concl.size());
  Block b;
  b.bar_extent = bar;
  b.width = bar + label.size();
  auto centered = [&](const std::string& s) {
    std::size_t left = (bar - s.size()) / 2;
    std::string out = std::string(left, ' ') + s;
    out.resize(b.width, ' ');
    return out;
  };
  for (const auto& r : rows) b.lines.push_back(centered(r));
  b.lines.push_back(std::string(bar, '-') + label);
  b.lines.push_back(centered(concl));
  return b;
}

// After parsing, occurrences of eigenvariables read back as constants;
// the fresh= fields tell us which identifiers are really variables.
Term unconst_term(const Term& t, const std::set<std::string>& vars) {
  if (t.kind == Term::Kind::Const && vars.count(t.name))
    return Term::var(t.name);
  if (t.kind == Term::Kind::App) {
    std::vector<Term> args;
    for (const Term& a : t.args) args.push_back(unconst_term(a, vars));
    return Term::app(t.name, std::move(args));
  }
  return t;
}

FormulaRef unconst(const FormulaRef& f, const std::set<std::string>& vars) {
  switch (f->kind()) {
    case Conn::Atom:
    case Conn::NegAtom: {
      std::vector<Term> args;
      for (const Term& t : f->args()) args.push_back(unconst_term(t, vars));
      return f->kind() == Conn::Atom
                 ? Formula::atom(f->name(), std::move(args))
                 : Formula::neg_atom(f->name(), std::move(args));
    }
    case Conn::And:
      return Formula::conj(unconst(f->left(), vars), unconst(f->right(), vars));
    case Conn::Or:
      return Formula::disj(unconst(f->left(), vars), unconst(f->right(), vars));
    case Conn::Imp:
      return Formula::imp(unconst(f->left(), vars), unconst(f->right(), vars));
    case Conn::Frozen:
      return Formula::frozen(unconst(f->left(), vars));
    case Conn::Forall:
      return Formula::forall(f->name(), unconst(f->left(), vars));
    case Conn::Exists:
      return Formula::exists(f->name(), unconst(f->left(), vars));
    default:
      return f;
  }
}

Sequent unconst(const Sequent& s, const std::set<std::string>& vars) {
  std::vector<FormulaRef> ctx;
  for (const auto& f : s.context()) ctx.push_back(unconst(f, vars));
  return Sequent(std::move(ctx), unconst(s.goal(), vars));
}

ProofRef build_records(const std::vector<RecordLine>& recs, std::size_t& i,
                       int depth, const std::set<std::string>& vars) {
  const RecordLine& r = recs[i++];
  RuleInstance rule = r.rule;
  if (rule.principal) rule.principal = unconst(rule.principal, vars);
  if (rule.witness) rule.witness = unconst_term(*rule.witness, vars);
  std::vector<ProofRef> prems;
  while (i < recs.size() && recs[i].depth > depth) {
    if (recs[i].depth != depth + 1)
      throw ParseError("indentation jumps by more than one level",
                       recs[i].span);
    prems.push_back(build_records(recs, i, depth + 1, vars));
  }
  return make_proof(std::move(rule), unconst(r.sequent, vars),
                    std::move(prems));
}

}  // namespace

// --- public entry points -------------------------------------------------

apds::ApdsSystem parse_apds(const std::string& text) {
  apds::ApdsSystem sys;
  for (const Line& line : split_lines(text)) {
    std::string body = strip_comment(line.text);
    if (blank(body)) continue;
    Cursor c(body, line.number);
    std::string first = c.ident();
    if ((first == "predicates" || first == "symbols") && c.eat(":")) {
      while (!c.at_end()) {
        std::string id = c.ident();
        first == "predicates" ? sys.declare_predicate(id)
                              : sys.declare_symbol(id);
      }
      continue;
    }
    std::string name;
    RawAtom head;
    if (c.eat(":")) {
      name = first;
      head = parse_raw_atom(c, "");
    } else {
      head = parse_raw_atom(c, first);
    }
    std::vector<RawAtom> premises;
    if (c.eat("<-")) {
      premises.push_back(parse_raw_atom(c, ""));
      while (c.eat(",")) premises.push_back(parse_raw_atom(c, ""));
    }
    c.expect(".");
    if (!c.at_end())
      throw ParseError("trailing input after '.'", c.span());
    sys.add_rule(classify_rule(name, head, premises));
  }
  return sys;
}

std::string print_apds(const apds::ApdsSystem& system) {
  return print_apds_impl(system, nullptr);
}

std::string print_apds_saturated(const apds::ApdsSystem& saturated,
                                 const apds::ApdsSystem& base) {
  return print_apds_impl(saturated, &base);
}

apds::Fsa parse_fsa(const std::string& text) {
  apds::Fsa m;
  bool seen_header = false;
  for (const Line& line : split_lines(text)) {
    std::string body = strip_comment(line.text);
    if (blank(body)) continue;
    Cursor c(body, line.number);
    if (!seen_header) {
      c.expect("fsa:");
      if (!c.at_end())
        throw ParseError("trailing input after 'fsa:'", c.span());
      seen_header = true;
      continue;
    }
    std::string first = c.ident();
    if (c.eat(":")) {
      std::set<std::string>* target =
          first == "states" ? &m.states
          : first == "alphabet" ? &m.alphabet
          : first == "final" ? &m.finals
                             : nullptr;
      if (!target)
        throw ParseError("unknown section '" + first + "'", c.span(),
                         {"states", "alphabet", "final"});
      while (!c.at_end()) target->insert(c.ident());
      continue;
    }
    c.expect("->");
    std::string sym = c.ident();
    auto& succs = m.trans[first][sym];
    if (c.at_end())
      throw ParseError("transition needs a successor state", c.span());
    while (!c.at_end()) succs.insert(c.ident());
    m.states.insert(first);
    m.alphabet.insert(sym);
  }
  if (!seen_header)
    throw ParseError("missing 'fsa:' header", {1, 1, 0}, {"fsa:"});
  for (const auto& [src, by_sym] : m.trans)
    for (const auto& [sym, succs] : by_sym)
      for (const auto& d : succs) m.states.insert(d);
  for (const auto& f : m.finals) m.states.insert(f);
  return m;
}

std::string print_fsa(const apds::Fsa& machine) {
  std::ostringstream os;
  os << "fsa:\n";
  auto section = [&](const char* name, const std::set<std::string>& xs) {
    os << name << ':';
    for (const auto& x : xs) os << ' ' << x;
    os << '\n';
  };
  section("states", machine.states);
  section("alphabet", machine.alphabet);
  section("final", machine.finals);
  for (const auto& [src, by_sym] : machine.trans)
    for (const auto& [sym, succs] : by_sym) {
      if (succs.empty()) continue;
      os << src << " -> " << sym;
      for (const auto& d : succs) os << ' ' << d;
      os << '\n';
    }
  return os.str();
}

fdl::FdlModel parse_fdl_model(const std::string& text) {
  std::vector<std::string> domain;
  std::set<std::string> known;
  std::map<std::pair<std::string, int>, std::set<std::vector<std::string>>>
      rels;
  bool seen_domain = false;
  for (const Line& line : split_lines(text)) {
    std::string body = strip_comment(line.text);
    if (blank(body)) continue;
    Cursor c(body, line.number);
    std::string first = c.ident();
    if (first == "domain") {
      c.expect(":");
      if (seen_domain)
        throw ParseError("duplicate domain section", c.span());
      seen_domain = true;
      while (!c.at_end()) {
        SourceSpan at = c.span();
        std::string id = c.ident();
        if (!known.insert(id).second)
          throw ParseError("duplicate domain constant '" + id + "'", at);
        domain.push_back(id);
      }
      if (domain.empty())
        throw ParseError("domain must be nonempty", c.span());
      continue;
    }
    if (first != "rel")
      throw ParseError("expected 'domain:' or 'rel'", c.span(),
                       {"domain", "rel"});
    if (!seen_domain)
      throw ParseError("'rel' before 'domain:'", c.span());
    std::string pred = c.ident();
    c.expect("/");
    SourceSpan arity_at = c.span();
    int arity = 0;
    bool any = false;
    while (std::isdigit(static_cast<unsigned char>(c.peek()))) {
      arity = arity * 10 + (c.peek() - '0');
      c.eat(std::string(1, c.peek()));
      any = true;
    }
    if (!any || arity < 1)
      throw ParseError("arity must be a positive number", arity_at);
    c.expect(":");
    auto& table = rels[{pred, arity}];
    while (!c.at_end()) {
      SourceSpan at = c.span();
      c.expect("(");
      std::vector<std::string> tuple;
      tuple.push_back(c.ident());
      while (c.eat(",")) tuple.push_back(c.ident());
      c.expect(")");
      if (static_cast<int>(tuple.size()) != arity)
        throw ParseError("tuple arity mismatch for " + pred + "/" +
                             std::to_string(arity),
                         at);
      for (const auto& e : tuple)
        if (!known.count(e))
          throw ParseError("unknown constant '" + e + "'", at);
      table.insert(std::move(tuple));
    }
  }
  if (!seen_domain)
    throw ParseError("missing 'domain:' section", {1, 1, 0}, {"domain"});
  return fdl::FdlModel(std::move(domain), std::move(rels));
}

std::string print_fdl_model(const fdl::FdlModel& model) {
  std::ostringstream os;
  os << "domain:";
  for (const auto& c : model.domain()) os << ' ' << c;
  os << '\n';
  for (const auto& [key, tuples] : model.relations()) {
    os << "rel " << key.first << '/' << key.second << ':';
    for (const auto& t : tuples) {
      os << " (";
      for (std::size_t i = 0; i < t.size(); ++i) os << (i ? ", " : "") << t[i];
      os << ')';
    }
    os << '\n';
  }
  return os.str();
}

std::string print_proof(const Proof& proof, ProofStyle style) {
  if (style == ProofStyle::Records) {
    std::ostringstream os;
    records_rec(os, proof, 0);
    return os.str();
  }
  Block b = tree_rec(proof);
  std::ostringstream os;
  for (auto line : b.lines) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

ProofRef parse_proof(const std::string& text) {
  std::vector<RecordLine> recs;
  std::set<std::string> fresh_names;
  for (const Line& line : split_lines(text)) {
    if (blank(line.text) || line.text[0] == '#') continue;
    std::size_t indent = 0;
    while (indent < line.text.size() && line.text[indent] == ' ') ++indent;
    SourceSpan at{line.number, static_cast<int>(indent) + 1, 0};
    if (indent % 2)
      throw ParseError("indentation must be a multiple of two spaces", at);
    auto sep = line.text.find("::");
    if (sep == std::string::npos)
      throw ParseError("missing '::' separator", at, {"::"});
    std::string head = line.text.substr(0, sep);
    std::string tail = line.text.substr(sep + 2);
    Cursor c(head, line.number);
    RecordLine rec;
    rec.depth = static_cast<int>(indent / 2);
    rec.span = at;
    // rule names may contain hyphens and digits: and-right, or-right-1
    rec.rule.rule_id = c.word();
    if (rec.rule.rule_id.empty())
      throw ParseError("expected a rule name", at);
    while (!c.at_end()) {
      if (c.eat("principal=")) {
        rec.rule.principal = parse_formula(c.paren_payload());
      } else if (c.eat("witness=")) {
        std::string w = c.paren_payload();
        Cursor wc(w, line.number);
        rec.rule.witness = parse_term_text(wc);
        if (!wc.at_end())
          throw ParseError("trailing input in witness term", wc.span());
      } else if (c.eat("fresh=")) {
        rec.rule.fresh_var = c.ident();
        fresh_names.insert(*rec.rule.fresh_var);
      } else {
        throw ParseError("unexpected field before '::'", c.span(),
                         {"principal=", "witness=", "fresh="});
      }
    }
    try {
      rec.sequent = parse_sequent(tail);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), {line.number, e.span().column, 0},
                       e.expected());
    }
    recs.push_back(std::move(rec));
  }
  if (recs.empty())
    throw ParseError("empty proof", {1, 1, 0});
  if (recs[0].depth != 0)
    throw ParseError("root node must not be indented", recs[0].span);
  std::size_t i = 0;
  ProofRef p = build_records(recs, i, 0, fresh_names);
  if (i != recs.size())
    throw ParseError("more than one root node", recs[i].span);
  return p;
}

std::pair<std::string, std::vector<std::string>> parse_word_query(
    const std::string& text) {
  Cursor c(text, 1);
  std::string pred = c.ident();
  c.expect("(");
  std::vector<std::string> word;
  SourceSpan at = c.span();
  std::string first = c.ident();
  if (lower(first) == "eps") {
    if (c.at_ident())
      throw ParseError("'eps' stands alone", at);
  } else {
    word.push_back(first);
    while (c.at_ident()) {
      SourceSpan here = c.span();
      std::string sym = c.ident();
      if (lower(sym) == "eps")
        throw ParseError("'eps' stands alone", here);
      word.push_back(std::move(sym));
    }
  }
  c.expect(")");
  if (!c.at_end())
    throw ParseError("trailing input after word query", c.span());
  return {std::move(pred), std::move(word)};
}

}  // namespace prooftk::textio
