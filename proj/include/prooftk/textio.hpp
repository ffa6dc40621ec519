#ifndef PROOFTK_TEXTIO_HPP
#define PROOFTK_TEXTIO_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "prooftk/apds.hpp"
#include "prooftk/fdl.hpp"
#include "prooftk/proof.hpp"
#include "prooftk/sequent.hpp"

namespace prooftk::textio {

struct SourceSpan {
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  std::size_t byte = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, SourceSpan span,
             std::vector<std::string> expected = {})
      : std::runtime_error(message + " at line " + std::to_string(span.line) +
                           ", column " + std::to_string(span.column)),
        message_(std::move(message)),
        span_(span),
        expected_(std::move(expected)) {}

  const std::string& message() const { return message_; }
  const SourceSpan& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::string message_;
  SourceSpan span_;
  std::vector<std::string> expected_;
};

// An APDS rule that parses but fits none of the four rule shapes
// (unary predicates, one stack variable, at most one pushed symbol).
class KindError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Grammar (lowest to highest precedence, `->` right-associative):
//   F ::= Q | F "->" F | F "|" F | F "&" F
//   Q ::= "forall" var "." F | "exists" var "." F | U
//   U ::= "top" | "bot" | "~" atom | "[" F "]" | atom | "(" F ")"
// Output is rectified: bound variables are renamed apart.
FormulaRef parse_formula(const std::string& text);

// S ::= (F ("," F)*)? "|-" F
Sequent parse_sequent(const std::string& text);

std::string print_term(const Term& t);
std::string print_formula(const FormulaRef& f);
std::string print_sequent(const Sequent& s);

// Line-oriented APDS rule files: optional "predicates:"/"symbols:" header
// lines, then rules `name : Head <- P1(x), P2(x) .` with `#` comments.
apds::ApdsSystem parse_apds(const std::string& text);
std::string print_apds(const apds::ApdsSystem& system);
// Same as print_apds but flags rules absent from `base` with "# sat".
std::string print_apds_saturated(const apds::ApdsSystem& saturated,
                                 const apds::ApdsSystem& base);

// FSA files: `fsa:` header, then states/alphabet/final/trans lines.
apds::Fsa parse_fsa(const std::string& text);
std::string print_fsa(const apds::Fsa& machine);

// Model files: `domain: c1 c2 ...` then `rel P/k: (c,..) (c,..) ...`.
fdl::FdlModel parse_fdl_model(const std::string& text);
std::string print_fdl_model(const fdl::FdlModel& model);

enum class ProofStyle { Records, Tree };

// Records style, the canonical machine format: one node per line,
//   indent rule_id [principal=(F)] [witness=(t)] [fresh=x] :: sequent
// children indented by two spaces. Tree style mirrors inference bars.
std::string print_proof(const Proof& proof,
                        ProofStyle style = ProofStyle::Records);

ProofRef parse_proof(const std::string& text);

// A word query like "S(a b)" or "S(eps)"; returns predicate and symbols.
std::pair<std::string, std::vector<std::string>> parse_word_query(
    const std::string& text);

}  // namespace prooftk::textio

#endif
