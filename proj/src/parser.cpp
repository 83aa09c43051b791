#include "bd4/parser.hpp"

#include <cctype>
#include <optional>

namespace bd4 {

ParseError::ParseError(Kind kind, std::size_t position, const std::string& message)
    : Error("at offset " + std::to_string(position) + ": " + message),
      kind_(kind),
      position_(position) {}

std::string_view parse_error_kind_name(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::Lexical: return "lexical";
    case ParseError::Kind::Syntax: return "syntax";
    case ParseError::Kind::Arity: return "arity";
    case ParseError::Kind::UnknownSymbol: return "unknown-symbol";
    case ParseError::Kind::Quantifier: return "quantifier";
  }
  return "syntax";
}

namespace {

enum class Tok {
  Ident, LParen, RParen, Comma, Semicolon, Dot, Not, And, Or, Arrow, Eq, Neq,
  Turnstile, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::string describe(const Token& tok) {
  switch (tok.kind) {
    case Tok::Ident: return "'" + tok.text + "'";
    case Tok::End: return "end of input";
    default: return "'" + tok.text + "'";
  }
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (ident_start(c)) {
      while (i < text.size() && ident_char(text[i])) ++i;
      out.push_back({Tok::Ident, std::string(text.substr(start, i - start)), start});
      continue;
    }
    auto two = text.substr(i, 2);
    if (two == "->") { out.push_back({Tok::Arrow, "->", start}); i += 2; continue; }
    if (two == "!=") { out.push_back({Tok::Neq, "!=", start}); i += 2; continue; }
    if (two == "|-") { out.push_back({Tok::Turnstile, "|-", start}); i += 2; continue; }
    if (two == "=>") { out.push_back({Tok::Turnstile, "=>", start}); i += 2; continue; }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case ';': kind = Tok::Semicolon; break;
      case '.': kind = Tok::Dot; break;
      case '~': kind = Tok::Not; break;
      case '&': kind = Tok::And; break;
      case '|': kind = Tok::Or; break;
      case '=': kind = Tok::Eq; break;
      default:
        throw ParseError(ParseError::Kind::Lexical, start,
                         std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig, Signature* infer)
      : tokens_(tokenize(text)), sig_(sig), infer_(infer) {}

  Formula formula_only() {
    Formula a = formula();
    expect_end();
    return a;
  }

  Term term_only() {
    Term t = term();
    expect_end();
    return t;
  }

  std::vector<Formula> list_only() {
    auto out = list();
    expect_end();
    return out;
  }

  Sequent sequent() {
    auto ante = list();
    if (peek().kind != Tok::Turnstile)
      throw syntax("expected '|-' or '=>' but found " + describe(peek()));
    next();
    auto succ = list();
    expect_end();
    return Sequent(std::move(ante), std::move(succ));
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  ParseError syntax(const std::string& message) const {
    return ParseError(ParseError::Kind::Syntax, peek().pos, message);
  }

  void expect(Tok kind, std::string_view what) {
    if (!accept(kind))
      throw syntax("expected " + std::string(what) + " but found " + describe(peek()));
  }

  void expect_end() {
    if (peek().kind != Tok::End) throw syntax("unexpected " + describe(peek()));
  }

  std::vector<Formula> list() {
    std::vector<Formula> out;
    if (peek().kind == Tok::End || peek().kind == Tok::Turnstile) return out;
    out.push_back(formula());
    while (accept(Tok::Comma) || accept(Tok::Semicolon)) out.push_back(formula());
    return out;
  }

  Formula formula() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return Formula::implies(std::move(lhs), formula());
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (accept(Tok::Or)) lhs = Formula::disj(std::move(lhs), conjunction());
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (accept(Tok::And)) lhs = Formula::conj(std::move(lhs), unary());
    return lhs;
  }

  Formula unary() {
    const Token& tok = peek();
    if (tok.kind == Tok::Not) {
      next();
      return Formula::neg(unary());
    }
    if (tok.kind == Tok::Ident) {
      if (tok.text == "forall" || tok.text == "exists") return quantified();
      if (auto c = connective_from_name(tok.text)) {
        std::size_t at = tok.pos;
        next();
        require_connective(*c, at);
        if (connective_arity(*c) == 0) return Formula::conn(*c);
        return Formula::conn(*c, {unary()});
      }
    }
    return atom();
  }

  Formula quantified() {
    const Token& q = next();
    bool universal = q.text == "forall";
    const Token& var = peek();
    if (var.kind != Tok::Ident)
      throw ParseError(ParseError::Kind::Quantifier, var.pos,
                       "expected a variable after '" + q.text + "'");
    if (is_reserved_word(var.text) || sig_.declares(var.text) ||
        (infer_ && infer_->declares(var.text)))
      throw ParseError(ParseError::Kind::Quantifier, var.pos,
                       "'" + var.text + "' cannot be bound: it is not a variable");
    std::string name = var.text;
    next();
    if (peek().kind != Tok::Dot)
      throw ParseError(ParseError::Kind::Quantifier, peek().pos,
                       "expected '.' after the bound variable '" + name + "'");
    next();
    bound_.push_back(name);
    Formula body = formula();
    bound_.pop_back();
    return universal ? Formula::forall(name, std::move(body))
                     : Formula::exists(name, std::move(body));
  }

  Formula atom() {
    const Token& tok = peek();
    if (accept(Tok::LParen)) {
      Formula a = formula();
      expect(Tok::RParen, "')'");
      return a;
    }
    if (tok.kind != Tok::Ident) throw syntax("expected a formula but found " + describe(tok));
    if (tok.text == "F") {
      next();
      return Formula::falsity();
    }
    if (tok.text == "T") {
      next();
      return Formula::truth();
    }
    std::size_t at = tok.pos;
    std::string name = tok.text;
    next();
    std::optional<std::vector<Term>> args;
    if (peek().kind == Tok::LParen) args = argument_list();
    if (peek().kind == Tok::Eq || peek().kind == Tok::Neq) {
      bool negated = next().kind == Tok::Neq;
      Term lhs = resolve_term(name, std::move(args), at);
      Term rhs = term();
      return negated ? Formula::neq(std::move(lhs), std::move(rhs))
                     : Formula::eq(std::move(lhs), std::move(rhs));
    }
    return resolve_predicate(name, args ? std::move(*args) : std::vector<Term>{}, at);
  }

  std::vector<Term> argument_list() {
    expect(Tok::LParen, "'('");
    std::vector<Term> args;
    if (peek().kind == Tok::RParen) throw syntax("empty argument list");
    args.push_back(term());
    while (accept(Tok::Comma)) args.push_back(term());
    expect(Tok::RParen, "')'");
    return args;
  }

  Term term() {
    const Token& tok = peek();
    if (tok.kind != Tok::Ident) throw syntax("expected a term but found " + describe(tok));
    if (is_reserved_word(tok.text))
      throw syntax("'" + tok.text + "' is reserved and cannot be a term");
    std::size_t at = tok.pos;
    std::string name = tok.text;
    next();
    std::optional<std::vector<Term>> args;
    if (peek().kind == Tok::LParen) args = argument_list();
    return resolve_term(name, std::move(args), at);
  }

  bool is_bound(const std::string& name) const {
    for (const auto& v : bound_)
      if (v == name) return true;
    return false;
  }

  std::optional<int> function_arity(const std::string& name) const {
    if (auto a = sig_.function_arity(name)) return a;
    if (infer_) return infer_->function_arity(name);
    return std::nullopt;
  }

  std::optional<int> predicate_arity(const std::string& name) const {
    if (auto a = sig_.predicate_arity(name)) return a;
    if (infer_) return infer_->predicate_arity(name);
    return std::nullopt;
  }

  Term resolve_term(const std::string& name, std::optional<std::vector<Term>> args,
                    std::size_t at) {
    if (is_reserved_word(name))
      throw ParseError(ParseError::Kind::Syntax, at, "'" + name + "' cannot be a term");
    int given = args ? static_cast<int>(args->size()) : 0;
    if (!args && is_bound(name)) return Term::variable(name);
    if (predicate_arity(name))
      throw ParseError(ParseError::Kind::UnknownSymbol, at,
                       "'" + name + "' is a predicate symbol, not a term");
    if (auto arity = function_arity(name)) {
      if (*arity != given)
        throw ParseError(ParseError::Kind::Arity, at,
                         "function symbol '" + name + "' expects " + std::to_string(*arity) +
                             " argument(s), got " + std::to_string(given));
      return Term::function(name, args ? std::move(*args) : std::vector<Term>{});
    }
    if (!args) return Term::variable(name);
    if (!infer_)
      throw ParseError(ParseError::Kind::UnknownSymbol, at,
                       "undeclared function symbol '" + name + "'");
    infer_->add_function(name, given);
    return Term::function(name, std::move(*args));
  }

  Formula resolve_predicate(const std::string& name, std::vector<Term> args, std::size_t at) {
    int given = static_cast<int>(args.size());
    if (function_arity(name) || is_bound(name))
      throw ParseError(ParseError::Kind::UnknownSymbol, at,
                       "'" + name + "' is a term, not a formula");
    if (auto arity = predicate_arity(name)) {
      if (*arity != given)
        throw ParseError(ParseError::Kind::Arity, at,
                         "predicate symbol '" + name + "' expects " + std::to_string(*arity) +
                             " argument(s), got " + std::to_string(given));
      return Formula::pred(name, std::move(args));
    }
    if (!infer_)
      throw ParseError(ParseError::Kind::UnknownSymbol, at,
                       std::string(given == 0 ? "undeclared proposition symbol '"
                                              : "undeclared predicate symbol '") +
                           name + "'");
    infer_->add_predicate(name, given);
    return Formula::pred(name, std::move(args));
  }

  void require_connective(Connective c, std::size_t at) {
    if (sig_.enabled(c) || (infer_ && infer_->enabled(c))) return;
    if (!infer_)
      throw ParseError(ParseError::Kind::UnknownSymbol, at,
                       "connective '" + std::string(connective_name(c)) +
                           "' is not enabled in the signature");
    infer_->enable(c);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Signature& sig_;
  Signature* infer_;
  std::vector<std::string> bound_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) {
  return Parser(text, sig, nullptr).formula_only();
}

Term parse_term(std::string_view text, const Signature& sig) {
  return Parser(text, sig, nullptr).term_only();
}

std::vector<Formula> parse_formula_list(std::string_view text, const Signature& sig) {
  return Parser(text, sig, nullptr).list_only();
}

Sequent parse_sequent(std::string_view text, const Signature& sig) {
  return Parser(text, sig, nullptr).sequent();
}

Formula parse_formula_infer(std::string_view text, Signature& sig) {
  Signature empty;
  return Parser(text, empty, &sig).formula_only();
}

std::vector<Formula> parse_formula_list_infer(std::string_view text, Signature& sig) {
  Signature empty;
  return Parser(text, empty, &sig).list_only();
}

Sequent parse_sequent_infer(std::string_view text, Signature& sig) {
  Signature empty;
  return Parser(text, empty, &sig).sequent();
}

// ---------------------------------------------------------------------------
// Printing

std::string print_term(const Term& t) {
  if (t.args().empty()) return t.name();
  std::string out = t.name() + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i > 0) out += ", ";
    out += print_term(t.args()[i]);
  }
  return out + ")";
}

namespace {

// Binding strength of the outermost construct.
enum Level { kQuant = 0, kImp = 1, kDisj = 2, kConj = 3, kUnary = 4, kAtom = 5 };

bool is_truth(const Formula& a) { return a.op() == Op::Not && a.sub().op() == Op::False; }
bool is_neq(const Formula& a) { return a.op() == Op::Not && a.sub().op() == Op::Eq; }

Level level(const Formula& a) {
  switch (a.op()) {
    case Op::Forall: case Op::Exists: return kQuant;
    case Op::Implies: return kImp;
    case Op::Or: return kDisj;
    case Op::And: return kConj;
    case Op::Not: return (is_truth(a) || is_neq(a)) ? kAtom : kUnary;
    case Op::Conn: return a.subs().empty() ? kAtom : kUnary;
    default: return kAtom;
  }
}

void print(const Formula& a, std::string& out);

void print_at(const Formula& a, int required, std::string& out) {
  if (level(a) < required) {
    out += '(';
    print(a, out);
    out += ')';
  } else {
    print(a, out);
  }
}

void print(const Formula& a, std::string& out) {
  switch (a.op()) {
    case Op::False:
      out += 'F';
      return;
    case Op::Prop:
      out += a.name();
      return;
    case Op::Pred:
      out += a.name();
      out += '(';
      for (std::size_t i = 0; i < a.terms().size(); ++i) {
        if (i > 0) out += ", ";
        out += print_term(a.terms()[i]);
      }
      out += ')';
      return;
    case Op::Eq:
      out += print_term(a.terms()[0]) + " = " + print_term(a.terms()[1]);
      return;
    case Op::Conn:
      out += connective_name(a.connective());
      if (!a.subs().empty()) {
        out += ' ';
        print_at(a.sub(), kUnary, out);
      }
      return;
    case Op::Not:
      if (is_truth(a)) {
        out += 'T';
      } else if (is_neq(a)) {
        const Formula& e = a.sub();
        out += print_term(e.terms()[0]) + " != " + print_term(e.terms()[1]);
      } else {
        out += '~';
        print_at(a.sub(), kUnary, out);
      }
      return;
    case Op::And:
      print_at(a.sub(0), kConj, out);
      out += " & ";
      print_at(a.sub(1), kUnary, out);
      return;
    case Op::Or:
      print_at(a.sub(0), kDisj, out);
      out += " | ";
      print_at(a.sub(1), kConj, out);
      return;
    case Op::Implies:
      print_at(a.sub(0), kDisj, out);
      out += " -> ";
      print_at(a.sub(1), kImp, out);
      return;
    case Op::Forall:
    case Op::Exists:
      out += a.op() == Op::Forall ? "forall " : "exists ";
      out += a.name();
      out += ". ";
      print(a.body(), out);
      return;
  }
}

}  // namespace

std::string print_formula(const Formula& a) {
  std::string out;
  print(a, out);
  return out;
}

std::string print_formula_list(const FormulaSet& formulas, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    if (i > 0) out += separator;
    out += print_formula(formulas[i]);
  }
  return out;
}

std::string print_sequent(const Sequent& s, std::string_view separator,
                          std::string_view turnstile) {
  std::string out = print_formula_list(s.antecedent, separator);
  out += out.empty() ? std::string(turnstile.substr(turnstile.find_first_not_of(' '))) : std::string(turnstile);
  std::string succ = print_formula_list(s.succedent, separator);
  if (succ.empty()) {
    while (!out.empty() && out.back() == ' ') out.pop_back();
  }
  return out + succ;
}

}  // namespace bd4
