#include "ewinv/dsl.hpp"

#include <cctype>
#include <limits>
#include <optional>

#include "ewinv/error.hpp"

namespace ewinv {

namespace {

enum class Tok { number, ident, op, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token tok;
      tok.line = line_;
      tok.col = col_;
      if (pos_ >= s_.size()) {
        tok.kind = Tok::end;
        out.push_back(tok);
        return out;
      }
      char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        tok.kind = Tok::number;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) tok.text += take();
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        tok.kind = Tok::ident;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
          tok.text += take();
      } else if (std::string("+-*/^(),;=").find(c) != std::string::npos) {
        tok.kind = Tok::op;
        tok.text = std::string(1, take());
      } else {
        fail(ErrorKind::syntax_error, where(line_, col_) + ": unexpected character '" +
                                          std::string(1, c) + "'");
      }
      out.push_back(tok);
    }
  }

  static std::string where(int line, int col) {
    return std::to_string(line) + ":" + std::to_string(col);
  }

 private:
  char take() {
    char c = s_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      take();
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const ParseOptions& opt) : toks_(std::move(toks)), opt_(opt) {}

  Expr expression() {
    Expr e = term();
    while (is_op("+") || is_op("-")) {
      bool plus = next().text == "+";
      Expr r = term();
      e = plus ? e + r : e - r;
    }
    return e;
  }

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Tok::end; }
  bool is_op(const char* s) const { return peek().kind == Tok::op && peek().text == s; }
  bool is_newline_gap() const {
    return pos_ > 0 && peek().line != toks_[pos_ - 1].line;
  }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void error(const Token& t, const std::string& msg) const {
    fail(ErrorKind::syntax_error, Lexer::where(t.line, t.col) + ": " + msg);
  }

  void expect(const char* s) {
    if (!is_op(s)) error(peek(), std::string("expected '") + s + "'" + found());
    ++pos_;
  }

  std::string found() const {
    if (peek().kind == Tok::end) return " but reached end of input";
    return " but found '" + peek().text + "'";
  }

  std::string identifier() {
    if (peek().kind != Tok::ident) error(peek(), "expected identifier" + found());
    return next().text;
  }

 private:
  Expr term() {
    Expr e = unary();
    while (is_op("*") || is_op("/")) {
      bool mul = next().text == "*";
      const Token& at = peek();
      Expr r = unary();
      if (mul) {
        e = e * r;
      } else {
        if (r.is_zero()) fail(ErrorKind::division_by_zero, Lexer::where(at.line, at.col) + ": division by zero");
        e = e / r;
      }
    }
    return e;
  }

  Expr unary() {
    if (is_op("-")) {
      ++pos_;
      return -unary();
    }
    if (is_op("+")) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (!is_op("^")) return base;
    const Token& at = next();
    Exp e = exponent();
    try {
      return base.pow(e);
    } catch (const Error& err) {
      fail(err.kind(), Lexer::where(at.line, at.col) + ": " + err.what());
    }
  }

  Exp exponent() {
    bool paren = false;
    if (is_op("(")) {
      paren = true;
      ++pos_;
    }
    bool negative = false;
    if (is_op("-")) {
      negative = true;
      ++pos_;
    }
    if (peek().kind != Tok::number) error(peek(), "expected integer or rational exponent" + found());
    std::int64_t n = parse_small(next());
    std::int64_t d = 1;
    if (paren && is_op("/")) {
      ++pos_;
      if (peek().kind != Tok::number) error(peek(), "expected exponent denominator" + found());
      const Token& dt = next();
      d = parse_small(dt);
      if (d == 0) error(dt, "zero exponent denominator");
    }
    if (paren) expect(")");
    return Exp(negative ? -n : n, d);
  }

  std::int64_t parse_small(const Token& t) {
    if (t.text.size() > 9) error(t, "exponent too large");
    return std::stoll(t.text);
  }

  Expr atom() {
    const Token& t = peek();
    if (t.kind == Tok::number) {
      ++pos_;
      return Expr(parse_rational(t.text));
    }
    if (is_op("(")) {
      ++pos_;
      Expr e = expression();
      expect(")");
      return e;
    }
    if (t.kind == Tok::ident) {
      ++pos_;
      return identifier_atom(t);
    }
    error(t, "expected expression" + found());
  }

  Expr identifier_atom(const Token& t) {
    const std::string& s = t.text;
    if (s == "t") return Expr::t();
    if (s == "x") return Expr::x();
    if (s == "y") return Expr::y();
    if (s == "exp") return exp_atom(t);
    if (!s.empty() && (s[0] == 'u' || s[0] == 'v' || s[0] == 'w') &&
        (s.size() == 1 || s[1] == '_')) {
      return jet_atom(t);
    }
    std::size_t primes = 0;
    std::string name = s;
    while (!name.empty() && name.back() == '\'') {
      name.pop_back();
      ++primes;
    }
    if (is_op("(")) {
      if (!Symbol::valid_formal_name(name) || name.find('\'') != std::string::npos)
        fail(ErrorKind::unknown_identifier,
             Lexer::where(t.line, t.col) + ": invalid function name '" + name + "'");
      ++pos_;
      if (!(peek().kind == Tok::ident && peek().text == "t"))
        error(peek(), "formal functions take the single argument t" + found());
      ++pos_;
      expect(")");
      if (primes > std::size_t(Symbol::kMaxFormalOrder)) error(t, "derivative order too high");
      return Expr::formal(name, int(primes));
    }
    fail(ErrorKind::unknown_identifier, Lexer::where(t.line, t.col) + ": unknown identifier '" + s + "'");
  }

  Expr exp_atom(const Token& t) {
    expect("(");
    Expr arg = expression();
    expect(")");
    if (arg.is_zero()) return Expr(1L);
    if (arg.is_polynomial() && arg.num().size() == 1) {
      const Term& term = arg.num().leading();
      if (term.mono.size() == 1 && term.mono[0].sym.is_base() && term.mono[0].exp == Exp(1)) {
        const mpq_class& c = term.coef;
        if (c.get_num() > std::numeric_limits<std::int32_t>::max() ||
            c.get_num() < -std::numeric_limits<std::int32_t>::max() ||
            c.get_den() > std::numeric_limits<std::int32_t>::max())
          error(t, "exp coefficient too large");
        return Expr::exp_of(term.mono[0].sym.base_var(),
                            Exp(c.get_num().get_si(), c.get_den().get_si()));
      }
    }
    fail(ErrorKind::non_representable,
         Lexer::where(t.line, t.col) + ": exp() accepts only q*t, q*x or q*y with rational q");
  }

  Expr jet_atom(const Token& t) {
    const std::string& s = t.text;
    Dependent dep = s[0] == 'u' ? Dependent::u : (s[0] == 'v' ? Dependent::v : Dependent::w);
    if (!opt_.allow_jets || (dep == Dependent::w && !opt_.allow_w))
      fail(ErrorKind::unknown_identifier,
           Lexer::where(t.line, t.col) + ": '" + s + "' is not allowed here");
    int counts[3] = {0, 0, 0};
    std::size_t i = 2;
    if (s.size() == 2) error(t, "empty jet index in '" + s + "'");
    while (i < s.size()) {
      char c = s[i++];
      int which = c == 't' ? 0 : c == 'x' ? 1 : c == 'y' ? 2 : -1;
      if (which < 0)
        fail(ErrorKind::unknown_identifier, Lexer::where(t.line, t.col) + ": invalid jet '" + s + "'");
      int n = 0;
      bool digits = false;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        n = n * 10 + (s[i++] - '0');
        digits = true;
        if (n > Symbol::kMaxJetIndex) error(t, "jet index too large");
      }
      if (digits && n == 0) error(t, "zero repeat count in '" + s + "'");
      counts[which] += digits ? n : 1;
      if (counts[which] > Symbol::kMaxJetIndex) error(t, "jet index too large");
    }
    return Expr::jet(dep, counts[0], counts[1], counts[2]);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ParseOptions opt_;
};

}  // namespace

Expr parse_expr(const std::string& text, const ParseOptions& options) {
  Parser p(Lexer(text).run(), options);
  Expr e = p.expression();
  if (!p.at_end()) p.error(p.peek(), "unexpected '" + p.peek().text + "'");
  return e;
}

SolutionText parse_solution_text(const std::string& text) {
  ParseOptions opt;
  opt.allow_jets = false;
  Parser p(Lexer(text).run(), opt);
  std::optional<Expr> u, v;
  while (!p.at_end()) {
    if (p.is_op(";")) {
      p.next();
      continue;
    }
    const Token& name_tok = p.peek();
    std::string name = p.identifier();
    if (name != "u" && name != "v")
      fail(ErrorKind::unknown_identifier,
           Lexer::where(name_tok.line, name_tok.col) + ": expected 'u' or 'v', found '" + name + "'");
    p.expect("=");
    if (p.at_end() || p.is_op(";") || p.is_newline_gap()) p.error(p.peek(), "expected expression" + p.found());
    Expr e = p.expression();
    if ((name == "u" ? u : v).has_value())
      p.error(name_tok, "duplicate definition of " + name);
    (name == "u" ? u : v) = e;
    if (!p.at_end() && !p.is_op(";") && !p.is_newline_gap())
      p.error(p.peek(), "expected ';'" + p.found());
  }
  if (!u || !v) fail(ErrorKind::syntax_error, "a solution needs both 'u = ...' and 'v = ...'");
  return {*u, *v};
}

}  // namespace ewinv
