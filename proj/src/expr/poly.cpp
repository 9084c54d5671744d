#include "ewinv/poly.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <boost/container_hash/hash.hpp>

#include "ewinv/error.hpp"

namespace ewinv {

int monomial_cmp(const Monomial& a, const Monomial& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].sym == b[j].sym) {
      if (a[i].exp != b[j].exp) return a[i].exp < b[j].exp ? -1 : 1;
      ++i;
      ++j;
    } else if (a[i].sym < b[j].sym) {
      return a[i].exp.sign();
    } else {
      return -b[j].exp.sign();
    }
  }
  if (i < a.size()) return a[i].exp.sign();
  if (j < b.size()) return -b[j].exp.sign();
  return 0;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].sym == b[j].sym) {
      Exp e = a[i].exp + b[j].exp;
      if (!e.is_zero()) r.push_back(Factor{a[i].sym, e});
      ++i;
      ++j;
    } else if (a[i].sym < b[j].sym) {
      r.push_back(a[i++]);
    } else {
      r.push_back(b[j++]);
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  for (; j < b.size(); ++j) r.push_back(b[j]);
  return r;
}

Monomial monomial_inv(const Monomial& a) {
  Monomial r = a;
  for (Factor& f : r) f.exp = -f.exp;
  return r;
}

Monomial monomial_pow(const Monomial& a, Exp e) {
  if (e.is_zero()) return {};
  Monomial r = a;
  for (Factor& f : r) f.exp = f.exp * e;
  return r;
}

Exp exponent_of(const Monomial& m, Symbol s) {
  for (const Factor& f : m)
    if (f.sym == s) return f.exp;
  return Exp(0);
}

Monomial with_exponent(const Monomial& m, Symbol s, Exp e) {
  Monomial r;
  bool placed = false;
  for (const Factor& f : m) {
    if (!placed && s < f.sym) {
      if (!e.is_zero()) r.push_back(Factor{s, e});
      placed = true;
    }
    if (f.sym == s) {
      if (!e.is_zero()) r.push_back(Factor{s, e});
      placed = true;
      continue;
    }
    r.push_back(f);
  }
  if (!placed && !e.is_zero()) r.push_back(Factor{s, e});
  return r;
}

std::size_t monomial_hash(const Monomial& m) {
  std::size_t h = 0;
  for (const Factor& f : m) {
    boost::hash_combine(h, f.sym.id());
    boost::hash_combine(h, f.exp.num());
    boost::hash_combine(h, f.exp.den());
  }
  return h;
}

Poly::Poly(const mpq_class& c) {
  if (c != 0) {
    terms_.push_back(Term{{}, c});
    terms_.back().coef.canonicalize();
  }
}

Poly::Poly(Symbol s, Exp e) {
  Monomial m;
  if (!e.is_zero()) m.push_back(Factor{s, e});
  terms_.push_back(Term{m, 1});
}

Poly Poly::monomial(const Monomial& m, const mpq_class& c) {
  Poly p;
  if (c != 0) {
    p.terms_.push_back(Term{m, c});
    p.terms_.back().coef.canonicalize();
  }
  return p;
}

Poly Poly::from_sorted(std::vector<Term> terms) {
  Poly p;
  p.terms_ = std::move(terms);
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return monomial_cmp(a.mono, b.mono) > 0;
  });
  Poly p;
  for (Term& t : terms) {
    if (!p.terms_.empty() && monomial_cmp(p.terms_.back().mono, t.mono) == 0) {
      p.terms_.back().coef += t.coef;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty());
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.empty() && terms_[0].coef == 1;
}

mpq_class Poly::constant_value() const {
  if (terms_.empty()) return 0;
  return terms_[0].coef;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (Term& t : r.terms_) t.coef = -t.coef;
  return r;
}

namespace {

Poly merge(const Poly& a, const Poly& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::size_t i = 0, j = 0;
  while (i < ta.size() && j < tb.size()) {
    int c = monomial_cmp(ta[i].mono, tb[j].mono);
    if (c > 0) {
      out.push_back(ta[i++]);
    } else if (c < 0) {
      out.push_back(tb[j++]);
      if (subtract) out.back().coef = -out.back().coef;
    } else {
      mpq_class s = subtract ? mpq_class(ta[i].coef - tb[j].coef)
                             : mpq_class(ta[i].coef + tb[j].coef);
      if (s != 0) out.push_back(Term{ta[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < ta.size(); ++i) out.push_back(ta[i]);
  for (; j < tb.size(); ++j) {
    out.push_back(tb[j]);
    if (subtract) out.back().coef = -out.back().coef;
  }
  return Poly::from_sorted(std::move(out));
}

}  // namespace

Poly operator+(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return merge(a, b, false);
}

Poly operator-(const Poly& a, const Poly& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  return merge(a, b, true);
}

Poly Poly::scaled(const mpq_class& c) const {
  if (c == 0) return Poly();
  Poly r = *this;
  for (Term& t : r.terms_) t.coef *= c;
  return r;
}

Poly Poly::times(const Monomial& m, const mpq_class& c) const {
  if (c == 0) return Poly();
  Poly r;
  r.terms_.reserve(terms_.size());
  for (const Term& t : terms_) r.terms_.push_back(Term{monomial_mul(t.mono, m), t.coef * c});
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.size() == 1) return b.times(a.terms_[0].mono, a.terms_[0].coef);
  if (b.size() == 1) return a.times(b.terms_[0].mono, b.terms_[0].coef);
  std::vector<Term> out;
  out.reserve(a.size() * b.size());
  for (const Term& x : a.terms_)
    for (const Term& y : b.terms_) out.push_back(Term{monomial_mul(x.mono, y.mono), x.coef * y.coef});
  return Poly::from_terms(std::move(out));
}

Poly Poly::pow(unsigned n) const {
  Poly result(mpq_class(1));
  Poly base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].coef != b.terms_[i].coef) return false;
    if (!(a.terms_[i].mono == b.terms_[i].mono)) return false;
  }
  return true;
}

Monomial Poly::min_monomial() const {
  std::map<Symbol, Exp> mins;
  std::map<Symbol, std::size_t> seen;
  for (const Term& t : terms_) {
    for (const Factor& f : t.mono) {
      auto it = mins.find(f.sym);
      if (it == mins.end()) {
        mins.emplace(f.sym, f.exp);
      } else if (f.exp < it->second) {
        it->second = f.exp;
      }
      ++seen[f.sym];
    }
  }
  Monomial m;
  for (auto& [s, e] : mins) {
    Exp v = e;
    if (seen[s] < terms_.size() && Exp(0) < v) v = Exp(0);
    if (!v.is_zero()) m.push_back(Factor{s, v});
  }
  return m;
}

std::vector<Symbol> Poly::symbols() const {
  std::set<Symbol> s;
  for (const Term& t : terms_)
    for (const Factor& f : t.mono) s.insert(f.sym);
  return {s.begin(), s.end()};
}

bool Poly::contains(Symbol s) const {
  for (const Term& t : terms_)
    for (const Factor& f : t.mono)
      if (f.sym == s) return true;
  return false;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : terms_) {
    mpq_class c = t.coef;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string body;
    // exp atoms are printed as exp(q*b) and carry the exponent inside.
    for (const Factor& f : t.mono) {
      if (!body.empty()) body += "*";
      if (f.sym.is_exp()) {
        std::string b(1, base_letter(f.sym.base_var()));
        if (f.exp == Exp(1)) {
          body += "exp(" + b + ")";
        } else if (f.exp == Exp(-1)) {
          body += "exp(-" + b + ")";
        } else {
          body += "exp(" + f.exp.to_string() + "*" + b + ")";
        }
        continue;
      }
      body += f.sym.to_string();
      if (f.exp == Exp(1)) continue;
      if (f.exp.is_integer() && f.exp.sign() > 0) {
        body += "^" + f.exp.to_string();
      } else {
        body += "^(" + f.exp.to_string() + ")";
      }
    }
    if (body.empty()) {
      out += rational_to_string(c);
    } else if (c == 1) {
      out += body;
    } else {
      out += rational_to_string(c) + "*" + body;
    }
  }
  return out;
}

// --- division and gcd ------------------------------------------------------

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorKind::division_by_zero, "polynomial division by zero");
  if (b.size() == 1) {
    const Term& lb = b.leading();
    Poly q = a.times(monomial_inv(lb.mono), 1 / lb.coef);
    for (const Term& t : q.terms())
      for (const Factor& f : t.mono)
        if (f.exp.sign() < 0) return std::nullopt;
    return q;
  }
  const Term& lb = b.leading();
  Monomial inv_lb = monomial_inv(lb.mono);
  std::vector<Term> quotient;
  Poly r = a;
  while (!r.is_zero()) {
    const Term& lr = r.leading();
    Monomial qm = monomial_mul(lr.mono, inv_lb);
    for (const Factor& f : qm)
      if (f.exp.sign() < 0) return std::nullopt;
    mpq_class qc = lr.coef / lb.coef;
    r = r - b.times(qm, qc);
    quotient.push_back(Term{std::move(qm), qc});
  }
  return Poly::from_terms(std::move(quotient));
}

int integer_degree(const Poly& p, Symbol s) {
  int d = 0;
  for (const Term& t : p.terms()) {
    Exp e = exponent_of(t.mono, s);
    if (!e.is_integer()) fail(ErrorKind::invalid_argument, "non-integer degree");
    d = std::max(d, int(e.num()));
  }
  return d;
}

Poly coefficient_of(const Poly& p, Symbol s, Exp d) {
  std::vector<Term> out;
  for (const Term& t : p.terms()) {
    if (exponent_of(t.mono, s) == d) out.push_back(Term{with_exponent(t.mono, s, Exp(0)), t.coef});
  }
  return Poly::from_terms(std::move(out));
}

namespace {

Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.leading().coef);
}

Poly monomial_gcd(const Monomial& a, const Monomial& b) {
  Monomial g;
  for (const Factor& f : a) {
    Exp e = exponent_of(b, f.sym);
    Exp m = f.exp < e ? f.exp : e;
    if (m.sign() > 0) g.push_back(Factor{f.sym, m});
  }
  return Poly::monomial(g, 1);
}

Poly exact(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) fail(ErrorKind::invalid_argument, "internal: inexact polynomial division");
  return *q;
}

Poly content_in(const Poly& p, Symbol x) {
  std::map<int, std::vector<Term>> by_degree;
  for (const Term& t : p.terms()) {
    by_degree[exponent_of(t.mono, x).num()].push_back(Term{with_exponent(t.mono, x, Exp(0)), t.coef});
  }
  Poly g;
  for (auto& [d, terms] : by_degree) {
    g = poly_gcd(g, Poly::from_terms(std::move(terms)));
    if (g.is_one()) break;
  }
  return g;
}

Poly pseudo_remainder(const Poly& a, const Poly& b, Symbol x) {
  int db = integer_degree(b, x);
  Poly lcb = coefficient_of(b, x, Exp(db));
  Poly r = a;
  while (!r.is_zero()) {
    int dr = integer_degree(r, x);
    if (dr < db) break;
    Poly lcr = coefficient_of(r, x, Exp(dr));
    Monomial shift;
    if (dr > db) shift.push_back(Factor{x, Exp(dr - db)});
    r = lcb * r - (lcr * b).times(shift, 1);
  }
  return r;
}

}  // namespace

Poly poly_gcd(const Poly& a_in, const Poly& b_in) {
  if (a_in.is_zero()) return monic(b_in);
  if (b_in.is_zero()) return monic(a_in);
  if (a_in.is_constant() || b_in.is_constant()) return Poly(mpq_class(1));

  Monomial ma = a_in.min_monomial();
  Monomial mb = b_in.min_monomial();
  Poly mg = monomial_gcd(ma, mb);
  Poly a = a_in.times(monomial_inv(ma), 1);
  Poly b = b_in.times(monomial_inv(mb), 1);

  // Variables present in only one argument can only enter through content:
  // gcd(a, b) = gcd(b, coefficients of a in those variables), which stops
  // early once it reaches 1.
  auto fold_extra = [](Poly& a, Poly& b) {
    std::vector<Symbol> extra;
    for (Symbol s : a.symbols())
      if (!b.contains(s)) extra.push_back(s);
    if (extra.empty()) return false;
    std::map<Monomial, std::vector<Term>, bool (*)(const Monomial&, const Monomial&)> groups(
        [](const Monomial& l, const Monomial& r) { return monomial_cmp(l, r) < 0; });
    for (const Term& t : a.terms()) {
      Monomial key, rest = t.mono;
      for (Symbol s : extra) {
        Exp e = exponent_of(t.mono, s);
        if (!e.is_zero()) key.push_back(Factor{s, e});
        rest = with_exponent(rest, s, Exp(0));
      }
      groups[key].push_back(Term{rest, t.coef});
    }
    Poly g = b;
    for (auto& [k, terms] : groups) {
      g = poly_gcd(g, Poly::from_terms(std::move(terms)));
      if (g.is_constant()) break;
    }
    a = g;
    b = g;
    return true;
  };
  if (fold_extra(a, b) || fold_extra(b, a)) return monic(mg * (a.is_constant() ? Poly(mpq_class(1)) : a));
  if (a.is_constant() || b.is_constant()) return mg;

  Symbol x = a.symbols().front();
  Poly ca = content_in(a, x);
  Poly cb = content_in(b, x);
  Poly cg = poly_gcd(ca, cb);
  Poly pa = exact(a, ca);
  Poly pb = exact(b, cb);
  if (integer_degree(pa, x) < integer_degree(pb, x)) std::swap(pa, pb);
  while (true) {
    Poly r = pseudo_remainder(pa, pb, x);
    if (r.is_zero()) break;
    if (integer_degree(r, x) == 0) {
      pb = Poly(mpq_class(1));
      break;
    }
    pa = std::move(pb);
    pb = monic(exact(r, content_in(r, x)));
  }
  return monic(mg * cg * pb);
}

}  // namespace ewinv
