#include "ewinv/symbol.hpp"

#include "ewinv/error.hpp"

namespace ewinv {

namespace {

constexpr std::uint32_t kind_bits(Symbol::Kind k) {
  return static_cast<std::uint32_t>(k) << 29;
}

int char_code(char c) {
  if (c >= 'a' && c <= 'z') return 1 + (c - 'a');
  if (c >= '0' && c <= '9') return 27 + (c - '0');
  return -1;
}

char code_char(int code) {
  if (code >= 1 && code <= 26) return char('a' + code - 1);
  return char('0' + code - 27);
}

}  // namespace

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::division_by_zero: return "division-by-zero-expression";
    case ErrorKind::zero_denominator: return "substitution-creates-zero-denominator";
    case ErrorKind::unbound_symbol: return "unbound-symbol";
    case ErrorKind::pole: return "pole-at-point";
    case ErrorKind::negative_base_power: return "negative-base-fractional-power";
    case ErrorKind::non_representable: return "non-representable";
    case ErrorKind::order_cap_exceeded: return "order-cap-exceeded";
    case ErrorKind::non_invertible_element: return "non-invertible-element-on-domain";
    case ErrorKind::domain_violation: return "domain-violation";
    case ErrorKind::degenerate_metric: return "degenerate-metric";
    case ErrorKind::singular_locus: return "singular-locus-point";
    case ErrorKind::all_samples_singular: return "all-samples-singular";
    case ErrorKind::precision_mismatch: return "precision-mismatch";
    case ErrorKind::inconsistent_lift: return "inconsistent-lift";
    case ErrorKind::syntax_error: return "syntax-error";
    case ErrorKind::unknown_identifier: return "unknown-identifier";
    case ErrorKind::unknown_id: return "unknown-id";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::io_error: return "io-error";
  }
  return "error";
}

char base_letter(Base b) {
  switch (b) {
    case Base::t: return 't';
    case Base::x: return 'x';
    case Base::y: return 'y';
  }
  return '?';
}

char dependent_letter(Dependent d) {
  switch (d) {
    case Dependent::u: return 'u';
    case Dependent::v: return 'v';
    case Dependent::w: return 'w';
  }
  return '?';
}

int MultiIndex::count(Base b) const {
  switch (b) {
    case Base::t: return t;
    case Base::x: return x;
    case Base::y: return y;
  }
  return 0;
}

MultiIndex MultiIndex::plus(Base b, int n) const {
  MultiIndex r = *this;
  auto bump = [n](std::uint8_t& c) {
    if (int(c) + n > Symbol::kMaxJetIndex || int(c) + n < 0)
      fail(ErrorKind::invalid_argument, "jet multi-index out of range");
    c = std::uint8_t(int(c) + n);
  };
  switch (b) {
    case Base::t: bump(r.t); break;
    case Base::x: bump(r.x); break;
    case Base::y: bump(r.y); break;
  }
  return r;
}

MultiIndex MultiIndex::minus(Base b) const { return plus(b, -1); }

Symbol Symbol::base(Base b) {
  return Symbol(kind_bits(Kind::base) | static_cast<std::uint32_t>(b));
}

Symbol Symbol::exp_of(Base b) {
  return Symbol(kind_bits(Kind::exp_atom) | static_cast<std::uint32_t>(b));
}

Symbol Symbol::jet(JetVar j) {
  return Symbol(kind_bits(Kind::jet) |
                (static_cast<std::uint32_t>(j.dep) << 24) |
                (std::uint32_t(j.index.t) << 16) |
                (std::uint32_t(j.index.x) << 8) | std::uint32_t(j.index.y));
}

Symbol Symbol::jet(Dependent d, int t, int x, int y) {
  if (t < 0 || x < 0 || y < 0 || t > kMaxJetIndex || x > kMaxJetIndex ||
      y > kMaxJetIndex)
    fail(ErrorKind::invalid_argument, "jet multi-index out of range");
  return jet(JetVar{d, MultiIndex{std::uint8_t(t), std::uint8_t(x),
                                  std::uint8_t(y)}});
}

bool Symbol::valid_formal_name(std::string_view name) {
  if (name.empty() || name.size() > std::size_t(kMaxFormalNameLength))
    return false;
  if (!(name[0] >= 'a' && name[0] <= 'z')) return false;
  for (char c : name)
    if (char_code(c) < 0) return false;
  return true;
}

Symbol Symbol::formal(std::string_view name, int derivative_order) {
  if (!valid_formal_name(name))
    fail(ErrorKind::invalid_argument,
         "formal function name must be 1-4 characters [a-z0-9]: '" +
             std::string(name) + "'");
  if (derivative_order < 0 || derivative_order > kMaxFormalOrder)
    fail(ErrorKind::invalid_argument, "formal derivative order out of range");
  std::uint32_t code = 0;
  for (int i = 0; i < kMaxFormalNameLength; ++i) {
    code <<= 6;
    if (std::size_t(i) < name.size()) code |= std::uint32_t(char_code(name[i]));
  }
  return Symbol(kind_bits(Kind::formal) | (code << 5) |
                std::uint32_t(derivative_order));
}

JetVar Symbol::jet_var() const {
  JetVar j;
  j.dep = static_cast<Dependent>((id_ >> 24) & 0x3);
  j.index.t = std::uint8_t((id_ >> 16) & 0xff);
  j.index.x = std::uint8_t((id_ >> 8) & 0xff);
  j.index.y = std::uint8_t(id_ & 0xff);
  return j;
}

std::string Symbol::formal_name() const {
  std::uint32_t code = (id_ >> 5) & 0xffffff;
  std::string name;
  for (int i = kMaxFormalNameLength - 1; i >= 0; --i) {
    int c = int((code >> (6 * i)) & 0x3f);
    if (c != 0) name.push_back(code_char(c));
  }
  return name;
}

Symbol Symbol::formal_derivative() const {
  if (formal_order() >= kMaxFormalOrder)
    fail(ErrorKind::invalid_argument, "formal derivative order out of range");
  return Symbol(id_ + 1);
}

std::string jet_name(const JetVar& j) {
  std::string s(1, dependent_letter(j.dep));
  if (j.order() == 0) return s;
  s.push_back('_');
  for (Base b : kBases) {
    int n = j.index.count(b);
    if (n == 0) continue;
    if (n <= 3) {
      s.append(std::size_t(n), base_letter(b));
    } else {
      s.push_back(base_letter(b));
      s += std::to_string(n);
    }
  }
  return s;
}

std::string Symbol::to_string() const {
  switch (kind()) {
    case Kind::base: return std::string(1, base_letter(base_var()));
    case Kind::exp_atom:
      return "exp(" + std::string(1, base_letter(base_var())) + ")";
    case Kind::jet: return jet_name(jet_var());
    case Kind::formal:
      return formal_name() + std::string(std::size_t(formal_order()), '\'') + "(t)";
  }
  return "?";
}

}  // namespace ewinv
