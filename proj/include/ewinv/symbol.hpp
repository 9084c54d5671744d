#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace ewinv {

/// Base coordinates of M = R^3(t,x,y).
enum class Base : std::uint8_t { t = 0, x = 1, y = 2 };

inline constexpr std::array<Base, 3> kBases = {Base::t, Base::x, Base::y};

char base_letter(Base b);

/// Dependent variables. `w` is the universal-hierarchy potential and takes
/// no part in the equation system.
enum class Dependent : std::uint8_t { u = 0, v = 1, w = 2 };

char dependent_letter(Dependent d);

/// Symmetric derivative multi-index: counts of t, x and y derivatives.
struct MultiIndex {
  std::uint8_t t = 0;
  std::uint8_t x = 0;
  std::uint8_t y = 0;

  int order() const { return int(t) + int(x) + int(y); }
  int count(Base b) const;
  MultiIndex plus(Base b, int n = 1) const;
  /// Removes one derivative in direction b; precondition count(b) > 0.
  MultiIndex minus(Base b) const;

  auto operator<=>(const MultiIndex&) const = default;
};

/// Jet coordinate u_sigma, v_sigma or w_sigma.
struct JetVar {
  Dependent dep = Dependent::u;
  MultiIndex index;

  int order() const { return index.order(); }
  JetVar plus(Base b, int n = 1) const { return {dep, index.plus(b, n)}; }

  /// u_{sigma} with sigma having at least one t and at least one x.
  bool is_principal() const {
    return dep != Dependent::w && index.t > 0 && index.x > 0;
  }

  auto operator<=>(const JetVar&) const = default;
};

/// Packed 32-bit symbol identifier. The packing is deterministic, so the
/// induced monomial order (and hence canonical text) is stable across runs.
///
///   bits 29..31  kind
///   base/exp     payload = base index
///   jet          dep << 24 | t << 16 | x << 8 | y
///   formal       name code (4 x 6 bits) << 5 | derivative order (5 bits)
class Symbol {
 public:
  enum class Kind : std::uint8_t { base = 0, exp_atom = 1, jet = 2, formal = 3 };

  static constexpr int kMaxFormalNameLength = 4;
  static constexpr int kMaxFormalOrder = 31;
  static constexpr int kMaxJetIndex = 255;

  constexpr Symbol() = default;

  static Symbol base(Base b);
  /// The atom e^{b}; a monomial power q of it represents e^{q b}.
  static Symbol exp_of(Base b);
  static Symbol jet(JetVar j);
  static Symbol jet(Dependent d, int t, int x, int y);
  /// Formal function of t, e.g. formal("f", 2) is f''(t). Names are 1..4
  /// characters from [a-z0-9], starting with a letter.
  static Symbol formal(std::string_view name, int derivative_order = 0);
  static bool valid_formal_name(std::string_view name);

  Kind kind() const { return static_cast<Kind>(id_ >> 29); }
  bool is_base() const { return kind() == Kind::base; }
  bool is_exp() const { return kind() == Kind::exp_atom; }
  bool is_jet() const { return kind() == Kind::jet; }
  bool is_formal() const { return kind() == Kind::formal; }

  /// For base and exp symbols.
  Base base_var() const { return static_cast<Base>(id_ & 0x3); }
  JetVar jet_var() const;
  std::string formal_name() const;
  int formal_order() const { return int(id_ & 0x1f); }
  /// Same formal function, derivative order shifted by one.
  Symbol formal_derivative() const;

  std::uint32_t id() const { return id_; }

  /// Canonical text: t, exp(y), u_txx, f''(t).
  std::string to_string() const;

  auto operator<=>(const Symbol&) const = default;

 private:
  explicit constexpr Symbol(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

std::string jet_name(const JetVar& j);

}  // namespace ewinv

template <>
struct std::hash<ewinv::Symbol> {
  std::size_t operator()(const ewinv::Symbol& s) const noexcept {
    return std::hash<std::uint32_t>{}(s.id());
  }
};
