#include "ewinv/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ewinv/error.hpp"
#include "ewinv/geometry.hpp"
#include "ewinv/invariants.hpp"
#include "ewinv/linalg.hpp"

namespace ewinv {

namespace {

const JetVar kUx{Dependent::u, MultiIndex{0, 1, 0}};
const JetVar kUxx{Dependent::u, MultiIndex{0, 2, 0}};

// Jet values of a section at a point, computed on demand.
class SectionJet {
 public:
  SectionJet(const Solution& s, const BasePoint& p) : s_(s) {
    for (Base b : kBases) base_[Symbol::base(b)] = Number(p[std::size_t(b)]);
  }

  Number operator()(Symbol sym) {
    if (sym.is_base()) return base_.at(sym);
    if (sym.is_exp()) return base_.at(Symbol::base(sym.base_var())).exp();
    if (sym.is_formal()) fail(ErrorKind::unbound_symbol, "the section contains the formal function " + sym.to_string());
    if (!sym.is_jet()) fail(ErrorKind::unbound_symbol, "unbound symbol " + sym.to_string());
    auto it = jets_.find(sym);
    if (it != jets_.end()) return it->second;
    Number v = evaluate(section_jet(s_, sym.jet_var()), [this](Symbol b) { return (*this)(b); });
    jets_.emplace(sym, v);
    return v;
  }

  Number value(const Expr& e) {
    return evaluate(e, [this](Symbol sym) { return (*this)(sym); });
  }

 private:
  const Solution& s_;
  std::map<Symbol, Number> base_;
  std::map<Symbol, Number> jets_;
};

std::string precision_of(const std::vector<std::vector<Number>>& values) {
  for (const auto& row : values)
    for (const Number& n : row)
      if (!n.is_exact()) return "float:" + std::to_string(working_precision());
  return "exact";
}

double to_double(const Number& n) { return n.to_double(); }

bool formal_free(const Solution& s) {
  for (const Expr* e : {&s.u, &s.v})
    for (Symbol sym : e->symbols())
      if (sym.is_formal()) return false;
  return true;
}

}  // namespace

std::vector<std::string> signature_components(const Solution& s) {
  if (section_jet(s, kUx).is_zero())
    fail(ErrorKind::all_samples_singular,
         "u_x vanishes identically: the section lies in the singular locus (the u_x = 0 branch, where the "
         "second equation reduces to dKP)");
  std::vector<std::string> names = basic_invariant_names();
  if (section_jet(s, kUxx).is_zero()) names.resize(3);
  return names;
}

Number evaluate_on_section(const Expr& e, const Solution& s, const BasePoint& p) {
  SectionJet jet(s, p);
  return jet.value(e);
}

namespace {

// Values of the requested components at p, or nullopt on Sigma.
std::optional<std::vector<Number>> signature_values(const Solution& s, const BasePoint& p, std::size_t ncomp) {
  SectionJet jet(s, p);
  if (jet(Symbol::jet(kUx)).is_zero()) return std::nullopt;
  if (ncomp > 3 && jet(Symbol::jet(kUxx)).is_zero()) return std::nullopt;
  std::vector<Number> out;
  for (std::size_t i = 0; i < ncomp; ++i) out.push_back(jet.value(basic_invariants()[i]));
  return out;
}

SignatureCloud empty_cloud(const Solution& s, const std::vector<std::string>& comps) {
  SignatureCloud c;
  c.components = comps;
  c.provenance = s.provenance;
  if (comps.size() == 3)
    c.notes.push_back("u_xx vanishes identically: the derivations are undefined, cloud restricted to I1, I2, I3");
  return c;
}

void finish(SignatureCloud& c) {
  c.precision = precision_of(c.values);
  if (c.values.empty()) return;
  std::vector<bool> constant(c.components.size(), true);
  for (const auto& row : c.values)
    for (std::size_t i = 0; i < row.size(); ++i)
      if (!(row[i] - c.values.front()[i]).is_zero()) constant[i] = false;
  if (std::all_of(constant.begin(), constant.end(), [](bool b) { return b; })) {
    c.notes.push_back("all sampled invariants are constant: the section is not I-regular");
    return;
  }
  for (std::size_t i = 0; i < 3; ++i)
    if (constant[i]) {
      c.notes.push_back(c.components[i] + " is constant on the samples: the section is not I-regular");
      return;
    }
}

}  // namespace

SignatureCloud signature_at(const Solution& s, const std::vector<BasePoint>& pts) {
  if (!formal_free(s)) fail(ErrorKind::invalid_argument, "signatures need concrete values for formal functions");
  SignatureCloud c = empty_cloud(s, signature_components(s));
  for (const BasePoint& p : pts) {
    auto vals = signature_values(s, p, c.components.size());
    if (!vals) fail(ErrorKind::singular_locus, "sample point on the singular locus");
    c.points.push_back(p);
    c.values.push_back(std::move(*vals));
  }
  finish(c);
  return c;
}

SignatureCloud signature(const Solution& s, const SamplerConfig& cfg) {
  if (!formal_free(s)) fail(ErrorKind::invalid_argument, "signatures need concrete values for formal functions");
  SignatureCloud c = empty_cloud(s, signature_components(s));
  std::size_t budget = std::max<std::size_t>(cfg.n * cfg.attempts_per_point, 1);
  auto candidates = sample_points(s.domain, {}, budget, cfg.seed);
  std::size_t skipped = 0;
  for (const SamplePoint& sp : candidates) {
    if (c.points.size() == cfg.n) break;
    try {
      auto vals = signature_values(s, sp.base, c.components.size());
      if (!vals) {
        ++skipped;
        continue;
      }
      c.points.push_back(sp.base);
      c.values.push_back(std::move(*vals));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::pole && e.kind() != ErrorKind::zero_denominator) throw;
      ++skipped;
    }
  }
  if (c.points.empty())
    fail(ErrorKind::all_samples_singular, "every sample point lies on the singular locus or a pole");
  if (skipped) c.notes.push_back(std::to_string(skipped) + " candidate points skipped (singular locus or pole)");
  finish(c);
  return c;
}

namespace {

NumberMatrix signature_differential(const Solution& s, const BasePoint& p, std::size_t rows) {
  SectionJet jet(s, p);
  if (jet(Symbol::jet(kUx)).is_zero()) fail(ErrorKind::singular_locus, "u_x vanishes at the point");
  NumberMatrix m;
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<Number> row;
    for (Base b : kBases) row.push_back(jet.value(total_derivative(basic_invariants()[i], b, 5)));
    m.push_back(std::move(row));
  }
  return m;
}

}  // namespace

bool i_regular(const Solution& s, const BasePoint& p) {
  Number det = determinant(signature_differential(s, p, 3));
  if (det.is_exact()) return !det.is_zero();
  return abs(det.to_float()) > Float(1e-30);
}

int signature_rank(const Solution& s, const BasePoint& p) {
  std::size_t n = signature_components(s).size();
  return rank(signature_differential(s, p, n), 1e-25);
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::equivalent_evidence: return "equivalent-evidence";
    case Verdict::distinct: return "distinct";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "";
}

Comparison compare(const SignatureCloud& a, const SignatureCloud& b, double tol, std::size_t min_points) {
  if (a.values.empty() || b.values.empty()) fail(ErrorKind::invalid_argument, "empty signature cloud");
  if (a.precision != "exact" && b.precision != "exact" && a.precision != b.precision)
    fail(ErrorKind::precision_mismatch, "clouds have different precision: " + a.precision + " vs " + b.precision);
  Comparison r;
  std::size_t dim = std::min(a.components.size(), b.components.size());
  if (a.components.size() != b.components.size())
    r.notes.push_back("compared on the " + std::to_string(dim) + " common components");
  auto row = [&](const std::vector<Number>& v) {
    std::vector<double> d;
    for (std::size_t i = 0; i < dim; ++i) d.push_back(to_double(v[i]));
    return d;
  };
  std::vector<std::vector<double>> pa, pb;
  for (const auto& v : a.values) pa.push_back(row(v));
  for (const auto& v : b.values) pb.push_back(row(v));
  for (const auto* cloud : {&pa, &pb})
    for (const auto& v : *cloud)
      for (double x : v) r.scale = std::max(r.scale, std::abs(x));
  auto directed = [&](const std::vector<std::vector<double>>& from, const std::vector<std::vector<double>>& to) {
    double worst = 0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) {
        double d = 0;
        for (std::size_t i = 0; i < dim; ++i) d = std::max(d, std::abs(p[i] - q[i]));
        best = std::min(best, d);
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  r.distance = std::max(directed(pa, pb), directed(pb, pa));
  double threshold = tol * (1 + r.scale);
  if (r.distance > threshold) {
    r.verdict = Verdict::distinct;
  } else if (pa.size() < min_points || pb.size() < min_points) {
    r.verdict = Verdict::inconclusive;
    r.notes.push_back("fewer than " + std::to_string(min_points) + " points in a cloud");
  } else {
    r.verdict = Verdict::equivalent_evidence;
  }
  for (const auto* c : {&a, &b})
    for (const auto& n : c->notes)
      if (n.find("not I-regular") != std::string::npos) {
        r.notes.push_back("a section is not I-regular: equal signatures do not imply equivalence");
        return r;
      }
  return r;
}

nlohmann::json to_json(const SignatureCloud& c) {
  nlohmann::json j;
  j["points"] = nlohmann::json::array();
  for (const auto& p : c.points)
    j["points"].push_back({rational_to_string(p[0]), rational_to_string(p[1]), rational_to_string(p[2])});
  j["values"] = nlohmann::json::array();
  for (const auto& row : c.values) {
    nlohmann::json r = nlohmann::json::array();
    for (const Number& n : row) r.push_back(n.to_string());
    j["values"].push_back(std::move(r));
  }
  j["components"] = c.components;
  j["precision"] = c.precision;
  j["solution_provenance"] = c.provenance;
  j["notes"] = c.notes;
  return j;
}

SignatureCloud cloud_from_json(const nlohmann::json& j) {
  try {
    SignatureCloud c;
    for (const auto& p : j.at("points")) {
      BasePoint b;
      for (std::size_t i = 0; i < 3; ++i) b[i] = parse_rational(p.at(i).get<std::string>());
      c.points.push_back(b);
    }
    for (const auto& row : j.at("values")) {
      std::vector<Number> r;
      for (const auto& x : row) r.push_back(Number::parse(x.get<std::string>()));
      c.values.push_back(std::move(r));
    }
    c.components = j.at("components").get<std::vector<std::string>>();
    c.precision = j.at("precision").get<std::string>();
    c.provenance = j.value("solution_provenance", "");
    c.notes = j.value("notes", std::vector<std::string>{});
    if (c.points.size() != c.values.size()) fail(ErrorKind::invalid_argument, "points and values differ in length");
    for (const auto& row : c.values)
      if (row.size() != c.components.size()) fail(ErrorKind::invalid_argument, "value row has the wrong length");
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::syntax_error, std::string("malformed signature file: ") + e.what());
  }
}

Solution taylor_section(const JetPoint& p, int k) {
  Solution s;
  Expr dt = Expr::t() - Expr(p.base[0]), dx = Expr::x() - Expr(p.base[1]), dy = Expr::y() - Expr(p.base[2]);
  for (int a = 0; a <= k; ++a)
    for (int b = 0; a + b <= k; ++b)
      for (int c = 0; a + b + c <= k; ++c) {
        mpz_class fact = 1;
        for (int i = 2; i <= a; ++i) fact *= i;
        for (int i = 2; i <= b; ++i) fact *= i;
        for (int i = 2; i <= c; ++i) fact *= i;
        Expr mono = dt.pow(Exp(a)) * dx.pow(Exp(b)) * dy.pow(Exp(c)) / Expr(mpq_class(fact));
        for (Dependent d : {Dependent::u, Dependent::v}) {
          Number val = p.value(Symbol::jet(d, a, b, c));
          if (!val.is_exact()) fail(ErrorKind::invalid_argument, "jet point must be rational");
          (d == Dependent::u ? s.u : s.v) += Expr(val.rational()) * mono;
        }
      }
  s.provenance = "taylor polynomial of an on-equation jet";
  return s;
}

Number invariance_defect(const Solution& s, const PseudogroupElement& g, const std::vector<BasePoint>& pts) {
  Solution img = apply_pseudogroup(g, s);
  std::size_t n = signature_components(s).size();
  Number worst(0L);
  for (const BasePoint& p : pts) {
    auto q = pseudogroup_point(g, p);
    BasePoint qb;
    for (std::size_t i = 0; i < 3; ++i) {
      if (!q[i].is_exact()) fail(ErrorKind::invalid_argument, "image point is not rational");
      qb[i] = q[i].rational();
    }
    SectionJet a(s, p), b(img, qb);
    for (std::size_t i = 0; i < n; ++i) {
      Number d = (a.value(basic_invariants()[i]) - b.value(basic_invariants()[i])).abs();
      if (abs(d.to_float()) > abs(worst.to_float()) || (worst.is_zero() && !d.is_zero())) worst = d;
    }
  }
  return worst;
}

}  // namespace ewinv
