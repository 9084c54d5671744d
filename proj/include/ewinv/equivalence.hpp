#pragma once

#include <array>
#include <string>
#include <vector>

#include "json.hpp"

#include "ewinv/solution.hpp"
#include "ewinv/symmetry.hpp"

namespace ewinv {

using BasePoint = std::array<mpq_class, 3>;

struct SamplerConfig {
  std::size_t n = 64;
  std::uint64_t seed = 0;
  /// Candidate points tried per requested point before giving up.
  std::size_t attempts_per_point = 8;
};

/// Sampled values of the basic invariants along a section.
struct SignatureCloud {
  std::vector<BasePoint> points;
  std::vector<std::vector<Number>> values;
  std::vector<std::string> components;
  std::string precision;  // "exact" or "float:<decimal digits>"
  std::string provenance;
  std::vector<std::string> notes;
};

/// Invariant components available on the section: all twelve, or I1..I3
/// when u_xx vanishes identically. Throws all_samples_singular when u_x does.
std::vector<std::string> signature_components(const Solution& s);

/// Value of a jet expression on the section's jet at a point.
Number evaluate_on_section(const Expr& e, const Solution& s, const BasePoint& p);

/// Signature at the given points; throws singular_locus for points on Sigma.
SignatureCloud signature_at(const Solution& s, const std::vector<BasePoint>& pts);

/// Signature at Halton points of the domain, skipping Sigma and poles.
SignatureCloud signature(const Solution& s, const SamplerConfig& cfg = {});

/// det(D_j I_i) on the section is nonzero. Throws singular_locus when u_x = 0.
bool i_regular(const Solution& s, const BasePoint& p);

/// Rank of the differential of the signature map at p.
int signature_rank(const Solution& s, const BasePoint& p);

enum class Verdict { equivalent_evidence, distinct, inconclusive };
std::string verdict_name(Verdict v);

struct Comparison {
  Verdict verdict = Verdict::inconclusive;
  double distance = 0;  // symmetric Hausdorff distance, max norm
  double scale = 0;
  std::vector<std::string> notes;
};

Comparison compare(const SignatureCloud& a, const SignatureCloud& b, double tol, std::size_t min_points = 8);

nlohmann::json to_json(const SignatureCloud& c);
SignatureCloud cloud_from_json(const nlohmann::json& j);

/// Polynomial section whose k-jet at p.base is the on-equation jet p.
Solution taylor_section(const JetPoint& p, int k);

/// Largest |z_i(p) - z_i'(g(p))| over the points, where z' is the
/// signature of the transformed section.
Number invariance_defect(const Solution& s, const PseudogroupElement& g, const std::vector<BasePoint>& pts);

}  // namespace ewinv
