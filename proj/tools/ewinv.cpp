// ewinv: command-line front end.
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ewinv/checks.hpp"
#include "ewinv/dsl.hpp"
#include "ewinv/equivalence.hpp"
#include "ewinv/error.hpp"
#include "ewinv/geometry.hpp"
#include "ewinv/invariants.hpp"
#include "ewinv/symmetry.hpp"

using namespace ewinv;
using nlohmann::json;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kErrorBase = 10;

constexpr ErrorKind kAllKinds[] = {
    ErrorKind::division_by_zero, ErrorKind::zero_denominator, ErrorKind::unbound_symbol,
    ErrorKind::pole, ErrorKind::negative_base_power, ErrorKind::non_representable,
    ErrorKind::order_cap_exceeded, ErrorKind::non_invertible_element, ErrorKind::domain_violation,
    ErrorKind::degenerate_metric, ErrorKind::singular_locus, ErrorKind::all_samples_singular,
    ErrorKind::precision_mismatch, ErrorKind::inconsistent_lift, ErrorKind::syntax_error,
    ErrorKind::unknown_identifier, ErrorKind::unknown_id, ErrorKind::invalid_argument, ErrorKind::io_error,
};

int exit_code(ErrorKind k) { return kErrorBase + int(k); }

std::string exit_code_table() {
  std::ostringstream os;
  os << "Exit codes:\n  0   success\n  " << kExitCheckFailed << "   a verification failed\n  " << kExitUsage
     << "   usage error\n";
  for (ErrorKind k : kAllKinds) os << "  " << exit_code(k) << "  " << error_kind_name(k) << "\n";
  os << "Environment: EWINV_PRECISION sets the decimal digits of inexact evaluation (default 50).";
  return os.str();
}

struct Output {
  bool as_json = false;
  bool timing = false;
};

// Drops run-time measurements so output is byte-identical across runs.
void strip_timing(json& j) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end();) {
      if (it.key() == "seconds") {
        it = j.erase(it);
      } else {
        strip_timing(*it);
        ++it;
      }
    }
  } else if (j.is_array()) {
    for (auto& x : j) strip_timing(x);
  }
}

void render(const json& j, int indent, std::ostream& os) {
  std::string pad(std::size_t(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = *it;
    bool nested = (v.is_object() && !v.empty()) || (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array()));
    if (nested && v.is_object()) {
      os << pad << it.key() << ":\n";
      render(v, indent + 2, os);
    } else if (nested) {
      os << pad << it.key() << ":\n";
      for (const json& item : v) {
        if (item.is_object()) {
          os << pad << "  -\n";
          render(item, indent + 4, os);
        } else {
          os << pad << "  - " << item.dump() << "\n";
        }
      }
    } else {
      os << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void emit(const Output& out, json j) {
  if (!out.timing) strip_timing(j);
  if (out.as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    render(j, 0, std::cout);
  }
}

Solution read_solution(const std::string& text) {
  if (text.find('=') != std::string::npos) {
    SolutionText st = parse_solution_text(text);
    return {st.u, st.v, infer_domain(st.u, st.v), text};
  }
  return parse_catalog_id(text);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io_error, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::syntax_error, path + ": " + e.what());
  }
}

json dims_json(int k) {
  Dims d = dims(k);
  return {{"k", d.k}, {"dim_jet", d.dim_jet}, {"dim_equation", d.dim_equation}, {"n_internal", d.n_internal}};
}

JetPoint make_jet_point(std::uint64_t seed, const std::vector<std::string>& sets) {
  std::mt19937 rng{unsigned(seed)};
  JetPoint p = random_jet_point(4, rng);
  for (const std::string& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos) fail(ErrorKind::syntax_error, "expected name=value in '" + s + "'");
    std::string name = s.substr(0, eq), value = s.substr(eq + 1);
    while (!name.empty() && name.back() == ' ') name.pop_back();
    mpq_class q = parse_rational(value);
    if (name == "t" || name == "x" || name == "y") {
      p.base[name == "t" ? 0 : name == "x" ? 1 : 2] = q;
      continue;
    }
    Expr e = parse_expr(name);
    auto syms = e.symbols();
    if (syms.size() != 1 || !syms.begin()->is_jet() || e != Expr(*syms.begin()))
      fail(ErrorKind::unknown_identifier, "'" + name + "' is not a jet coordinate");
    if (syms.begin()->jet_var().is_principal())
      fail(ErrorKind::invalid_argument, "'" + name + "' is a principal coordinate, fixed by the equation");
    p.internal[*syms.begin()] = q;
  }
  return p;
}

PseudogroupElement read_element(const std::string& alpha, const std::string& beta, const std::string& a,
                                const std::string& b, const std::string& c, const std::string& e) {
  PseudogroupElement g;
  g.alpha = parse_rational(alpha);
  g.beta = parse_rational(beta);
  ParseOptions base_only{false, false};
  g.A = parse_expr(a, base_only);
  g.B = parse_expr(b, base_only);
  g.C = parse_expr(c, base_only);
  g.E = parse_expr(e, base_only);
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact jet calculus and invariants of Einstein-Weyl structures via the modified "
               "Manakov-Santini system."};
  app.footer(exit_code_table());
  app.require_subcommand(1);
  app.fallthrough();  // global flags also accepted after the command
  Output out;
  app.add_flag("--json", out.as_json, "Emit JSON");
  app.add_flag("--timing", out.timing, "Include run times in the output");

  int result = 0;
  std::function<void()> action;

  // dims
  auto* c_dims = app.add_subcommand("dims", "Dimensions of J^k and of the prolonged equation");
  int dims_k = 1;
  c_dims->add_option("k", dims_k, "Jet order")->required()->check(CLI::NonNegativeNumber);
  c_dims->callback([&] { action = [&] { emit(out, dims_json(dims_k)); }; });

  // reduce
  auto* c_reduce = app.add_subcommand("reduce", "Reduce a jet expression on the equation");
  std::string reduce_text;
  int reduce_cap = kDefaultOrderCap;
  c_reduce->add_option("expr", reduce_text, "Jet expression, e.g. 'u_tx + v_xy'")->required();
  c_reduce->add_option("--cap", reduce_cap, "Order cap")->check(CLI::PositiveNumber);
  c_reduce->callback([&] {
    action = [&] {
      Expr e = parse_expr(reduce_text);
      Expr r = reduce_on_equation(e, std::max(reduce_cap, e.jet_order()));
      emit(out, {{"input", e.to_string()}, {"reduced", r.to_string()}, {"order", r.jet_order()}});
    };
  });

  // verify-table
  auto* c_table = app.add_subcommand("verify-table", "Verify the 25 commutators of the symmetry algebra");
  c_table->callback([&] {
    action = [&] {
      json cells = json::array();
      bool ok = true;
      for (const TableCell& c : verify_commutation_table()) {
        ok &= c.ok();
        cells.push_back({{"i", c.i}, {"j", c.j}, {"expected", c.expected.to_string()},
                         {"residual", c.residual.to_string()}, {"ok", c.ok()}});
      }
      emit(out, {{"passed", ok}, {"cells", cells}});
      if (!ok) result = kExitCheckFailed;
    };
  });

  // check-symmetry
  auto* c_sym = app.add_subcommand("check-symmetry", "Check that X_i(f) is a symmetry of the equation");
  std::vector<int> sym_families;
  std::string sym_param = "f(t)";
  c_sym->add_option("--family", sym_families, "Families 1..5 (default all)")->check(CLI::Range(1, 5));
  c_sym->add_option("--param", sym_param, "Parameter function of t");
  c_sym->callback([&] {
    action = [&] {
      if (sym_families.empty()) sym_families = {1, 2, 3, 4, 5};
      Expr p = parse_expr(sym_param, {false, false});
      json fams = json::array();
      bool ok = true;
      for (int i : sym_families) {
        SymmetryCheck c = check_symmetry(symmetry_field(i, p));
        ok &= c.ok();
        fams.push_back({{"family", i}, {"field", symmetry_field(i, p).to_string()},
                        {"residual1", c.residual1.to_string()}, {"residual2", c.residual2.to_string()},
                        {"symmetry", c.ok()}});
      }
      emit(out, {{"passed", ok}, {"families", fams}});
      if (!ok) result = kExitCheckFailed;
    };
  });

  // grading
  auto* c_grading = app.add_subcommand("grading", "Check the grading of the symmetry algebra");
  c_grading->callback([&] {
    action = [&] {
      GradingReport g = grading_check();
      json grades = json::array();
      for (int i = 1; i <= 5; ++i) grades.push_back({{"family", i}, {"grade", grade(i)}});
      emit(out, {{"passed", g.ok()}, {"graded", g.graded}, {"perfect", g.perfect}, {"grades", grades},
                 {"notes", g.notes}});
      if (!g.ok()) result = kExitCheckFailed;
    };
  });

  // orbit-dim
  auto* c_orbit = app.add_subcommand("orbit-dim", "Dimension of the symmetry orbit in the k-jets of the equation");
  int orbit_k = 2;
  std::string orbit_point = "reference";
  std::uint64_t orbit_seed = 0;
  c_orbit->add_option("k", orbit_k, "Jet order")->required()->check(CLI::NonNegativeNumber);
  c_orbit->add_option("--point", orbit_point, "reference (u_x = u_xx = 1) or random")
      ->check(CLI::IsMember({"reference", "random"}));
  c_orbit->add_option("--seed", orbit_seed, "Seed of the random point");
  c_orbit->callback([&] {
    action = [&] {
      JetPoint p;
      if (orbit_point == "random") {
        std::mt19937 rng{unsigned(orbit_seed)};
        p = random_jet_point(orbit_k, rng);
      } else {
        p = orbit_reference_point(orbit_k);
      }
      emit(out, {{"k", orbit_k}, {"point", orbit_point}, {"dimension", orbit_dimension(orbit_k, p)}});
    };
  });

  // invariants
  auto* c_inv = app.add_subcommand("invariants", "Basic differential invariants");
  c_inv->require_subcommand(1);
  auto* c_inv_list = c_inv->add_subcommand("list", "Print the invariants, derivations and structure functions");
  c_inv_list->callback([&] {
    action = [&] {
      json inv = json::object(), der = json::object(), ks = json::object();
      for (int i = 1; i <= 3; ++i) {
        inv["I" + std::to_string(i)] = invariant(i).to_string();
        const auto& c = derivation(i).coef;
        der["n" + std::to_string(i)] = {c[0].to_string(), c[1].to_string(), c[2].to_string()};
      }
      for (int i = 1; i <= 4; ++i) ks["K" + std::to_string(i)] = structure_K(i).to_string();
      emit(out, {{"invariants", inv}, {"derivations_dt_dx_dy", der}, {"structure", ks}});
    };
  });
  auto* c_inv_eval = c_inv->add_subcommand("eval", "Evaluate the invariants at an on-equation jet point");
  std::uint64_t eval_seed = 0;
  std::vector<std::string> eval_sets;
  std::string eval_section;
  std::vector<std::string> eval_at;
  c_inv_eval->add_option("--seed", eval_seed, "Seed of the random 4-jet");
  c_inv_eval->add_option("--set", eval_sets, "Override a coordinate, e.g. u_x=1 or t=2");
  c_inv_eval->add_option("--solution", eval_section, "Evaluate on a solution instead of a jet point");
  c_inv_eval->add_option("--at", eval_at, "Base point t x y for --solution")->expected(3);
  c_inv_eval->callback([&] {
    action = [&] {
      json vals = json::object();
      auto names = basic_invariant_names();
      if (!eval_section.empty()) {
        if (eval_at.size() != 3) fail(ErrorKind::invalid_argument, "--solution needs --at t x y");
        Solution s = read_solution(eval_section);
        BasePoint p = {parse_rational(eval_at[0]), parse_rational(eval_at[1]), parse_rational(eval_at[2])};
        auto comps = signature_components(s);
        for (std::size_t i = 0; i < comps.size(); ++i)
          vals[comps[i]] = evaluate_on_section(basic_invariants()[i], s, p).to_string();
        emit(out, {{"solution", s.provenance}, {"values", vals}});
        return;
      }
      JetPoint p = make_jet_point(eval_seed, eval_sets);
      for (std::size_t i = 0; i < names.size(); ++i)
        vals[names[i]] = evaluate_on_equation(basic_invariants()[i], p).to_string();
      for (int i = 1; i <= 4; ++i) {
        try {
          vals["K" + std::to_string(i)] = evaluate_on_equation(structure_K(i), p).to_string();
        } catch (const Error& e) {
          // a pole of K at this point
          vals["K" + std::to_string(i)] = std::string("undefined: ") + e.what();
        }
      }
      json point = json::object();
      point["t"] = rational_to_string(p.base[0]);
      point["x"] = rational_to_string(p.base[1]);
      point["y"] = rational_to_string(p.base[2]);
      for (const auto& [sym, q] : p.internal) point[sym.to_string()] = rational_to_string(q);
      emit(out, {{"point", point}, {"values", vals}});
    };
  });

  // verify-invariance
  auto* c_vinv = app.add_subcommand("verify-invariance", "Lie derivatives of expressions along all five families");
  std::string vinv_expr;
  c_vinv->add_option("expr", vinv_expr, "Jet expression (default: the basic invariants and K1..K4)");
  c_vinv->callback([&] {
    action = [&] {
      std::vector<std::pair<std::string, Expr>> exprs;
      if (!vinv_expr.empty()) {
        exprs.emplace_back(vinv_expr, parse_expr(vinv_expr));
      } else {
        auto names = basic_invariant_names();
        for (std::size_t i = 0; i < names.size(); ++i) exprs.emplace_back(names[i], basic_invariants()[i]);
        for (int i = 1; i <= 4; ++i) exprs.emplace_back("K" + std::to_string(i), structure_K(i));
      }
      json res = json::array();
      bool ok = true;
      for (const auto& [name, e] : exprs) {
        Expr r = reduce_on_equation(e, std::max(kDefaultOrderCap, e.jet_order()));
        InvarianceResult v = verify_invariance(r, std::max(1, r.jet_order()));
        ok &= v.invariant;
        json entry = {{"name", name}, {"invariant", v.invariant}};
        if (!v.invariant) entry["family"] = v.family, entry["residual"] = v.residual.to_string();
        res.push_back(entry);
      }
      emit(out, {{"passed", ok}, {"results", res}});
      if (!ok) result = kExitCheckFailed;
    };
  });

  // verify-commutators / verify-identities
  auto* c_comm = app.add_subcommand("verify-commutators", "Commutation relations of the invariant derivations");
  c_comm->callback([&] {
    action = [&] {
      json rel = json::array();
      bool ok = true;
      for (const CommutatorCheck& c : verify_derivation_commutators()) {
        ok &= c.ok();
        rel.push_back({{"relation", c.relation},
                       {"residual", {c.residual[0].to_string(), c.residual[1].to_string(), c.residual[2].to_string()}},
                       {"ok", c.ok()}});
      }
      emit(out, {{"passed", ok}, {"relations", rel}});
      if (!ok) result = kExitCheckFailed;
    };
  });
  auto* c_ident = app.add_subcommand("verify-identities", "Identities expressing I1 and I3 through I2 and K1..K4");
  c_ident->callback([&] {
    action = [&] {
      json rel = json::array();
      bool ok = true;
      for (const IdentityCheck& c : verify_identities()) {
        ok &= c.ok();
        rel.push_back({{"identity", c.name}, {"residual", c.residual.to_string()}, {"ok", c.ok()}});
      }
      emit(out, {{"passed", ok}, {"identities", rel}});
      if (!ok) result = kExitCheckFailed;
    };
  });

  // coframe
  auto* c_coframe = app.add_subcommand("coframe", "Metric and Weyl form in the invariant coframe");
  c_coframe->callback([&] {
    action = [&] {
      Coframe c = coframe_rewrite();
      json m = json::array();
      for (const auto& row : c.metric) m.push_back({row[0].to_string(), row[1].to_string(), row[2].to_string()});
      bool ok = c.metric == expected_coframe_metric() && c.determinant == parse_expr("-u_x^3");
      emit(out, {{"passed", ok},
                 {"metric", m},
                 {"omega", {c.omega_adjusted[0].to_string(), c.omega_adjusted[1].to_string(),
                            c.omega_adjusted[2].to_string()}},
                 {"omega_unadjusted", {c.omega_raw[0].to_string(), c.omega_raw[1].to_string(),
                                       c.omega_raw[2].to_string()}},
                 {"determinant", c.determinant.to_string()}});
      if (!ok) result = kExitCheckFailed;
    };
  });

  // counts
  auto* c_counts = app.add_subcommand("counts", "Counts of functional moduli by jet order");
  std::string counts_series = "ms";
  int counts_max = 8;
  c_counts->add_option("--series", counts_series, "weyl, ew-general or ms")
      ->check(CLI::IsMember({"weyl", "ew-general", "ms"}));
  c_counts->add_option("--max-k", counts_max, "Largest order")->check(CLI::NonNegativeNumber);
  c_counts->callback([&] {
    action = [&] {
      Series s = *parse_series(counts_series);
      json recs = json::array();
      for (int k = 0; k <= counts_max; ++k) {
        CountRecord r = counting(s, k);
        recs.push_back({{"k", r.k}, {"s", r.s}, {"h", r.h}});
      }
      emit(out, {{"series", counts_series}, {"records", recs}, {"poincare", poincare_series(s, counts_max)}});
    };
  });

  // check-solution
  auto* c_sol = app.add_subcommand("check-solution", "Verify the equation and the Einstein-Weyl condition");
  std::string sol_text;
  std::size_t sol_points = 20;
  double sol_tol = 1e-9;
  std::uint64_t sol_seed = 0;
  c_sol->add_option("solution", sol_text, "DSL 'u = ...; v = ...' or a catalog id such as 'exp-family(0, 1)'")
      ->required();
  c_sol->add_option("--points", sol_points, "Numeric sample points")->check(CLI::NonNegativeNumber);
  c_sol->add_option("--tol", sol_tol, "Relative tolerance for inexact values")->check(CLI::NonNegativeNumber);
  c_sol->add_option("--seed", sol_seed, "Sampler seed");
  c_sol->callback([&] {
    action = [&] {
      Solution s = read_solution(sol_text);
      GeometryReport r = analyze(s);
      std::set<Symbol> syms = s.u.symbols();
      for (Symbol x : s.v.symbols()) syms.insert(x);
      EwCheck ec = check_EW(s, sample_points(s.domain, syms, sol_points, sol_seed), sol_tol);
      json lambdas = json::array();
      for (const PointCheck& p : ec.points) lambdas.push_back(p.lambda.to_string());
      bool ok = r.ms_ok() && r.nonmetricity_ok() && r.skew_ok() && r.ew_ok() && ec.passed();
      emit(out, {{"solution", s.provenance},
                 {"u", s.u.to_string()},
                 {"v", s.v.to_string()},
                 {"domain", s.domain.to_string()},
                 {"passed", ok},
                 {"ms_residuals", {r.ms_residual1.to_string(), r.ms_residual2.to_string()}},
                 {"nonmetricity_ok", r.nonmetricity_ok()},
                 {"skew_ricci_ok", r.skew_ok()},
                 {"einstein_weyl_ok", r.ew_ok()},
                 {"lambda", r.lambda.to_string()},
                 {"ew_residual_max", ec.max_ew_residual().to_string()},
                 {"ms_residual_max", ec.max_ms_residual().to_string()},
                 {"lambda_samples", lambdas}});
      if (!ok) result = kExitCheckFailed;
    };
  });

  // transform
  auto* c_tr = app.add_subcommand("transform", "Apply a pseudogroup element t' = alpha^2 t + beta, "
                                               "x' = E^2 x + E E' y^2 + C y + A, y' = alpha E y + B");
  std::string tr_sol, tr_alpha = "1", tr_beta = "0", tr_a = "0", tr_b = "0", tr_c = "0", tr_e = "1";
  c_tr->add_option("solution", tr_sol, "Solution DSL or catalog id")->required();
  c_tr->add_option("--alpha", tr_alpha, "Positive rational");
  c_tr->add_option("--beta", tr_beta, "Rational");
  c_tr->add_option("--A", tr_a, "Function of t");
  c_tr->add_option("--B", tr_b, "Function of t");
  c_tr->add_option("--C", tr_c, "Function of t");
  c_tr->add_option("--E", tr_e, "Nonvanishing function of t");
  c_tr->callback([&] {
    action = [&] {
      Solution s = read_solution(tr_sol);
      PseudogroupElement g = read_element(tr_alpha, tr_beta, tr_a, tr_b, tr_c, tr_e);
      Solution img = apply_pseudogroup(g, s);
      emit(out, {{"element", g.to_string()},
                 {"u", img.u.to_string()},
                 {"v", img.v.to_string()},
                 {"domain", img.domain.to_string()},
                 {"solution", img.provenance}});
    };
  });

  // signature
  auto* c_sig = app.add_subcommand("signature", "Sample the signature of a solution");
  std::string sig_sol, sig_out;
  SamplerConfig sig_cfg;
  c_sig->add_option("solution", sig_sol, "Solution DSL or catalog id")->required();
  c_sig->add_option("--seed", sig_cfg.seed, "Sampler seed");
  c_sig->add_option("--n", sig_cfg.n, "Number of points")->check(CLI::PositiveNumber);
  c_sig->add_option("--out", sig_out, "Write the cloud to this file");
  c_sig->callback([&] {
    action = [&] {
      SignatureCloud c = signature(read_solution(sig_sol), sig_cfg);
      json j = to_json(c);
      if (!sig_out.empty()) {
        std::ofstream f(sig_out);
        if (!f) fail(ErrorKind::io_error, "cannot write '" + sig_out + "'");
        f << j.dump(2) << "\n";
        if (!f) fail(ErrorKind::io_error, "write to '" + sig_out + "' failed");
        emit(out, {{"written", sig_out}, {"points", c.points.size()}, {"components", c.components},
                   {"precision", c.precision}, {"notes", c.notes}});
      } else {
        std::cout << j.dump(2) << "\n";
      }
    };
  });

  // compare
  auto* c_cmp = app.add_subcommand("compare", "Compare two signature clouds");
  std::string cmp_a, cmp_b;
  double cmp_tol = 1e-9;
  std::size_t cmp_min = 8;
  c_cmp->add_option("a", cmp_a, "First cloud (JSON)")->required();
  c_cmp->add_option("b", cmp_b, "Second cloud (JSON)")->required();
  c_cmp->add_option("--tol", cmp_tol, "Relative tolerance")->check(CLI::NonNegativeNumber);
  c_cmp->add_option("--min-points", cmp_min, "Clouds smaller than this are inconclusive");
  c_cmp->callback([&] {
    action = [&] {
      SignatureCloud a = cloud_from_json(read_json_file(cmp_a));
      SignatureCloud b = cloud_from_json(read_json_file(cmp_b));
      Comparison c = compare(a, b, cmp_tol, cmp_min);
      emit(out, {{"verdict", verdict_name(c.verdict)},
                 {"distance", c.distance},
                 {"scale", c.scale},
                 {"tol", cmp_tol},
                 {"method", "symmetric Hausdorff distance, max norm, against tol * (1 + scale)"},
                 {"notes", c.notes}});
    };
  });

  // verify-all
  auto* c_all = app.add_subcommand("verify-all", "Run the full verification suite");
  std::vector<std::string> all_only;
  std::string all_sign = "minus";
  std::uint64_t all_seed = 0;
  c_all->add_option("--only", all_only, "Run only these checks")->delimiter(',')->check(CLI::IsMember(check_names()));
  c_all->add_option("--seed", all_seed, "Seed for sampled checks");
  c_all->add_option("--connection-sign", all_sign)->check(CLI::IsMember({"minus", "plus"}))->group("");
  c_all->callback([&] {
    action = [&] {
      CheckOptions opt;
      opt.seed = all_seed;
      opt.sign = all_sign == "plus" ? CorrectionSign::plus : CorrectionSign::minus;
      json checks = json::array();
      bool ok = true;
      for (const CheckResult& r : run_checks(all_only, opt)) {
        ok &= r.passed;
        checks.push_back({{"number", r.number}, {"name", r.name}, {"title", r.title}, {"passed", r.passed},
                          {"seconds", r.seconds}, {"details", r.details}});
      }
      if (out.as_json) {
        emit(out, {{"passed", ok}, {"checks", checks}});
      } else {
        for (const json& c : checks)
          std::cout << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << "  "
                    << c["title"].get<std::string>() << "\n";
        std::cout << (ok ? "all checks passed" : "some checks failed") << "\n";
      }
      if (!ok) result = kExitCheckFailed;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (action) action();
  } catch (const Error& e) {
    std::cerr << "error [" << error_kind_name(e.kind()) << "]: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return result;
}
