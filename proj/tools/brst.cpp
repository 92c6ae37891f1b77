// brst: command-line front end for the reduction engine.
//
//   brst verify --n 1
//   brst reduce-product --n 1 --u h11 --v h12 --order 2
//   brst kirwan --n 1 --class omega-J
//   brst equivalence-check --n 1 --c 1
//   brst main-theorem --n 1 --c 1
//
// Exit codes: 0 all PASS, 1 any FAIL, 2 usage error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "brst/parser.hpp"
#include "brst/report.hpp"

using namespace brst;

namespace {

struct Common {
  int n = 1;
  bool text = false;
  bool json = false;
  bool timing = false;
};

void add_common(CLI::App *cmd, Common &c) {
  cmd->add_option("--n", c.n, "scenario: C^{n+1} over S^{2n+1}, reduced space CP^n (0, 1, 2)")->capture_default_str();
  auto *j = cmd->add_flag("--json", c.json, "JSON report (default)");
  auto *t = cmd->add_flag("--text", c.text, "human-readable report");
  j->excludes(t);
  cmd->add_flag("--timing", c.timing, "include wall-clock seconds in JSON (breaks byte-identical output)");
}

int emit(const RunReport &r, const Common &c) {
  if (c.text)
    std::cout << r.to_text();
  else
    std::cout << r.to_json(c.timing).dump(2) << "\n";
  return r.all_pass() ? 0 : 1;
}

int usage_error(const std::string &command, const Error &e, const Common &c) {
  if (c.text) {
    std::cerr << command << ": " << e.what() << "\n";
  } else {
    Json out = Json::object();
    out["command"] = command;
    out["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
    std::cout << out.dump(2) << "\n";
  }
  return 2;
}

NuScalar parse_kappa(const std::string &text, int order) {
  // "0", "1", "nu", "<q>", "<q>*nu"
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  int power = 0;
  std::string coef = t;
  if (t == "nu") {
    coef = "1";
    power = 1;
  } else if (t.size() > 3 && t.substr(t.size() - 3) == "*nu") {
    coef = t.substr(0, t.size() - 3);
    power = 1;
  }
  Scalar k = Scalar::parse(coef);
  NuScalar out(order);
  if (!k.is_zero()) out.set(power, k);
  return out;
}

RunReport start(const std::string &command, const Scenario &sc) {
  RunReport r;
  r.command = command;
  r.scenario = scenario_json(sc);
  return r;
}

void append(RunReport &r, std::vector<CheckResult> more) {
  for (auto &x : more) r.results.push_back(std::move(x));
}

// ---- verbs ----------------------------------------------------------------

RunReport cmd_verify(const Scenario &sc, int fuzz_samples, unsigned seed) {
  RunReport r = start("verify", sc);
  r.results.push_back(run_check("scenario[n=" + std::to_string(sc.n) + "].axioms", [&](CheckResult &c) {
    // build_scenario already refuses invalid data; restate the checks for the report
    const auto &fields = sc.symplectic.fundamental_fields;
    c.expect(sc.symplectic.is_closed(), "omega not closed");
    c.expect(sc.symplectic.is_nondegenerate(), "omega degenerate");
    c.expect(sc.symplectic.is_hamiltonian(), "ins_X omega != dJ");
    c.expect(sc.symplectic.is_equivariant(sc.lie), "J not equivariant");
    c.expect(sc.ideal.regular_at_canonical_point(), "0 not a regular value");
    c.expect(sc.connection.reproduces_generators(fields, sc.ideal), "theta(X) != 1");
    c.expect(sc.connection.is_invariant(fields, sc.ideal), "L_X theta != 0");
    c.expect(is_basic(ideal_reduce(sc.symplectic.omega, sc.ideal), sc.ideal, fields), "iota^* omega not basic");
  }));
  append(r, suite::koszul(sc, sc.n <= 1 ? 6 : 4));
  append(r, suite::quantized_koszul(sc, 4, sc.n <= 1 ? 6 : 4));
  r.results.push_back(suite::quantized_koszul_su2());
  if (sc.n == 0) {
    r.results.push_back(suite::point_reduction());
    r.results.push_back(run_check("cartan[n=0].point_classes", [&](CheckResult &c) {
      // S^1 carries no 2-forms: K(omega - J) and K(e*) vanish
      auto ctx = sc.cartan();
      c.expect(kirwan(sc.omega_minus_J(), ctx).is_zero(), "K(omega - J) != 0");
      c.expect(kirwan(EquivariantForm::generator(1, 1, 0), ctx).is_zero(), "K(e*) != 0");
    }));
    append(r, suite::main_theorem(sc, suite::MainTheoremOptions{}));
  } else {
    r.results.push_back(suite::contraction(sc, 3, 3, sc.n == 1 ? 4 : 2));
    append(r, suite::cartan(sc));
    r.results.push_back(suite::surjectivity(sc));
    append(r, suite::reduced_product(sc, sc.n == 1 ? 3 : 2, sc.n == 1 ? 2 : 1));
    suite::MainTheoremOptions opt;
    if (sc.n == 2) opt.space_bound = 4;
    append(r, suite::main_theorem(sc, opt));
    append(r, suite::equivalence_transfer(sc, 2, sc.n == 1 ? 6 : 4));
  }
  if (fuzz_samples > 0) append(r, suite::fuzz(sc, seed, fuzz_samples));
  return r;
}

RunReport cmd_reduce_product(const Scenario &sc, const std::string &u_text, const std::string &v_text, int order,
                             const NuScalar &kappa, const Scalar &c) {
  const int m = sc.dim();
  RingElement u = parse_expression(u_text, m), v = parse_expression(v_text, m);
  ReducedFunction ur = ReducedFunction::from_representative(u), vr = ReducedFunction::from_representative(v);
  ReducedSpace space(sc.koszul_config(c, order, kappa));
  NuReduced p = space.product(ur, vr);
  RunReport r = start("reduce-product", sc);
  r.output["u"] = u_text;
  r.output["v"] = v_text;
  r.output["u_normal_form"] = ur.to_string();
  r.output["v_normal_form"] = vr.to_string();
  r.output["order"] = order;
  r.output["truncated"] = p.truncated();
  r.output["orders"] = nu_series_json(p, Poly(2 * m), "coefficient_normal_form");
  r.results.push_back(run_check("order0_pointwise", [&](CheckResult &chk) {
    Poly pointwise = ReducedFunction::from_representative(ur.representative() * vr.representative()).normal_form();
    chk.expect(p.at(0, Poly(2 * m)) == pointwise, "order 0 differs from " + pointwise.to_string());
  }));
  return r;
}

/// Built-in closed equivariant classes.
EquivariantForm class_by_name(const Scenario &sc, const std::string &name) {
  const int m = sc.dim();
  if (name == "omega-J") return sc.omega_minus_J();
  if (name == "e*") return EquivariantForm::generator(m, 1, 0);
  if (name.rfind("e*^", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(name.substr(3));
    } catch (const std::exception &) {
      throw Error(ErrorCode::Parse, "bad power in class '" + name + "'");
    }
    if (k < 0 || k > 4) throw Error(ErrorCode::Parse, "class power out of range 0..4");
    return EquivariantForm::generator(m, 1, 0, k);
  }
  if (name == "d_g-exact sample") {
    // d_g of the invariant 1-form zb1 dz1 + z1 zb2 zb1 dz1 (the second term needs m >= 2)
    EquivariantForm beta(m, 1);
    PolyForm b = RingElement::zb(m, 0) * PolyForm::differential(m, 0);
    if (m >= 2) b += RingElement::z(m, 0) * RingElement::zb(m, 1) * RingElement::zb(m, 0) * PolyForm::differential(m, 0);
    beta.add_term({0}, b);
    return d_equivariant(beta, sc.lie, sc.symplectic.fundamental_fields);
  }
  throw Error(ErrorCode::Parse, "unknown class '" + name + "' (omega-J, e*, e*^k, d_g-exact sample)");
}

RunReport cmd_kirwan(const Scenario &sc, const std::string &name, const Scalar &c, int bound) {
  const int m = sc.dim();
  auto ctx = sc.cartan();
  EquivariantForm alpha = class_by_name(sc, name);
  // omega - J - nu c e* when a class shift is requested
  NuSeries<EquivariantForm> hat(alpha, kDefaultNuOrder);
  if (name == "omega-J" && !c.is_zero()) hat.set(1, EquivariantForm::generator(m, 1, 0) * (-c));
  NuSeries<PolyForm> k = kirwan(hat, ctx);
  RunReport r = start("kirwan", sc);
  r.output["class"] = name;
  if (!c.is_zero()) r.output["c"] = c.to_string();
  r.output["input"] = alpha.to_string();
  Json reps = Json::array();
  const PolyForm zero(m);
  for (const auto &[ord, form] : k.coefficients()) reps.push_back({{"k", ord}, {"representative", to_json(form)}});
  r.output["orders"] = reps;

  const PolyForm iw = ideal_reduce(sc.symplectic.omega, sc.ideal);
  const PolyForm dtheta = ideal_reduce(exterior_derivative(sc.connection.theta[0]), sc.ideal);
  PolyForm k0 = k.at(0, zero);
  r.results.push_back(run_check("representative_basic", [&](CheckResult &chk) {
    for (const auto &[ord, form] : k.coefficients())
      chk.expect(is_basic(form, sc.ideal, sc.symplectic.fundamental_fields), "order " + std::to_string(ord));
  }));
  Json cmp = Json::object();
  auto compare = [&](const std::string &label, const PolyForm &a, const PolyForm &b) {
    if (a.is_zero() && b.is_zero()) return std::string("EQUAL");
    bool two_forms = true;
    for (const auto *f : {&a, &b})
      for (const auto &[mask, coef] : f->terms()) two_forms = two_forms && exterior_degree(mask) == 2;
    if (!two_forms) return std::string("UNSUPPORTED_DEGREE");
    std::string v = classes_equal(a, b, ctx, bound).verdict();
    cmp[label] = v;
    return v;
  };
  std::string vs_zero = compare("vs_0", k0, zero);
  std::string vs_omega = compare("vs_pi*omega_red", k0, iw);
  compare("vs_d_theta", k0, dtheta);
  if (!c.is_zero()) compare("order_1_vs_0", k.at(1, zero), zero);
  r.output["comparisons"] = cmp;
  r.results.push_back(run_check("expected_class", [&](CheckResult &chk) {
    const std::string not_equal = "NOT_EQUAL_UP_TO_DEGREE(" + std::to_string(bound) + ")";
    if (sc.n == 0) {
      chk.expect(k0.is_zero(), "a point has no positive-degree classes");
    } else if (name == "omega-J") {
      chk.expect(k0 == iw, "K(omega - J) != iota^* omega");
      chk.expect(vs_omega == "EQUAL", vs_omega);
      chk.expect(vs_zero == not_equal, vs_zero);
    } else if (name == "e*") {
      chk.expect(k0 == -dtheta, "K(e*) != -d theta");
      chk.expect(vs_zero == not_equal, vs_zero);
    } else if (name == "d_g-exact sample") {
      chk.expect(vs_zero == "EQUAL", vs_zero);
    }
  }));
  return r;
}

RunReport cmd_equivalence_check(const Scenario &sc, const Scalar &c1, const Scalar &c2, int class_order, int bound) {
  const int order = class_order + 1;
  ReducedSpace s1(sc.koszul_config(c1, order)), s2(sc.koszul_config(c2, order));
  FilteredAlgebra a1 = reduced_algebra(s1, bound, order);
  FilteredAlgebra a2 = c1 == c2 ? a1 : reduced_algebra(s2, bound, order);
  RunReport r = start("equivalence-check", sc);
  EquivalenceResult res;
  r.results.push_back(run_check("find_equivalence", [&](CheckResult &chk) {
    res = find_equivalence(a1, a2, class_order, bound);
    // a FOUND map is re-verified by the solver; a NONE verdict carries its witness
    chk.expect(res.found || !res.witness.empty(), "no witness for NONE");
  }));
  r.output["c1"] = c1.to_string();
  r.output["c2"] = c2.to_string();
  r.output["class_order"] = class_order;
  r.output["degree_bound"] = bound;
  r.output["dimension"] = res.dimension;
  r.output["verdict"] = res.verdict();
  if (res.found) {
    r.output["identity"] = res.op.is_identity();
  } else {
    r.output["obstruction_order"] = res.obstruction_order;
    r.output["witness"] = res.witness;
  }
  return r;
}

RunReport cmd_main_theorem(const Scenario &sc, const suite::MainTheoremOptions &opt) {
  RunReport r = start("main-theorem", sc);
  append(r, suite::main_theorem(sc, opt));
  r.output["c"] = opt.c.to_string();
  r.output["statement"] = "K(omega - J^_c) = iota^* omega + nu c d theta; the class difference nu c d theta is nonzero "
                          "exactly when the reduced products for c and 0 are inequivalent";
  return r;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact BRST quantum reduction and Cartan-model Kirwan map on Hopf scenarios"};
  app.require_subcommand(1);
  Common common;

  auto *verify = app.add_subcommand("verify", "run every invariant suite on a scenario");
  add_common(verify, common);
  int fuzz = 0;
  unsigned seed = 1;
  verify->add_option("--fuzz", fuzz, "additional seeded random samples per property (0 = off)");
  verify->add_option("--seed", seed, "seed for --fuzz")->capture_default_str();

  auto *reduce = app.add_subcommand("reduce-product", "nu-expansion of u *_red v");
  add_common(reduce, common);
  std::string u_text, v_text, kappa_text = "0", c_text = "0";
  int order = 2;
  reduce->add_option("--u", u_text, "invariant expression, e.g. h11*h12")->required();
  reduce->add_option("--v", v_text, "invariant expression")->required();
  reduce->add_option("--order", order, "highest nu-order")->capture_default_str();
  reduce->add_option("--kappa", kappa_text, "0, 1, nu, <q> or <q>*nu")->capture_default_str();
  reduce->add_option("--c", c_text, "quantum momentum map J + nu c")->capture_default_str();

  auto *kirwan_cmd = app.add_subcommand("kirwan", "Kirwan map of a built-in equivariant class");
  add_common(kirwan_cmd, common);
  std::string class_name = "omega-J", kirwan_c = "0";
  int kirwan_bound = kDefaultDegreeBound;
  kirwan_cmd->add_option("--class", class_name, "omega-J | e* | e*^k | \"d_g-exact sample\"")->capture_default_str();
  kirwan_cmd->add_option("--c", kirwan_c, "for omega-J: use omega - J - nu c e*")->capture_default_str();
  kirwan_cmd->add_option("--degree-bound", kirwan_bound, "coefficient bound of class comparisons")->capture_default_str();

  auto *equiv = app.add_subcommand("equivalence-check", "search an equivalence between reduced products for c and c2");
  add_common(equiv, common);
  std::string eq_c = "1", eq_c2 = "0";
  int eq_order = 1, eq_bound = suite::kEquivalenceSpaceBound;
  equiv->add_option("--c", eq_c, "class shift of the first product")->capture_default_str();
  equiv->add_option("--c2", eq_c2, "class shift of the second product")->capture_default_str();
  equiv->add_option("--order", eq_order, "class order N; products compared through nu^{N+1}")->capture_default_str();
  equiv->add_option("--degree-bound", eq_bound, "degree of the filtered space")->capture_default_str();

  auto *main_cmd = app.add_subcommand("main-theorem", "K(omega - J^_c) against the equivalence class of *_red");
  add_common(main_cmd, common);
  std::string mt_c = "1";
  suite::MainTheoremOptions mt;
  main_cmd->add_option("--c", mt_c, "J^ = J + nu c")->capture_default_str();
  main_cmd->add_option("--order", mt.class_order, "class order N")->capture_default_str();
  main_cmd->add_option("--degree-bound", mt.class_bound, "bound for class comparisons")->capture_default_str();
  main_cmd->add_option("--space-bound", mt.space_bound, "degree of the filtered space for the equivalence search")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    auto sc = build_scenario(common.n);
    if (*verify) {
      if (fuzz < 0) throw Error(ErrorCode::Parse, "--fuzz must be >= 0");
      return emit(cmd_verify(*sc, fuzz, seed), common);
    }
    if (*reduce) {
      if (order < 0 || order > 6) throw Error(ErrorCode::Parse, "--order must be in 0..6");
      return emit(cmd_reduce_product(*sc, u_text, v_text, order, parse_kappa(kappa_text, order), Scalar::parse(c_text)), common);
    }
    if (*kirwan_cmd) return emit(cmd_kirwan(*sc, class_name, Scalar::parse(kirwan_c), kirwan_bound), common);
    if (*equiv) {
      if (eq_order < 0 || eq_order > 3) throw Error(ErrorCode::Parse, "--order must be in 0..3");
      return emit(cmd_equivalence_check(*sc, Scalar::parse(eq_c), Scalar::parse(eq_c2), eq_order, eq_bound), common);
    }
    if (*main_cmd) {
      mt.c = Scalar::parse(mt_c);
      if (mt.class_order < 0 || mt.class_order > 3) throw Error(ErrorCode::Parse, "--order must be in 0..3");
      return emit(cmd_main_theorem(*sc, mt), common);
    }
  } catch (const Error &e) {
    return usage_error(command, e, common);
  }
  return 2;
}
