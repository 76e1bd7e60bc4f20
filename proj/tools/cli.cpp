#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "fermat/jacobi.hpp"

namespace fermat::cli {

namespace {

struct Globals {
  double tol = 1e-8;
  int samples = 100;
  std::uint64_t seed = 20240501;
  double radius = 2.0;
  std::string out;
  int nodes = 256;
};

// Raw flag text for the solution families; parsed after CLI11 is done.
struct FamilyArgs {
  std::string family;
  std::string h;
  std::string g;
  std::string periodic;
  std::string eta = "1";
  std::string A;
  std::string B;
  std::string d;
  std::string alpha;
  std::string beta = "0";
  std::string a;
  std::string c;
  std::string q = "1";
  std::string tau = "0";
  std::string theta_case = "1";
  int n = 3;
  int m = 3;
  int branch = 0;
  bool no_validate = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Complex constant_flag(const std::string& flag, const std::string& text) {
  if (text.empty()) {
    throw UsageError("--" + flag + " is required");
  }
  try {
    return eval_constant(parse(text));
  } catch (const ParseError& e) {
    throw UsageError("--" + flag + ": " + e.what());
  } catch (const ParameterError&) {
    throw UsageError("--" + flag + " must not depend on z");
  }
}

std::optional<Complex> optional_constant(const std::string& flag, const std::string& text) {
  if (text.empty()) {
    return std::nullopt;
  }
  return constant_flag(flag, text);
}

Expr expr_flag(const std::string& flag, const std::string& text) {
  if (text.empty()) {
    throw UsageError("--" + flag + " is required");
  }
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw UsageError("--" + flag + ": " + e.what());
  }
}

void add_family_flags(CLI::App* sub, FamilyArgs& fa) {
  sub->add_option("family", fa.family, "Solution family")
      ->required()
      ->check(CLI::IsMember({"cubic-pair", "pair-2-3", "pair-2-4", "shift3", "shift-exp-rhs", "exp-family",
                             "scalar-exp", "example1", "example2", "example3", "example4", "q-difference"}));
  sub->add_option("--h", fa.h, "Inner function h(z)");
  sub->add_option("--g", fa.g, "Exponent function g(z)");
  sub->add_option("--periodic", fa.periodic, "Periodic part for example2 / example4");
  sub->add_option("--eta", fa.eta, "Cube root of unity");
  sub->add_option("--A", fa.A);
  sub->add_option("--B", fa.B);
  sub->add_option("--d", fa.d);
  sub->add_option("--alpha", fa.alpha);
  sub->add_option("--beta", fa.beta);
  sub->add_option("--a", fa.a);
  sub->add_option("--c", fa.c, "Shift constant of L(z) = q z + c");
  sub->add_option("--q", fa.q, "Multiplier of L(z) = q z + c");
  sub->add_option("--tau", fa.tau, "Lattice point for example2");
  sub->add_option("--theta-case", fa.theta_case, "example2 offset: 1, 2 or none")
      ->check(CLI::IsMember({"1", "2", "none"}));
  sub->add_option("--n", fa.n);
  sub->add_option("--m", fa.m);
  sub->add_option("--branch", fa.branch, "Logarithm / root branch");
  sub->add_flag("--no-validate", fa.no_validate, "Measure side conditions without enforcing them");
}

bool open_case(int n, int m) { return n == 1 || m == 1 || (n == 2 && m == 2); }

Solution construct(const FamilyArgs& fa, const EquianharmonicContext& ctx, const Globals& globals) {
  SolutionOptions options;
  options.validate = !fa.no_validate;
  options.certificate_seed = globals.seed;
  const std::string& f = fa.family;
  if (f == "cubic-pair") {
    return cubic_pair(expr_flag("h", fa.h), constant_flag("eta", fa.eta), ctx, options);
  }
  if (f == "pair-2-3") {
    return pair_2_3(expr_flag("h", fa.h), constant_flag("eta", fa.eta), ctx, options);
  }
  if (f == "pair-2-4") {
    return pair_2_4(expr_flag("h", fa.h), options);
  }
  if (f == "shift3") {
    const AffineMap L(constant_flag("q", fa.q), constant_flag("c", fa.c));
    return shift_solution(expr_flag("h", fa.h), L, constant_flag("A", fa.A), ctx, options);
  }
  if (f == "shift-exp-rhs") {
    const AffineMap L(constant_flag("q", fa.q), constant_flag("c", fa.c));
    return shift_exp_rhs(expr_flag("h", fa.h), L, constant_flag("A", fa.A), constant_flag("alpha", fa.alpha),
                         constant_flag("beta", fa.beta), ctx, options);
  }
  if (f == "exp-family") {
    const AffineMap L(constant_flag("q", fa.q), fa.c.empty() ? Complex(0.0, 0.0) : constant_flag("c", fa.c));
    return exp_family(fa.n, fa.m, constant_flag("A", fa.A), constant_flag("B", fa.B), expr_flag("g", fa.g), L,
                      fa.branch, options);
  }
  if (f == "scalar-exp") {
    const Complex alpha = constant_flag("alpha", fa.alpha);
    const Complex beta = constant_flag("beta", fa.beta);
    const Complex c = constant_flag("c", fa.c);
    if (auto d = optional_constant("d", fa.d)) {
      return scalar_exp_solution_with_d(alpha, beta, c, fa.n, *d, options);
    }
    return scalar_exp_solution(alpha, beta, c, fa.n, fa.branch, options);
  }
  if (f == "example1") {
    return example1_solution(constant_flag("alpha", fa.alpha), constant_flag("beta", fa.beta), ctx, options);
  }
  if (f == "example2") {
    SolutionSpec spec;
    spec.family = Family::Example2Inner;
    spec.L = AffineMap::shift(constant_flag("c", fa.c));
    spec.A = constant_flag("A", fa.A);
    spec.g_or_P = expr_flag("periodic", fa.periodic);
    spec.tau = constant_flag("tau", fa.tau);
    spec.theta_case = fa.theta_case == "1"   ? ThetaCase::Theta1
                      : fa.theta_case == "2" ? ThetaCase::Theta2
                                             : ThetaCase::None;
    return build_solution(spec, ctx, options);
  }
  if (f == "example3") {
    const Complex A = constant_flag("A", fa.A);
    const Complex B = constant_flag("B", fa.B);
    const Complex c = constant_flag("c", fa.c);
    const Complex beta = constant_flag("beta", fa.beta);
    if (fa.alpha.empty() && fa.a.empty()) {
      return example3(fa.n, fa.m, A, B, c, beta, fa.branch, options);
    }
    SolutionSpec spec;
    spec.family = Family::Example3;
    spec.n = fa.n;
    spec.m = fa.m;
    spec.A = A;
    spec.B = B;
    spec.L = AffineMap::shift(c);
    spec.alpha = constant_flag("alpha", fa.alpha);
    spec.beta = beta;
    spec.a = constant_flag("a", fa.a);
    spec.branch = fa.branch;
    return build_solution(spec, ctx, options);
  }
  if (f == "example4") {
    const Complex A = constant_flag("A", fa.A);
    const Complex B = constant_flag("B", fa.B);
    const Complex c = constant_flag("c", fa.c);
    const Expr periodic = expr_flag("periodic", fa.periodic);
    if (fa.a.empty()) {
      return example4(fa.n, A, B, c, periodic, fa.branch, options);
    }
    SolutionSpec spec;
    spec.family = Family::Example4;
    spec.n = fa.n;
    spec.m = fa.n;
    spec.A = A;
    spec.B = B;
    spec.L = AffineMap::shift(c);
    spec.g_or_P = periodic;
    spec.a = constant_flag("a", fa.a);
    spec.branch = fa.branch;
    return build_solution(spec, ctx, options);
  }
  // q-difference
  return q_difference_example(fa.n, fa.m, constant_flag("A", fa.A), constant_flag("B", fa.B), fa.branch, options);
}

MeroFn wp_fn(const EquianharmonicContext& ctx, bool derivative) {
  return MeroFn([&ctx, derivative](Complex z) {
    const WpValue v = wp(z, ctx);
    return MeroValue{derivative ? v.dp : v.p, v.at_pole};
  });
}

MeroFn sn_fn() {
  return MeroFn([](Complex z) {
    const SnValue v = sn(z);
    return MeroValue{v.s, v.at_pole};
  });
}

MeroFn named_fn(const std::string& name, const EquianharmonicContext& ctx) {
  if (name == "inv-z") {
    return MeroFn([](Complex z) { return MeroValue{1.0 / z, z == Complex(0.0, 0.0)}; });
  }
  if (name == "wp") {
    return wp_fn(ctx, false);
  }
  if (name == "wp-prime") {
    return wp_fn(ctx, true);
  }
  if (name == "wp-log-deriv") {
    return MeroFn([&ctx](Complex z) {
      const WpValue v = wp(z, ctx);
      return MeroValue{v.dp / v.p, v.at_pole || v.p == Complex(0.0, 0.0)};
    });
  }
  if (name == "sn") {
    return sn_fn();
  }
  // sn-log-deriv
  return MeroFn([](Complex z) {
    const SnValue v = sn(z);
    return MeroValue{v.ds / v.s, v.at_pole || v.s == Complex(0.0, 0.0)};
  });
}

Complex center_flag(const std::string& text, const EquianharmonicContext& ctx) {
  if (text == "theta1") {
    return ctx.theta1();
  }
  if (text == "theta2") {
    return ctx.theta2();
  }
  if (text == "sn-pole") {
    return sn_nearest_pole(Complex(0.0, 0.0));
  }
  return constant_flag("center", text);
}

Json error_json(const std::string& kind, const std::string& message) {
  Json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  return j;
}

}  // namespace

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const VerificationReport& r) {
  Json j;
  j["samples_requested"] = r.samples_requested;
  j["samples_used"] = r.samples_used;
  j["skipped_near_pole"] = r.skipped_near_pole;
  j["max_residual"] = r.max_residual;
  j["mean_residual"] = r.mean_residual;
  j["worst_point"] = to_json(r.worst_point);
  j["seed"] = r.seed;
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  return j;
}

Json to_json(const Certificate& cert) {
  Json j;
  j["passed"] = cert.passed;
  if (cert.shift) {
    const ShiftCertificate& s = *cert.shift;
    Json shift;
    shift["condition"] = s.condition;
    shift["delta"] = to_json(s.delta);
    shift["delta_spread"] = s.delta_spread;
    shift["tau"] = to_json(s.tau);
    shift["tau_coordinates"] = Json::array({s.tau_mu, s.tau_nu});
    j["shift"] = shift;
  }
  if (cert.relation) {
    const RelationCertificate& r = *cert.relation;
    j["relation"] = {{"max_residual", r.max_residual}, {"log_ratio", to_json(r.log_ratio)},
                     {"q_modulus", r.q_modulus}};
  }
  return j;
}

Json to_json(const Solution& s) {
  Json j;
  j["family"] = family_name(s.family);
  j["n"] = s.n;
  j["m"] = s.m;
  j["L"] = {{"q", to_json(s.L.q)}, {"c", to_json(s.L.c)}};
  j["rhs"] = print(s.rhs);
  Json params = Json::object();
  for (const auto& [name, value] : s.parameters) {
    params[name] = to_json(value);
  }
  j["parameters"] = params;
  j["certificate"] = to_json(s.certificate);
  Json sides = Json::object();
  for (const SideCondition& c : s.certificate.side_conditions) {
    sides[c.name] = c.residual;
  }
  j["side_condition_residuals"] = sides;
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fermat-type functional equations: elliptic constructions and numerical checks", "fermat"};
  app.set_help_flag("--help", "Print help and exit");
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--tol", globals.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--samples", globals.samples, "Number of sample points")->check(CLI::PositiveNumber);
  app.add_option("--seed", globals.seed, "Sampling seed");
  CLI::Option* radius_opt = app.add_option("--radius", globals.radius, "Sampling disk / contour radius")
                                ->check(CLI::PositiveNumber);
  app.add_option("--out", globals.out, "Write JSON to this file instead of stdout");
  app.add_option("--nodes", globals.nodes, "Initial trapezoid nodes for contour integrals")
      ->check(CLI::Range(4, 1 << 20));

  CLI::App* context_cmd = app.add_subcommand("context", "Lattice constants");

  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate wp, wp', sn or sn'");
  std::string eval_kind;
  std::string eval_z;
  eval_cmd->add_option("kind", eval_kind)->required()->check(CLI::IsMember({"wp", "wp-prime", "sn", "sn-prime"}));
  eval_cmd->add_option("--z", eval_z, "Point, as a constant expression")->required();

  FamilyArgs construct_args;
  CLI::App* construct_cmd = app.add_subcommand("construct", "Build a solution and report its certificate");
  add_family_flags(construct_cmd, construct_args);

  FamilyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Build a solution and sweep the equation residual");
  add_family_flags(verify_cmd, verify_args);

  std::string residue_fn;
  std::string residue_center = "0";
  CLI::App* residue_cmd = app.add_subcommand("residue", "Contour-integral residue");
  residue_cmd->add_option("--fn", residue_fn)
      ->required()
      ->check(CLI::IsMember({"inv-z", "wp", "wp-prime", "wp-log-deriv", "sn", "sn-log-deriv"}));
  residue_cmd->add_option("--center", residue_center, "Constant expression, theta1, theta2 or sn-pole");

  std::string order_fn;
  std::string order_center = "0";
  CLI::App* order_cmd = app.add_subcommand("order", "Zero/pole order by the argument principle");
  order_cmd->add_option("--fn", order_fn)->required()->check(CLI::IsMember({"inv-z", "wp", "wp-prime", "sn"}));
  order_cmd->add_option("--center", order_center, "Constant expression, theta1, theta2 or sn-pole");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!globals.out.empty()) {
    file.open(globals.out);
    if (!file) {
      err << "error: cannot open " << globals.out << "\n";
      return kUsage;
    }
    sink = &file;
  }
  auto emit = [sink](const Json& j) { *sink << j.dump(2) << "\n"; };

  const bool radius_given = radius_opt->count() > 0;
  try {
    const EquianharmonicContext ctx;
    if (*context_cmd) {
      Json j;
      j["omega1"] = to_json(ctx.omega1());
      j["omega2"] = to_json(ctx.omega2());
      j["theta1"] = to_json(ctx.theta1());
      j["theta2"] = to_json(ctx.theta2());
      j["e1"] = ctx.e1();
      emit(j);
      return kOk;
    }
    if (*eval_cmd) {
      const Complex z = constant_flag("z", eval_z);
      Complex value;
      bool at_pole = false;
      if (eval_kind == "wp" || eval_kind == "wp-prime") {
        const WpValue v = wp(z, ctx);
        value = eval_kind == "wp" ? v.p : v.dp;
        at_pole = v.at_pole;
      } else {
        const SnValue v = sn(z);
        value = eval_kind == "sn" ? v.s : v.ds;
        at_pole = v.at_pole;
      }
      emit(Json{{"re", value.real()}, {"im", value.imag()}, {"at_pole", at_pole}});
      return kOk;
    }
    if (*construct_cmd || *verify_cmd) {
      const FamilyArgs& fa = *construct_cmd ? construct_args : verify_args;
      if ((fa.family == "exp-family" || fa.family == "q-difference") && open_case(fa.n, fa.m)) {
        Json j = error_json("open", "no construction is known for (n, m) = (" + std::to_string(fa.n) + ", " +
                                        std::to_string(fa.m) + ")");
        j["status"] = "open";
        emit(j);
        return kComputation;
      }
      const Solution s = construct(fa, ctx, globals);
      if (*construct_cmd) {
        emit(to_json(s));
        return s.certificate.passed ? kOk : kVerificationFailed;
      }
      const VerificationReport report = verify_equation(s.f, s.g, s.n, s.m, s.rhs, s.L, Disk{0.0, globals.radius},
                                                        globals.samples, globals.tol, globals.seed);
      emit(to_json(report));
      return report.passed ? kOk : kVerificationFailed;
    }
    const bool residue_mode = static_cast<bool>(*residue_cmd);
    const std::string& fn_name = residue_mode ? residue_fn : order_fn;
    const Complex center = center_flag(residue_mode ? residue_center : order_center, ctx);
    const double radius = radius_given ? globals.radius : 0.1 * std::abs(ctx.omega1());
    const MeroFn fn = named_fn(fn_name, ctx);
    ContourOptions copts;
    copts.nodes = globals.nodes;
    copts.max_nodes = std::max(copts.max_nodes, globals.nodes);
    Json j;
    j["fn"] = fn_name;
    j["center"] = to_json(center);
    j["radius"] = radius;
    if (residue_mode) {
      const Complex full = residue_at(fn, center, radius, copts);
      const Complex half = residue_at(fn, center, 0.5 * radius, copts);
      j["residue"] = to_json(full);
      j["residue_half_radius"] = to_json(half);
      j["radius_disagreement"] = std::abs(full - half);
    } else {
      j["order"] = order_at(fn, center, radius, copts);
    }
    emit(j);
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParameterError& e) {
    emit(error_json("parameter", e.what()));
  } catch (const NotASolutionError& e) {
    emit(error_json("not-a-solution", e.what()));
  } catch (const ClassificationError& e) {
    emit(error_json("classification", e.what()));
  } catch (const std::exception& e) {
    emit(error_json("computation", e.what()));
  }
  return kComputation;
}

}  // namespace fermat::cli
