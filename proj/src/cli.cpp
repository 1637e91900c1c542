#include "bjortho/cli.hpp"

#include "bjortho/json_io.hpp"
#include "bjortho/lp_norm.hpp"
#include "bjortho/lp2_exact.hpp"
#include "bjortho/operator_engine.hpp"
#include "bjortho/operator_orthogonality.hpp"
#include "bjortho/suites.hpp"
#include "bjortho/vector_orthogonality.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

namespace bjortho {

namespace {

struct Options {
  std::string config_path;
  std::string p = "2";
  std::string file1, file2;
  std::string route = "direct";
  bool assume_connected = false;
  std::string suite;
  std::int64_t samples = 0;
  std::optional<std::uint64_t> seed;
  std::int64_t case_index = 0;
  bool timing = false;
};

NumericConfig load_config(const Options& o) {
  NumericConfig cfg;
  if (!o.config_path.empty()) cfg = config_from_json(read_json_file(o.config_path), cfg);
  if (const char* env = std::getenv("BJORTHO_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      cfg.seed = std::stoull(env, &used, 0);
      if (env[used] != '\0') throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidConfig, std::string("BJORTHO_SEED is not an integer: '") + env + "'");
    }
  }
  if (o.seed) cfg.seed = *o.seed;
  cfg.validate();
  return cfg;
}

void emit(std::ostream& out, const json& doc) { out << dump_json(doc) << '\n'; }

int run_norm(const Options& o, const NumericConfig& cfg, std::ostream& out, std::ostream& err) {
  const COperator t = operator_from_json(read_json_file(o.file1));
  const PExponent p = exponent_from_string(o.p);
  const NormResult r = operator_norm(t, p, cfg);
  json doc = to_json(r);
  doc["p"] = exponent_to_json(p);
  emit(out, doc);
  err << "norm: " << r.value << " (" << norm_method_name(r.method) << ", " << r.maximizers.size()
      << " maximizer(s))\n";
  return 0;
}

int run_mt(const Options& o, const NumericConfig& cfg, std::ostream& out, std::ostream& err) {
  const COperator t = operator_from_json(read_json_file(o.file1));
  const PExponent p = exponent_from_string(o.p);
  const AttainmentSet s = attainment_set(t, p, cfg);
  json doc = to_json(s);
  doc["p"] = exponent_to_json(p);
  emit(out, doc);
  err << "mt: norm " << s.norm << ", " << s.reps.size() << " representative(s)" << (s.saturated ? ", saturated" : "")
      << '\n';
  return 0;
}

int run_orth_vec(const Options& o, const NumericConfig& cfg, std::ostream& out, std::ostream& err) {
  const CVector x = vector_from_json(read_json_file(o.file1));
  const CVector y = vector_from_json(read_json_file(o.file2));
  if (x.size() != y.size()) throw Error(ErrorCode::kDimensionMismatch, "x and y differ in length");
  const PExponent p = exponent_from_string(o.p);
  const VectorOrthVerdict v = bj_orthogonal_vectors(x, y, p, cfg);
  const ConeMembership cm = global_cone_membership(x, y, p, cfg);
  json doc = to_json(v);
  doc["p"] = exponent_to_json(p);
  json cones{{"grid_size", cm.grid_size},
             {"in_x_plus", cm.in_x_plus},
             {"in_x_minus", cm.in_x_minus},
             {"worst_margin_plus", cm.worst_margin_plus},
             {"worst_margin_minus", cm.worst_margin_minus}};
  if (cm.has_analytic) {
    cones["analytic_in_x_plus"] = cm.analytic_in_plus;
    cones["analytic_in_x_minus"] = cm.analytic_in_minus;
  }
  doc["cones"] = cones;
  emit(out, doc);
  err << "orth-vec: " << (v.orthogonal ? "orthogonal" : "not orthogonal") << " (min " << v.min_value << " vs ||x|| "
      << v.norm_x << ")\n";
  return 0;
}

int run_orth_op(const Options& o, const NumericConfig& cfg, std::ostream& out, std::ostream& err) {
  const COperator t = operator_from_json(read_json_file(o.file1));
  const COperator a = operator_from_json(read_json_file(o.file2));
  const PExponent p = exponent_from_string(o.p);
  json doc;
  bool orth = false;
  if (o.route == "direct") {
    const OrthVerdict v = op_orth_direct(t, a, p, cfg);
    doc = to_json(v);
    orth = v.orthogonal;
  } else if (o.route == "witness") {
    const WitnessResult w = op_orth_witness(t, a, p, cfg);
    doc = to_json(w.verdict);
    doc["table"] = to_json(w.table);
    orth = w.verdict.orthogonal;
  } else if (o.route == "phi-split") {
    const PhiSplitResult r = op_orth_phi_split(t, a, p, cfg);
    doc = to_json(r);
    orth = r.verdict.orthogonal;
  } else {
    const ConnectedResult r = op_orth_connected(t, a, p, cfg, o.assume_connected);
    doc = to_json(r);
    orth = r.verdict.orthogonal;
  }
  doc["p"] = exponent_to_json(p);
  emit(out, doc);
  err << "orth-op (" << o.route << "): " << (orth ? "orthogonal" : "not orthogonal") << '\n';
  return 0;
}

int run_leftsym(const Options& o, const NumericConfig& cfg, std::ostream& out, std::ostream& err) {
  const CVector x = vector_from_json(read_json_file(o.file1));
  const PExponent p = exponent_from_string(o.p);
  const double nx = vector_pnorm(x, p);
  if (x.size() == 2 && std::abs(nx - 1.0) > 1e-9) {
    throw Error(ErrorCode::kParseError, "x must be a unit vector in l_p^2");
  }
  const LeftSymClass c = classify_left_symmetric_point(x, p, 1e-9, cfg);
  json doc = to_json(c);
  doc["p"] = exponent_to_json(p);
  emit(out, doc);
  err << "leftsym-point: " << left_sym_family_name(c.family) << ", " << c.checks_passed << "/" << c.checks_run
      << " functional checks passed\n";
  return 0;
}

int run_counterexample(const Options& o, const NumericConfig& cfg, std::ostream& out, std::ostream& err) {
  const PExponent p = exponent_from_string(o.p);
  const OperatorPair pr = counterexample_pair();
  const NotLeftSymCertificate c = certify_not_left_symmetric(pr.t, pr.a, p, cfg);
  json doc = to_json(c);
  doc["p"] = exponent_to_json(p);
  doc["T"] = operator_to_json(pr.t);
  doc["A"] = operator_to_json(pr.a);
  emit(out, doc);
  err << "counterexample: T perp_B A, A not perp_B T, delta " << c.delta << '\n';
  return 0;
}

int run_suites(const Options& o, const NumericConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names;
  if (o.suite == "all") {
    for (const auto& s : registered_suites()) names.push_back(s.name);
  } else {
    names.push_back(o.suite);
  }
  json reports = json::array();
  bool all_ok = true;
  for (const auto& name : names) {
    const SuiteReport r = run_suite(name, cfg, o.samples);
    all_ok = all_ok && r.passed();
    reports.push_back(to_json(r, o.timing));
    err << name << ": " << r.cases_passed << "/" << r.cases_run << " passed, " << r.excluded_borderline
        << " borderline excluded, worst margin " << r.worst_margin << ", " << r.wall_time_ms << " ms\n";
  }
  if (names.size() == 1) {
    emit(out, reports.front());
  } else {
    emit(out, json{{"suites", reports}, {"passed", all_ok}});
  }
  return all_ok ? 0 : 1;
}

int run_replay(const Options& o, const NumericConfig& cfg, std::ostream& out, std::ostream& err) {
  const ReplayResult r = replay_case(o.suite, cfg, o.case_index);
  const bool ok = r.borderline || r.routes.empty();
  emit(out, json{{"suite_name", o.suite},
                 {"case", o.case_index},
                 {"seed", cfg.seed},
                 {"inputs", r.inputs},
                 {"failed_routes", r.routes},
                 {"margin", r.margin},
                 {"borderline", r.borderline},
                 {"passed", ok}});
  err << o.suite << " case " << o.case_index << ": "
      << (r.borderline ? "borderline" : (ok ? "passed" : "FAILED")) << '\n';
  return ok ? 0 : 1;
}

int input_error(std::ostream& out, std::ostream& err, const std::string& code, const std::string& detail) {
  emit(out, json{{"error", code}, {"detail", detail}});
  err << "error: " << code << ": " << detail << '\n';
  return 2;
}

}  // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Birkhoff-James orthogonality on finite-dimensional l_p spaces", "bjortho"};
  app.require_subcommand(1);
  app.add_option("--config", o.config_path, "JSON file with NumericConfig fields");

  const auto add_p = [&](CLI::App* sub) { sub->add_option("--p", o.p, "exponent, a number >= 1 or 'inf'")->required(); };

  CLI::App* norm = app.add_subcommand("norm", "operator norm and maximizers");
  norm->add_option("matrix", o.file1)->required();
  add_p(norm);
  CLI::App* mt = app.add_subcommand("mt", "norm attainment set");
  mt->add_option("matrix", o.file1)->required();
  add_p(mt);
  CLI::App* ov = app.add_subcommand("orth-vec", "B-J orthogonality of two vectors");
  ov->add_option("x", o.file1)->required();
  ov->add_option("y", o.file2)->required();
  add_p(ov);
  CLI::App* oo = app.add_subcommand("orth-op", "B-J orthogonality of two operators");
  oo->add_option("T", o.file1)->required();
  oo->add_option("A", o.file2)->required();
  add_p(oo);
  oo->add_option("--route", o.route)->check(CLI::IsMember({"direct", "witness", "phi-split", "connected"}));
  oo->add_flag("--assume-connected", o.assume_connected, "treat M_T as connected");
  CLI::App* ls = app.add_subcommand("leftsym-point", "classify a unit vector of l_p^2");
  ls->add_option("x", o.file1)->required();
  add_p(ls);
  CLI::App* ce = app.add_subcommand("counterexample", "certificate that T perp_B A but not A perp_B T");
  add_p(ce);
  CLI::App* su = app.add_subcommand("suite", "run a property suite, or all of them");
  su->add_option("name", o.suite)->required();
  su->add_option("--samples", o.samples, "cases per suite (default: suite default)");
  su->add_option("--seed", o.seed, "overrides config and BJORTHO_SEED");
  su->add_flag("--timing", o.timing, "include wall_time_ms in the report");
  CLI::App* rp = app.add_subcommand("replay", "rerun a single suite case");
  rp->add_option("name", o.suite)->required();
  rp->add_option("--case", o.case_index)->required();
  rp->add_option("--seed", o.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return input_error(out, err, "UsageError", e.what());
  }

  try {
    const NumericConfig cfg = load_config(o);
    if (norm->parsed()) return run_norm(o, cfg, out, err);
    if (mt->parsed()) return run_mt(o, cfg, out, err);
    if (ov->parsed()) return run_orth_vec(o, cfg, out, err);
    if (oo->parsed()) return run_orth_op(o, cfg, out, err);
    if (ls->parsed()) return run_leftsym(o, cfg, out, err);
    if (ce->parsed()) return run_counterexample(o, cfg, out, err);
    if (su->parsed()) return run_suites(o, cfg, out, err);
    if (rp->parsed()) return run_replay(o, cfg, out, err);
  } catch (const Error& e) {
    return input_error(out, err, error_code_name(e.code()), e.detail());
  } catch (const json::exception& e) {
    return input_error(out, err, "ParseError", e.what());
  }
  return input_error(out, err, "UsageError", "no subcommand");
}

int cli_main(int argc, char** argv) { return cli_main(argc, argv, std::cout, std::cerr); }

}  // namespace bjortho
