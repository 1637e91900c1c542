#include "bjortho/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bjortho {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) parse_fail(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_fail(std::string(what) + " must be finite");
  return v;
}

std::vector<double> number_array(const json& j, const char* what) {
  if (!j.is_array()) parse_fail(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(finite_number(e, what));
  return out;
}

// Non-finite values become null rather than invalid JSON.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json complex_to_json(Complex z) { return json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

CVector vector_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re")) parse_fail("vector needs an object with \"re\"");
  const std::vector<double> re = number_array(j.at("re"), "re");
  if (re.empty()) parse_fail("vector must be nonempty");
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("im")) {
    im = number_array(j.at("im"), "im");
    if (im.size() != re.size()) throw Error(ErrorCode::kDimensionMismatch, "\"re\" and \"im\" differ in length");
  }
  CVector x(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) x(static_cast<Eigen::Index>(i)) = Complex(re[i], im[i]);
  return x;
}

json vector_to_json(const CVector& x) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    re.push_back(number(x(i).real()));
    im.push_back(number(x(i).imag()));
  }
  return json{{"re", re}, {"im", im}};
}

COperator operator_from_json(const json& j) {
  if (!j.is_object()) parse_fail("matrix must be a JSON object");
  for (const char* key : {"rows", "cols", "re"}) {
    if (!j.contains(key)) parse_fail(std::string("matrix is missing \"") + key + "\"");
  }
  if (!j.at("rows").is_number_integer() || !j.at("cols").is_number_integer()) {
    parse_fail("rows and cols must be integers");
  }
  const long rows = j.at("rows").get<long>();
  const long cols = j.at("cols").get<long>();
  if (rows < 1 || cols < 1) throw Error(ErrorCode::kDimensionMismatch, "matrix shape must be positive");
  auto read_part = [&](const json& part, const char* name) {
    Eigen::MatrixXd m(rows, cols);
    if (!part.is_array() || static_cast<long>(part.size()) != rows) {
      throw Error(ErrorCode::kDimensionMismatch, std::string(name) + " must have `rows` rows");
    }
    for (long i = 0; i < rows; ++i) {
      const std::vector<double> row = number_array(part.at(static_cast<std::size_t>(i)), name);
      if (static_cast<long>(row.size()) != cols) {
        throw Error(ErrorCode::kDimensionMismatch, std::string(name) + " row length differs from `cols`");
      }
      for (long c = 0; c < cols; ++c) m(i, c) = row[static_cast<std::size_t>(c)];
    }
    return m;
  };
  const Eigen::MatrixXd re = read_part(j.at("re"), "re");
  const Eigen::MatrixXd im = j.contains("im") ? read_part(j.at("im"), "im") : Eigen::MatrixXd::Zero(rows, cols);
  COperator t(rows, cols);
  t.real() = re;
  t.imag() = im;
  return t;
}

json operator_to_json(const COperator& t) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    json rr = json::array(), ri = json::array();
    for (Eigen::Index c = 0; c < t.cols(); ++c) {
      rr.push_back(number(t(i, c).real()));
      ri.push_back(number(t(i, c).imag()));
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return json{{"rows", t.rows()}, {"cols", t.cols()}, {"re", re}, {"im", im}};
}

NumericConfig config_from_json(const json& j, NumericConfig cfg) {
  if (!j.is_object()) parse_fail("config must be a JSON object");
  try {
    if (j.contains("attain_tol")) cfg.attain_tol = j.at("attain_tol").get<double>();
    if (j.contains("orth_tol")) cfg.orth_tol = j.at("orth_tol").get<double>();
    if (j.contains("n_alpha")) cfg.n_alpha = j.at("n_alpha").get<int>();
    if (j.contains("n_starts")) cfg.n_starts = j.at("n_starts").get<int>();
    if (j.contains("max_iter")) cfg.max_iter = j.at("max_iter").get<int>();
    if (j.contains("sphere_grid")) cfg.sphere_grid = j.at("sphere_grid").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    parse_fail(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

json config_to_json(const NumericConfig& cfg) {
  return json{{"attain_tol", cfg.attain_tol}, {"orth_tol", cfg.orth_tol}, {"n_alpha", cfg.n_alpha},
              {"n_starts", cfg.n_starts},     {"max_iter", cfg.max_iter}, {"sphere_grid", cfg.sphere_grid},
              {"seed", cfg.seed}};
}

PExponent exponent_from_string(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return PExponent::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidExponent, "cannot parse p from '" + s + "'");
  }
  if (used != s.size()) throw Error(ErrorCode::kInvalidExponent, "cannot parse p from '" + s + "'");
  return PExponent(v);
}

json exponent_to_json(const PExponent& p) { return p.is_infinite() ? json("inf") : json(p.value()); }

json to_json(const NormResult& r) {
  json maxs = json::array();
  for (const auto& m : r.maximizers) maxs.push_back(vector_to_json(m));
  return json{{"value", number(r.value)},
              {"maximizers", maxs},
              {"method", norm_method_name(r.method)},
              {"converged_starts", r.converged_starts}};
}

json to_json(const AttainmentSet& s) {
  json reps = json::array();
  for (const auto& m : s.reps) reps.push_back(vector_to_json(m));
  return json{{"norm", number(s.norm)},
              {"reps", reps},
              {"cluster_count", s.reps.size()},
              {"tol", s.tol},
              {"pairwise_min_distance", number(s.pairwise_min_distance)},
              {"saturated", s.saturated},
              {"all_sphere", s.saturated},
              {"subspace_dim", s.subspace_dim}};
}

json to_json(const MembershipVerdict& m) {
  return json{{"in_plus", m.in_plus},         {"in_minus", m.in_minus},
              {"margin_plus", number(m.margin_plus)}, {"margin_minus", number(m.margin_minus)},
              {"t_plus", number(m.t_plus)},   {"t_minus", number(m.t_minus)},
              {"epsilon", m.epsilon},         {"theta", m.direction.theta()}};
}

json to_json(const VectorOrthVerdict& v) {
  json routes = json::object();
  if (v.has_analytic) routes["analytic"] = number(v.analytic_residual);
  routes["optimization"] = number(v.min_value);
  json out{{"orthogonal", v.orthogonal},
           {"routes", routes},
           {"optimization_orthogonal", v.optimization_orthogonal},
           {"argmin_lambda", complex_to_json(v.argmin_lambda)},
           {"norm_x", number(v.norm_x)},
           {"tolerance_used", v.tolerance_used},
           {"routes_agree", v.routes_agree()}};
  if (v.has_analytic) {
    out["analytic_orthogonal"] = v.analytic_orthogonal;
    out["semi_inner_product"] = complex_to_json(v.semi_inner);
  }
  return out;
}

json to_json(const OrthVerdict& v) {
  return json{{"orthogonal", v.orthogonal},
              {"route", orth_route_name(v.route)},
              {"norm_t", number(v.norm_t)},
              {"min_value", number(v.min_value)},
              {"argmin_lambda", complex_to_json(v.argmin_lambda)},
              {"tolerance_used", v.tolerance_used},
              {"grid_size", v.grid_size},
              {"worst_margin", number(v.worst_margin)}};
}

json to_json(const WitnessTable& t) {
  json entries = json::array();
  for (const auto& e : t.entries) {
    entries.push_back(json{{"theta", e.alpha.theta()},
                           {"x_index", e.x_index},
                           {"y_index", e.y_index},
                           {"plus_margin", number(e.plus_margin)},
                           {"minus_margin", number(e.minus_margin)}});
  }
  json reps = json::array();
  for (const auto& r : t.reps) reps.push_back(vector_to_json(r));
  return json{{"grid_size", t.grid_size}, {"entries", entries}, {"reps", reps}, {"complete", t.complete()}};
}

json to_json(const PhiSplitResult& r) {
  json out{{"verdict", to_json(r.verdict)}, {"found", r.found}};
  if (r.found) {
    out["phi1"] = r.phi1;
    out["phi2"] = r.phi2;
    out["x"] = vector_to_json(r.reps[static_cast<std::size_t>(r.x)]);
    out["y"] = vector_to_json(r.reps[static_cast<std::size_t>(r.y)]);
    out["z"] = vector_to_json(r.reps[static_cast<std::size_t>(r.z)]);
    out["w"] = vector_to_json(r.reps[static_cast<std::size_t>(r.w)]);
  }
  return out;
}

json to_json(const ConnectedResult& r) {
  json out{{"verdict", to_json(r.verdict)},
           {"assume_connected", r.assume_connected},
           {"per_alpha", r.per_alpha},
           {"per_alpha_complete", r.per_alpha_complete},
           {"found", r.found},
           {"cluster_count", r.reps.size()}};
  if (r.connectivity_sensitive) out["flag"] = "CONNECTIVITY_SENSITIVE";
  if (r.found) {
    out["theta"] = r.theta;
    out["x"] = vector_to_json(r.reps[static_cast<std::size_t>(r.x)]);
    out["y"] = vector_to_json(r.reps[static_cast<std::size_t>(r.y)]);
  }
  return out;
}

json to_json(const MtStructureReport& r) {
  auto tally = [](const CheckTally& t) {
    return json{{"run", t.run}, {"passed", t.passed}, {"worst_margin", number(t.worst_margin)}};
  };
  return json{{"preimage_orthogonality", tally(r.preimage_orth)},
              {"plus_image", tally(r.plus_image)},
              {"minus_image", tally(r.minus_image)},
              {"kernel_inclusion", tally(r.kernel_inclusion)},
              {"kernel_dim", r.kernel_dim},
              {"reps", r.reps},
              {"ok", r.ok()}};
}

json to_json(const LeftSymClass& c) {
  json out{{"family", left_sym_family_name(c.family)},
           {"phases", c.phases},
           {"residual", number(c.residual)},
           {"checks_run", c.checks_run},
           {"checks_passed", c.checks_passed}};
  if (c.refuting_y) {
    out["refuting_y"] = vector_to_json(*c.refuting_y);
    out["refuting_residual"] = number(c.refuting_residual);
  }
  return out;
}

json to_json(const NotLeftSymCertificate& c) {
  json reps = json::array();
  for (const auto& r : c.reps_a) reps.push_back(vector_to_json(r));
  json evidence = json::array();
  for (const auto& e : c.evidence) {
    evidence.push_back(json{{"theta", e.alpha.theta()},
                            {"worst_minus_margin", number(e.worst_minus)},
                            {"worst_plus_margin", number(e.worst_plus)}});
  }
  return json{{"t_orth_a", c.t_orth_a.orthogonal},
              {"t_orth_a_verdict", to_json(c.t_orth_a)},
              {"a_orth_t", c.a_orth_t},
              {"lambda_star", complex_to_json(c.lambda_star)},
              {"norm_a", number(c.norm_a)},
              {"min_norm_a_plus_lambda_t", number(c.min_a_plus_lambda_t)},
              {"delta", number(c.delta)},
              {"reps_a", reps},
              {"evidence", evidence},
              {"directions_without_minus_witness", c.directions_without_minus},
              {"directions_without_plus_witness", c.directions_without_plus}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    parse_fail("'" + path + "': " + e.what());
  }
}

namespace {

void dump_into(const json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_into(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ',';
        newline(depth + 1);
        dump_into(j[i], indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out;
}

}  // namespace bjortho
