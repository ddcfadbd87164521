#include "holocontact_cli/cli.hpp"

#include "holocontact/holocontact.hpp"

#include <cmath>
#include <set>

namespace holocontact::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kTasks = {"pointwise",         "along-z",         "curvature",
                                      "verify-recursions", "verify-appendix", "rkhs-quotient"};

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw InputError("config " + path + ": " + msg);
}

const json& need(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path + "." + key, "missing");
  return *it;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<int>();
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  return j.get<double>();
}

Complex as_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_string()) {
    try {
      const Expr e = parse_kernel(j.get<std::string>());
      if (e.max_variable() != 0) bad(path, "complex literal must not contain variables");
      return evaluate(e, Point{}, Point{});
    } catch (const ParseError& err) {
      bad(path, err.what());
    }
  }
  bad(path, "expected a number, [re, im] or a literal string such as \"0.1-0.2i\"");
}

Point as_point(const json& j, std::size_t m, const std::string& path) {
  if (!j.is_array() || j.size() != m) bad(path, "expected " + std::to_string(m) + " coordinates");
  Point p;
  for (std::size_t k = 0; k < m; ++k) p.push_back(as_complex(j[k], path + "[" + std::to_string(k) + "]"));
  return p;
}

std::vector<std::vector<std::string>> string_rows(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) bad(path, "expected a non-empty array of rows");
  std::vector<std::vector<std::string>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (j[r].is_string()) {  // rank-1 shorthand
      rows.push_back({j[r].get<std::string>()});
      continue;
    }
    if (!j[r].is_array()) bad(rp, "expected an array of strings");
    std::vector<std::string> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      if (!j[r][c].is_string()) bad(rp + "[" + std::to_string(c) + "]", "expected an expression string");
      row.push_back(j[r][c].get<std::string>());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

BundleSpec as_bundle(const json& j, const std::string& path) {
  const std::string label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : path;
  const int m = as_int(need(j, "dimension", path), path + ".dimension");
  if (m < 1) bad(path + ".dimension", "must be >= 1");
  auto rows = string_rows(need(j, "gram", path), path + ".gram");
  if (j.contains("rank") && as_int(j["rank"], path + ".rank") != static_cast<int>(rows.size()))
    bad(path + ".rank", "does not match the number of Gram rows");
  try {
    return BundleSpec::from_text(label, static_cast<std::size_t>(m), rows);
  } catch (const ParseError& e) {
    bad(path + ".gram", e.what());
  } catch (const std::invalid_argument& e) {
    bad(path + ".gram", e.what());
  }
}

std::vector<Point> as_points(const json& cfg, std::size_t m) {
  std::vector<Point> pts;
  if (cfg.contains("points")) {
    const json& p = cfg["points"];
    if (!p.is_array()) bad("points", "expected an array of points");
    for (std::size_t k = 0; k < p.size(); ++k) pts.push_back(as_point(p[k], m, "points[" + std::to_string(k) + "]"));
  }
  if (cfg.contains("grid")) {
    const json& ranges = need(cfg["grid"], "ranges", "grid");
    if (!ranges.is_array() || ranges.size() != m) bad("grid.ranges", "expected one range per coordinate");
    std::vector<std::vector<Complex>> axes;
    for (std::size_t k = 0; k < m; ++k) {
      const std::string rp = "grid.ranges[" + std::to_string(k) + "]";
      const double lo = as_double(need(ranges[k], "min", rp), rp + ".min");
      const double hi = as_double(need(ranges[k], "max", rp), rp + ".max");
      const int count = as_int(need(ranges[k], "count", rp), rp + ".count");
      if (count < 1) bad(rp + ".count", "must be >= 1");
      std::vector<Complex> axis;
      for (int c = 0; c < count; ++c)
        axis.emplace_back(count == 1 ? lo : lo + (hi - lo) * c / (count - 1), 0.0);
      axes.push_back(std::move(axis));
    }
    std::vector<std::size_t> idx(m, 0);
    while (true) {
      Point p;
      for (std::size_t k = 0; k < m; ++k) p.push_back(axes[k][idx[k]]);
      pts.push_back(std::move(p));
      std::size_t k = m;
      while (k > 0 && ++idx[k - 1] == axes[k - 1].size()) idx[--k] = 0;
      if (k == 0) break;
    }
  }
  if (pts.empty()) pts.push_back(Point(m, Complex(0.0)));
  return pts;
}

json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

json to_json(const Point& p) {
  json a = json::array();
  for (auto c : p) a.push_back(to_json(c));
  return a;
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const std::vector<Residual>& rs) {
  json a = json::array();
  for (const auto& r : rs)
    a.push_back({{"key", r.key}, {"value", r.value}, {"scale", r.scale}, {"ratio", r.ratio()}});
  return a;
}

json to_json(const PointReport& p) {
  json j = {{"point", to_json(p.point)},
            {"method", p.method},
            {"verdict", to_string(p.verdict)},
            {"premise", to_json(p.premise)},
            {"analytic", to_json(p.analytic)},
            {"geometric", to_json(p.geometric)},
            {"analytic_verdict", to_string(p.analytic_verdict)},
            {"geometric_verdict", to_string(p.geometric_verdict)},
            {"routes_agree", p.routes_agree}};
  if (p.spot_check) {
    j["spot_check"] = to_string(*p.spot_check);
    j["spot_residuals"] = to_json(p.spot_residuals);
  }
  return j;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Verified: return kVerified;
    case Verdict::Refuted: return kRefuted;
    default: return kInconclusive;
  }
}

struct Context {
  const json& cfg;
  int order;
  double tol;
  std::uint64_t seed;
};

std::optional<std::vector<Expr>> as_candidate(const json& cfg, Eigen::Index rank) {
  if (!cfg.contains("candidate")) return std::nullopt;
  auto rows = string_rows(cfg["candidate"], "candidate");
  if (static_cast<Eigen::Index>(rows.size()) != rank) bad("candidate", "expected rank rows");
  std::vector<Expr> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<Eigen::Index>(rows[r].size()) != rank) bad("candidate[" + std::to_string(r) + "]", "wrong length");
    for (auto& s : rows[r]) {
      try {
        out.push_back(parse_kernel(s));
      } catch (const ParseError& e) {
        bad("candidate[" + std::to_string(r) + "]", e.what());
      }
    }
  }
  return out;
}

RunResult run_contact(const Context& cx, bool along) {
  ContactProblem pr;
  pr.bundle = as_bundle(need(cx.cfg, "bundle", "root"), "bundle");
  pr.bundle_tilde = as_bundle(need(cx.cfg, "bundle_tilde", "root"), "bundle_tilde");
  if (pr.bundle.dimension != pr.bundle_tilde.dimension || pr.bundle.rank != pr.bundle_tilde.rank)
    bad("bundle_tilde", "dimension and rank must match bundle");
  pr.order = cx.order;
  pr.mode = along ? ContactMode::AlongZ : ContactMode::Pointwise;
  pr.points = as_points(cx.cfg, pr.bundle.dimension);
  pr.candidate = as_candidate(cx.cfg, pr.bundle.rank);
  pr.tolerance = cx.tol;
  if (cx.cfg.contains("parallel") && cx.cfg["parallel"].is_boolean()) pr.parallel = cx.cfg["parallel"].get<bool>();
  if (along)
    for (std::size_t k = 0; k < pr.points.size(); ++k)
      if (std::abs(pr.points[k][0]) > 1e-14) bad("points[" + std::to_string(k) + "]", "along-z points need z1 = 0");

  const ContactReport rep = along ? alongZ_check(pr) : pointwise_check(pr);
  RunResult out;
  json pts = json::array();
  for (const auto& p : rep.points) pts.push_back(to_json(p));
  out.report["results"] = {{"points", pts}};
  out.report["summary"] = {{"verdict", to_string(rep.verdict)}, {"routes_agree", rep.routes_agree}};
  out.exit_code = exit_for(rep.verdict);
  return out;
}

RunResult run_curvature(const Context& cx) {
  const json& cfg = cx.cfg;
  CurvatureRequest req;
  if (cfg.contains("curvature")) {
    const json& c = cfg["curvature"];
    if (c.contains("i")) req.i = as_int(c["i"], "curvature.i");
    if (c.contains("j")) req.j = as_int(c["j"], "curvature.j");
    if (c.contains("r")) req.r = as_int(c["r"], "curvature.r");
    if (c.contains("t")) req.t = as_int(c["t"], "curvature.t");
  }
  json results = json::array();
  for (const char* key : {"bundle", "bundle_tilde"}) {
    if (!cfg.contains(key)) continue;
    const BundleSpec b = as_bundle(cfg[key], key);
    if (req.i < 1 || req.j < 1 || req.i > b.dimension || req.j > b.dimension)
      bad("curvature", "direction out of range");
    if (req.r < 0 || req.t < 0) bad("curvature", "derivative counts must be >= 0");
    json pts = json::array();
    for (const auto& p : as_points(cfg, b.dimension)) {
      const HermJet H = gram_jet(b, p, req.r + 1, req.t + 1);
      pts.push_back({{"point", to_json(p)}, {"value", to_json(curvature_derivative(H, req))}});
    }
    results.push_back({{"bundle", b.label}, {"points", pts}});
  }
  if (results.empty()) bad("bundle", "missing");
  RunResult out;
  out.report["results"] = {{"request", {{"i", req.i}, {"j", req.j}, {"r", req.r}, {"t", req.t}}},
                           {"bundles", results}};
  out.report["summary"] = {{"verdict", "completed"}};
  out.exit_code = kVerified;
  return out;
}

RunResult run_recursions(const Context& cx) {
  const BundleSpec b = as_bundle(need(cx.cfg, "bundle", "root"), "bundle");
  std::vector<Residual> all;
  json pts = json::array();
  for (const auto& p : as_points(cx.cfg, b.dimension)) {
    const HermJet H = gram_jet(b, p, cx.order + 1, cx.order + 1);
    std::vector<Residual> rs;
    for (std::size_t j = 1; j <= b.dimension; ++j) {
      const HermJet K = curvature(H, 1, j);
      for (int n = 1; n <= cx.order; ++n) {
        const Matrix rec = K1j_recursion(H, j, n);
        const Matrix direct = covariant_derivative(K, H, 1, n - 1, j, 0).value();
        rs.push_back({"k1j-recursion(j=" + std::to_string(j) + ",n=" + std::to_string(n) + ")",
                      (rec - direct).norm(), residual_scale(rec, direct)});
        const Matrix qrec = Q_recursion(H, j, n);
        HermJet q = Q_jet(H, j);
        for (int k = 0; k < n; ++k) q = q.differentiate(0, true);
        rs.push_back({"q-recursion(j=" + std::to_string(j) + ",n=" + std::to_string(n) + ")",
                      (qrec - q.value()).norm(), residual_scale(qrec, q.value())});
      }
    }
    pts.push_back({{"point", to_json(p)}, {"residuals", to_json(rs)}, {"verdict", to_string(classify(rs, cx.tol))}});
    all.insert(all.end(), rs.begin(), rs.end());
  }
  RunResult out;
  const Verdict v = classify(all, cx.tol);
  out.report["results"] = {{"points", pts}};
  out.report["summary"] = {{"verdict", to_string(v)}, {"max_residual", max_residual(all)}};
  out.exit_code = exit_for(v);
  return out;
}

RunResult run_appendix(const Context& cx) {
  int n_max = cx.cfg.contains("n_max") ? as_int(cx.cfg["n_max"], "n_max") : cx.order;
  if (n_max < 1 || n_max > 7) bad("n_max", "must lie in 1..7");
  const AppendixReport rep = verify_appendix(n_max, cx.seed);
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  RunResult out;
  out.report["results"] = {{"n_max", n_max}, {"checks", checks}};
  const Verdict v = rep.all_passed() ? Verdict::Verified : Verdict::Refuted;
  out.report["summary"] = {{"verdict", to_string(v)}, {"checks", rep.checks.size()}};
  out.exit_code = exit_for(v);
  return out;
}

json model_json(const QuotientModel& m) {
  json shifts = json::array();
  for (const auto& s : m.shifts) shifts.push_back(to_json(s));
  return {{"kernel", m.kernel.label}, {"gram", to_json(m.gram)}, {"shifts", shifts}};
}

RunResult run_rkhs(const Context& cx) {
  const BundleSpec a = as_bundle(need(cx.cfg, "bundle", "root"), "bundle");
  const BundleSpec b = as_bundle(need(cx.cfg, "bundle_tilde", "root"), "bundle_tilde");
  if (a.dimension != b.dimension || a.rank != b.rank) bad("bundle_tilde", "dimension and rank must match bundle");
  const Point z0 = as_points(cx.cfg, a.dimension).front();
  const QuotientModel ma = quotient_model(a, z0, cx.order);
  const QuotientModel mb = quotient_model(b, z0, cx.order);
  const EquivalenceResult eq = unitary_equiv_check(ma, mb, cx.tol, cx.seed, as_candidate(cx.cfg, a.rank));

  json direct = {{"verdict", to_string(eq.direct.verdict)},
                 {"nullity", eq.direct.nullity},
                 {"residual", eq.direct.residual},
                 {"note", eq.direct.note}};
  if (eq.direct.intertwiner) direct["intertwiner"] = to_json(*eq.direct.intertwiner);
  RunResult out;
  out.report["results"] = {{"z0", to_json(z0)},
                           {"models", json::array({model_json(ma), model_json(mb)})},
                           {"direct", direct},
                           {"contact", eq.contact ? to_json(*eq.contact) : json(nullptr)},
                           {"agree", eq.agree}};
  Verdict v = eq.agree ? eq.direct.verdict : Verdict::Inconclusive;
  if (ma.gram.rows() > kDirectCheckLimit) v = eq.contact ? eq.contact->verdict : Verdict::Inconclusive;
  out.report["summary"] = {{"verdict", to_string(v)}, {"routes_agree", eq.agree}};
  out.exit_code = exit_for(v);
  return out;
}

}  // namespace

json load_config(const std::string& text, const Overrides& ov, std::optional<double> default_tolerance) {
  json cfg;
  try {
    cfg = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("config syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!cfg.is_object()) throw InputError("config root: expected an object");
  if (ov.task) cfg["task"] = *ov.task;
  if (ov.order) cfg["order"] = *ov.order;
  if (ov.tolerance) cfg["tolerance"] = *ov.tolerance;
  if (ov.seed) cfg["seed"] = *ov.seed;
  if (!cfg.contains("tolerance") && default_tolerance) cfg["tolerance"] = *default_tolerance;
  return cfg;
}

RunResult run(const json& cfg) {
  RunResult out;
  json header = {{"schema_version", kSchemaVersion}, {"tool_version", kToolVersion}, {"config", cfg}};
  try {
    const json& t = need(cfg, "task", "root");
    if (!t.is_string() || !kTasks.count(t.get<std::string>())) bad("task", "unknown task");
    const std::string task = t.get<std::string>();
    Context cx{cfg, 1, 1e-8, 1};
    if (cfg.contains("order")) cx.order = as_int(cfg["order"], "order");
    if (cx.order < 1) bad("order", "must be >= 1");
    if (cfg.contains("tolerance")) cx.tol = as_double(cfg["tolerance"], "tolerance");
    if (!(cx.tol > 0)) bad("tolerance", "must be positive");
    if (cfg.contains("seed")) {
      if (!cfg["seed"].is_number_unsigned()) bad("seed", "expected a non-negative integer");
      cx.seed = cfg["seed"].get<std::uint64_t>();
    }
    if (task == "pointwise") out = run_contact(cx, false);
    else if (task == "along-z") out = run_contact(cx, true);
    else if (task == "curvature") out = run_curvature(cx);
    else if (task == "verify-recursions") out = run_recursions(cx);
    else if (task == "verify-appendix") out = run_appendix(cx);
    else out = run_rkhs(cx);
    if (task == "verify-appendix" || task == "rkhs-quotient") header["seed"] = cx.seed;
    header["task"] = task;
  } catch (const NumericalError& e) {
    out.report = {{"error", {{"kind", "numerical"}, {"message", e.what()}}}};
    out.exit_code = kInconclusive;
  } catch (const std::exception& e) {
    out.report = {{"error", {{"kind", "input"}, {"message", e.what()}}}};
    out.exit_code = kInputError;
  }
  out.report.update(header);
  out.report["exit_code"] = out.exit_code;
  return out;
}

}  // namespace holocontact::cli
