#include "runner.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "ricci/curvature.hpp"
#include "ricci/errors.hpp"
#include "ricci/expansions.hpp"
#include "ricci/verify.hpp"
#include "ricci/weitzenboeck.hpp"

namespace ricci::cli {

namespace {

[[noreturn]] void manifest_error(const std::string& what) { throw GeometryError(ErrorCode::ManifestError, what); }
[[noreturn]] void task_error(const std::string& what) { throw GeometryError(ErrorCode::TaskError, what); }

json to_json(const Vector& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(to_json(Vector(m.row(i).transpose())));
  return rows;
}

json to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json to_json(const std::vector<double>& v) { return json(v); }

Vector vector_from(const json& j, int n, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) manifest_error(what + " must be an array of length " + std::to_string(n));
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_number()) manifest_error(what + " must contain numbers");
    v(i) = j[i].get<double>();
  }
  return v;
}

std::string fixed(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

json manifold_json(const CatalogueEntry& e) {
  json params = json::object();
  for (const auto& [k, v] : e.params) params[k] = v;
  return {{"name", e.name},
          {"dim", e.dim},
          {"params", params},
          {"chart", e.has_chart()},
          {"homogeneous", e.homogeneous},
          {"non_compact", e.non_compact}};
}

models::WarpKind warp_kind(const std::string& s) {
  if (s == "constant") return models::WarpKind::Constant;
  if (s == "cosh") return models::WarpKind::Cosh;
  if (s == "exp") return models::WarpKind::Exp;
  if (s == "quadratic") return models::WarpKind::Quadratic;
  manifest_error("unknown warp kind '" + s + "'");
}

models::Warp parse_warp(const json& params, int base_dim) {
  models::Warp w;
  json spec = params.contains("warp") ? params["warp"] : json("constant");
  if (spec.is_string()) {
    json obj = params;
    obj["kind"] = spec;
    spec = obj;
  }
  if (!spec.is_object()) manifest_error("warp must be a kind name or an object");
  w.kind = warp_kind(spec.value("kind", std::string("constant")));
  w.c = spec.value("c", 1.0);
  w.shift = spec.value("shift", 0.0);
  w.rate = spec.value("rate", 1.0);
  w.linear = spec.contains("linear") ? vector_from(spec["linear"], base_dim, "warp.linear") : Vector::Zero(base_dim);
  w.quadratic = Matrix::Zero(base_dim, base_dim);
  if (spec.contains("quadratic")) {
    const json& q = spec["quadratic"];
    if (!q.is_array() || static_cast<int>(q.size()) != base_dim) manifest_error("warp.quadratic must be square");
    for (int i = 0; i < base_dim; ++i) w.quadratic.row(i) = vector_from(q[i], base_dim, "warp.quadratic row").transpose();
  }
  return w;
}

int positive_int(const json& params, const char* key, int fallback) {
  const json v = params.value(key, json(fallback));
  if (!v.is_number_integer() || v.get<int>() < 1) manifest_error(std::string(key) + " must be a positive integer");
  return v.get<int>();
}

// Point, orthonormal frame, curvature and plane requested by task_params.
struct Setup {
  CatalogueEntry entry;
  Vector point;
  Matrix frame;  // orthonormal frame in the coordinates of `curvature`
  AlgebraicCurvature curvature;
  SubspaceFrame plane;
};

Setup prepare(const RunManifest& m, int default_d) {
  Setup s{make_entry(m.model, m.params), {}, {}, {}, {}};
  const int n = s.entry.dim;
  const json& tp = m.task_params;
  s.point = tp.contains("point") ? vector_from(tp["point"], n, "point") : s.entry.base_point;
  if (s.entry.has_chart() && !s.entry.chart->contains(s.point)) throw GeometryError(ErrorCode::OutOfDomain, "point outside the chart box");
  s.frame = s.entry.orthonormal_frame(s.point);
  s.curvature = s.entry.curvature(s.point);

  const std::string basis = tp.value("frame", std::string("orthonormal"));
  if (basis != "orthonormal" && basis != "coordinate") manifest_error("frame must be 'orthonormal' or 'coordinate'");
  Matrix spanners;
  if (tp.contains("plane")) {
    const json& p = tp["plane"];
    if (!p.is_array() || p.empty() || static_cast<int>(p.size()) > n) manifest_error("plane must list 1..n vectors");
    spanners.resize(n, static_cast<int>(p.size()));
    for (size_t k = 0; k < p.size(); ++k) spanners.col(static_cast<int>(k)) = vector_from(p[k], n, "plane vector");
    if (basis == "orthonormal") spanners = s.frame * spanners;
  } else {
    const int d = std::min(positive_int(tp, "d", default_d), n);
    spanners = s.frame.leftCols(d);
  }
  if (tp.contains("d") && tp.contains("plane") && tp["d"].get<int>() != spanners.cols())
    manifest_error("d disagrees with the number of plane vectors");
  s.plane = build_frame(s.curvature.frame_metric, spanners, s.point);
  return s;
}

json report_head(const RunManifest& m, const CatalogueEntry& e) {
  return {{"schema", kReportSchema}, {"task", task_name(m.task)}, {"manifold", manifold_json(e)}, {"seed", m.seed}};
}

json means_json(const MeanRicciReport& r) {
  return {{"intrinsic", to_json(r.intrinsic_mean)},
          {"normal", to_json(r.normal_mean)},
          {"intrinsic_sum", r.intrinsic_sum},
          {"mixed_sum", r.mixed_sum}};
}

RunResult run_curvature(const RunManifest& m) {
  const Setup s = prepare(m, 2);
  const int n = s.entry.dim;
  const AlgebraicCurvature on = s.curvature.in_basis(s.frame);
  json rep = report_head(m, s.entry);
  rep["point"] = to_json(s.point);
  rep["metric"] = to_json(s.curvature.frame_metric);
  if (s.entry.has_chart()) {
    const PointCurvature pc = riemann_at(*s.entry.chart, s.point);
    json gamma = json::array();
    for (int k = 0; k < n; ++k) {
      json block = json::array();
      for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int j = 0; j < n; ++j) row.push_back(pc.christoffel(k, i, j));
        block.push_back(row);
      }
      gamma.push_back(block);
    }
    rep["christoffel"] = gamma;
  }
  rep["orthonormal_frame"] = to_json(s.frame);
  rep["ricci"] = to_json(on.ricci());
  rep["scalar"] = on.scalar();
  rep["symmetry_defect"] = on.symmetry_defect();
  json sec = json::array();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) sec.push_back({{"i", i}, {"j", j}, {"K", on(i, j, i, j)}});
  rep["frame_sectional"] = sec;
  json comps = json::array();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l)
          if (on(i, j, k, l) != 0.0) comps.push_back({{"ijkl", {i, j, k, l}}, {"value", on(i, j, k, l)}});
  rep["riemann_orthonormal"] = comps;
  return {rep, {}, 0};
}

RunResult run_means(const RunManifest& m) {
  const Setup s = prepare(m, 2);
  const MeanRicciReport direct = mean_ricci(s.curvature, s.plane);
  const MeanRicciReport traces = mean_ricci_via_traces(s.curvature, s.plane);
  const int samples = positive_int(m.task_params, "samples", kDefaultDirectionSamples);
  const SphereAverage avg = sphere_average_check(s.curvature, s.plane, samples, m.seed);
  const Vector v = s.plane.plane.col(0);

  json rep = report_head(m, s.entry);
  rep["point"] = to_json(s.point);
  rep["d"] = s.plane.dim_plane();
  rep["plane"] = to_json(Matrix(s.plane.plane.transpose()));
  rep.update(means_json(direct));
  rep["traces"] = means_json(traces);
  double gap = 0.0;
  if (direct.intrinsic_mean) gap = std::max(gap, std::abs(*direct.intrinsic_mean - *traces.intrinsic_mean));
  if (direct.normal_mean) gap = std::max(gap, std::abs(*direct.normal_mean - *traces.normal_mean));
  rep["trace_agreement"] = gap;
  rep["directional"] = {{"direction", to_json(v)},
                        {"intrinsic", directional_intrinsic_ricci(s.curvature, s.plane, v)},
                        {"normal", directional_normal_ricci(s.curvature, s.plane, v)}};
  rep["sphere_average"] = {{"samples", avg.samples},
                           {"intrinsic", avg.intrinsic},
                           {"intrinsic_stderr", avg.intrinsic_stderr},
                           {"normal", avg.normal},
                           {"normal_stderr", avg.normal_stderr}};
  return {rep, {}, 0};
}

RunResult run_weitz(const RunManifest& m) {
  const Setup s = prepare(m, 2);
  const int n = s.entry.dim, d = s.plane.dim_plane();
  if (d >= n) task_error("weitz needs d <= n-1");
  const OrthonormalView view = orthonormal_view(s.curvature, s.plane);
  const WeitzenboeckMatrix W = weitz_matrix(view.curvature, d);
  const SimplePairing sp = simple_pairing(s.curvature, s.plane);
  const double tol = 1e-8 * m.tol_scale;

  json rep = report_head(m, s.entry);
  rep["point"] = to_json(s.point);
  rep["d"] = d;
  rep["basis_size"] = W.entries.rows();
  rep["asymmetry"] = W.asymmetry();
  rep["pairing"] = {{"weitzenboeck", sp.weitzenboeck},
                    {"ricci_minus_sectional", sp.ricci_minus_sectional},
                    {"mixed", sp.mixed},
                    {"max_discrepancy", sp.max_discrepancy()},
                    {"tolerance", tol}};
  rep["normal_mean"] = to_json(mean_ricci(s.curvature, s.plane).normal_mean);
  bool pass = sp.max_discrepancy() <= tol && W.asymmetry() <= 1e-10 * m.tol_scale;
  std::ostringstream csv;
  csv << "check,residual,tolerance\n";
  csv << "triple_equality," << fixed(sp.max_discrepancy()) << "," << fixed(tol) << "\n";
  csv << "self_adjoint," << fixed(W.asymmetry()) << "," << fixed(1e-10 * m.tol_scale) << "\n";
  if (d == 2) {
    const BivectorBochner bb =
        bochner_bivector(view.curvature, view.frame.plane.col(0), view.frame.plane.col(1));
    rep["bivector"] = {{"value", bb.value},
                       {"pairing", bb.pairing},
                       {"normal_term", bb.normal_term},
                       {"max_discrepancy", bb.max_discrepancy()}};
    pass = pass && bb.max_discrepancy() <= 1e-10 * m.tol_scale;
    csv << "bivector_bochner," << fixed(bb.max_discrepancy()) << "," << fixed(1e-10 * m.tol_scale) << "\n";
  }
  if (m.task_params.value("emit_matrix", false)) rep["matrix"] = to_json(W.entries);
  rep["pass"] = pass;
  return {rep, csv.str(), pass ? 0 : 1};
}

RunResult run_kappa(const RunManifest& m) {
  const CatalogueEntry e = make_entry(m.model, m.params);
  const json& tp = m.task_params;
  const int d = positive_int(tp, "d", 2);
  KappaSearchConfig cfg;
  cfg.restarts = positive_int(tp, "restarts", cfg.restarts);
  cfg.point_samples = positive_int(tp, "point_samples", cfg.point_samples);
  cfg.initial_step = tp.value("initial_step", cfg.initial_step);
  cfg.shrink = tp.value("shrink", cfg.shrink);
  cfg.min_step = tp.value("min_step", cfg.min_step);
  cfg.max_evaluations = tp.value("max_evaluations", cfg.max_evaluations);
  cfg.seed = m.seed;
  const KappaResult k = kappa_d(e.source(), d, cfg);

  json rep = report_head(m, e);
  rep["d"] = d;
  rep["kappa"] = k.kappa;
  rep["best_normal_mean"] = k.best_normal_mean;
  rep["median_normal_mean"] = k.median_normal_mean;
  rep["best_median_gap"] = k.median_normal_mean - k.best_normal_mean;
  rep["argmin"] = {{"point", to_json(k.point)}, {"plane", to_json(Matrix(k.plane.transpose()))}};
  rep["restarts"] = k.restarts;
  rep["evaluations"] = k.evaluations;
  rep["upper_bound"] = k.upper_bound;
  rep["homogeneous"] = k.homogeneous;
  rep["non_compact"] = k.non_compact;
  rep["budget_exceeded"] = k.budget_exceeded;

  std::vector<double> lambdas = tp.value("lambdas", std::vector<double>{});
  json lich = json::array();
  for (const LichnerowiczEntry& le : lichnerowicz_report(k.kappa, lambdas))
    lich.push_back({{"lambda", le.lambda}, {"satisfied", le.satisfied}, {"boundary", le.boundary}, {"note", le.note}});
  rep["lichnerowicz"] = lich;

  json traces = json::array();
  std::ostringstream csv;
  csv << "restart,start_value,end_value,evaluations\n";
  for (size_t i = 0; i < k.traces.size(); ++i) {
    const KappaTrace& t = k.traces[i];
    traces.push_back({{"point", to_json(t.point)},
                      {"start_value", t.start_value},
                      {"end_value", t.end_value},
                      {"evaluations", t.evaluations}});
    csv << i << "," << fixed(t.start_value) << "," << fixed(t.end_value) << "," << t.evaluations << "\n";
  }
  rep["traces"] = traces;
  return {rep, csv.str(), k.budget_exceeded ? 1 : 0};
}

RunResult run_expand(const RunManifest& m) {
  const Setup s = prepare(m, 2);
  if (!s.entry.has_chart()) task_error("expand needs a coordinate chart");
  const MetricChart& chart = *s.entry.chart;
  const json& tp = m.task_params;
  const int n = s.entry.dim;

  std::vector<double> ladder = default_radius_ladder(s.entry.length_scale);
  if (tp.contains("ladder")) ladder = tp["ladder"].get<std::vector<double>>();
  ExpansionOptions opt;
  opt.tol = tp.value("ode_tol", opt.tol);
  opt.monte_carlo_samples = positive_int(tp, "samples", opt.monte_carlo_samples);
  opt.seed = m.seed;

  std::vector<std::string> fits;
  if (tp.contains("fits")) {
    fits = tp["fits"].get<std::vector<std::string>>();
  } else {
    fits = {"sphere", "radial"};
    if (n == 2) fits.push_back("bdp");
    if (n >= 3 && s.plane.dim_plane() < n) fits.insert(fits.end(), {"plane", "normal"});
  }
  const Vector u = tp.contains("direction") ? Vector(s.frame * vector_from(tp["direction"], n, "direction"))
                                            : Vector(s.frame.col(n - 1));
  const Vector v = s.plane.plane.col(0);

  json rep = report_head(m, s.entry);
  rep["point"] = to_json(s.point);
  json out = json::array();
  std::ostringstream csv;
  csv << "label,radius,density,model,misfit\n";
  bool pass = true;
  for (const std::string& f : fits) {
    ExpansionFit fit;
    if (f == "sphere") fit = sphere_volume_coeff(chart, s.point, ladder, opt);
    else if (f == "radial") fit = radial_density_coeff(chart, s.point, u, ladder, opt);
    else if (f == "plane") fit = plane_density_coeff(chart, s.point, s.plane, v, ladder, opt);
    else if (f == "normal") fit = normal_density_coeff(chart, s.point, s.plane, v, ladder, opt);
    else if (f == "bdp") fit = bdp_circumference(chart, s.point, ladder, opt);
    else manifest_error("unknown fit '" + f + "'");
    fit.tolerance *= m.tol_scale;
    pass = pass && fit.pass();
    out.push_back({{"label", fit.label},
                   {"c0", fit.c0},
                   {"c2", fit.c2},
                   {"c4", fit.c4},
                   {"target", fit.target},
                   {"error", std::abs(fit.c2 - fit.target)},
                   {"tolerance", fit.tolerance},
                   {"residual", fit.residual},
                   {"pass", fit.pass()},
                   {"radii", to_json(fit.radii)},
                   {"densities", to_json(fit.densities)}});
    for (size_t i = 0; i < fit.radii.size(); ++i) {
      const double model = fit.model(fit.radii[i]);
      csv << fit.label << "," << fixed(fit.radii[i]) << "," << fixed(fit.densities[i]) << "," << fixed(model) << ","
          << fixed(std::abs(fit.densities[i] - model) / std::abs(fit.densities[i])) << "\n";
    }
  }
  rep["fits"] = out;
  rep["pass"] = pass;
  return {rep, csv.str(), pass ? 0 : 1};
}

RunResult run_verify(const RunManifest& m) {
  const CatalogueEntry e = make_entry(m.model, m.params);
  const json& tp = m.task_params;
  VerifyOptions opt;
  opt.seed = m.seed;
  opt.tol_scale = m.tol_scale;
  opt.points = positive_int(tp, "points", opt.points);
  opt.planes = positive_int(tp, "planes", opt.planes);
  opt.expansions = tp.value("expansions", true);
  opt.expansion.seed = m.seed;
  opt.expansion.monte_carlo_samples = positive_int(tp, "samples", opt.expansion.monte_carlo_samples);
  const VerifyReport vr = verify_entry(e, opt);

  json rep = report_head(m, e);
  json checks = json::array();
  std::ostringstream csv;
  csv << "check,residual,tolerance,pass\n";
  for (const Check& c : vr.checks) {
    json j = {{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(j);
    csv << c.name << "," << fixed(c.residual) << "," << fixed(c.tolerance) << "," << (c.pass ? 1 : 0) << "\n";
  }
  rep["checks"] = checks;
  rep["tol_scale"] = m.tol_scale;
  rep["pass"] = vr.all_pass();
  return {rep, csv.str(), vr.all_pass() ? 0 : 1};
}

}  // namespace

Task parse_task(const std::string& name) {
  if (name == "curvature") return Task::Curvature;
  if (name == "means") return Task::Means;
  if (name == "weitz") return Task::Weitz;
  if (name == "kappa") return Task::Kappa;
  if (name == "expand") return Task::Expand;
  if (name == "verify") return Task::Verify;
  manifest_error("unknown task '" + name + "'");
}

std::string task_name(Task task) {
  switch (task) {
    case Task::Curvature: return "curvature";
    case Task::Means: return "means";
    case Task::Weitz: return "weitz";
    case Task::Kappa: return "kappa";
    case Task::Expand: return "expand";
    case Task::Verify: return "verify";
  }
  return "verify";
}

RunManifest parse_manifest(const json& doc) {
  if (!doc.is_object()) manifest_error("manifest must be a JSON object");
  RunManifest m;
  if (doc.contains("manifold")) {
    const json& mf = doc["manifold"];
    if (mf.is_string()) {
      m.model = mf.get<std::string>();
    } else if (mf.is_object()) {
      if (!mf.contains("model") || !mf["model"].is_string()) manifest_error("manifold.model must be a string");
      m.model = mf["model"].get<std::string>();
      m.params = mf.value("params", json::object());
      if (!m.params.is_object()) manifest_error("manifold.params must be an object");
    } else {
      manifest_error("manifold must be a name or an object");
    }
  }
  if (doc.contains("task")) m.task = parse_task(doc["task"].get<std::string>());
  m.task_params = doc.value("task_params", json::object());
  if (!m.task_params.is_object()) manifest_error("task_params must be an object");
  if (m.task_params.contains("seed")) m.seed = m.task_params["seed"].get<std::uint64_t>();
  if (m.task_params.contains("tol_scale")) m.tol_scale = m.task_params["tol_scale"].get<double>();
  if (doc.contains("output")) {
    const json& o = doc["output"];
    m.out_path = o.value("path", std::string());
    m.out_format = o.value("format", std::string("json"));
    if (m.out_format != "json" && m.out_format != "csv") manifest_error("output.format must be json or csv");
  }
  return m;
}

void apply_manifold_flag(RunManifest& m, const std::string& spec) {
  const auto colon = spec.find(':');
  m.model = spec.substr(0, colon);
  if (colon == std::string::npos) return;
  std::stringstream rest(spec.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) manifest_error("manifold parameter '" + item + "' lacks '='");
    const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    try {
      size_t used = 0;
      const double x = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      if (x == static_cast<int>(x) && value.find('.') == std::string::npos) m.params[key] = static_cast<int>(x);
      else m.params[key] = x;
    } catch (const std::logic_error&) {
      m.params[key] = value;
    }
  }
}

CatalogueEntry make_entry(const std::string& model, const json& params) {
  try {
    if (model == "euclidean") return euclidean(positive_int(params, "n", 3));
    if (model == "space_form") return space_form(positive_int(params, "n", 3), params.value("kappa", 1.0));
    if (model == "heisenberg") return heisenberg();
    if (model == "cpn") return cpn_fubini_study(positive_int(params, "n", 2));
    if (model == "cylinder") return surface_of_revolution(models::Profile::Cylinder, params.value("R", 1.0));
    if (model == "sphere") return surface_of_revolution(models::Profile::Sphere, params.value("R", 1.0));
    if (model == "catenoid") return surface_of_revolution(models::Profile::Catenoid);
    if (model == "product_spheres")
      return product_spheres(positive_int(params, "a", 2), params.value("rho_a", 1.0), positive_int(params, "b", 3),
                             params.value("rho_b", 1.0));
    if (model == "warped_product") {
      WarpedSpec spec;
      spec.base_dim = positive_int(params, "base_dim", 1);
      spec.base_kappa = params.value("base_kappa", 0.0);
      spec.fiber_dim = positive_int(params, "fiber_dim", 2);
      spec.fiber_kappa = params.value("fiber_kappa", 1.0);
      spec.warp = parse_warp(params, spec.base_dim);
      return warped_product(spec);
    }
  } catch (const json::exception& e) {
    manifest_error(std::string("bad manifold parameter: ") + e.what());
  }
  throw GeometryError(ErrorCode::UnknownModel, "no catalogue model named '" + model + "'");
}

RunResult run(const RunManifest& m) {
  if (m.model.empty()) manifest_error("no manifold given");
  if (!(m.tol_scale > 0.0)) manifest_error("tol_scale must be positive");
  try {
    switch (m.task) {
      case Task::Curvature: return run_curvature(m);
      case Task::Means: return run_means(m);
      case Task::Weitz: return run_weitz(m);
      case Task::Kappa: return run_kappa(m);
      case Task::Expand: return run_expand(m);
      case Task::Verify: return run_verify(m);
    }
  } catch (const json::exception& e) {
    manifest_error(std::string("bad task parameter: ") + e.what());
  }
  task_error("unhandled task");
}

int emit(const RunManifest& m, const RunResult& r) {
  std::string format = m.out_format;
  if (m.out_path.size() > 4 && m.out_path.substr(m.out_path.size() - 4) == ".csv") format = "csv";
  if (format == "csv" && r.csv.empty()) task_error("task '" + task_name(m.task) + "' has no tabular output");
  const std::string body = format == "csv" ? r.csv : r.report.dump(2) + "\n";
  if (m.out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(m.out_path, std::ios::binary);
    if (!f) task_error("cannot write " + m.out_path);
    f << body;
  }
  return r.status;
}

}  // namespace ricci::cli
