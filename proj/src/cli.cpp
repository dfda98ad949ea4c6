#include "rz/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "rz/amalgam.hpp"
#include "rz/detrep.hpp"
#include "rz/geometry.hpp"
#include "rz/json_io.hpp"
#include "rz/moments.hpp"
#include "rz/pencil.hpp"
#include "rz/random.hpp"

namespace rz {

namespace {

int exit_code_for(ErrorCode c) { return c == ErrorCode::kNumerical ? kExitNumerical : kExitUsage; }

void write_error(std::ostream& err, std::string_view code, const std::string& message) {
  err << Json{{"error", Json{{"code", code}, {"message", message}}}}.dump() << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kUsage, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kParse, what + ": " + e.what());
  }
}

std::string csv_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

double gauge_value(const RayGaugeResult& g) { return g.unbounded() ? std::numeric_limits<double>::infinity() : g.gauge; }

double ratio(const RayGaugeResult& c, const RayGaugeResult& s) {
  const double gc = gauge_value(c), gs = gauge_value(s);
  if (std::isinf(gc) && std::isinf(gs)) return 1.0;
  if (std::isinf(gs)) return std::numeric_limits<double>::infinity();
  if (gc == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return gs / gc;
}

// Shared state of one invocation.
struct Context {
  RunConfig config;
  std::ostream& out;
  std::ostream& err;

  Polynomial poly(const std::string& text) const {
    const Polynomial p = parse_polynomial(text);
    require(p.n_vars() <= config.max_vars, ErrorCode::kCapacity,
            "polynomial has more than " + std::to_string(config.max_vars) + " variables");
    require(p.is_zero() || p.degree() <= config.max_degree, ErrorCode::kCapacity,
            "polynomial degree exceeds " + std::to_string(config.max_degree));
    return p;
  }

  Polynomial poly(const std::string& text, int n_vars) const {
    const Polynomial p = parse_polynomial(text, n_vars);
    require(p.is_zero() || p.degree() <= config.max_degree, ErrorCode::kCapacity,
            "polynomial degree exceeds " + std::to_string(config.max_degree));
    return p;
  }

  Json header(const std::string& command) const { return Json{{"command", command}, {"seed", config.seed}}; }

  void emit(const Json& j) const { out << j.dump(2) << "\n"; }
  bool csv() const { return config.format == "csv"; }
};

std::vector<Rational> vector_arg(const std::string& text, int n, const std::string& what) {
  const std::vector<Rational> v = parse_rational_list(text);
  require(static_cast<int>(v.size()) == n, ErrorCode::kDimensionMismatch,
          what + " has " + std::to_string(v.size()) + " entries, expected " + std::to_string(n));
  return v;
}

int virtual_degree_or_default(const Polynomial& p, int d) {
  if (d >= 0) return d;
  return p.is_zero() ? 0 : std::max(0, p.degree());
}

// Gauge of {x : c0 + c^T x >= 0}.
RayGaugeResult halfspace_gauge(const HalfSpace& h, const std::vector<double>& a) {
  RayGaugeResult r;
  r.direction = a;
  double slope = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) slope += to_double(h.c[i]) * a[i];
  if (slope < 0.0) {
    r.gauge = -to_double(h.c0) / slope;
    r.status = GaugeStatus::kExactRoot;
  }
  return r;
}

// The relaxation selected by --relax, as a gauge oracle.
struct Relaxation {
  std::string kind = "pencil";
  int virtual_degree = -1;
  int level = 1;
};

class RelaxationGauge {
 public:
  RelaxationGauge(const Polynomial& p, const Relaxation& r) : kind_(r.kind) {
    const int d = virtual_degree_or_default(p, r.virtual_degree);
    if (kind_ == "pencil") {
      gauge_.emplace(build_pencil(moment_table(p, d, 3)));
    } else if (kind_ == "inf") {
      gauge_.emplace(build_pencil_inf(moment_table(p, d, 3)));
    } else if (kind_ == "hierarchy") {
      gauge_.emplace(build_hierarchy_pencil(p, r.level));
    } else if (kind_ == "halfspace") {
      half_ = halfspace(moment_table(p, d, 1));
    } else {
      fail(ErrorCode::kUsage, "unknown relaxation '" + kind_ + "' (pencil, inf, hierarchy, halfspace)");
    }
  }

  RayGaugeResult gauge(const std::vector<double>& a) const {
    return gauge_ ? gauge_->gauge(a) : halfspace_gauge(half_, a);
  }

 private:
  std::string kind_;
  std::optional<SpectrahedronGauge> gauge_;
  HalfSpace half_;
};

std::vector<std::vector<double>> sweep_directions(int n, int rays, Rng& rng) {
  std::vector<std::vector<double>> dirs;
  for (int k = 0; k < rays; ++k) {
    if (n == 2) {
      const double t = 2.0 * M_PI * k / rays;
      dirs.push_back({std::cos(t), std::sin(t)});
    } else if (n == 1) {
      dirs.push_back({k % 2 == 0 ? 1.0 : -1.0});
    } else {
      dirs.push_back(rng.unit_vector(n));
    }
  }
  return dirs;
}

// ---------------------------------------------------------------------------

int cmd_rzcheck(Context& ctx, const std::string& text, int trials, bool strict) {
  const Polynomial p = ctx.poly(text);
  Json j = ctx.header("rzcheck");
  j["polynomial"] = to_string(p);
  if (strict && !p.is_zero() && p.degree() <= 2 && p.constant_term() != 0) {
    const QuadraticCertificate c = quadratic_rz_certificate(p);
    j["method"] = "quadratic_certificate";
    j["probabilistic"] = false;
    j["discriminant"] = to_json(c.discriminant);
    j["passed"] = c.exact_psd;
    ctx.emit(j);
    return c.exact_psd ? kExitOk : kExitNegative;
  }
  Rng rng(ctx.config.seed);
  const RZVerdict v = real_zero_probe(p, trials, ctx.config.root_tol, rng);
  j["method"] = "random_line_probe";
  j.update(to_json(v));
  ctx.emit(j);
  return v.passed ? kExitOk : kExitNegative;
}

int cmd_moments(Context& ctx, const std::string& text, int d, int cutoff) {
  const Polynomial p = ctx.poly(text);
  require(cutoff <= ctx.config.max_cutoff, ErrorCode::kCapacity, "cutoff exceeds the configured maximum");
  const MomentTable t = moment_table(p, virtual_degree_or_default(p, d), cutoff);
  if (ctx.csv()) {
    ctx.out << "monomial,value\n1," << t.virtual_degree << "\n";
    for (const auto& [e, v] : t.values) ctx.out << monomial_string(e) << "," << to_string(v) << "\n";
    return kExitOk;
  }
  Json j = ctx.header("moments");
  j["polynomial"] = to_string(p);
  j.update(to_json(t));
  ctx.emit(j);
  return kExitOk;
}

int cmd_pencil(Context& ctx, const std::string& text, int d, bool inf, int hierarchy) {
  const Polynomial p = ctx.poly(text);
  Json j = ctx.header("pencil");
  j["polynomial"] = to_string(p);
  Pencil m;
  if (hierarchy > 0) {
    m = build_hierarchy_pencil(p, hierarchy);
    j["kind"] = "hierarchy";
    j["level"] = hierarchy;
  } else {
    const MomentTable t = moment_table(p, virtual_degree_or_default(p, d), 3);
    m = inf ? build_pencil_inf(t) : build_pencil(t);
    j["kind"] = inf ? "inf" : "pencil";
    j["virtual_degree"] = t.virtual_degree;
  }
  j["pencil"] = to_json(m);
  ctx.emit(j);
  return kExitOk;
}

int cmd_halfspace(Context& ctx, const std::string& text, int d) {
  const Polynomial p = ctx.poly(text);
  const HalfSpace h = halfspace(moment_table(p, virtual_degree_or_default(p, d), 1));
  Json j = ctx.header("halfspace");
  j["polynomial"] = to_string(p);
  j["c0"] = to_json(h.c0);
  j["c"] = to_json(h.c);
  j["full_space"] = h.full_space();
  ctx.emit(j);
  return kExitOk;
}

int cmd_member(Context& ctx, const std::string& text, const std::string& point, int d) {
  const Polynomial p = ctx.poly(text);
  const std::vector<double> a = to_double(vector_arg(point, p.n_vars(), "--point"));
  const Pencil m = build_pencil(moment_table(p, virtual_degree_or_default(p, d), 3));
  const PsdVerdict s = is_psd(m.eval_numeric(a), {ctx.config.psd_tol, 100.0 * ctx.config.psd_tol});
  Json j = ctx.header("member");
  j["polynomial"] = to_string(p);
  j["point"] = to_json(a);
  j["member_C"] = member_C(p, a);
  j["member_S"] = to_string(s);
  ctx.emit(j);
  return kExitOk;
}

int cmd_gauge(Context& ctx, const std::string& text, const std::string& dir, const Relaxation& relax) {
  const Polynomial p = ctx.poly(text);
  const std::vector<double> a = to_double(vector_arg(dir, p.n_vars(), "--dir"));
  const RayGaugeResult c = ray_gauge_C(p, a, ctx.config.root_tol);
  const RayGaugeResult s = RelaxationGauge(p, relax).gauge(a);
  Json j = ctx.header("gauge");
  j["polynomial"] = to_string(p);
  j["direction"] = to_json(a);
  j["relax"] = relax.kind;
  j["gauge_C"] = c.unbounded() ? Json("inf") : to_json(c.gauge);
  j["status_C"] = to_string(c.status);
  j["gauge_S"] = s.unbounded() ? Json("inf") : to_json(s.gauge);
  j["status_S"] = to_string(s.status);
  ctx.emit(j);
  return kExitOk;
}

int cmd_sweep(Context& ctx, const std::string& text, int rays, const Relaxation& relax) {
  require(rays >= 1, ErrorCode::kUsage, "--rays must be positive");
  const Polynomial p = ctx.poly(text);
  const int n = p.n_vars();
  require(n >= 1, ErrorCode::kUsage, "sweep needs at least one variable");
  Rng rng(ctx.config.seed);
  const RelaxationGauge rg(p, relax);
  const std::vector<std::vector<double>> dirs = sweep_directions(n, rays, rng);
  if (ctx.csv()) {
    ctx.out << "ray_index";
    for (int i = 1; i <= n; ++i) ctx.out << ",dir" << i;
    ctx.out << ",gauge_C,gauge_S,ratio\n";
  }
  Json rows = Json::array();
  for (int k = 0; k < rays; ++k) {
    const RayGaugeResult c = ray_gauge_C(p, dirs[k], ctx.config.root_tol);
    const RayGaugeResult s = rg.gauge(dirs[k]);
    if (ctx.csv()) {
      ctx.out << k;
      for (double v : dirs[k]) ctx.out << "," << csv_number(v);
      ctx.out << "," << csv_number(gauge_value(c)) << "," << csv_number(gauge_value(s)) << ","
              << csv_number(ratio(c, s)) << "\n";
    } else {
      rows.push_back(Json{{"ray_index", k},
                          {"direction", to_json(dirs[k])},
                          {"gauge_C", to_json(gauge_value(c))},
                          {"gauge_S", to_json(gauge_value(s))},
                          {"ratio", to_json(ratio(c, s))}});
    }
  }
  if (!ctx.csv()) {
    Json j = ctx.header("sweep");
    j["polynomial"] = to_string(p);
    j["relax"] = relax.kind;
    j["rays"] = rows;
    ctx.emit(j);
  }
  return kExitOk;
}

int cmd_hierarchy(Context& ctx, const std::string& text, int max_level, int rays) {
  require(max_level >= 1 && rays >= 1, ErrorCode::kUsage, "--max-level and --rays must be positive");
  const Polynomial p = ctx.poly(text);
  Rng rng(ctx.config.seed);
  const std::vector<std::vector<double>> dirs = sweep_directions(p.n_vars(), rays, rng);
  std::vector<SpectrahedronGauge> levels;
  Json sizes = Json::array();
  for (int l = 1; l <= max_level; ++l) {
    const Pencil m = build_hierarchy_pencil(p, l);
    sizes.push_back(m.size);
    levels.emplace_back(m);
  }
  Json rows = Json::array();
  bool monotone = true;
  for (int k = 0; k < rays; ++k) {
    Json g = Json::array();
    double prev = std::numeric_limits<double>::infinity();
    for (const SpectrahedronGauge& s : levels) {
      const double v = gauge_value(s.gauge(dirs[k]));
      if (v > prev + 1e-7 * (1.0 + prev)) monotone = false;
      prev = v;
      g.push_back(to_json(v));
    }
    rows.push_back(Json{{"ray_index", k},
                        {"direction", to_json(dirs[k])},
                        {"gauge_C", to_json(gauge_value(ray_gauge_C(p, dirs[k], ctx.config.root_tol)))},
                        {"gauge_levels", g}});
  }
  Json j = ctx.header("hierarchy");
  j["polynomial"] = to_string(p);
  j["pencil_sizes"] = sizes;
  j["monotone"] = monotone;
  j["rays"] = rows;
  ctx.emit(j);
  return kExitOk;
}

int cmd_cone(Context& ctx, const std::string& text, const std::string& e_text, const std::string& point,
             int trials, bool with_pencil) {
  const Polynomial p = ctx.poly(text);
  const std::vector<double> e = to_double(vector_arg(e_text, p.n_vars(), "-e"));
  const std::vector<double> a = to_double(vector_arg(point, p.n_vars(), "--point"));
  Rng rng(ctx.config.seed);
  const RZVerdict v = hyperbolicity_probe(p, e, trials, ctx.config.root_tol, rng);
  Json j = ctx.header("cone");
  j["polynomial"] = to_string(p);
  j["e"] = to_json(e);
  j["point"] = to_json(a);
  j["hyperbolicity"] = to_json(v);
  if (!v.passed) {
    ctx.emit(j);
    return kExitNegative;
  }
  const std::vector<double> eig = eigenvalues_dir(p, e, a, ctx.config.root_tol);
  j["eigenvalues"] = to_json(eig);
  double trace = 0.0;
  for (double x : eig) trace += x;
  j["trace"] = to_json(trace);
  j["member"] = cone_member(p, e, a);
  if (with_pencil) {
    const HyperbolicPencil hp = homogeneous_pencil(p, e, 0);
    const Eigen::MatrixXd m = hp.pencil.eval_numeric(a);
    const Eigen::Map<const Eigen::VectorXd> ev(e.data(), static_cast<Eigen::Index>(e.size()));
    j["pencil"] = Json{{"psd", to_string(is_psd(m))}, {"e_form", to_json(ev.dot(m * ev))}};
  }
  ctx.emit(j);
  return kExitOk;
}

int cmd_detrep(Context& ctx, const std::string& kind, const std::string& text, int size) {
  Json j = ctx.header("detrep");
  j["kind"] = kind;
  if (kind == "saunderson") {
    require(size >= 1, ErrorCode::kUsage, "saunderson needs --size d >= 1");
    const SaundersonPencil s = saunderson_pencil(size);
    j["d"] = s.d;
    j["n_vars"] = s.n;
    j["U"] = to_json(s.U);
    Json b = Json::array();
    for (const Eigen::MatrixXd& m : s.B) b.push_back(to_json(m));
    j["B"] = b;
    j["pencil"] = to_json(s.full);
    j["reduced"] = to_json(s.reduced);
    ctx.emit(j);
    return kExitOk;
  }
  require(!text.empty(), ErrorCode::kUsage, kind + " needs -p");
  const Polynomial p = ctx.poly(text);
  DetRep r;
  Polynomial target;
  if (kind == "quad2") {
    const Polynomial p2 = parse_polynomial(text, 2);
    r = hv2_quadratic(p2);
    target = p2;
  } else if (kind == "lincofactor") {
    r = lincofactor_rep(p);
    target = lincofactor_target(p);
  } else {
    fail(ErrorCode::kUsage, "unknown detrep kind '" + kind + "' (quad2, lincofactor, saunderson)");
  }
  const Polynomial expanded = detrep_expand(r);
  j["polynomial"] = to_string(p);
  j["represented"] = to_string(target);
  j["rep"] = to_json(r);
  j["residual"] = to_json(max_coeff_difference(expanded, target));
  ctx.emit(j);
  return kExitOk;
}

int cmd_amalgamate(Context& ctx, const std::string& mode, const std::string& p_text, const std::string& q_text,
                   int shared, int d, int trials) {
  const Polynomial p0 = ctx.poly(p_text);
  const Polynomial q0 = ctx.poly(q_text);
  Polynomial r;
  int l = shared, m = 0, n = 0;
  if (mode == "disjoint") {
    require(shared == 0, ErrorCode::kUsage, "disjoint mode has no shared variables");
    m = p0.n_vars();
    n = q0.n_vars();
    r = amalgamate_disjoint(p0, q0, d);
  } else if (mode == "quadratic") {
    const int nv_p = std::max(p0.n_vars(), shared), nv_q = std::max(q0.n_vars(), shared);
    const AmalgamProblem prob{shared, parse_polynomial(p_text, nv_p), parse_polynomial(q_text, nv_q), d};
    m = prob.m();
    n = prob.n();
    r = amalgamate_quadratic(prob);
  } else if (mode == "deg2") {
    l = m = n = 1;
    r = amalgamate_deg2_onevar(parse_polynomial(p_text, 2), parse_polynomial(q_text, 2));
  } else {
    fail(ErrorCode::kUsage, "unknown mode '" + mode + "' (disjoint, quadratic, deg2)");
  }
  Rng rng(ctx.config.seed);
  const RZVerdict v = real_zero_probe(r, trials, ctx.config.root_tol, rng);
  Json j = ctx.header("amalgamate");
  j["mode"] = mode;
  j["shared"] = l;
  j["r"] = to_string(r);
  j["degree"] = r.is_zero() ? Json(nullptr) : Json(r.degree());
  j["restriction_first"] = to_string(restrict_to_first_block(r, l, m, n));
  j["restriction_second"] = to_string(restrict_to_second_block(r, l, m, n));
  j["real_zero_probe"] = to_json(v);
  ctx.emit(j);
  return v.passed ? kExitOk : kExitNegative;
}

std::vector<std::vector<Rational>> read_anchors(const std::string& path, int n) {
  const Json j = parse_json_text(read_file(path), "anchors file");
  const Json& list = j.is_object() ? j.at("anchors") : j;
  require(list.is_array() && !list.empty(), ErrorCode::kParse, "anchors must be a nonempty array of points");
  std::vector<std::vector<Rational>> out;
  for (const Json& a : list) {
    out.push_back(rational_vector_from_json(a));
    require(static_cast<int>(out.back().size()) == n, ErrorCode::kDimensionMismatch, "anchor has wrong length");
  }
  return out;
}

int cmd_tighten(Context& ctx, const std::string& text, const std::string& anchors_path, int rays) {
  require(rays >= 1, ErrorCode::kUsage, "--rays must be positive");
  const Polynomial p = ctx.poly(text);
  const std::vector<ShiftedPencil> family = shifted_pencil_family(p, read_anchors(anchors_path, p.n_vars()));
  const FamilyGauge fg(family);
  const SpectrahedronGauge plain(build_pencil(p));
  Rng rng(ctx.config.seed);
  const std::vector<std::vector<double>> dirs = sweep_directions(p.n_vars(), rays, rng);
  Json rows = Json::array();
  double max_before = 0.0, max_after = 0.0;
  bool nonincreasing = true;
  for (int k = 0; k < rays; ++k) {
    const double c = gauge_value(ray_gauge_C(p, dirs[k], ctx.config.root_tol));
    const double s = gauge_value(plain.gauge(dirs[k]));
    const double f = gauge_value(fg.gauge(dirs[k]));
    const double before = std::isinf(c) && std::isinf(s) ? 0.0 : s - c;
    const double after = std::isinf(c) && std::isinf(f) ? 0.0 : f - c;
    if (after > before + 1e-7) nonincreasing = false;
    max_before = std::max(max_before, before);
    max_after = std::max(max_after, after);
    rows.push_back(Json{{"ray_index", k},
                        {"direction", to_json(dirs[k])},
                        {"gauge_C", to_json(c)},
                        {"gauge_S", to_json(s)},
                        {"gauge_family", to_json(f)},
                        {"overshoot_before", to_json(before)},
                        {"overshoot_after", to_json(after)}});
  }
  Json anchors = Json::array();
  for (const ShiftedPencil& s : family) anchors.push_back(to_json(s.anchor));
  Json j = ctx.header("tighten");
  j["polynomial"] = to_string(p);
  j["anchors"] = anchors;
  j["max_overshoot_before"] = to_json(max_before);
  j["max_overshoot_after"] = to_json(max_after);
  j["overshoot_nonincreasing"] = nonincreasing;
  j["rays"] = rows;
  ctx.emit(j);
  return kExitOk;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_cell(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::kParse, "malformed CSV number '" + s + "'");
}

int cmd_plot(Context& ctx, const std::string& csv_path, const std::string& out_path) {
  std::stringstream in(read_file(csv_path));
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::kUsage, "empty CSV");
  const std::vector<std::string> head = split_csv_line(line);
  const auto col = [&](const std::string& name) {
    const auto it = std::find(head.begin(), head.end(), name);
    require(it != head.end(), ErrorCode::kParse, "CSV lacks column '" + name + "'");
    return static_cast<int>(it - head.begin());
  };
  const int ic = col("gauge_C"), is = col("gauge_S");
  const int dims = ic - 1;
  require(dims >= 1 && head.front() == "ray_index", ErrorCode::kParse, "CSV header does not match a sweep");

  struct Row {
    double angle, c, s;
  };
  std::vector<Row> rows;
  int index = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    require(cells.size() == head.size(), ErrorCode::kParse, "CSV row has the wrong number of cells");
    double angle = 2.0 * M_PI * index;
    if (dims >= 2) angle = std::atan2(parse_cell(cells[2]), parse_cell(cells[1]));
    else angle = parse_cell(cells[1]) >= 0 ? 0.0 : M_PI;
    rows.push_back({angle, parse_cell(cells[ic]), parse_cell(cells[is])});
    ++index;
  }
  require(!rows.empty(), ErrorCode::kUsage, "CSV has no rows");
  if (dims > 2)
    for (std::size_t k = 0; k < rows.size(); ++k) rows[k].angle = 2.0 * M_PI * k / rows.size();
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.angle < b.angle; });

  double radius = 0.0;
  for (const Row& r : rows)
    for (double v : {r.c, r.s})
      if (std::isfinite(v)) radius = std::max(radius, v);
  if (radius == 0.0) radius = 1.0;
  const double clip = 1.25 * radius;
  const double size = 480.0, mid = size / 2.0, scale = 0.9 * mid / clip;
  auto polyline = [&](bool use_c) {
    std::ostringstream pts;
    pts << std::fixed << std::setprecision(2);
    for (const Row& r : rows) {
      const double g = std::min(use_c ? r.c : r.s, clip);
      pts << mid + scale * g * std::cos(r.angle) << "," << mid - scale * g * std::sin(r.angle) << " ";
    }
    return pts.str();
  };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"0\" y1=\"" << mid << "\" x2=\"" << size << "\" y2=\"" << mid << "\" stroke=\"#ccc\"/>\n"
      << "<line x1=\"" << mid << "\" y1=\"0\" x2=\"" << mid << "\" y2=\"" << size << "\" stroke=\"#ccc\"/>\n"
      << "<polygon points=\"" << polyline(false) << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n"
      << "<polygon points=\"" << polyline(true) << "\" fill=\"none\" stroke=\"#2471a3\" stroke-width=\"1.5\" "
      << "stroke-dasharray=\"4 3\"/>\n"
      << "<text x=\"8\" y=\"18\" font-size=\"13\" fill=\"#2471a3\">gauge_C</text>\n"
      << "<text x=\"8\" y=\"36\" font-size=\"13\" fill=\"#c0392b\">gauge_S</text>\n"
      << "</svg>\n";
  if (out_path.empty() || out_path == "-") {
    ctx.out << svg.str();
  } else {
    std::ofstream f(out_path);
    require(static_cast<bool>(f), ErrorCode::kUsage, "cannot write '" + out_path + "'");
    f << svg.str();
    ctx.emit(Json{{"command", "plot"}, {"seed", ctx.config.seed}, {"output", out_path}, {"rays", rows.size()}});
  }
  return kExitOk;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RZ_SEED")) {
    try {
      return std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
      fail(ErrorCode::kUsage, std::string("RZ_SEED is not an integer: '") + env + "'");
    }
  }
  return kDefaultSeed;
}

}  // namespace

void validate(const RunConfig& c) {
  require(c.psd_tol > 0 && c.root_tol > 0 && c.gauge_tol > 0, ErrorCode::kUsage, "tolerances must be positive");
  require(c.max_vars >= 1 && c.max_vars <= kMaxVars, ErrorCode::kUsage,
          "max_vars must lie in 1.." + std::to_string(kMaxVars));
  require(c.max_cutoff >= 1 && c.max_cutoff <= kMaxCutoff, ErrorCode::kUsage,
          "max_cutoff must lie in 1.." + std::to_string(kMaxCutoff));
  require(c.max_degree >= 1 && c.max_degree <= kMaxCutoff, ErrorCode::kUsage,
          "max_degree must lie in 1.." + std::to_string(kMaxCutoff));
  require(c.format == "json" || c.format == "csv", ErrorCode::kUsage, "format must be json or csv");
}

RunConfig load_run_config(const std::string& path, RunConfig base) {
  const Json j = parse_json_text(read_file(path), "config file");
  require(j.is_object(), ErrorCode::kParse, "config must be a JSON object");
  try {
    base.seed = j.value("seed", base.seed);
    base.psd_tol = j.value("psd_tol", base.psd_tol);
    base.root_tol = j.value("root_tol", base.root_tol);
    base.gauge_tol = j.value("gauge_tol", base.gauge_tol);
    base.max_vars = j.value("max_vars", base.max_vars);
    base.max_degree = j.value("max_degree", base.max_degree);
    base.max_cutoff = j.value("max_cutoff", base.max_cutoff);
    base.format = j.value("format", base.format);
  } catch (const Json::type_error& e) {
    fail(ErrorCode::kParse, std::string("config: ") + e.what());
  }
  validate(base);
  return base;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Real zero polynomials: relaxations, gauges and determinantal representations", "rz"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  std::string config_path;
  std::string format;
  app.add_option("--seed", seed, "random seed (RZ_SEED sets the default)");
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));

  std::string poly, q_poly, dir, point, e_dir, anchors, kind, mode, csv_path, out_path;
  int trials = 64, virt = -1, cutoff = 3, hierarchy = 0, rays = 16, max_level = 3, shared = 0, degree = 2,
      size = 0;
  bool inf = false, strict = false, with_pencil = false;
  Relaxation relax;

  auto* rzcheck = app.add_subcommand("rzcheck", "probe the real zero property");
  rzcheck->add_option("-p,--poly", poly, "polynomial")->required();
  rzcheck->add_option("--trials", trials, "random directions");
  rzcheck->add_flag("--strict-quadratic", strict, "exact certificate for degree <= 2");

  auto* moments = app.add_subcommand("moments", "tabulate the pseudo-moments");
  moments->add_option("-p,--poly", poly, "polynomial")->required();
  moments->add_option("-d,--virtual-degree", virt, "virtual degree (default deg p)");
  moments->add_option("-D,--cutoff", cutoff, "maximal monomial degree");

  auto* pencil = app.add_subcommand("pencil", "build a relaxation pencil");
  pencil->add_option("-p,--poly", poly, "polynomial")->required();
  pencil->add_option("-d,--virtual-degree", virt, "virtual degree (default deg p)");
  pencil->add_flag("--inf", inf, "drop the constant row and column");
  pencil->add_option("--hierarchy", hierarchy, "hierarchy level");

  auto* half = app.add_subcommand("halfspace", "the polyhedral relaxation");
  half->add_option("-p,--poly", poly, "polynomial")->required();
  half->add_option("-d,--virtual-degree", virt, "virtual degree (default deg p)");

  auto* member = app.add_subcommand("member", "membership in C(p) and S(p)");
  member->add_option("-p,--poly", poly, "polynomial")->required();
  member->add_option("--point", point, "comma-separated point")->required();
  member->add_option("-d,--virtual-degree", virt, "virtual degree (default deg p)");

  auto add_relax = [&](CLI::App* sub) {
    sub->add_option("--relax", relax.kind, "pencil, inf, hierarchy or halfspace");
    sub->add_option("-d,--virtual-degree", relax.virtual_degree, "virtual degree (default deg p)");
    sub->add_option("--level", relax.level, "hierarchy level");
  };
  auto* gauge = app.add_subcommand("gauge", "gauges of C(p) and a relaxation along a ray");
  gauge->add_option("-p,--poly", poly, "polynomial")->required();
  gauge->add_option("--dir", dir, "comma-separated direction")->required();
  add_relax(gauge);

  auto* sweep = app.add_subcommand("sweep", "gauges along many rays");
  sweep->add_option("-p,--poly", poly, "polynomial")->required();
  sweep->add_option("--rays", rays, "number of rays");
  add_relax(sweep);

  auto* hier = app.add_subcommand("hierarchy", "gauges of the hierarchy pencils");
  hier->add_option("-p,--poly", poly, "polynomial")->required();
  hier->add_option("--max-level", max_level, "highest level");
  hier->add_option("--rays", rays, "number of rays");

  auto* cone = app.add_subcommand("cone", "eigenvalues and hyperbolicity cone membership");
  cone->add_option("-p,--poly", poly, "homogeneous polynomial")->required();
  cone->add_option("-e", e_dir, "hyperbolicity direction")->required();
  cone->add_option("--point", point, "comma-separated point")->required();
  cone->add_option("--trials", trials, "random directions for the probe");
  cone->add_flag("--pencil", with_pencil, "evaluate the homogeneous pencil too");

  auto* detrep = app.add_subcommand("detrep", "determinantal representations");
  detrep->add_option("kind", kind, "quad2, lincofactor or saunderson")->required();
  detrep->add_option("-p,--poly", poly, "polynomial");
  detrep->add_option("--size", size, "matrix size for saunderson");

  auto* amalg = app.add_subcommand("amalgamate", "real zero amalgamation");
  amalg->add_option("--mode", mode, "disjoint, quadratic or deg2")->required();
  amalg->add_option("-p", poly, "first polynomial")->required();
  amalg->add_option("-q", q_poly, "second polynomial")->required();
  amalg->add_option("--shared", shared, "number of shared leading variables");
  amalg->add_option("-d", degree, "degree bound");
  amalg->add_option("--trials", trials, "random directions for the probe");

  auto* tighten = app.add_subcommand("tighten", "intersect shifted relaxations");
  tighten->add_option("-p,--poly", poly, "polynomial")->required();
  tighten->add_option("--anchors", anchors, "JSON file with anchor points")->required();
  tighten->add_option("--rays", rays, "number of rays");

  auto* plot = app.add_subcommand("plot", "SVG polar plot of a sweep CSV");
  plot->add_option("--csv", csv_path, "sweep CSV")->required();
  plot->add_option("-o,--output", out_path, "SVG file (default stdout)");

  std::vector<std::string> argv_store{"rz"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    write_error(err, "usage", e.what());
    return kExitUsage;
  }

  try {
    RunConfig config;
    config.seed = default_seed();
    if (!config_path.empty()) config = load_run_config(config_path, config);
    if (seed) config.seed = *seed;
    if (!format.empty()) config.format = format;
    validate(config);
    Context ctx{config, out, err};

    if (*rzcheck) return cmd_rzcheck(ctx, poly, trials, strict);
    if (*moments) return cmd_moments(ctx, poly, virt, cutoff);
    if (*pencil) return cmd_pencil(ctx, poly, virt, inf, hierarchy);
    if (*half) return cmd_halfspace(ctx, poly, virt);
    if (*member) return cmd_member(ctx, poly, point, virt);
    if (*gauge) return cmd_gauge(ctx, poly, dir, relax);
    if (*sweep) return cmd_sweep(ctx, poly, rays, relax);
    if (*hier) return cmd_hierarchy(ctx, poly, max_level, rays);
    if (*cone) return cmd_cone(ctx, poly, e_dir, point, trials, with_pencil);
    if (*detrep) return cmd_detrep(ctx, kind, poly, size);
    if (*amalg) return cmd_amalgamate(ctx, mode, poly, q_poly, shared, degree, trials);
    if (*tighten) return cmd_tighten(ctx, poly, anchors, rays);
    if (*plot) return cmd_plot(ctx, csv_path, out_path);
    fail(ErrorCode::kUsage, "no subcommand");
  } catch (const Error& e) {
    write_error(err, to_string(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    write_error(err, "numerical", e.what());
    return kExitNumerical;
  }
}

}  // namespace rz
