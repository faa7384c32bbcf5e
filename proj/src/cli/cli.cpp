#include "hypar/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "hypar/analysis.hpp"
#include "hypar/embedcheck.hpp"

namespace hypar::cli {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace

json RunConfig::to_json() const {
  json j;
  j["command"] = command;
  j["kind"] = kind;
  j["n"] = n;
  j["theta_deg"] = thetas;
  j["digits"] = digits;
  j["digits_start"] = digits_start;
  j["digits_max"] = digits_max;
  j["digit_grid"] = digit_grid;
  j["n_cap"] = n_cap;
  j["trilateration"] = trilateration;
  j["input"] = input;
  j["out"] = out;
  j["mesh"] = mesh;
  j["csv"] = csv;
  j["svg"] = svg;
  j["dump_pattern"] = dump_pattern;
  j["format"] = format;
  j["check_embedding"] = check_embedding;
  j["jobs"] = jobs;
  return j;
}

std::vector<Instance> audit_grid() {
  std::vector<Instance> g;
  for (int t : {2, 30, 45, 76, 120, 178})
    for (int n : {1, 4, 8}) g.push_back({n, mpq_class(t), pattern::Kind::AlternatingAsymmetric});
  // (theta, n) pairs at or inside the self-intersection frontier.
  const std::pair<int, int> asym[] = {{2, 8}, {8, 8}, {20, 8}, {30, 8}, {40, 7},  {48, 5},
                                      {60, 5}, {74, 3}, {120, 3}, {178, 3}, {10, 1}};
  for (auto [t, n] : asym) g.push_back({n, mpq_class(t), pattern::Kind::Asymmetric});
  return g;
}

namespace {

pattern::Kind kind_of(const std::string& s) {
  auto k = pattern::parse_kind(s);
  if (!k) throw UsageError("unknown triangulation kind '" + s + "' (use asym or alt)");
  return *k;
}

geom::Trilateration scheme_of(const std::string& s) {
  if (s == "frame") return geom::Trilateration::Frame;
  if (s == "gram") return geom::Trilateration::Gram;
  throw UsageError("unknown trilateration scheme '" + s + "' (use frame or gram)");
}

mpq_class theta_of(const std::string& s) {
  mpq_class q;
  try {
    q = fold::parse_theta(s);
  } catch (const std::exception&) {
    throw UsageError("bad angle '" + s + "'");
  }
  if (q <= 0 || q >= 180) throw UsageError("angle " + s + " outside (0, 180)");
  return q;
}

// "8,30,74" and "2:40:2" (inclusive range) forms, freely mixed.
std::vector<mpq_class> expand_thetas(const std::vector<std::string>& items) {
  std::vector<mpq_class> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    for (std::string tok; std::getline(ss, tok, ',');) {
      if (tok.empty()) continue;
      if (tok.find(':') == std::string::npos) {
        out.push_back(theta_of(tok));
        continue;
      }
      std::vector<std::string> parts;
      std::stringstream ts(tok);
      for (std::string p; std::getline(ts, p, ':');) parts.push_back(p);
      if (parts.size() != 3) throw UsageError("range '" + tok + "' must be start:stop:step");
      const mpq_class a = theta_of(parts[0]), b = theta_of(parts[1]);
      mpq_class step;
      try {
        step = fold::parse_theta(parts[2]);
      } catch (const std::exception&) {
        throw UsageError("bad range step in '" + tok + "'");
      }
      if (step <= 0) throw UsageError("range step must be positive in '" + tok + "'");
      for (mpq_class t = a; t <= b; t += step) out.push_back(t);
    }
  }
  return out;
}

bool on_table_grid(const mpq_class& t) {
  return t.get_den() == 1 && t.get_num() % 2 == 0 && t >= 2 && t <= 178;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

std::string header_text(const RunConfig& cfg, int digits_used) {
  std::string s = "hypar " + cfg.command + "\n";
  s += std::string("library_version: ") + fold::kLibraryVersion + "\n";
  s += "digits_used: " + std::to_string(digits_used) + "\n";
  s += "run_config: " + cfg.to_json().dump() + "\n";
  return s;
}

std::string comment(const std::string& text, const char* prefix = "# ") {
  std::string out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out += prefix + line + "\n";
  return out;
}

void stamp(json& doc, const RunConfig& cfg, int digits_used) {
  doc["run_config"] = cfg.to_json();
  doc["library_version"] = fold::kLibraryVersion;
  doc["digits_used"] = digits_used;
}

int exit_for(const fold::ConstructError& e) {
  return e.kind == fold::ConstructError::Kind::CertainlyInfeasible ? kInfeasible : kPrecisionExhausted;
}

// Runs body(i) for i in [0, count) on up to `jobs` threads.
template <class F>
void parallel_for(int count, int jobs, F&& body) {
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i; (i = next++) < count;) body(i);
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::min(jobs, count); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

struct Built {
  std::optional<fold::FoldState> state;
  std::optional<fold::ConstructError> error;
};

Built build(const RunConfig& cfg, int n, const mpq_class& theta, pattern::Kind kind) {
  const auto scheme = scheme_of(cfg.trilateration);
  Built b;
  if (cfg.digits > 0) {
    auto r = fold::construct(n, theta, kind, cfg.digits, scheme);
    if (auto* st = std::get_if<fold::FoldState>(&r))
      b.state = std::move(*st);
    else
      b.error = std::get<fold::ConstructError>(r);
  } else {
    auto r = fold::construct_auto(n, theta, kind, cfg.digits_start, cfg.digits_max, scheme);
    b.state = std::move(r.state);
    b.error = r.error;
  }
  return b;
}

json embed_json(const embed::EmbedReport& rep) {
  json j = rep.to_json();
  j.erase("wall_seconds");
  return j;
}

int cmd_fold(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 1) throw UsageError("--n must be at least 1");
  if (cfg.thetas.size() != 1) throw UsageError("fold takes exactly one --theta");
  const auto kind = kind_of(cfg.kind);
  const mpq_class theta = theta_of(cfg.thetas[0]);
  scheme_of(cfg.trilateration);

  if (!cfg.dump_pattern.empty()) {
    json p = pattern::to_json(pattern::build_pattern(cfg.n, kind));
    stamp(p, cfg, 0);
    emit(cfg.dump_pattern, p.dump(2) + "\n", out);
  }

  RunConfig run = cfg;
  Built b = build(run, cfg.n, theta, kind);
  std::optional<embed::EmbedReport> rep;
  while (b.state && cfg.check_embedding) {
    rep = embed::check_embedding(*b.state);
    if (rep->verdict != embed::Verdict3::Indeterminate || cfg.digits > 0) break;
    const int next = b.state->digits * 2;
    if (next > cfg.digits_max) break;
    err << "embedding check inconclusive at " << b.state->digits << " digits, retrying at " << next << "\n";
    run.digits_start = next;
    b = build(run, cfg.n, theta, kind);
  }
  if (b.error) {
    err << "construction failed: " << b.error->describe() << "\n";
    return exit_for(*b.error);
  }
  fold::FoldState& st = *b.state;
  const auto angles = fold::fold_angles(st);
  json doc = fold::to_json(st, &angles);
  stamp(doc, cfg, st.digits);
  int code = kOk;
  if (rep) {
    doc["embedding"] = embed_json(*rep);
    if (rep->verdict == embed::Verdict3::CertainlyIntersecting) {
      err << "folding self-intersects: faces " << (*rep->offending)[0] << " and " << (*rep->offending)[1] << "\n";
      code = kSelfIntersection;
    } else if (rep->verdict == embed::Verdict3::Indeterminate) {
      err << "embedding undecided: " << rep->indeterminate.size() << " face pairs indeterminate at "
          << st.digits << " digits\n";
      code = kPrecisionExhausted;
    }
  }
  emit(cfg.out, doc.dump(2) + "\n", out);
  if (!cfg.mesh.empty()) emit(cfg.mesh, comment(header_text(cfg, st.digits)) + fold::to_obj(st), out);
  err << "constructed n=" << st.rings() << " theta=" << fold::theta_to_string(theta) << " kind="
      << pattern::to_string(kind) << " at " << st.digits << " digits";
  if (rep) err << ", embedding " << embed::to_string(rep->verdict);
  if (!st.flags.empty()) err << ", " << st.flags.size() << " flags";
  err << "\n";
  return code;
}

int cmd_limits(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto kind = kind_of(cfg.kind);
  const auto thetas = expand_thetas(cfg.thetas);
  if (thetas.empty()) throw UsageError("limits needs at least one --theta");
  embed::MaxRingsOptions opt;
  opt.n_cap = cfg.n_cap > 0 ? cfg.n_cap : 200;
  opt.digits_start = cfg.digits_start;
  opt.digits_max = cfg.digits_max;
  opt.scheme = scheme_of(cfg.trilateration);

  const int count = static_cast<int>(thetas.size());
  std::vector<embed::MaxRingsResult> res(count);
  std::vector<std::string> crash(count);
  parallel_for(count, cfg.jobs, [&](int i) {
    try {
      res[i] = embed::max_rings(thetas[i], kind, opt);
    } catch (const std::exception& e) {
      crash[i] = e.what();
    }
  });

  std::map<mpq_class, int> limits;
  int digits_used = 0;
  json rows = json::array();
  for (int i = 0; i < count; ++i) {
    const auto& r = res[i];
    json row;
    row["theta_deg"] = fold::theta_to_string(thetas[i]);
    row["off_grid"] = !on_table_grid(thetas[i]);
    if (!crash[i].empty()) {
      row["status"] = "Error";
      row["detail"] = crash[i];
    } else {
      row["status"] = embed::to_string(r.status);
      row["n_max"] = r.n_max;
      row["digits_used"] = r.digits_used;
      row["detail"] = r.detail;
      digits_used = std::max(digits_used, r.digits_used);
      if (r.status == embed::MaxRingsResult::Status::Frontier) limits[thetas[i]] = r.n_max;
    }
    rows.push_back(row);
  }
  const auto study = analysis::ntheta_study(limits);

  if (cfg.format == "json") {
    json doc;
    doc["format"] = "hypar-limits";
    doc["kind"] = pattern::to_string(kind);
    doc["rows"] = rows;
    json s;
    s["theta_limit_deg"] = study.limit_deg;
    s["count"] = study.summarized;
    s["min"] = study.min;
    s["max"] = study.max;
    s["mean"] = study.mean;
    s["band"] = {study.band_lo, study.band_hi};
    s["within_band"] = study.within_band;
    doc["n_theta"] = s;
    stamp(doc, cfg, digits_used);
    emit(cfg.out, doc.dump(2) + "\n", out);
  } else {
    std::ostringstream t;
    t << comment(header_text(cfg, digits_used));
    t << "# largest n with a certified proper folding, " << pattern::to_string(kind) << " triangulation\n";
    t << std::left << std::setw(10) << "theta" << std::setw(8) << "n_max" << std::setw(12) << "status"
      << std::setw(8) << "digits" << std::setw(10) << "n*theta" << "note\n";
    for (int i = 0; i < count; ++i) {
      const auto& row = rows[i];
      t << std::setw(10) << row["theta_deg"].get<std::string>();
      if (row["status"] == "Error") {
        t << std::setw(8) << "-" << std::setw(12) << "Error" << std::setw(8) << "-" << std::setw(10) << "-";
      } else {
        const int n = row["n_max"].get<int>();
        t << std::setw(8) << n << std::setw(12) << row["status"].get<std::string>() << std::setw(8)
          << row["digits_used"].get<int>() << std::setw(10) << mpq_class(thetas[i] * n).get_d();
      }
      std::string note = row["off_grid"].get<bool>() ? "off-grid" : "";
      const std::string detail = row["detail"].get<std::string>();
      if (row["status"] != "Frontier" && !detail.empty()) note += (note.empty() ? "" : "; ") + detail;
      t << note << "\n";
    }
    t << "# n*theta over theta <= " << study.limit_deg << ": " << study.summarized << " rows";
    if (study.summarized)
      t << ", min " << study.min << ", max " << study.max << ", mean " << study.mean << ", " << study.within_band
        << " within [" << study.band_lo << ", " << study.band_hi << "]";
    t << "\n";
    emit(cfg.out, t.str(), out);
  }
  for (int i = 0; i < count; ++i)
    if (!crash[i].empty()) err << "theta " << fold::theta_to_string(thetas[i]) << ": " << crash[i] << "\n";
  return kOk;
}

int cmd_precision(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto kind = kind_of(cfg.kind);
  const auto thetas = expand_thetas(cfg.thetas);
  if (thetas.empty()) throw UsageError("precision needs at least one --theta");
  std::vector<int> grid = cfg.digit_grid;
  if (grid.empty()) grid = {16, 32, 64, 128, 256, 512, 1024, 2048};
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid[i] < 4 || (i && grid[i] <= grid[i - 1]))
      throw UsageError("--digit-grid must be ascending with entries >= 4");
  const int cap = cfg.n_cap > 0 ? cfg.n_cap : 100;
  const auto scheme = scheme_of(cfg.trilateration);

  const int count = static_cast<int>(thetas.size());
  std::vector<analysis::PrecisionCurve> curves(count);
  parallel_for(count, cfg.jobs,
               [&](int i) { curves[i] = analysis::precision_curve(thetas[i], kind, grid, cap, scheme); });

  if (cfg.format == "json") {
    json doc;
    doc["format"] = "hypar-precision";
    doc["kind"] = pattern::to_string(kind);
    doc["n_cap"] = cap;
    doc["digit_grid"] = grid;
    json rows = json::array();
    for (const auto& c : curves) {
      json row;
      row["theta_deg"] = fold::theta_to_string(c.theta_deg);
      json pts = json::array();
      for (const auto& p : c.points)
        pts.push_back({{"digits", p.digits}, {"n", p.n}, {"capped", p.capped}, {"stopped_by", p.stopped_by}});
      row["points"] = pts;
      row["monotone"] = c.monotone;
      row["loglog_slope"] = c.loglog_slope ? json(*c.loglog_slope) : json(nullptr);
      rows.push_back(row);
    }
    doc["rows"] = rows;
    stamp(doc, cfg, grid.back());
    emit(cfg.out, doc.dump(2) + "\n", out);
    return kOk;
  }
  std::ostringstream t;
  t << comment(header_text(cfg, grid.back()));
  t << "# rings constructed at fixed precision before the first failure\n";
  t << std::left << std::setw(24) << "digits of precision";
  for (int d : grid) t << std::right << std::setw(7) << d;
  t << "   slope\n";
  for (const auto& c : curves) {
    t << std::left << std::setw(24) << ("n for theta=" + fold::theta_to_string(c.theta_deg) + " " + pattern::to_string(kind));
    for (const auto& p : c.points) t << std::right << std::setw(7) << ((p.capped ? ">=" : "") + std::to_string(p.n));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", c.loglog_slope.value_or(0));
    t << "   " << (c.loglog_slope ? buf : "-") << (c.monotone ? "" : "  (not monotone)") << "\n";
  }
  emit(cfg.out, t.str(), out);
  return kOk;
}

int cmd_audit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<fold::FoldState> states;
  std::vector<std::string> names;
  int code = kOk;
  if (!cfg.input.empty()) {
    std::ifstream f(cfg.input);
    if (!f) throw UsageError("cannot read " + cfg.input);
    try {
      states.push_back(fold::from_json(json::parse(f)));
    } catch (const std::exception& e) {
      err << cfg.input << ": " << e.what() << "\n";
      return kAuditFailure;
    }
    names.push_back(cfg.input);
  } else {
    std::vector<Instance> grid;
    if (cfg.n > 0) {
      if (cfg.thetas.size() != 1) throw UsageError("audit with --n takes exactly one --theta");
      grid.push_back({cfg.n, theta_of(cfg.thetas[0]), kind_of(cfg.kind)});
    } else {
      grid = audit_grid();
    }
    std::vector<Built> built(grid.size());
    parallel_for(static_cast<int>(grid.size()), cfg.jobs,
                 [&](int i) { built[i] = build(cfg, grid[i].n, grid[i].theta_deg, grid[i].kind); });
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const std::string name = std::string(pattern::to_string(grid[i].kind)) + " n=" + std::to_string(grid[i].n) +
                               " theta=" + fold::theta_to_string(grid[i].theta_deg);
      if (built[i].error) {
        err << name << ": construction failed: " << built[i].error->describe() << "\n";
        code = std::max(code, exit_for(*built[i].error));
        continue;
      }
      states.push_back(std::move(*built[i].state));
      names.push_back(name);
    }
  }

  std::ostringstream t;
  int digits_used = 0;
  for (const auto& s : states) digits_used = std::max(digits_used, s.digits);
  t << comment(header_text(cfg, digits_used));
  bool failed = false;

  const auto ft = embed::four_triangle_obstruction(embed::default_phi_grid());
  int ft_ok = 0;
  for (const auto& c : ft.cases) ft_ok += c.passed();
  t << "four-triangle obstruction: " << ft_ok << "/" << ft.cases.size() << " angles certified at " << ft.digits
    << " digits\n";
  for (const auto& c : ft.cases)
    if (!c.passed()) t << "  FAIL phi=" << fold::theta_to_string(c.phi_deg) << "\n";
  failed |= !ft.passed();

  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& st = states[i];
    long iso_n = 0, mv_n = 0;
    const auto iso = fold::isometry_audit(st, &iso_n);
    const auto mv = fold::mv_audit(st, &mv_n);
    const auto d4 = embed::degree4_sign_audit(st);
    t << names[i] << " (" << st.digits << " digits): isometry " << iso_n - static_cast<long>(iso.size()) << "/"
      << iso_n << ", mountain-valley " << mv_n - static_cast<long>(mv.size()) << "/" << mv_n << ", degree-4 ";
    if (d4.vertices == 0)
      t << "vacuous (no interior degree-4 vertex)";
    else
      t << d4.passed << "/" << d4.vertices << (d4.indeterminate ? " (" + std::to_string(d4.indeterminate) + " undecided)" : "");
    t << "\n";
    for (const auto& a : iso) t << "  FAIL isometry " << a.where << ": " << a.what << "\n";
    for (const auto& a : mv) t << "  FAIL mountain-valley " << a.where << ": " << a.what << "\n";
    for (const auto& f : d4.failures) t << "  FAIL degree-4 " << f.detail << "\n";
    if (d4.indeterminate) t << "  FAIL degree-4: " << d4.indeterminate << " vertices with uncertain signs\n";
    failed |= !iso.empty() || !mv.empty() || !d4.ok();
  }
  t << (failed ? "audit FAILED\n" : "audit passed\n");
  emit(cfg.out, t.str(), out);
  if (failed) return kAuditFailure;
  return code;
}

int cmd_cross_section(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 1) throw UsageError("--n must be at least 1");
  if (cfg.thetas.size() != 1) throw UsageError("cross-section takes exactly one --theta");
  const auto kind = kind_of(cfg.kind);
  const mpq_class theta = theta_of(cfg.thetas[0]);
  Built b = build(cfg, cfg.n, theta, kind);
  if (b.error) {
    err << "construction failed: " << b.error->describe() << "\n";
    return exit_for(*b.error);
  }
  const auto cs = analysis::cross_section(*b.state);
  analysis::FitReport fit;
  try {
    fit = analysis::fit_and_deviate(cs);
  } catch (const analysis::InsufficientPoints& e) {
    throw UsageError(e.what());
  }
  std::string head = header_text(cfg, b.state->digits);
  head += "coordinates: u = horizontal radius, z = height of UR(k) in the frame symmetric about the central "
          "fold, k = 0 is the center\n";
  head += "u_increasing: " + std::string(cs.u_increasing ? "certified" : "no") + "\n";
  emit(cfg.csv.empty() ? cfg.out : cfg.csv, analysis::to_csv(fit, head), out);
  if (!cfg.svg.empty()) {
    emit(cfg.svg + "_section.svg", analysis::section_svg(fit, head), out);
    emit(cfg.svg + "_abs.svg", analysis::abs_dev_svg(fit, head), out);
    emit(cfg.svg + "_rel.svg", analysis::rel_dev_svg(fit, head), out);
  }
  err << "max |fit - actual| = " << fit.max_abs_dev << " at k=" << fit.max_abs_dev_k << " ("
      << b.state->digits << " digits)\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv(kDigitsMaxEnv)) {
    try {
      cfg.digits_max = std::stoi(env);
    } catch (const std::exception&) {
      err << kDigitsMaxEnv << " is not an integer: " << env << "\n";
      return kUsage;
    }
  }

  CLI::App app{"Certified construction and analysis of triangulated hypar foldings", "hypar"};
  app.set_version_flag("--version", fold::kLibraryVersion);
  app.require_subcommand(1);

  auto common = [&](CLI::App* s) {
    s->add_option("--kind", cfg.kind, "Triangulation: asym or alt")->capture_default_str();
    s->add_option("--digits-start", cfg.digits_start, "First precision tried when escalating")->capture_default_str();
    s->add_option("--digits-max", cfg.digits_max, std::string("Precision cap (default from ") + kDigitsMaxEnv + ")")
        ->capture_default_str();
    s->add_option("--trilateration", cfg.trilateration, "Sphere intersection scheme: frame or gram")
        ->capture_default_str();
    s->add_option("-o,--out", cfg.out, "Output file (default stdout)");
  };

  auto* fold_cmd = app.add_subcommand("fold", "Construct one folding and write its state");
  common(fold_cmd);
  fold_cmd->add_option("--n", cfg.n, "Number of rings")->required();
  fold_cmd->add_option("--theta", cfg.thetas, "Central fold angle in degrees (e.g. 30, 1/3, 179.5)")
      ->required()
      ->expected(1);
  fold_cmd->add_option("--digits", cfg.digits, "Fixed precision; no escalation");
  auto* auto_flag = fold_cmd->add_flag("--auto", "Escalate precision from --digits-start (the default)");
  fold_cmd->add_flag("--check-embedding", cfg.check_embedding, "Certify that the folding does not self-intersect");
  fold_cmd->add_option("--mesh", cfg.mesh, "Write a midpoint OBJ mesh");
  fold_cmd->add_option("--dump-pattern", cfg.dump_pattern, "Write the crease pattern as JSON");

  auto* limits_cmd = app.add_subcommand("limits", "Largest n with a proper folding, per angle");
  common(limits_cmd);
  limits_cmd->add_option("--theta", cfg.thetas, "Angles: lists (8,30,74) and ranges (2:40:2)");
  limits_cmd->add_option("--n-cap", cfg.n_cap, "Stop growing at this many rings (default 200)");
  limits_cmd->add_option("--format", cfg.format, "text or json")->capture_default_str();
  limits_cmd->add_option("-j,--jobs", cfg.jobs, "Angles processed concurrently")->capture_default_str();

  auto* prec_cmd = app.add_subcommand("precision", "Rings constructible at fixed precisions");
  common(prec_cmd);
  prec_cmd->add_option("--theta", cfg.thetas, "Angles, one table row each")->required();
  prec_cmd->add_option("--digit-grid", cfg.digit_grid, "Ascending precisions (default 16,32,...,2048)")
      ->delimiter(',');
  prec_cmd->add_option("--n-cap", cfg.n_cap, "Stop counting at this many rings (default 100)");
  prec_cmd->add_option("--format", cfg.format, "text or json")->capture_default_str();
  prec_cmd->add_option("-j,--jobs", cfg.jobs, "Rows processed concurrently")->capture_default_str();

  auto* audit_cmd = app.add_subcommand("audit", "Obstruction lemmas, isometry, mountain-valley and degree-4 audits");
  common(audit_cmd);
  audit_cmd->add_option("--input", cfg.input, "Audit a fold state file instead of constructing");
  audit_cmd->add_option("--n", cfg.n, "Audit one constructed instance (default: built-in grid)");
  audit_cmd->add_option("--theta", cfg.thetas, "Angle for --n");
  audit_cmd->add_option("--digits", cfg.digits, "Fixed precision; no escalation");
  audit_cmd->add_option("-j,--jobs", cfg.jobs, "Grid instances constructed concurrently")->capture_default_str();

  auto* cs_cmd = app.add_subcommand("cross-section", "Diagonal cross-section with parabolic fits");
  common(cs_cmd);
  cs_cmd->add_option("--n", cfg.n, "Number of rings")->required();
  cs_cmd->add_option("--theta", cfg.thetas, "Central fold angle in degrees")->required()->expected(1);
  cs_cmd->add_option("--digits", cfg.digits, "Fixed precision; no escalation");
  cs_cmd->add_option("--csv", cfg.csv, "CSV output (default --out)");
  cs_cmd->add_option("--svg", cfg.svg, "Write PREFIX_section.svg, PREFIX_abs.svg and PREFIX_rel.svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (cfg.jobs < 1) throw UsageError("--jobs must be at least 1");
    if (cfg.digits != 0 && cfg.digits < 4) throw UsageError("--digits must be at least 4");
    if (cfg.digits_start < 4 || cfg.digits_start > cfg.digits_max)
      throw UsageError("need 4 <= --digits-start <= --digits-max");
    if (cfg.format != "text" && cfg.format != "json") throw UsageError("--format must be text or json");
    if (fold_cmd->parsed()) {
      if (cfg.digits > 0 && auto_flag->count()) throw UsageError("--digits and --auto are exclusive");
      cfg.command = "fold";
      return cmd_fold(cfg, out, err);
    }
    if (limits_cmd->parsed()) {
      cfg.command = "limits";
      return cmd_limits(cfg, out, err);
    }
    if (prec_cmd->parsed()) {
      cfg.command = "precision";
      return cmd_precision(cfg, out, err);
    }
    if (audit_cmd->parsed()) {
      cfg.command = "audit";
      return cmd_audit(cfg, out, err);
    }
    cfg.command = "cross-section";
    return cmd_cross_section(cfg, out, err);
  } catch (const UsageError& e) {
    err << "hypar: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace hypar::cli
