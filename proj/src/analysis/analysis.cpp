#include "hypar/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace hypar::analysis {

using geom::IVec3;

namespace {

IVec3 unit(const IVec3& v) { return geom::scale(v, Interval::exact(1, v.digits()) / ival::sqrt(geom::norm_sq(v))); }

mpq_class midq(const Interval& v) { return ival::mid(v).to_rational(); }

}  // namespace

CrossSection cross_section(const fold::FoldState& st) {
  using pattern::CornerId;
  const auto P = [&](int ring, pattern::Corner c) -> const IVec3& { return st.pos(CornerId{ring, c}.id()); };
  const IVec3& ll = P(1, pattern::LL);
  const IVec3& lr = P(1, pattern::LR);
  const IVec3& ur = P(1, pattern::UR);
  const IVec3& ul = P(1, pattern::UL);

  // Both central triangles have the paper's top side facing along their
  // normals; the vertical is their bisector.
  const IVec3 e1 = unit(ur - ll);
  const IVec3 up = unit(unit(geom::cross(lr - ll, ur - ll)) + unit(geom::cross(ur - ll, ul - ll)));
  const IVec3 e2 = geom::cross(up, e1);
  const IVec3 center = geom::scale(ll + ur, Interval::from_rational(mpq_class(1, 2), st.digits));

  CrossSection cs;
  const Interval zero = Interval::exact(0, st.digits);
  cs.points.push_back({0, zero, zero});
  for (int k = 1; k <= st.rings(); ++k) {
    const IVec3 p = P(k, pattern::UR) - center;
    const Interval x = geom::dot(p, e1), y = geom::dot(p, e2);
    cs.points.push_back({k, ival::sqrt(sqr(x) + sqr(y)), geom::dot(p, up)});
  }
  cs.u_increasing = true;
  for (std::size_t i = 1; i < cs.points.size(); ++i)
    if (compare(cs.points[i - 1].u.hi(), cs.points[i].u.lo()) >= 0) cs.u_increasing = false;
  return cs;
}

namespace {

ParabolaFit fit_class(const CrossSection& cs, bool even) {
  std::vector<const SectionPoint*> cls;
  for (const auto& p : cs.points)
    if (p.even() == even) cls.push_back(&p);
  if (cls.size() < 3)
    throw InsufficientPoints(std::string(even ? "even" : "odd") + " class has " + std::to_string(cls.size()) +
                             " points, the fit needs 3");
  std::stable_sort(cls.begin(), cls.end(),
                   [](const SectionPoint* a, const SectionPoint* b) { return compare(a->u.lo(), b->u.lo()) > 0; });
  ParabolaFit f;
  mpq_class u[3], z[3];
  for (int i = 0; i < 3; ++i) {
    f.through[i] = cls[i]->k;
    u[i] = midq(cls[i]->u);
    z[i] = midq(cls[i]->z);
  }
  if (u[0] == u[1] || u[1] == u[2] || u[0] == u[2])
    throw InsufficientPoints("defining points of the fit share a radius");
  const mpq_class f01 = (z[1] - z[0]) / (u[1] - u[0]);
  const mpq_class f12 = (z[2] - z[1]) / (u[2] - u[1]);
  f.a = (f12 - f01) / (u[2] - u[0]);
  f.b = f01 - f.a * (u[0] + u[1]);
  f.c = z[0] - f01 * u[0] + f.a * u[0] * u[1];
  return f;
}

}  // namespace

FitReport fit_and_deviate(const CrossSection& cs) {
  FitReport r;
  r.even = fit_class(cs, true);
  r.odd = fit_class(cs, false);
  for (const auto& p : cs.points) {
    const mpq_class u = midq(p.u), z = midq(p.z);
    const mpq_class fit = (p.even() ? r.even : r.odd).at(u);
    Deviation d;
    d.k = p.k;
    d.even = p.even();
    d.u = u.get_d();
    d.z = z.get_d();
    d.fit = fit.get_d();
    d.abs_dev = mpq_class(fit - z).get_d();
    if (z != 0) d.rel_dev = mpq_class(fit / z).get_d();
    if (std::abs(d.abs_dev) > std::abs(r.max_abs_dev)) {
      r.max_abs_dev = d.abs_dev;
      r.max_abs_dev_k = d.k;
    }
    r.rows.push_back(d);
  }
  r.max_abs_dev = std::abs(r.max_abs_dev);
  return r;
}

NThetaReport ntheta_study(const std::map<mpq_class, int>& limits, double limit_deg) {
  NThetaReport rep;
  rep.limit_deg = limit_deg;
  double sum = 0;
  for (const auto& [theta, n] : limits) {
    NThetaRow row{theta, n, mpq_class(theta * n).get_d()};
    rep.rows.push_back(row);
    if (theta.get_d() > limit_deg) continue;
    if (rep.summarized == 0) rep.min = rep.max = row.product;
    rep.min = std::min(rep.min, row.product);
    rep.max = std::max(rep.max, row.product);
    sum += row.product;
    ++rep.summarized;
    if (row.product >= rep.band_lo && row.product <= rep.band_hi) ++rep.within_band;
  }
  if (rep.summarized) rep.mean = sum / rep.summarized;
  return rep;
}

PrecisionCurve precision_curve(const mpq_class& theta_deg, pattern::Kind kind, const std::vector<int>& grid, int n_cap,
                               geom::Trilateration scheme) {
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid[i] < 4 || (i && grid[i] <= grid[i - 1]))
      throw std::invalid_argument("precision_curve: digit grid must be ascending and >= 4");
  if (theta_deg <= 0 || theta_deg >= 180) throw std::invalid_argument("precision_curve: theta must lie in (0, 180)");
  PrecisionCurve out;
  out.theta_deg = theta_deg;
  out.kind = kind;
  for (int d : grid) {
    PrecisionPoint pt;
    pt.digits = d;
    fold::FoldState st = fold::place_central(theta_deg, kind, d, scheme);
    if (!ival::is_certain_nonzero(fold::crease_sign(st, 0))) {
      pt.stopped_by = "central diagonal fold not certainly nontrivial";
    } else {
      pt.n = 1;
      while (pt.n < n_cap) {
        if (auto err = fold::ring_step(st)) {
          pt.stopped_by = err->describe();
          break;
        }
        pt.n = st.rings();
      }
      pt.capped = pt.stopped_by.empty();
    }
    if (!out.points.empty() && pt.n < out.points.back().n) out.monotone = false;
    out.points.push_back(pt);
  }
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : out.points)
    if (p.n > 0 && !p.capped) xy.emplace_back(std::log(p.digits), std::log(p.n));
  if (xy.size() >= 2) {
    double mx = 0, my = 0;
    for (auto [x, y] : xy) mx += x, my += y;
    mx /= xy.size();
    my /= xy.size();
    double sxy = 0, sxx = 0;
    for (auto [x, y] : xy) sxy += (x - mx) * (y - my), sxx += (x - mx) * (x - mx);
    out.loglog_slope = sxy / sxx;
  }
  return out;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string comment_lines(const std::string& text, const char* prefix) {
  std::string out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out += prefix + line + "\n";
  return out;
}

}  // namespace

std::string to_csv(const FitReport& fit, const std::string& header_comment) {
  std::string out = comment_lines(header_comment, "# ");
  out += "k,u,z,class,fit,abs_dev,rel_dev\n";
  for (const auto& d : fit.rows) {
    out += std::to_string(d.k) + "," + num(d.u) + "," + num(d.z) + "," + (d.even ? "even" : "odd") + "," +
           num(d.fit) + "," + num(d.abs_dev) + "," + (d.rel_dev ? num(*d.rel_dev) : std::string()) + "\n";
  }
  return out;
}

namespace {

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

double nice_step(double span) {
  const double raw = span / 5;
  const double mag = std::pow(10, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) return m * mag;
  return 10 * mag;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series, const std::string& header_comment) {
  const double W = 800, H = 500, L = 80, R = 170, T = 40, B = 60;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (auto [x, y] : s.xy) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x0 = std::min(x0, x), x1 = std::max(x1, x);
      y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
  if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-300) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-300) y0 -= 0.5, y1 += 0.5;
  const double xs = nice_step(x1 - x0), ys = nice_step(y1 - y0);
  x0 = std::floor(x0 / xs) * xs, x1 = std::ceil(x1 / xs) * xs;
  y0 = std::floor(y0 / ys) * ys, y1 = std::ceil(y1 / ys) * ys;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (!header_comment.empty()) {
    std::string c = header_comment;
    for (std::size_t p; (p = c.find("--")) != std::string::npos;) c.replace(p, 2, "- -");
    o << "<!--\n" << c << "\n-->\n";
  }
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
    << " " << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << xml_escape(title)
    << "</text>\n";
  o << "<g stroke=\"#ddd\">\n";
  for (double x = x0; x <= x1 + xs / 2; x += xs)
    o << "<line x1=\"" << px(x) << "\" y1=\"" << T << "\" x2=\"" << px(x) << "\" y2=\"" << H - B << "\"/>\n";
  for (double y = y0; y <= y1 + ys / 2; y += ys)
    o << "<line x1=\"" << L << "\" y1=\"" << py(y) << "\" x2=\"" << W - R << "\" y2=\"" << py(y) << "\"/>\n";
  o << "</g>\n";
  for (double x = x0; x <= x1 + xs / 2; x += xs)
    o << "<text x=\"" << px(x) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << fmt_tick(x) << "</text>\n";
  for (double y = y0; y <= y1 + ys / 2; y += ys)
    o << "<text x=\"" << L - 6 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">" << fmt_tick(y) << "</text>\n";
  o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 18 << "\" text-anchor=\"middle\">" << xml_escape(xlabel)
    << "</text>\n";
  o << "<text transform=\"translate(20," << (T + H - B) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
    << xml_escape(ylabel) << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (auto [x, y] : s.xy)
      if (std::isfinite(x) && std::isfinite(y)) o << px(x) << "," << py(y) << " ";
    o << "\"/>\n";
    if (s.markers)
      for (auto [x, y] : s.xy)
        if (std::isfinite(x) && std::isfinite(y))
          o << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2\" fill=\"" << s.color << "\"/>\n";
    const double ly = T + 10 + 18 * i;
    o << "<line x1=\"" << W - R + 12 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 32 << "\" y2=\"" << ly
      << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << W - R + 38 << "\" y=\"" << ly + 4 << "\">" << xml_escape(s.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

namespace {

std::vector<std::pair<double, double>> fit_curve(const ParabolaFit& f, double u0, double u1) {
  std::vector<std::pair<double, double>> xy;
  const int steps = 200;
  for (int i = 0; i <= steps; ++i) {
    const double u = u0 + (u1 - u0) * i / steps;
    xy.emplace_back(u, f.at(mpq_class(u)).get_d());
  }
  return xy;
}

}  // namespace

std::string section_svg(const FitReport& fit, const std::string& header_comment) {
  Series actual{"actual zig-zag", "black", {}, true};
  double umax = 0;
  for (const auto& d : fit.rows) {
    actual.xy.emplace_back(d.u, d.z);
    umax = std::max(umax, d.u);
  }
  return svg_plot("Diagonal cross-section with parabolic fits", "horizontal radius u", "height z",
                  {actual, {"even fit", "#1f77b4", fit_curve(fit.even, 0, umax)},
                   {"odd fit", "#d62728", fit_curve(fit.odd, 0, umax)}},
                  header_comment);
}

std::string abs_dev_svg(const FitReport& fit, const std::string& header_comment) {
  Series even{"even class", "#1f77b4", {}, true}, odd{"odd class", "#d62728", {}, true};
  for (const auto& d : fit.rows) (d.even ? even : odd).xy.emplace_back(d.k, d.abs_dev);
  return svg_plot("Absolute difference: fit minus actual", "k", "fit - z", {even, odd}, header_comment);
}

std::string rel_dev_svg(const FitReport& fit, const std::string& header_comment) {
  Series even{"even class", "#1f77b4", {}, true}, odd{"odd class", "#d62728", {}, true};
  for (const auto& d : fit.rows)
    if (d.rel_dev) (d.even ? even : odd).xy.emplace_back(d.k, *d.rel_dev);
  return svg_plot("Relative difference: fit over actual", "k", "fit / z", {even, odd}, header_comment);
}

}  // namespace hypar::analysis
