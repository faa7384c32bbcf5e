#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hypar/foldctor.hpp"

namespace hypar::analysis {

using ival::Interval;

struct SectionPoint {
  int k = 0;     // 0 is the midpoint of the central diagonal
  Interval u;    // horizontal radius
  Interval z;    // height
  bool even() const { return k % 2 == 0; }
};

/// Diagonal section through the corners UR(k), taken in the frame where the
/// central diagonal is horizontal, the fold is symmetric about the vertical
/// plane through it and the paper's top side faces up.
struct CrossSection {
  std::vector<SectionPoint> points;  // k = 0, 1, ..., n
  bool u_increasing = false;         // u(k) < u(k+1) certified for all k
};

CrossSection cross_section(const fold::FoldState& state);

struct InsufficientPoints : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// z = a u^2 + b u + c through three points, in exact rational arithmetic on
/// the point midpoints.
struct ParabolaFit {
  mpq_class a, b, c;
  std::array<int, 3> through{};  // k of the defining points
  mpq_class at(const mpq_class& u) const { return (a * u + b) * u + c; }
};

struct Deviation {
  int k = 0;
  bool even = true;
  double u = 0, z = 0;
  double fit = 0;
  double abs_dev = 0;                // fit - actual
  std::optional<double> rel_dev;     // fit / actual, absent where actual is 0
};

struct FitReport {
  ParabolaFit even, odd;
  std::vector<Deviation> rows;  // ordered by k
  double max_abs_dev = 0;
  int max_abs_dev_k = 0;
};

/// Fits each parity class through its three points farthest from the center.
/// Throws InsufficientPoints unless both classes have at least three points.
FitReport fit_and_deviate(const CrossSection& cs);

struct NThetaRow {
  mpq_class theta_deg;
  int n_max = 0;
  double product = 0;  // n_max * theta, degrees
};

struct NThetaReport {
  std::vector<NThetaRow> rows;  // every input, ordered by theta
  double limit_deg = 40;        // summary covers theta <= limit_deg only
  int summarized = 0;
  double min = 0, max = 0, mean = 0;
  int within_band = 0;          // products inside [band_lo, band_hi]
  double band_lo = 260, band_hi = 285;
};

NThetaReport ntheta_study(const std::map<mpq_class, int>& limits, double limit_deg = 40);

struct PrecisionPoint {
  int digits = 0;
  int n = 0;               // rings constructed before the first failure
  bool capped = false;     // reached n_cap without failing
  std::string stopped_by;  // describe() of the failing step
};

struct PrecisionCurve {
  mpq_class theta_deg;
  pattern::Kind kind = pattern::Kind::Asymmetric;
  std::vector<PrecisionPoint> points;
  bool monotone = true;
  /// Least-squares slope of log n against log digits over points with n > 0
  /// that did not hit the cap; nullopt with fewer than two such points.
  std::optional<double> loglog_slope;
};

/// Throws std::invalid_argument unless the grid is strictly ascending and
/// every entry is at least 4.
PrecisionCurve precision_curve(const mpq_class& theta_deg, pattern::Kind kind, const std::vector<int>& digit_grid,
                               int n_cap = 100, geom::Trilateration scheme = geom::Trilateration::Frame);

/// Seven columns: k, u, z, class, fit, abs_dev, rel_dev.
std::string to_csv(const FitReport& fit, const std::string& header_comment = {});

struct Series {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> xy;
  bool markers = false;
};

/// Minimal line plot with axes, ticks and a legend.
std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series, const std::string& header_comment = {});

/// The three panels: section with both fits, fit minus actual, fit over actual.
std::string section_svg(const FitReport& fit, const std::string& header_comment = {});
std::string abs_dev_svg(const FitReport& fit, const std::string& header_comment = {});
std::string rel_dev_svg(const FitReport& fit, const std::string& header_comment = {});

}  // namespace hypar::analysis
