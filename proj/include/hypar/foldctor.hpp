#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

#include "hypar/geom3.hpp"
#include "hypar/pattern.hpp"

namespace hypar::fold {

using geom::IPoint3;
using ival::Interval;
using pattern::Corner;
using pattern::Kind;

inline constexpr const char* kLibraryVersion = "1.0.0";

struct FoldState {
  pattern::CreasePattern pattern;  // pattern of the rings placed so far
  mpq_class theta_deg;
  int digits = 16;
  geom::Trilateration scheme = geom::Trilateration::Frame;
  std::vector<IPoint3> positions;  // indexed by CornerId::id()
  /// crease index -> certified dihedral sign (+1, -1, 0 when uncertain);
  /// filled by fold_angles for the triangulation diagonals.
  std::map<int, int> emergent_signs;
  std::vector<std::string> flags;

  int rings() const { return pattern.n; }
  const IPoint3& pos(int id) const { return positions.at(id); }
};

struct ConstructError {
  enum class Kind { CertainlyInfeasible, BranchAmbiguous, PrecisionExhausted };
  Kind kind = Kind::BranchAmbiguous;
  int ring = 0;
  Corner corner = pattern::LL;
  int digits = 0;
  std::string cause;

  bool numerical() const { return kind != Kind::CertainlyInfeasible; }
  std::string describe() const;
};

const char* to_string(ConstructError::Kind k);

/// Ring 1: LL, LR, UR fixed in the z = 0 plane, UL rotated about the central
/// diagonal so that the diagonal is a mountain fold of angle theta.
FoldState place_central(const mpq_class& theta_deg, Kind kind, int digits,
                        geom::Trilateration scheme = geom::Trilateration::Frame);

/// Places ring k = state.rings() + 1 in place. On error the state is left
/// unchanged.
std::optional<ConstructError> ring_step(FoldState& state);

using ConstructResult = std::variant<FoldState, ConstructError>;

/// Throws std::invalid_argument unless n >= 1 and 0 < theta < 180.
ConstructResult construct(int n, const mpq_class& theta_deg, Kind kind, int digits,
                          geom::Trilateration scheme = geom::Trilateration::Frame);

struct AutoResult {
  std::optional<FoldState> state;
  std::optional<ConstructError> error;
  int digits_used = 0;
  std::vector<int> attempts;
};

/// Restarts from scratch with doubled digits after each numerical failure.
AutoResult construct_auto(int n, const mpq_class& theta_deg, Kind kind, int digits_start = 16,
                          int digits_max = 4096, geom::Trilateration scheme = geom::Trilateration::Frame);

/// Signed fold angle (degrees) of every crease, indexed like pattern.creases.
/// Also records the certified sign of each triangulation diagonal in
/// state.emergent_signs.
std::vector<Interval> fold_angles(FoldState& state, int acos_digits = 30);

/// Certified dihedral sign of crease i (+ mountain, - valley).
ival::SignVerdict crease_sign(const FoldState& state, int i);

struct AuditIssue {
  std::string where;
  std::string what;
};

/// Exact squared length of every pattern edge (creases and paper boundary)
/// must lie in the dist_sq enclosure of its realized endpoints.
std::vector<AuditIssue> isometry_audit(const FoldState& state, long* checked = nullptr);
/// Every crease with an assigned sign must fold with that certified sign.
std::vector<AuditIssue> mv_audit(const FoldState& state, long* checked = nullptr);

/// Reads a theta given as "30", "1/3" or "179.5".
mpq_class parse_theta(const std::string& s);
std::string theta_to_string(const mpq_class& q);

nlohmann::json interval_json(const Interval& v);
Interval interval_from_json(const nlohmann::json& j, int digits);

nlohmann::json to_json(const FoldState& state, const std::vector<Interval>* angles = nullptr);
FoldState from_json(const nlohmann::json& doc);

/// Midpoint mesh in Wavefront OBJ form.
std::string to_obj(const FoldState& state);

}  // namespace hypar::fold
