#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hypar/foldctor.hpp"

namespace hypar::embed {

using geom::IPoint3;
using ival::Interval;

using Triangle = std::array<IPoint3, 3>;

/// How two faces meet in the flat pattern.
enum class Adjacency { Disjoint, ShareVertex, ShareEdge };

enum class PairVerdict { Disjoint, Intersecting, Indeterminate };

const char* to_string(PairVerdict v);

/// Certified verdict for one pair of folded faces. Shared vertices must come
/// first, in the same order, in both triangles: t1[0] == t2[0] for
/// ShareVertex, and additionally t1[1] == t2[1] for ShareEdge. For adjacent
/// faces "Disjoint" means they meet only in the shared simplex.
PairVerdict tri_tri_verdict(const Triangle& t1, const Triangle& t2, Adjacency adj);

enum class Verdict3 { CertainlyEmbedded, CertainlyIntersecting, Indeterminate };

const char* to_string(Verdict3 v);

struct EmbedOptions {
  /// Pair tests run first on positions rounded outward to this many digits,
  /// falling back to the full state precision when inconclusive.
  int screen_digits = 40;
};

struct EmbedReport {
  Verdict3 verdict = Verdict3::CertainlyEmbedded;
  std::optional<std::array<int, 2>> offending;       // first intersecting pair
  std::vector<std::array<int, 2>> indeterminate;    // pairs left undecided
  long faces = 0;
  long pairs_total = 0;          // C(F, 2) over the checked range
  long pairs_edge_adjacent = 0;  // hinge pairs, settled by the off-plane test
  long pairs_tested = 0;         // pairs_total - pairs_edge_adjacent
  long pairs_vertex_adjacent = 0;
  long pairs_box_culled = 0;     // settled by a separating bounding-box plane
  long pairs_full_precision = 0;
  int digits = 0;
  double seconds = 0;

  nlohmann::json to_json() const;
};

/// All-pairs embedding certificate for the folded state.
EmbedReport check_embedding(const fold::FoldState& state, const EmbedOptions& opt = {});

/// Pairs (f, g) with f in [first_face, faces) and g < f only, i.e. the pairs
/// introduced by appending faces from first_face on.
EmbedReport check_new_faces(const fold::FoldState& state, int first_face, const EmbedOptions& opt = {});

struct MaxRingsResult {
  enum class Status {
    Frontier,        // ring n_max + 1 certainly self-intersects
    Cap,             // n_cap reached, still embedded
    Infeasible,      // ring n_max + 1 certainly cannot be constructed
    Unknown,         // numerical failure at ring n_max + 1 within digits_max
  };
  Status status = Status::Unknown;
  int n_max = 0;
  int digits_used = 0;
  std::string detail;
  std::optional<std::array<int, 2>> offending;
};

const char* to_string(MaxRingsResult::Status s);

struct MaxRingsOptions {
  int n_cap = 200;
  int digits_start = 16;
  int digits_max = 4096;
  geom::Trilateration scheme = geom::Trilateration::Frame;
  EmbedOptions embed;
};

/// Largest n whose folding is constructed and certified embedded, grown one
/// ring at a time; the construction restarts at doubled precision whenever a
/// construction step or a new-face pair check is inconclusive.
MaxRingsResult max_rings(const mpq_class& theta_deg, pattern::Kind kind, const MaxRingsOptions& opt = {});

struct FourTriangleCase {
  mpq_class phi_deg;
  bool trivial_input = false;  // phi == 0: flat, nothing to certify
  bool perpendicular = false;  // v2 . v1 == 0 and v2 . v3 == 0 exactly
  bool nonparallel = false;    // |v1 x v3|^2 certainly positive
  bool v4_found = false;       // trisphere placement of v4 succeeded
  bool parallel = false;       // v2 x v4 encloses the zero vector
  Interval cross_width;        // widest component of v2 x v4
  bool passed() const { return trivial_input || (perpendicular && nonparallel && v4_found && parallel); }
};

struct FourTriangleReport {
  std::vector<FourTriangleCase> cases;
  int digits = 0;
  bool passed() const;
};

/// Four unit right triangles joined cyclically along their short edges, with
/// edge 2 folded by phi: places v3 by rotation, v4 by trilateration from
/// 0, v1, v3 and checks that v2 and v4 come out parallel (edge 3 unfolded).
FourTriangleReport four_triangle_obstruction(const std::vector<mpq_class>& phi_grid, int digits = 64);

/// 1, 3, ..., 179 degrees.
std::vector<mpq_class> default_phi_grid();

struct Degree4Finding {
  int vertex = 0;
  std::string detail;
};

struct Degree4Report {
  int vertices = 0;       // interior degree-4 vertices in the pattern
  int passed = 0;
  int indeterminate = 0;  // some incident sign not certain
  std::vector<Degree4Finding> failures;
  bool vacuous() const { return vertices == 0 || indeterminate == vertices; }
  bool ok() const { return failures.empty() && indeterminate == 0; }
};

/// Checks, at every interior degree-4 vertex, that exactly one incident crease
/// sign differs from the other three and that this crease does not sit
/// between two sector angles summing to 180 degrees or more. `signs` is
/// indexed like pattern.creases (0 = uncertain).
Degree4Report degree4_sign_audit(const pattern::CreasePattern& p, const std::vector<int>& signs);
Degree4Report degree4_sign_audit(const fold::FoldState& state);

}  // namespace hypar::embed
