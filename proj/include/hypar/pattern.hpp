#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace hypar::pattern {

enum class Kind { Asymmetric, AlternatingAsymmetric };

const char* to_string(Kind k);
std::optional<Kind> parse_kind(const std::string& s);

enum Corner : int { LL = 0, LR = 1, UR = 2, UL = 3 };

const char* to_string(Corner c);

struct CornerId {
  int ring = 1;
  Corner corner = LL;

  int id() const { return 4 * (ring - 1) + corner; }
  static CornerId from_id(int id) { return {id / 4 + 1, static_cast<Corner>(id % 4)}; }
  friend bool operator==(const CornerId&, const CornerId&) = default;
};

std::string to_string(CornerId v);

/// (x, y) of a corner in the flat paper: LL=(-k,-k), LR=(k,-k), UR=(k,k), UL=(-k,k).
std::pair<long, long> planar_coords(CornerId v);
long planar_dist_sq(CornerId a, CornerId b);

enum class CreaseKind { CentralDiagonal, SquareEdge, MainDiagonal, TriangulationDiagonal };

const char* to_string(CreaseKind k);

/// Sides of a ring square in counter-clockwise order; side s runs from
/// corner s to corner (s + 1) % 4.
enum Side : int { Bottom = 0, Right = 1, Top = 2, Left = 3 };

const char* to_string(Side s);

struct Crease {
  CreaseKind kind = CreaseKind::CentralDiagonal;
  int ring = 1;   // ring of the square edge; outer ring for diagonals
  int index = 0;  // Side for square and triangulation diagonals, Corner for main diagonals
  int a = 0;      // directed a -> b
  int b = 0;
  int mv = 0;     // +1 mountain, -1 valley, 0 unassigned (emergent)
  long len_sq = 0;
  int left_face = -1;  // face containing a -> b in counter-clockwise order
  int right_face = -1;
  int left_wing = -1;  // third vertex of left_face
  int right_wing = -1;
};

struct CreasePattern {
  int n = 1;
  Kind kind = Kind::Asymmetric;
  std::vector<Crease> creases;
  /// Counter-clockwise vertex triples (as seen from the top of the flat paper).
  std::vector<std::array<int, 3>> faces;
  /// Edges on the outer boundary of the paper (not creases).
  std::vector<std::array<int, 2>> boundary;

  int vertex_count() const { return 4 * n; }
  /// Largest ring among the face's vertices.
  int face_ring(int f) const;
};

/// Corners of ring k (k >= 2) that hang from three ring-(k-1) vertices.
std::array<Corner, 2> receivers(int k, Kind kind);
/// The other two corners; their ring-(k-1) copies close the receivers'
/// triangulation diagonals.
std::array<Corner, 2> emitters(int k, Kind kind);

/// Mountain-valley sign of the ring-k square edges.
int square_sign(int k);
/// Sign of the main-diagonal segments between rings k-1 and k.
int main_diagonal_sign(int k);

CreasePattern build_pattern(int n, Kind kind);

inline long crease_len_sq(const Crease& c) { return c.len_sq; }

/// Face and crease counts of a pattern with n rings.
inline long face_count(int n) { return 2 + 8L * (n - 1); }
inline long crease_count(int n) { return 1 + 12L * (n - 1); }

nlohmann::json to_json(const CreasePattern& p);

}  // namespace hypar::pattern
