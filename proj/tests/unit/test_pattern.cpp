#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"

#include "hypar/pattern.hpp"

using namespace hypar::pattern;

namespace {

constexpr Kind kKinds[] = {Kind::Asymmetric, Kind::AlternatingAsymmetric};

int vid(int ring, Corner c) { return CornerId{ring, c}.id(); }

std::set<int> creased_neighbors(const CreasePattern& p, int v, int ring) {
  std::set<int> out;
  for (const auto& c : p.creases) {
    int other = c.a == v ? c.b : c.b == v ? c.a : -1;
    if (other >= 0 && CornerId::from_id(other).ring == ring) out.insert(other);
  }
  return out;
}

int square_edges_at(const CreasePattern& p, int v) {
  int count = 0;
  for (const auto& c : p.creases)
    if (c.kind == CreaseKind::SquareEdge && (c.a == v || c.b == v)) ++count;
  for (const auto& b : p.boundary)
    if (b[0] == v || b[1] == v) ++count;
  return count;
}

long twice_area(const CreasePattern& p, const std::array<int, 3>& f) {
  auto [x0, y0] = planar_coords(CornerId::from_id(f[0]));
  auto [x1, y1] = planar_coords(CornerId::from_id(f[1]));
  auto [x2, y2] = planar_coords(CornerId::from_id(f[2]));
  return (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
}

}  // namespace

TEST_CASE("n = 1 is the central square with one diagonal") {
  for (Kind k : kKinds) {
    const auto p = build_pattern(1, k);
    CHECK(p.faces.size() == 2);
    REQUIRE(p.creases.size() == 1);
    CHECK(p.creases[0].kind == CreaseKind::CentralDiagonal);
    CHECK(p.creases[0].mv == 1);
    CHECK(p.boundary.size() == 4);
  }
}

TEST_CASE("n = 3 asymmetric: receivers and emitters") {
  const auto p = build_pattern(3, Kind::Asymmetric);
  CHECK(p.faces.size() == 18);
  CHECK(creased_neighbors(p, vid(2, LL), 1) == std::set<int>{vid(1, LL), vid(1, LR), vid(1, UL)});
  CHECK(creased_neighbors(p, vid(2, LR), 1) == std::set<int>{vid(1, LR)});
  CHECK(creased_neighbors(p, vid(2, LR), 2) == std::set<int>{vid(2, LL), vid(2, UR)});
  CHECK(creased_neighbors(p, vid(2, UR), 1) == std::set<int>{vid(1, UR), vid(1, LR), vid(1, UL)});
}

TEST_CASE("crease and face counts") {
  for (Kind k : kKinds)
    for (int n = 1; n <= 12; ++n) {
      const auto p = build_pattern(n, k);
      CHECK(static_cast<long>(p.faces.size()) == face_count(n));
      CHECK(static_cast<long>(p.creases.size()) == crease_count(n));
      CHECK(static_cast<long>(p.boundary.size()) == 4);
    }
  CHECK_THROWS(build_pattern(0, Kind::Asymmetric));
}

TEST_CASE("planar coordinates") {
  CHECK(planar_coords({1, LL}) == std::pair<long, long>{-1, -1});
  CHECK(planar_coords({3, UR}) == std::pair<long, long>{3, 3});
  CHECK(planar_coords({2, UL}) == std::pair<long, long>{-2, 2});
  CHECK(planar_coords({5, LR}) == std::pair<long, long>{5, -5});
  for (int id = 0; id < 40; ++id) CHECK(CornerId::from_id(id).id() == id);
}

TEST_CASE("crease lengths") {
  const auto p = build_pattern(6, Kind::Asymmetric);
  for (const auto& c : p.creases) {
    auto [ax, ay] = planar_coords(CornerId::from_id(c.a));
    auto [bx, by] = planar_coords(CornerId::from_id(c.b));
    CHECK(crease_len_sq(c) == (ax - bx) * (ax - bx) + (ay - by) * (ay - by));
    const long k = c.ring;
    switch (c.kind) {
      case CreaseKind::CentralDiagonal: CHECK(c.len_sq == 8); break;
      case CreaseKind::MainDiagonal: CHECK(c.len_sq == 2); break;
      case CreaseKind::SquareEdge: CHECK(c.len_sq == 4 * k * k); break;
      case CreaseKind::TriangulationDiagonal: CHECK(c.len_sq == (2 * k - 1) * (2 * k - 1) + 1); break;
    }
  }
  // The bottom diagonal of ring 4 joins LR(3) and LL(4).
  const auto it = std::find_if(p.creases.begin(), p.creases.end(), [](const Crease& c) {
    return c.kind == CreaseKind::TriangulationDiagonal && c.ring == 4 && c.index == Bottom;
  });
  REQUIRE(it != p.creases.end());
  CHECK(std::set<int>{it->a, it->b} == std::set<int>{vid(3, LR), vid(4, LL)});
  CHECK(it->len_sq == 50);
}

TEST_CASE("main diagonals follow x = +-y between consecutive rings") {
  const auto p = build_pattern(5, Kind::AlternatingAsymmetric);
  for (const auto& c : p.creases) {
    if (c.kind != CreaseKind::MainDiagonal) continue;
    const auto a = CornerId::from_id(c.a), b = CornerId::from_id(c.b);
    CHECK(a.corner == b.corner);
    CHECK(std::abs(a.ring - b.ring) == 1);
    CHECK(std::max(a.ring, b.ring) == c.ring);
  }
}

TEST_CASE("solvability schedule: two receivers and two emitters per ring") {
  for (Kind kind : kKinds)
    for (int n = 2; n <= 10; ++n) {
      const auto p = build_pattern(n, kind);
      for (int k = 2; k <= n; ++k) {
        int three = 0, one = 0;
        std::set<int> seen;
        for (int c = 0; c < 4; ++c) {
          const int v = vid(k, static_cast<Corner>(c));
          const auto back = creased_neighbors(p, v, k - 1);
          if (back.size() == 3) {
            ++three;
            seen.insert(c);
          } else if (back.size() == 1 && square_edges_at(p, v) == 2) {
            ++one;
          }
        }
        CHECK(three == 2);
        CHECK(one == 2);
        const auto r = receivers(k, kind);
        CHECK(seen == std::set<int>{r[0], r[1]});
        // Receivers sit on opposite corners.
        CHECK((r[0] + 2) % 4 == r[1]);
      }
    }
}

TEST_CASE("alternating kind flips the diagonals on odd rings from 3") {
  for (int k = 2; k <= 9; ++k) {
    const auto a = receivers(k, Kind::Asymmetric);
    const auto b = receivers(k, Kind::AlternatingAsymmetric);
    CHECK(std::set<int>{a[0], a[1]} == std::set<int>{LL, UR});
    if (k >= 3 && k % 2 == 1)
      CHECK(std::set<int>{b[0], b[1]} == std::set<int>{LR, UL});
    else
      CHECK(std::set<int>{b[0], b[1]} == std::set<int>{LL, UR});
  }
}

TEST_CASE("faces tile the square") {
  for (Kind kind : kKinds)
    for (int n = 1; n <= 15; ++n) {
      const auto p = build_pattern(n, kind);
      long sum = 0;
      bool ccw = true;
      for (const auto& f : p.faces) {
        const long a = twice_area(p, f);
        ccw = ccw && a > 0;
        sum += a;
      }
      CHECK(ccw);
      CHECK(sum == 2L * (2 * n) * (2 * n));
    }
}

TEST_CASE("every crease borders two faces, every boundary edge one") {
  for (Kind kind : kKinds) {
    const auto p = build_pattern(7, kind);
    std::map<std::pair<int, int>, int> uses;
    for (const auto& f : p.faces)
      for (int i = 0; i < 3; ++i) {
        int a = f[i], b = f[(i + 1) % 3];
        uses[{std::min(a, b), std::max(a, b)}]++;
      }
    for (const auto& c : p.creases) {
      CHECK(uses[{std::min(c.a, c.b), std::max(c.a, c.b)}] == 2);
      const auto& lf = p.faces.at(c.left_face);
      const auto& rf = p.faces.at(c.right_face);
      CHECK(std::count(lf.begin(), lf.end(), c.left_wing) == 1);
      CHECK(std::count(rf.begin(), rf.end(), c.right_wing) == 1);
    }
    for (const auto& b : p.boundary) CHECK(uses[{std::min(b[0], b[1]), std::max(b[0], b[1])}] == 1);
    CHECK(uses.size() == p.creases.size() + p.boundary.size());
  }
}

TEST_CASE("interior vertex links are single cycles summing to 360 degrees") {
  for (Kind kind : kKinds) {
    const int n = 8;
    const auto p = build_pattern(n, kind);
    for (int v = 0; v < 4 * (n - 1); ++v) {
      std::map<int, int> next;  // link edge, counter-clockwise around v
      double angle = 0;
      auto [vx, vy] = planar_coords(CornerId::from_id(v));
      for (const auto& f : p.faces)
        for (int i = 0; i < 3; ++i)
          if (f[i] == v) {
            const int a = f[(i + 1) % 3], b = f[(i + 2) % 3];
            CHECK(next.count(a) == 0);
            next[a] = b;
            auto [ax, ay] = planar_coords(CornerId::from_id(a));
            auto [bx, by] = planar_coords(CornerId::from_id(b));
            const double ux = ax - vx, uy = ay - vy, wx = bx - vx, wy = by - vy;
            angle += std::atan2(ux * wy - uy * wx, ux * wx + uy * wy);
          }
      REQUIRE(!next.empty());
      int cur = next.begin()->first, steps = 0;
      do {
        REQUIRE(next.count(cur) == 1);
        cur = next[cur];
        ++steps;
      } while (cur != next.begin()->first && steps <= static_cast<int>(next.size()));
      CHECK(steps == static_cast<int>(next.size()));
      CHECK(angle == doctest::Approx(2 * M_PI).epsilon(1e-12));
    }
  }
}

TEST_CASE("mountain-valley assignment") {
  const auto p = build_pattern(9, Kind::AlternatingAsymmetric);
  for (const auto& c : p.creases) {
    switch (c.kind) {
      case CreaseKind::CentralDiagonal: CHECK(c.mv == 1); break;
      case CreaseKind::SquareEdge: CHECK(c.mv == square_sign(c.ring)); break;
      case CreaseKind::MainDiagonal: CHECK(c.mv == main_diagonal_sign(c.ring)); break;
      case CreaseKind::TriangulationDiagonal: CHECK(c.mv == 0); break;
    }
  }
  for (int k = 1; k <= 9; ++k) {
    CHECK(square_sign(k) == (k % 2 == 0 ? 1 : -1));
    CHECK(square_sign(k + 1) == -square_sign(k));
    if (k >= 2) CHECK(main_diagonal_sign(k) == -square_sign(k));
  }
}

TEST_CASE("pattern document") {
  const auto p = build_pattern(3, Kind::AlternatingAsymmetric);
  const auto doc = to_json(p);
  CHECK(doc["format"] == "hypar-pattern");
  CHECK(doc["n"] == 3);
  CHECK(doc["kind"] == "alt");
  CHECK(doc["vertices"].size() == 12);
  CHECK(doc["creases"].size() == p.creases.size());
  CHECK(doc["faces"].size() == 18);
  CHECK(doc["vertices"][vid(3, UL)]["x"] == -3);
  CHECK(doc["vertices"][vid(3, UL)]["y"] == 3);
  for (const auto& c : doc["creases"])
    if (c["kind"] == to_string(CreaseKind::TriangulationDiagonal)) CHECK(c["mv"].is_null());
  CHECK(parse_kind("asym") == Kind::Asymmetric);
  CHECK(parse_kind("alt") == Kind::AlternatingAsymmetric);
  CHECK_FALSE(parse_kind("sym").has_value());
}
