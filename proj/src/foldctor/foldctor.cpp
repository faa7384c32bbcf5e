#include "hypar/foldctor.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "hypar/elementary.hpp"

namespace hypar::fold {

using geom::IVec3;
using ival::BigNum;
using ival::SignVerdict;
using pattern::CornerId;
using pattern::CreaseKind;

const char* to_string(ConstructError::Kind k) {
  switch (k) {
    case ConstructError::Kind::CertainlyInfeasible: return "CertainlyInfeasible";
    case ConstructError::Kind::BranchAmbiguous: return "BranchAmbiguous";
    case ConstructError::Kind::PrecisionExhausted: return "PrecisionExhausted";
  }
  return "?";
}

std::string ConstructError::describe() const {
  std::ostringstream os;
  os << to_string(kind) << " at " << pattern::to_string(CornerId{ring, corner}) << " (digits " << digits << ")";
  if (!cause.empty()) os << ": " << cause;
  return os.str();
}

FoldState place_central(const mpq_class& theta_deg, Kind kind, int digits, geom::Trilateration scheme) {
  FoldState st;
  st.scheme = scheme;
  st.pattern = pattern::build_pattern(1, kind);
  st.theta_deg = theta_deg;
  st.digits = digits;
  const auto [s, c] = ival::sincos_deg(theta_deg, digits);
  const Interval root2 = ival::sqrt(Interval::exact(2, digits));
  st.positions = {
      IVec3::exact(-1, -1, 0, digits),
      IVec3::exact(1, -1, 0, digits),
      IVec3::exact(1, 1, 0, digits),
      IVec3{-c, c, -(root2 * s)},
  };
  return st;
}

namespace {

SignVerdict safe_dihedral(const IPoint3& h1, const IPoint3& h2, const IPoint3& wa, const IPoint3& wb) {
  try {
    return geom::dihedral_sign(h1, h2, wa, wb);
  } catch (const geom::DegenerateHinge&) {
    return SignVerdict::Indeterminate;
  }
}

SignVerdict sign_of(const pattern::Crease& c, const std::vector<IPoint3>& pos) {
  return safe_dihedral(pos[c.a], pos[c.b], pos[c.right_wing], pos[c.left_wing]);
}

long orient2d(CornerId a, CornerId b, CornerId c) {
  const auto [ax, ay] = pattern::planar_coords(a);
  const auto [bx, by] = pattern::planar_coords(b);
  const auto [cx, cy] = pattern::planar_coords(c);
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

std::string crease_name(const pattern::Crease& c) {
  return std::string(pattern::to_string(c.kind)) + " " + pattern::to_string(CornerId::from_id(c.a)) + "-" +
         pattern::to_string(CornerId::from_id(c.b));
}

struct Placement {
  std::optional<IPoint3> point;
  std::optional<ConstructError> error;
};

ConstructError make_error(ConstructError::Kind kind, CornerId at, int digits, std::string cause) {
  ConstructError e;
  e.kind = kind;
  e.ring = at.ring;
  e.corner = at.corner;
  e.digits = digits;
  e.cause = std::move(cause);
  return e;
}

// Trilaterates X from three placed vertices ordered counter-clockwise in the
// flat paper, then keeps the candidate accepted by `pick` (which returns the
// certified verdict of each candidate: +1 accept, -1 reject, 0 uncertain).
template <class Pick>
Placement trilaterate(const FoldState& st, CornerId X, CornerId c1, CornerId c2, CornerId c3, Pick pick) {
  if (orient2d(c1, c2, c3) < 0) std::swap(c2, c3);
  const int d = st.digits;
  const auto r = [&](CornerId c) { return Interval::exact(pattern::planar_dist_sq(X, c), d); };
  const auto res = geom::trisphere(st.pos(c1.id()), r(c1), st.pos(c2.id()), r(c2), st.pos(c3.id()), r(c3), st.scheme);
  using geom::TrisphereStatus;
  switch (res.status) {
    case TrisphereStatus::Ok: break;
    case TrisphereStatus::CertainlyInfeasible:
      return {std::nullopt, make_error(ConstructError::Kind::CertainlyInfeasible, X, d, "negative radicand")};
    default:
      return {std::nullopt, make_error(ConstructError::Kind::BranchAmbiguous, X, d, geom::to_string(res.status))};
  }
  const int vp = pick(res.pair.plus, st.pos(c1.id()), st.pos(c2.id()), st.pos(c3.id()));
  const int vm = pick(res.pair.minus, st.pos(c1.id()), st.pos(c2.id()), st.pos(c3.id()));
  if (vp == 1 && vm != 1) return {res.pair.plus, std::nullopt};
  if (vm == 1 && vp != 1) return {res.pair.minus, std::nullopt};
  return {std::nullopt, make_error(ConstructError::Kind::BranchAmbiguous, X, d,
                                   vp == 1 ? "both candidates match" : "no candidate certainly matches")};
}

const pattern::Crease& find_crease(const pattern::CreasePattern& p, CreaseKind kind, int ring, int index) {
  for (const auto& c : p.creases)
    if (c.kind == kind && c.ring == ring && c.index == index) return c;
  throw std::logic_error("crease not found");
}

}  // namespace

std::optional<ConstructError> ring_step(FoldState& st) {
  const int k = st.rings() + 1;
  const Kind kind = st.pattern.kind;
  FoldState next = st;
  next.pattern = pattern::build_pattern(k, kind);
  next.positions.resize(4 * k);
  const auto rec = pattern::receivers(k, kind);
  const auto emi = pattern::emitters(k, kind);

  // Phase 1: the receivers hang from their inner copy and the two inner
  // emitters. The candidate below the plane of those three makes the ring
  // k-1 squares mountains, the one above makes them valleys.
  const int want_side = -pattern::square_sign(k - 1);
  for (Corner c : rec) {
    const CornerId X{k, c};
    auto side_pick = [&](const IPoint3& p, const IPoint3& a, const IPoint3& b, const IPoint3& cc) {
      return ival::certain_sign(geom::side_of_plane(p, a, b, cc)) * want_side;
    };
    auto pl = trilaterate(next, X, {k - 1, c}, {k - 1, emi[0]}, {k - 1, emi[1]}, side_pick);
    if (pl.error) return pl.error;
    next.positions[X.id()] = *pl.point;
  }

  // Phase 2: the remaining corners hang from their inner copy and the two
  // receivers; the main diagonal into the corner carries the prescribed sign.
  for (Corner c : emi) {
    const CornerId X{k, c};
    const auto& diag = find_crease(next.pattern, CreaseKind::MainDiagonal, k, c);
    auto mv_pick = [&](const IPoint3& p, const IPoint3&, const IPoint3&, const IPoint3&) {
      const auto at = [&](int id) -> const IPoint3& { return id == X.id() ? p : next.positions[id]; };
      const SignVerdict s = safe_dihedral(at(diag.a), at(diag.b), at(diag.right_wing), at(diag.left_wing));
      return ival::certain_sign(s) * diag.mv;
    };
    auto pl = trilaterate(next, X, {k - 1, c}, {k, rec[0]}, {k, rec[1]}, mv_pick);
    if (pl.error) return pl.error;
    next.positions[X.id()] = *pl.point;
  }

  // Every crease completed by this ring must fold nontrivially: a certain
  // dihedral sign rules out both 0 and 180 degrees.
  for (const auto& cr : next.pattern.creases) {
    const bool completed = cr.kind == CreaseKind::SquareEdge ? cr.ring == k - 1 : cr.ring == k;
    if (!completed) continue;
    const int s = ival::certain_sign(sign_of(cr, next.positions));
    if (s == 0)
      return make_error(ConstructError::Kind::BranchAmbiguous, CornerId::from_id(cr.b), st.digits,
                        crease_name(cr) + " fold not certainly nontrivial");
    if (cr.mv != 0 && s != cr.mv) next.flags.push_back("mv mismatch: " + crease_name(cr));
  }
  st = std::move(next);
  return std::nullopt;
}

ConstructResult construct(int n, const mpq_class& theta_deg, Kind kind, int digits, geom::Trilateration scheme) {
  if (n < 1) throw std::invalid_argument("construct: n must be at least 1");
  if (theta_deg <= 0 || theta_deg >= 180) throw std::invalid_argument("construct: theta must lie in (0, 180)");
  if (digits < 4) throw std::invalid_argument("construct: digits must be at least 4");
  FoldState st = place_central(theta_deg, kind, digits, scheme);
  if (!ival::is_certain_nonzero(sign_of(st.pattern.creases.at(0), st.positions)))
    return make_error(ConstructError::Kind::BranchAmbiguous, {1, pattern::UL}, digits,
                      "central diagonal fold not certainly nontrivial");
  while (st.rings() < n)
    if (auto err = ring_step(st)) return *err;
  return st;
}

AutoResult construct_auto(int n, const mpq_class& theta_deg, Kind kind, int digits_start, int digits_max,
                          geom::Trilateration scheme) {
  if (digits_start < 4 || digits_start > digits_max)
    throw std::invalid_argument("construct_auto: need 4 <= digits_start <= digits_max");
  AutoResult out;
  ConstructError last;
  for (int d = digits_start; d <= digits_max; d *= 2) {
    out.attempts.push_back(d);
    auto r = construct(n, theta_deg, kind, d, scheme);
    if (auto* st = std::get_if<FoldState>(&r)) {
      out.state = std::move(*st);
      out.digits_used = d;
      return out;
    }
    last = std::get<ConstructError>(r);
    if (!last.numerical()) {
      out.error = last;
      out.digits_used = d;
      return out;
    }
  }
  last.cause = std::string(to_string(last.kind)) + (last.cause.empty() ? "" : ": " + last.cause);
  last.kind = ConstructError::Kind::PrecisionExhausted;
  out.error = last;
  out.digits_used = out.attempts.empty() ? 0 : out.attempts.back();
  return out;
}

SignVerdict crease_sign(const FoldState& state, int i) { return sign_of(state.pattern.creases.at(i), state.positions); }

std::vector<Interval> fold_angles(FoldState& state, int acos_digits) {
  std::vector<Interval> out;
  out.reserve(state.pattern.creases.size());
  const auto& P = state.positions;
  for (int i = 0; i < static_cast<int>(state.pattern.creases.size()); ++i) {
    const auto& c = state.pattern.creases[i];
    out.push_back(geom::fold_angle(P[c.a], P[c.b], P[c.right_wing], P[c.left_wing], acos_digits));
    if (c.kind == CreaseKind::TriangulationDiagonal) state.emergent_signs[i] = ival::certain_sign(crease_sign(state, i));
  }
  return out;
}

std::vector<AuditIssue> isometry_audit(const FoldState& state, long* checked) {
  std::vector<AuditIssue> issues;
  long count = 0;
  auto check = [&](int a, int b, const std::string& what) {
    const long len = pattern::planar_dist_sq(CornerId::from_id(a), CornerId::from_id(b));
    ++count;
    if (!geom::dist_sq(state.pos(a), state.pos(b)).contains(BigNum::from_int(len)))
      issues.push_back({what, "squared length " + std::to_string(len) + " not enclosed"});
  };
  for (const auto& c : state.pattern.creases) check(c.a, c.b, crease_name(c));
  for (const auto& e : state.pattern.boundary)
    check(e[0], e[1],
          "boundary " + pattern::to_string(CornerId::from_id(e[0])) + "-" + pattern::to_string(CornerId::from_id(e[1])));
  if (checked) *checked = count;
  return issues;
}

std::vector<AuditIssue> mv_audit(const FoldState& state, long* checked) {
  std::vector<AuditIssue> issues;
  long count = 0;
  for (int i = 0; i < static_cast<int>(state.pattern.creases.size()); ++i) {
    const auto& c = state.pattern.creases[i];
    if (c.mv == 0) continue;
    ++count;
    const SignVerdict s = crease_sign(state, i);
    if (ival::certain_sign(s) != c.mv)
      issues.push_back({crease_name(c), std::string("assigned ") + (c.mv > 0 ? "mountain" : "valley") +
                                            ", realized " + ival::to_string(s)});
  }
  if (checked) *checked = count;
  return issues;
}

mpq_class parse_theta(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty angle");
  mpq_class q;
  if (s.find('/') != std::string::npos) {
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw std::invalid_argument("bad angle '" + s + "'");
    q.canonicalize();
  } else {
    q = BigNum::parse(s).to_rational();
  }
  return q;
}

std::string theta_to_string(const mpq_class& q) { return q.get_str(); }

nlohmann::json interval_json(const Interval& v) { return {v.lo().to_string(), v.hi().to_string()}; }

Interval interval_from_json(const nlohmann::json& j, int digits) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("interval must be a two-element array");
  return Interval(BigNum::parse(j[0].get<std::string>()), BigNum::parse(j[1].get<std::string>()), digits);
}

nlohmann::json to_json(const FoldState& state, const std::vector<Interval>* angles) {
  using nlohmann::json;
  json doc;
  doc["format"] = "hypar-fold";
  doc["version"] = 1;
  doc["library_version"] = kLibraryVersion;
  doc["n"] = state.rings();
  doc["theta_deg"] = theta_to_string(state.theta_deg);
  doc["kind"] = pattern::to_string(state.pattern.kind);
  doc["digits"] = state.digits;
  doc["trilateration"] = geom::to_string(state.scheme);
  json verts = json::array();
  for (int v = 0; v < static_cast<int>(state.positions.size()); ++v) {
    const auto& p = state.positions[v];
    verts.push_back({{"id", v},
                     {"corner", pattern::to_string(CornerId::from_id(v))},
                     {"x", interval_json(p.x)},
                     {"y", interval_json(p.y)},
                     {"z", interval_json(p.z)}});
  }
  doc["vertices"] = std::move(verts);
  json creases = json::array();
  for (int i = 0; i < static_cast<int>(state.pattern.creases.size()); ++i) {
    const auto& c = state.pattern.creases[i];
    json e = {{"kind", pattern::to_string(c.kind)}, {"a", c.a}, {"b", c.b}, {"len_sq", c.len_sq}};
    e["mv"] = c.mv != 0 ? json(c.mv) : json(nullptr);
    if (auto it = state.emergent_signs.find(i); it != state.emergent_signs.end()) e["emergent_sign"] = it->second;
    if (angles) e["fold_angle_deg"] = interval_json(angles->at(i));
    creases.push_back(std::move(e));
  }
  doc["creases"] = std::move(creases);
  doc["faces"] = state.pattern.faces;
  doc["flags"] = state.flags;
  return doc;
}

FoldState from_json(const nlohmann::json& doc) {
  if (doc.value("format", "") != "hypar-fold") throw std::invalid_argument("not a hypar-fold document");
  const int n = doc.at("n").get<int>();
  const auto kind = pattern::parse_kind(doc.at("kind").get<std::string>());
  if (!kind || n < 1) throw std::invalid_argument("bad header in fold document");
  FoldState st;
  st.pattern = pattern::build_pattern(n, *kind);
  st.theta_deg = parse_theta(doc.at("theta_deg").get<std::string>());
  st.digits = doc.at("digits").get<int>();
  st.scheme = doc.value("trilateration", "frame") == "gram" ? geom::Trilateration::Gram : geom::Trilateration::Frame;
  const auto& verts = doc.at("vertices");
  if (static_cast<int>(verts.size()) != 4 * n) throw std::invalid_argument("vertex count does not match n");
  st.positions.resize(4 * n);
  for (const auto& v : verts) {
    const int id = v.at("id").get<int>();
    if (id < 0 || id >= 4 * n) throw std::invalid_argument("vertex id out of range");
    st.positions[id] = {interval_from_json(v.at("x"), st.digits), interval_from_json(v.at("y"), st.digits),
                        interval_from_json(v.at("z"), st.digits)};
  }
  if (doc.contains("flags")) st.flags = doc["flags"].get<std::vector<std::string>>();
  return st;
}

std::string to_obj(const FoldState& state) {
  std::ostringstream os;
  os << "# hypar fold n=" << state.rings() << " theta=" << theta_to_string(state.theta_deg)
     << " kind=" << pattern::to_string(state.pattern.kind) << " digits=" << state.digits << " (interval midpoints)\n";
  char buf[128];
  for (const auto& p : state.positions) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", ival::mid(p.x).to_double(ival::Round::Down),
                  ival::mid(p.y).to_double(ival::Round::Down), ival::mid(p.z).to_double(ival::Round::Down));
    os << buf;
  }
  for (const auto& f : state.pattern.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  return os.str();
}

}  // namespace hypar::fold
