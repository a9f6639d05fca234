#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qpsl/error.hpp"

namespace qpsl {

/// Bordered surface with marked points: genus, marked points per boundary
/// component, punctures. Rank n = 6g + 3b + 3p + c - 6.
struct SurfaceSpec {
  int genus = 0;
  std::vector<int> boundary_marked;
  int punctures = 0;

  int boundary_components() const { return int(boundary_marked.size()); }
  int boundary_points() const {
    int c = 0;
    for (int k : boundary_marked) c += k;
    return c;
  }
  int rank() const {
    return 6 * genus + 3 * boundary_components() + 3 * punctures + boundary_points() - 6;
  }

  void validate() const {
    require(!boundary_marked.empty(), errc::invalid_input, "surface needs non-empty boundary");
    for (int k : boundary_marked)
      require(k >= 1, errc::invalid_input, "each boundary component needs a marked point");
    require(genus >= 0 && punctures >= 0, errc::invalid_input, "negative surface data");
    require(rank() >= 1, errc::invalid_input, "surface has no triangulation (rank < 1)");
    // Once-punctured monogon carries no ideal triangulation in this theory.
    require(!(genus == 0 && boundary_components() == 1 && boundary_points() == 1 &&
              punctures == 1),
            errc::invalid_input, "once-punctured monogon is excluded");
  }
};

inline int rank(const SurfaceSpec& spec) { return spec.rank(); }

/// Construction input: sides listed counterclockwise. The optional corner
/// labels name the vertex between sides[i] and sides[i+1].
struct TriangleSpec {
  std::array<std::string, 3> sides;
  bool self_folded = false;
  std::string puncture;               // enclosed puncture when self-folded
  std::array<std::string, 3> corners; // optional explicit vertex labels
};

/// Oriented triangle-gluing encoding of an ideal triangulation. Vertices,
/// rotation systems and the folded-side/loop pairing are derived from the
/// gluing at construction time; arc labels are stable across flips.
class IdealTriangulation {
public:
  struct Triangle {
    std::array<int, 3> sides{-1, -1, -1};
    bool self_folded = false;
    std::string puncture;
    std::array<int, 3> corner{-1, -1, -1}; // vertex ids, derived
  };

  struct Corner { // between sides[pos] (in) and sides[pos+1 mod 3] (out)
    int tri = -1;
    int pos = -1;
    auto operator<=>(const Corner&) const = default;
  };

  IdealTriangulation() = default;

  IdealTriangulation(SurfaceSpec spec, std::vector<std::string> arcs,
                     std::vector<std::string> boundary, std::vector<TriangleSpec> triangles)
      : spec_(std::move(spec)) {
    for (const auto& a : arcs) add_side(a, true);
    for (const auto& b : boundary) add_side(b, false);
    for (const auto& t : triangles) {
      Triangle tri;
      for (int i = 0; i < 3; ++i) {
        auto it = side_index_.find(t.sides[i]);
        require(it != side_index_.end(), errc::invalid_input, "unknown side: " + t.sides[i]);
        tri.sides[i] = it->second;
      }
      tri.self_folded = t.self_folded;
      tri.puncture = t.puncture;
      tris_.push_back(tri);
      corner_hints_.push_back(t.corners);
    }
    derive();
  }

  const SurfaceSpec& spec() const { return spec_; }
  int num_sides() const { return int(side_labels_.size()); }
  int num_triangles() const { return int(tris_.size()); }
  const std::vector<Triangle>& triangles() const { return tris_; }
  const std::string& side_label(int s) const { return side_labels_[s]; }
  bool side_is_arc(int s) const { return is_arc_[s]; }
  int side(const std::string& label) const {
    auto it = side_index_.find(label);
    require(it != side_index_.end(), errc::unknown_arc, "unknown side: " + label);
    return it->second;
  }
  bool has_side(const std::string& label) const { return side_index_.count(label) > 0; }

  std::vector<std::string> arc_labels() const {
    std::vector<std::string> r;
    for (int s = 0; s < num_sides(); ++s)
      if (is_arc_[s]) r.push_back(side_labels_[s]);
    return r;
  }
  std::vector<std::string> boundary_labels() const {
    std::vector<std::string> r;
    for (int s = 0; s < num_sides(); ++s)
      if (!is_arc_[s]) r.push_back(side_labels_[s]);
    return r;
  }

  int num_vertices() const { return int(vertex_labels_.size()); }
  const std::string& vertex_label(int v) const { return vertex_labels_[v]; }
  bool vertex_is_puncture(int v) const { return vertex_is_puncture_[v]; }
  std::vector<std::string> puncture_labels() const {
    std::vector<std::string> r;
    for (int v = 0; v < num_vertices(); ++v)
      if (vertex_is_puncture_[v]) r.push_back(vertex_labels_[v]);
    return r;
  }
  int vertex(const std::string& label) const {
    for (int v = 0; v < num_vertices(); ++v)
      if (vertex_labels_[v] == label) return v;
    fail(errc::invalid_input, "unknown vertex: " + label);
  }

  int corner_vertex(const Corner& c) const { return tris_[c.tri].corner[c.pos]; }
  int corner_in_side(const Corner& c) const { return tris_[c.tri].sides[c.pos]; }
  int corner_out_side(const Corner& c) const { return tris_[c.tri].sides[(c.pos + 1) % 3]; }

  /// Folded side of a self-folded triangle -> its enclosing loop, and back.
  bool is_folded_side(int s) const { return folded_to_loop_.count(s) > 0; }
  bool is_sf_loop(int s) const { return loop_to_folded_.count(s) > 0; }
  int loop_of_folded(int s) const { return folded_to_loop_.at(s); }
  int folded_of_loop(int s) const { return loop_to_folded_.at(s); }
  /// Puncture enclosed by the self-folded triangle with the given loop.
  int puncture_inside_loop(int loop) const { return loop_puncture_.at(loop); }

  /// Counterclockwise cycle of corners around a puncture.
  const std::vector<Corner>& corners_around(int vertex) const { return rotations_.at(vertex); }

  /// Counterclockwise sequence of side-ends around a puncture (the out-side
  /// of each corner of the rotation).
  std::vector<int> ends_around(int vertex) const {
    std::vector<int> r;
    for (const Corner& c : rotations_.at(vertex)) r.push_back(corner_out_side(c));
    return r;
  }

  std::vector<std::string> validate() const { return diagnostics_; }
  bool valid() const { return diagnostics_.empty(); }

  /// Quadrilateral diagonal exchange on slots. The loop of a self-folded
  /// triangle flips through the once-punctured-digon reconfiguration, which
  /// the slot bookkeeping covers with no special case. The new arc inherits
  /// the flipped arc's label.
  IdealTriangulation flip(const std::string& arc_label) const {
    require(valid(), errc::invalid_input, "flip requires a valid triangulation");
    int s = side(arc_label);
    require(is_arc_[s], errc::unknown_arc, "cannot flip boundary segment " + arc_label);
    require(!is_folded_side(s), errc::folded_side_flip,
            "cannot flip the folded side " + arc_label);
    const auto& slots = side_slots_[s];
    require(slots.size() == 2, errc::internal, "arc without two slots");
    int t1 = slots[0].first, t2 = slots[1].first;
    require(t1 != t2, errc::internal, "folded configuration not caught");

    // rotate both triangles so the flipped arc sits first
    auto rotated = [&](int t, int k) {
      Triangle r;
      r.self_folded = false;
      for (int i = 0; i < 3; ++i) {
        r.sides[i] = tris_[t].sides[(k + i) % 3];
        r.corner[i] = tris_[t].corner[(k + i) % 3];
      }
      return r;
    };
    Triangle d1 = rotated(t1, slots[0].second);
    Triangle d2 = rotated(t2, slots[1].second);
    // d1 = (g, a, b) with corners (g,a)@V1, (a,b)@V2, (b,g)@V3
    // d2 = (g, c, d) with corners (g,c)@V3, (c,d)@V4, (d,g)@V1
    int a = d1.sides[1], b = d1.sides[2], c = d2.sides[1], d = d2.sides[2];
    int v1 = d1.corner[0], v2 = d1.corner[1], v3 = d1.corner[2], v4 = d2.corner[1];

    Triangle n1; // (g, b, c): corners (g,b)@V2, (b,c)@V3, (c,g)@V4
    n1.sides = {s, b, c};
    n1.corner = {v2, v3, v4};
    Triangle n2; // (g, d, a): corners (g,d)@V4, (d,a)@V1, (a,g)@V2
    n2.sides = {s, d, a};
    n2.corner = {v4, v1, v2};

    std::vector<Triangle> new_tris = tris_;
    new_tris[t1] = n1;
    new_tris[t2] = n2;
    for (int t : {t1, t2}) {
      Triangle& tri = new_tris[t];
      tri.self_folded = false;
      tri.puncture.clear();
      for (int i = 0; i < 3; ++i) {
        if (tri.sides[i] == tri.sides[(i + 1) % 3]) {
          tri.self_folded = true;
          tri.puncture = vertex_labels_[tri.corner[i]];
        }
      }
    }
    return IdealTriangulation(*this, std::move(new_tris));
  }

  /// Swap two arc labels (used by tagged flips at folded sides).
  IdealTriangulation with_swapped_labels(const std::string& x, const std::string& y) const {
    IdealTriangulation r = *this;
    int sx = side(x), sy = side(y);
    std::swap(r.side_labels_[sx], r.side_labels_[sy]);
    r.side_index_[r.side_labels_[sx]] = sx;
    r.side_index_[r.side_labels_[sy]] = sy;
    return r;
  }

  /// Canonical text key identifying the triangulation as a glued complex
  /// with pinned boundary segments and vertices but anonymous arc labels:
  /// the lexicographically least serialization over all traversal anchors.
  std::string canonical_key() const {
    std::string best;
    for (int t0 = 0; t0 < num_triangles(); ++t0)
      for (int r0 = 0; r0 < 3; ++r0) {
        std::string key = traversal_key(t0, r0);
        if (best.empty() || key < best) best = key;
      }
    return best;
  }

private:
  /// Breadth-first serialization from one anchor: arcs are numbered in
  /// discovery order, boundary segments and vertices keep their labels.
  std::string traversal_key(int t0, int r0) const {
    std::map<int, int> arc_num;
    std::vector<bool> visited(num_triangles(), false);
    std::deque<std::pair<int, int>> queue{{t0, r0}};
    visited[t0] = true;
    std::ostringstream os;
    while (!queue.empty()) {
      auto [t, rot] = queue.front();
      queue.pop_front();
      for (int i = 0; i < 3; ++i) {
        int pos = (rot + i) % 3;
        int s = tris_[t].sides[pos];
        if (is_arc_[s]) {
          auto [it, fresh] = arc_num.emplace(s, int(arc_num.size()));
          os << "A" << it->second << ",";
        } else {
          os << "B" << side_labels_[s] << ",";
        }
        os << vertex_labels_[tris_[t].corner[pos]] << ";";
      }
      os << "/";
      for (int i = 0; i < 3; ++i) {
        int pos = (rot + i) % 3;
        int s = tris_[t].sides[pos];
        if (!is_arc_[s]) continue;
        const auto& slots = side_slots_[s];
        std::pair<int, int> mine{t, pos};
        std::pair<int, int> other = (slots[0] == mine) ? slots[1] : slots[0];
        if (visited[other.first]) continue;
        visited[other.first] = true;
        queue.push_back(other);
      }
    }
    return os.str();
  }

  IdealTriangulation(const IdealTriangulation& proto, std::vector<Triangle> new_tris)
      : spec_(proto.spec_), side_labels_(proto.side_labels_), side_index_(proto.side_index_),
        is_arc_(proto.is_arc_), tris_(std::move(new_tris)) {
    corner_hints_.clear();
    for (const Triangle& t : tris_) {
      std::array<std::string, 3> hint;
      for (int i = 0; i < 3; ++i)
        hint[i] = t.corner[i] >= 0 ? proto.vertex_labels_[t.corner[i]] : "";
      corner_hints_.push_back(hint);
    }
    for (auto& t : tris_) t.corner = {-1, -1, -1};
    derive();
  }

  void add_side(const std::string& label, bool arc) {
    require(!side_index_.count(label), errc::invalid_input, "duplicate side label: " + label);
    side_index_[label] = int(side_labels_.size());
    side_labels_.push_back(label);
    is_arc_.push_back(arc);
  }

  void note(const std::string& msg) { diagnostics_.push_back(msg); }

  void derive() {
    diagnostics_.clear();
    side_slots_.assign(num_sides(), {});
    for (int t = 0; t < num_triangles(); ++t)
      for (int i = 0; i < 3; ++i) side_slots_[tris_[t].sides[i]].push_back({t, i});

    for (int s = 0; s < num_sides(); ++s) {
      size_t want = is_arc_[s] ? 2 : 1;
      if (side_slots_[s].size() != want) {
        note((is_arc_[s] ? "arc degree != 2: " : "boundary degree != 1: ") + side_labels_[s] +
             " occupies " + std::to_string(side_slots_[s].size()) + " slots");
      }
    }
    int n = 0, c = 0;
    for (int s = 0; s < num_sides(); ++s) (is_arc_[s] ? n : c)++;
    if (3 * num_triangles() != 2 * n + c)
      note("triangle count mismatch: 3t != 2n + c");
    if (n != spec_.rank())
      note("arc count " + std::to_string(n) + " differs from surface rank " +
           std::to_string(spec_.rank()));
    if (c != spec_.boundary_points())
      note("boundary segment count differs from surface data");

    // self-folded structure
    folded_to_loop_.clear();
    loop_to_folded_.clear();
    loop_puncture_.clear();
    for (int t = 0; t < num_triangles(); ++t) {
      const Triangle& tri = tris_[t];
      int rep = -1;
      for (int i = 0; i < 3; ++i)
        if (tri.sides[i] == tri.sides[(i + 1) % 3]) rep = tri.sides[i];
      bool has_repeat = rep >= 0 || tri.sides[0] == tri.sides[2];
      if (rep < 0 && tri.sides[0] == tri.sides[2]) rep = tri.sides[0];
      if (tri.self_folded != has_repeat) {
        note("self-folded flag disagrees with repeated sides in triangle " + std::to_string(t));
        continue;
      }
      if (!tri.self_folded) continue;
      int loop = -1;
      for (int i = 0; i < 3; ++i)
        if (tri.sides[i] != rep) loop = tri.sides[i];
      if (loop < 0) {
        note("self-folded triangle with three equal sides");
        continue;
      }
      if (!is_arc_[rep] || !is_arc_[loop]) note("self-folded triangle with boundary sides");
      if (tri.puncture.empty()) note("self-folded triangle lacks its puncture label");
      folded_to_loop_[rep] = loop;
      loop_to_folded_[loop] = rep;
    }

    if (!diagnostics_.empty()) return; // derived structures need sane counts

    derive_vertices();
    if (!diagnostics_.empty()) return;

    // Euler characteristic check: V - E + F = 2 - 2g - b
    int V = num_vertices(), E = n + c, F = num_triangles();
    if (V - E + F != 2 - 2 * spec_.genus - spec_.boundary_components())
      note("Euler characteristic mismatch (wrong gluing or surface data)");
    int punct = 0;
    for (int v = 0; v < num_vertices(); ++v)
      if (vertex_is_puncture_[v]) ++punct;
    if (punct != spec_.punctures)
      note("interior vertex count " + std::to_string(punct) + " differs from declared punctures");
    if (!diagnostics_.empty()) return;

    // the puncture enclosed by each self-folded loop: the corner between the
    // two folded-side slots
    for (const auto& [loop, folded] : loop_to_folded_) {
      int enclosed = -1;
      for (const Triangle& t : tris_) {
        if (!t.self_folded) continue;
        if (t.sides[0] != loop && t.sides[1] != loop && t.sides[2] != loop) continue;
        for (int i = 0; i < 3; ++i)
          if (t.sides[i] == folded && t.sides[(i + 1) % 3] == folded) enclosed = t.corner[i];
        if (enclosed >= 0 && !t.puncture.empty() && vertex_labels_[enclosed] != t.puncture)
          note("self-folded puncture label disagrees with the derived vertex");
      }
      if (enclosed < 0)
        note("could not locate the puncture enclosed by loop " + side_labels_[loop]);
      else
        loop_puncture_[loop] = enclosed;
    }
  }

  std::optional<Corner> succ(const Corner& c) const {
    int s = corner_in_side(c);
    if (!is_arc_[s]) return std::nullopt;
    const auto& slots = side_slots_[s];
    std::pair<int, int> mine{c.tri, c.pos};
    std::pair<int, int> other = (slots[0] == mine) ? slots[1] : slots[0];
    // corner of the other slot's triangle whose out-slot is that slot
    return Corner{other.first, (other.second + 2) % 3};
  }

  void derive_vertices() {
    const int C = num_triangles() * 3;
    auto cid = [](const Corner& c) { return c.tri * 3 + c.pos; };
    std::vector<int> comp(C, -1);
    std::vector<std::vector<Corner>> members;
    for (int t = 0; t < num_triangles(); ++t)
      for (int i = 0; i < 3; ++i) {
        Corner c{t, i};
        if (comp[cid(c)] >= 0) continue;
        // collect the weak component through succ in both directions
        std::vector<Corner> stack{c};
        std::vector<Corner> group;
        comp[cid(c)] = int(members.size());
        while (!stack.empty()) {
          Corner cur = stack.back();
          stack.pop_back();
          group.push_back(cur);
          if (auto nxt = succ(cur)) {
            if (comp[cid(*nxt)] < 0) {
              comp[cid(*nxt)] = comp[cid(c)];
              stack.push_back(*nxt);
            }
          }
          // inverse direction: find corners whose succ is cur
          for (int t2 = 0; t2 < num_triangles(); ++t2)
            for (int i2 = 0; i2 < 3; ++i2) {
              Corner cand{t2, i2};
              if (comp[cid(cand)] >= 0) continue;
              if (auto nxt = succ(cand); nxt && *nxt == cur) {
                comp[cid(cand)] = comp[cid(c)];
                stack.push_back(cand);
              }
            }
        }
        members.push_back(std::move(group));
      }

    // a component is a puncture iff every corner crosses arcs both ways
    std::vector<bool> interior(members.size(), true);
    for (size_t k = 0; k < members.size(); ++k)
      for (const Corner& c : members[k])
        if (!is_arc_[corner_in_side(c)] || !is_arc_[corner_out_side(c)]) interior[k] = false;

    // label assignment: corner hints win, then self-folded annotations, then
    // discovery order
    vertex_labels_.assign(members.size(), "");
    vertex_is_puncture_.assign(members.size(), false);
    for (size_t k = 0; k < members.size(); ++k) vertex_is_puncture_[k] = interior[k];

    for (int t = 0; t < num_triangles(); ++t) {
      if (corner_hints_.empty()) break;
      for (int i = 0; i < 3; ++i) {
        const std::string& hint = corner_hints_[t][i];
        if (hint.empty()) continue;
        int k = comp[t * 3 + i];
        if (vertex_labels_[k].empty())
          vertex_labels_[k] = hint;
        else if (vertex_labels_[k] != hint)
          note("corner labels inconsistent around a vertex: " + vertex_labels_[k] + " vs " +
               hint);
      }
    }
    for (int t = 0; t < num_triangles(); ++t) {
      const Triangle& tri = tris_[t];
      if (!tri.self_folded || tri.puncture.empty()) continue;
      for (int i = 0; i < 3; ++i)
        if (tri.sides[i] == tri.sides[(i + 1) % 3]) {
          int k = comp[t * 3 + i];
          if (vertex_labels_[k].empty())
            vertex_labels_[k] = tri.puncture;
          else if (vertex_labels_[k] != tri.puncture)
            note("self-folded puncture label clashes with corner labels");
        }
    }
    int next_p = 1, next_m = 1;
    auto fresh = [&](bool puncture) {
      while (true) {
        std::string cand = puncture ? "p" + std::to_string(next_p++) : "m" + std::to_string(next_m++);
        bool used = false;
        for (const auto& l : vertex_labels_) used |= (l == cand);
        if (!used) return cand;
      }
    };
    for (size_t k = 0; k < members.size(); ++k)
      if (vertex_labels_[k].empty()) vertex_labels_[k] = fresh(interior[k]);

    std::set<std::string> seen;
    for (const auto& l : vertex_labels_) {
      if (seen.count(l)) note("duplicate vertex label: " + l);
      seen.insert(l);
    }

    for (int t = 0; t < num_triangles(); ++t)
      for (int i = 0; i < 3; ++i) tris_[t].corner[i] = comp[t * 3 + i];

    // rotation systems for punctures: follow succ around the cycle
    rotations_.clear();
    for (size_t k = 0; k < members.size(); ++k) {
      if (!interior[k]) continue;
      Corner start = members[k].front();
      std::vector<Corner> cycle;
      Corner cur = start;
      do {
        cycle.push_back(cur);
        auto nxt = succ(cur);
        if (!nxt) {
          note("interior vertex walk hit the boundary");
          break;
        }
        cur = *nxt;
      } while (!(cur == start) && cycle.size() <= members[k].size());
      if (cycle.size() != members[k].size())
        note("rotation system inconsistent around vertex " + vertex_labels_[k]);
      rotations_[int(k)] = std::move(cycle);
    }
  }

  SurfaceSpec spec_;
  std::vector<std::string> side_labels_;
  std::map<std::string, int> side_index_;
  std::vector<bool> is_arc_;
  std::vector<Triangle> tris_;
  std::vector<std::array<std::string, 3>> corner_hints_;

  std::vector<std::vector<std::pair<int, int>>> side_slots_;
  std::map<int, int> folded_to_loop_, loop_to_folded_, loop_puncture_;
  std::vector<std::string> vertex_labels_;
  std::vector<bool> vertex_is_puncture_;
  std::map<int, std::vector<Corner>> rotations_;
  std::vector<std::string> diagnostics_;
};

inline IdealTriangulation flip_ideal(const IdealTriangulation& t, const std::string& arc) {
  return t.flip(arc);
}

// ---------------------------------------------------------------------------
// Tagged triangulations as (underlying ideal triangulation, sign function).

class TaggedTriangulation {
public:
  TaggedTriangulation() = default;

  /// The pair (underlying ideal triangulation, signs) is stored in the gauge
  /// where every zero-signature puncture carries the sign +1: an encoding
  /// with -1 at an enclosed puncture describes the same tagged triangulation
  /// with the folded-side and loop labels exchanged, so we swap and flip.
  TaggedTriangulation(IdealTriangulation base, std::map<std::string, int> epsilon)
      : base_(std::move(base)), epsilon_(std::move(epsilon)) {
    for (const auto& p : base_.puncture_labels()) {
      auto it = epsilon_.find(p);
      require(it != epsilon_.end(), errc::invalid_input, "epsilon missing puncture " + p);
      require(it->second == 1 || it->second == -1, errc::invalid_input,
              "epsilon must be +1 or -1 at " + p);
    }
    std::vector<std::pair<std::string, std::string>> swaps;
    for (const auto& t : base_.triangles()) {
      if (!t.self_folded || epsilon_.at(t.puncture) == 1) continue;
      int loop = -1, folded = -1;
      for (int i = 0; i < 3; ++i)
        if (t.sides[i] == t.sides[(i + 1) % 3]) folded = t.sides[i];
      for (int i = 0; i < 3; ++i)
        if (t.sides[i] != folded) loop = t.sides[i];
      swaps.push_back({base_.side_label(folded), base_.side_label(loop)});
      epsilon_[t.puncture] = 1;
    }
    for (const auto& [folded_label, loop_label] : swaps)
      base_ = base_.with_swapped_labels(folded_label, loop_label);
  }

  const IdealTriangulation& base() const { return base_; }
  const std::map<std::string, int>& epsilon() const { return epsilon_; }

  /// Signature: 0 at punctures enclosed by a self-folded triangle, epsilon
  /// elsewhere.
  std::map<std::string, int> signature() const {
    std::map<std::string, int> sig;
    for (const auto& p : base_.puncture_labels()) sig[p] = epsilon_.at(p);
    for (const auto& t : base_.triangles())
      if (t.self_folded) sig[t.puncture] = 0;
    return sig;
  }

  /// Flip of a tagged arc. Away from folded sides this is the ideal flip
  /// with the signs kept. Flipping the tagged arc over the folded side f of
  /// a self-folded triangle with loop l at puncture q exchanges the roles of
  /// f and l: the underlying ideal triangulation flips the loop, the two
  /// labels swap, and the sign at q reverses.
  TaggedTriangulation flip(const std::string& arc_label) const {
    int s = base_.side(arc_label);
    require(base_.side_is_arc(s), errc::unknown_arc, "not a tagged arc: " + arc_label);
    if (!base_.is_folded_side(s)) {
      return TaggedTriangulation(base_.flip(arc_label), epsilon_);
    }
    int loop = base_.loop_of_folded(s);
    int q = base_.puncture_inside_loop(loop);
    const std::string loop_label = base_.side_label(loop);
    const std::string q_label = base_.vertex_label(q);
    IdealTriangulation flipped = base_.flip(loop_label).with_swapped_labels(arc_label, loop_label);
    std::map<std::string, int> eps = epsilon_;
    eps[q_label] = -eps.at(q_label);
    return TaggedTriangulation(std::move(flipped), std::move(eps));
  }

  std::string canonical_key() const {
    std::string key = base_.canonical_key() + "#";
    for (const auto& [p, e] : epsilon_) key += p + (e > 0 ? "+" : "-");
    return key;
  }

  bool operator==(const TaggedTriangulation& o) const {
    return canonical_key() == o.canonical_key();
  }

private:
  IdealTriangulation base_;
  std::map<std::string, int> epsilon_;
};

inline TaggedTriangulation flip_tagged(const TaggedTriangulation& t, const std::string& arc) {
  return t.flip(arc);
}

inline std::map<std::string, int> signature(const TaggedTriangulation& t) {
  return t.signature();
}

// ---------------------------------------------------------------------------
// Flip graph enumeration.

struct FlipGraph {
  std::vector<TaggedTriangulation> nodes;
  // edges[i][arc label] = neighbor index
  std::vector<std::map<std::string, int>> edges;

  int degree(int node) const { return int(edges[node].size()); }
};

/// Breadth-first closure under tagged flips, nodes deduplicated by the
/// canonical key of (underlying triangulation, signs).
inline FlipGraph enumerate_flip_graph(const TaggedTriangulation& start, int max_nodes) {
  require(max_nodes >= 1, errc::invalid_input, "max_nodes must be positive");
  FlipGraph g;
  std::map<std::string, int> index;
  std::deque<int> queue;
  g.nodes.push_back(start);
  g.edges.emplace_back();
  index[start.canonical_key()] = 0;
  queue.push_back(0);
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (const std::string& arc : g.nodes[cur].base().arc_labels()) {
      TaggedTriangulation next = g.nodes[cur].flip(arc);
      std::string key = next.canonical_key();
      auto it = index.find(key);
      int id;
      if (it == index.end()) {
        require(int(g.nodes.size()) < max_nodes, errc::budget_exceeded,
                "flip graph exceeds the node budget");
        id = int(g.nodes.size());
        g.nodes.push_back(std::move(next));
        g.edges.emplace_back();
        index[key] = id;
        queue.push_back(id);
      } else {
        id = it->second;
      }
      g.edges[cur][arc] = id;
    }
  }
  return g;
}

} // namespace qpsl
