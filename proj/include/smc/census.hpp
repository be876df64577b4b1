// Structural census of disc diagrams: spurs, i-shells, arcs, the cut tree,
// and the Greendlinger classification tag.
#ifndef SMC_CENSUS_HPP
#define SMC_CENSUS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "smc/diagrams.hpp"
#include "smc/union_find.hpp"

namespace smc {

enum class DiagramClass { SingleVertex, SingleCell, ThreeShells, Ladder, Violation };

inline const char* diagram_class_name(DiagramClass c) {
  switch (c) {
    case DiagramClass::SingleVertex: return "single-vertex";
    case DiagramClass::SingleCell: return "single-cell";
    case DiagramClass::ThreeShells: return "three-shells-or-spurs";
    case DiagramClass::Ladder: return "ladder";
    case DiagramClass::Violation: return "violation";
  }
  return "?";
}

struct ShellEntry {
  std::uint32_t cell = 0;
  std::uint32_t i = 0;        // number of inner arcs
  std::uint32_t q_start = 0;  // index into the cell walk where Q begins
  std::uint32_t q_len = 0;
};

struct ArcEntry {
  std::vector<std::uint32_t> darts;  // consecutive darts of the arc
  bool internal = false;
  bool boundary = false;
};

struct CutTree {
  std::vector<std::uint32_t> black;  // cut 0-cells
  std::size_t red_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> links;  // (black idx, red idx)
  bool is_tree = false;
  bool path_or_trivial = false;
};

struct DiagramCensus {
  std::vector<std::uint32_t> spur_edges;
  std::vector<ShellEntry> shells;  // all i-shells, any i
  std::vector<ArcEntry> arcs;
  CutTree cut_tree;
  DiagramClass classification = DiagramClass::Violation;
  std::size_t greendlinger_count = 0;  // spurs + shells with i <= 3
};

namespace detail_census {

struct Geometry {
  std::vector<bool> dart_on_boundary;
  std::vector<bool> vertex_on_boundary;
  std::vector<std::uint32_t> valence;
  std::vector<std::int32_t> cell_of_dart;  // interior cell index or -1 (outer)
};

inline Geometry geometry(const DiscDiagram& D) {
  Geometry g;
  g.dart_on_boundary.assign(D.darts.size(), false);
  g.vertex_on_boundary.assign(D.vertex_count, false);
  g.valence.assign(D.vertex_count, 0);
  g.cell_of_dart.assign(D.darts.size(), -1);
  for (std::uint32_t d : D.boundary) {
    g.dart_on_boundary[d] = true;
    g.dart_on_boundary[D.darts[d].twin] = true;
    g.vertex_on_boundary[D.darts[d].origin] = true;
  }
  if (D.darts.empty() && D.vertex_count == 1) g.vertex_on_boundary[0] = true;
  for (std::uint32_t d = 0; d < D.darts.size(); ++d) ++g.valence[D.darts[d].origin];
  for (std::size_t c = 0; c < D.cell_walks.size(); ++c)
    for (std::uint32_t d : D.cell_walks[c]) g.cell_of_dart[d] = std::int32_t(c);
  return g;
}

}  // namespace detail_census

// A cancellable pair: two interior-facing cells reading mirror words across a
// shared 1-cell.  Returns a witnessing dart when the diagram is not reduced.
inline std::optional<std::uint32_t> find_cancellable_pair(const DiscDiagram& D) {
  detail_census::Geometry g = detail_census::geometry(D);
  for (std::uint32_t d = 0; d < D.darts.size(); ++d) {
    std::int32_t c1 = g.cell_of_dart[d];
    std::int32_t c2 = g.cell_of_dart[D.darts[d].twin];
    if (c1 < 0 || c2 < 0) continue;
    const auto& w1 = D.cell_walks[std::size_t(c1)];
    const auto& w2 = D.cell_walks[std::size_t(c2)];
    if (w1.size() != w2.size()) continue;
    std::size_t n = w1.size();
    std::size_t i1 = std::size_t(std::find(w1.begin(), w1.end(), d) - w1.begin());
    std::size_t i2 =
        std::size_t(std::find(w2.begin(), w2.end(), D.darts[d].twin) - w2.begin());
    bool mirror = true;
    for (std::size_t t = 0; t < n && mirror; ++t) {
      Letter a = D.darts[w1[(i1 + t) % n]].label;
      // cell 2 walked backwards from the twin must read the inverse letters
      std::uint32_t d2 = w2[(i2 + n - t) % n];
      mirror = (D.darts[D.darts[d2].twin].label == a);
    }
    if (mirror) return d;
  }
  return std::nullopt;
}

// a vertex with no incident darts (the single-0-cell diagram)
inline bool g_isolated(const DiscDiagram& D, std::uint32_t v) {
  for (std::uint32_t d = 0; d < D.darts.size(); ++d)
    if (D.darts[d].origin == v) return false;
  return true;
}

inline CutTree cut_tree(const DiscDiagram& D) {
  CutTree out;
  std::uint32_t nv = D.vertex_count;
  std::size_t E = D.edge_count();
  std::size_t C = D.cell_walks.size();
  // Connectivity of D minus a vertex set: union-find over surviving vertices,
  // edges, and cells; a cell's closure minus finitely many boundary points
  // stays connected, so a cell merges all of its edges.
  auto component_count = [&](const std::vector<bool>& vgone) -> std::size_t {
    UnionFind uf(nv + E + C);
    std::vector<bool> alive(nv + E + C, false);
    for (std::uint32_t v = 0; v < nv; ++v) alive[v] = !vgone[v];
    for (std::uint32_t d = 0; d < D.darts.size(); ++d) {
      if (D.darts[d].twin < d) continue;
      std::size_t e = nv + d / 2;
      alive[e] = true;
      std::uint32_t a = D.darts[d].origin, b = D.target(d);
      if (!vgone[a]) uf.merge(e, a);
      if (!vgone[b]) uf.merge(e, b);
    }
    for (std::size_t c = 0; c < C; ++c) {
      alive[nv + E + c] = true;
      for (std::uint32_t dd : D.cell_walks[c]) uf.merge(nv + E + c, nv + dd / 2);
    }
    std::map<std::size_t, bool> roots;
    for (std::size_t i = 0; i < alive.size(); ++i)
      if (alive[i]) roots[uf.find(i)] = true;
    return roots.size();
  };

  std::vector<bool> gone(nv, false);
  for (std::uint32_t v = 0; v < nv; ++v) {
    gone[v] = true;
    if (component_count(gone) > 1) out.black.push_back(v);
    gone[v] = false;
  }
  for (std::uint32_t v : out.black) gone[v] = true;

  // red components of D minus the cut set
  UnionFind uf(nv + E + C);
  for (std::uint32_t d = 0; d < D.darts.size(); ++d) {
    if (D.darts[d].twin < d) continue;
    std::size_t e = nv + d / 2;
    std::uint32_t a = D.darts[d].origin, b = D.target(d);
    if (!gone[a]) uf.merge(e, a);
    if (!gone[b]) uf.merge(e, b);
  }
  for (std::size_t c = 0; c < C; ++c)
    for (std::uint32_t dd : D.cell_walks[c]) uf.merge(nv + E + c, nv + dd / 2);

  std::map<std::size_t, std::size_t> red_index;
  auto red_of = [&](std::size_t item) {
    std::size_t root = uf.find(item);
    auto it = red_index.find(root);
    if (it != red_index.end()) return it->second;
    std::size_t idx = red_index.size();
    red_index.emplace(root, idx);
    return idx;
  };
  for (std::uint32_t d = 0; d < D.darts.size(); ++d) {
    if (D.darts[d].twin < d) continue;
    red_of(nv + d / 2);
  }
  for (std::uint32_t v = 0; v < nv; ++v)
    if (!gone[v] && g_isolated(D, v)) red_of(v);

  std::vector<std::pair<std::size_t, std::size_t>> links;
  for (std::size_t bi = 0; bi < out.black.size(); ++bi) {
    std::uint32_t v = out.black[bi];
    for (std::uint32_t d = 0; d < D.darts.size(); ++d)
      if (D.darts[d].origin == v) links.push_back({bi, red_of(nv + d / 2)});
  }
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
  out.links = std::move(links);
  out.red_count = red_index.size();
  std::size_t nodes = out.black.size() + out.red_count;
  out.is_tree = nodes == 0 || out.links.size() + 1 == nodes;
  std::map<std::size_t, std::size_t> deg;
  for (auto& [b, r] : out.links) {
    deg[b] += 1;
    deg[out.black.size() + r] += 1;
  }
  out.path_or_trivial = out.is_tree;
  for (auto& kv : deg)
    if (kv.second > 2) out.path_or_trivial = false;
  return out;
}

// Ladder: the cut tree is trivial or a subdivided interval and some choice of
// boundary basepoints s,t splits the boundary into P1 P2 with every maximal
// internal arc joining interior(P1) to interior(P2).
inline bool is_ladder(const DiscDiagram& D, const CutTree& tree,
                      const std::vector<ArcEntry>& arcs) {
  if (!tree.path_or_trivial) return false;
  std::size_t blen = D.boundary.size();
  if (blen == 0) return false;
  std::vector<const ArcEntry*> internal;
  for (const ArcEntry& a : arcs)
    if (a.internal) internal.push_back(&a);
  for (std::size_t i = 0; i < blen; ++i) {
    for (std::size_t j = 0; j < blen; ++j) {
      if (i == j) continue;
      auto side_of = [&](std::uint32_t v) -> int {
        std::uint32_t vs = D.darts[D.boundary[i]].origin;
        std::uint32_t vt = D.darts[D.boundary[j]].origin;
        if (v == vs || v == vt) return 0;
        for (std::size_t t = (i + 1) % blen; t != j; t = (t + 1) % blen)
          if (D.darts[D.boundary[t]].origin == v) return 1;
        for (std::size_t t = (j + 1) % blen; t != i; t = (t + 1) % blen)
          if (D.darts[D.boundary[t]].origin == v) return 2;
        return -1;
      };
      bool ok = true;
      for (const ArcEntry* arc : internal) {
        std::uint32_t a = D.darts[arc->darts.front()].origin;
        std::uint32_t b = D.target(arc->darts.back());
        int sa = side_of(a), sb = side_of(b);
        if (!((sa == 1 && sb == 2) || (sa == 2 && sb == 1))) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

inline DiagramCensus census(const DiscDiagram& D) {
  if (auto bad = find_cancellable_pair(D))
    throw input_error("census: diagram is not reduced (cancellable pair at dart " +
                      std::to_string(*bad) + ")");
  DiagramCensus out;
  detail_census::Geometry g = detail_census::geometry(D);

  // spurs: boundary 1-cells with a valence-1 endpoint
  for (std::uint32_t d = 0; d < D.darts.size(); ++d) {
    if (D.darts[d].twin < d) continue;
    if (!g.dart_on_boundary[d]) continue;
    if (g.valence[D.darts[d].origin] == 1 || g.valence[D.target(d)] == 1)
      out.spur_edges.push_back(d);
  }

  // maximal arcs: chains through valence-2 vertices with valence != 2 ends
  {
    std::vector<bool> used(D.darts.size(), false);
    for (std::uint32_t d = 0; d < D.darts.size(); ++d) {
      if (used[d] || used[D.darts[d].twin]) continue;
      if (g.valence[D.darts[d].origin] == 2) continue;
      ArcEntry arc;
      std::uint32_t cur = d;
      for (;;) {
        used[cur] = used[D.darts[cur].twin] = true;
        arc.darts.push_back(cur);
        std::uint32_t v = D.target(cur);
        if (g.valence[v] != 2) break;
        std::uint32_t nxt = D.darts[D.darts[cur].twin].next;
        if (nxt == D.darts[cur].twin) nxt = D.darts[nxt].next;
        cur = nxt;
      }
      arc.boundary = true;
      arc.internal = true;
      for (std::uint32_t a : arc.darts) {
        if (!g.dart_on_boundary[a]) arc.boundary = false;
        if (g.dart_on_boundary[a]) arc.internal = false;
      }
      for (std::size_t i = 1; i < arc.darts.size(); ++i)
        if (g.vertex_on_boundary[D.darts[arc.darts[i]].origin]) arc.internal = false;
      out.arcs.push_back(std::move(arc));
    }
  }

  // i-shells
  for (std::size_t c = 0; c < D.cell_walks.size(); ++c) {
    const auto& walk = D.cell_walks[c];
    std::size_t n = walk.size();
    std::vector<bool> on_b(n);
    std::size_t boundary_count = 0;
    for (std::size_t t = 0; t < n; ++t) {
      on_b[t] = g.dart_on_boundary[walk[t]];
      boundary_count += on_b[t];
    }
    if (boundary_count == 0) continue;
    if (boundary_count == n) {
      out.shells.push_back({std::uint32_t(c), 0, 0, std::uint32_t(n)});
      continue;
    }
    std::size_t runs = 0, q_start = 0, q_len = 0;
    for (std::size_t t = 0; t < n; ++t) {
      bool prev = on_b[(t + n - 1) % n];
      if (on_b[t] && !prev) {
        ++runs;
        q_start = t;
      }
    }
    if (runs != 1) continue;
    while (q_len < n && on_b[(q_start + q_len) % n]) ++q_len;
    std::size_t s_len = n - q_len;
    bool interior_ok = true;
    std::size_t breaks = 0;
    for (std::size_t t = 1; t < s_len; ++t) {
      std::uint32_t v = D.darts[walk[(q_start + q_len + t) % n]].origin;
      if (g.vertex_on_boundary[v]) interior_ok = false;
      if (g.valence[v] >= 3) ++breaks;
    }
    if (!interior_ok) continue;
    out.shells.push_back({std::uint32_t(c), std::uint32_t(breaks + 1),
                          std::uint32_t(q_start), std::uint32_t(q_len)});
  }

  out.cut_tree = cut_tree(D);

  out.greendlinger_count = out.spur_edges.size();
  for (const ShellEntry& s : out.shells)
    if (s.i <= 3) ++out.greendlinger_count;

  if (D.darts.empty()) {
    out.classification = DiagramClass::SingleVertex;
  } else if (D.cell_walks.size() == 1 && D.edge_count() == D.cell_walks[0].size() &&
             D.vertex_count == D.cell_walks[0].size()) {
    out.classification = DiagramClass::SingleCell;
  } else if (out.greendlinger_count >= 3) {
    out.classification = DiagramClass::ThreeShells;
  } else if (is_ladder(D, out.cut_tree, out.arcs)) {
    out.classification = DiagramClass::Ladder;
  } else {
    out.classification = DiagramClass::Violation;
  }
  return out;
}

}  // namespace smc

#endif  // SMC_CENSUS_HPP
