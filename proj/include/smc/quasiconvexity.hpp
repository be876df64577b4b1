// Geodesic machinery on 1-skeletons and the empirical certification that
// shell-free subcomplexes and subgroup orbits stay within 3L of geodesics.
#ifndef SMC_QUASICONVEXITY_HPP
#define SMC_QUASICONVEXITY_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smc/complex.hpp"
#include "smc/rational.hpp"

namespace smc {

constexpr std::uint32_t kUnreached = std::uint32_t(-1);

// BFS distances from a set of sources over the 1-skeleton.
inline std::vector<std::uint32_t> bfs_distances(const Complex& X,
                                                const std::vector<std::uint32_t>& sources) {
  std::vector<std::uint32_t> dist(X.vertex_count(), kUnreached);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t s : sources) {
    if (dist[s] != kUnreached) continue;
    dist[s] = 0;
    queue.push_back(s);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint32_t v = queue[head];
    for (std::uint32_t oe : X.edges_at(v)) {
      std::uint32_t w = X.target(oe);
      if (dist[w] == kUnreached) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

struct GeodesicQuery {
  std::uint32_t from = 0, to = 0;
  std::uint32_t distance = 0;
  std::vector<std::uint32_t> path_vertices;  // from .. to
  std::vector<std::uint32_t> path_oedges;    // oriented edges along the path
  bool ball_sound = false;  // |from| + d(from,to) <= R: exact for the full space
};

// BFS distance plus one lexicographically-least geodesic (smallest oriented
// edge id at each step).
inline std::optional<GeodesicQuery> distance(const Complex& X, std::uint32_t u,
                                             std::uint32_t v) {
  std::vector<std::uint32_t> dist = bfs_distances(X, {v});
  if (dist[u] == kUnreached) return std::nullopt;
  GeodesicQuery q;
  q.from = u;
  q.to = v;
  q.distance = dist[u];
  std::uint32_t cur = u;
  q.path_vertices.push_back(cur);
  while (cur != v) {
    std::uint32_t best = kUnreached;
    for (std::uint32_t oe : X.edges_at(cur)) {
      if (dist[X.target(oe)] + 1 == dist[cur] && oe < best) best = oe;
    }
    q.path_oedges.push_back(best);
    cur = X.target(best);
    q.path_vertices.push_back(cur);
  }
  if (X.backend == Backend::Explicit) {
    q.ball_sound = true;
  } else {
    std::uint32_t near = std::min(X.vertex(u).dist, X.vertex(v).dist);
    q.ball_sound = std::uint64_t(near) + q.distance <= X.radius;
  }
  return q;
}

struct QuasiconvexityReport {
  bool pass = true;
  std::size_t claimed_bound = 0;   // 3L in reported units
  std::size_t max_offset = 0;      // raw edges, observed
  std::size_t pairs_checked = 0;
  std::size_t pairs_skipped_frontier = 0;
  std::uint32_t radius = 0;
  std::uint32_t depth = 0;
};

// For each ball-sound pair of Y-vertices, every vertex of one geodesic must
// lie within the bound of Y (multi-source BFS from Y).  Sampling prefers
// maximal-distance pairs; failures are hard errors upstream.
inline QuasiconvexityReport certify_subcomplex_quasiconvex(
    const Complex& X, const Subcomplex& Y, std::size_t bound_reported,
    std::size_t pair_cap = 4000) {
  QuasiconvexityReport rep;
  rep.claimed_bound = bound_reported;
  rep.radius = X.radius;
  std::vector<std::uint32_t> yverts = Y.vertices();
  if (yverts.empty()) return rep;
  std::vector<std::uint32_t> from_y = bfs_distances(X, yverts);

  // ball-sound candidate pairs, farthest first
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> pairs;
  for (std::size_t i = 0; i < yverts.size(); ++i) {
    std::vector<std::uint32_t> d = bfs_distances(X, {yverts[i]});
    for (std::size_t j = i; j < yverts.size(); ++j) {
      std::uint32_t dist = d[yverts[j]];
      if (dist == kUnreached) continue;
      if (X.backend != Backend::Explicit) {
        std::uint32_t near =
            std::min(X.vertex(yverts[i]).dist, X.vertex(yverts[j]).dist);
        if (std::uint64_t(near) + dist > X.radius) {
          ++rep.pairs_skipped_frontier;
          continue;
        }
      }
      pairs.push_back({dist, yverts[i], yverts[j]});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](auto& a, auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
    return std::get<2>(a) < std::get<2>(b);
  });
  if (pairs.size() > pair_cap) pairs.resize(pair_cap);

  std::size_t bound_raw = bound_reported * X.length_unit;
  for (auto& [d, u, v] : pairs) {
    auto q = distance(X, u, v);
    if (!q || !q->ball_sound) continue;
    ++rep.pairs_checked;
    for (std::uint32_t w : q->path_vertices) {
      std::size_t off = from_y[w];
      rep.max_offset = std::max(rep.max_offset, off);
      if (off > bound_raw) rep.pass = false;
    }
  }
  return rep;
}

struct OrbitQuasiconvexityReport {
  QuasiconvexityReport subcomplex;
  std::size_t core_diameter = 0;   // raw
  std::size_t orbit_constant = 0;  // 3L (reported units) + core diameter (raw/unit rounded up)
  std::size_t orbit_pairs = 0;
  std::size_t orbit_max_offset = 0;  // raw, offsets of geodesics between orbit points from the orbit
  bool pass = true;
};

// The orbit Hx is contained in Y (built from a core containing x); Y is
// 3L-quasiconvex; hence the orbit is quasiconvex with constant
// 3L + diam(Y_0) + per-orbit spread, reported concretely.
inline OrbitQuasiconvexityReport certify_orbit_quasiconvex(
    const Complex& X, const Subcomplex& Y, const std::vector<std::uint32_t>& orbit,
    std::size_t bound_reported, std::size_t core_diameter_raw,
    std::size_t pair_cap = 2000) {
  OrbitQuasiconvexityReport rep;
  rep.subcomplex = certify_subcomplex_quasiconvex(X, Y, bound_reported, pair_cap);
  rep.core_diameter = core_diameter_raw;
  rep.orbit_constant =
      bound_reported + (core_diameter_raw + X.length_unit - 1) / X.length_unit;
  if (orbit.empty()) return rep;
  std::vector<std::uint32_t> from_orbit = bfs_distances(X, orbit);
  std::size_t bound_raw = rep.orbit_constant * X.length_unit;
  for (std::size_t i = 0; i < orbit.size() && rep.orbit_pairs < pair_cap; ++i) {
    for (std::size_t j = i + 1; j < orbit.size() && rep.orbit_pairs < pair_cap; ++j) {
      auto q = distance(X, orbit[i], orbit[j]);
      if (!q || !q->ball_sound) continue;
      ++rep.orbit_pairs;
      for (std::uint32_t w : q->path_vertices) {
        std::size_t off = from_orbit[w];
        rep.orbit_max_offset = std::max(rep.orbit_max_offset, off);
        if (off > bound_raw) rep.pass = false;
      }
    }
  }
  rep.pass = rep.pass && rep.subcomplex.pass;
  return rep;
}

// Numeric gate for groups acting on (p, r) Gromov polyhedra: quasiconvexity
// machinery applies provided (6/p)(r-1) < 1.
inline bool gromov_polyhedron_gate(std::uint32_t p, std::uint32_t link_valence) {
  return Rational(6, 1) * Rational(std::int64_t(link_valence) - 1, std::int64_t(p)) <
         Rational(1);
}

}  // namespace smc

#endif  // SMC_QUASICONVEXITY_HPP
