// Explicit finite fixtures with declared symmetries: a disc with boundary
// circle, a wheel (hub polygon with petals on each hub edge), and a flower
// (polygons around a central vertex, consecutive ones sharing a spoke).
#ifndef SMC_TESTS_FIXTURES_HPP
#define SMC_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "smc/action.hpp"
#include "smc/complex.hpp"

namespace smc::testing {

struct Fixture {
  Complex X;
  std::vector<std::pair<std::string, CellPerm>> auts;
  Rational lambda{1, 6};

  const CellPerm& aut(const std::string& name) const {
    for (auto& [n, p] : auts)
      if (n == name) return p;
    throw input_error("fixture: unknown automorphism " + name);
  }
};

// n-gon boundary circle plus one disc: vertices h0..h{n-1}, edges
// c_i = (h_i, h_{i+1}), one face.  Rotations rot<k> for divisors k of n and
// the mirror through h0 are declared.
inline Fixture disc_with_boundary(std::uint32_t n) {
  ExplicitBuilder b;
  for (std::uint32_t i = 0; i < n; ++i) b.vertex("h" + std::to_string(i));
  std::vector<std::int64_t> cyc;
  for (std::uint32_t i = 0; i < n; ++i)
    cyc.push_back(b.edge("h" + std::to_string(i), "h" + std::to_string((i + 1) % n)) + 1);
  b.face(cyc);
  Fixture out;
  out.X = b.finish();
  for (std::uint32_t k = 1; k < n; ++k) {
    if (n % k != 0) continue;
    std::vector<std::uint32_t> vmap(n);
    for (std::uint32_t i = 0; i < n; ++i) vmap[i] = (i + k) % n;
    auto p = CellPerm::from_vertex_map(out.X, vmap);
    if (p) out.auts.push_back({"rot" + std::to_string(k), *p});
  }
  std::vector<std::uint32_t> mirror(n);
  for (std::uint32_t i = 0; i < n; ++i) mirror[i] = (n - i) % n;
  if (auto p = CellPerm::from_vertex_map(out.X, mirror))
    out.auts.push_back({"mirror", *p});
  out.lambda = Rational(1, 6);  // no pieces at all: any lambda verifies
  return out;
}

// Hub n-gon with a p-gon petal glued along every hub edge.  Pieces are
// exactly the hub edges (length 1); M = 2.  lambda = 2/(min(n,p) + 1) style
// rationals keep 6*lambda*M < 1 for n, p >= 14.
inline Fixture wheel(std::uint32_t n, std::uint32_t p) {
  ExplicitBuilder b;
  auto h = [&](std::uint32_t i) { return "h" + std::to_string(i % n); };
  auto o = [&](std::uint32_t i, std::uint32_t j) {
    return "o" + std::to_string(i % n) + "_" + std::to_string(j);
  };
  std::vector<std::int64_t> hub;
  for (std::uint32_t i = 0; i < n; ++i) hub.push_back(b.edge(h(i), h(i + 1)) + 1);
  b.face(hub);
  for (std::uint32_t i = 0; i < n; ++i) {
    // petal i: c_i then h_{i+1} -> o_{i,1} -> ... -> o_{i,p-2} -> h_i
    std::vector<std::int64_t> petal{hub[i]};
    std::string prev = h(i + 1);
    for (std::uint32_t j = 1; j + 1 < p; ++j) {
      petal.push_back(b.edge(prev, o(i, j)) + 1);
      prev = o(i, j);
    }
    petal.push_back(b.edge(prev, h(i)) + 1);
    b.face(petal);
  }
  Fixture out;
  out.X = b.finish();
  auto vid = [&](const std::string& name) { return out.X.find_vertex(name).value(); };
  for (std::uint32_t k : {std::uint32_t(1), n / 2, n / 7}) {
    if (k == 0 || n % k != 0 || k >= n) continue;
    std::vector<std::uint32_t> vmap(out.X.vertex_count());
    for (std::uint32_t i = 0; i < n; ++i) {
      vmap[vid(h(i))] = vid(h(i + k));
      for (std::uint32_t j = 1; j + 1 < p; ++j) vmap[vid(o(i, j))] = vid(o(i + k, j));
    }
    if (auto perm = CellPerm::from_vertex_map(out.X, vmap))
      out.auts.push_back({"rot" + std::to_string(k), *perm});
  }
  // mirror through edge midpoints: h_i -> h_{n-1-i} flips hub edge (n-1)/2 if
  // n odd, or maps c_i to c_{n-2-i} reversed when through vertices; declare
  // the vertex mirror h_i -> h_{-i}
  {
    std::vector<std::uint32_t> vmap(out.X.vertex_count());
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint32_t ii = (n - i) % n;
      vmap[vid(h(i))] = vid(h(ii));
      // petal on c_i maps to petal on c_{n-1-i} with the path reversed
      for (std::uint32_t j = 1; j + 1 < p; ++j)
        vmap[vid(o(i, j))] = vid(o(n - 1 - i, p - 1 - j));
    }
    if (auto perm = CellPerm::from_vertex_map(out.X, vmap))
      out.auts.push_back({"mirror", *perm});
  }
  // edge mirror: h_i -> h_{n-1-i} (flips hub edge c_{(n-1)/2}... for even n it
  // inverts the 1-cell c_{n/2-1}? it maps c_i to c_{n-2-i} reversed and fixes
  // c_{n-1} reversing it: an inversion witness.
  {
    std::vector<std::uint32_t> vmap(out.X.vertex_count());
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint32_t ii = (n - 1 - i + n) % n;
      vmap[vid(h(i))] = vid(h(ii));
      for (std::uint32_t j = 1; j + 1 < p; ++j)
        vmap[vid(o(i, j))] = vid(o((2 * n - 2 - i) % n, p - 1 - j));
    }
    if (auto perm = CellPerm::from_vertex_map(out.X, vmap))
      out.auts.push_back({"edge_mirror", *perm});
  }
  out.lambda = Rational(2, std::int64_t(2 * std::min(n, p) - 1));
  return out;
}

// k polygons of size p around a central vertex z; petal i has boundary
// spoke_i, arc_i (p-2 edges), spoke_{i+1} reversed.  Pieces are the spokes.
inline Fixture flower(std::uint32_t k, std::uint32_t p) {
  ExplicitBuilder b;
  auto u = [&](std::uint32_t i) { return "u" + std::to_string(i % k); };
  auto w = [&](std::uint32_t i, std::uint32_t j) {
    return "w" + std::to_string(i % k) + "_" + std::to_string(j);
  };
  b.vertex("z");
  std::vector<std::int64_t> spoke(k);
  for (std::uint32_t i = 0; i < k; ++i) spoke[i] = b.edge("z", u(i)) + 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    std::vector<std::int64_t> petal{spoke[i]};
    std::string prev = u(i);
    for (std::uint32_t j = 1; j + 2 < p; ++j) {
      petal.push_back(b.edge(prev, w(i, j)) + 1);
      prev = w(i, j);
    }
    petal.push_back(b.edge(prev, u(i + 1)) + 1);
    petal.push_back(-spoke[(i + 1) % k]);
    b.face(petal);
  }
  Fixture out;
  out.X = b.finish();
  auto vid = [&](const std::string& name) { return out.X.find_vertex(name).value(); };
  for (std::uint32_t d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    std::vector<std::uint32_t> vmap(out.X.vertex_count());
    vmap[vid("z")] = vid("z");
    for (std::uint32_t i = 0; i < k; ++i) {
      vmap[vid(u(i))] = vid(u(i + d));
      for (std::uint32_t j = 1; j + 2 < p; ++j) vmap[vid(w(i, j))] = vid(w(i + d, j));
    }
    if (auto perm = CellPerm::from_vertex_map(out.X, vmap))
      out.auts.push_back({"rot" + std::to_string(d), *perm});
  }
  out.lambda = Rational(3, std::int64_t(2 * p));
  return out;
}

}  // namespace smc::testing

#endif  // SMC_TESTS_FIXTURES_HPP
