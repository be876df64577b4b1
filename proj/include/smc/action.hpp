// Group actions on complexes.  The explicit backend acts by declared cell
// permutations with exact (finite) enumeration; ball backends act by deck
// transformations given as words, with bounded-depth enumeration that is a
// sound lower approximation of the subgroup.
#ifndef SMC_ACTION_HPP
#define SMC_ACTION_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smc/ball.hpp"
#include "smc/complex.hpp"
#include "smc/union_find.hpp"

namespace smc {

// A cellular automorphism of a finite explicit complex, stored as full cell
// maps.  Oriented edge images carry the orientation flip.
struct CellPerm {
  std::vector<std::uint32_t> vertex_img;
  std::vector<std::uint32_t> oedge_img;  // per oriented edge id
  std::vector<std::uint32_t> face_img;

  bool is_identity() const {
    for (std::uint32_t v = 0; v < vertex_img.size(); ++v)
      if (vertex_img[v] != v) return false;
    for (std::uint32_t o = 0; o < oedge_img.size(); ++o)
      if (oedge_img[o] != o) return false;
    return true;
  }

  static CellPerm identity(const Complex& X) {
    CellPerm p;
    p.vertex_img.resize(X.vertex_count());
    p.oedge_img.resize(2 * X.edge_count());
    p.face_img.resize(X.face_count());
    for (std::uint32_t v = 0; v < p.vertex_img.size(); ++v) p.vertex_img[v] = v;
    for (std::uint32_t o = 0; o < p.oedge_img.size(); ++o) p.oedge_img[o] = o;
    for (std::uint32_t f = 0; f < p.face_img.size(); ++f) p.face_img[f] = f;
    return p;
  }

  CellPerm compose(const CellPerm& then) const {
    // (this->compose(then))(x) = then(this(x))
    CellPerm out = *this;
    for (std::uint32_t v = 0; v < vertex_img.size(); ++v)
      out.vertex_img[v] = then.vertex_img[vertex_img[v]];
    for (std::uint32_t o = 0; o < oedge_img.size(); ++o)
      out.oedge_img[o] = then.oedge_img[oedge_img[o]];
    for (std::uint32_t f = 0; f < face_img.size(); ++f)
      out.face_img[f] = then.face_img[face_img[f]];
    return out;
  }

  CellPerm inverse() const {
    CellPerm out = *this;
    for (std::uint32_t v = 0; v < vertex_img.size(); ++v)
      out.vertex_img[vertex_img[v]] = v;
    for (std::uint32_t o = 0; o < oedge_img.size(); ++o)
      out.oedge_img[oedge_img[o]] = o;
    for (std::uint32_t f = 0; f < face_img.size(); ++f)
      out.face_img[face_img[f]] = f;
    return out;
  }

  std::string key() const {
    std::string out;
    for (std::uint32_t v : vertex_img) {
      out += std::to_string(v);
      out += ',';
    }
    return out;
  }

  // Derives the full cell maps from a vertex permutation; fails when an edge
  // or face image is ambiguous (parallel cells) or absent.
  static std::optional<CellPerm> from_vertex_map(const Complex& X,
                                                 const std::vector<std::uint32_t>& vmap) {
    if (vmap.size() != X.vertex_count()) return std::nullopt;
    std::vector<bool> seen(vmap.size(), false);
    for (std::uint32_t img : vmap) {
      if (img >= vmap.size() || seen[img]) return std::nullopt;
      seen[img] = true;
    }
    CellPerm p;
    p.vertex_img = vmap;
    p.oedge_img.assign(2 * X.edge_count(), std::uint32_t(-1));
    for (std::uint32_t e = 0; e < X.edge_count(); ++e) {
      std::uint32_t iu = vmap[X.edge(e).u], iv = vmap[X.edge(e).v];
      std::optional<std::uint32_t> img;
      for (std::uint32_t c = 0; c < X.edge_count(); ++c) {
        bool fwd = X.edge(c).u == iu && X.edge(c).v == iv;
        bool bwd = X.edge(c).u == iv && X.edge(c).v == iu && iu != iv;
        if (fwd || bwd) {
          if (img) return std::nullopt;  // ambiguous (parallel edges)
          img = oriented(c, bwd);
        }
      }
      if (!img) return std::nullopt;
      p.oedge_img[oriented(e, false)] = *img;
      p.oedge_img[oriented(e, true)] = flip(*img);
    }
    p.face_img.assign(X.face_count(), std::uint32_t(-1));
    std::vector<bool> used(X.face_count(), false);
    for (std::uint32_t f = 0; f < X.face_count(); ++f) {
      std::vector<std::uint32_t> img;
      for (std::uint32_t oe : X.face(f).boundary) img.push_back(p.oedge_img[oe]);
      std::optional<std::uint32_t> match;
      for (std::uint32_t c = 0; c < X.face_count(); ++c) {
        if (X.face(c).boundary.size() != img.size()) continue;
        if (cycles_equal(X.face(c).boundary, img)) {
          if (match) return std::nullopt;
          match = c;
        }
      }
      if (!match || used[*match]) return std::nullopt;
      used[*match] = true;
      p.face_img[f] = *match;
    }
    return p;
  }

  static bool cycles_equal(const std::vector<std::uint32_t>& a,
                           const std::vector<std::uint32_t>& b) {
    std::size_t n = a.size();
    for (std::size_t s = 0; s < n; ++s) {
      bool ok = true;
      for (std::size_t t = 0; t < n && ok; ++t) ok = a[(s + t) % n] == b[t];
      if (ok) return true;
      ok = true;
      for (std::size_t t = 0; t < n && ok; ++t)
        ok = a[(s + n - t) % n] == flip(b[t]);
      if (ok) return true;
    }
    return false;
  }
};

// One element of the acting group; the active field depends on the backend.
struct GroupElement {
  CellPerm perm;  // explicit backend
  Word word;      // ball backends (deck transformation by left multiplication)
};

// Rotation/reflection classification of Aut_H(R) = Stab_H(R)/Fix_H(R) acting
// on the boundary circle of an embedded 2-cell.
struct CellSymmetry {
  std::uint32_t face = 0;
  // (shift, reflected): shift in raw boundary positions
  std::vector<std::pair<std::uint32_t, bool>> elements;
  std::size_t order() const { return elements.size(); }
  bool has_nontrivial_rotation() const {
    for (auto& [k, refl] : elements)
      if (!refl && k != 0) return true;
    return false;
  }
  bool has_reflection() const {
    for (auto& [k, refl] : elements)
      if (refl) return true;
    return false;
  }
};

class ActionContext {
 public:
  // Explicit backend: a declared ambient automorphism group given by
  // generating cell permutations; the closure is computed exactly.
  static ActionContext explicit_context(const Complex* X,
                                        std::vector<CellPerm> ambient_gens) {
    ActionContext ctx;
    ctx.X_ = X;
    ctx.ball_ = nullptr;
    ctx.ambient_.push_back(CellPerm::identity(*X));
    std::map<std::string, std::size_t> seen{{ctx.ambient_[0].key(), 0}};
    std::vector<CellPerm> gens = ambient_gens;
    for (const CellPerm& g : ambient_gens) gens.push_back(g.inverse());
    std::size_t head = 0;
    while (head < ctx.ambient_.size()) {
      CellPerm cur = ctx.ambient_[head++];
      for (const CellPerm& g : gens) {
        CellPerm next = cur.compose(g);
        auto key = next.key();
        if (!seen.count(key)) {
          seen.emplace(key, ctx.ambient_.size());
          ctx.ambient_.push_back(std::move(next));
          if (ctx.ambient_.size() > 100000)
            throw input_error("ambient automorphism group too large");
        }
      }
    }
    return ctx;
  }

  static ActionContext ball_context(const GroupBall* ball) {
    ActionContext ctx;
    ctx.X_ = &ball->complex();
    ctx.ball_ = ball;
    return ctx;
  }

  bool is_ball() const { return ball_ != nullptr; }
  const Complex& complex() const { return *X_; }
  const GroupBall& ball() const { return *ball_; }
  const std::vector<CellPerm>& ambient() const { return ambient_; }

  // --- element arithmetic ---------------------------------------------------

  GroupElement identity() const {
    GroupElement g;
    if (!is_ball()) g.perm = CellPerm::identity(*X_);
    return g;
  }

  GroupElement element_from_perm(CellPerm p) const {
    GroupElement g;
    g.perm = std::move(p);
    return g;
  }

  GroupElement element_from_word(const Word& w) const {
    GroupElement g;
    g.word = ball_->presentation().alphabet.normalize(w.syls);
    return g;
  }

  GroupElement compose(const GroupElement& a, const GroupElement& b) const {
    GroupElement out;
    if (is_ball())
      out.word = ball_->presentation().alphabet.mul(a.word, b.word);
    else
      out.perm = b.perm.compose(a.perm);  // (a*b).x = a.(b.x)
    return out;
  }

  GroupElement inverse(const GroupElement& a) const {
    GroupElement out;
    if (is_ball())
      out.word = ball_->presentation().alphabet.inverse(a.word);
    else
      out.perm = a.perm.inverse();
    return out;
  }

  bool is_identity(const GroupElement& a) const {
    if (is_ball()) return ball_->presentation().is_trivial(a.word);
    return a.perm.is_identity();
  }

  std::string element_key(const GroupElement& a) const {
    if (!is_ball()) return a.perm.key();
    Word red = ball_->presentation().dehn_reduce(a.word);
    if (auto v = ball_->find_element(red)) return "v" + std::to_string(*v);
    return "w:" + ball_->presentation().alphabet.word_str(red);
  }

  std::string element_str(const GroupElement& a) const {
    if (is_ball()) return ball_->presentation().alphabet.word_str(a.word);
    std::string out = "(";
    for (std::uint32_t v : a.perm.vertex_img) out += std::to_string(v) + " ";
    out += ")";
    return out;
  }

  // --- cell translation (nullopt = escapes the trusted ball) ----------------

  std::optional<std::uint32_t> translate_vertex(const GroupElement& g,
                                                std::uint32_t v) const {
    if (!is_ball()) return g.perm.vertex_img.at(v);
    const Complex& X = *X_;
    if (X.vertex(v).cone_factor < 0) {
      return ball_->find_element(
          ball_->presentation().alphabet.mul(g.word, ball_->word_of(v)));
    }
    std::uint32_t f = ball_->cone_factor(v);
    auto rep_img = ball_->find_element(ball_->presentation().alphabet.mul(
        g.word, ball_->word_of(ball_->cone_rep(v))));
    if (!rep_img) return std::nullopt;
    return ball_->cone_at(*rep_img, f);
  }

  std::optional<std::uint32_t> translate_oriented(const GroupElement& g,
                                                  std::uint32_t oe) const {
    if (!is_ball()) return g.perm.oedge_img.at(oe);
    auto su = translate_vertex(g, X_->source(oe));
    auto tv = translate_vertex(g, X_->target(oe));
    if (!su || !tv) return std::nullopt;
    auto e = ball_->edge_between(*su, *tv);
    if (!e) return std::nullopt;
    return oriented(*e, X_->edge(*e).u != *su);
  }

  std::optional<std::uint32_t> translate_edge(const GroupElement& g,
                                              std::uint32_t e) const {
    auto oe = translate_oriented(g, oriented(e, false));
    if (!oe) return std::nullopt;
    return edge_of(*oe);
  }

  std::optional<std::uint32_t> translate_face(const GroupElement& g,
                                              std::uint32_t f) const {
    if (!is_ball()) return g.perm.face_img.at(f);
    std::vector<std::uint32_t> img;
    for (std::uint32_t oe : X_->face(f).boundary) {
      auto ioe = translate_oriented(g, oe);
      if (!ioe) return std::nullopt;
      img.push_back(*ioe);
    }
    return ball_->find_face_by_boundary(img);
  }

  std::uint32_t translate_vertex_checked(const GroupElement& g, std::uint32_t v) const {
    auto r = translate_vertex(g, v);
    if (!r) throw frontier_error("translate: vertex image escapes the ball");
    return *r;
  }
  std::uint32_t translate_edge_checked(const GroupElement& g, std::uint32_t e) const {
    auto r = translate_edge(g, e);
    if (!r) throw frontier_error("translate: edge image escapes the ball");
    return *r;
  }
  std::uint32_t translate_face_checked(const GroupElement& g, std::uint32_t f) const {
    auto r = translate_face(g, f);
    if (!r) throw frontier_error("translate: face image escapes the ball");
    return *r;
  }

  // --- designated 0-cell stabilizers ----------------------------------------

  // Exact stabilizer generators of a designated 0-cell.  Explicit backend:
  // computed in the declared ambient group.  Coned backend: cone vertices
  // carry the conjugated finite factor; group vertices have trivial
  // stabilizer under the free deck action.
  std::vector<GroupElement> vertex_stabilizer_generators(std::uint32_t v) const {
    std::vector<GroupElement> out;
    if (!is_ball()) {
      for (const CellPerm& h : ambient_)
        if (!h.is_identity() && h.vertex_img[v] == v) out.push_back(element_from_perm(h));
      return out;
    }
    const Complex& X = *X_;
    if (X.vertex(v).cone_factor < 0) return out;  // free deck action
    std::uint32_t f = ball_->cone_factor(v);
    const FactorSpec& fs = ball_->presentation().alphabet.factor(f);
    const Word& rep = ball_->word_of(ball_->cone_rep(v));
    const Alphabet& alph = ball_->presentation().alphabet;
    for (std::uint32_t a = 0; a < fs.order; ++a) {
      if (a == fs.identity) continue;
      Word conj = alph.mul(alph.mul(rep, Word{{Syllable{f, std::int32_t(a)}}}),
                           alph.inverse(rep));
      out.push_back(element_from_word(conj));
    }
    return out;
  }

 private:
  const Complex* X_ = nullptr;
  const GroupBall* ball_ = nullptr;
  std::vector<CellPerm> ambient_;
};

// A subgroup given by generators, designated 0-cell stabilizers, and the
// search depth for bounded enumeration.
struct SubgroupHandle {
  std::vector<GroupElement> generators;          // explicit generators S
  std::vector<std::uint32_t> designated_vertices;  // stabilizers adjoined
  std::uint32_t depth = 4;
};

struct SubgroupBall {
  std::vector<GroupElement> elements;  // identity first, discovery order
  bool exact = false;                  // closure reached before the depth bound
  std::uint32_t depth = 0;
};

// All products of at most `depth` generators (generators, their inverses, and
// designated stabilizer elements), deduplicated by canonical form.  A lower
// bound for H; exact when the closure stabilizes within the bound.
inline SubgroupBall enumerate_subgroup_ball(const ActionContext& ctx,
                                            const SubgroupHandle& H,
                                            std::uint32_t depth) {
  if (depth < 1) throw input_error("subgroup depth must be >= 1");
  for (std::uint32_t v : H.designated_vertices)
    if (v >= ctx.complex().vertex_count())
      throw input_error("designated stabilizer vertex does not exist");
  std::vector<GroupElement> gens;
  for (const GroupElement& g : H.generators) {
    gens.push_back(g);
    gens.push_back(ctx.inverse(g));
  }
  for (std::uint32_t v : H.designated_vertices)
    for (const GroupElement& s : ctx.vertex_stabilizer_generators(v)) {
      gens.push_back(s);
      gens.push_back(ctx.inverse(s));
    }
  SubgroupBall out;
  out.depth = depth;
  out.elements.push_back(ctx.identity());
  std::map<std::string, std::size_t> seen{{ctx.element_key(out.elements[0]), 0}};
  std::vector<std::size_t> level{0};
  bool grew_at_last_level = false;
  for (std::uint32_t d = 0; d < depth && !level.empty(); ++d) {
    std::vector<std::size_t> next;
    for (std::size_t idx : level) {
      GroupElement cur = out.elements[idx];
      for (const GroupElement& g : gens) {
        GroupElement cand = ctx.compose(cur, g);
        std::string key = ctx.element_key(cand);
        if (seen.count(key)) continue;
        seen.emplace(std::move(key), out.elements.size());
        next.push_back(out.elements.size());
        out.elements.push_back(std::move(cand));
      }
    }
    grew_at_last_level = !next.empty();
    level = std::move(next);
  }
  out.exact = !grew_at_last_level || level.empty();
  return out;
}

// Partition of the given 1-cells under the enumerated subgroup action.
// Classes only merge as the depth grows.
struct OrbitPartition {
  std::vector<std::uint32_t> cells;                // the input cells, sorted
  std::vector<std::uint32_t> rep;                  // per input index: rep cell id
  std::map<std::uint32_t, std::uint32_t> rep_of;   // cell id -> rep cell id
  std::size_t class_count = 0;
  std::uint32_t depth = 0;
};

template <typename TranslateFn>
OrbitPartition orbit_partition_generic(const std::vector<std::uint32_t>& cells_in,
                                       const std::vector<GroupElement>& elements,
                                       std::uint32_t depth, TranslateFn&& translate) {
  OrbitPartition out;
  out.depth = depth;
  out.cells = cells_in;
  std::sort(out.cells.begin(), out.cells.end());
  out.cells.erase(std::unique(out.cells.begin(), out.cells.end()), out.cells.end());
  std::map<std::uint32_t, std::size_t> index;
  for (std::size_t i = 0; i < out.cells.size(); ++i) index.emplace(out.cells[i], i);
  UnionFind uf(out.cells.size());
  for (const GroupElement& h : elements) {
    for (std::size_t i = 0; i < out.cells.size(); ++i) {
      auto img = translate(h, out.cells[i]);
      if (!img) continue;
      auto it = index.find(*img);
      if (it != index.end()) uf.merge(i, it->second);
    }
  }
  // representative: least cell id in the class
  std::map<std::size_t, std::uint32_t> least;
  for (std::size_t i = 0; i < out.cells.size(); ++i) {
    std::size_t root = uf.find(i);
    auto it = least.find(root);
    if (it == least.end() || out.cells[i] < it->second) least[root] = out.cells[i];
  }
  out.rep.resize(out.cells.size());
  for (std::size_t i = 0; i < out.cells.size(); ++i) {
    out.rep[i] = least[uf.find(i)];
    out.rep_of[out.cells[i]] = out.rep[i];
  }
  out.class_count = least.size();
  return out;
}

inline OrbitPartition orbit_partition_edges(const ActionContext& ctx,
                                            const std::vector<std::uint32_t>& edges,
                                            const SubgroupBall& hball) {
  return orbit_partition_generic(
      edges, hball.elements, hball.depth,
      [&](const GroupElement& h, std::uint32_t e) { return ctx.translate_edge(h, e); });
}

inline OrbitPartition orbit_partition_vertices(const ActionContext& ctx,
                                               const std::vector<std::uint32_t>& verts,
                                               const SubgroupBall& hball) {
  return orbit_partition_generic(verts, hball.elements, hball.depth,
                                 [&](const GroupElement& h, std::uint32_t v) {
                                   return ctx.translate_vertex(h, v);
                                 });
}

// Induced boundary symmetries of a 2-cell from the stabilizing elements found
// in the subgroup ball.  Requires an embedded boundary cycle.
inline CellSymmetry cell_symmetry(const ActionContext& ctx, const SubgroupBall& hball,
                                  std::uint32_t f) {
  const Complex& X = ctx.complex();
  if (!X.face_boundary_embeds(f))
    throw input_error("cell_symmetry: boundary cycle does not embed");
  const auto& boundary = X.face(f).boundary;
  std::size_t n = boundary.size();
  CellSymmetry sym;
  sym.face = f;
  std::vector<std::pair<std::uint32_t, bool>> found;
  for (const GroupElement& h : hball.elements) {
    auto img_face = ctx.translate_face(h, f);
    if (!img_face || *img_face != f) continue;
    // induced map: image of boundary[t]
    std::vector<std::uint32_t> img;
    bool inside = true;
    for (std::uint32_t oe : boundary) {
      auto ioe = ctx.translate_oriented(h, oe);
      if (!ioe) {
        inside = false;
        break;
      }
      img.push_back(*ioe);
    }
    if (!inside) continue;
    // rotation: img[t] == boundary[t + k]
    for (std::size_t k = 0; k < n; ++k) {
      bool rot = true, refl = true;
      for (std::size_t t = 0; t < n; ++t) {
        if (img[t] != boundary[(t + k) % n]) rot = false;
        if (img[t] != flip(boundary[(k + n - t) % n])) refl = false;
        if (!rot && !refl) break;
      }
      if (rot) found.push_back({std::uint32_t(k), false});
      if (refl) found.push_back({std::uint32_t(k), true});
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  sym.elements = std::move(found);
  return sym;
}

// True iff no enumerated element maps a 1-cell to itself with reversed
// orientation.  Sound for "false"; depth-bounded approximation for "true".
inline bool acts_without_inversions(const ActionContext& ctx, const SubgroupBall& hball) {
  const Complex& X = ctx.complex();
  for (const GroupElement& h : hball.elements) {
    for (std::uint32_t e = 0; e < X.edge_count(); ++e) {
      auto img = ctx.translate_oriented(h, oriented(e, false));
      if (img && *img == oriented(e, true)) return false;
    }
  }
  return true;
}

}  // namespace smc

#endif  // SMC_ACTION_HPP
