// The combinatorial 2-complex data model.  Cells are interned integers;
// 1-cells are stored as inverse pairs (oriented edge id = 2*e or 2*e+1);
// 2-cells carry explicit boundary cycles of oriented edges.  Ball backends
// mark cells whose star may be incomplete; any query that would touch such a
// cell fails loudly instead of undercounting.
#ifndef SMC_COMPLEX_HPP
#define SMC_COMPLEX_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "smc/errors.hpp"
#include "smc/union_find.hpp"

namespace smc {

enum class Backend { Explicit, CayleyBall, ConedOffBall };

inline std::string backend_name(Backend b) {
  switch (b) {
    case Backend::Explicit: return "explicit";
    case Backend::CayleyBall: return "cayley";
    case Backend::ConedOffBall: return "coned";
  }
  return "?";
}

// (2-cell, position in its boundary cycle); projects to the unoriented
// 1-cell under the cycle's oriented edge at that position.
struct Side {
  std::uint32_t face = 0;
  std::uint32_t pos = 0;

  friend bool operator==(const Side&, const Side&) = default;
  friend auto operator<=>(const Side&, const Side&) = default;
};

inline std::uint32_t oriented(std::uint32_t edge, bool rev) {
  return 2 * edge + (rev ? 1u : 0u);
}
inline std::uint32_t edge_of(std::uint32_t oe) { return oe / 2; }
inline bool is_reversed(std::uint32_t oe) { return oe & 1u; }
inline std::uint32_t flip(std::uint32_t oe) { return oe ^ 1u; }

class Complex {
 public:
  struct Vertex {
    std::string name;
    std::uint32_t dist = 0;       // ball backends: raw distance from base
    bool complete = true;          // star fully materialized
    std::int32_t cone_factor = -1; // >= 0 marks a cone vertex of that factor
  };
  struct Edge {
    std::uint32_t u = 0, v = 0;
    bool complete = true;  // all sides at this 1-cell materialized
  };
  struct Face {
    std::vector<std::uint32_t> boundary;  // oriented edge ids, a closed cycle
    bool complete = true;
  };

  Backend backend = Backend::Explicit;
  std::uint32_t length_unit = 1;  // reported 2-cell lengths = raw / unit
  std::uint32_t radius = 0;       // ball backends
  std::uint32_t base = 0;         // ball backends: base 0-cell

  // --- construction (single-threaded), then freeze() ----------------------

  std::uint32_t add_vertex(std::string name) {
    require_mutable();
    vertices_.push_back(Vertex{std::move(name), 0, true, -1});
    return std::uint32_t(vertices_.size() - 1);
  }

  std::uint32_t add_edge(std::uint32_t u, std::uint32_t v) {
    require_mutable();
    if (u >= vertices_.size() || v >= vertices_.size())
      throw input_error("add_edge: dangling endpoint");
    edges_.push_back(Edge{u, v, true});
    return std::uint32_t(edges_.size() - 1);
  }

  std::uint32_t add_face(std::vector<std::uint32_t> boundary) {
    require_mutable();
    if (boundary.empty()) throw input_error("add_face: empty boundary");
    for (std::uint32_t oe : boundary)
      if (edge_of(oe) >= edges_.size())
        throw input_error("add_face: dangling boundary edge");
    for (std::size_t t = 0; t < boundary.size(); ++t) {
      std::uint32_t here = target(boundary[t]);
      std::uint32_t next = source(boundary[(t + 1) % boundary.size()]);
      if (here != next) throw input_error("add_face: boundary cycle not closed");
    }
    faces_.push_back(Face{std::move(boundary), true});
    return std::uint32_t(faces_.size() - 1);
  }

  Vertex& vertex_mut(std::uint32_t v) { require_mutable(); return vertices_.at(v); }
  Edge& edge_mut(std::uint32_t e) { require_mutable(); return edges_.at(e); }
  Face& face_mut(std::uint32_t f) { require_mutable(); return faces_.at(f); }

  void freeze() {
    require_mutable();
    sides_.assign(edges_.size(), {});
    for (std::uint32_t f = 0; f < faces_.size(); ++f)
      for (std::uint32_t t = 0; t < faces_[f].boundary.size(); ++t)
        sides_[edge_of(faces_[f].boundary[t])].push_back(Side{f, t});
    vertex_edges_.assign(vertices_.size(), {});
    for (std::uint32_t e = 0; e < edges_.size(); ++e) {
      vertex_edges_[edges_[e].u].push_back(oriented(e, false));
      if (edges_[e].v != edges_[e].u)
        vertex_edges_[edges_[e].v].push_back(oriented(e, true));
    }
    frozen_ = true;
  }

  bool frozen() const { return frozen_; }

  // --- cell access ---------------------------------------------------------

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t face_count() const { return faces_.size(); }

  const Vertex& vertex(std::uint32_t v) const { return vertices_.at(v); }
  const Edge& edge(std::uint32_t e) const { return edges_.at(e); }
  const Face& face(std::uint32_t f) const { return faces_.at(f); }

  std::uint32_t source(std::uint32_t oe) const {
    const Edge& e = edges_.at(edge_of(oe));
    return is_reversed(oe) ? e.v : e.u;
  }
  std::uint32_t target(std::uint32_t oe) const {
    const Edge& e = edges_.at(edge_of(oe));
    return is_reversed(oe) ? e.u : e.v;
  }

  std::optional<std::uint32_t> find_vertex(const std::string& name) const {
    for (std::uint32_t v = 0; v < vertices_.size(); ++v)
      if (vertices_[v].name == name) return v;
    return std::nullopt;
  }

  // Oriented edges leaving v (both orientations of loops appear once).
  const std::vector<std::uint32_t>& edges_at(std::uint32_t v) const {
    require_frozen();
    return vertex_edges_.at(v);
  }

  // --- sides ---------------------------------------------------------------

  // All sides present at the 1-cell x, in (face, pos) order.  Fails with a
  // frontier error when the star of x may be incomplete.
  const std::vector<Side>& sides_at(std::uint32_t x) const {
    require_frozen();
    if (!edges_.at(x).complete)
      throw frontier_error("sides_at: 1-cell " + std::to_string(x) +
                           " has an incomplete star (enlarge the ball radius)");
    return sides_[x];
  }

  // Unchecked variant for callers that handle incompleteness themselves.
  const std::vector<Side>& sides_at_unchecked(std::uint32_t x) const {
    require_frozen();
    return sides_.at(x);
  }

  // Max side count over complete 1-cells; none when there are no usable cells.
  std::optional<std::size_t> thinness() const {
    require_frozen();
    std::optional<std::size_t> best;
    for (std::uint32_t e = 0; e < edges_.size(); ++e) {
      if (!edges_[e].complete) continue;
      std::size_t n = sides_[e].size();
      if (!best || n > *best) best = n;
    }
    return best;
  }

  // Max boundary length over complete 2-cells, in reported units.
  std::optional<std::size_t> circumscription() const {
    require_frozen();
    std::optional<std::size_t> best;
    for (const Face& f : faces_) {
      if (!f.complete) continue;
      std::size_t n = f.boundary.size() / length_unit;
      if (!best || n > *best) best = n;
    }
    return best;
  }

  // Boundary cycle embeds: all boundary vertices distinct (and edges, which
  // follows).  The assertion behind small-cancellation side counting.
  bool face_boundary_embeds(std::uint32_t f) const {
    const Face& face = faces_.at(f);
    std::vector<std::uint32_t> vs;
    vs.reserve(face.boundary.size());
    for (std::uint32_t oe : face.boundary) vs.push_back(source(oe));
    std::sort(vs.begin(), vs.end());
    return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
  }

  void assert_embedded_boundaries() const {
    require_frozen();
    for (std::uint32_t f = 0; f < faces_.size(); ++f)
      if (!face_boundary_embeds(f))
        throw input_error("2-cell " + std::to_string(f) +
                          " has a non-embedded boundary cycle");
  }

  // --- geometric piece oracle ----------------------------------------------

  // A directed traversal of `len` boundary positions of a face.
  struct Traversal {
    std::uint32_t face = 0;
    std::uint32_t pos = 0;
    int dir = +1;
  };

  std::uint32_t traversal_oedge(const Traversal& t, std::uint32_t k) const {
    const Face& f = faces_.at(t.face);
    std::size_t n = f.boundary.size();
    if (t.dir > 0) return f.boundary[(t.pos + k) % n];
    return flip(f.boundary[(t.pos + n * 4 - k) % n]);
  }

  // Does a label-preserving isomorphism of the two boundary cycles carry
  // traversal a to traversal b?  Extending both walks around their full
  // cycles tests the rotation (same dir) or reflection (opposite dir) at
  // exactly the alignment the pair requires.
  bool traversals_identified(const Traversal& a, const Traversal& b) const {
    std::size_t n = faces_.at(a.face).boundary.size();
    if (faces_.at(b.face).boundary.size() != n) return false;
    for (std::size_t t = 0; t < n; ++t)
      if (traversal_oedge(a, std::uint32_t(t)) != traversal_oedge(b, std::uint32_t(t)))
        return false;
    return true;
  }

  // Is the subpath of dF starting at raw position `pos` of length `len` a
  // piece of the complex (a second, essentially distinct traversal exists)?
  // Requires complete sides along the subpath.
  bool is_piece_subpath(std::uint32_t f, std::uint32_t pos, std::uint32_t len) const {
    require_frozen();
    if (len == 0) return false;
    const Face& face = faces_.at(f);
    std::size_t n = face.boundary.size();
    if (len > n) return false;
    Traversal a{f, pos % std::uint32_t(n), +1};
    std::uint32_t first = edge_of(traversal_oedge(a, 0));
    if (!edges_.at(first).complete)
      throw frontier_error("is_piece_subpath: incomplete star at 1-cell " +
                           std::to_string(first));
    for (const Side& s : sides_[first]) {
      std::size_t m = faces_.at(s.face).boundary.size();
      if (len > m) continue;
      for (int dir : {+1, -1}) {
        Traversal b{s.face, s.pos, dir};
        bool match = true;
        for (std::uint32_t k = 0; k < len && match; ++k) {
          std::uint32_t oe = traversal_oedge(b, k);
          if (oe != traversal_oedge(a, k)) match = false;
          if (match && !edges_.at(edge_of(oe)).complete)
            throw frontier_error("is_piece_subpath: incomplete star along subpath");
        }
        if (!match) continue;
        if (b.face == a.face && b.pos == a.pos && b.dir == a.dir) continue;
        if (!traversals_identified(a, b)) return true;
      }
    }
    return false;
  }

  // Minimal decomposition of the boundary subpath [pos, pos+len) of dF into
  // pieces; nullopt when no decomposition of at most max_pieces exists.
  // piece_cap bounds any single piece (pass a verified bound to turn long
  // inner paths into certain rejections without touching frontier cells);
  // when the answer would depend on incomplete stars, fails loudly.
  std::optional<std::vector<std::uint32_t>> decompose_into_pieces(
      std::uint32_t f, std::uint32_t pos, std::uint32_t len, std::uint32_t max_pieces,
      std::uint32_t piece_cap = std::uint32_t(-1)) const {
    require_frozen();
    if (len == 0) return std::vector<std::uint32_t>{};
    if (std::uint64_t(len) > std::uint64_t(max_pieces) * piece_cap) return std::nullopt;
    const std::uint32_t INF = std::uint32_t(-1);
    std::vector<std::uint32_t> dp(len + 1, INF), choice(len + 1, 0);
    dp[0] = 0;
    bool uncertain = false;
    for (std::uint32_t j = 1; j <= len; ++j) {
      for (std::uint32_t i = 0; i < j; ++i) {
        if (j - i > piece_cap) continue;
        if (dp[i] == INF || dp[i] + 1 > max_pieces) continue;
        if (dp[i] + 1 >= dp[j]) continue;
        bool piece = false;
        try {
          piece = is_piece_subpath(f, pos + i, j - i);
        } catch (const frontier_error&) {
          uncertain = true;
        }
        if (piece) {
          dp[j] = dp[i] + 1;
          choice[j] = i;
        }
      }
    }
    if (dp[len] == INF || dp[len] > max_pieces) {
      if (uncertain)
        throw frontier_error(
            "decompose_into_pieces: incomplete stars along the inner path");
      return std::nullopt;
    }
    std::vector<std::uint32_t> cuts;  // lengths of the pieces in order
    std::uint32_t j = len;
    while (j > 0) {
      cuts.push_back(j - choice[j]);
      j = choice[j];
    }
    std::reverse(cuts.begin(), cuts.end());
    return cuts;
  }

  // Longest piece among boundary subpaths of complete 2-cells.  Exact on
  // finite explicit complexes where every star is complete.
  std::size_t max_geometric_piece() const {
    require_frozen();
    std::size_t best = 0;
    for (std::uint32_t f = 0; f < faces_.size(); ++f) {
      if (!faces_[f].complete) continue;
      std::size_t n = faces_[f].boundary.size();
      for (std::uint32_t pos = 0; pos < n; ++pos) {
        std::uint32_t len = std::uint32_t(best);
        while (len < n && is_piece_subpath(f, pos, len + 1)) ++len;
        best = std::max<std::size_t>(best, len);
      }
    }
    return best;
  }

  // --- export / import ------------------------------------------------------

  std::string export_text() const {
    std::ostringstream out;
    out << "smc-complex v1\n";
    out << "backend " << backend_name(backend) << " unit " << length_unit
        << " radius " << radius << " base " << base << "\n";
    for (std::uint32_t v = 0; v < vertices_.size(); ++v) {
      const Vertex& vx = vertices_[v];
      out << "vertex " << v << ' ' << (vx.name.empty() ? "_" : vx.name) << ' '
          << vx.dist << ' ' << (vx.complete ? 1 : 0) << ' ' << vx.cone_factor
          << "\n";
    }
    for (std::uint32_t e = 0; e < edges_.size(); ++e) {
      const Edge& ed = edges_[e];
      out << "edge " << e << ' ' << ed.u << ' ' << ed.v << ' '
          << (ed.complete ? 1 : 0) << "\n";
    }
    for (std::uint32_t f = 0; f < faces_.size(); ++f) {
      const Face& fc = faces_[f];
      out << "face " << f << ' ' << (fc.complete ? 1 : 0) << ' '
          << fc.boundary.size();
      for (std::uint32_t oe : fc.boundary) {
        std::int64_t signed_id = std::int64_t(edge_of(oe)) + 1;
        out << ' ' << (is_reversed(oe) ? -signed_id : signed_id);
      }
      out << "\n";
    }
    out << "end\n";
    return out.str();
  }

  static Complex import_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Complex X;
    int lineno = 0;
    bool header = false, done = false;
    auto fail = [&](const std::string& m) {
      throw input_error("complex:" + std::to_string(lineno) + ": " + m);
    };
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream ls(line);
      std::string kw;
      if (!(ls >> kw)) continue;
      if (!header) {
        if (kw != "smc-complex") fail("expected 'smc-complex v1' header");
        std::string ver;
        ls >> ver;
        if (ver != "v1") fail("unsupported version " + ver);
        header = true;
        continue;
      }
      if (kw == "backend") {
        std::string b, kw2;
        ls >> b;
        if (b == "explicit") X.backend = Backend::Explicit;
        else if (b == "cayley") X.backend = Backend::CayleyBall;
        else if (b == "coned") X.backend = Backend::ConedOffBall;
        else fail("unknown backend " + b);
        while (ls >> kw2) {
          if (kw2 == "unit") ls >> X.length_unit;
          else if (kw2 == "radius") ls >> X.radius;
          else if (kw2 == "base") ls >> X.base;
          else fail("unknown backend attribute " + kw2);
        }
      } else if (kw == "vertex") {
        std::uint32_t id, dist;
        std::string name;
        int complete, cone;
        if (!(ls >> id >> name >> dist >> complete >> cone)) fail("bad vertex line");
        if (id != X.vertices_.size()) fail("vertex ids must be consecutive");
        X.add_vertex(name == "_" ? "" : name);
        X.vertices_.back().dist = dist;
        X.vertices_.back().complete = complete != 0;
        X.vertices_.back().cone_factor = cone;
      } else if (kw == "edge") {
        std::uint32_t id, u, v;
        int complete;
        if (!(ls >> id >> u >> v >> complete)) fail("bad edge line");
        if (id != X.edges_.size()) fail("edge ids must be consecutive");
        X.add_edge(u, v);
        X.edges_.back().complete = complete != 0;
      } else if (kw == "face") {
        std::uint32_t id, n;
        int complete;
        if (!(ls >> id >> complete >> n)) fail("bad face line");
        if (id != X.faces_.size()) fail("face ids must be consecutive");
        std::vector<std::uint32_t> boundary;
        for (std::uint32_t t = 0; t < n; ++t) {
          std::int64_t s;
          if (!(ls >> s) || s == 0) fail("bad signed edge id");
          std::uint32_t e = std::uint32_t((s < 0 ? -s : s) - 1);
          boundary.push_back(oriented(e, s < 0));
        }
        X.add_face(std::move(boundary));
        X.faces_.back().complete = complete != 0;
      } else if (kw == "end") {
        done = true;
        break;  // trailing sections (automorphisms, jobs) belong to callers
      } else {
        fail("unknown directive " + kw);
      }
    }
    if (!done) throw input_error("complex: missing 'end'");
    X.freeze();
    return X;
  }

  static Complex import_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open complex file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return import_text(ss.str());
  }

 private:
  void require_mutable() const {
    if (frozen_) throw input_error("complex is frozen");
  }
  void require_frozen() const {
    if (!frozen_) throw input_error("complex is not frozen yet");
  }

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  std::vector<std::vector<Side>> sides_;
  std::vector<std::vector<std::uint32_t>> vertex_edges_;
  bool frozen_ = false;
};

// Cell-id sets closed under the face relation, referencing a parent Complex.
class Subcomplex {
 public:
  Subcomplex() = default;
  explicit Subcomplex(const Complex* parent)
      : parent_(parent),
        has_v_(parent->vertex_count(), 0),
        has_e_(parent->edge_count(), 0),
        has_f_(parent->face_count(), 0) {}

  const Complex& parent() const { return *parent_; }

  bool has_vertex(std::uint32_t v) const { return has_v_[v] != 0; }
  bool has_edge(std::uint32_t e) const { return has_e_[e] != 0; }
  bool has_face(std::uint32_t f) const { return has_f_[f] != 0; }

  void add_vertex(std::uint32_t v) { has_v_.at(v) = 1; }

  void add_edge(std::uint32_t e) {
    has_e_.at(e) = 1;
    has_v_.at(parent_->edge(e).u) = 1;
    has_v_.at(parent_->edge(e).v) = 1;
  }

  void add_face(std::uint32_t f) {
    has_f_.at(f) = 1;
    for (std::uint32_t oe : parent_->face(f).boundary) add_edge(edge_of(oe));
  }

  void add_all(const Subcomplex& other) {
    for (std::uint32_t v = 0; v < has_v_.size(); ++v) has_v_[v] |= other.has_v_[v];
    for (std::uint32_t e = 0; e < has_e_.size(); ++e) has_e_[e] |= other.has_e_[e];
    for (std::uint32_t f = 0; f < has_f_.size(); ++f) has_f_[f] |= other.has_f_[f];
  }

  std::vector<std::uint32_t> vertices() const { return collect(has_v_); }
  std::vector<std::uint32_t> edges() const { return collect(has_e_); }
  std::vector<std::uint32_t> faces() const { return collect(has_f_); }

  std::size_t vertex_count() const { return count(has_v_); }
  std::size_t edge_count() const { return count(has_e_); }
  std::size_t face_count() const { return count(has_f_); }

  bool face_closed() const {
    for (std::uint32_t f = 0; f < has_f_.size(); ++f) {
      if (!has_f_[f]) continue;
      for (std::uint32_t oe : parent_->face(f).boundary)
        if (!has_e_[edge_of(oe)]) return false;
    }
    for (std::uint32_t e = 0; e < has_e_.size(); ++e) {
      if (!has_e_[e]) continue;
      if (!has_v_[parent_->edge(e).u] || !has_v_[parent_->edge(e).v]) return false;
    }
    return true;
  }

  // Connectivity of the subcomplex (through edges; 2-cells connect via their
  // boundaries, which are already included by face closure).
  bool connected() const {
    std::vector<std::uint32_t> vs = vertices();
    if (vs.empty()) return true;
    UnionFind uf(parent_->vertex_count());
    for (std::uint32_t e = 0; e < has_e_.size(); ++e)
      if (has_e_[e]) uf.merge(parent_->edge(e).u, parent_->edge(e).v);
    for (std::uint32_t v : vs)
      if (!uf.connected(vs[0], v)) return false;
    return true;
  }

  friend bool operator==(const Subcomplex& a, const Subcomplex& b) {
    return a.has_v_ == b.has_v_ && a.has_e_ == b.has_e_ && a.has_f_ == b.has_f_;
  }

  // 1-skeleton set equality.
  static bool same_one_skeleton(const Subcomplex& a, const Subcomplex& b) {
    return a.has_v_ == b.has_v_ && a.has_e_ == b.has_e_;
  }

 private:
  static std::vector<std::uint32_t> collect(const std::vector<std::uint8_t>& bits) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < bits.size(); ++i)
      if (bits[i]) out.push_back(i);
    return out;
  }
  static std::size_t count(const std::vector<std::uint8_t>& bits) {
    std::size_t n = 0;
    for (std::uint8_t b : bits) n += b;
    return n;
  }

  const Complex* parent_ = nullptr;
  std::vector<std::uint8_t> has_v_, has_e_, has_f_;
};

// Assembles a finite explicit complex from named cells and attachment lists.
struct ExplicitBuilder {
  Complex X;
  std::map<std::string, std::uint32_t> vertex_ids;

  ExplicitBuilder() { X.backend = Backend::Explicit; }

  std::uint32_t vertex(const std::string& name) {
    auto it = vertex_ids.find(name);
    if (it != vertex_ids.end()) return it->second;
    std::uint32_t id = X.add_vertex(name);
    vertex_ids.emplace(name, id);
    return id;
  }

  std::uint32_t edge(const std::string& u, const std::string& v) {
    return X.add_edge(vertex(u), vertex(v));
  }

  // Face from signed edge ids (1-based, negative = reversed).
  std::uint32_t face(const std::vector<std::int64_t>& signed_edges) {
    std::vector<std::uint32_t> boundary;
    for (std::int64_t s : signed_edges) {
      if (s == 0) throw input_error("face: zero edge id");
      boundary.push_back(oriented(std::uint32_t((s < 0 ? -s : s) - 1), s < 0));
    }
    return X.add_face(std::move(boundary));
  }

  Complex finish() {
    X.freeze();
    return std::move(X);
  }
};

}  // namespace smc

#endif  // SMC_COMPLEX_HPP
