// Disc diagrams as first-class objects: brute-force van Kampen filling at
// tiny scale (the oracle behind the word problem and Greendlinger checks) and
// the structural classifiers: spurs, i-shells, arcs, cut trees, ladders.
//
// Diagrams are combinatorial maps: darts with twin pairing and a rotation
// (next dart counterclockwise at the origin vertex).  Faces are the orbits of
// d -> next(twin(d)); exactly one orbit is the outer face and equals the
// boundary cycle.  Planarity is certified by Euler's formula, not assumed.
#ifndef SMC_DIAGRAMS_HPP
#define SMC_DIAGRAMS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smc/presentation.hpp"
#include "smc/union_find.hpp"

namespace smc {

struct DiscDiagram {
  struct Dart {
    std::uint32_t origin = 0;
    std::uint32_t twin = 0;
    std::uint32_t next = 0;  // next outgoing dart ccw at origin
    Letter label;
  };

  std::vector<Dart> darts;
  std::uint32_t vertex_count = 1;
  std::uint32_t base_vertex = 0;
  std::vector<std::uint32_t> boundary;                 // outer walk, basepoint first
  std::vector<std::vector<std::uint32_t>> cell_walks;  // interior face walks
  std::vector<std::uint32_t> cell_relator;

  std::size_t area() const { return cell_walks.size(); }
  std::size_t edge_count() const { return darts.size() / 2; }

  std::uint32_t target(std::uint32_t d) const { return darts[darts[d].twin].origin; }

  std::vector<Letter> boundary_word() const {
    std::vector<Letter> out;
    for (std::uint32_t d : boundary) out.push_back(darts[d].label);
    return out;
  }

  // face successor: the next dart of the face lying to the left
  std::uint32_t face_succ(std::uint32_t d) const { return darts[darts[d].twin].next; }

  // Orbits of the face-successor map.
  std::vector<std::vector<std::uint32_t>> trace_faces() const {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<bool> seen(darts.size(), false);
    for (std::uint32_t d = 0; d < darts.size(); ++d) {
      if (seen[d]) continue;
      std::vector<std::uint32_t> walk;
      std::uint32_t cur = d;
      while (!seen[cur]) {
        seen[cur] = true;
        walk.push_back(cur);
        cur = face_succ(cur);
      }
      out.push_back(std::move(walk));
    }
    return out;
  }

  // Planarity certificate: the rotation system induces exactly the stored
  // cells plus one outer face, the diagram is connected, and Euler's formula
  // for the sphere holds.
  void validate() const {
    if (darts.size() % 2) throw input_error("diagram: dangling dart");
    for (std::uint32_t d = 0; d < darts.size(); ++d) {
      if (darts[darts[d].twin].twin != d) throw input_error("diagram: twin mismatch");
      if (darts[darts[d].next].origin != darts[d].origin)
        throw input_error("diagram: rotation leaves the vertex");
    }
    if (darts.empty()) {
      if (vertex_count != 1 || !boundary.empty() || !cell_walks.empty())
        throw input_error("diagram: empty diagram must be a single 0-cell");
      return;
    }
    // connectivity over vertices
    UnionFind uf(vertex_count);
    for (std::uint32_t d = 0; d < darts.size(); ++d) uf.merge(darts[d].origin, target(d));
    if (uf.count() != 1) throw input_error("diagram: not connected");
    // the boundary must be a closed walk
    for (std::size_t i = 0; i < boundary.size(); ++i)
      if (target(boundary[i]) != darts[boundary[(i + 1) % boundary.size()]].origin)
        throw input_error("diagram: boundary walk not closed");
    auto faces = trace_faces();
    if (faces.size() != cell_walks.size() + 1)
      throw input_error("diagram: face count mismatch (rotation system broken)");
    // match the outer orbit against the boundary, cells against cell walks
    auto key = [](std::vector<std::uint32_t> w) {
      std::rotate(w.begin(), std::min_element(w.begin(), w.end()), w.end());
      return w;
    };
    std::map<std::vector<std::uint32_t>, int> want;
    want[key(boundary)] += 1;
    for (const auto& c : cell_walks) want[key(c)] += 1;
    for (const auto& f : faces) {
      auto it = want.find(key(f));
      if (it == want.end() || it->second == 0)
        throw input_error("diagram: traced face does not match stored walks");
      it->second -= 1;
    }
    // Euler characteristic of the sphere: V - E + F (with the outer face) = 2
    std::ptrdiff_t euler = std::ptrdiff_t(vertex_count) -
                           std::ptrdiff_t(edge_count()) +
                           std::ptrdiff_t(cell_walks.size() + 1);
    if (euler != 2) throw input_error("diagram: Euler characteristic violated");
  }

  // Export in the cell-list format family: vertices, darts with twins and
  // rotation (the combinatorial embedding), boundary, cell walks.
  std::string export_text() const {
    std::ostringstream out;
    out << "smc-diagram v1\n";
    out << "vertices " << vertex_count << " base " << base_vertex << "\n";
    for (std::uint32_t d = 0; d < darts.size(); ++d)
      out << "dart " << d << ' ' << darts[d].origin << ' ' << darts[d].twin << ' '
          << darts[d].next << ' ' << darts[d].label.factor << ' '
          << darts[d].label.value << "\n";
    out << "boundary";
    for (std::uint32_t d : boundary) out << ' ' << d;
    out << "\n";
    for (std::size_t c = 0; c < cell_walks.size(); ++c) {
      out << "cell " << cell_relator[c];
      for (std::uint32_t d : cell_walks[c]) out << ' ' << d;
      out << "\n";
    }
    out << "end\n";
    return out.str();
  }
};

// Builds diagrams by replaying construction moves: spur insertion and cell
// attachment along a boundary segment.
class DiagramBuilder {
 public:
  explicit DiagramBuilder(const Alphabet* alph) : alph_(alph) {}

  const DiscDiagram& diagram() const { return D_; }
  DiscDiagram take() { return std::move(D_); }

  // Splices nd into the rotation immediately after `after`.
  void rotation_insert_after(std::uint32_t after, std::uint32_t nd) {
    D_.darts[nd].next = D_.darts[after].next;
    D_.darts[after].next = nd;
  }

  // Inserts a spur (edge to a fresh leaf and back) at boundary position pos:
  // the boundary gains darts reading l, l^-1 there.
  void insert_spur(std::size_t pos, Letter l) {
    std::uint32_t v;
    if (D_.boundary.empty())
      v = D_.base_vertex;
    else if (pos < D_.boundary.size())
      v = D_.darts[D_.boundary[pos]].origin;
    else
      v = D_.target(D_.boundary.back());
    std::uint32_t leaf = D_.vertex_count++;
    std::uint32_t d = new_dart(v, l);
    std::uint32_t dt = new_dart(leaf, alph_->inverse_letter(l));
    tie_twins(d, dt);
    D_.darts[dt].next = dt;  // rotation at the leaf
    if (D_.boundary.empty()) {
      D_.darts[d].next = d;
    } else {
      std::uint32_t pre = D_.boundary[(pos + D_.boundary.size() - 1) % D_.boundary.size()];
      rotation_insert_after(D_.darts[pre].twin, d);
    }
    D_.boundary.insert(D_.boundary.begin() + std::ptrdiff_t(pos), {d, dt});
  }

  // Attaches a relator cell along boundary[pos, pos+m); the cell's oriented
  // reading is `cell_letters` = u . rest with |u| = k new darts and |rest| = m
  // glued to the existing segment (which must spell rest^-1).
  void attach_cell(std::size_t pos, std::size_t m,
                   const std::vector<Letter>& cell_letters, std::uint32_t relator) {
    std::size_t n = cell_letters.size();
    if (m > n || n == 0 || m > D_.boundary.size())
      throw input_error("attach_cell: bad segment");
    std::size_t k = n - m;
    if (k == 0) throw input_error("attach_cell: k = 0 pocket fills are not supported");
    if (pos + m > D_.boundary.size())
      throw input_error("attach_cell: segment wraps the basepoint");
    // verify the glued segment spells rest^-1
    for (std::size_t j = 0; j < m; ++j) {
      Letter want = alph_->inverse_letter(cell_letters[n - 1 - j]);
      if (!(D_.darts[D_.boundary[pos + j]].label == want))
        throw input_error("attach_cell: segment does not spell the relator part");
    }
    std::uint32_t A;
    if (D_.boundary.empty())
      A = D_.base_vertex;
    else if (pos < D_.boundary.size())
      A = D_.darts[D_.boundary[pos]].origin;
    else
      A = D_.target(D_.boundary.back());
    std::uint32_t B = m > 0 ? D_.target(D_.boundary[pos + m - 1]) : A;
    // new u-darts A -> x1 -> ... -> B
    std::vector<std::uint32_t> u(k), ut(k);
    std::uint32_t prev_vertex = A;
    for (std::size_t j = 0; j < k; ++j) {
      std::uint32_t nxt = (j + 1 == k) ? B : D_.vertex_count++;
      u[j] = new_dart(prev_vertex, cell_letters[j]);
      ut[j] = new_dart(nxt, alph_->inverse_letter(cell_letters[j]));
      tie_twins(u[j], ut[j]);
      prev_vertex = nxt;
    }
    // rotations at the interior vertices of the u-path
    for (std::size_t j = 0; j + 1 < k; ++j) {
      // at vertex between u[j] and u[j+1]: [ut[j], u[j+1]]
      D_.darts[ut[j]].next = u[j + 1];
      D_.darts[u[j + 1]].next = ut[j];
    }
    // splice at A: next(u[0]) = sigma0 (cell side); outer pre -> u[0]
    std::uint32_t sigma0 =
        m > 0 ? D_.boundary[pos]
              : std::uint32_t(-1);
    if (D_.boundary.empty()) {
      // first cell: balloon at the base vertex (k darts, m == 0 impossible
      // here since m <= boundary size == 0 -> m == 0, k == n)
      // rotation at A: u[0] -> ut[k-1] -> u[0]
      D_.darts[u[0]].next = (k > 1) ? ut[k - 1] : u[0];
      if (k > 1) D_.darts[ut[k - 1]].next = u[0];
      // single-dart loops need their own closure
      if (k == 1) {
        // loop edge a -> a at A: rotation [u0, ut0]
        D_.darts[u[0]].next = ut[0];
        D_.darts[ut[0]].next = u[0];
      }
    } else {
      std::uint32_t pre =
          D_.boundary[(pos + D_.boundary.size() - 1) % D_.boundary.size()];
      if (m > 0) {
        // at A: insert u0 right after twin(pre) (outer turns into u0); the
        // cell closes via next(u0) = sigma0.
        D_.darts[u[0]].next = sigma0;
        D_.darts[D_.darts[pre].twin].next = u[0];
        // at B: insert twin(u_{k-1}) right after twin(sigma_{m-1}), taking
        // over its old next (the outer continuation).
        std::uint32_t sig_last_twin = D_.darts[D_.boundary[pos + m - 1]].twin;
        rotation_insert_after(sig_last_twin, ut[k - 1]);
      } else {
        // balloon at an existing boundary vertex (A == B)
        std::uint32_t pre_twin = D_.darts[pre].twin;
        std::uint32_t old = D_.darts[pre_twin].next;
        D_.darts[pre_twin].next = u[0];
        D_.darts[u[0]].next = ut[k - 1];
        D_.darts[ut[k - 1]].next = old;
      }
    }
    // stored cell walk: sigma_0..sigma_{m-1}, twin(u_{k-1}), ..., twin(u_0);
    // for balloons the walk is just the twins reversed
    std::vector<std::uint32_t> walk;
    for (std::size_t j = 0; j < m; ++j) walk.push_back(D_.boundary[pos + j]);
    for (std::size_t j = k; j > 0; --j) walk.push_back(ut[j - 1]);
    D_.cell_walks.push_back(std::move(walk));
    D_.cell_relator.push_back(relator);
    // new outer boundary: replace [pos, pos+m) with the u darts
    std::vector<std::uint32_t> nb(D_.boundary.begin(),
                                  D_.boundary.begin() + std::ptrdiff_t(pos));
    nb.insert(nb.end(), u.begin(), u.end());
    nb.insert(nb.end(), D_.boundary.begin() + std::ptrdiff_t(pos + m),
              D_.boundary.end());
    D_.boundary = std::move(nb);
  }

 private:
  std::uint32_t new_dart(std::uint32_t origin, Letter l) {
    D_.darts.push_back(DiscDiagram::Dart{origin, 0, 0, l});
    return std::uint32_t(D_.darts.size() - 1);
  }
  void tie_twins(std::uint32_t a, std::uint32_t b) {
    D_.darts[a].twin = b;
    D_.darts[b].twin = a;
  }

  const Alphabet* alph_;
  DiscDiagram D_;
};

// --- filling -----------------------------------------------------------------

struct FillMove {
  bool cancel = false;
  std::uint32_t pos = 0;
  // relator application data (cancel == false)
  std::uint32_t rel = 0, start = 0, k = 0;
  bool rev = false;
  // cancelled letter (cancel == true)
  Letter letter;
};

enum class FillStatus { Found, Nontrivial, CapExceeded };

struct FillResult {
  FillStatus status = FillStatus::CapExceeded;
  std::optional<DiscDiagram> diagram;
  std::size_t area = 0;
};

namespace detail_fill {

inline void free_reduce_record(const Alphabet& alph, std::vector<Letter>& w,
                               std::vector<FillMove>* log) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (alph.inverse_letter(w[i]) == w[i + 1]) {
        if (log) {
          FillMove m;
          m.cancel = true;
          m.pos = std::uint32_t(i);
          m.letter = w[i];
          log->push_back(m);
        }
        w.erase(w.begin() + std::ptrdiff_t(i), w.begin() + std::ptrdiff_t(i + 2));
        changed = true;
        break;
      }
    }
  }
}

inline std::string state_key(const std::vector<Letter>& w) {
  std::string s;
  for (const Letter& l : w) {
    s += std::to_string(l.factor);
    s += ':';
    s += std::to_string(l.value);
    s += ',';
  }
  return s;
}

}  // namespace detail_fill

// Iterative-deepening exhaustive search for a minimal-area disc diagram with
// boundary label w.  Moves peel one boundary-adjacent cell: replace an exact
// occurrence of a relator subpath u (|u| >= 1; for verified C'(1/6)
// presentations minimality is preserved with |u| > |relator|/2, which is used
// as a fast mode) by the inverse of its complement.  Free cancellations cost
// nothing and are recorded for the planar reconstruction.
class Filler {
 public:
  Filler(const Presentation& pres, bool restrict_to_greendlinger)
      : pres_(&pres), restricted_(restrict_to_greendlinger) {
    if (restricted_ && !pres.verified_c6())
      throw hypothesis_error("fill: Greendlinger mode requires a C'(1/6) presentation");
  }

  FillResult fill(const Word& w, std::size_t area_cap) {
    const Alphabet& alph = pres_->alphabet;
    std::vector<Letter> start = alph.letters(alph.normalize(w.syls));
    std::vector<FillMove> prefix_log;
    detail_fill::free_reduce_record(alph, start, &prefix_log);
    if (restricted_ && !pres_->is_trivial(alph.word_from_letters(start))) {
      FillResult out;
      out.status = FillStatus::Nontrivial;
      return out;
    }
    for (std::size_t budget = 0; budget <= area_cap; ++budget) {
      fail_memo_.clear();
      std::vector<FillMove> log = prefix_log;
      if (search(start, budget, log)) {
        FillResult out;
        out.status = FillStatus::Found;
        out.area = count_applications(log);
        out.diagram = reconstruct(alph.letters(alph.normalize(w.syls)), log);
        return out;
      }
    }
    FillResult out;
    out.status = FillStatus::CapExceeded;
    return out;
  }

  // Reverse replay: rebuild the planar diagram from the accepted move log.
  DiscDiagram reconstruct(std::vector<Letter> w0, const std::vector<FillMove>& log) {
    const Alphabet& alph = pres_->alphabet;
    const PieceTable& pt = pres_->pieces();
    DiagramBuilder b(&alph);
    for (std::size_t i = log.size(); i > 0; --i) {
      const FillMove& m = log[i - 1];
      if (m.cancel) {
        b.insert_spur(m.pos, m.letter);
      } else {
        std::size_t n = pt.relator(m.rel).size();
        Occurrence full{m.rel, m.start, std::uint32_t(n), m.rev};
        std::vector<Letter> cell = occurrence_word(alph, pt.relator(m.rel), full);
        b.attach_cell(m.pos, n - m.k, cell, m.rel);
      }
    }
    DiscDiagram D = b.take();
    // the reconstruction must spell the input exactly
    if (D.boundary_word() != w0)
      throw input_error("fill: reconstruction does not spell the boundary word");
    D.validate();
    return D;
  }

 private:
  static std::size_t count_applications(const std::vector<FillMove>& log) {
    std::size_t n = 0;
    for (const FillMove& m : log)
      if (!m.cancel) ++n;
    return n;
  }

  bool search(const std::vector<Letter>& w, std::size_t budget,
              std::vector<FillMove>& log) {
    if (w.empty()) return true;
    if (budget == 0) return false;
    std::string key = detail_fill::state_key(w);
    auto it = fail_memo_.find(key);
    if (it != fail_memo_.end() && it->second >= budget) return false;
    const Alphabet& alph = pres_->alphabet;
    const PieceTable& pt = pres_->pieces();
    for (std::uint32_t rel = 0; rel < pres_->relators.size(); ++rel) {
      std::size_t n = pt.relator(rel).size();
      std::size_t kmin = restricted_ ? n / 2 + 1 : 1;
      for (std::uint32_t pos = 0; pos < w.size(); ++pos) {
        for (bool rev : {false, true}) {
          for (std::uint32_t s = 0; s < n; ++s) {
            // maximal exact match of the relator reading at (s, rev) from pos
            std::size_t kmax = 0;
            while (kmax < n && pos + kmax < w.size()) {
              Occurrence occ{rel, s, std::uint32_t(kmax + 1), rev};
              std::vector<Letter> u = occurrence_word(alph, pt.relator(rel), occ);
              if (!(u.back() == w[pos + kmax])) break;
              ++kmax;
            }
            for (std::size_t k = kmax; k >= kmin && k >= 1; --k) {
              std::vector<Letter> next(w.begin(), w.begin() + pos);
              Occurrence restocc{
                  rel,
                  rev ? std::uint32_t(detail::mod(std::ptrdiff_t(s) - std::ptrdiff_t(k), n))
                      : std::uint32_t((s + k) % n),
                  std::uint32_t(n - k), rev};
              std::vector<Letter> rest = occurrence_word(alph, pt.relator(rel), restocc);
              for (std::size_t t = rest.size(); t > 0; --t)
                next.push_back(alph.inverse_letter(rest[t - 1]));
              next.insert(next.end(), w.begin() + std::ptrdiff_t(pos + k), w.end());
              std::vector<FillMove> sub;
              FillMove m;
              m.cancel = false;
              m.pos = pos;
              m.rel = rel;
              m.start = s;
              m.k = std::uint32_t(k);
              m.rev = rev;
              sub.push_back(m);
              detail_fill::free_reduce_record(alph, next, &sub);
              std::size_t before = log.size();
              log.insert(log.end(), sub.begin(), sub.end());
              if (search(next, budget - 1, log)) return true;
              log.resize(before);
              if (k == 1) break;
            }
          }
        }
      }
    }
    auto& slot = fail_memo_[key];
    slot = std::max(slot, budget);
    return false;
  }

  const Presentation* pres_;
  bool restricted_;
  std::map<std::string, std::size_t> fail_memo_;
};

inline FillResult fill(const Presentation& pres, const Word& w, std::size_t area_cap,
                       bool greendlinger_mode = true) {
  bool restricted = greendlinger_mode && pres.verified_c6();
  Filler f(pres, restricted);
  return f.fill(w, area_cap);
}

}  // namespace smc

#endif  // SMC_DIAGRAMS_HPP
