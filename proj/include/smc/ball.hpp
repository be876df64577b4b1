// Ball backends: finite approximations of the Cayley complex of a verified
// presentation (one 2-cell per relator cycle) and of the coned-off Cayley
// complex of a one-relator product.  Vertices are interned by canonical
// (shortlex-first geodesic) spellings; equality of spellings is resolved by
// single-relator rewriting, which is complete below the area-2 diagram
// scale, with a Dehn-oracle fallback beyond it.
#ifndef SMC_BALL_HPP
#define SMC_BALL_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smc/complex.hpp"
#include "smc/presentation.hpp"

namespace smc {

class GroupBall {
 public:
  // --- construction ---------------------------------------------------------

  // Cayley ball of a free-group presentation: vertices are group elements at
  // distance <= radius (letter metric), edges are generator steps, one 2-cell
  // per relator cycle fully inside the ball.
  static GroupBall build_cayley(const Presentation& pres, std::uint32_t radius) {
    if (!pres.is_free_group())
      throw input_error("build_cayley: presentation has non-free factors");
    pres.require_c6("build_cayley");
    GroupBall ball(pres, Backend::CayleyBall, radius);
    ball.build();
    return ball;
  }

  // Coned-off Cayley ball of A * B / <<r^m>>: group vertices plus one cone
  // vertex per met coset of each finite factor; 1-cells join an element to
  // its cone vertices; one 2-cell per r^m cycle.  Boundary lengths are
  // reported in syllable units (one syllable crosses two cone edges).
  static GroupBall build_coned(const Presentation& pres, std::uint32_t radius) {
    if (pres.alphabet.factor_count() != 2 ||
        !std::all_of(pres.alphabet.factors().begin(), pres.alphabet.factors().end(),
                     [](const FactorSpec& f) {
                       return f.kind == FactorSpec::Kind::FiniteGroup;
                     }))
      throw input_error("build_coned: need exactly two finite factors");
    if (pres.relators.size() != 1)
      throw input_error("build_coned: need exactly one relator r^m");
    const Relator& rel = pres.relators[0];
    if (rel.power < 6)
      throw hypothesis_error("build_coned: power m >= 6 required, got " +
                             std::to_string(rel.power));
    if (rel.root.syllable_count() < 2)
      throw input_error("build_coned: |r| >= 2 required");
    if (rel.root_is_proper_power(pres.alphabet))
      throw input_error("build_coned: r must not be a proper power");
    pres.require_c6("build_coned");
    GroupBall ball(pres, Backend::ConedOffBall, radius);
    ball.build();
    return ball;
  }

  // --- access ----------------------------------------------------------------

  const Complex& complex() const { return X_; }
  const Presentation& presentation() const { return *pres_; }
  std::uint32_t radius() const { return radius_; }

  bool is_group_vertex(std::uint32_t v) const { return X_.vertex(v).cone_factor < 0; }

  const Word& word_of(std::uint32_t v) const {
    if (!is_group_vertex(v)) throw input_error("word_of: cone vertex");
    return words_[v];
  }

  // Group vertex of an arbitrary word, when the element lies in the ball.
  std::optional<std::uint32_t> find_element(const Word& w) const {
    Word nf = pres_->alphabet.normalize(w.syls);
    std::string key = pres_->alphabet.word_str(nf);
    auto cached = lookup_cache_.find(key);
    if (cached != lookup_cache_.end()) return cached->second;
    std::optional<std::uint32_t> out = resolve(nf);
    lookup_cache_.emplace(std::move(key), out);
    return out;
  }

  std::optional<std::uint32_t> cone_at(std::uint32_t group_v, std::uint32_t factor) const {
    auto it = cone_id_.find({group_v, factor});
    if (it == cone_id_.end()) return std::nullopt;
    return it->second;
  }

  // Representative group vertex of the cone's coset (least vertex id).
  std::uint32_t cone_rep(std::uint32_t cone_v) const { return cone_info_.at(cone_v).rep; }
  std::uint32_t cone_factor(std::uint32_t cone_v) const {
    return std::uint32_t(X_.vertex(cone_v).cone_factor);
  }
  const std::vector<std::uint32_t>& cone_members(std::uint32_t cone_v) const {
    return cone_info_.at(cone_v).members;
  }

  std::optional<std::uint32_t> edge_between(std::uint32_t u, std::uint32_t v) const {
    auto it = edge_by_pair_.find(ordered(u, v));
    if (it == edge_by_pair_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::uint32_t> find_face_by_boundary(
      const std::vector<std::uint32_t>& oriented_edges) const {
    auto it = face_by_key_.find(cycle_key(oriented_edges));
    if (it == face_by_key_.end()) return std::nullopt;
    return it->second;
  }

  std::uint32_t face_relator(std::uint32_t f) const { return face_relator_.at(f); }

 private:
  GroupBall(const Presentation& pres, Backend backend, std::uint32_t radius)
      : pres_(&pres), radius_(radius) {
    X_.backend = backend;
    X_.length_unit = backend == Backend::ConedOffBall ? 2 : 1;
    X_.radius = radius;
    min_rel_ = std::size_t(-1);
    max_rel_ = 0;
    for (std::size_t i = 0; i < pres.relators.size(); ++i) {
      std::size_t n = pres.pieces().relator_length(i);
      min_rel_ = std::min(min_rel_, n);
      max_rel_ = std::max(max_rel_, n);
    }
    max_piece_ = pres.pieces().max_piece_overall();
  }

  static std::pair<std::uint32_t, std::uint32_t> ordered(std::uint32_t a,
                                                         std::uint32_t b) {
    return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
  }

  std::string name_of(const Word& w) const {
    if (w.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < w.syls.size(); ++i) {
      if (i) out += '.';
      out += pres_->alphabet.syllable_str(w.syls[i]);
    }
    return out;
  }

  // Canonical form of an oriented-edge cycle: lexicographic minimum over all
  // rotations of the cycle and of the reversed cycle.  The key identifies the
  // underlying closed cycle regardless of basepoint and direction.
  static std::vector<std::uint32_t> canonical_cycle(
      const std::vector<std::uint32_t>& cyc) {
    std::size_t n = cyc.size();
    std::vector<std::uint32_t> best;
    auto consider = [&](const std::vector<std::uint32_t>& seq) {
      for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::uint32_t> rot(n);
        for (std::size_t t = 0; t < n; ++t) rot[t] = seq[(s + t) % n];
        if (best.empty() || rot < best) best = std::move(rot);
      }
    };
    consider(cyc);
    std::vector<std::uint32_t> rev(n);
    for (std::size_t t = 0; t < n; ++t) rev[t] = flip(cyc[n - 1 - t]);
    consider(rev);
    return best;
  }

  static std::string cycle_key(const std::vector<std::uint32_t>& cyc) {
    std::string key;
    for (std::uint32_t x : canonical_cycle(cyc)) {
      key += std::to_string(x);
      key += ',';
    }
    return key;
  }

  // --- vertex interning -----------------------------------------------------

  // Letter-length of the ball in the group metric (letters; one syllable per
  // letter for finite factors).
  std::uint32_t metric_radius() const {
    return X_.backend == Backend::ConedOffBall ? radius_ / 2 : radius_;
  }

  // Single-relator alias dedup is complete while 2 * radius stays below the
  // boundary length of every area-2 reduced diagram.
  bool alias_dedup_sound() const {
    return 2 * std::size_t(metric_radius()) + 2 <= 2 * min_rel_ - 2 * max_piece_;
  }

  // All no-longer respellings of w reachable by one relator application at
  // any position (with partially absorbed finite boundary letters), plus w
  // itself.  Two geodesics name the same element iff they are joined by a
  // chain of such moves; below the area-2 diagram scale one move suffices.
  std::vector<Word> one_relator_respellings(const Word& w) const {
    const Alphabet& alph = pres_->alphabet;
    const PieceTable& pt = pres_->pieces();
    std::vector<Letter> ls = alph.letters(w);
    std::vector<Word> out{alph.normalize(w.syls)};
    for (std::uint32_t rel = 0; rel < pres_->relators.size(); ++rel) {
      std::size_t n = pt.relator(rel).size();
      for (bool rev : {false, true}) {
        for (std::uint32_t s = 0; s < n; ++s) {
          auto u = [&](std::size_t t) -> Letter {
            const auto& rl = pt.relator(rel).letters;
            if (!rev) return rl[(s + t) % n];
            return alph.inverse_letter(
                rl[detail::mod(std::ptrdiff_t(s) - std::ptrdiff_t(t), n)]);
          };
          for (std::size_t p = 0; p < ls.size(); ++p) {
            for (std::size_t k = 1; k + p <= ls.size(); ++k) {
              if (k > n) break;
              if (2 * k + 2 < n) continue;  // replacement would lengthen
              for (bool lpart : {false, true}) {
                for (bool rpart : {false, true}) {
                  if (lpart && rpart && k == 1) continue;
                  bool ok = true;
                  Letter lres{}, rres{};
                  for (std::size_t t = 0; t < k && ok; ++t) {
                    Letter want = u(t);
                    const Letter& have = ls[p + t];
                    bool bl = (t == 0) && lpart;
                    bool br = (t == k - 1) && rpart;
                    if (bl || br) {
                      if (have.factor != want.factor ||
                          alph.factor(have.factor).kind !=
                              FactorSpec::Kind::FiniteGroup ||
                          have.value == want.value) {
                        ok = false;
                        break;
                      }
                      const FactorSpec& fs = alph.factor(have.factor);
                      if (bl)
                        lres =
                            Letter{have.factor,
                                   std::int32_t(fs.mul(std::uint32_t(have.value),
                                                       fs.inv(std::uint32_t(want.value))))};
                      if (br)
                        rres =
                            Letter{have.factor,
                                   std::int32_t(fs.mul(fs.inv(std::uint32_t(want.value)),
                                                       std::uint32_t(have.value)))};
                    } else if (!(have == want)) {
                      ok = false;
                      break;
                    }
                  }
                  if (!ok) continue;
                  std::vector<Letter> cand(ls.begin(), ls.begin() + std::ptrdiff_t(p));
                  if (lpart) cand.push_back(lres);
                  for (std::size_t t = n; t > k; --t)
                    cand.push_back(alph.inverse_letter(u(t - 1)));
                  if (rpart) cand.push_back(rres);
                  cand.insert(cand.end(), ls.begin() + std::ptrdiff_t(p + k), ls.end());
                  Word cw = alph.word_from_letters(cand);
                  if (alph.letters(cw).size() <= ls.size()) out.push_back(std::move(cw));
                }
              }
            }
          }
        }
      }
    }
    std::sort(out.begin(), out.end(),
              [&](const Word& a, const Word& b) { return a.syls < b.syls; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::optional<std::uint32_t> lookup_known(const Word& w) const {
    auto it = by_string_.find(pres_->alphabet.word_str(w));
    if (it == by_string_.end()) return std::nullopt;
    return it->second;
  }

  // Resolve a normalized word to an interned group vertex.
  std::optional<std::uint32_t> resolve(const Word& nf) const {
    Word red = pres_->dehn_reduce(nf);
    if (pres_->alphabet.letters(red).size() > metric_radius()) return std::nullopt;
    if (auto hit = lookup_known(red)) return hit;
    for (const Word& alias : one_relator_respellings(red))
      if (auto hit = lookup_known(alias)) return hit;
    if (!alias_dedup_sound()) {
      // beyond the alias-complete scale: full oracle scan
      for (std::uint32_t v = 0; v < words_.size(); ++v) {
        Word prod = pres_->alphabet.mul(red, pres_->alphabet.inverse(words_[v]));
        if (prod.empty()) return v;
        if (pres_->alphabet.letters(prod).size() * 2 <= min_rel_) continue;
        if (pres_->is_trivial(prod)) return v;
      }
    }
    return std::nullopt;
  }

  // --- build ------------------------------------------------------------------

  void build() {
    const Alphabet& alph = pres_->alphabet;
    std::vector<Letter> gens = pres_->generator_letters();
    std::uint32_t Rm = metric_radius();

    // BFS interning of group elements
    words_.push_back(Word{});
    by_string_.emplace(alph.word_str(Word{}), 0);
    std::vector<std::uint32_t> level{0};
    std::vector<std::uint32_t> vertex_level{0};
    for (std::uint32_t d = 0; d < Rm && !level.empty(); ++d) {
      std::vector<std::uint32_t> next;
      for (std::uint32_t v : level) {
        for (const Letter& s : gens) {
          Word w = alph.mul(words_[v], alph.word_from_letters({s}));
          if (alph.letters(w).size() > Rm) continue;
          if (intern(w)) next.push_back(std::uint32_t(words_.size() - 1)),
              vertex_level.push_back(d + 1);
        }
      }
      level = std::move(next);
    }

    // group vertices
    for (std::uint32_t v = 0; v < words_.size(); ++v) {
      std::uint32_t id = X_.add_vertex(name_of(words_[v]));
      X_.vertex_mut(id).dist = vertex_level[v] * X_.length_unit;
    }

    if (X_.backend == Backend::CayleyBall) {
      build_cayley_cells(gens);
    } else {
      build_coned_cells();
    }

    mark_completeness(vertex_level);
    X_.freeze();
    X_.assert_embedded_boundaries();
  }

  bool intern(const Word& w) {
    if (resolve(w)) return false;
    Word red = pres_->dehn_reduce(w);
    std::uint32_t id = std::uint32_t(words_.size());
    words_.push_back(red);
    by_string_.emplace(pres_->alphabet.word_str(red), id);
    lookup_cache_.clear();
    return true;
  }

  void build_cayley_cells(const std::vector<Letter>& gens) {
    const Alphabet& alph = pres_->alphabet;
    for (std::uint32_t v = 0; v < words_.size(); ++v) {
      for (const Letter& s : gens) {
        auto t = find_element(alph.mul(words_[v], alph.word_from_letters({s})));
        if (!t) continue;
        auto key = ordered(v, *t);
        if (!edge_by_pair_.count(key))
          edge_by_pair_.emplace(key, X_.add_edge(key.first, key.second));
      }
    }
    attach_relator_cycles([&](std::uint32_t base, std::uint32_t rel)
                              -> std::optional<std::vector<std::uint32_t>> {
      // trace the relator pattern from group vertex `base`
      const PieceTable& pt = pres_->pieces();
      const auto& pattern = pt.relator(rel).letters;
      std::vector<std::uint32_t> verts{base};
      Word cur = words_[base];
      for (const Letter& l : pattern) {
        cur = alph.mul(cur, alph.word_from_letters({l}));
        auto nxt = find_element(cur);
        if (!nxt) return std::nullopt;
        verts.push_back(*nxt);
      }
      if (verts.back() != base) return std::nullopt;  // relator not closed?
      return oriented_cycle(verts);
    });
  }

  void build_coned_cells() {
    const Alphabet& alph = pres_->alphabet;
    // cone vertices and cone edges
    for (std::uint32_t v = 0; v < words_.size(); ++v) {
      for (std::uint32_t f = 0; f < alph.factor_count(); ++f) {
        const FactorSpec& fs = alph.factor(f);
        // collect present coset members
        std::vector<std::uint32_t> members;
        bool all_present = true;
        for (std::uint32_t a = 0; a < fs.order; ++a) {
          Word m = a == fs.identity
                       ? words_[v]
                       : alph.mul(words_[v], Word{{Syllable{f, std::int32_t(a)}}});
          auto mv = find_element(m);
          if (mv)
            members.push_back(*mv);
          else
            all_present = false;
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        std::uint32_t rep = members.front();
        if (cone_id_.count({rep, f})) {
          cone_id_.emplace(std::make_pair(v, f), cone_id_.at({rep, f}));
          continue;
        }
        std::uint32_t dist = X_.vertex(rep).dist + 1;
        if (dist > radius_) continue;  // cone outside the ball
        std::uint32_t cid =
            X_.add_vertex(alph.factor(f).name + "|" + X_.vertex(rep).name);
        X_.vertex_mut(cid).dist = dist;
        X_.vertex_mut(cid).cone_factor = std::int32_t(f);
        X_.vertex_mut(cid).complete = all_present;
        cone_info_[cid] = ConeInfo{rep, members};
        for (std::uint32_t m : members) {
          cone_id_.emplace(std::make_pair(m, f), cid);
          auto key = ordered(m, cid);
          edge_by_pair_.emplace(key, X_.add_edge(key.first, key.second));
        }
      }
    }
    attach_relator_cycles([&](std::uint32_t base, std::uint32_t rel)
                              -> std::optional<std::vector<std::uint32_t>> {
      const PieceTable& pt = pres_->pieces();
      const auto& pattern = pt.relator(rel).letters;
      std::vector<std::uint32_t> verts{base};
      Word cur = words_[base];
      for (const Letter& l : pattern) {
        auto cone = cone_at(verts.back(), l.factor);
        if (!cone) return std::nullopt;
        verts.push_back(*cone);
        cur = alph.mul(cur, Word{{Syllable{l.factor, l.value}}});
        auto nxt = find_element(cur);
        if (!nxt) return std::nullopt;
        verts.push_back(*nxt);
      }
      if (verts.back() != base) return std::nullopt;
      return oriented_cycle(verts);
    });
  }

  // vertex cycle (first == last) -> oriented edge sequence
  std::optional<std::vector<std::uint32_t>> oriented_cycle(
      const std::vector<std::uint32_t>& verts) const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
      auto e = edge_between(verts[i], verts[i + 1]);
      if (!e) return std::nullopt;
      out.push_back(oriented(*e, X_.edge(*e).u != verts[i]));
    }
    return out;
  }

  template <typename TraceFn>
  void attach_relator_cycles(TraceFn&& trace) {
    std::map<std::string, std::pair<std::vector<std::uint32_t>, std::uint32_t>> cycles;
    for (std::uint32_t v = 0; v < words_.size(); ++v) {
      for (std::uint32_t rel = 0; rel < pres_->relators.size(); ++rel) {
        auto cyc = trace(v, rel);
        if (!cyc) continue;
        std::string key = cycle_key(*cyc);
        cycles.emplace(std::move(key), std::make_pair(std::move(*cyc), rel));
      }
    }
    for (auto& [key, val] : cycles) {
      std::uint32_t f = X_.add_face(canonical_cycle(val.first));
      face_relator_.push_back(val.second);
      face_by_key_.emplace(key, f);
    }
  }

  void mark_completeness(const std::vector<std::uint32_t>& vertex_level) {
    std::uint32_t Rm = metric_radius();
    // group vertex star complete: all generator steps materialized
    for (std::uint32_t v = 0; v < words_.size(); ++v) {
      bool ok = vertex_level[v] < Rm;
      if (X_.backend == Backend::ConedOffBall) {
        // both cone vertices must exist and be complete
        for (std::uint32_t f = 0; ok && f < pres_->alphabet.factor_count(); ++f) {
          auto c = cone_at(v, f);
          if (!c || !X_.vertex(*c).complete) ok = false;
        }
      }
      if (!ok) X_.vertex_mut(v).complete = false;
    }
    // 1-cell sides complete: every relator cycle through the edge lies in the
    // ball whenever the nearer endpoint clears the half-cycle margin.
    std::uint32_t margin = std::uint32_t(max_rel_) * X_.length_unit / 2;
    for (std::uint32_t e = 0; e < X_.edge_count(); ++e) {
      std::uint32_t du = X_.vertex(X_.edge(e).u).dist;
      std::uint32_t dv = X_.vertex(X_.edge(e).v).dist;
      if (std::min(du, dv) + margin > radius_) X_.edge_mut(e).complete = false;
    }
  }

  struct ConeInfo {
    std::uint32_t rep = 0;
    std::vector<std::uint32_t> members;
  };

  const Presentation* pres_;
  std::uint32_t radius_;
  Complex X_;
  std::vector<Word> words_;
  std::map<std::string, std::uint32_t> by_string_;
  mutable std::map<std::string, std::optional<std::uint32_t>> lookup_cache_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> edge_by_pair_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> cone_id_;
  std::map<std::uint32_t, ConeInfo> cone_info_;
  std::map<std::string, std::uint32_t> face_by_key_;
  std::vector<std::uint32_t> face_relator_;
  std::size_t min_rel_ = 0, max_rel_ = 0, max_piece_ = 0;
};

}  // namespace smc

#endif  // SMC_BALL_HPP
