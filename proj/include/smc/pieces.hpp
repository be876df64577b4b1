// Piece computation between relator cycles.  A piece is a common directed
// subpath of two relator boundary cycles whose two occurrences are not
// related by a label-preserving isomorphism of the cycles; occurrence pairs
// identified by such an isomorphism (the rotation classes of a proper power,
// or an orientation-reversing self-identification) are excluded.
#ifndef SMC_PIECES_HPP
#define SMC_PIECES_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "smc/rational.hpp"
#include "smc/words.hpp"

namespace smc {

// One relator boundary cycle expanded to letter granularity (free syllables
// split into single steps, finite syllables kept whole).
struct RelatorPattern {
  std::vector<Letter> letters;

  std::size_t size() const { return letters.size(); }
};

// A directed subpath of a relator cycle.  reversed=false reads positions
// start, start+1, ...; reversed=true reads start, start-1, ... with each
// letter inverted.
struct Occurrence {
  std::uint32_t relator = 0;
  std::uint32_t start = 0;
  std::uint32_t length = 0;
  bool reversed = false;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

namespace detail {

inline std::size_t mod(std::ptrdiff_t a, std::size_t n) {
  std::ptrdiff_t m = a % std::ptrdiff_t(n);
  if (m < 0) m += std::ptrdiff_t(n);
  return std::size_t(m);
}

}  // namespace detail

inline std::vector<Letter> occurrence_word(const Alphabet& alph,
                                           const RelatorPattern& rel,
                                           const Occurrence& occ) {
  std::vector<Letter> out;
  out.reserve(occ.length);
  std::size_t n = rel.size();
  for (std::uint32_t t = 0; t < occ.length; ++t) {
    if (!occ.reversed) {
      out.push_back(rel.letters[detail::mod(std::ptrdiff_t(occ.start) + t, n)]);
    } else {
      out.push_back(alph.inverse_letter(
          rel.letters[detail::mod(std::ptrdiff_t(occ.start) - t, n)]));
    }
  }
  return out;
}

class PieceTable {
 public:
  PieceTable() = default;
  PieceTable(const Alphabet* alph, std::vector<RelatorPattern> relators)
      : alph_(alph), relators_(std::move(relators)) {
    max_piece_.assign(relators_.size(), 0);
    witness_.assign(relators_.size(), std::nullopt);
    compute();
  }

  std::size_t relator_count() const { return relators_.size(); }
  const RelatorPattern& relator(std::size_t i) const { return relators_[i]; }
  std::size_t relator_length(std::size_t i) const { return relators_[i].size(); }

  // Longest piece occurring on relator i; 0 when none.
  std::size_t max_piece(std::size_t i) const { return max_piece_.at(i); }

  std::size_t max_piece_overall() const {
    std::size_t m = 0;
    for (std::size_t v : max_piece_) m = std::max(m, v);
    return m;
  }

  const std::optional<std::pair<Occurrence, Occurrence>>& witness(std::size_t i) const {
    return witness_.at(i);
  }

  // True when a rotation of full pattern j by `shift` reproduces pattern i,
  // i.e. the relators are parallel copies of one boundary cycle.
  bool rotation_identifies(std::uint32_t i, std::uint32_t j, std::size_t shift) const {
    const auto& a = relators_[i].letters;
    const auto& b = relators_[j].letters;
    if (a.size() != b.size()) return false;
    for (std::size_t t = 0; t < a.size(); ++t)
      if (b[detail::mod(std::ptrdiff_t(t + shift), b.size())] != a[t]) return false;
    return true;
  }

  // Orientation-reversing identification with parameter c: position t of
  // pattern i corresponds to position c - t of pattern j reversed.
  bool reflection_identifies(std::uint32_t i, std::uint32_t j, std::size_t c) const {
    const auto& a = relators_[i].letters;
    const auto& b = relators_[j].letters;
    if (a.size() != b.size()) return false;
    for (std::size_t t = 0; t < a.size(); ++t)
      if (alph_->inverse_letter(b[detail::mod(std::ptrdiff_t(c) - std::ptrdiff_t(t),
                                              b.size())]) != a[t])
        return false;
    return true;
  }

  // Do the two occurrences read the same letter word?
  bool same_word(const Occurrence& a, const Occurrence& b) const {
    if (a.length != b.length) return false;
    return occurrence_word(*alph_, relators_[a.relator], a) ==
           occurrence_word(*alph_, relators_[b.relator], b);
  }

  // Is the occurrence pair distinct in the sense of the piece definition?
  // Both must read the same word; the pair is a piece unless an isomorphism
  // of the two boundary cycles carries one occurrence to the other.
  bool is_piece_pair(const Occurrence& a, const Occurrence& b) const {
    if (a.length == 0 || !same_word(a, b)) return false;
    if (a.reversed) {
      // Normalize so the first occurrence is forward: flip both.
      return is_piece_pair(flip(a), flip(b));
    }
    if (!b.reversed) {
      std::size_t shift =
          detail::mod(std::ptrdiff_t(b.start) - std::ptrdiff_t(a.start),
                      relators_[b.relator].size());
      if (a.relator == b.relator && shift == 0) return false;  // same occurrence
      return !rotation_identifies(a.relator, b.relator, shift);
    }
    std::size_t c = detail::mod(std::ptrdiff_t(a.start) + std::ptrdiff_t(b.start),
                                relators_[b.relator].size());
    return !reflection_identifies(a.relator, b.relator, c);
  }

  // Is some occurrence pair with first component (relator i, [start, start+len))
  // a piece?  Used by inner-path decomposition.
  bool is_piece_interval(std::uint32_t i, std::uint32_t start, std::uint32_t len) const {
    if (len == 0 || len > relators_[i].size()) return false;
    Occurrence a{i, std::uint32_t(detail::mod(start, relators_[i].size())), len, false};
    for (std::uint32_t j = 0; j < relators_.size(); ++j) {
      std::size_t n = relators_[j].size();
      if (len > n) continue;
      for (std::size_t s = 0; s < n; ++s) {
        Occurrence fwd{j, std::uint32_t(s), len, false};
        if (is_piece_pair(a, fwd)) return true;
        Occurrence rev{j, std::uint32_t(s), len, true};
        if (is_piece_pair(a, rev)) return true;
      }
    }
    return false;
  }

  // The same subpath traversed in the other direction (reads the inverse
  // word).  Flipping both members of a pair preserves piece-ness.
  Occurrence flip(const Occurrence& o) const {
    std::size_t n = relators_[o.relator].size();
    std::ptrdiff_t far = o.reversed
                             ? std::ptrdiff_t(o.start) - (std::ptrdiff_t(o.length) - 1)
                             : std::ptrdiff_t(o.start) + (std::ptrdiff_t(o.length) - 1);
    return Occurrence{o.relator, std::uint32_t(detail::mod(far, n)), o.length,
                      !o.reversed};
  }

 private:
  void compute() {
    for (std::uint32_t i = 0; i < relators_.size(); ++i) {
      std::size_t n = relators_[i].size();
      if (n == 0) continue;
      for (std::uint32_t j = i; j < relators_.size(); ++j) {
        std::size_t m = relators_[j].size();
        if (m == 0) continue;
        std::size_t cap = std::min(n, m);
        for (std::size_t s1 = 0; s1 < n; ++s1) {
          for (std::size_t s2 = 0; s2 < m; ++s2) {
            for (bool rev : {false, true}) {
              // Longest common run from (s1 fwd) vs (s2, rev).
              std::size_t len = 0;
              while (len < cap) {
                const Letter& x =
                    relators_[i].letters[detail::mod(std::ptrdiff_t(s1 + len), n)];
                Letter y =
                    rev ? alph_->inverse_letter(relators_[j].letters[detail::mod(
                              std::ptrdiff_t(s2) - std::ptrdiff_t(len), m)])
                        : relators_[j].letters[detail::mod(std::ptrdiff_t(s2 + len), m)];
                if (x != y) break;
                ++len;
              }
              if (len == 0) continue;
              Occurrence a{i, std::uint32_t(s1), std::uint32_t(len), false};
              Occurrence b{j, std::uint32_t(s2), std::uint32_t(len), rev};
              // Maximal run may be excluded while a shorter sub-run at the
              // same alignment is too (same isomorphism test), so one check
              // per alignment suffices.
              if (!is_piece_pair(a, b)) continue;
              record(i, len, a, b);
              record(j, len, b, a);
            }
          }
        }
      }
    }
  }

  void record(std::uint32_t rel, std::size_t len, const Occurrence& a,
              const Occurrence& b) {
    if (len > max_piece_[rel]) {
      max_piece_[rel] = len;
      witness_[rel] = std::make_pair(a, b);
    }
  }

  const Alphabet* alph_ = nullptr;
  std::vector<RelatorPattern> relators_;
  std::vector<std::size_t> max_piece_;
  std::vector<std::optional<std::pair<Occurrence, Occurrence>>> witness_;
};

inline PieceTable compute_pieces(const Alphabet& alph,
                                 const std::vector<CyclicWord>& relators) {
  std::vector<RelatorPattern> patterns;
  patterns.reserve(relators.size());
  for (const CyclicWord& r : relators)
    patterns.push_back(RelatorPattern{alph.letters(r.word())});
  return PieceTable(&alph, std::move(patterns));
}

struct MetricReport {
  bool pass = false;
  Rational lambda{0};
  // Worst ratio witness.
  std::size_t worst_relator = 0;
  std::size_t worst_piece_len = 0;
  std::size_t worst_relator_len = 0;
};

// C'(lambda): every piece P on every relator R satisfies |P| < lambda * |dR|.
// Vacuously true with no relators or no pieces.
inline MetricReport metric_check(const PieceTable& pieces, Rational lambda) {
  MetricReport rep;
  rep.lambda = lambda;
  rep.pass = true;
  Rational worst{-1};
  for (std::size_t i = 0; i < pieces.relator_count(); ++i) {
    std::size_t n = pieces.relator_length(i);
    if (n == 0) continue;
    std::size_t p = pieces.max_piece(i);
    Rational ratio{std::int64_t(p), std::int64_t(n)};
    if (ratio > worst) {
      worst = ratio;
      rep.worst_relator = i;
      rep.worst_piece_len = p;
      rep.worst_relator_len = n;
    }
    if (!(Rational(std::int64_t(p)) < lambda * Rational(std::int64_t(n))))
      rep.pass = false;
  }
  return rep;
}

}  // namespace smc

#endif  // SMC_PIECES_HPP
