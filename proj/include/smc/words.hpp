// Normal forms and cyclic-word combinatorics in free products of finite
// groups and free generators.  Words are immutable value types; all
// arithmetic goes through the Alphabet holding the factor tables.
#ifndef SMC_WORDS_HPP
#define SMC_WORDS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smc/errors.hpp"

namespace smc {

struct FactorSpec {
  enum class Kind { FreeGenerator, FiniteGroup };

  Kind kind = Kind::FreeGenerator;
  std::string name;
  // Finite factors only.  table[i * order + j] = i * j, row-major.
  std::uint32_t order = 0;
  std::vector<std::uint32_t> table;
  std::vector<std::uint32_t> inverse;
  std::uint32_t identity = 0;

  static FactorSpec free_generator(std::string name) {
    FactorSpec f;
    f.kind = Kind::FreeGenerator;
    f.name = std::move(name);
    return f;
  }

  // Builds a finite factor from its multiplication table; derives the
  // identity and inverse tables and validates the Latin-square property.
  static FactorSpec finite_group(std::string name, std::uint32_t order,
                                 std::vector<std::uint32_t> table) {
    FactorSpec f;
    f.kind = Kind::FiniteGroup;
    f.name = std::move(name);
    f.order = order;
    f.table = std::move(table);
    if (order == 0 || f.table.size() != std::size_t(order) * order)
      throw input_error("factor " + f.name + ": bad table size");
    for (std::uint32_t v : f.table)
      if (v >= order) throw input_error("factor " + f.name + ": entry out of range");
    // Latin square: each row and column is a permutation.
    std::vector<bool> seen(order);
    for (std::uint32_t i = 0; i < order; ++i) {
      std::fill(seen.begin(), seen.end(), false);
      for (std::uint32_t j = 0; j < order; ++j) {
        if (seen[f.table[i * order + j]])
          throw input_error("factor " + f.name + ": row " + std::to_string(i) +
                            " is not a permutation");
        seen[f.table[i * order + j]] = true;
      }
      std::fill(seen.begin(), seen.end(), false);
      for (std::uint32_t j = 0; j < order; ++j) {
        if (seen[f.table[j * order + i]])
          throw input_error("factor " + f.name + ": column " + std::to_string(i) +
                            " is not a permutation");
        seen[f.table[j * order + i]] = true;
      }
    }
    // Identity: the unique e with e*j = j for all j.
    bool found = false;
    for (std::uint32_t e = 0; e < order && !found; ++e) {
      bool ok = true;
      for (std::uint32_t j = 0; j < order; ++j)
        if (f.table[e * order + j] != j || f.table[j * order + e] != j) {
          ok = false;
          break;
        }
      if (ok) {
        f.identity = e;
        found = true;
      }
    }
    if (!found) throw input_error("factor " + f.name + ": no identity element");
    f.inverse.assign(order, 0);
    for (std::uint32_t i = 0; i < order; ++i) {
      bool ok = false;
      for (std::uint32_t j = 0; j < order; ++j)
        if (f.table[i * order + j] == f.identity) {
          f.inverse[i] = j;
          ok = true;
        }
      if (!ok) throw input_error("factor " + f.name + ": element without inverse");
    }
    for (std::uint32_t i = 0; i < order; ++i)
      if (f.table[f.inverse[i] * order + i] != f.identity)
        throw input_error("factor " + f.name + ": inverse table inconsistent");
    return f;
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return table[a * order + b];
  }
  std::uint32_t inv(std::uint32_t a) const { return inverse[a]; }

  static FactorSpec cyclic(std::string name, std::uint32_t n) {
    std::vector<std::uint32_t> t(std::size_t(n) * n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) t[i * n + j] = (i + j) % n;
    return finite_group(std::move(name), n, std::move(t));
  }
};

// One syllable of a free-product word.  Finite factor: value is a non-identity
// element index.  Free generator: value is a nonzero exponent.
struct Syllable {
  std::uint32_t factor = 0;
  std::int32_t value = 0;

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

struct Word {
  std::vector<Syllable> syls;

  bool empty() const { return syls.empty(); }
  std::size_t syllable_count() const { return syls.size(); }

  friend bool operator==(const Word&, const Word&) = default;
};

// Single-generator unit used by piece computation and Dehn matching: finite
// syllables stay whole, free syllables split into +/-1 steps.
struct Letter {
  std::uint32_t factor = 0;
  std::int32_t value = 0;  // finite: element index; free: +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<FactorSpec> factors) : factors_(std::move(factors)) {}

  std::size_t factor_count() const { return factors_.size(); }
  const FactorSpec& factor(std::uint32_t id) const { return factors_.at(id); }
  const std::vector<FactorSpec>& factors() const { return factors_; }

  std::optional<std::uint32_t> factor_id(const std::string& name) const {
    for (std::uint32_t i = 0; i < factors_.size(); ++i)
      if (factors_[i].name == name) return i;
    return std::nullopt;
  }

  bool all_free() const {
    for (const auto& f : factors_)
      if (f.kind != FactorSpec::Kind::FreeGenerator) return false;
    return true;
  }

  void check_syllable(const Syllable& s) const {
    if (s.factor >= factors_.size())
      throw input_error("syllable references unknown factor");
    const FactorSpec& f = factors_[s.factor];
    if (f.kind == FactorSpec::Kind::FiniteGroup) {
      if (s.value < 0 || std::uint32_t(s.value) >= f.order)
        throw input_error("syllable element index out of range for factor " + f.name);
    }
  }

  // Unique normal form: adjacent same-factor syllables multiplied out,
  // identity syllables deleted, iterated to a fixpoint.
  Word normalize(const std::vector<Syllable>& raw) const {
    std::vector<Syllable> out;
    for (const Syllable& s : raw) {
      check_syllable(s);
      push_reduce(out, s);
    }
    return Word{std::move(out)};
  }

  Word mul(const Word& a, const Word& b) const {
    std::vector<Syllable> out = a.syls;
    for (const Syllable& s : b.syls) push_reduce(out, s);
    return Word{std::move(out)};
  }

  Word inverse(const Word& w) const {
    std::vector<Syllable> out;
    out.reserve(w.syls.size());
    for (auto it = w.syls.rbegin(); it != w.syls.rend(); ++it)
      out.push_back(inverse_syllable(*it));
    return Word{std::move(out)};
  }

  Syllable inverse_syllable(const Syllable& s) const {
    const FactorSpec& f = factors_.at(s.factor);
    if (f.kind == FactorSpec::Kind::FreeGenerator)
      return Syllable{s.factor, -s.value};
    return Syllable{s.factor, std::int32_t(f.inv(std::uint32_t(s.value)))};
  }

  bool is_identity_syllable(const Syllable& s) const {
    const FactorSpec& f = factors_.at(s.factor);
    if (f.kind == FactorSpec::Kind::FreeGenerator) return s.value == 0;
    return std::uint32_t(s.value) == f.identity;
  }

  bool is_normal(const Word& w) const {
    for (std::size_t i = 0; i < w.syls.size(); ++i) {
      if (w.syls[i].factor >= factors_.size()) return false;
      if (is_identity_syllable(w.syls[i])) return false;
      if (i + 1 < w.syls.size() && w.syls[i].factor == w.syls[i + 1].factor)
        return false;
    }
    return true;
  }

  // |w| in letters: one per non-identity finite syllable, |exponent| per
  // free syllable.  Free-group presentations measure lengths this way.
  std::size_t letter_length(const Word& w) const {
    std::size_t n = 0;
    for (const Syllable& s : w.syls) {
      const FactorSpec& f = factors_.at(s.factor);
      n += f.kind == FactorSpec::Kind::FreeGenerator
               ? std::size_t(s.value < 0 ? -s.value : s.value)
               : 1;
    }
    return n;
  }

  std::vector<Letter> letters(const Word& w) const {
    std::vector<Letter> out;
    for (const Syllable& s : w.syls) {
      const FactorSpec& f = factors_.at(s.factor);
      if (f.kind == FactorSpec::Kind::FreeGenerator) {
        std::int32_t step = s.value > 0 ? 1 : -1;
        for (std::int32_t k = 0; k != s.value; k += step)
          out.push_back(Letter{s.factor, step});
      } else {
        out.push_back(Letter{s.factor, s.value});
      }
    }
    return out;
  }

  Word word_from_letters(const std::vector<Letter>& ls) const {
    std::vector<Syllable> raw;
    raw.reserve(ls.size());
    for (const Letter& l : ls) raw.push_back(Syllable{l.factor, l.value});
    return normalize(raw);
  }

  Letter inverse_letter(const Letter& l) const {
    const FactorSpec& f = factors_.at(l.factor);
    if (f.kind == FactorSpec::Kind::FreeGenerator) return Letter{l.factor, -l.value};
    return Letter{l.factor, std::int32_t(f.inv(std::uint32_t(l.value)))};
  }

  // ShortLex: syllable count, then (factor, value) lexicographic.
  bool shortlex_less(const Word& a, const Word& b) const {
    if (a.syls.size() != b.syls.size()) return a.syls.size() < b.syls.size();
    return a.syls < b.syls;
  }

  // ShortLex on letter length, used for free-group canonical naming.
  bool shortlex_letters_less(const Word& a, const Word& b) const {
    std::size_t la = letter_length(a), lb = letter_length(b);
    if (la != lb) return la < lb;
    return letters(a) < letters(b);
  }

  std::string syllable_str(const Syllable& s) const {
    const FactorSpec& f = factors_.at(s.factor);
    if (f.kind == FactorSpec::Kind::FreeGenerator) {
      if (s.value == 1) return f.name;
      return f.name + "^" + std::to_string(s.value);
    }
    return f.name + std::to_string(s.value);
  }

  std::string word_str(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.syls.size(); ++i) {
      if (i) out += ' ';
      out += syllable_str(w.syls[i]);
    }
    return out;
  }

 private:
  void push_reduce(std::vector<Syllable>& out, Syllable s) const {
    if (is_identity_syllable(s)) return;
    while (!out.empty() && out.back().factor == s.factor) {
      const FactorSpec& f = factors_[s.factor];
      Syllable merged;
      merged.factor = s.factor;
      if (f.kind == FactorSpec::Kind::FreeGenerator) {
        merged.value = out.back().value + s.value;
      } else {
        merged.value = std::int32_t(
            f.mul(std::uint32_t(out.back().value), std::uint32_t(s.value)));
      }
      out.pop_back();
      if (is_identity_syllable(merged)) return;
      s = merged;
    }
    out.push_back(s);
  }

  std::vector<FactorSpec> factors_;
};

// A word up to rotation, stored at the canonical (lexicographically least)
// rotation of its letter cycle.  Cyclically reduced by construction: no
// cyclic adjacency cancels or merges (finite factors may not repeat across
// the wrap; free letters may repeat with the same sign).
class CyclicWord {
 public:
  CyclicWord() = default;

  // `w` must already be cyclically reduced; rotates to canonical form.
  static CyclicWord from_cyclically_reduced(const Alphabet& alph, const Word& w) {
    if (!is_cyclically_reduced(alph, w))
      throw input_error("CyclicWord: word is not cyclically reduced");
    CyclicWord c;
    c.word_ = alph.word_from_letters(canonical_rotation(alph.letters(w)).first);
    return c;
  }

  const Word& word() const { return word_; }
  std::size_t syllable_count() const { return word_.syls.size(); }
  bool empty() const { return word_.empty(); }

  // Cyclic adjacency between the last and first letter must not cancel: a
  // finite-factor repeat always merges, a free-letter repeat only cancels
  // with opposite signs.
  static bool is_cyclically_reduced(const Alphabet& alph, const Word& w) {
    if (!alph.is_normal(w)) return false;
    std::vector<Letter> ls = alph.letters(w);
    if (ls.size() >= 2) {
      const Letter& first = ls.front();
      const Letter& last = ls.back();
      if (first.factor == last.factor) {
        const FactorSpec& f = alph.factor(first.factor);
        if (f.kind == FactorSpec::Kind::FiniteGroup) return false;
        if (first.value != last.value) return false;  // opposite signs cancel
      }
    }
    return true;
  }

  // Returns (least rotation of the letter cycle, offset achieving it).
  static std::pair<std::vector<Letter>, std::size_t> canonical_rotation(
      const std::vector<Letter>& ls) {
    if (ls.empty()) return {ls, 0};
    std::size_t best = 0;
    auto rot_less = [&](std::size_t i, std::size_t j) {
      for (std::size_t k = 0; k < ls.size(); ++k) {
        const Letter& a = ls[(i + k) % ls.size()];
        const Letter& b = ls[(j + k) % ls.size()];
        if (a != b) return a < b;
      }
      return false;
    };
    for (std::size_t i = 1; i < ls.size(); ++i)
      if (rot_less(i, best)) best = i;
    std::vector<Letter> out;
    out.reserve(ls.size());
    for (std::size_t k = 0; k < ls.size(); ++k)
      out.push_back(ls[(best + k) % ls.size()]);
    return {std::move(out), best};
  }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;

 private:
  Word word_;
};

struct CyclicReduction {
  CyclicWord cyclic;
  Word conjugator;  // original = conjugator * cyclic * conjugator^-1
};

// Peels conjugating letters off both ends, then rotates to the canonical
// form, folding the rotation into the conjugator.  Empty input signals
// trivial via nullopt.
inline std::optional<CyclicReduction> cyclically_reduce(const Alphabet& alph,
                                                        const Word& input) {
  Word w = alph.normalize(input.syls);
  Word conj;
  for (;;) {
    if (w.empty()) return std::nullopt;
    if (CyclicWord::is_cyclically_reduced(alph, w)) break;
    // peel one leading letter: w = s * core * t with s,t interacting
    std::vector<Letter> ls = alph.letters(w);
    Letter s = ls.front();
    Word sw = alph.word_from_letters({s});
    conj = alph.mul(conj, sw);
    w = alph.mul(alph.mul(alph.inverse(sw), w), sw);
  }
  auto [canon, offset] = CyclicWord::canonical_rotation(alph.letters(w));
  // w = p * q, canonical = q * p  =>  w = p * canonical * p^-1.
  std::vector<Letter> ls = alph.letters(w);
  std::vector<Letter> prefix(ls.begin(), ls.begin() + std::ptrdiff_t(offset));
  CyclicReduction out;
  out.cyclic = CyclicWord::from_cyclically_reduced(alph, alph.word_from_letters(canon));
  out.conjugator = alph.mul(conj, alph.word_from_letters(prefix));
  return out;
}

}  // namespace smc

#endif  // SMC_WORDS_HPP
