// Shared test fixtures: deterministic RNG, standard alphabets, word builders.
#ifndef SMC_TESTS_HELPERS_HPP
#define SMC_TESTS_HELPERS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "smc/presentation.hpp"
#include "smc/words.hpp"

namespace smc::testing {

// splitmix64: tiny, seedable, stable across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return next() % n; }
  bool coin() { return next() & 1; }

 private:
  std::uint64_t state_;
};

// Z/2 * Z/3 with factors A, B.
inline Alphabet z2_z3() {
  return Alphabet({FactorSpec::cyclic("A", 2), FactorSpec::cyclic("B", 3)});
}

// Free group on a, b.
inline Alphabet free_ab() {
  return Alphabet({FactorSpec::free_generator("a"), FactorSpec::free_generator("b")});
}

inline Word w(const Alphabet& alph, std::vector<Syllable> syls) {
  return alph.normalize(syls);
}

// (A1 B1)^k as a raw syllable sequence.
inline std::vector<Syllable> ab_power(std::uint32_t k) {
  std::vector<Syllable> out;
  for (std::uint32_t i = 0; i < k; ++i) {
    out.push_back(Syllable{0, 1});
    out.push_back(Syllable{1, 1});
  }
  return out;
}

// Presentation of Z/2 * Z/3 / <<(ab)^m>>.
inline Presentation coned_pres(std::uint32_t m) {
  Presentation p;
  p.alphabet = z2_z3();
  p.lambda = Rational(1, std::int64_t(m));
  p.add_relator(Word{{Syllable{0, 1}, Syllable{1, 1}}}, m);
  return p;
}

// <a,b | (a b a b^-1)^m>.
inline Presentation free_pres_abab(std::uint32_t m, Rational lambda) {
  Presentation p;
  p.alphabet = free_ab();
  p.lambda = lambda;
  p.add_relator(
      Word{{Syllable{0, 1}, Syllable{1, 1}, Syllable{0, 1}, Syllable{1, -1}}}, m);
  return p;
}

// Random normal-form word over alph with at most `len` syllables.
inline Word random_word(const Alphabet& alph, Rng& rng, std::size_t len) {
  std::vector<Syllable> syls;
  for (std::size_t i = 0; i < len; ++i) {
    std::uint32_t f = std::uint32_t(rng.below(alph.factor_count()));
    const FactorSpec& fs = alph.factor(f);
    std::int32_t v;
    if (fs.kind == FactorSpec::Kind::FreeGenerator) {
      v = std::int32_t(rng.below(5)) - 2;  // -2..2, zeros vanish in normalize
    } else {
      v = std::int32_t(rng.below(fs.order));
    }
    syls.push_back(Syllable{f, v});
  }
  return alph.normalize(syls);
}

}  // namespace smc::testing

#endif  // SMC_TESTS_HELPERS_HPP
