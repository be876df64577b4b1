// Presentations over free products: relators as powers of cyclically reduced
// roots, metric verification, the exact thinness census, and Dehn-style word
// problem reduction (sound once the presentation is verified C'(1/6)).
#ifndef SMC_PRESENTATION_HPP
#define SMC_PRESENTATION_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "smc/errors.hpp"
#include "smc/pieces.hpp"
#include "smc/rational.hpp"
#include "smc/union_find.hpp"
#include "smc/words.hpp"

namespace smc {

struct Relator {
  CyclicWord root;
  std::uint32_t power = 1;
  CyclicWord full;  // root^power

  // Is the root a proper power (nontrivial rotational symmetry of its cycle)?
  bool root_is_proper_power(const Alphabet& alph) const {
    std::vector<Letter> p = alph.letters(root.word());
    for (std::size_t k = 1; k < p.size(); ++k) {
      bool eq = true;
      for (std::size_t t = 0; t < p.size() && eq; ++t)
        eq = p[(t + k) % p.size()] == p[t];
      if (eq) return true;
    }
    return false;
  }
};

struct SubgroupBlock {
  std::string name;
  std::vector<Word> generators;
  // Designated 0-cell stabilizers: either a cone vertex ("cone", factor name)
  // or a complex vertex by canonical name ("v", name).
  std::vector<std::pair<std::string, std::string>> stabilizers;
  std::uint32_t depth = 4;
};

struct DehnPolicy {
  // Replace relator subpaths strictly longer than threshold * |relator|.
  Rational threshold{1, 2};
};

struct ThinnessCensus {
  // Cayley backend: per-generator side counts at a generator edge.
  // Coned-off backend: per-factor side counts at a cone edge.
  std::vector<std::pair<std::string, std::size_t>> per_key;
  std::size_t bound = 0;
};

class Presentation {
 public:
  Alphabet alphabet;
  std::vector<Relator> relators;
  Rational lambda{1, 6};
  std::vector<SubgroupBlock> subgroups;

  bool is_free_group() const { return alphabet.all_free(); }

  void add_relator(const Word& root, std::uint32_t power) {
    if (power < 1) throw input_error("relator power must be >= 1");
    if (!CyclicWord::is_cyclically_reduced(alphabet, root))
      throw input_error("relator root is not cyclically reduced: " +
                        alphabet.word_str(root));
    Relator rel;
    rel.root = CyclicWord::from_cyclically_reduced(alphabet, root);
    rel.power = power;
    std::vector<Syllable> full;
    for (std::uint32_t i = 0; i < power; ++i)
      full.insert(full.end(), rel.root.word().syls.begin(), rel.root.word().syls.end());
    Word fw = alphabet.normalize(full);
    std::size_t root_letters = alphabet.letters(rel.root.word()).size();
    if (!CyclicWord::is_cyclically_reduced(alphabet, fw) ||
        alphabet.letters(fw).size() != std::size_t(power) * root_letters)
      throw input_error("relator power collapses; root not cyclically reduced?");
    rel.full = CyclicWord::from_cyclically_reduced(alphabet, fw);
    if (alphabet.letters(rel.full.word()).size() < 2)
      throw input_error("relator of length < 2 is not supported");
    relators.push_back(std::move(rel));
    pieces_.reset();
  }

  const PieceTable& pieces() const {
    if (!pieces_) {
      std::vector<CyclicWord> full;
      for (const Relator& r : relators) full.push_back(r.full);
      pieces_ = compute_pieces(alphabet, full);
    }
    return *pieces_;
  }

  MetricReport metric(Rational lam) const { return metric_check(pieces(), lam); }

  // Soundness gate for Dehn reduction and ball construction.
  bool verified_c6() const { return metric(Rational(1, 6)).pass; }

  void require_c6(const char* who) const {
    if (!verified_c6())
      throw hypothesis_error(std::string(who) +
                             ": presentation is not verified C'(1/6)");
  }

  // --- Dehn reduction -----------------------------------------------------

  Word dehn_reduce(const Word& input, DehnPolicy policy = {}) const {
    require_c6("dehn_reduce");
    std::vector<Letter> w = alphabet.letters(alphabet.normalize(input.syls));
    for (;;) {
      auto m = find_replacement(w, policy);
      if (!m) break;
      w = *m;
    }
    return alphabet.word_from_letters(w);
  }

  bool is_trivial(const Word& w) const { return dehn_reduce(w).empty(); }

  // --- Exact censuses -----------------------------------------------------

  // Side count at a 1-cell of the (one 2-cell per relator cycle) complex.
  // Cayley backend: a generator edge {g, gx} lies on one side per symmetry
  // orbit of directed occurrences of x in the relator cycles.  Coned-off
  // backend: a cone edge of factor F lies on one side per orbit of
  // (F-syllable occurrence, endpoint half).
  ThinnessCensus thinness_census() const {
    ThinnessCensus out;
    const PieceTable& pt = pieces();
    if (is_free_group()) {
      for (std::uint32_t f = 0; f < alphabet.factor_count(); ++f) {
        std::size_t n = count_orbits([&](std::uint32_t rel, std::size_t t,
                                         std::vector<std::pair<std::size_t, int>>& slots) {
          const Letter& l = pt.relator(rel).letters[t];
          if (l.factor != f) return;
          // forward traversal reads (f,+1); backward traversal reads (f,-1).
          if (l.value == 1) slots.push_back({t, +1});
          if (l.value == -1) slots.push_back({t, -1});
        });
        out.per_key.push_back({alphabet.factor(f).name, n});
        out.bound = std::max(out.bound, n);
      }
    } else {
      for (std::uint32_t f = 0; f < alphabet.factor_count(); ++f) {
        std::size_t n = count_orbits([&](std::uint32_t rel, std::size_t t,
                                         std::vector<std::pair<std::size_t, int>>& slots) {
          const Letter& l = pt.relator(rel).letters[t];
          if (l.factor != f) return;
          slots.push_back({t, +1});  // source half of the syllable
          slots.push_back({t, -1});  // target half
        });
        out.per_key.push_back({alphabet.factor(f).name, n});
        out.bound = std::max(out.bound, n);
      }
    }
    return out;
  }

  // Boundary length of every 2-cell, in the backend's length units
  // (letters for free groups, syllables for free products).
  std::size_t circumscription_bound() const {
    std::size_t L = 0;
    for (std::size_t i = 0; i < relators.size(); ++i)
      L = std::max(L, pieces().relator_length(i));
    return L;
  }

  // Left multiplication inverts a 1-cell only when a generator is an
  // involution (Cayley backend); the coned-off skeleton is bipartite between
  // group and cone vertices, so inversions are structurally impossible.
  // Deciding generator orders needs the word problem, so unverified
  // presentations conservatively report false.
  bool acts_without_inversions_on_skeleton() const {
    if (!is_free_group()) return true;
    if (!verified_c6()) return false;
    for (std::uint32_t f = 0; f < alphabet.factor_count(); ++f) {
      Word sq = alphabet.normalize(
          {Syllable{f, 1}, Syllable{f, 1}});
      if (is_trivial(sq)) return false;
    }
    return true;
  }

  // One edge step per generator letter: free factors contribute +/-1, finite
  // factors every non-identity element.
  std::vector<Letter> generator_letters() const {
    std::vector<Letter> out;
    for (std::uint32_t f = 0; f < alphabet.factor_count(); ++f) {
      const FactorSpec& fs = alphabet.factor(f);
      if (fs.kind == FactorSpec::Kind::FreeGenerator) {
        out.push_back(Letter{f, 1});
        out.push_back(Letter{f, -1});
      } else {
        for (std::uint32_t v = 0; v < fs.order; ++v)
          if (v != fs.identity) out.push_back(Letter{f, std::int32_t(v)});
      }
    }
    return out;
  }

 private:
  // Union-find orbit counting over per-relator slots under all label
  // isomorphisms between relator cycles.
  template <typename SlotFn>
  std::size_t count_orbits(SlotFn&& fn) const {
    const PieceTable& pt = pieces();
    struct Slot {
      std::uint32_t rel;
      std::size_t t;
      int dir;
    };
    std::vector<Slot> slots;
    for (std::uint32_t rel = 0; rel < relators.size(); ++rel) {
      std::vector<std::pair<std::size_t, int>> local;
      for (std::size_t t = 0; t < pt.relator(rel).size(); ++t) fn(rel, t, local);
      for (auto& [t, dir] : local) slots.push_back({rel, t, dir});
    }
    if (slots.empty()) return 0;
    auto index_of = [&](std::uint32_t rel, std::size_t t, int dir) -> std::ptrdiff_t {
      for (std::size_t k = 0; k < slots.size(); ++k)
        if (slots[k].rel == rel && slots[k].t == t && slots[k].dir == dir)
          return std::ptrdiff_t(k);
      return -1;
    };
    UnionFind uf(slots.size());
    for (std::uint32_t i = 0; i < relators.size(); ++i) {
      std::size_t n = pt.relator(i).size();
      for (std::uint32_t j = 0; j < relators.size(); ++j) {
        if (pt.relator(j).size() != n) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (pt.rotation_identifies(i, j, k)) {
            for (std::size_t a = 0; a < slots.size(); ++a) {
              if (slots[a].rel != i) continue;
              std::ptrdiff_t b =
                  index_of(j, (slots[a].t + k) % n, slots[a].dir);
              if (b >= 0) uf.merge(a, std::size_t(b));
            }
          }
          if (pt.reflection_identifies(i, j, k)) {
            for (std::size_t a = 0; a < slots.size(); ++a) {
              if (slots[a].rel != i) continue;
              std::ptrdiff_t b = index_of(
                  j, detail::mod(std::ptrdiff_t(k) - std::ptrdiff_t(slots[a].t), n),
                  -slots[a].dir);
              if (b >= 0) uf.merge(a, std::size_t(b));
            }
          }
        }
      }
    }
    return uf.count();
  }

  // One Dehn step: the leftmost, longest eligible relator subpath replaced by
  // the inverse of its complement.  Finite-factor boundary letters may be
  // absorbed partially (the relator path can enter or leave inside a
  // syllable); the step applies only when the normalized result is strictly
  // shorter.
  std::optional<std::vector<Letter>> find_replacement(
      const std::vector<Letter>& w, const DehnPolicy& policy) const {
    const PieceTable& pt = pieces();
    for (std::size_t p = 0; p < w.size(); ++p) {
      struct Cand {
        std::size_t k;
        std::uint32_t rel;
        std::uint32_t s;
        bool rev;
        bool lexact, rexact;
      };
      std::vector<Cand> cands;
      for (std::uint32_t rel = 0; rel < relators.size(); ++rel) {
        std::size_t n = pt.relator(rel).size();
        for (bool rev : {false, true}) {
          for (std::uint32_t s = 0; s < n; ++s) {
            auto u = [&](std::size_t t) -> Letter {
              const auto& ls = pt.relator(rel).letters;
              if (!rev) return ls[(s + t) % n];
              return alphabet.inverse_letter(
                  ls[detail::mod(std::ptrdiff_t(s) - std::ptrdiff_t(t), n)]);
            };
            for (bool lexact : {true, false}) {
              if (p >= w.size()) break;
              Letter u0 = u(0);
              if (lexact) {
                if (!(w[p] == u0)) continue;
              } else {
                if (!partial_ok(w[p], u0)) continue;
              }
              // extend exact interior matches
              std::size_t e = 1;
              while (e < n && p + e < w.size() && w[p + e] == u(e)) ++e;
              // candidates: full-exact run, and a relaxed-right extension
              cands.push_back({e, rel, s, rev, lexact, true});
              if (e < n && p + e < w.size() && partial_ok(w[p + e], u(e)))
                cands.push_back({e + 1, rel, s, rev, lexact, false});
            }
          }
        }
      }
      std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.k != b.k) return a.k > b.k;
        if (a.rel != b.rel) return a.rel < b.rel;
        if (a.s != b.s) return a.s < b.s;
        if (a.rev != b.rev) return !a.rev;
        if (a.lexact != b.lexact) return a.lexact;
        return a.rexact;
      });
      for (const Cand& c : cands) {
        std::size_t n = pt.relator(c.rel).size();
        // eligibility: strictly longer than threshold * |relator|
        if (!(Rational(std::int64_t(c.k)) >
              policy.threshold * Rational(std::int64_t(n))))
          continue;
        std::vector<Letter> next = apply_replacement(w, p, c.k, c.rel, c.s, c.rev,
                                                     c.lexact, c.rexact);
        if (next.size() < w.size()) return next;
      }
    }
    return std::nullopt;
  }

  bool partial_ok(const Letter& have, const Letter& want) const {
    if (have.factor != want.factor) return false;
    const FactorSpec& f = alphabet.factor(have.factor);
    if (f.kind != FactorSpec::Kind::FiniteGroup) return false;
    return have.value != want.value;
  }

  std::vector<Letter> apply_replacement(const std::vector<Letter>& w, std::size_t p,
                                        std::size_t k, std::uint32_t rel,
                                        std::uint32_t s, bool rev, bool lexact,
                                        bool rexact) const {
    const PieceTable& pt = pieces();
    std::size_t n = pt.relator(rel).size();
    auto u = [&](std::size_t t) -> Letter {
      const auto& ls = pt.relator(rel).letters;
      if (!rev) return ls[(s + t) % n];
      return alphabet.inverse_letter(
          ls[detail::mod(std::ptrdiff_t(s) - std::ptrdiff_t(t), n)]);
    };
    std::vector<Letter> out(w.begin(), w.begin() + std::ptrdiff_t(p));
    if (!lexact) {
      // residue x = w[p] * u0^-1
      const FactorSpec& f = alphabet.factor(w[p].factor);
      std::uint32_t x = f.mul(std::uint32_t(w[p].value),
                              f.inv(std::uint32_t(u(0).value)));
      out.push_back(Letter{w[p].factor, std::int32_t(x)});
    }
    // complement: the rest of the cycle after the matched subpath, inverted.
    // matched = u(0..k); rest = u(k..n); u * rest reads the whole cycle = 1.
    for (std::size_t t = n; t > k; --t)
      out.push_back(alphabet.inverse_letter(u(t - 1)));
    if (!rexact) {
      // residue y = u(k-1)^-1 * w[p+k-1]
      const FactorSpec& f = alphabet.factor(w[p + k - 1].factor);
      std::uint32_t y = f.mul(f.inv(std::uint32_t(u(k - 1).value)),
                              std::uint32_t(w[p + k - 1].value));
      out.push_back(Letter{w[p + k - 1].factor, std::int32_t(y)});
    }
    out.insert(out.end(), w.begin() + std::ptrdiff_t(p + k), w.end());
    return alphabet.letters(alphabet.word_from_letters(out));
  }

  mutable std::optional<PieceTable> pieces_;
};

// --- presentation file parsing ---------------------------------------------

// Line-based format, '#' comments:
//   presentation v1
//   factor <name> finite <order> <order*order table entries>
//   factor <name> free
//   relator <power> <syllable> ...
//   lambda <p/q>
//   subgroup <name> depth <D>
//     gen <syllable> ...
//     stab cone <factor-name> | stab v <vertex-name>
//   end
// Syllables: finite "A1" (factor name + element index), free "a", "a^-2".
class PresentationParser {
 public:
  static Presentation parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open presentation file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
  }

  static Presentation parse(const std::string& text, const std::string& origin = "<string>") {
    Presentation pres;
    std::vector<FactorSpec> factors;
    struct PendingRelator {
      std::uint32_t power;
      std::vector<std::string> tokens;
      int line;
    };
    std::vector<PendingRelator> pending;
    SubgroupBlock* open_block = nullptr;
    std::vector<SubgroupBlock> blocks;
    std::vector<std::pair<std::vector<std::string>, int>> block_gens;  // deferred

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    auto fail = [&](const std::string& msg) -> void {
      throw input_error(origin + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::istringstream ls(line);
      std::vector<std::string> tok;
      std::string t;
      while (ls >> t) tok.push_back(t);
      if (tok.empty()) continue;
      if (!header_seen) {
        if (tok.size() != 2 || tok[0] != "presentation" || tok[1] != "v1")
          fail("expected header 'presentation v1'");
        header_seen = true;
        continue;
      }
      if (tok[0] == "factor") {
        if (tok.size() < 3) fail("factor: expected name and kind");
        if (tok[2] == "free") {
          factors.push_back(FactorSpec::free_generator(tok[1]));
        } else if (tok[2] == "finite") {
          if (tok.size() < 4) fail("factor finite: expected order");
          std::uint32_t order = std::uint32_t(std::stoul(tok[3]));
          if (tok.size() != 4 + std::size_t(order) * order)
            fail("factor " + tok[1] + ": expected " +
                 std::to_string(std::size_t(order) * order) + " table entries");
          std::vector<std::uint32_t> table;
          for (std::size_t i = 4; i < tok.size(); ++i)
            table.push_back(std::uint32_t(std::stoul(tok[i])));
          try {
            factors.push_back(FactorSpec::finite_group(tok[1], order, std::move(table)));
          } catch (const input_error& e) {
            fail(e.what());
          }
        } else {
          fail("factor kind must be 'free' or 'finite'");
        }
      } else if (tok[0] == "relator") {
        if (tok.size() < 3) fail("relator: expected power and syllables");
        pending.push_back({std::uint32_t(std::stoul(tok[1])),
                           {tok.begin() + 2, tok.end()}, lineno});
      } else if (tok[0] == "lambda") {
        if (tok.size() != 2) fail("lambda: expected one rational");
        pres.lambda = Rational::parse(tok[1]);
      } else if (tok[0] == "subgroup") {
        if (tok.size() != 4 || tok[2] != "depth") fail("subgroup: expected name, depth D");
        blocks.push_back(SubgroupBlock{});
        blocks.back().name = tok[1];
        blocks.back().depth = std::uint32_t(std::stoul(tok[3]));
        if (blocks.back().depth < 1) fail("subgroup depth must be >= 1");
        open_block = &blocks.back();
      } else if (tok[0] == "gen") {
        if (!open_block) fail("gen outside subgroup block");
        block_gens.push_back({{tok.begin() + 1, tok.end()}, lineno});
        open_block->generators.push_back(Word{});  // placeholder, filled below
      } else if (tok[0] == "stab") {
        if (!open_block) fail("stab outside subgroup block");
        if (tok.size() == 3 && tok[1] == "cone")
          open_block->stabilizers.push_back({"cone", tok[2]});
        else if (tok.size() == 3 && tok[1] == "v")
          open_block->stabilizers.push_back({"v", tok[2]});
        else
          fail("stab: expected 'cone <factor>' or 'v <vertex>'");
      } else if (tok[0] == "end") {
        if (!open_block) fail("end outside subgroup block");
        open_block = nullptr;
      } else {
        fail("unknown directive '" + tok[0] + "'");
      }
    }
    if (open_block) throw input_error(origin + ": unterminated subgroup block");
    if (!header_seen) throw input_error(origin + ": missing 'presentation v1' header");
    pres.alphabet = Alphabet(std::move(factors));
    for (const auto& pr : pending) {
      lineno = pr.line;
      Word raw = parse_word(pres.alphabet, pr.tokens, origin, pr.line);
      if (!pres.alphabet.is_normal(raw))
        fail("relator is not in normal form: " +
             pres.alphabet.word_str(pres.alphabet.normalize(raw.syls)));
      try {
        pres.add_relator(raw, pr.power);
      } catch (const input_error& e) {
        fail(e.what());
      }
    }
    std::size_t gi = 0;
    for (auto& b : blocks)
      for (auto& g : b.generators) {
        g = pres.alphabet.normalize(
            parse_word(pres.alphabet, block_gens[gi].first, origin,
                       block_gens[gi].second)
                .syls);
        ++gi;
      }
    pres.subgroups = std::move(blocks);
    return pres;
  }

  static Word parse_word(const Alphabet& alph, const std::vector<std::string>& tokens,
                         const std::string& origin, int lineno) {
    std::vector<Syllable> syls;
    for (const std::string& tok : tokens) {
      syls.push_back(parse_syllable(alph, tok, origin, lineno));
    }
    // raw sequence; callers normalize or check normality as appropriate
    return Word{std::move(syls)};
  }

  static Syllable parse_syllable(const Alphabet& alph, const std::string& tok,
                                 const std::string& origin, int lineno) {
    auto fail = [&](const std::string& msg) -> Syllable {
      throw input_error(origin + ":" + std::to_string(lineno) + ": " + msg);
    };
    // free with exponent: name^int
    auto caret = tok.find('^');
    std::string name = caret == std::string::npos ? tok : tok.substr(0, caret);
    // finite element: trailing digits on the name
    std::size_t d = name.size();
    while (d > 0 && std::isdigit(static_cast<unsigned char>(name[d - 1]))) --d;
    if (d < name.size() && caret == std::string::npos) {
      std::string base = name.substr(0, d);
      auto f = alph.factor_id(base);
      if (!f) return fail("unknown factor '" + base + "' in syllable '" + tok + "'");
      if (alph.factor(*f).kind != FactorSpec::Kind::FiniteGroup)
        return fail("factor '" + base + "' is free; use exponent syntax");
      std::int32_t idx = std::int32_t(std::stol(name.substr(d)));
      if (idx <= 0 || std::uint32_t(idx) >= alph.factor(*f).order)
        return fail("element index out of range in '" + tok + "'");
      return Syllable{*f, idx};
    }
    auto f = alph.factor_id(name);
    if (!f) return fail("unknown factor '" + name + "' in syllable '" + tok + "'");
    if (alph.factor(*f).kind != FactorSpec::Kind::FreeGenerator)
      return fail("factor '" + name + "' is finite; use element-index syntax");
    std::int32_t exp = 1;
    if (caret != std::string::npos) exp = std::int32_t(std::stol(tok.substr(caret + 1)));
    if (exp == 0) return fail("zero exponent in '" + tok + "'");
    return Syllable{*f, exp};
  }
};

}  // namespace smc

#endif  // SMC_PRESENTATION_HPP
