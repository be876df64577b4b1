// Batch front end: verify -> build -> reduce -> certify -> fill orchestration
// with deterministic reports and the exit-code contract
//   0 success, 1 hypothesis-gate failure, 2 frontier/bound exhaustion,
//   3 input error.
#ifndef SMC_CLI_HPP
#define SMC_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "smc/ball.hpp"
#include "smc/census.hpp"
#include "smc/diagrams.hpp"
#include "smc/jobfile.hpp"
#include "smc/perimeter.hpp"
#include "smc/trace.hpp"

namespace smc::cli {

struct JobConfig {
  std::string input;
  std::string out;
  std::string terminal_out;
  std::string format = "text";
  std::uint32_t radius = 16;
  std::uint32_t depth = 4;
  bool depth_set = false;
  std::uint32_t area_cap = 4;
  std::string word;
  std::string subgroup;
  std::string base;
  std::uint64_t seed = 0;
  std::size_t pair_cap = 2000;
};

inline int workers_from_env() {
  const char* w = std::getenv("SMC_WORKERS");
  if (!w) return 1;
  int n = std::atoi(w);
  return n >= 1 ? n : 1;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write output file: " + path);
  out << text;
}

inline bool is_presentation_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    return kw == "presentation";
  }
  return false;
}

// --- verify -----------------------------------------------------------------

struct VerifyReport {
  std::string backend;
  Rational lambda{1, 6};
  bool metric_pass = false;
  std::size_t worst_piece = 0, worst_relator_len = 0;
  std::size_t thinness = 0;
  bool has_circumscription = false;
  std::size_t circumscription = 0;
  bool inversion_free = false;
  bool gate6 = false;   // 6 lambda M < 1
  bool gate3 = false;   // 3 lambda M < 1 with no inversions
  bool has_gate45 = false;
  bool gate45 = false;  // 3|r| < m (one-relator products)
  std::size_t gate45_lhs = 0, gate45_rhs = 0;
  bool pass = false;
};

inline ojson verify_json(const VerifyReport& r) {
  ojson j;
  j["backend"] = r.backend;
  j["lambda"] = r.lambda.str();
  j["metric_pass"] = r.metric_pass;
  j["worst_piece"] = r.worst_piece;
  j["worst_relator_len"] = r.worst_relator_len;
  j["thinness"] = r.thinness;
  j["circumscription"] = r.has_circumscription ? ojson(r.circumscription) : ojson(nullptr);
  j["inversion_free"] = r.inversion_free;
  j["gate_6lm"] = r.gate6;
  j["gate_3lm_no_inversions"] = r.gate3;
  if (r.has_gate45) {
    j["gate_3r_lt_m"] = r.gate45;
    j["gate_3r_lhs"] = r.gate45_lhs;
    j["gate_3r_rhs"] = r.gate45_rhs;
  }
  j["pass"] = r.pass;
  return j;
}

inline std::string verify_text(const VerifyReport& r) {
  std::ostringstream out;
  out << "backend: " << r.backend << "\n";
  out << "lambda: " << r.lambda.str() << "\n";
  out << "metric C'(lambda): " << (r.metric_pass ? "PASS" : "FAIL") << " (worst piece "
      << r.worst_piece << " on relator of length " << r.worst_relator_len << ")\n";
  out << "thinness M: " << r.thinness << "\n";
  out << "circumscription L: ";
  if (r.has_circumscription)
    out << r.circumscription << "\n";
  else
    out << "none\n";
  out << "acts without inversions: " << (r.inversion_free ? "yes" : "no") << "\n";
  out << "gate 6*lambda*M < 1: " << (r.gate6 ? "PASS" : "FAIL") << "\n";
  out << "gate 3*lambda*M < 1 (no inversions): " << (r.gate3 ? "PASS" : "FAIL") << "\n";
  if (r.has_gate45)
    out << "gate 3|r| < m: " << (r.gate45 ? "PASS" : "FAIL") << " (" << r.gate45_lhs
        << " vs " << r.gate45_rhs << ")\n";
  out << "verdict: " << (r.pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

inline VerifyReport verify_presentation(const Presentation& pres) {
  VerifyReport r;
  r.backend = pres.is_free_group() ? "cayley" : "coned";
  r.lambda = pres.lambda;
  MetricReport m = pres.metric(pres.lambda);
  r.metric_pass = m.pass;
  r.worst_piece = m.worst_piece_len;
  r.worst_relator_len = m.worst_relator_len;
  ThinnessCensus t = pres.thinness_census();
  r.thinness = t.bound;
  r.circumscription = pres.circumscription_bound();
  r.has_circumscription = !pres.relators.empty();
  r.inversion_free = pres.acts_without_inversions_on_skeleton();
  Rational lm = pres.lambda * Rational(std::int64_t(r.thinness));
  r.gate6 = Rational(6) * lm < Rational(1);
  r.gate3 = r.inversion_free && Rational(3) * lm < Rational(1);
  if (!pres.is_free_group() && pres.relators.size() == 1) {
    r.has_gate45 = true;
    r.gate45_lhs = 3 * pres.relators[0].root.syllable_count();
    r.gate45_rhs = pres.relators[0].power;
    r.gate45 = r.gate45_lhs < r.gate45_rhs;
  }
  r.pass = r.metric_pass && (r.gate6 || r.gate3);
  return r;
}

inline VerifyReport verify_explicit(const ExplicitJob& job) {
  VerifyReport r;
  r.backend = "explicit";
  r.lambda = job.lambda;
  const Complex& X = job.X;
  // geometric metric check per 2-cell
  r.metric_pass = true;
  for (std::uint32_t f = 0; f < X.face_count(); ++f) {
    std::size_t n = X.face(f).boundary.size();
    std::size_t worst = 0;
    for (std::uint32_t pos = 0; pos < n; ++pos) {
      std::uint32_t len = 0;
      while (len < n && X.is_piece_subpath(f, pos, len + 1)) ++len;
      worst = std::max<std::size_t>(worst, len);
    }
    if (!(Rational(std::int64_t(worst)) < job.lambda * Rational(std::int64_t(n))))
      r.metric_pass = false;
    if (worst >= r.worst_piece) {
      r.worst_piece = worst;
      r.worst_relator_len = n;
    }
  }
  r.thinness = X.thinness().value_or(0);
  auto L = X.circumscription();
  r.has_circumscription = L.has_value();
  r.circumscription = L.value_or(0);
  // inversions over the declared ambient group
  std::vector<CellPerm> gens;
  for (auto& [name, p] : job.auts) gens.push_back(p);
  ActionContext ctx = ActionContext::explicit_context(&X, gens);
  r.inversion_free = true;
  for (const CellPerm& h : ctx.ambient())
    for (std::uint32_t e = 0; e < X.edge_count() && r.inversion_free; ++e)
      if (h.oedge_img[oriented(e, false)] == oriented(e, true)) r.inversion_free = false;
  Rational lm = job.lambda * Rational(std::int64_t(r.thinness));
  r.gate6 = Rational(6) * lm < Rational(1);
  r.gate3 = r.inversion_free && Rational(3) * lm < Rational(1);
  r.pass = r.metric_pass && (r.gate6 || r.gate3);
  return r;
}

// --- subgroup resolution ------------------------------------------------------

inline SubgroupHandle resolve_subgroup_ball(const ActionContext& ctx, const GroupBall& ball,
                                            const SubgroupBlock& block) {
  SubgroupHandle H;
  H.depth = block.depth;
  for (const Word& w : block.generators) H.generators.push_back(ctx.element_from_word(w));
  for (auto& [kind, what] : block.stabilizers) {
    if (kind == "cone") {
      auto f = ball.presentation().alphabet.factor_id(what);
      if (!f) throw input_error("subgroup: unknown cone factor " + what);
      auto cone = ball.cone_at(0, *f);
      if (!cone) throw frontier_error("subgroup: cone vertex not in the ball");
      H.designated_vertices.push_back(*cone);
    } else if (kind == "v") {
      auto v = ball.complex().find_vertex(what);
      if (!v) throw input_error("subgroup: unknown vertex " + what);
      H.designated_vertices.push_back(*v);
    } else {
      throw input_error("subgroup: unknown stabilizer kind " + kind);
    }
  }
  return H;
}

inline SubgroupHandle resolve_subgroup_explicit(const ActionContext& ctx,
                                                const ExplicitJob& job,
                                                const JobSubgroup& block) {
  SubgroupHandle H;
  H.depth = block.depth;
  for (const std::string& name : block.generator_auts)
    H.generators.push_back(ctx.element_from_perm(job.aut(name)));
  for (auto& [kind, what] : block.stabilizers) {
    if (kind != "v") throw input_error("explicit subgroups designate vertices with 'v'");
    auto v = job.X.find_vertex(what);
    if (!v) throw input_error("subgroup: unknown vertex " + what);
    H.designated_vertices.push_back(*v);
  }
  return H;
}

// --- certify (parallel pair loop) ---------------------------------------------

inline QuasiconvexityReport certify_parallel(const Complex& X, const Subcomplex& Y,
                                             std::size_t bound_reported,
                                             std::size_t pair_cap, int workers) {
  if (workers <= 1) return certify_subcomplex_quasiconvex(X, Y, bound_reported, pair_cap);
  QuasiconvexityReport rep;
  rep.claimed_bound = bound_reported;
  rep.radius = X.radius;
  std::vector<std::uint32_t> yverts = Y.vertices();
  if (yverts.empty()) return rep;
  std::vector<std::uint32_t> from_y = bfs_distances(X, yverts);
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> pairs;
  for (std::size_t i = 0; i < yverts.size(); ++i) {
    std::vector<std::uint32_t> d = bfs_distances(X, {yverts[i]});
    for (std::size_t j = i; j < yverts.size(); ++j) {
      std::uint32_t dist = d[yverts[j]];
      if (dist == kUnreached) continue;
      if (X.backend != Backend::Explicit) {
        std::uint32_t near = std::min(X.vertex(yverts[i]).dist, X.vertex(yverts[j]).dist);
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
  struct Local {
    bool pass = true;
    std::size_t max_offset = 0, checked = 0, skipped = 0;
  };
  std::vector<Local> locals;
  locals.resize(std::size_t(workers));
  std::vector<std::thread> threads;
  for (int t = 0; t < workers; ++t) {
    threads.emplace_back([&, t]() {
      Local& loc = locals[std::size_t(t)];
      for (std::size_t i = std::size_t(t); i < pairs.size(); i += std::size_t(workers)) {
        auto [d, u, v] = pairs[i];
        auto q = distance(X, u, v);
        if (!q || !q->ball_sound) continue;
        ++loc.checked;
        for (std::uint32_t w : q->path_vertices) {
          loc.max_offset = std::max<std::size_t>(loc.max_offset, from_y[w]);
          if (from_y[w] > bound_raw) loc.pass = false;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  for (const Local& loc : locals) {
    rep.pass = rep.pass && loc.pass;
    rep.max_offset = std::max(rep.max_offset, loc.max_offset);
    rep.pairs_checked += loc.checked;
    rep.pairs_skipped_frontier += loc.skipped;
  }
  return rep;
}

// --- commands ------------------------------------------------------------------

inline int cmd_verify(const JobConfig& cfg) {
  std::string text = slurp(cfg.input);
  VerifyReport rep = is_presentation_text(text)
                         ? verify_presentation(PresentationParser::parse(text, cfg.input))
                         : verify_explicit(parse_explicit_job(text));
  std::string payload =
      cfg.format == "json" ? verify_json(rep).dump() + "\n" : verify_text(rep);
  if (cfg.out.empty())
    std::cout << payload;
  else
    write_file(cfg.out, payload);
  return rep.pass ? 0 : 1;
}

inline int cmd_build_coned_off(const JobConfig& cfg) {
  Presentation pres = PresentationParser::parse(slurp(cfg.input), cfg.input);
  GroupBall ball = GroupBall::build_coned(pres, cfg.radius);
  std::string payload = ball.complex().export_text();
  if (cfg.out.empty())
    std::cout << payload;
  else
    write_file(cfg.out, payload);
  return 0;
}

inline int cmd_reduce(const JobConfig& cfg) {
  std::string text = slurp(cfg.input);
  ReduceResult res;
  std::string terminal_payload;
  if (is_presentation_text(text)) {
    Presentation pres = PresentationParser::parse(text, cfg.input);
    GroupBall ball = pres.is_free_group() ? GroupBall::build_cayley(pres, cfg.radius)
                                          : GroupBall::build_coned(pres, cfg.radius);
    ActionContext ctx = ActionContext::ball_context(&ball);
    SubgroupHandle H;
    if (!pres.subgroups.empty() || !cfg.subgroup.empty()) {
      const SubgroupBlock* block = nullptr;
      for (const SubgroupBlock& b : pres.subgroups)
        if (cfg.subgroup.empty() || b.name == cfg.subgroup) {
          block = &b;
          break;
        }
      if (!block) throw input_error("unknown subgroup " + cfg.subgroup);
      H = resolve_subgroup_ball(ctx, ball, *block);
    }
    if (cfg.depth_set) H.depth = cfg.depth;
    std::uint32_t base = 0;
    if (!cfg.base.empty()) {
      auto v = ball.complex().find_vertex(cfg.base);
      if (!v) throw input_error("unknown base vertex " + cfg.base);
      base = *v;
    }
    CocompactSubcomplex Y0 = initial_subcomplex(ctx, H, base);
    res = reduce(ctx, H, Y0.core, params_for_ball(ball));
    terminal_payload =
        ball.complex().export_text() + export_subcomplex_section(res.terminal.Y);
  } else {
    ExplicitJob job = parse_explicit_job(text);
    std::vector<CellPerm> gens;
    for (auto& [name, p] : job.auts) gens.push_back(p);
    ActionContext ctx = ActionContext::explicit_context(&job.X, gens);
    SubgroupHandle H;
    if (!job.subgroups.empty() || !cfg.subgroup.empty()) {
      const JobSubgroup* block = nullptr;
      for (const JobSubgroup& b : job.subgroups)
        if (cfg.subgroup.empty() || b.name == cfg.subgroup) {
          block = &b;
          break;
        }
      if (!block) throw input_error("unknown subgroup " + cfg.subgroup);
      H = resolve_subgroup_explicit(ctx, job, *block);
    }
    if (cfg.depth_set) H.depth = cfg.depth;
    std::uint32_t base = 0;
    if (!cfg.base.empty()) {
      auto v = job.X.find_vertex(cfg.base);
      if (!v) throw input_error("unknown base vertex " + cfg.base);
      base = *v;
    }
    Subcomplex core = job.has_subcomplex ? job.subcomplex() : Subcomplex(&job.X);
    CocompactSubcomplex Y0 = job.has_subcomplex
                                 ? materialize(ctx, H, core)
                                 : initial_subcomplex(ctx, H, base);
    res = reduce(ctx, H, Y0.core, params_for_explicit(job.X, job.lambda));
    terminal_payload = job.X.export_text() + export_subcomplex_section(res.terminal.Y);
  }
  std::string payload = trace_jsonl(res);
  if (cfg.out.empty())
    std::cout << payload;
  else
    write_file(cfg.out, payload);
  if (!cfg.terminal_out.empty()) write_file(cfg.terminal_out, terminal_payload);
  if (!res.complete) {
    std::cerr << "reduce: " << res.frontier_note << " (increase --radius)\n";
    return 2;
  }
  return 0;
}

inline int cmd_certify(const JobConfig& cfg) {
  std::string text = slurp(cfg.input);
  if (is_presentation_text(text))
    throw input_error("certify expects a terminal complex+subcomplex file");
  ExplicitJob job = parse_explicit_job(text);
  if (!job.has_subcomplex)
    throw input_error("certify: input file has no subcomplex section");
  Subcomplex Y = job.subcomplex();
  auto L = job.X.circumscription();
  std::size_t bound = 3 * L.value_or(0);
  QuasiconvexityReport rep =
      certify_parallel(job.X, Y, bound, cfg.pair_cap, workers_from_env());
  if (cfg.depth_set) rep.depth = cfg.depth;
  ojson j = quasiconvexity_json(rep);
  j["seed"] = cfg.seed;
  std::string payload = cfg.format == "json"
                            ? j.dump() + "\n"
                            : ("claimed 3L: " + std::to_string(bound) +
                               "\nmax offset (raw edges): " + std::to_string(rep.max_offset) +
                               "\npairs checked: " + std::to_string(rep.pairs_checked) +
                               "\nverdict: " + (rep.pass ? "PASS" : "FAIL") + "\n");
  if (cfg.out.empty())
    std::cout << payload;
  else
    write_file(cfg.out, payload);
  return rep.pass ? 0 : 1;
}

inline int cmd_fill(const JobConfig& cfg) {
  Presentation pres = PresentationParser::parse(slurp(cfg.input), cfg.input);
  std::istringstream ws(cfg.word);
  std::vector<std::string> tokens;
  std::string tok;
  while (ws >> tok) tokens.push_back(tok);
  Word w = pres.alphabet.normalize(
      PresentationParser::parse_word(pres.alphabet, tokens, "<word>", 0).syls);
  FillResult r = fill(pres, w, cfg.area_cap);
  ojson j;
  j["status"] = r.status == FillStatus::Found
                    ? "found"
                    : r.status == FillStatus::Nontrivial ? "nontrivial" : "cap-exceeded";
  j["area"] = r.status == FillStatus::Found ? ojson(r.area) : ojson(nullptr);
  if (r.diagram) {
    DiagramCensus cs = census(*r.diagram);
    j["classification"] = diagram_class_name(cs.classification);
    j["spurs"] = cs.spur_edges.size();
    j["shells"] = cs.shells.size();
  }
  std::string payload =
      cfg.format == "json"
          ? j.dump() + "\n"
          : ("status: " + j["status"].get<std::string>() +
             (r.status == FillStatus::Found ? "\narea: " + std::to_string(r.area) : "") +
             "\n");
  if (cfg.out.empty())
    std::cout << payload;
  else
    write_file(cfg.out, payload);
  if (r.diagram && !cfg.terminal_out.empty())
    write_file(cfg.terminal_out, r.diagram->export_text());
  if (r.status == FillStatus::CapExceeded) return 2;
  return 0;
}

inline int run(int argc, const char* const* argv) {
  CLI::App app{"small-cancellation perimeter toolkit"};
  app.require_subcommand(1);
  JobConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "input file")->required();
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
    sub->add_option("--format", cfg.format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", cfg.seed, "sampling seed");
  };

  CLI::App* verify = app.add_subcommand("verify", "metric and hypothesis gates");
  add_common(verify);

  CLI::App* build = app.add_subcommand("build-coned-off", "build and export a coned-off ball");
  add_common(build);
  build->add_option("--radius", cfg.radius, "ball radius (raw edges)")
      ->check(CLI::PositiveNumber);

  CLI::App* red = app.add_subcommand("reduce", "perimeter reduction to a shell-free subcomplex");
  add_common(red);
  red->add_option("--radius", cfg.radius, "ball radius")->check(CLI::PositiveNumber);
  auto* dopt = red->add_option("--depth", cfg.depth, "subgroup ball depth")
                   ->check(CLI::PositiveNumber);
  red->add_option("--subgroup", cfg.subgroup, "subgroup block name");
  red->add_option("--base", cfg.base, "base vertex name");
  red->add_option("--terminal-out", cfg.terminal_out, "terminal subcomplex file");

  CLI::App* cert = app.add_subcommand("certify", "quasiconvexity certification");
  add_common(cert);
  cert->add_option("--pair-cap", cfg.pair_cap, "maximum vertex pairs");
  auto* cdopt = cert->add_option("--depth", cfg.depth, "subgroup depth for the report");

  CLI::App* fl = app.add_subcommand("fill", "search a van Kampen diagram");
  add_common(fl);
  fl->add_option("--word", cfg.word, "boundary word in syllable syntax")->required();
  fl->add_option("--area-cap", cfg.area_cap, "maximum area")->check(CLI::PositiveNumber);
  fl->add_option("--diagram-out", cfg.terminal_out, "diagram export file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 3;
  }
  cfg.depth_set = dopt->count() > 0 || cdopt->count() > 0;

  try {
    if (verify->parsed()) return cmd_verify(cfg);
    if (build->parsed()) return cmd_build_coned_off(cfg);
    if (red->parsed()) return cmd_reduce(cfg);
    if (cert->parsed()) return cmd_certify(cfg);
    if (fl->parsed()) return cmd_fill(cfg);
  } catch (const frontier_error& e) {
    std::cerr << "frontier: " << e.what() << "\n";
    return 2;
  } catch (const hypothesis_error& e) {
    std::cerr << "hypothesis gate: " << e.what() << "\n";
    return 1;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}

}  // namespace smc::cli

#endif  // SMC_CLI_HPP
