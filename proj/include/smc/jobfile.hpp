// Explicit-complex job files: a complex export followed by optional lambda,
// automorphism, subgroup, and subcomplex sections.
#ifndef SMC_JOBFILE_HPP
#define SMC_JOBFILE_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "smc/action.hpp"
#include "smc/complex.hpp"
#include "smc/presentation.hpp"
#include "smc/rational.hpp"

namespace smc {

struct JobSubgroup {
  std::string name;
  std::vector<std::string> generator_auts;  // explicit backend: automorphism names
  std::vector<Word> generator_words;        // ball backends
  std::vector<std::pair<std::string, std::string>> stabilizers;
  std::uint32_t depth = 4;
};

struct ExplicitJob {
  Complex X;
  Rational lambda{1, 6};
  std::vector<std::pair<std::string, CellPerm>> auts;
  std::vector<JobSubgroup> subgroups;
  // optional stored subcomplex (terminal outputs)
  bool has_subcomplex = false;
  std::vector<std::uint32_t> sub_vertices, sub_edges, sub_faces;

  const CellPerm& aut(const std::string& name) const {
    for (auto& [n, p] : auts)
      if (n == name) return p;
    throw input_error("job: unknown automorphism " + name);
  }

  Subcomplex subcomplex() const {
    Subcomplex Y(&X);
    for (std::uint32_t f : sub_faces) Y.add_face(f);
    for (std::uint32_t e : sub_edges) Y.add_edge(e);
    for (std::uint32_t v : sub_vertices) Y.add_vertex(v);
    return Y;
  }
};

inline ExplicitJob parse_explicit_job(const std::string& text) {
  ExplicitJob job;
  job.X = Complex::import_text(text);
  // scan the remainder after the complex 'end'
  std::istringstream in(text);
  std::string line;
  bool past_complex = false;
  int lineno = 0;
  JobSubgroup* open = nullptr;
  auto fail = [&](const std::string& m) {
    throw input_error("job:" + std::to_string(lineno) + ": " + m);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (!past_complex) {
      if (kw == "end") past_complex = true;
      continue;
    }
    if (kw == "lambda") {
      std::string v;
      ls >> v;
      job.lambda = Rational::parse(v);
    } else if (kw == "aut") {
      std::string name;
      ls >> name;
      std::vector<std::uint32_t> vmap;
      std::uint32_t img;
      while (ls >> img) vmap.push_back(img);
      auto perm = CellPerm::from_vertex_map(job.X, vmap);
      if (!perm) fail("aut " + name + ": not a cellular automorphism");
      job.auts.push_back({name, *perm});
    } else if (kw == "subgroup") {
      std::string name, kwd;
      std::uint32_t depth;
      if (!(ls >> name >> kwd >> depth) || kwd != "depth")
        fail("subgroup: expected '<name> depth <D>'");
      job.subgroups.push_back(JobSubgroup{});
      job.subgroups.back().name = name;
      job.subgroups.back().depth = depth;
      open = &job.subgroups.back();
    } else if (kw == "gen") {
      if (!open) fail("gen outside subgroup block");
      std::string name;
      std::vector<std::string> names;
      while (ls >> name) names.push_back(name);
      if (names.size() != 1) fail("explicit subgroup generators are automorphism names");
      open->generator_auts.push_back(names[0]);
    } else if (kw == "stab") {
      if (!open) fail("stab outside subgroup block");
      std::string kind, what;
      if (!(ls >> kind >> what)) fail("stab: expected kind and name");
      open->stabilizers.push_back({kind, what});
    } else if (kw == "endsub") {
      open = nullptr;
    } else if (kw == "subcomplex") {
      job.has_subcomplex = true;
    } else if (kw == "sv" || kw == "se" || kw == "sf") {
      std::uint32_t id;
      auto& dst = kw == "sv" ? job.sub_vertices : kw == "se" ? job.sub_edges : job.sub_faces;
      while (ls >> id) dst.push_back(id);
    } else {
      fail("unknown directive " + kw);
    }
  }
  return job;
}

inline ExplicitJob load_explicit_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open job file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_explicit_job(ss.str());
}

inline std::string export_subcomplex_section(const Subcomplex& Y) {
  std::ostringstream out;
  out << "subcomplex v1\n";
  out << "sv";
  for (std::uint32_t v : Y.vertices()) out << ' ' << v;
  out << "\nse";
  for (std::uint32_t e : Y.edges()) out << ' ' << e;
  out << "\nsf";
  for (std::uint32_t f : Y.faces()) out << ' ' << f;
  out << "\n";
  return out.str();
}

}  // namespace smc

#endif  // SMC_JOBFILE_HPP
