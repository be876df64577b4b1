// JSON-lines trace records for reduction runs and certification reports.
// Records are emitted with a fixed key order so identical jobs produce
// byte-identical traces.
#ifndef SMC_TRACE_HPP
#define SMC_TRACE_HPP

#include <string>

#include "json.hpp"
#include "smc/perimeter.hpp"
#include "smc/quasiconvexity.hpp"

namespace smc {

using ojson = nlohmann::ordered_json;

inline ojson certificate_json(std::size_t step, const StepCertificate& cert) {
  ojson j;
  j["step"] = step;
  j["face"] = cert.face;
  j["boundary_raw"] = cert.boundary_raw;
  j["q_len"] = cert.q_len;
  j["s_len"] = cert.s_len;
  j["pieces"] = cert.piece_lengths;
  j["perimeter_before"] = cert.perimeter_before;
  j["perimeter_after"] = cert.perimeter_after;
  j["branch"] = cert.rotation_branch ? "rotation" : "estimate";
  j["skeleton_equal"] = cert.skeleton_equal;
  j["regime"] = regime_name(cert.regime);
  j["lambda"] = cert.lambda.str();
  j["thinness"] = cert.thinness;
  j["aut_order"] = cert.aut_order;
  j["aut_rotation"] = cert.aut_has_rotation;
  j["aut_reflection"] = cert.aut_has_reflection;
  j["p_s_trivial"] = cert.p_s_trivial;
  j["p_s_aut"] = cert.p_s_aut;
  j["sum_added"] = cert.sum_added;
  j["s_bound_strict"] = cert.s_bound_strict;
  j["enlargement_bound"] = cert.enlargement_bound;
  j["estimation_gate"] = cert.estimation_gate;
  j["inner_path_bound"] = cert.inner_path_bound;
  j["added_sides_bound"] = cert.added_sides_bound;
  j["strict_descent"] = cert.strict_descent;
  j["exact_stabilizers"] = cert.exact_stabilizers;
  ojson added = ojson::array();
  for (const AddedSidesEntry& e : cert.added) {
    ojson a;
    a["edge"] = e.edge;
    a["m_e"] = e.m_e;
    a["added"] = e.added;
    a["lower_bound_ok"] = e.lower_bound_ok;
    a["stab_edge"] = e.stab_edge;
    a["stab_face"] = e.stab_face;
    a["fix_face"] = e.fix_face;
    a["exact_formula_ok"] = e.exact_formula_ok;
    added.push_back(std::move(a));
  }
  j["added"] = std::move(added);
  return j;
}

inline std::string trace_jsonl(const ReduceResult& res) {
  std::string out;
  for (std::size_t i = 0; i < res.trace.size(); ++i) {
    out += certificate_json(i + 1, res.trace[i]).dump();
    out += '\n';
  }
  ojson tail;
  tail["result"] = res.complete ? "terminal" : "frontier-exhausted";
  tail["steps"] = res.trace.size();
  tail["note"] = res.frontier_note;
  out += tail.dump();
  out += '\n';
  return out;
}

inline ojson quasiconvexity_json(const QuasiconvexityReport& rep) {
  ojson j;
  j["pass"] = rep.pass;
  j["claimed_bound"] = rep.claimed_bound;
  j["max_offset_raw"] = rep.max_offset;
  j["pairs_checked"] = rep.pairs_checked;
  j["pairs_skipped_frontier"] = rep.pairs_skipped_frontier;
  j["radius"] = rep.radius;
  j["depth"] = rep.depth;
  return j;
}

}  // namespace smc

#endif  // SMC_TRACE_HPP
