#pragma once

#include <chrono>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sectorbench/fixtures.hpp"
#include "sectorbench/scenario.hpp"

namespace sectorbench {

enum ExitCode : int { kExitPass = 0, kExitViolation = 2, kExitPrecondition = 3, kExitSchema = 4 };

struct RunOptions {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> checks;
  bool pretty = false;
};

struct RunOutcome {
  int exit_code = kExitPass;
  Json report;
  std::string summary;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> list = {"t-procedure", "superselect", "pipeline", "toy-model", "verify",
                                                "fixtures"};
  return list;
}

namespace detail {

struct RunContext {
  Scenario scenario;
  ToleranceContext ctx;
  std::uint64_t seed = 0;
};

inline Json tp_artifacts(const TProcedureResult& t) {
  return Json{{"N", subspace_to_json(t.N)},
              {"D", subspace_to_json(t.D.space)},
              {"P", projection_to_json(t.P)},
              {"O", subspace_to_json(t.O.space)},
              {"R", subspace_to_json(t.R.space)}};
}

inline Report run_t_procedure(const RunContext& rc) {
  const Json& p = rc.scenario.payload;
  Report rep;
  if (rc.scenario.kind == "t-procedure") {
    const StarAlgebra b = algebra_from_json(field(p, "algebra", "payload"), rc.ctx, "algebra");
    const auto c = matrices_from_json(field(p, "constraints", "payload"), "constraints");
    const ConstraintSystem cs = ConstraintSystem::make(b, c, rc.ctx);
    if (!first_class(cs, rc.ctx)) throw NotFirstClass("the constraints generate the identity");
    const TProcedureResult t = t_procedure(cs, rc.ctx, rc.seed + 17);
    rep.merge(t.report, "t-procedure");
    rep.artifacts["t-procedure"] = tp_artifacts(t);
    if (projection_rank(t.complement()) > 0) {
      const DiracStateFamily fam = dirac_states(t, cs);
      const MatElem rho = fam.sample();
      rep.check_residual("dirac-sample", "open-projection", fam.dirac_residual(rho), rc.ctx.eq_tol,
                         "sample state annihilates P and every c* c");
      rep.findings["dirac_states"] = true;
    } else {
      rep.findings["dirac_states"] = false;
    }
    if (p.contains("field_algebra")) {
      const StarAlgebra f = algebra_from_json(p["field_algebra"], rc.ctx, "field_algebra");
      if (b.space.containment_residual(f.space) > rc.ctx.eq_tol) {
        throw MembershipError("algebra is not contained in field_algebra");
      }
      rep.merge(relative_consistency(c, b, f, rc.ctx, true), "relative-consistency");
    }
    return rep;
  }
  if (rc.scenario.kind == "constrained") {
    const ConstrainedHilbertSystem chs = constrained_from_payload(p, rc.ctx);
    const TProcedureResult t = t_procedure(ConstraintSystem::make(chs.hs.A, chs.C, rc.ctx), rc.ctx, rc.seed + 17);
    rep.merge(t.report, "t-procedure");
    rep.artifacts["t-procedure"] = tp_artifacts(t);
    rep.merge(relative_consistency(chs.C, chs.hs.A, chs.hs.F, rc.ctx, true), "relative-consistency");
    return rep;
  }
  throw SchemaError("t-procedure needs a t-procedure or constrained scenario");
}

inline Report hilbert_checks(const HilbertSystem& hs, const std::optional<TwoCocycle>& omega, const RunContext& rc) {
  Report rep;
  rep.merge(verify_hilbert_system(hs, rc.ctx, rc.seed + 19), "axioms");
  rep.merge(verify_regularity(hs, rc.ctx, rc.seed + 23), "regularity");
  rep.merge(verify_canonical_automorphisms(hs, rc.ctx), "canonical");
  const MinimalityResult m = minimality(hs, rc.ctx);
  rep.merge(m.report, "minimality");
  if (omega) rep.merge(permutator_report(*omega, rc.ctx), "cocycle");
  Json conj = Json::object();
  for (const auto& [c, u] : hs.sectors) {
    const Conjugate cj = conjugate(hs, c);
    conj[hs.G.label(c)] = Json{{"conjugate", hs.G.label(cj.gamma_bar)}, {"residual", cj.residual}};
  }
  rep.findings["conjugates"] = std::move(conj);
  rep.findings["dim_F"] = hs.F.dim();
  rep.findings["dim_A"] = hs.A.dim();
  rep.findings["ambient"] = hs.ambient();
  return rep;
}

inline Report run_superselect(const RunContext& rc) {
  const Json& p = rc.scenario.payload;
  Report rep;
  if (rc.scenario.kind == "hilbert-system") {
    const CrossedProduct cp = hilbert_from_payload(p, rc.ctx);
    rep.merge(hilbert_checks(cp.hs, cp.omega, rc), "hilbert-system");
    return rep;
  }
  if (rc.scenario.kind == "constrained") {
    const ConstrainedHilbertSystem chs = constrained_from_payload(p, rc.ctx);
    const CrossedProduct cp = hilbert_from_payload(p, rc.ctx);
    rep.merge(hilbert_checks(chs.hs, cp.omega, rc), "hilbert-system");
    const RestrictionResult r = restrict(chs, rc.ctx);
    rep.merge(r.report, "restriction");
    Json verdicts = Json::object();
    for (const auto& [c, u] : chs.hs.sectors) verdicts[chs.hs.G.label(c)] = sector_compatibility(r, c, rc.ctx, &rep);
    rep.findings["sector_survival"] = std::move(verdicts);
    return rep;
  }
  if (rc.scenario.kind == "toy-gauge") {
    const ToyModel t = assemble(gauge_from_payload(p), rc.ctx, rc.seed + 41);
    rep.merge(t.report, "assembly");
    rep.merge(hilbert_checks(t.f_cp.hs, t.f_cp.omega, rc), "hilbert-system");
    return rep;
  }
  throw SchemaError("superselect needs a hilbert-system, constrained or toy-gauge scenario");
}

inline void merge_pipeline(Report& rep, const ConstrainedHilbertSystem& chs, const RunContext& rc) {
  PipelineResult pr = pipeline(chs, rc.ctx);
  rep.merge(pr.report, "pipeline");
  if (pr.sections.contains("final_system")) rep.findings["final_system"] = pr.sections["final_system"];
  rep.merge(e_constraint_check(chs, rc.ctx), "e-constraint");
}

inline Report run_pipeline(const RunContext& rc) {
  const Json& p = rc.scenario.payload;
  Report rep;
  if (rc.scenario.kind == "constrained") {
    merge_pipeline(rep, constrained_from_payload(p, rc.ctx), rc);
    return rep;
  }
  if (rc.scenario.kind == "toy-gauge") {
    const ToyModel t = assemble(gauge_from_payload(p), rc.ctx, rc.seed + 41);
    rep.merge(t.report, "assembly");
    merge_pipeline(rep, t.chs, rc);
    return rep;
  }
  throw SchemaError("pipeline needs a constrained or toy-gauge scenario");
}

inline Report run_toy(const RunContext& rc) {
  if (rc.scenario.kind != "toy-gauge") throw SchemaError("toy-model needs a toy-gauge scenario");
  const ToyModel t = assemble(gauge_from_payload(rc.scenario.payload), rc.ctx, rc.seed + 41);
  Report rep;
  rep.merge(t.report, "assembly");
  rep.merge(first_class_witness(t, rc.ctx).report, "witness");
  rep.merge(sector_family(t, rc.ctx).report, "sectors");
  for (int k = 0; k < std::max(t.scenario.charge_modulus, 1); ++k) {
    rep.merge(outerness(t, k, rc.ctx, rc.seed + 43).report, "outerness-" + std::to_string(k));
  }
  rep.merge(verify_hilbert_system(t.f_cp.hs, rc.ctx, rc.seed + 19), "field-axioms");
  merge_pipeline(rep, t.chs, rc);
  return rep;
}

/// The full suite for the scenario kind, plus the E-constraint check on every kind.
inline Report run_verify(const RunContext& rc) {
  const std::string& kind = rc.scenario.kind;
  Report rep;
  if (kind == "t-procedure") {
    rep.merge(run_t_procedure(rc), "t-procedure");
    const Json& p = rc.scenario.payload;
    const StarAlgebra b = algebra_from_json(field(p, "algebra", "payload"), rc.ctx, "algebra");
    const auto c = matrices_from_json(field(p, "constraints", "payload"), "constraints");
    const auto chs = ConstrainedHilbertSystem::make(trivial_system(b), c, rc.ctx);
    rep.merge(e_constraint_check(chs, rc.ctx), "e-constraint");
  } else if (kind == "hilbert-system") {
    rep.merge(run_superselect(rc), "superselect");
    const CrossedProduct cp = hilbert_from_payload(rc.scenario.payload, rc.ctx);
    rep.merge(e_constraint_check(ConstrainedHilbertSystem::make(cp.hs, {}, rc.ctx), rc.ctx), "e-constraint");
  } else if (kind == "constrained") {
    rep.merge(run_t_procedure(rc), "t-procedure");
    rep.merge(run_superselect(rc), "superselect");
    rep.merge(run_pipeline(rc), "pipeline");
  } else {
    rep.merge(run_toy(rc), "toy-model");
  }
  return rep;
}

inline bool is_precondition(const std::exception& e) {
  return dynamic_cast<const NotFirstClass*>(&e) || dynamic_cast<const NoDiracStates*>(&e) ||
         dynamic_cast<const RadicalViolation*>(&e) || dynamic_cast<const SizeGuard*>(&e) ||
         dynamic_cast<const MembershipError*>(&e) || dynamic_cast<const NotStarClosed*>(&e) ||
         dynamic_cast<const InvalidCocycle*>(&e) || dynamic_cast<const ActionNotAutomorphic*>(&e);
}

inline bool is_schema(const std::exception& e) {
  return dynamic_cast<const SchemaError*>(&e) || dynamic_cast<const DimensionMismatch*>(&e) ||
         dynamic_cast<const Json::exception*>(&e);
}

inline std::string error_type(const std::exception& e) {
  if (dynamic_cast<const InvariantViolation*>(&e)) return "InvariantViolation";
  if (dynamic_cast<const WitnessFailure*>(&e)) return "WitnessFailure";
  if (dynamic_cast<const NumericalBreakdown*>(&e)) return "NumericalBreakdown";
  if (dynamic_cast<const NotFirstClass*>(&e)) return "NotFirstClass";
  if (dynamic_cast<const NoDiracStates*>(&e)) return "NoDiracStates";
  if (dynamic_cast<const RadicalViolation*>(&e)) return "RadicalViolation";
  if (dynamic_cast<const SizeGuard*>(&e)) return "SizeGuard";
  if (dynamic_cast<const MembershipError*>(&e)) return "MembershipError";
  if (dynamic_cast<const NotStarClosed*>(&e)) return "NotStarClosed";
  if (dynamic_cast<const InvalidCocycle*>(&e)) return "InvalidCocycle";
  if (dynamic_cast<const ActionNotAutomorphic*>(&e)) return "ActionNotAutomorphic";
  if (dynamic_cast<const SchemaError*>(&e)) return "SchemaError";
  if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
  if (dynamic_cast<const Json::exception*>(&e)) return "JsonError";
  return "Error";
}

inline Report filter_checks(const Report& rep, const std::vector<std::string>& tags) {
  if (tags.empty()) return rep;
  const std::set<std::string> wanted(tags.begin(), tags.end());
  Report out;
  for (const auto& v : rep.verdicts()) {
    if (wanted.count(v.theorem_tag)) out.add(v);
  }
  out.findings = rep.findings;
  out.artifacts = rep.artifacts;
  return out;
}

inline std::string summarize(const std::string& command, const Json& report) {
  std::ostringstream os;
  os << command;
  if (report.contains("kind")) os << " [" << report["kind"].get<std::string>() << "]";
  if (report.contains("error")) {
    os << ": " << report["error"]["type"].get<std::string>() << ": " << report["error"]["message"].get<std::string>();
  }
  if (report.contains("verdicts")) {
    std::size_t passed = 0;
    for (const auto& v : report["verdicts"]) passed += v["pass"].get<bool>() ? 1 : 0;
    os << ": " << passed << "/" << report["verdicts"].size() << " checks passed";
    for (const auto& v : report["verdicts"]) {
      if (!v["pass"].get<bool>()) os << "\n  FAIL " << v["check_id"].get<std::string>() << " (" << v["theorem"].get<std::string>() << ")";
    }
  }
  os << " [exit " << report["exit_code"].get<int>() << "]";
  return os.str();
}

}  // namespace detail

/// Fixture names, descriptions and the check tags each one exercises.
inline Json fixtures_report() {
  Json list = Json::array();
  for (const auto& f : fixture_list()) {
    list.push_back(Json{{"name", f.name}, {"description", f.description}, {"exercises", f.exercises}});
  }
  return Json{{"command", "fixtures"}, {"pass", true}, {"fixtures", std::move(list)}, {"exit_code", 0}};
}

/// Runs one command on a parsed scenario document.
inline RunOutcome run_command(const std::string& command, const Json& document, const RunOptions& opts) {
  RunOutcome out;
  if (command == "fixtures") {
    out.report = fixtures_report();
    out.summary = "fixtures: " + std::to_string(fixture_list().size()) + " bundled scenarios";
    return out;
  }
  const auto start = std::chrono::steady_clock::now();
  Json& rep = out.report;
  rep["command"] = command;
  try {
    if (std::find(commands().begin(), commands().end(), command) == commands().end()) {
      throw SchemaError("unknown command \"" + command + "\"");
    }
    detail::RunContext rc;
    rc.scenario = parse_scenario(document);
    rc.ctx = rc.scenario.tolerances;
    if (opts.tol) {
      rc.ctx.eq_tol = *opts.tol;
      try {
        rc.ctx.validate();
      } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
      }
    }
    rc.seed = opts.seed.value_or(rc.scenario.seed);
    rep["kind"] = rc.scenario.kind;
    rep["seed"] = rc.seed;
    rep["tolerances"] = Json{{"rank_tol", rc.ctx.rank_tol}, {"eq_tol", rc.ctx.eq_tol}};
    Report result;
    if (command == "t-procedure") result = detail::run_t_procedure(rc);
    else if (command == "superselect") result = detail::run_superselect(rc);
    else if (command == "pipeline") result = detail::run_pipeline(rc);
    else if (command == "toy-model") result = detail::run_toy(rc);
    else result = detail::run_verify(rc);
    const Report shown = detail::filter_checks(result, opts.checks);
    const Json body = shown.to_json();
    for (const auto& [k, v] : body.items()) rep[k] = v;
    out.exit_code = shown.passed() ? kExitPass : kExitViolation;
  } catch (const InvariantViolation& e) {
    const Json body = detail::filter_checks(e.report(), opts.checks).to_json();
    for (const auto& [k, v] : body.items()) rep[k] = v;
    rep["pass"] = false;
    rep["error"] = Json{{"type", "InvariantViolation"}, {"message", e.what()}};
    out.exit_code = kExitViolation;
  } catch (const std::exception& e) {
    rep["pass"] = false;
    rep["error"] = Json{{"type", detail::error_type(e)}, {"message", e.what()}};
    if (detail::is_schema(e)) out.exit_code = kExitSchema;
    else if (detail::is_precondition(e)) out.exit_code = kExitPrecondition;
    else out.exit_code = kExitViolation;
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  rep["exit_code"] = out.exit_code;
  rep["timing"] = Json{{"elapsed_ms", elapsed}};
  out.summary = detail::summarize(command, rep);
  return out;
}

/// Reads and parses a scenario file; unreadable files and malformed JSON map to the schema exit code.
inline RunOutcome run_file(const std::string& command, const std::string& path, const RunOptions& opts) {
  if (command == "fixtures") return run_command(command, Json(), opts);
  std::ifstream in(path);
  Json document;
  std::string problem;
  if (!in) {
    problem = "cannot read " + path;
  } else {
    try {
      document = Json::parse(in);
    } catch (const Json::parse_error& e) {
      problem = std::string("malformed JSON: ") + e.what();
    }
  }
  if (problem.empty()) return run_command(command, document, opts);
  RunOutcome out;
  out.exit_code = kExitSchema;
  out.report = Json{{"command", command},
                    {"pass", false},
                    {"error", Json{{"type", "SchemaError"}, {"message", problem}}},
                    {"exit_code", kExitSchema},
                    {"timing", Json{{"elapsed_ms", 0.0}}}};
  out.summary = detail::summarize(command, out.report);
  return out;
}

/// Report text without the timing field, for byte-level comparison.
inline std::string stable_dump(Json report, bool pretty = false) {
  report.erase("timing");
  return report.dump(pretty ? 2 : -1);
}

}  // namespace sectorbench
