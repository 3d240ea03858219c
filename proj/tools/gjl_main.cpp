// Command-line front end for the library: parsing, model evaluation and
// classification, proof checking and transformation, and the propositional
// decision procedure. Every command is a pure input -> output mapping;
// identical inputs give byte-identical outputs.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gjl/gjl.hpp"

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gjl::io_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

gjl::Calculus calculus_from(const std::string& name) {
  auto c = gjl::parse_calculus(name);
  if (!c) throw gjl::io_error("unknown calculus: " + name + " (use g, gj, gjt, gj4, glp, gj45, gjt45)");
  return *c;
}

gjl::ConstantSpec cs_from(const std::string& spec, gjl::Calculus calc) {
  if (spec == "total") return gjl::ConstantSpec::total(calc);
  if (spec == "none") return gjl::ConstantSpec::none(calc);
  return gjl::ConstantSpec::extensional(calc, gjl::read_formula_lines(slurp(spec)));
}

unsigned atom_cap_from(unsigned flag_value, bool flag_set) {
  if (flag_set) return flag_value;
  if (const char* env = std::getenv("GJL_ATOM_CAP")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    throw gjl::io_error("GJL_ATOM_CAP is not a positive integer");
  }
  return gjl::kDefaultAtomCap;
}

gjl::ConsequenceQuery build_query(const std::vector<std::string>& premises,
                                  const std::string& premises_file, const std::string& goal,
                                  const std::string& mode) {
  gjl::ConsequenceQuery q;
  for (const auto& p : premises) q.premises.push_back(gjl::parse_star_formula(p));
  if (!premises_file.empty())
    for (const auto& f : gjl::read_formula_lines(slurp(premises_file)))
      q.premises.push_back(gjl::star(f));
  q.goal = gjl::parse_star_formula(goal);
  if (mode == "leq")
    q.mode = gjl::EntailMode::Leq;
  else if (mode == "one")
    q.mode = gjl::EntailMode::One;
  else
    throw gjl::io_error("unknown mode: " + mode + " (use one or leq)");
  return q;
}

json closure_json(const std::vector<gjl::ClosureViolation>& violations) {
  json arr = json::array();
  for (const auto& v : violations) {
    json item;
    item["condition"] = v.condition;
    item["t"] = gjl::print_term(v.t);
    item["s"] = gjl::print_term(v.s);
    item["phi"] = gjl::print_formula(v.phi);
    if (v.psi) item["psi"] = gjl::print_formula(v.psi);
    if (!v.world.empty()) item["world"] = v.world;
    item["lhs"] = v.lhs.str();
    item["rhs"] = v.rhs.str();
    arr.push_back(item);
  }
  return arr;
}

void print_closure_lines(std::ostream& out, const std::vector<gjl::ClosureViolation>& violations) {
  for (const auto& v : violations) {
    out << "violation (" << (v.condition == 1 ? "application" : "sum") << ") t=" << gjl::print_term(v.t)
        << " s=" << gjl::print_term(v.s) << " phi=" << gjl::print_formula(v.phi);
    if (v.psi) out << " psi=" << gjl::print_formula(v.psi);
    if (!v.world.empty()) out << " world=" << v.world;
    out << ": " << v.lhs.str() << " > " << v.rhs.str() << '\n';
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Goedel justification logic toolkit"};
  app.require_subcommand(1);

  std::string format = "lines";
  app.add_option("--format", format, "Output format: lines or json")->envname("GJL_FORMAT");

  // parse ----------------------------------------------------------------
  auto* cmd_parse = app.add_subcommand("parse", "Parse formulas and print them canonically");
  std::string parse_formula_text, parse_file;
  cmd_parse->add_option("--formula", parse_formula_text, "Formula text");
  cmd_parse->add_option("--file", parse_file, "File with one formula per line");

  // eval-model -------------------------------------------------------------
  auto* cmd_eval = app.add_subcommand("eval-model", "Evaluate a formula at a world of a model");
  std::string eval_model_path, eval_world, eval_formula;
  bool eval_box_flag = false;
  cmd_eval->add_option("model", eval_model_path, "Model file")->required();
  cmd_eval->add_option("--world", eval_world, "World id")->required();
  cmd_eval->add_option("--formula", eval_formula, "Formula")->required();
  cmd_eval->add_flag("--box", eval_box_flag, "Evaluate the necessity value of the formula instead");

  // eval-mkrtychev ---------------------------------------------------------
  auto* cmd_evalm = app.add_subcommand("eval-mkrtychev", "Evaluate a formula in a world-free model");
  std::string evalm_model_path, evalm_formula;
  cmd_evalm->add_option("model", evalm_model_path, "Model file")->required();
  cmd_evalm->add_option("--formula", evalm_formula, "Formula")->required();

  // check-model ------------------------------------------------------------
  auto* cmd_check = app.add_subcommand("check-model", "Check closure conditions and CS respect");
  std::string check_model_path, check_cs = "", check_calc = "gj";
  bool check_mk = false;
  cmd_check->add_option("model", check_model_path, "Model file")->required();
  cmd_check->add_flag("--mkrtychev", check_mk, "Treat the file as a world-free model");
  cmd_check->add_option("--cs", check_cs, "Constant specification: total, none or a file");
  cmd_check->add_option("--calculus", check_calc, "Calculus the specification refers to");

  // classify ----------------------------------------------------------------
  auto* cmd_classify = app.add_subcommand("classify", "Report the model classes a model belongs to");
  std::string classify_path;
  bool classify_mk = false;
  cmd_classify->add_option("model", classify_path, "Model file")->required();
  cmd_classify->add_flag("--mkrtychev", classify_mk, "Treat the file as a world-free model");

  // check-proof --------------------------------------------------------------
  auto* cmd_proof = app.add_subcommand("check-proof", "Check a derivation file");
  std::string proof_path, proof_calc = "gj", proof_cs = "none";
  cmd_proof->add_option("proof", proof_path, "Derivation file")->required();
  cmd_proof->add_option("--calculus", proof_calc, "Calculus: g, gj, gjt, gj4, glp, gj45, gjt45");
  cmd_proof->add_option("--cs", proof_cs, "Constant specification: total, none or a file");

  // deduce --------------------------------------------------------------------
  auto* cmd_deduce = app.add_subcommand("deduce", "Apply the deduction transformation");
  std::string deduce_path, deduce_calc = "gj", deduce_cs = "none", deduce_alpha;
  cmd_deduce->add_option("proof", deduce_path, "Derivation file")->required();
  cmd_deduce->add_option("--calculus", deduce_calc, "Calculus");
  cmd_deduce->add_option("--cs", deduce_cs, "Constant specification");
  cmd_deduce->add_option("--discharge", deduce_alpha, "Premise to discharge")->required();

  // lift ----------------------------------------------------------------------
  auto* cmd_lift = app.add_subcommand("lift", "Internalize a derivation into a justification term");
  std::string lift_path, lift_calc = "gj", lift_cs = "total";
  std::vector<std::string> lift_terms;
  cmd_lift->add_option("proof", lift_path, "Derivation file")->required();
  cmd_lift->add_option("--calculus", lift_calc, "Calculus");
  cmd_lift->add_option("--cs", lift_cs, "Constant specification");
  cmd_lift->add_option("--term", lift_terms, "Justification term per premise, in order");

  // translate ------------------------------------------------------------------
  auto* cmd_translate = app.add_subcommand("translate", "Translate a derivation into the propositional calculus");
  std::string trans_path, trans_calc = "gj", trans_cs = "none";
  cmd_translate->add_option("proof", trans_path, "Derivation file")->required();
  cmd_translate->add_option("--calculus", trans_calc, "Calculus");
  cmd_translate->add_option("--cs", trans_cs, "Constant specification");

  // decide ------------------------------------------------------------------
  auto* cmd_decide = app.add_subcommand("decide", "Decide propositional consequence");
  std::vector<std::string> decide_premises;
  std::string decide_premises_file, decide_goal, decide_mode = "one";
  unsigned decide_cap = gjl::kDefaultAtomCap;
  cmd_decide->add_option("--premise", decide_premises, "Premise formula (repeatable)");
  cmd_decide->add_option("--premises-file", decide_premises_file, "File with one premise per line");
  cmd_decide->add_option("--goal", decide_goal, "Goal formula")->required();
  cmd_decide->add_option("--mode", decide_mode, "one (preserve value 1) or leq (value dominance)");
  auto* decide_cap_opt = cmd_decide->add_option("--atom-cap", decide_cap, "Maximum distinct atoms");

  // countermodel ----------------------------------------------------------------
  auto* cmd_counter = app.add_subcommand("countermodel",
                                         "Build the single-world refutation model for a failed query");
  std::vector<std::string> counter_premises;
  std::string counter_premises_file, counter_goal, counter_mode = "one", counter_kind = "gj";
  unsigned counter_cap = gjl::kDefaultAtomCap;
  cmd_counter->add_option("--premise", counter_premises, "Premise formula (repeatable)");
  cmd_counter->add_option("--premises-file", counter_premises_file, "File with one premise per line");
  cmd_counter->add_option("--goal", counter_goal, "Goal formula")->required();
  cmd_counter->add_option("--mode", counter_mode, "one or leq");
  cmd_counter->add_option("--kind", counter_kind, "gj (possible-world) or gm (world-free)");
  auto* counter_cap_opt = cmd_counter->add_option("--atom-cap", counter_cap, "Maximum distinct atoms");

  // truth-lemma ----------------------------------------------------------------
  auto* cmd_truth = app.add_subcommand("truth-lemma",
                                       "Compare fragment evaluation with assignment values");
  std::vector<std::string> truth_assignments;
  std::string truth_theorems;
  std::vector<std::string> truth_formulas;
  cmd_truth->add_option("--assignment", truth_assignments, "Assignment file (repeatable)")->required();
  cmd_truth->add_option("--theorems", truth_theorems, "File of theorem formulas to validate against");
  cmd_truth->add_option("--formula", truth_formulas, "Formula to check (repeatable)")->required();

  CLI11_PARSE(app, argc, argv);
  const bool as_json = format == "json";
  if (!as_json && format != "lines") {
    std::cerr << "error: unknown format '" << format << "'\n";
    return 2;
  }

  try {
    if (*cmd_parse) {
      std::vector<gjl::FormulaPtr> formulas;
      if (!parse_formula_text.empty()) formulas.push_back(gjl::parse_formula(parse_formula_text));
      if (!parse_file.empty())
        for (const auto& f : gjl::read_formula_lines(slurp(parse_file))) formulas.push_back(f);
      if (formulas.empty()) throw gjl::io_error("nothing to parse; give --formula or --file");
      if (as_json) {
        json arr = json::array();
        for (const auto& f : formulas) arr.push_back(gjl::print_formula(f));
        std::cout << arr.dump(2) << '\n';
      } else {
        for (const auto& f : formulas) std::cout << gjl::print_formula(f) << '\n';
      }
      return 0;
    }

    if (*cmd_eval) {
      const gjl::GJModel m = gjl::read_gj_model(slurp(eval_model_path));
      const gjl::FormulaPtr f = gjl::parse_formula(eval_formula);
      const gjl::Value v = eval_box_flag ? gjl::eval_box(m, eval_world, f)
                                         : gjl::eval_world(m, eval_world, f);
      if (as_json)
        std::cout << json{{"value", v.str()}}.dump(2) << '\n';
      else
        std::cout << v.str() << '\n';
      return 0;
    }

    if (*cmd_evalm) {
      const gjl::GMModel m = gjl::read_gm_model(slurp(evalm_model_path));
      const gjl::Value v = gjl::eval_m(m, gjl::parse_formula(evalm_formula));
      if (as_json)
        std::cout << json{{"value", v.str()}}.dump(2) << '\n';
      else
        std::cout << v.str() << '\n';
      return 0;
    }

    if (*cmd_check) {
      std::vector<gjl::ClosureViolation> violations;
      gjl::CsRespect respect;
      bool checked_cs = false;
      if (check_mk) {
        const gjl::GMModel m = gjl::read_gm_model(slurp(check_model_path));
        violations = gjl::check_closure_m(m);
        if (!check_cs.empty()) {
          respect = gjl::respects_cs_m(m, cs_from(check_cs, calculus_from(check_calc)));
          checked_cs = true;
        }
      } else {
        const gjl::GJModel m = gjl::read_gj_model(slurp(check_model_path));
        violations = gjl::check_closure(m);
        if (!check_cs.empty()) {
          respect = gjl::respects_cs(m, cs_from(check_cs, calculus_from(check_calc)));
          checked_cs = true;
        }
      }
      const bool bad = !violations.empty() || (checked_cs && !respect.respected);
      if (as_json) {
        json out;
        out["closure_violations"] = closure_json(violations);
        if (checked_cs) {
          out["cs_respected"] = respect.respected;
          json vs = json::array();
          for (const auto& v : respect.violations) {
            json item{{"member", gjl::print_formula(v.member)}, {"value", v.value.str()}};
            if (!v.world.empty()) item["world"] = v.world;
            vs.push_back(item);
          }
          out["cs_violations"] = vs;
          json uv = json::array();
          for (const auto& u : respect.unverifiable) uv.push_back(gjl::print_formula(u));
          out["cs_unverifiable"] = uv;
        }
        std::cout << out.dump(2) << '\n';
      } else {
        print_closure_lines(std::cout, violations);
        if (checked_cs) {
          for (const auto& v : respect.violations) {
            std::cout << "cs violation: " << gjl::print_formula(v.member);
            if (!v.world.empty()) std::cout << " at " << v.world;
            std::cout << " has evidence " << v.value.str() << '\n';
          }
          for (const auto& u : respect.unverifiable)
            std::cout << "cs unverifiable (outside signature): " << gjl::print_formula(u) << '\n';
        }
        std::cout << (bad ? "INVALID" : "OK") << '\n';
      }
      return bad ? 1 : 0;
    }

    if (*cmd_classify) {
      std::vector<std::string> classes;
      bool crisp = false, has_crisp = false;
      if (classify_mk) {
        const gjl::GMModel m = gjl::read_gm_model(slurp(classify_path));
        for (gjl::MkClass c : gjl::classify_m(m)) classes.push_back(gjl::mk_class_name(c));
      } else {
        const gjl::GJModel m = gjl::read_gj_model(slurp(classify_path));
        const gjl::Classification res = gjl::classify(m);
        for (gjl::ModelClass c : res.classes) classes.push_back(gjl::model_class_name(c));
        crisp = res.crisp;
        has_crisp = true;
      }
      if (as_json) {
        json out{{"classes", classes}};
        if (has_crisp) out["crisp"] = crisp;
        std::cout << out.dump(2) << '\n';
      } else {
        for (const auto& c : classes) std::cout << c << '\n';
        if (has_crisp) std::cout << "crisp: " << (crisp ? "yes" : "no") << '\n';
      }
      return 0;
    }

    if (*cmd_proof) {
      const gjl::Calculus calc = calculus_from(proof_calc);
      const gjl::Derivation d =
          gjl::read_derivation(slurp(proof_path), calc, cs_from(proof_cs, calc));
      json schemas = json::array();
      for (std::size_t i = 0; i < d.steps.size(); ++i) {
        if (d.steps[i].rule != gjl::StepRule::Axiom) continue;
        if (auto m = gjl::match_axiom(d.steps[i].formula, calc)) {
          if (as_json)
            schemas.push_back({{"step", i + 1}, {"schema", gjl::schema_name(m->schema)}});
          else
            std::cout << "step " << i + 1 << ": axiom " << gjl::schema_name(m->schema) << '\n';
        }
      }
      const auto failure = gjl::check_derivation(d);
      if (as_json) {
        json out{{"ok", !failure.has_value()}, {"steps", d.steps.size()}, {"axioms", schemas}};
        if (failure) {
          out["failed_step"] = failure->step + 1;
          out["reason"] = failure->reason;
        }
        std::cout << out.dump(2) << '\n';
      } else if (failure) {
        std::cout << "REJECTED at step " << failure->step + 1 << ": " << failure->reason << '\n';
      } else {
        std::cout << "OK (" << d.steps.size() << " steps)\n";
      }
      return failure ? 1 : 0;
    }

    if (*cmd_deduce) {
      const gjl::Calculus calc = calculus_from(deduce_calc);
      const gjl::Derivation d =
          gjl::read_derivation(slurp(deduce_path), calc, cs_from(deduce_cs, calc));
      const gjl::Derivation out = gjl::deduction_transform(d, gjl::parse_formula(deduce_alpha));
      std::cout << gjl::write_derivation(out);
      return 0;
    }

    if (*cmd_lift) {
      const gjl::Calculus calc = calculus_from(lift_calc);
      const gjl::Derivation d = gjl::read_derivation(slurp(lift_path), calc, cs_from(lift_cs, calc));
      std::vector<gjl::TermPtr> terms;
      for (const auto& t : lift_terms) terms.push_back(gjl::parse_term(t));
      const gjl::LiftResult res = gjl::lift(d, terms);
      if (as_json) {
        std::cout << json{{"term", gjl::print_term(res.term)},
                          {"derivation", gjl::write_derivation(res.derivation)}}
                         .dump(2)
                  << '\n';
      } else {
        std::cout << "term: " << gjl::print_term(res.term) << '\n';
        std::cout << gjl::write_derivation(res.derivation);
      }
      return 0;
    }

    if (*cmd_translate) {
      const gjl::Calculus calc = calculus_from(trans_calc);
      const gjl::Derivation d = gjl::read_derivation(slurp(trans_path), calc, cs_from(trans_cs, calc));
      const gjl::TranslateResult res = gjl::translate_derivation(d);
      if (as_json) {
        json theorems = json::array();
        for (const auto& t : res.used_theorems) theorems.push_back(gjl::print_star(gjl::star(t)));
        std::cout << json{{"theorems", theorems},
                          {"derivation", gjl::write_derivation(res.propositional)}}
                         .dump(2)
                  << '\n';
      } else {
        std::cout << "theorems:\n";
        for (const auto& t : res.used_theorems) std::cout << gjl::print_star(gjl::star(t)) << '\n';
        std::cout << "steps:\n";
        std::cout << gjl::write_derivation(res.propositional);
      }
      return 0;
    }

    if (*cmd_decide) {
      const gjl::ConsequenceQuery q =
          build_query(decide_premises, decide_premises_file, decide_goal, decide_mode);
      const unsigned cap = atom_cap_from(decide_cap, decide_cap_opt->count() > 0);
      const gjl::DecideResult res = gjl::decide_consequence(q, cap);
      if (as_json) {
        json out{{"valid", res.valid}};
        if (res.countermodel) {
          json cm;
          for (const auto& [atom, v] : res.countermodel->entries())
            cm[gjl::print_atom(atom)] = v.str();
          out["countermodel"] = cm;
        }
        std::cout << out.dump(2) << '\n';
      } else if (res.valid) {
        std::cout << "valid\n";
      } else {
        for (const auto& [atom, v] : res.countermodel->entries())
          std::cout << gjl::print_atom(atom) << " -> " << v.str() << '\n';
      }
      return res.valid ? 0 : 1;
    }

    if (*cmd_counter) {
      const gjl::ConsequenceQuery q =
          build_query(counter_premises, counter_premises_file, counter_goal, counter_mode);
      const unsigned cap = atom_cap_from(counter_cap, counter_cap_opt->count() > 0);
      const gjl::DecideResult res = gjl::decide_consequence(q, cap);
      if (res.valid) {
        std::cout << "valid\n";
        return 0;
      }
      if (counter_kind == "gj") {
        std::cout << gjl::write_gj_model(gjl::conservativity_countermodel(*res.countermodel));
      } else if (counter_kind == "gm") {
        std::cout << gjl::write_gm_model(gjl::conservativity_countermodel_m(*res.countermodel));
      } else {
        throw gjl::io_error("unknown kind: " + counter_kind + " (use gj or gm)");
      }
      return 1;
    }

    if (*cmd_truth) {
      std::vector<gjl::Assignment> assignments;
      for (const auto& path : truth_assignments)
        assignments.push_back(gjl::read_assignment(slurp(path)));
      std::vector<gjl::StarFormulaPtr> theorems;
      if (!truth_theorems.empty())
        for (const auto& f : gjl::read_formula_lines(slurp(truth_theorems)))
          theorems.push_back(gjl::star(f));
      const gjl::CanonicalFragment frag = gjl::build_fragment(assignments, theorems);
      bool all_ok = true;
      json rows = json::array();
      for (const auto& text : truth_formulas) {
        const gjl::FormulaPtr f = gjl::parse_formula(text);
        for (std::size_t w = 0; w < frag.evaluations.size(); ++w) {
          const bool ok = gjl::truth_lemma_check(frag, w, f);
          all_ok = all_ok && ok;
          if (as_json)
            rows.push_back({{"world", frag.model.worlds()[w]},
                            {"formula", gjl::print_formula(f)},
                            {"equal", ok}});
          else
            std::cout << frag.model.worlds()[w] << ' ' << gjl::print_formula(f) << ' '
                      << (ok ? "equal" : "DIFFERENT") << '\n';
        }
      }
      if (as_json) std::cout << json{{"ok", all_ok}, {"checks", rows}}.dump(2) << '\n';
      return all_ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
