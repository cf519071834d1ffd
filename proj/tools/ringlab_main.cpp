#include <CLI11.hpp>

#include <iostream>
#include <memory>

#include "ringlab/json_io.hpp"

using namespace ringlab;

namespace {

constexpr int kExitOk = 0;        // property holds / all verifications pass
constexpr int kExitRefuted = 1;   // property refuted or verification failed
constexpr int kExitUsage = 2;     // usage, parse or lookup error
constexpr int kExitResource = 3;  // order cap, budget, or precondition
constexpr int kExitInternal = 70; // self-check failure (a bug, not an input)

struct CommonOpts {
  bool json = false;
  bool timings = false;
  std::uint64_t max_order = kDefaultOrderCap;
  std::uint64_t budget_ms = 120000;
  int threads = 1;
  std::uint64_t seed = 12345;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_flag("--json", o.json, "emit one JSON document instead of text");
  cmd->add_flag("--timings", o.timings,
                "include wall-time fields in JSON (off by default so identical "
                "invocations emit identical bytes)");
  cmd->add_option("--max-order", o.max_order, "largest allowed ring order")
      ->capture_default_str();
  cmd->add_option("--budget-ms", o.budget_ms, "wall-clock budget in ms, 0 = unlimited")
      ->capture_default_str();
  cmd->add_option("--threads", o.threads, "worker threads for sweeps")->capture_default_str();
  cmd->add_option("--seed", o.seed, "seed for sampled checks")->capture_default_str();
}

std::shared_ptr<const Budget> make_budget(const CommonOpts& o) {
  return o.budget_ms ? std::make_shared<const Budget>(o.budget_ms) : Budget::unlimited();
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

const char* yesno(bool b) { return b ? "yes" : "no"; }

std::string set_literal(const RingContext& ctx, const ElementSet& s, std::size_t limit = 16) {
  if (s.size() > limit) return "(" + std::to_string(s.size()) + " elements)";
  std::string out = "{";
  bool first = true;
  for (std::uint64_t i : s.indices()) {
    if (!first) out += ", ";
    out += ctx.from_index(i).to_string();
    first = false;
  }
  return out + "}";
}

int cmd_info(const std::string& spec_text, const CommonOpts& o) {
  RingContext ctx(parse_ring_spec(spec_text, o.max_order), o.max_order, make_budget(o));
  if (o.json) {
    emit(ring_info_json(ctx));
    return kExitOk;
  }
  auto& st = ctx.structure();
  std::cout << "ring " << ctx.spec().to_string() << ": order " << ctx.order()
            << ", characteristic " << ctx.characteristic() << "\n";
  std::cout << "units: " << st.units().size()
            << ", idempotents: " << st.idempotents().size() << "\n";
  std::cout << "J(R) (" << st.jacobson().size() << "): " << set_literal(ctx, st.jacobson())
            << "\n";
  std::cout << "local: " << yesno(st.is_local()) << ", abelian: " << yesno(st.is_abelian())
            << ", boolean mod J: " << yesno(st.is_boolean_mod_j()) << "\n";
  return kExitOk;
}

void print_witness_line(const WitnessResult& r, CleanProperty p) {
  if (r.holds || r.witness) {
    const auto rec = to_record(*r.witness);
    std::cout << (r.holds ? "yes" : "no ") << "  e=" << rec.idempotent << "  "
              << (rec.plus_sign ? "a+e=" : "a-e=") << rec.complement;
    if (property_counts_witnesses(p)) std::cout << "  admissible=" << r.witness_count;
    std::cout << "  [" << witness_hash(rec) << "]";
  } else {
    std::cout << "no   (no admissible idempotent)";
  }
  std::cout << "\n";
}

int cmd_classify(const std::string& spec_text, const std::string& element_text,
                 const std::string& property_name_text, const CommonOpts& o) {
  RingContext ctx(parse_ring_spec(spec_text, o.max_order), o.max_order, make_budget(o));
  Classifier cls(ctx);

  std::optional<CleanProperty> wanted;
  if (!property_name_text.empty()) {
    wanted = property_from_name(property_name_text);
    if (!wanted) throw ParseError("unknown property '" + property_name_text + "'", 0,
                                  "a property name such as perfectly-j-clean");
  }

  if (!element_text.empty()) {
    const Element a = ctx.parse_element(element_text);
    std::vector<std::pair<CleanProperty, WitnessResult>> results;
    if (wanted) {
      results.emplace_back(*wanted, cls.classify(a, *wanted));
    } else {
      for (CleanProperty p : all_properties()) results.emplace_back(p, cls.classify(a, p));
    }
    if (o.json) {
      emit(element_classification_json(ctx, a, results));
    } else {
      std::cout << "element " << a.to_string() << " (#" << a.index() << ") in "
                << ctx.spec().to_string() << "\n";
      for (const auto& [p, r] : results) {
        std::cout << "  " << property_name(p) << ": ";
        print_witness_line(r, p);
      }
    }
    if (wanted) return results.front().second.holds ? kExitOk : kExitRefuted;
    return kExitOk;
  }

  if (wanted) {
    const PropertyVerdict v = cls.ring_property(*wanted);
    if (o.json) {
      Json j;
      j["ring"] = ctx.spec().to_string();
      j["property"] = property_name(*wanted);
      j["verdict"] = property_verdict_json(v, o.timings);
      emit(j);
    } else {
      std::cout << ctx.spec().to_string() << " " << property_name(*wanted) << ": "
                << (v.holds ? "holds" : "fails");
      if (v.counterexample) std::cout << "  counterexample " << *v.counterexample;
      std::cout << "\n";
    }
    return v.holds ? kExitOk : kExitRefuted;
  }

  const PropertyReport report = cls.classify_ring();
  if (o.json) {
    emit(property_report_json(report, o.timings));
  } else {
    std::cout << "ring " << report.ring << " (order " << report.order << ")\n";
    for (CleanProperty p : all_properties()) {
      const auto& v = report[p];
      std::cout << "  " << property_name(p) << ": " << (v.holds ? "holds" : "fails");
      if (v.counterexample) std::cout << "  counterexample " << *v.counterexample;
      std::cout << "\n";
    }
  }
  return kExitOk;
}

int cmd_decompose(const std::string& spec_text, const std::string& matrix_text,
                  const CommonOpts& o) {
  RingContext ctx(parse_ring_spec(spec_text, o.max_order), o.max_order, make_budget(o));
  const Element a = ctx.parse_element(matrix_text);
  const SumOfUnitsDecomposition d = double_sum_of_units(a);
  if (o.json) {
    emit(decomposition_json(d));
  } else {
    std::cout << "2A = U + V over " << ctx.spec().to_string() << "\n";
    std::cout << "  A = " << d.a.to_string() << "\n";
    std::cout << "  U = " << d.u.to_string() << "  (inverse " << d.u_inv.to_string() << ")\n";
    std::cout << "  V = " << d.v.to_string() << "  (inverse " << d.v_inv.to_string() << ")\n";
    std::cout << "  verified: inverses multiply to identity, U + V = 2A\n";
  }
  return kExitOk;
}

int cmd_sylvester(const std::string& spec_text, const std::string& a_text,
                  const std::string& b_text, const std::string& v_text, const CommonOpts& o) {
  RingContext ctx(parse_ring_spec(spec_text, o.max_order), o.max_order, make_budget(o));
  const SylvesterSolution s = sylvester_solve(ctx.parse_element(a_text),
                                              ctx.parse_element(b_text),
                                              ctx.parse_element(v_text));
  if (o.json) {
    emit(sylvester_json(s));
  } else {
    std::cout << "ax - xb = v over " << ctx.spec().to_string() << " with a="
              << s.a.to_string() << " b=" << s.b.to_string() << " v=" << s.v.to_string()
              << "\n";
    std::cout << "  solutions (" << s.solutions.size() << "):";
    for (const Element& x : s.solutions) std::cout << " " << x.to_string();
    std::cout << "\n  unique: " << yesno(s.solutions.size() == 1) << "\n";
  }
  return kExitOk;
}

int cmd_lift(const std::string& spec_text, const std::string& matrix_text,
             const CommonOpts& o) {
  RingContext ctx(parse_ring_spec(spec_text, o.max_order), o.max_order, make_budget(o));
  const Element a = ctx.parse_element(matrix_text);
  const Element e = triangular_j_clean_lift(a);
  if (o.json) {
    emit(lift_json(ctx, a, e));
  } else {
    std::cout << "A   = " << a.to_string() << "\n";
    std::cout << "E   = " << e.to_string() << "\n";
    std::cout << "A-E = " << (a - e).to_string() << "  (in J(" << ctx.spec().to_string()
              << "))\n";
  }
  return kExitOk;
}

int cmd_roots(const std::string& spec_text, const std::string& matrix_text,
              const CommonOpts& o) {
  RingContext ctx(parse_ring_spec(spec_text, o.max_order), o.max_order, make_budget(o));
  const Element a = ctx.parse_element(matrix_text);
  const RootCriterion rc = char_root_criterion(a);
  if (o.json) {
    emit(roots_json(ctx, a, rc));
  } else {
    std::cout << "A = " << a.to_string() << " over " << ctx.spec().to_string() << ": ";
    switch (rc.cls) {
      case RootClassification::InRadical:
        std::cout << "A lies in J(M)\n";
        break;
      case RootClassification::ComplementInRadical:
        std::cout << "I - A lies in J(M)\n";
        break;
      case RootClassification::RootsFound:
        std::cout << "characteristic roots " << rc.radical_root->to_string() << " (in J) and "
                  << rc.unit_root->to_string() << " (in 1+J)\n";
        break;
      case RootClassification::NoDecomposition:
        std::cout << "none\n";
        break;
    }
  }
  return kExitOk;
}

int cmd_similar(const std::string& spec_text, const std::string& matrix_text,
                const CommonOpts& o) {
  RingContext ctx(parse_ring_spec(spec_text, o.max_order), o.max_order, make_budget(o));
  const Element a = ctx.parse_element(matrix_text);
  const auto u = diagonalizing_conjugator(a);
  if (o.json) {
    emit(similar_json(ctx, a, u));
  } else if (u) {
    auto& st = ctx.structure();
    std::cout << "U = " << u->to_string() << "\n";
    std::cout << "U A U^-1 = " << (*u * a * st.inverse(*u).value()).to_string() << "\n";
  } else {
    std::cout << "no conjugator makes " << a.to_string() << " diagonal (exhaustive over "
              << ctx.structure().units().size() << " units)\n";
  }
  return u ? kExitOk : kExitRefuted;
}

std::vector<RingSpec> resolve_rings(const std::vector<std::string>& spec_texts,
                                    const std::string& family, std::uint64_t max_order,
                                    bool default_to_family) {
  std::vector<RingSpec> rings;
  if (!family.empty()) {
    if (family != "sweep-default")
      throw ParseError("unknown family '" + family + "'", 0, "'sweep-default'");
    rings = default_sweep_family();
  }
  for (const auto& text : spec_texts) rings.push_back(parse_ring_spec(text, max_order));
  if (rings.empty() && default_to_family) rings = default_sweep_family();
  if (rings.empty())
    throw ParseError("no rings given", 0, "ring specs or --family sweep-default");
  return rings;
}

int cmd_verify(const std::string& case_text, const std::vector<std::string>& spec_texts,
               const std::string& family, const CommonOpts& o) {
  std::vector<TheoremCaseId> cases;
  if (case_text == "all") {
    auto span = all_cases();
    cases.assign(span.begin(), span.end());
  } else {
    const auto id = case_from_name(case_text);
    if (!id)
      throw ParseError("unknown case '" + case_text + "'", 0, "a case id such as T4.1 or 'all'");
    cases.push_back(*id);
  }
  const std::vector<RingSpec> rings = resolve_rings(spec_texts, family, o.max_order, false);

  SweepOptions so;
  so.max_order = o.max_order;
  so.seed = o.seed;
  so.threads = o.threads;
  so.budget_ms = o.budget_ms;
  const SweepResult result = run_sweep(cases, rings, so);

  if (o.json) {
    emit(sweep_json(result, o.timings));
  } else {
    int pass = 0, fail = 0, skipped = 0;
    for (const auto& r : result.reports) {
      std::cout << case_name(r.id) << "  " << r.ring << "  " << verdict_name(r.verdict);
      if (r.verdict == Verdict::Skipped) std::cout << "  (" << r.skip_reason << ")";
      if (r.counterexample) std::cout << "  counterexample " << *r.counterexample;
      std::cout << "\n";
      switch (r.verdict) {
        case Verdict::Pass: ++pass; break;
        case Verdict::Fail: ++fail; break;
        case Verdict::Skipped: ++skipped; break;
      }
    }
    std::cout << "summary: " << pass << " pass, " << fail << " fail, " << skipped
              << " skipped\n";
  }
  if (result.budget_exhausted) {
    std::cerr << "budget exhausted before the sweep finished\n";
    return kExitResource;
  }
  return result.any_fail() ? kExitRefuted : kExitOk;
}

int cmd_scan(const std::vector<std::string>& spec_texts, const std::string& family,
             const std::string& property_name_text, const CommonOpts& o) {
  const std::vector<RingSpec> rings = resolve_rings(spec_texts, family, o.max_order, true);
  std::optional<CleanProperty> wanted;
  if (!property_name_text.empty()) {
    wanted = property_from_name(property_name_text);
    if (!wanted) throw ParseError("unknown property '" + property_name_text + "'", 0,
                                  "a property name such as perfectly-j-clean");
  }
  auto budget = make_budget(o);

  Json out = Json::array();
  for (const RingSpec& spec : rings) {
    RingContext ctx(spec, std::max(o.max_order, spec.order(kAbsoluteOrderCap)), budget);
    Classifier cls(ctx);
    if (wanted) {
      const PropertyVerdict v = cls.ring_property(*wanted);
      if (o.json) {
        Json j;
        j["ring"] = spec.to_string();
        j["order"] = ctx.order();
        j["property"] = property_name(*wanted);
        j["verdict"] = property_verdict_json(v, o.timings);
        out.push_back(std::move(j));
      } else {
        std::cout << spec.to_string() << "  " << property_name(*wanted) << ": "
                  << (v.holds ? "holds" : "fails");
        if (v.counterexample) std::cout << "  counterexample " << *v.counterexample;
        std::cout << "\n";
      }
    } else {
      const PropertyReport rep = cls.classify_ring();
      if (o.json) {
        out.push_back(property_report_json(rep, o.timings));
      } else {
        std::cout << rep.ring << " (order " << rep.order << "):";
        for (CleanProperty p : all_properties())
          std::cout << " " << property_name(p) << "=" << (rep[p].holds ? "y" : "n");
        std::cout << "\n";
      }
    }
  }
  if (o.json) emit(out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic laboratory for finite rings: structural sets, cleanness "
               "witnesses, constructive decompositions, and an equivalence-theorem "
               "verification harness"};
  app.require_subcommand(1);

  CommonOpts o;

  std::string spec_text, element_text, matrix_text, property_text, case_text, family;
  std::string a_text, b_text, v_text;
  std::vector<std::string> spec_list;

  auto* info = app.add_subcommand("info", "order, units, radical and predicates of a ring");
  info->add_option("spec", spec_text, "ring spec, e.g. T2(Z4) or M2(Z2)xZ3")->required();
  add_common(info, o);

  auto* classify = app.add_subcommand(
      "classify", "decide the cleanness properties of a ring or of one element");
  classify->add_option("spec", spec_text, "ring spec")->required();
  classify->add_option("element", element_text, "element literal or #index");
  classify->add_option("--property", property_text, "restrict to one property");
  add_common(classify, o);

  auto* decompose =
      app.add_subcommand("decompose", "write 2A as a verified sum of two invertible matrices");
  decompose->add_option("spec", spec_text, "matrix ring spec, e.g. M2(Z3)")->required();
  decompose->add_option("matrix", matrix_text, "matrix literal or #index")->required();
  add_common(decompose, o);

  auto* sylvester = app.add_subcommand("sylvester", "solve ax - xb = v exhaustively");
  sylvester->add_option("spec", spec_text, "ring spec")->required();
  sylvester->add_option("a", a_text)->required();
  sylvester->add_option("b", b_text)->required();
  sylvester->add_option("v", v_text)->required();
  add_common(sylvester, o);

  auto* lift = app.add_subcommand(
      "lift", "build the triangular perfectly-J-clean idempotent from diagonal witnesses");
  lift->add_option("spec", spec_text, "triangular ring spec, e.g. T3(Z2)")->required();
  lift->add_option("matrix", matrix_text, "matrix literal or #index")->required();
  add_common(lift, o);

  auto* roots = app.add_subcommand(
      "roots", "characteristic-root trichotomy for a 2x2 matrix over a commutative local ring");
  roots->add_option("spec", spec_text, "matrix ring spec, e.g. M2(Z4)")->required();
  roots->add_option("matrix", matrix_text, "matrix literal or #index")->required();
  add_common(roots, o);

  auto* similar =
      app.add_subcommand("similar", "search the unit group for a diagonalizing conjugator");
  similar->add_option("spec", spec_text, "matrix ring spec")->required();
  similar->add_option("matrix", matrix_text, "matrix literal or #index")->required();
  add_common(similar, o);

  auto* verify = app.add_subcommand("verify", "re-verify catalogued equivalence theorems");
  verify->add_option("case", case_text, "case id (e.g. T4.1, E4.9) or 'all'")->required();
  verify->add_option("rings", spec_list, "ring specs to verify on");
  verify->add_option("--family", family, "named ring family (sweep-default)");
  add_common(verify, o);

  auto* scan = app.add_subcommand("scan", "classification table over a family of rings");
  scan->add_option("rings", spec_list, "ring specs");
  scan->add_option("--family", family, "named ring family (sweep-default)");
  scan->add_option("--property", property_text, "restrict to one property");
  add_common(scan, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(info)) return cmd_info(spec_text, o);
    if (app.got_subcommand(classify)) return cmd_classify(spec_text, element_text, property_text, o);
    if (app.got_subcommand(decompose)) return cmd_decompose(spec_text, matrix_text, o);
    if (app.got_subcommand(sylvester)) return cmd_sylvester(spec_text, a_text, b_text, v_text, o);
    if (app.got_subcommand(lift)) return cmd_lift(spec_text, matrix_text, o);
    if (app.got_subcommand(roots)) return cmd_roots(spec_text, matrix_text, o);
    if (app.got_subcommand(similar)) return cmd_similar(spec_text, matrix_text, o);
    if (app.got_subcommand(verify)) return cmd_verify(case_text, spec_list, family, o);
    if (app.got_subcommand(scan)) return cmd_scan(spec_list, family, property_text, o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RingMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OrderCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const PostconditionError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
