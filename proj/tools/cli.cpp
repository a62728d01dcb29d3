#include "cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "afftree/affine.hpp"
#include "afftree/error.hpp"
#include "afftree/json_io.hpp"
#include "afftree/lamplighter_g.hpp"
#include "afftree/virtual_endo.hpp"
#include "afftree/wreath_parser.hpp"

namespace afftree::cli {

namespace {

using json_io::Json;

struct Options {
  std::string input;
  std::string element;
  std::string other;
  std::string word;
  int depth = -1;
  int deg = -1;
  std::size_t budget = kDefaultStateBudget;
  std::string format = "json";
  long long bound = 64;
  std::string p = "0", q = "0", sign = "+";
  std::string u = "1", fx = "x";
  int support = 3;
};

struct Outcome {
  Json body;
  int code = 0;
  std::string text;  // replaces the generic text rendering when set
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream f(path);
  if (!f) throw Error("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

WreathSystem load_system(const Options& o) {
  return parse_wreath(o.input.empty() ? std::string(kGDefinition) : read_input(o.input));
}

std::string element_expr(const Options& o, const WreathSystem& sys) {
  return o.element.empty() ? sys.names.front() : o.element;
}

TreeAutomorphism load_element(const Options& o, const WreathSystem& sys) {
  return parse_element(sys, element_expr(o, sys), o.budget);
}

int depth_or(const Options& o, int fallback) {
  if (o.depth < -1) throw Error("depth must be nonnegative");
  return o.depth < 0 ? fallback : o.depth;
}

Json with_element(const Options& o, const WreathSystem& sys) {
  Json j;
  j["element"] = element_expr(o, sys);
  return j;
}

Outcome cmd_parse(const Options& o) {
  const auto sys = load_system(o);
  Outcome r;
  r.body["d"] = sys.machine.d;
  r.body["machine"] = json_io::to_json(sys.machine, sys.names);
  r.body["elements"] = Json::array();
  for (const auto& n : sys.names) {
    const auto g = sys.element(n);
    Json e;
    e["name"] = n;
    e["minimal_states"] = g.state_count();
    e["identity"] = g.is_identity();
    r.body["elements"].push_back(std::move(e));
  }
  return r;
}

Outcome cmd_act(const Options& o) {
  const auto sys = load_system(o);
  const auto g = load_element(o, sys);
  const int d = sys.machine.d;
  const auto w = json_io::word_from_string(o.word, d);
  Outcome r{with_element(o, sys), 0, {}};
  r.body["word"] = json_io::word_to_string(w, d);
  r.body["image"] = json_io::word_to_string(g.act(w), d);
  return r;
}

Outcome cmd_section(const Options& o) {
  const auto sys = load_system(o);
  const auto g = load_element(o, sys);
  const int d = sys.machine.d;
  const auto w = json_io::word_from_string(o.word, d);
  const auto s = g.section(w);
  Outcome r{with_element(o, sys), 0, {}};
  r.body["word"] = json_io::word_to_string(w, d);
  r.body["state_count"] = s.state_count();
  r.body["section"] = json_io::to_json(s);
  return r;
}

Outcome cmd_equal(const Options& o) {
  const auto sys = load_system(o);
  const auto g = load_element(o, sys);
  if (o.other.empty()) throw Error("equal needs --other");
  const auto h = parse_element(sys, o.other, o.budget);
  Outcome r{with_element(o, sys), 0, {}};
  r.body["other"] = o.other;
  const auto w = distinguishing_word(g, h);
  r.body["equal"] = !w.has_value();
  if (w) r.body["witness"] = json_io::word_to_string(*w, sys.machine.d);
  r.code = w ? 1 : 0;
  return r;
}

Outcome cmd_sh_test(const Options& o) {
  const auto sys = load_system(o);
  const auto sh = is_spherically_homogeneous(load_element(o, sys));
  Outcome r{with_element(o, sys), 0, {}};
  r.body["homogeneous"] = sh.homogeneous;
  if (!sh.homogeneous) r.body["witness"] = json_io::word_to_string(sh.witness, sys.machine.d);
  r.code = sh.homogeneous ? 0 : 1;
  return r;
}

Outcome cmd_sh_signature(const Options& o) {
  const auto sys = load_system(o);
  const auto g = load_element(o, sys);
  const auto sh = is_spherically_homogeneous(g);
  Outcome r{with_element(o, sys), 0, {}};
  r.body["homogeneous"] = sh.homogeneous;
  if (!sh.homogeneous) {
    r.body["witness"] = json_io::word_to_string(sh.witness, sys.machine.d);
    r.code = 1;
    return r;
  }
  r.body["signature"] = json_io::to_json(sh_signature(g));
  return r;
}

Outcome cmd_detect_affine(const Options& o) {
  const auto sys = load_system(o);
  const auto det = detect_affine(load_element(o, sys), o.budget);
  Outcome r{with_element(o, sys), 0, {}};
  if (const auto* p = std::get_if<AffineAutomorphism>(&det)) {
    r.body["affine"] = true;
    r.body["affine_data"] = json_io::to_json(*p);
  } else {
    r.body["affine"] = false;
    r.body["refutation"] = json_io::to_json(std::get<AffineRefutation>(det), sys.machine.d);
    r.code = 1;
  }
  return r;
}

Outcome cmd_affine_convert(const Options& o) {
  if (o.input.empty()) throw Error("affine-convert needs --input with an affine JSON object");
  const auto p = json_io::affine_from_json(Json::parse(read_input(o.input)));
  const auto g = affine_to_automaton(p, o.budget);
  Outcome r;
  r.body["affine_data"] = json_io::to_json(p);
  r.body["state_count"] = g.state_count();
  r.body["machine"] = json_io::to_json(g);
  return r;
}

Outcome cmd_normalizer(const Options& o) {
  const auto sys = load_system(o);
  const auto n = normalizer_certificate(load_element(o, sys), static_cast<std::size_t>(depth_or(o, 8)), o.budget);
  Outcome r{with_element(o, sys), 0, {}};
  r.body["bound"] = n.bound;
  r.body["conjugate_in_shift"] = n.conjugate_in_shift;
  r.body["bounded_pass"] = n.bounded_pass();
  if (n.first_failure) r.body["first_failure"] = *n.first_failure;
  r.body["affine_detected"] = n.detected();
  r.body["consistent"] = n.consistent();
  r.code = n.bounded_pass() ? 0 : 1;
  return r;
}

Outcome cmd_order(const Options& o) {
  const auto sys = load_system(o);
  const auto res = order_bounded(load_element(o, sys), o.bound, o.budget);
  Outcome r{with_element(o, sys), 0, {}};
  r.body["bound"] = o.bound;
  switch (res.status) {
    case OrderResult::Status::finite:
      r.body["status"] = "finite";
      r.body["order"] = res.order;
      break;
    case OrderResult::Status::exceeds_bound:
      r.body["status"] = "exceeds_bound";
      r.code = 1;
      break;
    case OrderResult::Status::budget_exhausted:
      r.body["status"] = "budget_exhausted";
      r.code = 1;
      break;
  }
  return r;
}

Outcome cmd_portrait(const Options& o) {
  const auto sys = load_system(o);
  Outcome r{with_element(o, sys), 0, {}};
  r.body["portrait"] = json_io::to_json(portrait(load_element(o, sys), static_cast<std::size_t>(depth_or(o, 4))));
  return r;
}

std::string corner_picture(const std::vector<std::vector<int>>& grid) {
  std::string s = "legend: ■ = 1, □ = 0\n";
  for (const auto& row : grid) {
    for (int v : row) s += v ? "■" : "□";
    s += '\n';
  }
  return s;
}

Outcome cmd_g_demo(const Options& o) {
  const auto& G = g_group();
  const int D = o.deg < 0 ? 6 : o.deg;
  Outcome r;
  std::ostringstream text;
  bool ok = true;

  Json rel = Json::array();
  text << "relations\n";
  for (const auto& c : verify_relations(G)) {
    Json e;
    e["name"] = c.name;
    e["holds"] = c.holds;
    if (!c.holds) e["witness"] = json_io::word_to_string(c.witness, 2);
    rel.push_back(std::move(e));
    text << "  " << (c.holds ? "ok   " : "FAIL ") << c.name << '\n';
    ok = ok && c.holds;
  }
  r.body["relations"] = std::move(rel);

  const auto ta = t_affine_data(G);
  Json tj;
  tj["passed"] = ta.passed();
  tj["detected"] = ta.detected;
  if (ta.data) tj["affine_data"] = json_io::to_json(*ta.data);
  tj["vector_matches"] = ta.vector_matches;
  tj["rows_match"] = ta.rows_match;
  tj["period_two"] = ta.period_two;
  tj["corner_matches"] = ta.corner_matches;
  Json rows = Json::array();
  for (const auto& row : ta.corner) {
    std::string s;
    for (int v : row) s += static_cast<char>('0' + v);
    rows.push_back(s);
  }
  tj["corner"] = std::move(rows);
  r.body["t_affine"] = std::move(tj);
  ok = ok && ta.passed();
  text << "t as an affine map: " << (ta.passed() ? "ok" : "FAIL") << '\n';
  if (ta.data) text << "  b = " << ta.data->vector().to_string() << '\n';
  text << corner_picture(ta.corner);

  const auto scan = nontriviality_scan(G, D);
  Json sj;
  sj["degree_bound"] = scan.degree_bound;
  sj["pairs"] = scan.pairs;
  sj["trivial_by_automaton"] = scan.trivial_by_automaton;
  sj["trivial_by_dynamics"] = scan.trivial_by_dynamics;
  sj["disagreements"] = scan.disagreements;
  sj["passed"] = scan.passed();
  r.body["nontriviality_scan"] = std::move(sj);
  ok = ok && scan.passed();
  text << "nontriviality scan, degree <= " << D << ": " << scan.pairs << " pairs, "
       << (scan.passed() ? "ok" : "FAIL") << '\n';

  const auto rank = rank_evidence(G);
  Json rj;
  rj["generators"] = rank.generators;
  rj["involutions"] = rank.involutions;
  rj["pairwise_distinct"] = rank.pairwise_distinct;
  rj["commuting"] = rank.commuting;
  rj["subsets_checked"] = rank.subsets_checked;
  rj["trivial_products"] = rank.trivial_products;
  rj["passed"] = rank.passed();
  r.body["rank_evidence"] = std::move(rj);
  ok = ok && rank.passed();
  text << "rank evidence: " << rank.generators << " generators, " << rank.subsets_checked << " subsets, "
       << (rank.passed() ? "ok" : "FAIL") << '\n';

  r.body["passed"] = ok;
  text << (ok ? "all checks passed" : "some checks FAILED") << '\n';
  r.text = text.str();
  r.code = ok ? 0 : 1;
  return r;
}

Outcome cmd_pq_trace(const Options& o) {
  if (o.sign != "+" && o.sign != "-") throw Error("sign must be + or -");
  PQState s{Poly::parse(o.p, 2), Poly::parse(o.q, 2), o.sign == "+"};
  const int steps = depth_or(o, 8);
  Outcome r;
  r.body["start"] = s.to_string();
  Json trace = Json::array();
  for (int i = 0; i < steps; ++i) {
    Json e;
    e["state"] = s.to_string();
    e["root_swap"] = s.p.value_at_one() != 0;
    trace.push_back(std::move(e));
    s = pq_step(s);
  }
  r.body["trace"] = std::move(trace);
  const PQState start{Poly::parse(o.p, 2), Poly::parse(o.q, 2), o.sign == "+"};
  r.body["trivial_by_dynamics"] = pq_trivial_by_dynamics(start);
  const auto& G = g_group();
  if (start.p.degree() <= G.range() && start.q.degree() <= G.range())
    r.body["trivial_by_automaton"] = pq_to_automorphism(G, start).is_identity();
  return r;
}

Outcome cmd_scan(const Options& o) {
  const auto rep = nontriviality_scan(g_group(), o.deg < 0 ? 6 : o.deg);
  Outcome r;
  r.body["degree_bound"] = rep.degree_bound;
  r.body["pairs"] = rep.pairs;
  r.body["trivial_by_automaton"] = rep.trivial_by_automaton;
  r.body["trivial_by_dynamics"] = rep.trivial_by_dynamics;
  r.body["disagreements"] = rep.disagreements;
  r.body["cases"] = {rep.case_one, rep.case_two, rep.case_three};
  r.body["case_failures"] = rep.case_failures;
  r.body["conjugation_checks"] = rep.conjugation_checks;
  r.body["conjugation_failures"] = rep.conjugation_failures;
  r.body["passed"] = rep.passed();
  r.code = rep.passed() ? 0 : 1;
  return r;
}

Json decomposition_json(const WreathDecomposition& w) {
  Json j;
  j["g0"] = w.g0.to_string();
  j["g1"] = w.g1.to_string();
  j["swap"] = w.swap;
  return j;
}

Outcome cmd_vrep(const Options& o) {
  if (o.support < 0 || o.support > 4) throw Error("support bound must lie in [0, 4]");
  const SimilarityPair pair(Poly::parse(o.u, 2, 'x'), LamplighterElement::parse(o.fx));
  const auto depth = static_cast<std::size_t>(depth_or(o, 8));
  if (depth < 1) throw Error("vrep needs depth >= 1");
  const auto a = LamplighterElement::a();
  const auto ax = LamplighterElement::a_pow(LaurentPoly::monomial(2, 1));
  const auto au = LamplighterElement::a_pow(LaurentPoly(pair.u()));
  Outcome r;
  r.body["u"] = pair.u().to_string('x');
  r.body["fx"] = pair.fx().to_string();
  r.body["phi_a"] = decomposition_json(wreath_decompose(pair, a));
  const auto dax = wreath_decompose(pair, ax);
  r.body["phi_a_x"] = decomposition_json(dax);
  r.body["phi_a_x_matches"] = dax.swap && dax.g0 == au && dax.g1 == au;
  r.body["phi_x"] = decomposition_json(wreath_decompose(pair, LamplighterElement::x()));
  Json machines;
  for (const auto& [name, g] : {std::pair{"a", a}, std::pair{"x", LamplighterElement::x()}}) {
    const auto m = rep_automaton(pair, g, o.budget);
    machines[name] = m ? Json(m->state_count()) : Json(nullptr);
  }
  r.body["finite_state_counts"] = std::move(machines);

  const auto sh = base_sh_check(pair, depth, o.support);
  Json shj;
  shj["depth"] = sh.depth;
  shj["support_bound"] = sh.support_bound;
  shj["elements_checked"] = sh.elements_checked;
  shj["max_explored_states"] = sh.max_explored_states;
  shj["budget_exceeded"] = sh.budget_exceeded;
  if (sh.first_failure) shj["first_failure"] = sh.first_failure->to_string();
  shj["passed"] = sh.passed();
  r.body["base_sh_check"] = std::move(shj);

  const int width = 2 * o.support + 1;
  std::set<Portrait> seen;
  std::size_t sampled = 0;
  for (unsigned long mask = 0; mask < (1ul << width); ++mask) {
    std::vector<int> c(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) c[static_cast<std::size_t>(i)] = static_cast<int>((mask >> i) & 1);
    for (int n = -o.support; n <= o.support; ++n) {
      seen.insert(portrait_rep(pair, LamplighterElement{LaurentPoly(2, -o.support, c), n}, depth).portrait);
      ++sampled;
    }
  }
  Json fj;
  fj["sampled"] = sampled;
  fj["distinct_portraits"] = seen.size();
  fj["faithful_on_sample"] = seen.size() == sampled;
  r.body["faithfulness"] = std::move(fj);
  r.code = sh.passed() ? 0 : 1;
  return r;
}

void render_text(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); })) {
    out << prefix << ':';
    for (const auto& e : j) out << ' ' << (e.is_string() ? e.get<std::string>() : e.dump());
    out << '\n';
    return;
  }
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computation with affine automorphisms of rooted trees"};
  app.require_subcommand(1, 1);
  Options o;

  using Handler = std::function<Outcome(const Options&)>;
  std::vector<std::pair<CLI::App*, Handler>> verbs;
  auto verb = [&](const char* name, const char* help, Handler h) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--budget", o.budget, "state budget for constructions");
    verbs.emplace_back(sub, std::move(h));
    return sub;
  };
  auto with_element_opts = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "wreath-recursion definitions, FILE or - (default: the group G)");
    sub->add_option("--element", o.element, "element expression (default: first defined name)");
    return sub;
  };

  with_element_opts(verb("parse", "parse definitions and report the machine", cmd_parse));
  with_element_opts(verb("act", "image of a word", cmd_act))->add_option("--word", o.word, "word as digits")->required();
  with_element_opts(verb("section", "section at a word", cmd_section))
      ->add_option("--word", o.word, "word as digits")
      ->required();
  with_element_opts(verb("equal", "word problem", cmd_equal))->add_option("--other", o.other, "second element");
  with_element_opts(verb("sh-test", "spherical homogeneity", cmd_sh_test));
  with_element_opts(verb("sh-signature", "level permutations of a homogeneous element", cmd_sh_signature));
  with_element_opts(verb("detect-affine", "affine data or a refutation", cmd_detect_affine));
  verb("affine-convert", "affine JSON to a machine", cmd_affine_convert)
      ->add_option("--input", o.input, "affine JSON, FILE or -")
      ->required();
  with_element_opts(verb("normalizer", "bounded normalizer certificate", cmd_normalizer))
      ->add_option("--depth", o.depth, "largest n for sigma^(n)");
  with_element_opts(verb("order", "order up to a bound", cmd_order))->add_option("--bound", o.bound, "largest order");
  with_element_opts(verb("portrait", "portrait to a depth", cmd_portrait))->add_option("--depth", o.depth, "levels");
  verb("g-demo", "report on the group G", cmd_g_demo)->add_option("--deg", o.deg, "degree bound of the scan");
  auto* pq = verb("pq-trace", "trace of the (p,q) dynamics", cmd_pq_trace);
  pq->add_option("--p", o.p, "polynomial in t over Z_2");
  pq->add_option("--q", o.q, "polynomial in t over Z_2");
  pq->add_option("--sign", o.sign, "+ or -");
  pq->add_option("--depth", o.depth, "number of steps");
  verb("scan-nontrivial", "all (p,q) up to a degree", cmd_scan)->add_option("--deg", o.deg, "degree bound");
  auto* vr = verb("vrep", "lamplighter representation from a similarity pair", cmd_vrep);
  vr->add_option("--u", o.u, "polynomial in x over Z_2 with u(1) = 1");
  vr->add_option("--fx", o.fx, "image of x, e.g. \"a^(1+x) x\"");
  vr->add_option("--depth", o.depth, "portrait depth");
  vr->add_option("--support", o.support, "support bound of sampled elements");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (const auto& [sub, handler] : verbs) {
    if (!sub->parsed()) continue;
    try {
      Outcome r = handler(o);
      if (o.format == "text") {
        if (!r.text.empty()) {
          out << r.text;
        } else {
          out << "verb: " << sub->get_name() << '\n';
          render_text(r.body, "", out);
        }
      } else {
        Json j;
        j["schema"] = json_io::kSchema;
        j["verb"] = sub->get_name();
        for (auto& [k, v] : r.body.items()) j[k] = v;
        out << j.dump(2) << '\n';
      }
      return r.code;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
  }
  return 2;
}

}  // namespace afftree::cli
