#include "dgforge/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "dgforge/acceptance.hpp"
#include "dgforge/io.hpp"
#include "dgforge/radical.hpp"
#include "dgforge/report.hpp"

namespace dgforge {

namespace {

enum Flag : unsigned { ALG = 1, MOD = 2, MOD2 = 4, STAGES = 8, WINDOW = 16 };

struct CommandSpec {
  const char* name;
  unsigned flags;
  const char* help;
};

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> c = {
      {"validate", ALG | MOD | MOD2, "check the dga and module axioms"},
      {"radical", ALG, "J, J_+ and J_- with the laws relating them"},
      {"quotient", ALG, "the semisimple quotient A/J_+"},
      {"filtration", ALG | MOD, "radical filtration of M, or of A as a bimodule"},
      {"sep-idem", ALG, "separability idempotent of A"},
      {"resolve", ALG | MOD | STAGES, "minimal semifree resolution of M"},
      {"betti", ALG | MOD | STAGES, "Betti table of M"},
      {"tensor", ALG | MOD | MOD2 | STAGES | WINDOW, "H(M (x)^L N), N over A^op"},
      {"rhom", ALG | MOD | MOD2 | STAGES | WINDOW, "H(RHom(M, N))"},
      {"exttor-check", ALG | MOD | MOD2 | STAGES | WINDOW, "RHom(M, N^dual) against M (x)^L N, N over A^op"},
      {"nakayama", ALG | MOD | STAGES | WINDOW, "is M zero in D(A)"},
      {"perfect", ALG | MOD | STAGES, "is M perfect, through its minimal resolution"},
      {"perfect-contradual", ALG | MOD | STAGES | WINDOW, "is M perfect, through RHom(M, A/J_-)"},
      {"gorenstein", ALG | STAGES | WINDOW, "Gorenstein test on both sides"},
      {"serre-check", ALG | MOD | MOD2 | STAGES | WINDOW, "Serre duality for perfect M, N"},
      {"koszul", ALG | STAGES | WINDOW, "RHom(A/J_-, A/J_-) with its products"},
      {"hochschild", ALG | STAGES | WINDOW, "HH_n from the bar complex, bar length up to --stages"},
      {"smooth", ALG | STAGES, "is A perfect over its enveloping algebra"},
      {"auslander", ALG, "Auslander dga of A"},
      {"keylemma", ALG, "the witness module of the key lemma"},
      {"selftest", 0, "run the acceptance corpus"},
  };
  return c;
}

struct Options {
  std::string command;
  std::vector<std::string> args;
  std::string algebra, module, module2;
  int stages = 8;
  std::string window_text = "-8:8";
  DegreeWindow window;
  std::uint64_t seed = 0;
  bool json = false;
  bool no_validate = false;
};

[[noreturn]] void input_error(const std::string& msg) { throw Error(Errc::invalid_input, msg); }

DegreeWindow parse_window(const std::string& s) {
  auto colon = s.find(':', 1);
  if (colon == std::string::npos) input_error("--window expects lo:hi, got '" + s + "'");
  try {
    std::size_t a = 0, b = 0;
    DegreeWindow w{std::stoi(s.substr(0, colon), &a), std::stoi(s.substr(colon + 1), &b)};
    if (a != colon || b != s.size() - colon - 1) throw std::invalid_argument(s);
    if (w.lo > w.hi) input_error("--window needs lo <= hi");
    return w;
  } catch (const std::logic_error&) {
    input_error("--window expects lo:hi, got '" + s + "'");
  }
}

bool is_builtin(const std::string& ref) { return ref.rfind("builtin:", 0) == 0; }

struct Source {
  std::string ref;
  std::string text;
  std::string dir;
};

Source load(const std::string& ref) {
  Source s{ref, read_file(ref), std::filesystem::path(ref).parent_path().string()};
  return s;
}

std::string resolve_relative(const std::string& ref, const std::string& dir) {
  if (is_builtin(ref) || dir.empty() || std::filesystem::path(ref).is_absolute()) return ref;
  return (std::filesystem::path(dir) / ref).string();
}

std::string algebra_ref(const Options& o) {
  if (!o.algebra.empty()) return o.algebra;
  for (const std::string* m : {&o.module, &o.module2}) {
    if (m->empty() || is_builtin(*m)) continue;
    auto s = load(*m);
    auto h = peek_module(s.text, *m);
    if (h.algebra) return resolve_relative(*h.algebra, s.dir);
  }
  input_error("no algebra given; use --algebra FILE or --algebra builtin:NAME");
}

template <class K> class Context {
 public:
  Context(const Options& o, const std::string& ref, const std::string& text) : o_(o) {
    FdDga<K> a;
    if (is_builtin(ref)) {
      std::string name = ref.substr(8);
      const auto& names = builtin_names();
      if (std::find(names.begin(), names.end(), name) == names.end()) input_error("unknown builtin algebra '" + name + "'");
      a = builtin_example<K>(name);
    } else {
      a = parse_algebra<K>(text, ref);
    }
    a_ = share(std::move(a));
    Json info;
    info["ref"] = ref;
    info["digest"] = fnv1a64(is_builtin(ref) ? emit_algebra(*a_) : text);
    info["summary"] = algebra_summary(*a_);
    inputs_["algebra"] = info;
    if (!o.no_validate && o.command != "validate") {
      auto v = validate_dga(*a_);
      if (!v.empty()) input_error(ref + ": not a dga: " + v.front().detail);
    }
  }

  const DgaPtr<K>& a() const { return a_; }
  const DgaPtr<K>& op() {
    if (!op_) op_ = share(opposite_dga(*a_));
    return op_;
  }
  Json& inputs() { return inputs_; }

  /** The module behind a --module style reference, over A or over A^op. */
  DgModule<K> module(const std::string& key, const std::string& ref, bool over_op) {
    DgaPtr<K> base = over_op ? op() : a_;
    Json info;
    info["ref"] = ref;
    info["over"] = over_op ? "A^op" : "A";
    DgModule<K> m;
    if (is_builtin(ref)) {
      std::string name = ref.substr(8);
      if (name == "top") {
        m = semisimple_top(base);
      } else if (name == "regular") {
        m = regular_module(base);
      } else if (name == "dual") {
        m = over_op ? dual_algebra_left_module(a_, op()) : dual_algebra_module(a_);
      } else if (name == "random") {
        m = random_module(base, o_.seed);
      } else if (name.rfind("simple:", 0) == 0) {
        auto simples = simple_modules(base);
        int i = -1;
        try {
          i = std::stoi(name.substr(7));
        } catch (const std::logic_error&) {
        }
        if (i < 0 || i >= static_cast<int>(simples.size()))
          input_error("no simple module '" + name + "'; there are " + std::to_string(simples.size()));
        m = simples[i];
      } else {
        input_error("unknown builtin module '" + name + "' (top, regular, dual, random, simple:<i>)");
      }
      info["digest"] = fnv1a64(emit_module(m, "builtin", over_op));
    } else {
      auto s = load(ref);
      auto h = peek_module(s.text, ref);
      m = parse_module<K>(s.text, ref, h.opposite ? op() : a_);
      if (h.opposite != over_op) m = side_swap(m, over_op ? op() : a_);
      info["digest"] = fnv1a64(s.text);
      info["written_over"] = h.opposite ? "A^op" : "A";
    }
    if (!o_.no_validate && o_.command != "validate") {
      auto v = validate_module(m);
      if (!v.empty()) input_error(ref + ": not a dg module: " + v.front().detail);
    }
    info["summary"] = module_summary(m);
    inputs_[key] = info;
    return m;
  }

  DgModule<K> m() { return module("module", o_.module.empty() ? "builtin:top" : o_.module, false); }
  DgModule<K> n(bool over_op) { return module("module2", o_.module2.empty() ? "builtin:top" : o_.module2, over_op); }

 private:
  const Options& o_;
  DgaPtr<K> a_, op_;
  Json inputs_ = Json::object();
};

struct Outcome {
  Json result;
  int exit = 0;
  std::string status;
};

Outcome from_verdict(const Verdict& v) { return {verdict_json(v), v.exit_code(), status_name(v.status)}; }

Outcome plain(Json result, bool ok = true) { return {std::move(result), ok ? 0 : 1, ok ? "success" : "negative"}; }

template <class K> Json combination_json(const Combination<K>& c, const std::vector<BasisElement>& basis) {
  Json rows = Json::array();
  for (auto& [i, x] : c) rows.push_back({{"basis", basis[i].name}, {"coefficient", to_string(x)}});
  return rows;
}

template <class K> Json resolution_json(const TruncatedResolution<K>& r) {
  Json j;
  j["stages"] = r.stages;
  j["complete"] = r.complete;
  j["minimal"] = r.minimal;
  if (r.periodic)
    j["periodic"] = {{"from", r.periodic->from}, {"to", r.periodic->to}, {"shift", r.periodic->shift}};
  else
    j["periodic"] = nullptr;
  Json gens = Json::array();
  for (int i = 0; i < r.total.size(); ++i) {
    auto& g = r.total.generator(i);
    gens.push_back({{"index", i}, {"stage", g.stage}, {"degree", g.degree}, {"type", g.type}});
  }
  j["generators"] = gens;
  j["betti"] = betti_json(betti_table(r));
  return j;
}

template <class K> Json ideal_json(const FdDga<K>& a, const Subspace<K>& s) {
  Json j;
  j["dim"] = s.dim();
  j["dims"] = graded_dims_json(a, s);
  return j;
}

template <class K> Outcome radical_command(Context<K>& c) {
  const auto& a = *c.a();
  auto ideals = dg_ideals(a);
  Json r;
  r["radical"] = ideal_json(a, ideals.radical);
  r["j_plus"] = ideal_json(a, ideals.plus);
  r["j_minus"] = ideal_json(a, ideals.minus);
  r["j_plus"]["nilpotency"] = nilpotency_index(a, ideals.plus);
  r["j_minus"]["nilpotency"] = nilpotency_index(a, ideals.minus);
  auto hm = cohomology_of_complex(subcomplex(a, ideals.minus)), hp = cohomology_of_complex(subcomplex(a, ideals.plus));
  Json laws;
  laws["j_minus_in_j"] = ideals.radical.contains(ideals.minus);
  laws["j_in_j_plus"] = ideals.plus.contains(ideals.radical);
  laws["j_minus_d_closed"] = is_d_closed(a, ideals.minus) && is_two_sided_ideal(a, ideals.minus);
  laws["j_plus_d_closed"] = is_d_closed(a, ideals.plus) && is_two_sided_ideal(a, ideals.plus);
  laws["same_cohomology"] = hm == hp;
  r["laws"] = laws;
  r["cohomology_j_minus"] = table_json(hm.compact());
  r["cohomology_j_plus"] = table_json(hp.compact());
  bool ok = true;
  for (auto& v : laws) ok = ok && v.get<bool>();
  return plain(r, ok);
}

template <class K> Outcome quotient_command(Context<K>& c) {
  const auto& a = *c.a();
  auto ideals = dg_ideals(a);
  auto [q, map] = quotient_dga(a, ideals.plus);
  Json r;
  r["ideal"] = "J_+";
  r["quotient"] = algebra_summary(q);
  r["radical_of_quotient"] = q.is_zero_ring() ? 0 : underlying_radical(q).dim();
  r["separable"] = q.is_zero_ring() || is_separable(q).has_value();
  r["text"] = emit_algebra(q);
  return plain(r);
}

template <class K> Outcome filtration_command(Context<K>& c, const Options& o) {
  FiltrationWitness<K> w;
  Json r;
  if (o.module.empty()) {
    r["object"] = "A as a bimodule";
    w = bimodule_filtration(*c.a());
  } else {
    auto m = c.m();
    r["object"] = "M";
    w = radical_filtration(m);
  }
  Json layers = Json::array();
  for (std::size_t i = 0; i < w.chain.size(); ++i) layers.push_back({{"index", i}, {"dim", w.chain[i].dim()}});
  Json factors = Json::array();
  for (std::size_t i = 0; i < w.factors.size(); ++i)
    factors.push_back({{"index", i}, {"dim", w.factors[i].dim()}, {"cohomology", w.factors[i].cohomology().total_dim()}});
  r["length"] = w.factors.size();
  r["layers"] = layers;
  r["factors"] = factors;
  return plain(r);
}

template <class K> Outcome sep_idem_command(Context<K>& c) {
  const auto& a = *c.a();
  auto p = is_separable(a);
  Json r;
  r["separable"] = p.has_value();
  if (p) {
    Json terms = Json::array();
    for (Index k = 0; k < p->coeffs.size(); ++k)
      if (!is_zero(p->coeffs(k)))
        terms.push_back({{"left", a.name(static_cast<int>(k / a.dim()))},
                         {"right", a.name(static_cast<int>(k % a.dim()))},
                         {"coefficient", to_string(p->coeffs(k))}});
    r["idempotent"] = terms;
    r["verified"] = is_separability_idempotent(a, *p);
  }
  return {r, p ? 0 : 1, p ? "Certified-Yes" : "Certified-No"};
}

template <class K> Outcome koszul_command(Context<K>& c, const Options& o) {
  KoszulOptions k;
  k.max_stages = o.stages;
  k.window = o.window;
  auto kd = koszul_dual(c.a(), k);
  Json r;
  r["ext"] = table_json(kd.ext);
  Json cert = Json::object();
  for (auto& [n, d] : kd.certified) cert[std::to_string(n)] = d;
  r["certified"] = cert;
  r["certified_per_stage"] = kd.certified_per_stage;
  r["products_computed"] = kd.products_computed;
  Json powers = Json::array();
  for (std::size_t i = 0; i < kd.power_nonzero.size(); ++i)
    powers.push_back({{"power", i + 1}, {"nonzero", static_cast<bool>(kd.power_nonzero[i])}});
  r["powers"] = powers;
  r["power_law"] = kd.power_law;
  r["betti"] = betti_json(betti_table(kd.resolution));
  if (kd.endomorphisms) r["endomorphisms"] = algebra_summary(*kd.endomorphisms);
  r["note"] = kd.note;
  return plain(r);
}

template <class K> Outcome hochschild_command(Context<K>& c, const Options& o) {
  auto t = hochschild_homology(*c.a(), o.stages, o.window);
  Json rows = Json::array();
  for (auto it = t.entries.rbegin(); it != t.entries.rend(); ++it)
    if (it->first <= 0) rows.push_back({{"n", -it->first}, {"dim", it->second.dim}, {"certified", it->second.certified}});
  Json r;
  r["max_bar_length"] = o.stages;
  r["hh"] = rows;
  return plain(r);
}

template <class K> Outcome auslander_command(Context<K>& c) {
  auto aus = auslander_dga(c.a());
  Json r;
  r["nilpotency"] = aus.nilpotency;
  r["generator"] = module_summary(aus.generator);
  r["algebra"] = algebra_summary(*aus.algebra);
  auto v = validate_dga(*aus.algebra);
  r["violations"] = violations_json(v);
  Json p = Json::array();
  for (std::size_t i = 0; i < aus.projectives.size(); ++i) p.push_back({{"index", i + 1}, {"dim", aus.projectives[i].dim()}});
  r["projectives"] = p;
  r["cohomology"] = table_json(aus.algebra->cohomology().compact());
  return plain(r, v.empty());
}

template <class K> Outcome keylemma_command(Context<K>& c) {
  auto w = keylemma_witness(c.a(), c.op());
  auto v = validate_module(w);
  Json r;
  r["witness"] = module_summary(w);
  r["violations"] = violations_json(v);
  return plain(r, v.empty());
}

template <class K> Outcome validate_command(Context<K>& c, const Options& o) {
  Json r;
  auto v = validate_dga(*c.a());
  r["algebra"] = violations_json(v);
  bool ok = v.empty();
  if (ok) {
    for (auto [key, ref] : {std::pair{"module", &o.module}, std::pair{"module2", &o.module2}}) {
      if (ref->empty()) continue;
      auto m = c.module(key, *ref, false);
      auto mv = validate_module(m);
      r[key] = violations_json(mv);
      ok = ok && mv.empty();
    }
  }
  r["valid"] = ok;
  return {r, ok ? 0 : 1, ok ? "Certified-Yes" : "Certified-No"};
}

template <class K> Outcome dispatch(Context<K>& c, const Options& o) {
  const std::string& cmd = o.command;
  if (cmd == "validate") return validate_command(c, o);
  if (cmd == "radical") return radical_command(c);
  if (cmd == "quotient") return quotient_command(c);
  if (cmd == "filtration") return filtration_command(c, o);
  if (cmd == "sep-idem") return sep_idem_command(c);
  if (cmd == "resolve") return plain(resolution_json(resolve_minimal(c.m(), o.stages)));
  if (cmd == "betti") return plain(betti_json(betti_table(resolve_minimal(c.m(), o.stages))));
  if (cmd == "tensor") {
    auto m = c.m();
    return plain(Json{{"table", table_json(derived_tensor(m, c.n(true), o.window, o.stages))}});
  }
  if (cmd == "rhom") {
    auto m = c.m();
    return plain(Json{{"table", table_json(derived_hom(m, c.n(false), o.window, o.stages))}});
  }
  if (cmd == "exttor-check") {
    auto m = c.m();
    return from_verdict(ext_tor_duality_check(m, c.n(true), o.window, o.stages));
  }
  if (cmd == "nakayama") return from_verdict(nakayama_witness(c.m(), o.stages, o.window));
  if (cmd == "perfect") return from_verdict(perfection_check(c.m(), o.stages));
  if (cmd == "perfect-contradual") return from_verdict(contradual_perfection_check(c.m(), o.window, o.stages));
  if (cmd == "gorenstein") return from_verdict(gorenstein_check(c.a(), o.window, o.stages));
  if (cmd == "serre-check") {
    auto m = c.m();
    return from_verdict(serre_duality_check(c.a(), m, c.n(false), o.window, o.stages));
  }
  if (cmd == "koszul") return koszul_command(c, o);
  if (cmd == "hochschild") return hochschild_command(c, o);
  if (cmd == "smooth") return from_verdict(smoothness_check(c.a(), o.stages));
  if (cmd == "auslander") return auslander_command(c);
  if (cmd == "keylemma") return keylemma_command(c);
  input_error("unknown command '" + cmd + "'");
}

Json options_json(const Options& o) {
  Json j;
  j["stages"] = o.stages;
  j["window"] = window_json(o.window);
  j["seed"] = o.seed;
  j["validate"] = !o.no_validate;
  return j;
}

Outcome selftest() {
  Json rows = Json::array();
  bool ok = true;
  for (auto& r : run_acceptance()) {
    rows.push_back({{"criterion", r.id}, {"name", r.name}, {"result", r.pass ? "PASS" : "FAIL"}, {"detail", r.detail}});
    ok = ok && r.pass;
  }
  return plain(Json{{"criteria", rows}}, ok);
}

std::unique_ptr<CLI::App> make_app(Options& o, std::map<std::string, CLI::App*>& subs) {
  auto app = std::make_unique<CLI::App>("dgforge: derived invariants of finite dimensional dg algebras", "dgforge");
  app->require_subcommand(1);
  app->fallthrough(false);
  for (auto& spec : commands()) {
    auto* s = app->add_subcommand(spec.name, spec.help);
    if (spec.flags & ALG) s->add_option("--algebra", o.algebra, "algebra file or builtin:NAME");
    if (spec.flags & MOD)
      s->add_option("--module", o.module, "module file or builtin:top|regular|dual|random|simple:<i> (default builtin:top)");
    if (spec.flags & MOD2) s->add_option("--module2", o.module2, "second module, same forms (default builtin:top)");
    if (spec.flags & STAGES) s->add_option("--stages", o.stages, "resolution stages or bar length (default 8)")->check(CLI::Range(1, 64));
    if (spec.flags & WINDOW) s->add_option("--window", o.window_text, "degree window lo:hi (default -8:8)");
    s->add_option("--seed", o.seed, "seed for builtin:random (default 0)");
    s->add_flag("--json", o.json, "machine readable report");
    s->add_flag("--no-validate", o.no_validate, "skip validation of the inputs");
    subs[spec.name] = s;
  }
  return app;
}

std::string usage(CLI::App& app) {
  std::ostringstream os;
  os << app.help();
  return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  o.args = args;
  std::map<std::string, CLI::App*> subs;
  auto app = make_app(o, subs);
  if (!args.empty() && !args[0].empty() && args[0][0] != '-' && !subs.count(args[0])) {
    err << "dgforge: unknown command '" << args[0] << "'\n\n" << usage(*app);
    return 3;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app->parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << usage(*app);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "dgforge: " << e.what() << "\n\n" << usage(*app);
    return 3;
  }
  for (auto& [name, s] : subs)
    if (s->parsed()) o.command = name;

  auto t0 = std::chrono::steady_clock::now();
  Json report;
  report["dgforge"] = "1";
  report["command"] = o.command;
  report["arguments"] = args;
  Outcome outcome;
  try {
    o.window = parse_window(o.window_text);
    report["options"] = options_json(o);
    if (o.command == "selftest") {
      report["inputs"] = Json::object();
      outcome = selftest();
    } else {
      std::string ref = algebra_ref(o);
      std::string text = is_builtin(ref) ? std::string() : read_file(ref);
      FieldSpec field = is_builtin(ref) ? FieldSpec::rational() : peek_field(text, ref);
      if (field.is_rational()) {
        Context<Rational> c(o, ref, text);
        outcome = dispatch(c, o);
        report["inputs"] = c.inputs();
      } else {
        Context<Fp> c(o, ref, text);
        outcome = dispatch(c, o);
        report["inputs"] = c.inputs();
      }
    }
  } catch (const std::exception& e) {
    err << "dgforge: " << e.what() << "\n";
    if (o.json) {
      report["error"] = e.what();
      report["exit_code"] = 3;
      out << report.dump(2) << "\n";
    }
    return 3;
  }
  report["status"] = outcome.status;
  report["exit_code"] = outcome.exit;
  report["result"] = outcome.result;
  if (o.json) {
    out << report.dump(2) << "\n";
  } else {
    render_human(report, out);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << "wall time: " << std::fixed << std::setprecision(3) << secs << " s\n";
  }
  return outcome.exit;
}

}  // namespace dgforge
