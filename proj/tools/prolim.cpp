#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "prolim/budget.hpp"
#include "prolim/io.hpp"
#include "prolim/scenarios.hpp"

using namespace prolim;
using io::json;

namespace {

struct Options {
  std::string in, out, window;
  std::size_t depth = 4;
  bool depth_set = false;
  std::uint64_t seed = 1;
  bool seed_set = false;
  int degree = -1;
  int max_dim = -1;
  long p = 2;
  std::size_t m = 4, width = 5, scales = 4, columns = 4;
  std::string name;
};

json read_input(const Options& o) {
  if (o.in.empty()) throw std::invalid_argument("--in file.json is required");
  std::ifstream f(o.in);
  if (!f) throw std::invalid_argument("cannot open " + o.in);
  return json::parse(f);
}

std::pair<std::size_t, std::size_t> parse_window(const std::string& w, std::size_t dflt) {
  if (w.empty()) return {dflt, dflt};
  auto comma = w.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--window expects A,B");
  long a = std::stol(w.substr(0, comma)), b = std::stol(w.substr(comma + 1));
  if (a < 1 || b < 1) throw std::invalid_argument("--window entries must be at least 1");
  return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
}

// JSON to --out (or stdout), narrative to stdout when JSON goes to a file
int emit(const Options& o, const json& j, const std::string& text, bool ok) {
  if (o.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(o.out);
    if (!f) throw std::invalid_argument("cannot write " + o.out);
    f << j.dump(2) << "\n";
    std::cout << text;
  }
  return ok ? 0 : 1;
}

int emit(const Options& o, const Report& r) { return emit(o, r.to_json(), r.text(), r.passed()); }

int cmd_snf(const Options& o) {
  std::vector<IntMatrix> ms;
  if (!o.in.empty()) {
    ms.push_back(io::matrix_from_json(read_input(o)));
  } else {
    // randomized corpus
    std::mt19937_64 rng(o.seed);
    for (int t = 0; t < 50; ++t) {
      IntMatrix a(1 + rng() % 6, 1 + rng() % 6);
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) = static_cast<long>(rng() % 19) - 9;
      ms.push_back(a);
    }
  }
  Report r;
  r.scenario = "snf";
  r.parameters = {{"matrices", ms.size()}};
  if (o.in.empty()) r.parameters["seed"] = o.seed;
  json out = json::array();
  bool ok = true;
  for (const auto& a : ms) {
    SnfDecomposition d = snf(a);
    ok = ok && d.U * a * d.V == d.D && d.U * d.U_inv == IntMatrix::identity(a.rows()) &&
         d.V * d.V_inv == IntMatrix::identity(a.cols());
    out.push_back(io::to_json(d));
  }
  r.results = {{"decompositions", out}};
  r.check("UAV_equals_D", ok, "U A V = D with unimodular U, V");
  return emit(o, r);
}

int cmd_homology(const Options& o) {
  json in = read_input(o);
  SimplicialComplex k = io::complex_from_json(in.contains("complex") ? in.at("complex") : in);
  std::optional<SimplicialComplex> l;
  if (in.contains("subcomplex")) l = io::complex_from_json(in.at("subcomplex"));
  json h = json::array(), c = json::array();
  const int top = o.degree >= 0 ? o.degree : std::max(k.dim(), 0);
  for (int n = o.degree >= 0 ? o.degree : 0; n <= top; ++n) {
    h.push_back({{"n", n}, {"group", (l ? homology(k, *l, n) : homology(k, n)).to_string()}});
    c.push_back({{"n", n}, {"group", (l ? cohomology(k, *l, n) : cohomology(k, n)).to_string()}});
  }
  json j = {{"homology", h}, {"cohomology", c}, {"simplices", k.total()}, {"euler_characteristic", k.euler_characteristic()}};
  return emit(o, j, j.dump() + "\n", true);
}

int cmd_tower(const Options& o) {
  Tower t = io::tower_from_json(read_input(o));
  json j = io::tower_report(t, o.depth);
  return emit(o, j, j.dump() + "\n", true);
}

int cmd_posetlim(const Options& o) {
  FinitePosetDiagram d = io::diagram_from_json(read_input(o));
  const std::size_t pmax = o.depth_set ? o.depth : d.poset().height() + 1;
  auto lims = derived_limits(d, pmax);
  json l = json::array();
  for (std::size_t p = 0; p < lims.size(); ++p) l.push_back({{"p", p}, {"group", io::to_json(lims[p])}});
  json j = {{"directed", is_directed(d.poset())}, {"height", d.poset().height()}, {"derived_limits", l}};
  return emit(o, j, j.dump() + "\n", true);
}

int cmd_nerve(const Options& o) {
  Cover c = io::cover_from_json(read_input(o));
  SimplicialComplex n = nerve(c, o.max_dim);
  json h = json::array();
  for (int d = 0; d <= std::max(n.dim(), 0); ++d) h.push_back({{"n", d}, {"group", homology(n, d).to_string()}});
  json j = {{"labels", c.labels()}, {"nerve", io::to_json(n)}, {"homology", h}};
  return emit(o, j, j.dump() + "\n", true);
}

int cmd_bisystem(const Options& o) {
  BiSystem s = io::bisystem_from_json(read_input(o));
  auto [wa, wb] = parse_window(o.window, 6);
  TauReport t = tau(s, wa, wb);
  Report r;
  r.scenario = "bisystem";
  r.parameters = {{"window", {wa, wb}}};
  r.results = io::to_json(t);
  if (!t.thread.empty()) r.check("thread_verified", verify_thread(s, t), "thread relations re-checked on the system");
  r.narrative = {"tau injective: " + to_string(t.injective) + " (" + t.injective_certificate + ")",
                 "tau surjective: " + to_string(t.surjective) + " (" + t.surjective_certificate + ")"};
  return emit(o, r);
}

int cmd_scenario(const Options& o) {
  json params = {{"p", o.p}, {"m", o.m}, {"width", o.width}, {"scales", o.scales}, {"columns", o.columns}, {"depth", o.depth}};
  if (!o.window.empty()) params["window"] = parse_window(o.window, 6).first;
  return emit(o, run_scenario(o.name, params));
}

int cmd_verify(const Options& o) {
  const int n = o.degree >= 0 ? o.degree : 0;
  if (!o.in.empty()) return emit(o, verify_milnor(tower_of_complexes_from_json(read_input(o)), n, o.in));
  if (o.name == "solenoid") return emit(o, verify_milnor(scenario_solenoid(o.p, o.depth).complexes, n, "solenoid"));
  if (o.name == "circle") return emit(o, verify_milnor(constant_circle_tower(o.depth), n, "circle"));
  throw std::invalid_argument("verify needs --in tower.json or a tower name (solenoid, circle)");
}

int cmd_cylinder(const Options& o) {
  SimplicialMap f = io::map_from_json(read_input(o));
  Cylinder c = mapping_cylinder(f);
  Report r;
  r.scenario = "cylinder";
  bool retract = true;
  for (int n = 0; n <= std::max(f.target().dim(), 0); ++n)
    retract = retract && induced_map(c.target_inclusion, n).is_isomorphism();
  r.results = {{"cylinder", io::to_json(c.complex)}, {"simplices", c.complex.total()}};
  r.check("retracts_onto_target", retract, "target inclusion induces isomorphisms in every degree");
  return emit(o, r);
}

int cmd_telescope(const Options& o) {
  json in = read_input(o);
  std::vector<SimplicialMap> maps;
  for (const auto& m : in.at("maps")) maps.push_back(io::map_from_json(m));
  const std::size_t m = o.depth_set ? o.depth : maps.size();
  Telescope t = mapping_telescope(maps, m);
  Report r;
  r.scenario = "telescope";
  r.parameters = {{"m", m}};
  bool retract = true;
  for (int n = 0; n <= std::max(t.complex.dim(), 0); ++n)
    retract = retract && induced_map(t.stage_inclusions[m], n).is_isomorphism();
  r.results = {{"telescope", io::to_json(t.complex)}, {"simplices", t.complex.total()}};
  r.check("retracts_onto_last_stage", retract, "last stage inclusion induces isomorphisms in every degree");
  return emit(o, r);
}

SimplicialComplex random_complex(std::mt19937_64& rng, Vertex nv) {
  std::vector<Simplex> fs;
  for (int i = 0; i < 6; ++i) {
    Simplex s;
    for (Vertex v = 0; v < nv; ++v)
      if (rng() % 3 == 0) s.push_back(v);
    if (!s.empty() && s.size() <= 4) fs.push_back(s);
  }
  std::vector<Vertex> vs(static_cast<std::size_t>(nv));
  for (Vertex v = 0; v < nv; ++v) vs[static_cast<std::size_t>(v)] = v;
  return SimplicialComplex(vs, fs);
}

SimplicialComplex random_sub(std::mt19937_64& rng, const SimplicialComplex& k) {
  std::vector<Simplex> fs;
  for (int d = 0; d <= k.dim(); ++d)
    for (const auto& s : k.simplices(d))
      if (rng() % 3 == 0) fs.push_back(s);
  return SimplicialComplex(fs);
}

int cmd_pullback(const Options& o) {
  Report r;
  r.scenario = "pullback-check";
  json cases = json::array();
  auto run = [&](const SimplicialComplex& k, const SimplicialComplex& y, const SimplicialComplex& z,
                 const SimplicialComplex& w, int n) {
    PullbackCheck c = check_cochain_pullback(k, y, z, w, n);
    cases.push_back({{"n", n}, {"surjective", c.surjective}, {"source", c.a.to_string()}, {"pullback", c.pullback.to_string()}});
    return c.surjective;
  };
  bool ok = true;
  if (!o.in.empty()) {
    json in = read_input(o);
    ok = run(io::complex_from_json(in.at("K")), io::complex_from_json(in.at("Y")), io::complex_from_json(in.at("Z")),
             io::complex_from_json(in.at("W")), in.value("n", o.degree >= 0 ? o.degree : 1));
  } else {
    std::mt19937_64 rng(o.seed);
    r.parameters = {{"seed", o.seed}};
    for (int t = 0; t < 25; ++t) {
      SimplicialComplex k = random_complex(rng, 2 + static_cast<Vertex>(rng() % 7));
      SimplicialComplex y = random_sub(rng, k), w = random_sub(rng, k);
      SimplicialComplex z = random_sub(rng, y);
      ok = run(k, y, z, w, static_cast<int>(rng() % 3)) && ok;
    }
  }
  r.results = {{"cases", cases}};
  r.check("pullback_map_surjective", ok, "H^n(K, Z u W) -> pullback is onto in every case");
  return emit(o, r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prolim: exact lim / colim computations"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* s) {
    s->add_option("--in", o.in, "input JSON file");
    s->add_option("--out", o.out, "output JSON file");
    s->add_option("--window", o.window, "truncation window A,B");
    s->add_option_function<std::size_t>("--depth", [&](std::size_t d) { o.depth = d; o.depth_set = true; }, "depth");
    s->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t x) { o.seed = x; o.seed_set = true; }, "seed for randomized corpora");
    s->add_option("--degree", o.degree, "homological degree");
  };
  std::map<std::string, std::function<int(const Options&)>> handlers = {
      {"snf", cmd_snf},           {"homology", cmd_homology}, {"tower", cmd_tower},         {"posetlim", cmd_posetlim},
      {"nerve", cmd_nerve},       {"bisystem", cmd_bisystem}, {"scenario", cmd_scenario},   {"verify", cmd_verify},
      {"cylinder", cmd_cylinder}, {"telescope", cmd_telescope}, {"pullback-check", cmd_pullback}};
  const std::map<std::string, std::string> help = {
      {"snf", "Smith normal form of --in matrices, or a seeded random corpus"},
      {"homology", "homology and cohomology of a complex (or pair)"},
      {"tower", "lim, lim^1 class and lim^1_fg of a tower"},
      {"posetlim", "derived limits of a finite poset diagram"},
      {"nerve", "nerve of a cover"},
      {"bisystem", "colim lim, lim colim and tau of a bisystem"},
      {"scenario", "run a built-in scenario"},
      {"verify", "Milnor sequence slots for a tower of complexes"},
      {"cylinder", "mapping cylinder of a simplicial map"},
      {"telescope", "mapping telescope of a sequence of maps"},
      {"pullback-check", "cochain pullback surjectivity"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, _] : handlers) {
    CLI::App* s = app.add_subcommand(name, help.at(name));
    common(s);
    subs[name] = s;
  }
  subs["nerve"]->add_option("--max-dim", o.max_dim, "build only this skeleton");
  for (const char* n : {"scenario", "verify"}) {
    CLI::App* s = subs[n];
    s->add_option("name", o.name, "scenario or tower name");
    s->add_option("--p", o.p, "prime / degree p");
  }
  subs["scenario"]->add_option("--m", o.m, "telescope length");
  subs["scenario"]->add_option("--width", o.width, "nested free truncation width");
  subs["scenario"]->add_option("--scales", o.scales, "Alexandroff cover scales");
  subs["scenario"]->add_option("--columns", o.columns, "Alexandroff compacta");

  CLI11_PARSE(app, argc, argv);
  try {
    for (const auto& [name, s] : subs)
      if (s->parsed()) return handlers[name](o);
  } catch (const BudgetExceeded& e) {
    std::cerr << "prolim: operation budget exceeded (PROLIM_OP_BUDGET=" << budget::limit() << "): " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "prolim: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
