// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 125).

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "prolim/scenarios.hpp"

using namespace prolim;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;  // 0: no time bound
  std::function<Outcome()> run;
};

bool is_unimodular(const IntMatrix& m) {
  Integer d = determinant(m);
  return d == 1 || d == -1;
}

bool snf_ok(const IntMatrix& a, bool against_oracle) {
  SnfDecomposition s = snf(a);
  if (!(s.U * a * s.V == s.D)) return false;
  if (!(s.U * s.U_inv == IntMatrix::identity(a.rows()))) return false;
  if (!(s.V * s.V_inv == IntMatrix::identity(a.cols()))) return false;
  if (!is_unimodular(s.U) || !is_unimodular(s.V)) return false;
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j && s.D(i, j) != 0) return false;
  IntVector d = s.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) return false;
    if (i + 1 < d.size()) {
      if (d[i] == 0 && d[i + 1] != 0) return false;
      if (d[i] != 0 && !mpz_divisible_p(d[i + 1].get_mpz_t(), d[i].get_mpz_t())) return false;
    }
  }
  if (against_oracle) {
    auto want = oracle::invariant_factors(a);
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] != (i < want.size() ? want[i] : Integer(0))) return false;
  }
  return true;
}

Outcome snf_suite() {
  std::mt19937_64 rng(20240601);
  int bad = 0, oracle_cases = 0;
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
    IntMatrix a = oracle::random_matrix(rng, r, c, -9, 9);
    const bool small = r <= 5 && c <= 5;
    oracle_cases += small;
    if (!snf_ok(a, small)) ++bad;
  }
  return {bad == 0, "200 matrices, " + std::to_string(oracle_cases) + " against minor gcds, " + std::to_string(bad) + " failures"};
}

Outcome homology_table() {
  SimplicialComplex sphere(std::vector<Simplex>{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  struct Row {
    std::string name;
    SimplicialComplex k;
    std::size_t verts;
    std::vector<Invariants> h;
  };
  const Invariants z{1, {}}, zero{0, {}};
  std::vector<Row> rows = {
      {"hollow triangle", fixture::ngon(3), 3, {z, z}},
      {"2-sphere", sphere, 4, {z, zero, z}},
      {"torus", fixture::torus7(), 7, {z, {2, {}}, z}},
      {"projective plane", fixture::rp2(), 6, {z, {0, {Integer(2)}}, zero}},
      {"Klein bottle", fixture::grid_surface(true), 0, {z, {1, {Integer(2)}}, zero}},
  };
  Outcome o;
  for (const auto& r : rows) {
    bool ok = r.verts == 0 || r.k.count(0) == r.verts;
    std::string got;
    for (std::size_t n = 0; n < r.h.size(); ++n) {
      FgAbGroup g = homology(r.k, static_cast<int>(n));
      ok = ok && g.invariants() == r.h[n];
      got += (n ? ", " : "") + g.to_string();
    }
    ok = ok && homology(r.k, static_cast<int>(r.h.size())).is_trivial();
    o.ok = o.ok && ok;
    o.detail += (o.detail.empty() ? "" : "; ") + r.name + ": " + got;
  }
  return o;
}

Outcome solenoid() {
  Outcome o;
  for (long p : {2L, 3L}) {
    SolenoidScenario s = scenario_solenoid(p, 4);
    bool maps = s.h1.maps.size() == 4;
    for (const auto& h : s.h1.maps) maps = maps && h.matrix().rows() == 1 && h.matrix().cols() == 1 && abs(h.matrix()(0, 0)) == p;
    for (const auto& g : s.h1.groups) maps = maps && g.invariants() == Invariants{1, {}};
    const bool ok = s.report.passed() && maps && s.lim.is_group && s.lim.group.is_trivial() && !s.lim1.vanishes;
    o.ok = o.ok && ok;
    o.detail += (o.detail.empty() ? "" : "; ") + ("p=" + std::to_string(p) + ": lim " + (s.lim.is_group ? s.lim.group.to_string() : "?") +
                                                  ", lim1 " + (s.lim1.vanishes ? "Vanishes" : "NonVanishing " + s.lim1.annotation));
  }
  return o;
}

Outcome telescope() {
  TelescopeScenario s = scenario_telescope(2, 4);
  bool ok = s.report.passed() && s.h1.size() == 5 && s.restrictions.size() == 4;
  for (const auto& g : s.h1) ok = ok && g.invariants() == Invariants{1, {}};
  for (const auto& r : s.restrictions) ok = ok && abs(r.matrix()(0, 0)) == 2;
  ok = ok && s.lim.is_group && s.lim.group.is_trivial() && !s.lim1.vanishes;
  return {ok, std::to_string(s.telescopes.size()) + " telescopes, H^1 = Z, restrictions x2, lim 0, lim1 " +
                  (s.lim1.vanishes ? "Vanishes" : "NonVanishing " + s.lim1.annotation)};
}

Outcome nested_free() {
  NestedFreeScenario s = scenario_nested_free(5);
  const bool ok = s.report.passed() && !s.lim1.vanishes && s.lim1_fg.vanishes;
  return {ok, std::string("lim1 ") + (s.lim1.vanishes ? "Vanishes" : "NonVanishing " + s.lim1.annotation) + ", lim1_fg " +
                  (s.lim1_fg.vanishes ? "Vanishes" : "NonVanishing")};
}

Outcome lim_fg_suite() {
  std::mt19937_64 rng(9090);
  int bad = 0, undetermined = 0;
  for (int t = 0; t < 100; ++t) {
    std::size_t gens = 1 + rng() % 3, depth = 1 + rng() % 5;
    Tower tw = fixture::random_explicit(rng, gens, depth);
    LimFgReport r = lim_fg_check(tw, 8, rng(), depth);
    if (r.undetermined) ++undetermined;
    if (!r.pass) ++bad;
  }
  return {bad == 0, "100 towers, " + std::to_string(bad) + " failures, " + std::to_string(undetermined) + " undetermined"};
}

Outcome pullback_fuzz() {
  std::mt19937_64 rng(7777);
  int bad = 0, nontrivial = 0;
  for (int t = 0; t < 100; ++t) {
    SimplicialComplex k = fixture::random_complex(rng, 3 + static_cast<long>(rng() % 6), 2 + rng() % 6, 3);
    SimplicialComplex y = fixture::random_subcomplex(rng, k);
    SimplicialComplex z = fixture::random_subcomplex(rng, y);
    SimplicialComplex w = fixture::random_subcomplex(rng, k);
    for (int n = 0; n <= 2; ++n) {
      PullbackCheck r = check_cochain_pullback(k, y, z, w, n);
      if (!r.surjective) ++bad;
      if (!r.pullback.is_trivial()) ++nontrivial;
    }
  }
  return {bad == 0, "100 complexes x n = 0..2, " + std::to_string(nontrivial) + " nontrivial pullbacks, " + std::to_string(bad) +
                        " not surjective"};
}

Outcome alexandroff() {
  AlexandroffScenario s = scenario_alexandroff(4, 4);
  bool dies = true;
  for (bool d : s.dies) dies = dies && d;
  // the class in lim over covers of H_0 of the restricted nerves: nonzero at
  // the finest scale, and once separated it stays separated under refinement
  bool survives = true;
  std::ostringstream grid;
  for (std::size_t j = 0; j < s.columns; ++j) {
    grid << (j ? " " : "") << "K" << j + 1 << ":";
    for (std::size_t k = 0; k < s.scales; ++k) grid << (s.separated[j][k] ? '1' : '0');
    if (j == 0) continue;
    survives = survives && s.separated[j][s.scales - 1];
    for (std::size_t k = 0; k + 1 < s.scales; ++k) survives = survives && (!s.separated[j][k] || s.separated[j][k + 1]);
  }
  const bool witness = s.tau.kernel_witness && *s.tau.kernel_witness == IntVector{1, -1};
  const bool ok = dies && survives && s.tau.injective == Verdict::CertifiedFalse && witness;
  return {ok, std::string("dies in every cover: ") + (dies ? "yes" : "no") + "; separated by scale " + grid.str() +
                  "; tau_injective " + to_string(s.tau.injective)};
}

Outcome p_power() {
  PPowerScenario s = scenario_p_power_bisystem(2, 6);
  const bool ok = s.tau.surjective == Verdict::CertifiedFalse && s.thread_verified;
  return {ok, "tau_surjective " + to_string(s.tau.surjective) + ", thread " + (s.thread_verified ? "verified" : "not verified") +
                  " in the 6x6 window"};
}

Outcome poset_limits() {
  std::mt19937_64 rng(31337);
  int bad = 0;
  for (int t = 0; t < 50; ++t) {
    FinitePoset p = fixture::random_poset(rng, 2 + rng() % 5, true);
    if (!is_directed(p)) {
      ++bad;
      continue;
    }
    auto l = derived_limits(fixture::random_diagram(rng, p, 2), 3);
    for (std::size_t i = 1; i <= 3; ++i)
      if (!l[i].is_trivial()) ++bad;
  }

  FgAbGroup z = FgAbGroup::free(1);
  FinitePoset cospan({"c", "a", "b"}, {{"c", "a"}, {"c", "b"}});
  std::map<std::pair<std::size_t, std::size_t>, GroupHom> maps;
  maps.emplace(std::make_pair(0, 1), GroupHom::scalar(z, 2));
  maps.emplace(std::make_pair(0, 2), GroupHom::scalar(z, 2));
  FinitePosetDiagram d(cospan, {z, z, z}, maps);
  FgAbGroup l1 = derived_limits(d, 1)[1];
  // brute force: cokernel of the single differential from its minor gcds
  IntMatrix delta = order_complex_cochains(d).differentials[0].matrix();
  Invariants brute;
  auto f = oracle::invariant_factors(delta);
  brute.free_rank = delta.rows() - f.size();
  for (const auto& x : f)
    if (x > 1) brute.torsion.push_back(x);
  const bool cospan_ok = l1.invariants() == brute && brute == Invariants{0, {Integer(2)}};
  return {bad == 0 && cospan_ok, "50 directed posets, " + std::to_string(bad) + " nonzero higher limits; cospan lim1 = " +
                                     l1.to_string() + " (oracle " + FgAbGroup::from_invariants(brute).to_string() + ")"};
}

Outcome roos_suite() {
  std::mt19937_64 rng(4242);
  int bad = 0;
  for (int t = 0; t < 50; ++t) {
    std::size_t depth = 2 + rng() % 4;
    Tower tw = t % 2 ? fixture::random_explicit(rng, 1 + rng() % 3, depth) : fixture::random_periodic(rng, 1 + rng() % 3, rng() % 3);
    RoosReport r = roos_shift_check(tw, depth);
    const bool ok = r.pass() && r.cokernel.is_trivial() && is_isomorphic(r.kernel, truncated_lim_by_pullbacks(tw, depth));
    if (!ok) ++bad;
  }
  return {bad == 0, "50 towers, " + std::to_string(bad) + " failures"};
}

}  // namespace

int main() {
  const std::vector<Criterion> cs = {
      {1, "SNF suite", 10, snf_suite},
      {2, "homology table", 5, homology_table},
      {3, "solenoid towers", 10, solenoid},
      {4, "telescope cohomology", 30, telescope},
      {5, "nested free lim1 vs lim1_fg", 0, nested_free},
      {6, "colim of f.g. subtower lims", 0, lim_fg_suite},
      {7, "cochain pullback fuzz", 60, pullback_fuzz},
      {8, "Alexandroff scenario", 30, alexandroff},
      {9, "tau non-surjectivity", 0, p_power},
      {10, "finite poset derived limits", 0, poset_limits},
      {11, "Roos shift check", 0, roos_suite},
  };
  int failed = 0;
  for (const auto& c : cs) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && s >= c.limit_s) {
      o.ok = false;
      o.detail += "; over the time bound";
    }
    failed += !o.ok;
    std::printf("%s %2d %-30s %7.2fs  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.title.c_str(), s, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(cs.size()) - failed, cs.size());
  return failed > 125 ? 125 : failed;
}
