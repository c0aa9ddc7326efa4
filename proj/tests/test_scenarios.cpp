#include <algorithm>
#include <map>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "prolim/scenarios.hpp"

using namespace prolim;

namespace {

// union-find components of the 1-skeleton, independent of the nerve code:
// two balls are joined when some carrier point lies in both
struct Dsu {
  std::vector<std::size_t> p;
  explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void join(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

bool joined(const Cover& c, const std::string& x, const std::string& y) {
  Dsu d(c.size());
  for (std::size_t q = 0; q < c.carrier().size(); ++q)
    for (std::size_t e : c.star(q)) d.join(e, c.star(q).front());
  return d.find(*c.element_index(x)) == d.find(*c.element_index(y));
}

}  // namespace

TEST_CASE("polygons and wrap maps") {
  CHECK(homology(polygon(7), 1).invariants() == Invariants{1, {}});
  for (std::size_t m : {3, 4}) {
    GroupHom h = induced_map(wrap_map(3 * m, m), 1);
    CHECK(abs(h.matrix()(0, 0)) == 3);
  }
  CHECK_THROWS_AS(wrap_map(7, 3), std::invalid_argument);
  CHECK_THROWS_AS(polygon(2), std::invalid_argument);
}

TEST_CASE("solenoid") {
  for (long p : {2, 3}) {
    SolenoidScenario s = scenario_solenoid(p, 3);
    CHECK(s.report.passed());
    REQUIRE(s.h1.maps.size() == 3);
    for (std::size_t i = 0; i <= 3; ++i) {
      // polygon sizes from the formula, cycle rank from Euler characteristic
      std::size_t n = 3;
      for (std::size_t k = 0; k < i; ++k) n *= static_cast<std::size_t>(p);
      CHECK(s.complexes.stages[i].count(0) == n);
      CHECK(1 - s.complexes.stages[i].euler_characteristic() == 1);
    }
    for (const auto& h : s.h1.maps) CHECK(abs(h.matrix()(0, 0)) == p);
    CHECK(s.lim.group.is_trivial());
    CHECK_FALSE(s.lim1.vanishes);
  }
}

TEST_CASE("telescope") {
  TelescopeScenario s = scenario_telescope(2, 3);
  CHECK(s.report.passed());
  CHECK(s.h1.size() == 4);
  for (const auto& g : s.h1) CHECK(g.invariants() == Invariants{1, {}});
  for (const auto& r : s.restrictions) CHECK(abs(r.matrix()(0, 0)) == 2);
  CHECK(s.lim.group.is_trivial());
  CHECK_FALSE(s.lim1.vanishes);
  // each telescope is contractible onto a circle
  for (const auto& t : s.telescopes) CHECK(t.euler_characteristic() == 0);
}

TEST_CASE("nested free") {
  NestedFreeScenario s = scenario_nested_free(5);
  CHECK(s.report.passed());
  CHECK_FALSE(s.lim1.vanishes);
  CHECK(s.lim1_fg.vanishes);
  CHECK(s.lim.group.is_trivial());
}

TEST_CASE("alexandroff against union-find") {
  AlexandroffScenario s = scenario_alexandroff(3, 3);
  CHECK(s.report.passed());
  for (std::size_t k = 0; k < s.scales; ++k) {
    CHECK(s.dies[k] == joined(s.covers[k], "Ba", "Bb"));
    for (std::size_t j = 0; j < s.columns; ++j) {
      Cover r = restrict(s.covers[k], s.compacta[j]);
      CHECK(s.separated[j][k] == !joined(r, "Ba", "Bb"));
    }
  }
  for (bool d : s.dies) CHECK(d);
  CHECK(s.tau.injective == Verdict::CertifiedFalse);
  REQUIRE(s.tau.kernel_witness);
  CHECK(*s.tau.kernel_witness == IntVector{1, -1});
  CHECK_THROWS_AS(scenario_alexandroff(1, 3), std::invalid_argument);
}

TEST_CASE("p-power bisystem") {
  PPowerScenario s = scenario_p_power_bisystem(2);
  CHECK(s.report.passed());
  CHECK(s.tau.surjective == Verdict::CertifiedFalse);
  CHECK(s.thread_verified);
  // window (4,4) is enough
  CHECK(scenario_p_power_bisystem(3, 4).tau.surjective == Verdict::CertifiedFalse);
}

TEST_CASE("milnor sequences") {
  Report c = verify_milnor(constant_circle_tower(3), 0, "circle");
  CHECK(c.passed());
  CHECK(c.results["exact"] == true);
  Report c1 = verify_milnor(constant_circle_tower(3), 1, "circle");
  CHECK(c1.results["exact"] == true);

  SolenoidScenario s = scenario_solenoid(2, 3);
  Report h1 = verify_milnor(s.complexes, 1, "solenoid");
  CHECK(h1.passed());
  CHECK(h1.results["slots"]["lim_H_1"]["group"]["invariants"] == "0");
  Report h0 = verify_milnor(s.complexes, 0, "solenoid");
  CHECK(h0.results["slots"]["lim1_H_1"]["class"] == "NonVanishing");
  CHECK(h0.results["exact"].is_null());
}

TEST_CASE("identity bonding maps give lim = H_n(stage 0) and vanishing lim^1") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 5; ++t) {
    std::vector<Simplex> fs;
    for (int i = 0; i < 6; ++i) {
      Simplex s;
      for (Vertex v = 0; v < 6; ++v)
        if (rng() % 2) s.push_back(v);
      if (s.size() >= 2 && s.size() <= 3) fs.push_back(s);
    }
    if (fs.empty()) fs.push_back({0, 1});
    SimplicialComplex k(fs);
    TowerOfComplexes tw{{k, k, k}, {SimplicialMap::identity(k), SimplicialMap::identity(k)}};
    for (int n = 0; n <= 1; ++n) {
      Report r = verify_milnor(tw, n);
      CHECK(r.passed());
      CHECK(r.results["exact"] == true);
      CHECK(r.results["slots"]["lim_H_" + std::to_string(n)]["group"]["invariants"] == homology(k, n).to_string());
    }
  }
}

TEST_CASE("scenarios are deterministic") {
  for (const char* name : {"solenoid", "nested_free", "p_power_bisystem", "alexandroff"}) {
    io::json params = {{"depth", 2}, {"scales", 2}, {"columns", 3}};
    CHECK(run_scenario(name, params).to_json().dump() == run_scenario(name, params).to_json().dump());
  }
  CHECK_THROWS_AS(run_scenario("nope", {}), std::invalid_argument);
}

TEST_CASE("tower of complexes json") {
  SolenoidScenario s = scenario_solenoid(2, 2);
  TowerOfComplexes t = tower_of_complexes_from_json(to_json(s.complexes));
  CHECK(t.stages.size() == 3);
  CHECK(verify_milnor(t, 1).to_json()["results"] == verify_milnor(s.complexes, 1).to_json()["results"]);
}
