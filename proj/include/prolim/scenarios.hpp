#pragma once

#include <string>
#include <vector>

#include "prolim/bisystem.hpp"
#include "prolim/io.hpp"
#include "prolim/nerve.hpp"
#include "prolim/simplicial.hpp"
#include "prolim/towers.hpp"

namespace prolim {

struct Check {
  std::string name;
  std::string status;  // "pass", "fail", "undetermined"
  std::string detail;
};

/// JSON results with a certificates block, plus a plain-text narrative.
struct Report {
  std::string scenario;
  io::json parameters = io::json::object();
  io::json results = io::json::object();
  std::vector<Check> certificates;
  std::vector<std::string> narrative;

  void check(const std::string& name, bool ok, const std::string& detail);
  void undetermined(const std::string& name, const std::string& detail);
  /// No certificate failed.
  bool passed() const;
  io::json to_json() const;
  std::string text() const;
};

/// maps[i] : stages[i+1] -> stages[i].
struct TowerOfComplexes {
  std::vector<SimplicialComplex> stages;
  std::vector<SimplicialMap> maps;
};

TowerOfComplexes tower_of_complexes_from_json(const io::json& j);
io::json to_json(const TowerOfComplexes& t);

/// Cycle on vertices 0..n-1, n >= 3.
SimplicialComplex polygon(std::size_t n);
/// n-gon -> m-gon, v -> v mod m; degree n/m. Requires m | n.
SimplicialMap wrap_map(std::size_t n, std::size_t m);

/// H_n of each stage with the induced maps. The tower repeats the last
/// computed map forever (the stages of the built-in scenarios are
/// self-similar); a single stage gives the constant tower.
struct HomologyTower {
  std::vector<GroupHom> maps;  // maps[i] : H(stage i+1) -> H(stage i)
  std::vector<FgAbGroup> groups;
  Tower tower;
};
HomologyTower homology_tower(const TowerOfComplexes& t, int n);

struct SolenoidScenario {
  long p = 2;
  std::size_t depth = 0;
  TowerOfComplexes complexes;  // stage i is the 3 p^i-gon, i = 0..depth
  HomologyTower h1;
  LimResult lim;
  Lim1Class lim1;
  Report report;
};
SolenoidScenario scenario_solenoid(long p, std::size_t depth);

struct TelescopeScenario {
  long p = 2;
  std::size_t m = 0;
  std::vector<SimplicialMap> bonding;          // P_k -> P_{k+1}, P_k the 3 p^(m-k)-gon
  std::vector<SimplicialComplex> telescopes;   // T_[0,k], k = 0..m
  std::vector<FgAbGroup> h1;                   // H^1(T_[0,k])
  std::vector<GroupHom> restrictions;          // H^1(T_[0,k+1]) -> H^1(T_[0,k])
  Tower tower;
  LimResult lim;
  Lim1Class lim1;
  Report report;
};
TelescopeScenario scenario_telescope(long p, std::size_t m);

struct NestedFreeScenario {
  std::size_t width = 0;
  Tower tower;
  LimResult lim;
  Lim1Class lim1, lim1_fg;
  Report report;
};
NestedFreeScenario scenario_nested_free(std::size_t width);

/// Sample of {1/n : n >= 1} x [-1,1] with a = (0,1), b = (0,-1); ball covers
/// C_k of radius 1/((k+1)(k+2)); compacta K_j = sample minus (-1/j,1/j)^2.
struct AlexandroffScenario {
  std::size_t scales = 0, columns = 0;
  std::vector<CarrierPoint> carrier;
  std::vector<Rational> radii;                   // r_k, k = 1..scales
  std::vector<Cover> covers;                     // C_k
  std::vector<std::vector<std::string>> compacta;  // K_j, j = 1..columns
  std::vector<std::size_t> nerve_sizes;          // simplices of N(C_k), 1-skeleton
  std::vector<bool> dies;                        // [a]-[b] = 0 in H_0 N(C_k)
  std::vector<std::vector<bool>> separated;      // [j-1][k-1]: [a]-[b] != 0 in H_0 N(C_k|K_j)
  BiSystem bisystem;
  TauReport tau;
  Report report;
};
AlexandroffScenario scenario_alexandroff(std::size_t scales, std::size_t columns);

struct PPowerScenario {
  long p = 2;
  std::size_t window = 0;
  BiSystem system;
  TauReport tau;
  bool thread_verified = false;
  Report report;
};
PPowerScenario scenario_p_power_bisystem(long p, std::size_t window = 6);

/// Slots of 0 -> lim^1 H_{n+1} -> H_n(lim) -> lim H_n -> 0 for a tower of complexes.
Report verify_milnor(const TowerOfComplexes& t, int n, const std::string& name = "tower");

/// Constant tower of a triangle boundary.
TowerOfComplexes constant_circle_tower(std::size_t depth);

/// Named scenario with parameters (p, depth, m, width, scales, columns, window).
Report run_scenario(const std::string& name, const io::json& params);

}  // namespace prolim
