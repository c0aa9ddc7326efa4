#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "prolim/fgab.hpp"

namespace prolim {

using Vertex = long;
using Simplex = std::vector<Vertex>;  // strictly increasing

/// Finite abstract simplicial complex. Simplices are oriented by the
/// increasing vertex order; copies share their immutable data.
class SimplicialComplex {
 public:
  SimplicialComplex();
  /// Downward closure of `facets`. Extra isolated vertices may be listed in
  /// `vertices`; every facet vertex must appear there when it is nonempty.
  SimplicialComplex(std::vector<Vertex> vertices, const std::vector<Simplex>& facets);
  explicit SimplicialComplex(const std::vector<Simplex>& facets) : SimplicialComplex({}, facets) {}

  /// -1 for the empty complex.
  int dim() const { return static_cast<int>(data_->cells.size()) - 1; }
  const std::vector<Vertex>& vertices() const { return data_->vertices; }
  std::size_t count(int k) const;
  const std::vector<Simplex>& simplices(int k) const;
  std::optional<std::size_t> index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s).has_value(); }
  std::size_t total() const;
  std::vector<Simplex> facets() const;

  /// Matrix of d_k : C_k -> C_{k-1} (rows (k-1)-simplices, columns k-simplices).
  IntMatrix boundary(int k) const;
  bool is_subcomplex_of(const SimplicialComplex& k) const;
  SimplicialComplex intersect(const SimplicialComplex& other) const;
  SimplicialComplex unite(const SimplicialComplex& other) const;
  long euler_characteristic() const;

 private:
  struct Data {
    std::vector<Vertex> vertices;
    std::vector<std::vector<Simplex>> cells;
    std::vector<std::map<Simplex, std::size_t>> index;
  };
  std::shared_ptr<const Data> data_;
};

/// Normalizes a simplex (sorts, removes duplicates).
Simplex make_simplex(std::vector<Vertex> v);

class SimplicialMap {
 public:
  /// Throws unless every source vertex is mapped and every simplex lands on a simplex.
  SimplicialMap(SimplicialComplex source, SimplicialComplex target, std::map<Vertex, Vertex> vertex_map);
  static SimplicialMap identity(const SimplicialComplex& k);
  static SimplicialMap inclusion(const SimplicialComplex& sub, const SimplicialComplex& k);

  const SimplicialComplex& source() const { return src_; }
  const SimplicialComplex& target() const { return tgt_; }
  const std::map<Vertex, Vertex>& vertex_map() const { return vm_; }
  Vertex operator()(Vertex v) const { return vm_.at(v); }
  /// Image simplex and the sign of the sorting permutation; sign 0 when degenerate.
  std::pair<Simplex, int> image(const Simplex& s) const;

 private:
  SimplicialComplex src_, tgt_;
  std::map<Vertex, Vertex> vm_;
};

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

/// Pair (K, L) with L a subcomplex (possibly empty).
struct ComplexPair {
  SimplicialComplex k;
  SimplicialComplex l;
  ComplexPair(SimplicialComplex kk) : k(std::move(kk)) {}
  ComplexPair(SimplicialComplex kk, SimplicialComplex ll);
  /// Cells of K not in L, in K's order.
  std::vector<Simplex> cells(int n) const;
};

struct ChainComplexData {
  std::vector<IntMatrix> boundaries;  // boundaries[n] : C_n -> C_{n-1}
  std::vector<std::size_t> ranks;     // rank of C_n
};

ChainComplexData chain_complex(const ComplexPair& p);

/// H_n(K, L) (or H^n) with cycle representatives over the relative cells.
Subquotient homology_data(const ComplexPair& p, int n);
Subquotient cohomology_data(const ComplexPair& p, int n);

/// Absolute H_0 is computed from components without elimination.
FgAbGroup homology(const SimplicialComplex& k, int n);
FgAbGroup homology(const SimplicialComplex& k, const SimplicialComplex& l, int n);
FgAbGroup cohomology(const SimplicialComplex& k, int n);
FgAbGroup cohomology(const SimplicialComplex& k, const SimplicialComplex& l, int n);

/// Number of connected components of the 1-skeleton.
std::size_t component_count(const SimplicialComplex& k);
/// Component index of each vertex (in vertices() order); components are
/// numbered by their least vertex.
std::vector<std::size_t> component_labels(const SimplicialComplex& k);

/// Chain map on relative n-chains, rows cells of the target pair.
IntMatrix chain_map_matrix(const SimplicialMap& f, const ComplexPair& from, const ComplexPair& to, int n);

/// f_* : H_n(K) -> H_n(K'). For n = 0 the groups are free on the components,
/// as returned by homology(k, 0), and no elimination is done.
GroupHom induced_map(const SimplicialMap& f, int n);
GroupHom induced_map(const SimplicialMap& f, const ComplexPair& from, const ComplexPair& to, int n);
/// f^* : H^n(K') -> H^n(K).
GroupHom induced_cohomology_map(const SimplicialMap& f, int n);
GroupHom induced_cohomology_map(const SimplicialMap& f, const ComplexPair& from, const ComplexPair& to, int n);

struct Cylinder {
  SimplicialComplex complex;
  SimplicialMap source_inclusion;
  SimplicialMap target_inclusion;
};

/// Ordered-join mapping cylinder: for each facet v_0 < ... < v_k of the source
/// and each i, the simplex {v_0..v_i} + f{v_i..v_k}. Source vertices are
/// numbered before target vertices.
Cylinder mapping_cylinder(const SimplicialMap& f);

struct Telescope {
  SimplicialComplex complex;
  std::vector<SimplicialMap> stage_inclusions;  // P_k -> T, k = 0..m
};

/// T_[0,m] for maps f_k : P_k -> P_{k+1}, k < m. Stage k vertices are
/// renumbered consecutively after stage k-1, so T_[0,j] is a subcomplex of T_[0,m].
Telescope mapping_telescope(const std::vector<SimplicialMap>& maps, std::size_t m);

struct PullbackCheck {
  bool surjective = false;
  FgAbGroup a;         // H^n(K, Z u W)
  FgAbGroup pullback;  // of H^n(K, W) -> H^n(Y, W') <- H^n(Y, Z u W')
  std::vector<IntVector> preimages;  // one per pullback generator, when surjective
  std::optional<IntVector> witness;  // pullback generator outside the image
};

/// Z <= Y <= K and W <= K; W' = W n Y is formed here.
PullbackCheck check_cochain_pullback(const SimplicialComplex& k, const SimplicialComplex& y,
                                     const SimplicialComplex& z, const SimplicialComplex& w, int n);

}  // namespace prolim
