#pragma once

// Generators shared by the unit tests and the acceptance run.

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "prolim/posetlim.hpp"
#include "prolim/simplicial.hpp"
#include "prolim/towers.hpp"

namespace fixture {

using namespace prolim;

inline SimplicialComplex ngon(long n) {
  std::vector<Simplex> e;
  for (long i = 0; i < n; ++i) e.push_back(make_simplex({i, (i + 1) % n}));
  return SimplicialComplex(e);
}

inline SimplicialMap wrap(long n, long p) {
  std::map<Vertex, Vertex> vm;
  for (long i = 0; i < n * p; ++i) vm[i] = i % n;
  return SimplicialMap(ngon(n * p), ngon(n), vm);
}

SimplicialComplex sphere2() { return SimplicialComplex({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}); }

inline SimplicialComplex rp2() {
  return SimplicialComplex({{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                            {2, 3, 5}, {3, 4, 6}, {2, 4, 5}, {3, 5, 6}, {2, 4, 6}});
}

inline SimplicialComplex torus7() {
  std::vector<Simplex> f;
  for (long i = 0; i < 7; ++i) {
    f.push_back(make_simplex({i, (i + 1) % 7, (i + 3) % 7}));
    f.push_back(make_simplex({i, (i + 2) % 7, (i + 3) % 7}));
  }
  return SimplicialComplex(f);
}

// 3x3 grid on the square; `twist` glues the top edge reversed (Klein bottle).
inline SimplicialComplex grid_surface(bool twist) {
  auto v = [twist](long i, long j) -> long {
    if (j == 3) {
      j = 0;
      if (twist) i = (3 - i) % 3;
    }
    return 3 * (i % 3) + j;
  };
  std::vector<Simplex> f;
  for (long i = 0; i < 3; ++i)
    for (long j = 0; j < 3; ++j) {
      f.push_back(make_simplex({v(i, j), v(i + 1, j), v(i + 1, j + 1)}));
      f.push_back(make_simplex({v(i, j), v(i, j + 1), v(i + 1, j + 1)}));
    }
  return SimplicialComplex(f);
}


inline SimplicialComplex random_complex(std::mt19937_64& rng, long verts, std::size_t facets, std::size_t maxdim) {
  std::vector<Simplex> fs;
  std::vector<Vertex> vs;
  for (long v = 0; v < verts; ++v) vs.push_back(v);
  for (std::size_t i = 0; i < facets; ++i) {
    std::size_t d = rng() % (maxdim + 1);
    std::vector<Vertex> s;
    for (std::size_t j = 0; j <= d; ++j) s.push_back(static_cast<Vertex>(rng() % verts));
    fs.push_back(make_simplex(s));
  }
  return SimplicialComplex(vs, fs);
}

inline SimplicialComplex random_subcomplex(std::mt19937_64& rng, const SimplicialComplex& k) {
  std::vector<Simplex> keep;
  for (int d = 0; d <= k.dim(); ++d)
    for (const Simplex& s : k.simplices(d))
      if (rng() % 3 == 0) keep.push_back(s);
  return SimplicialComplex(keep);
}

inline Tower random_periodic(std::mt19937_64& rng, std::size_t gens, std::size_t prefix) {
  FgAbGroup g = oracle::random_canonical_group(rng, gens);
  GroupHom phi = oracle::random_hom(rng, g, g);
  std::vector<FgAbGroup> pre;
  for (std::size_t i = 0; i < prefix; ++i) pre.push_back(oracle::random_canonical_group(rng, gens));
  std::vector<GroupHom> maps;
  for (std::size_t i = 0; i < prefix; ++i) maps.push_back(oracle::random_hom(rng, i + 1 < prefix ? pre[i + 1] : g, pre[i]));
  return Tower::periodic(pre, maps, phi);
}

inline Tower random_explicit(std::mt19937_64& rng, std::size_t gens, std::size_t depth) {
  std::vector<FgAbGroup> gs;
  for (std::size_t i = 0; i < depth; ++i) gs.push_back(oracle::random_canonical_group(rng, gens));
  std::vector<GroupHom> maps;
  for (std::size_t i = 0; i + 1 < depth; ++i) maps.push_back(oracle::random_hom(rng, gs[i + 1], gs[i]));
  return Tower::explicit_finite(gs, maps);
}

inline std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

// Random order on n elements (i <= j only if i < j as integers), optionally with a top.
inline FinitePoset random_poset(std::mt19937_64& rng, std::size_t n, bool with_top) {
  std::vector<std::pair<std::string, std::string>> pairs;
  auto lbl = names(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng() % 3 == 0) pairs.emplace_back(lbl[i], lbl[j]);
  if (with_top)
    for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(lbl[i], lbl[n - 1]);
  return FinitePoset(lbl, pairs);
}

// G(x) = Z^k / L_x with L_x generated by R_z for z >= x; the map G(y) -> G(x)
// is multiplication by h(y)/h(x), h(x) = product of q_z over z <= x.
inline FinitePosetDiagram random_diagram(std::mt19937_64& rng, const FinitePoset& p, std::size_t k) {
  const std::size_t n = p.size();
  std::vector<IntMatrix> r;
  std::vector<Integer> q;
  for (std::size_t z = 0; z < n; ++z) {
    r.push_back(rng() % 2 ? oracle::random_matrix(rng, k, 1, -4, 4) : IntMatrix(k, 0));
    q.emplace_back(1 + rng() % 3);
  }
  std::vector<FgAbGroup> groups;
  std::vector<Integer> h(n, 1);
  for (std::size_t x = 0; x < n; ++x) {
    IntMatrix rel(k, 0);
    for (std::size_t z = 0; z < n; ++z) {
      if (p.leq(x, z)) rel = hconcat(rel, r[z]);
      if (p.leq(z, x)) h[x] *= q[z];
    }
    groups.emplace_back(k, rel);
  }
  std::map<std::pair<std::size_t, std::size_t>, GroupHom> maps;
  for (const auto& [x, y] : p.covering_pairs()) {
    Integer c = h[y] / h[x];
    maps.emplace(std::make_pair(x, y),
                 GroupHom(groups[y], groups[x], IntMatrix::diagonal(IntVector(k, c), k, k)));
  }
  return FinitePosetDiagram(p, groups, maps);
}

}  // namespace fixture
