#include "prolim/simplicial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace prolim {

namespace {

std::string show(const Simplex& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "]";
}

}  // namespace

Simplex make_simplex(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

SimplicialComplex::SimplicialComplex() : data_(std::make_shared<Data>()) {}

SimplicialComplex::SimplicialComplex(std::vector<Vertex> vertices, const std::vector<Simplex>& facets) {
  auto d = std::make_shared<Data>();
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw std::invalid_argument("complex: repeated vertex in the vertex list");
  const bool declared = !vertices.empty();
  std::vector<std::set<Simplex>> cells;
  auto add = [&](const Simplex& s) {
    const std::size_t k = s.size() - 1;
    if (cells.size() <= k) cells.resize(k + 1);
    cells[k].insert(s);
  };
  for (Vertex v : vertices) add({v});
  for (const Simplex& f0 : facets) {
    if (f0.empty()) continue;
    Simplex f = f0;
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end())
      throw std::invalid_argument("complex: facet " + show(f0) + " repeats a vertex");
    if (f.size() > 20) throw std::invalid_argument("complex: facet " + show(f0) + " has more than 20 vertices");
    if (declared)
      for (Vertex v : f)
        if (!std::binary_search(vertices.begin(), vertices.end(), v))
          throw std::invalid_argument("complex: facet " + show(f0) + " uses undeclared vertex " + std::to_string(v));
    const std::size_t n = f.size();
    for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
      Simplex s;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1UL << i)) s.push_back(f[i]);
      add(s);
    }
  }
  for (const auto& level : cells) {
    d->cells.emplace_back(level.begin(), level.end());
    std::map<Simplex, std::size_t> idx;
    for (std::size_t i = 0; i < d->cells.back().size(); ++i) idx.emplace(d->cells.back()[i], i);
    d->index.push_back(std::move(idx));
  }
  if (!d->cells.empty())
    for (const auto& s : d->cells[0]) d->vertices.push_back(s[0]);
  data_ = std::move(d);
}

std::size_t SimplicialComplex::count(int k) const {
  if (k < 0 || k > dim()) return 0;
  return data_->cells[static_cast<std::size_t>(k)].size();
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
  static const std::vector<Simplex> none;
  if (k < 0 || k > dim()) return none;
  return data_->cells[static_cast<std::size_t>(k)];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty()) return std::nullopt;
  const int k = static_cast<int>(s.size()) - 1;
  if (k > dim()) return std::nullopt;
  const auto& idx = data_->index[static_cast<std::size_t>(k)];
  auto it = idx.find(s);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

std::size_t SimplicialComplex::total() const {
  std::size_t n = 0;
  for (const auto& c : data_->cells) n += c.size();
  return n;
}

std::vector<Simplex> SimplicialComplex::facets() const {
  std::vector<Simplex> out;
  for (int k = 0; k <= dim(); ++k) {
    std::set<Simplex> covered;
    for (const Simplex& up : simplices(k + 1))
      for (std::size_t j = 0; j < up.size(); ++j) {
        Simplex f = up;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
        covered.insert(f);
      }
    for (const Simplex& s : simplices(k))
      if (!covered.count(s)) out.push_back(s);
  }
  return out;
}

IntMatrix SimplicialComplex::boundary(int k) const {
  IntMatrix m(count(k - 1), count(k));
  if (k <= 0) return m;
  const auto& cols = simplices(k);
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t j = 0; j < cols[c].size(); ++j) {
      Simplex f = cols[c];
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
      m(*index_of(f), c) = (j % 2 == 0) ? 1 : -1;
    }
  return m;
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& k) const {
  for (int d = 0; d <= dim(); ++d)
    for (const Simplex& s : simplices(d))
      if (!k.contains(s)) return false;
  return true;
}

SimplicialComplex SimplicialComplex::intersect(const SimplicialComplex& other) const {
  std::vector<Simplex> common;
  for (int d = 0; d <= dim(); ++d)
    for (const Simplex& s : simplices(d))
      if (other.contains(s)) common.push_back(s);
  return SimplicialComplex(common);
}

SimplicialComplex SimplicialComplex::unite(const SimplicialComplex& other) const {
  std::vector<Simplex> all = facets();
  for (const Simplex& s : other.facets()) all.push_back(s);
  return SimplicialComplex(all);
}

long SimplicialComplex::euler_characteristic() const {
  long chi = 0;
  for (int k = 0; k <= dim(); ++k) chi += (k % 2 ? -1 : 1) * static_cast<long>(count(k));
  return chi;
}

SimplicialMap::SimplicialMap(SimplicialComplex source, SimplicialComplex target, std::map<Vertex, Vertex> vm)
    : src_(std::move(source)), tgt_(std::move(target)), vm_(std::move(vm)) {
  for (Vertex v : src_.vertices())
    if (!vm_.count(v)) throw std::invalid_argument("simplicial map: vertex " + std::to_string(v) + " is not mapped");
  for (auto it = vm_.begin(); it != vm_.end();) {
    if (!src_.contains({it->first}))
      throw std::invalid_argument("simplicial map: " + std::to_string(it->first) + " is not a source vertex");
    ++it;
  }
  for (const Simplex& f : src_.facets()) {
    Simplex img;
    for (Vertex v : f) img.push_back(vm_.at(v));
    img = make_simplex(img);
    if (!tgt_.contains(img))
      throw std::invalid_argument("simplicial map: image of " + show(f) + " is " + show(img) +
                                  ", not a simplex of the target");
  }
}

SimplicialMap SimplicialMap::identity(const SimplicialComplex& k) {
  std::map<Vertex, Vertex> vm;
  for (Vertex v : k.vertices()) vm[v] = v;
  return SimplicialMap(k, k, vm);
}

SimplicialMap SimplicialMap::inclusion(const SimplicialComplex& sub, const SimplicialComplex& k) {
  std::map<Vertex, Vertex> vm;
  for (Vertex v : sub.vertices()) vm[v] = v;
  return SimplicialMap(sub, k, vm);
}

std::pair<Simplex, int> SimplicialMap::image(const Simplex& s) const {
  Simplex img;
  for (Vertex v : s) img.push_back(vm_.at(v));
  // sign of the sorting permutation by counting inversions
  int sign = 1;
  for (std::size_t i = 0; i < img.size(); ++i)
    for (std::size_t j = i + 1; j < img.size(); ++j) {
      if (img[i] == img[j]) return {make_simplex(img), 0};
      if (img[i] > img[j]) sign = -sign;
    }
  return {make_simplex(img), sign};
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  if (f.target().vertices() != g.source().vertices() || f.target().total() != g.source().total())
    throw std::invalid_argument("compose: simplicial maps are not composable");
  std::map<Vertex, Vertex> vm;
  for (const auto& [v, w] : f.vertex_map()) vm[v] = g(w);
  return SimplicialMap(f.source(), g.target(), vm);
}

ComplexPair::ComplexPair(SimplicialComplex kk, SimplicialComplex ll) : k(std::move(kk)), l(std::move(ll)) {
  if (!l.is_subcomplex_of(k)) throw std::invalid_argument("pair: L is not a subcomplex of K");
}

std::vector<Simplex> ComplexPair::cells(int n) const {
  std::vector<Simplex> out;
  for (const Simplex& s : k.simplices(n))
    if (!l.contains(s)) out.push_back(s);
  return out;
}

ChainComplexData chain_complex(const ComplexPair& p) {
  ChainComplexData out;
  const int top = p.k.dim();
  std::vector<std::vector<std::size_t>> keep;  // positions of relative cells inside K's cells
  for (int n = 0; n <= top; ++n) {
    std::vector<std::size_t> pos;
    const auto& all = p.k.simplices(n);
    for (std::size_t i = 0; i < all.size(); ++i)
      if (!p.l.contains(all[i])) pos.push_back(i);
    out.ranks.push_back(pos.size());
    keep.push_back(std::move(pos));
  }
  for (int n = 0; n <= top; ++n) {
    if (n == 0) {
      out.boundaries.emplace_back(0, out.ranks[0]);
      continue;
    }
    IntMatrix full = p.k.boundary(n);
    const auto& rows = keep[static_cast<std::size_t>(n - 1)];
    const auto& cols = keep[static_cast<std::size_t>(n)];
    IntMatrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = full(rows[i], cols[j]);
    out.boundaries.push_back(std::move(m));
  }
  return out;
}

namespace {

std::size_t rank_at(const ChainComplexData& c, int n) {
  return (n < 0 || n >= static_cast<int>(c.ranks.size())) ? 0 : c.ranks[static_cast<std::size_t>(n)];
}

// d_n : C_n -> C_{n-1}, zero outside the stored range.
IntMatrix boundary_at(const ChainComplexData& c, int n) {
  if (n <= 0 || n >= static_cast<int>(c.boundaries.size())) return IntMatrix(rank_at(c, n - 1), rank_at(c, n));
  return c.boundaries[static_cast<std::size_t>(n)];
}

}  // namespace

Subquotient homology_data(const ComplexPair& p, int n) {
  if (n < 0) throw std::invalid_argument("homology: negative degree");
  ChainComplexData c = chain_complex(p);
  FgAbGroup up = FgAbGroup::free(rank_at(c, n + 1)), mid = FgAbGroup::free(rank_at(c, n)),
            down = FgAbGroup::free(rank_at(c, n - 1));
  return homology(GroupHom(up, mid, boundary_at(c, n + 1)), GroupHom(mid, down, boundary_at(c, n)));
}

Subquotient cohomology_data(const ComplexPair& p, int n) {
  if (n < 0) throw std::invalid_argument("cohomology: negative degree");
  ChainComplexData c = chain_complex(p);
  FgAbGroup before = FgAbGroup::free(rank_at(c, n - 1)), mid = FgAbGroup::free(rank_at(c, n)),
            after = FgAbGroup::free(rank_at(c, n + 1));
  return homology(GroupHom(before, mid, boundary_at(c, n).transpose()),
                  GroupHom(mid, after, boundary_at(c, n + 1).transpose()));
}

FgAbGroup homology(const SimplicialComplex& k, int n) {
  if (n == 0) return FgAbGroup::free(component_count(k));
  return homology_data(ComplexPair(k), n).group;
}
FgAbGroup homology(const SimplicialComplex& k, const SimplicialComplex& l, int n) {
  return homology_data(ComplexPair(k, l), n).group;
}
FgAbGroup cohomology(const SimplicialComplex& k, int n) { return cohomology_data(ComplexPair(k), n).group; }
FgAbGroup cohomology(const SimplicialComplex& k, const SimplicialComplex& l, int n) {
  return cohomology_data(ComplexPair(k, l), n).group;
}

std::vector<std::size_t> component_labels(const SimplicialComplex& k) {
  const auto& vs = k.vertices();
  std::vector<std::size_t> parent(vs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Simplex& e : k.simplices(1)) {
    std::size_t a = find(*k.index_of({e[0]})), b = find(*k.index_of({e[1]}));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> label(vs.size()), root_label(vs.size(), vs.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::size_t r = find(i);
    if (root_label[r] == vs.size()) root_label[r] = next++;
    label[i] = root_label[r];
  }
  return label;
}

std::size_t component_count(const SimplicialComplex& k) {
  auto l = component_labels(k);
  return l.empty() ? 0 : *std::max_element(l.begin(), l.end()) + 1;
}

IntMatrix chain_map_matrix(const SimplicialMap& f, const ComplexPair& from, const ComplexPair& to, int n) {
  if (!from.k.is_subcomplex_of(f.source()) || !to.k.is_subcomplex_of(f.target()))
    throw std::invalid_argument("chain map: pairs do not match the map's source and target");
  for (int d = 0; d <= from.l.dim(); ++d)
    for (const Simplex& s : from.l.simplices(d))
      if (!to.l.contains(f.image(s).first))
        throw std::invalid_argument("chain map: " + show(s) + " lies in L but its image is outside L'");
  auto src = from.cells(n), tgt = to.cells(n);
  std::map<Simplex, std::size_t> where;
  for (std::size_t i = 0; i < tgt.size(); ++i) where.emplace(tgt[i], i);
  IntMatrix m(tgt.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    auto [img, sign] = f.image(src[j]);
    if (sign == 0) continue;
    auto it = where.find(img);
    if (it == where.end()) {
      if (!to.k.contains(img)) throw std::invalid_argument("chain map: image of " + show(src[j]) + " leaves K'");
      continue;  // lands in L'
    }
    m(it->second, j) = sign;
  }
  return m;
}

GroupHom induced_map(const SimplicialMap& f, int n) {
  if (n == 0) {
    const auto& sv = f.source().vertices();
    auto ls = component_labels(f.source()), lt = component_labels(f.target());
    const std::size_t cs = ls.empty() ? 0 : *std::max_element(ls.begin(), ls.end()) + 1;
    const std::size_t ct = lt.empty() ? 0 : *std::max_element(lt.begin(), lt.end()) + 1;
    IntMatrix m(ct, cs);
    for (std::size_t i = 0; i < sv.size(); ++i) m(lt[*f.target().index_of({f(sv[i])})], ls[i]) = 1;
    return GroupHom(FgAbGroup::free(cs), FgAbGroup::free(ct), m);
  }
  return induced_map(f, ComplexPair(f.source()), ComplexPair(f.target()), n);
}

GroupHom induced_map(const SimplicialMap& f, const ComplexPair& from, const ComplexPair& to, int n) {
  IntMatrix c = chain_map_matrix(f, from, to, n);
  Subquotient hs = homology_data(from, n), ht = homology_data(to, n);
  IntMatrix m(ht.group.generators(), hs.group.generators());
  for (std::size_t j = 0; j < hs.reps.cols(); ++j) {
    auto x = ht.classify(c * hs.reps.column(j));
    if (!x) throw std::logic_error("induced map: image of a cycle is not a cycle");
    m.set_column(j, *x);
  }
  return GroupHom(hs.group, ht.group, m);
}

GroupHom induced_cohomology_map(const SimplicialMap& f, int n) {
  return induced_cohomology_map(f, ComplexPair(f.source()), ComplexPair(f.target()), n);
}

GroupHom induced_cohomology_map(const SimplicialMap& f, const ComplexPair& from, const ComplexPair& to, int n) {
  IntMatrix ct = chain_map_matrix(f, from, to, n).transpose();
  Subquotient hs = cohomology_data(from, n), ht = cohomology_data(to, n);
  IntMatrix m(hs.group.generators(), ht.group.generators());
  for (std::size_t j = 0; j < ht.reps.cols(); ++j) {
    auto x = hs.classify(ct * ht.reps.column(j));
    if (!x) throw std::logic_error("induced map: pullback of a cocycle is not a cocycle");
    m.set_column(j, *x);
  }
  return GroupHom(ht.group, hs.group, m);
}

namespace {

std::map<Vertex, Vertex> renumber(const SimplicialComplex& k, Vertex offset) {
  std::map<Vertex, Vertex> out;
  for (Vertex v : k.vertices()) out[v] = offset++;
  return out;
}

void cylinder_facets(const SimplicialMap& f, const std::map<Vertex, Vertex>& sid, const std::map<Vertex, Vertex>& tid,
                     std::vector<Simplex>& out) {
  for (const Simplex& s : f.source().facets())
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex c;
      for (std::size_t a = 0; a <= i; ++a) c.push_back(sid.at(s[a]));
      for (std::size_t a = i; a < s.size(); ++a) c.push_back(tid.at(f(s[a])));
      out.push_back(make_simplex(c));
    }
  for (const Simplex& t : f.target().facets()) {
    Simplex c;
    for (Vertex v : t) c.push_back(tid.at(v));
    out.push_back(make_simplex(c));
  }
}

SimplicialComplex relabel(const SimplicialComplex& k, const std::map<Vertex, Vertex>& id) {
  std::vector<Simplex> fs;
  for (const Simplex& s : k.facets()) {
    Simplex c;
    for (Vertex v : s) c.push_back(id.at(v));
    fs.push_back(make_simplex(c));
  }
  return SimplicialComplex(fs);
}

bool same_complex(const SimplicialComplex& a, const SimplicialComplex& b) {
  return a.vertices() == b.vertices() && a.total() == b.total() && a.is_subcomplex_of(b);
}

}  // namespace

Cylinder mapping_cylinder(const SimplicialMap& f) {
  auto sid = renumber(f.source(), 0);
  auto tid = renumber(f.target(), static_cast<Vertex>(f.source().vertices().size()));
  std::vector<Simplex> fs;
  cylinder_facets(f, sid, tid, fs);
  SimplicialComplex cyl(fs);
  return Cylinder{cyl, SimplicialMap(f.source(), cyl, sid), SimplicialMap(f.target(), cyl, tid)};
}

Telescope mapping_telescope(const std::vector<SimplicialMap>& maps, std::size_t m) {
  if (m > maps.size())
    throw std::invalid_argument("telescope: length " + std::to_string(m) + " exceeds the " +
                                std::to_string(maps.size()) + " maps given");
  if (maps.empty()) throw std::invalid_argument("telescope: no maps given");
  for (std::size_t k = 0; k + 1 < maps.size(); ++k)
    if (!same_complex(maps[k].target(), maps[k + 1].source()))
      throw std::invalid_argument("telescope: map " + std::to_string(k) + " does not land in the source of map " +
                                  std::to_string(k + 1));
  std::vector<SimplicialComplex> stages{maps[0].source()};
  for (std::size_t k = 0; k < m; ++k) stages.push_back(maps[k].target());
  std::vector<std::map<Vertex, Vertex>> ids;
  Vertex offset = 0;
  for (const auto& s : stages) {
    ids.push_back(renumber(s, offset));
    offset += static_cast<Vertex>(s.vertices().size());
  }
  std::vector<Simplex> fs;
  if (m == 0) fs = relabel(stages[0], ids[0]).facets();
  for (std::size_t k = 0; k < m; ++k) cylinder_facets(maps[k], ids[k], ids[k + 1], fs);
  std::vector<Vertex> vs;
  for (Vertex v = 0; v < offset; ++v) vs.push_back(v);
  SimplicialComplex t(vs, fs);
  Telescope out{t, {}};
  for (std::size_t k = 0; k <= m; ++k) out.stage_inclusions.emplace_back(stages[k], t, ids[k]);
  return out;
}

PullbackCheck check_cochain_pullback(const SimplicialComplex& k, const SimplicialComplex& y,
                                     const SimplicialComplex& z, const SimplicialComplex& w, int n) {
  if (!y.is_subcomplex_of(k)) throw std::invalid_argument("pullback check: Y is not a subcomplex of K");
  if (!z.is_subcomplex_of(y)) throw std::invalid_argument("pullback check: Z is not a subcomplex of Y");
  if (!w.is_subcomplex_of(k)) throw std::invalid_argument("pullback check: W is not a subcomplex of K");
  SimplicialComplex wy = w.intersect(y);
  ComplexPair pa(k, z.unite(w)), pb(y, z.unite(wy)), pc(k, w), pd(y, wy);
  SimplicialMap idk = SimplicialMap::identity(k), idy = SimplicialMap::identity(y);
  SimplicialMap inc = SimplicialMap::inclusion(y, k);
  GroupHom a_to_c = induced_cohomology_map(idk, pc, pa, n);
  GroupHom a_to_b = induced_cohomology_map(inc, pb, pa, n);
  GroupHom c_to_d = induced_cohomology_map(inc, pd, pc, n);
  GroupHom b_to_d = induced_cohomology_map(idy, pd, pb, n);
  Pullback pb_ = pullback(c_to_d, b_to_d);
  GroupHom u = pb_.factor(a_to_c, a_to_b);
  PullbackCheck out;
  out.a = u.source();
  out.pullback = pb_.group;
  Subgroup im(pb_.group, u.matrix());
  const std::size_t g = pb_.group.generators();
  for (std::size_t j = 0; j < g; ++j) {
    IntVector e(g, 0);
    e[j] = 1;
    auto c = im.coordinates(e);
    if (!c) {
      out.surjective = false;
      out.witness = e;
      out.preimages.clear();
      return out;
    }
    out.preimages.push_back(*c);
  }
  out.surjective = true;
  return out;
}

}  // namespace prolim
