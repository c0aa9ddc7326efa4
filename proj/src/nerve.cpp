#include "prolim/nerve.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace prolim {

namespace {

void check_ids(const std::vector<CarrierPoint>& carrier) {
  std::set<std::string> seen;
  for (const auto& p : carrier)
    if (!seen.insert(p.id).second) throw std::invalid_argument("cover: duplicate carrier point '" + p.id + "'");
}

std::map<std::string, std::size_t> id_index(const std::vector<CarrierPoint>& carrier) {
  std::map<std::string, std::size_t> out;
  for (std::size_t i = 0; i < carrier.size(); ++i) out.emplace(carrier[i].id, i);
  return out;
}

bool subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

void Cover::finish() {
  std::set<std::string> seen;
  for (std::size_t e = 0; e < labels_.size(); ++e) {
    if (!seen.insert(labels_[e]).second) throw std::invalid_argument("cover: duplicate element label '" + labels_[e] + "'");
    if (members_[e].empty()) throw std::invalid_argument("cover: element '" + labels_[e] + "' is empty");
  }
  star_.assign(carrier_.size(), {});
  for (std::size_t e = 0; e < members_.size(); ++e)
    for (std::size_t p : members_[e]) star_[p].push_back(e);
  for (std::size_t p = 0; p < carrier_.size(); ++p)
    if (star_[p].empty()) throw std::invalid_argument("cover: point '" + carrier_[p].id + "' lies in no element");
}

Cover::Cover(std::vector<CarrierPoint> carrier,
             const std::vector<std::pair<std::string, std::vector<std::string>>>& elements)
    : carrier_(std::move(carrier)) {
  check_ids(carrier_);
  auto idx = id_index(carrier_);
  for (const auto& [label, ids] : elements) {
    std::vector<std::size_t> m;
    for (const auto& id : ids) {
      auto it = idx.find(id);
      if (it == idx.end()) throw std::invalid_argument("cover: element '" + label + "' uses unknown point '" + id + "'");
      m.push_back(it->second);
    }
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    labels_.push_back(label);
    members_.push_back(std::move(m));
  }
  finish();
}

Cover Cover::balls(std::vector<CarrierPoint> carrier, const std::vector<Ball>& balls) {
  Cover c;
  c.carrier_ = std::move(carrier);
  check_ids(c.carrier_);
  for (const auto& p : c.carrier_)
    if (!p.xy) throw std::invalid_argument("cover: point '" + p.id + "' has no coordinates");
  for (const auto& b : balls) {
    if (b.radius < 0) throw std::invalid_argument("cover: ball '" + b.label + "' has negative radius");
    const Rational r2 = b.radius * b.radius;
    std::vector<std::size_t> m;
    for (std::size_t i = 0; i < c.carrier_.size(); ++i) {
      Rational dx = c.carrier_[i].xy->first - b.cx, dy = c.carrier_[i].xy->second - b.cy;
      if (dx * dx + dy * dy <= r2) m.push_back(i);
    }
    c.labels_.push_back(b.label);
    c.members_.push_back(std::move(m));
  }
  c.finish();
  return c;
}

std::size_t Cover::point_index(const std::string& id) const {
  for (std::size_t i = 0; i < carrier_.size(); ++i)
    if (carrier_[i].id == id) return i;
  throw std::invalid_argument("cover: unknown point '" + id + "'");
}

std::optional<std::size_t> Cover::element_index(const std::string& label) const {
  for (std::size_t e = 0; e < labels_.size(); ++e)
    if (labels_[e] == label) return e;
  return std::nullopt;
}

SimplicialComplex nerve(const Cover& c, int max_dim) {
  std::vector<Vertex> vs;
  for (std::size_t e = 0; e < c.size(); ++e) vs.push_back(static_cast<Vertex>(e));
  std::set<Simplex> fs;
  for (std::size_t p = 0; p < c.carrier().size(); ++p) {
    const auto& st = c.star(p);
    Simplex s(st.begin(), st.end());
    if (max_dim < 0 || s.size() <= static_cast<std::size_t>(max_dim) + 1) {
      fs.insert(s);
      continue;
    }
    // all (max_dim+1)-subsets of the star
    const std::size_t k = static_cast<std::size_t>(max_dim) + 1;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      Simplex sub;
      for (std::size_t i : idx) sub.push_back(s[i]);
      fs.insert(sub);
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == s.size() - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return SimplicialComplex(vs, std::vector<Simplex>(fs.begin(), fs.end()));
}

Cover restrict(const Cover& c, const std::vector<std::string>& y) {
  if (y.empty()) throw std::invalid_argument("restrict: empty subset");
  std::vector<std::size_t> keep;
  for (const auto& id : y) keep.push_back(c.point_index(id));
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<std::size_t> renum(c.carrier().size(), c.carrier().size());
  Cover out;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    renum[keep[i]] = i;
    out.carrier_.push_back(c.carrier()[keep[i]]);
  }
  std::vector<std::size_t> parents;
  for (std::size_t e = 0; e < c.size(); ++e) {
    std::vector<std::size_t> m;
    for (std::size_t p : c.members(e))
      if (renum[p] != c.carrier().size()) m.push_back(renum[p]);
    if (m.empty()) continue;
    out.labels_.push_back(c.label(e));
    out.members_.push_back(std::move(m));
    parents.push_back(e);
  }
  out.parents_ = parents;
  out.finish();
  return out;
}

SimplicialMap parent_map(const Cover& restricted, const Cover& ambient, int max_dim) {
  if (!restricted.parents()) throw std::invalid_argument("parent map: cover is not a restriction");
  std::map<Vertex, Vertex> vm;
  for (std::size_t e = 0; e < restricted.size(); ++e) {
    std::size_t p = (*restricted.parents())[e];
    if (p >= ambient.size() || ambient.label(p) != restricted.label(e))
      throw std::invalid_argument("parent map: element '" + restricted.label(e) + "' has no parent in the ambient cover");
    vm[static_cast<Vertex>(e)] = static_cast<Vertex>(p);
  }
  return SimplicialMap(nerve(restricted, max_dim), nerve(ambient, max_dim), vm);
}

SimplicialMap restriction_inclusion(const Cover& small, const Cover& large, int max_dim) {
  if (!small.parents() || !large.parents()) throw std::invalid_argument("restriction inclusion: covers are not restrictions");
  std::map<std::size_t, std::size_t> by_parent;
  for (std::size_t e = 0; e < large.size(); ++e) by_parent[(*large.parents())[e]] = e;
  std::map<Vertex, Vertex> vm;
  for (std::size_t e = 0; e < small.size(); ++e) {
    auto it = by_parent.find((*small.parents())[e]);
    if (it == by_parent.end())
      throw std::invalid_argument("restriction inclusion: element '" + small.label(e) + "' is missing from the larger restriction");
    for (std::size_t p : small.members(e)) {
      std::size_t q = large.point_index(small.carrier()[p].id);
      if (!std::binary_search(large.members(it->second).begin(), large.members(it->second).end(), q))
        throw std::invalid_argument("restriction inclusion: carriers are not nested");
    }
    vm[static_cast<Vertex>(e)] = static_cast<Vertex>(it->second);
  }
  return SimplicialMap(nerve(small, max_dim), nerve(large, max_dim), vm);
}

SimplicialMap RefinementMap::nerve_map(int max_dim) const {
  std::map<Vertex, Vertex> vm;
  for (std::size_t e = 0; e < assignment.size(); ++e) vm[static_cast<Vertex>(e)] = static_cast<Vertex>(assignment[e]);
  return SimplicialMap(nerve(fine, max_dim), nerve(coarse, max_dim), vm);
}

namespace {

// Fine members translated to coarse carrier indices.
std::vector<std::vector<std::size_t>> translate(const Cover& fine, const Cover& coarse) {
  if (fine.carrier().size() != coarse.carrier().size())
    throw std::invalid_argument("refinement: carriers differ in size");
  auto idx = id_index(coarse.carrier());
  std::vector<std::size_t> to(fine.carrier().size());
  for (std::size_t i = 0; i < fine.carrier().size(); ++i) {
    auto it = idx.find(fine.carrier()[i].id);
    if (it == idx.end()) throw std::invalid_argument("refinement: point '" + fine.carrier()[i].id + "' missing from the coarse carrier");
    to[i] = it->second;
  }
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t e = 0; e < fine.size(); ++e) {
    std::vector<std::size_t> m;
    for (std::size_t p : fine.members(e)) m.push_back(to[p]);
    std::sort(m.begin(), m.end());
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

RefinementMap refinement(const Cover& fine, const Cover& coarse) {
  auto tr = translate(fine, coarse);
  std::vector<std::size_t> order(coarse.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return coarse.label(a) < coarse.label(b); });
  std::vector<std::size_t> assignment;
  for (std::size_t e = 0; e < fine.size(); ++e) {
    // only coarse elements through the first member can contain the element
    const auto& cand = coarse.star(tr[e].front());
    std::optional<std::size_t> best;
    for (std::size_t c : cand)
      if (subset(tr[e], coarse.members(c)) && (!best || coarse.label(c) < coarse.label(*best))) best = c;
    if (!best)
      throw RefinementError("refinement: fine element '" + fine.label(e) + "' lies in no coarse element", fine.label(e));
    assignment.push_back(*best);
  }
  return RefinementMap{fine, coarse, assignment};
}

RefinementMap compose(const RefinementMap& g, const RefinementMap& f) {
  if (f.coarse.labels() != g.fine.labels()) throw std::invalid_argument("compose: refinements are not composable");
  std::vector<std::size_t> a;
  auto tr = translate(f.fine, g.coarse);
  for (std::size_t e = 0; e < f.assignment.size(); ++e) {
    std::size_t c = g.assignment[f.assignment[e]];
    if (!subset(tr[e], g.coarse.members(c)))
      throw RefinementError("compose: element '" + f.fine.label(e) + "' escapes its assigned element", f.fine.label(e));
    a.push_back(c);
  }
  return RefinementMap{f.fine, g.coarse, a};
}

}  // namespace prolim
