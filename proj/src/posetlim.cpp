#include "prolim/posetlim.hpp"

#include <functional>
#include <stdexcept>

namespace prolim {

FinitePoset::FinitePoset(std::vector<std::string> labels,
                         const std::vector<std::pair<std::string, std::string>>& pairs)
    : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (labels_[i] == labels_[j]) throw std::invalid_argument("poset: duplicate element '" + labels_[i] + "'");
  leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
  for (const auto& [a, b] : pairs) leq_[index(a)][index(b)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq_[k][j]) leq_[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq_[i][j] && leq_[j][i])
        throw std::invalid_argument("poset: relation is not antisymmetric ('" + labels_[i] + "' and '" +
                                    labels_[j] + "' are mutually below each other)");
}

std::size_t FinitePoset::index(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  throw std::invalid_argument("poset: unknown element '" + label + "'");
}

bool FinitePoset::covers(std::size_t x, std::size_t y) const {
  if (!less(x, y)) return false;
  for (std::size_t z = 0; z < size(); ++z)
    if (less(x, z) && less(z, y)) return false;
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> FinitePoset::covering_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y = 0; y < size(); ++y)
      if (covers(x, y)) out.emplace_back(x, y);
  return out;
}

std::vector<std::vector<std::size_t>> FinitePoset::chains(std::size_t k) const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void()> rec = [&]() {
    if (cur.size() == k + 1) {
      out.push_back(cur);
      return;
    }
    for (std::size_t z = 0; z < size(); ++z) {
      if (!cur.empty() && !less(cur.back(), z)) continue;
      cur.push_back(z);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

std::size_t FinitePoset::height() const {
  // longest chain by dynamic programming over the order
  std::vector<std::size_t> up(size(), 0);
  std::size_t best = 0;
  std::vector<bool> done(size(), false);
  std::function<std::size_t(std::size_t)> longest = [&](std::size_t x) -> std::size_t {
    if (done[x]) return up[x];
    std::size_t b = 0;
    for (std::size_t y = 0; y < size(); ++y)
      if (less(x, y)) b = std::max(b, 1 + longest(y));
    done[x] = true;
    return up[x] = b;
  };
  for (std::size_t x = 0; x < size(); ++x) best = std::max(best, longest(x));
  return best;
}

bool is_directed(const FinitePoset& p) {
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = x + 1; y < p.size(); ++y) {
      bool bound = false;
      for (std::size_t z = 0; z < p.size() && !bound; ++z) bound = p.leq(x, z) && p.leq(y, z);
      if (!bound) return false;
    }
  return true;
}

FinitePosetDiagram::FinitePosetDiagram(FinitePoset poset, std::vector<FgAbGroup> groups,
                                       std::map<std::pair<std::size_t, std::size_t>, GroupHom> maps)
    : poset_(std::move(poset)), groups_(std::move(groups)) {
  const std::size_t n = poset_.size();
  if (groups_.size() != n)
    throw std::invalid_argument("diagram: " + std::to_string(groups_.size()) + " groups for " + std::to_string(n) +
                                " elements");
  auto name = [&](std::size_t x) { return "'" + poset_.labels()[x] + "'"; };
  for (const auto& [key, f] : maps)
    if (!poset_.covers(key.first, key.second))
      throw std::invalid_argument("diagram: map given for " + name(key.first) + " <= " + name(key.second) +
                                  ", which is not a covering pair");
  for (std::size_t x = 0; x < n; ++x) all_.emplace(std::make_pair(x, x), GroupHom::identity(groups_[x]));
  for (const auto& [x, y] : poset_.covering_pairs()) {
    auto it = maps.find({x, y});
    if (it == maps.end())
      throw std::invalid_argument("diagram: missing map for covering pair " + name(x) + " <= " + name(y));
    const GroupHom& f = it->second;
    if (!same_presentation(f.source(), groups_[y]) || !same_presentation(f.target(), groups_[x]))
      throw std::invalid_argument("diagram: map for " + name(x) + " <= " + name(y) + " must go from G(" +
                                  poset_.labels()[y] + ") to G(" + poset_.labels()[x] + ")");
    all_.emplace(std::make_pair(x, y), f);
  }
  // Composites by increasing interval length; every factorization through a
  // middle element is compared, which forces agreement along all chains.
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (!poset_.less(x, y) || poset_.covers(x, y)) continue;
        std::size_t between = 0;
        for (std::size_t z = 0; z < n; ++z)
          if (poset_.less(x, z) && poset_.less(z, y)) ++between;
        if (between + 2 != len) continue;
        std::optional<GroupHom> first;
        for (std::size_t z = 0; z < n; ++z) {
          if (!(poset_.less(x, z) && poset_.less(z, y))) continue;
          GroupHom c = compose(all_.at({x, z}), all_.at({z, y}));
          if (!first) {
            first = c;
          } else if (!first->equals(c)) {
            throw std::invalid_argument("diagram is not functorial: composites " + name(x) + " <= " + name(z) +
                                        " <= " + name(y) + " disagree with another chain");
          }
        }
        all_.emplace(std::make_pair(x, y), *first);
      }
  }
}

const GroupHom& FinitePosetDiagram::map(std::size_t x, std::size_t y) const {
  auto it = all_.find({x, y});
  if (it == all_.end()) throw std::invalid_argument("diagram: elements are not comparable");
  return it->second;
}

CochainComplex order_complex_cochains(const FinitePosetDiagram& d) {
  const FinitePoset& p = d.poset();
  CochainComplex cx;
  if (p.size() == 0) return cx;
  const std::size_t h = p.height();
  std::vector<std::vector<std::vector<std::size_t>>> chains;
  std::vector<std::vector<std::size_t>> offsets;
  for (std::size_t k = 0; k <= h; ++k) {
    chains.push_back(p.chains(k));
    std::vector<FgAbGroup> parts;
    std::vector<std::size_t> off{0};
    for (const auto& c : chains.back()) {
      parts.push_back(d.group(c[0]));
      off.push_back(off.back() + parts.back().generators());
    }
    offsets.push_back(off);
    cx.terms.push_back(direct_sum(parts));
  }
  cx.terms.push_back(FgAbGroup());
  chains.emplace_back();
  offsets.push_back({0});
  for (std::size_t k = 0; k <= h; ++k) {
    const auto& lower = chains[k];
    const auto& upper = chains[k + 1];
    std::map<std::vector<std::size_t>, std::size_t> where;
    for (std::size_t i = 0; i < lower.size(); ++i) where[lower[i]] = i;
    IntMatrix m(offsets[k + 1].back(), offsets[k].back());
    for (std::size_t u = 0; u < upper.size(); ++u) {
      const auto& c = upper[u];
      const std::size_t row0 = offsets[k + 1][u];
      for (std::size_t j = 0; j < c.size(); ++j) {
        std::vector<std::size_t> face = c;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
        const std::size_t col0 = offsets[k][where.at(face)];
        if (j == 0) {
          const IntMatrix& t = d.map(c[0], c[1]).matrix();
          for (std::size_t a = 0; a < t.rows(); ++a)
            for (std::size_t b = 0; b < t.cols(); ++b) m(row0 + a, col0 + b) += t(a, b);
        } else {
          const long sign = (j % 2 == 0) ? 1 : -1;
          for (std::size_t a = 0; a < d.group(c[0]).generators(); ++a) m(row0 + a, col0 + a) += sign;
        }
      }
    }
    cx.differentials.emplace_back(cx.terms[k], cx.terms[k + 1], m);
  }
  return cx;
}

std::vector<FgAbGroup> derived_limits(const FinitePosetDiagram& d, std::size_t pmax) {
  CochainComplex cx = order_complex_cochains(d);
  std::vector<FgAbGroup> out;
  for (std::size_t p = 0; p <= pmax; ++p) {
    if (p + 1 >= cx.terms.size()) {
      out.emplace_back();
      continue;
    }
    GroupHom in = p == 0 ? GroupHom::zero(FgAbGroup(), cx.terms[0]) : cx.differentials[p - 1];
    out.push_back(homology(in, cx.differentials[p]).group);
  }
  return out;
}

}  // namespace prolim
