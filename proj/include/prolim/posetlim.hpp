#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "prolim/fgab.hpp"

namespace prolim {

/// Finite partial order on elements 0..n-1 with string labels.
class FinitePoset {
 public:
  /// `pairs` lists relations x <= y by label; reflexive and transitive
  /// closure is taken. Throws if the closure is not antisymmetric.
  FinitePoset(std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& pairs);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t index(const std::string& label) const;
  bool leq(std::size_t x, std::size_t y) const { return leq_[x][y]; }
  bool less(std::size_t x, std::size_t y) const { return x != y && leq_[x][y]; }
  /// y covers x: x < y with nothing strictly between.
  bool covers(std::size_t x, std::size_t y) const;
  std::vector<std::pair<std::size_t, std::size_t>> covering_pairs() const;
  /// Strictly increasing chains x_0 < ... < x_k.
  std::vector<std::vector<std::size_t>> chains(std::size_t k) const;
  /// Largest k with a chain of k+1 elements (0 for an antichain, none when empty).
  std::size_t height() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> leq_;
};

bool is_directed(const FinitePoset& p);

/// Contravariant diagram: for x <= y a map G(y) -> G(x).
class FinitePosetDiagram {
 public:
  /// `maps` keyed by covering pairs (x, y), each a map G(y) -> G(x). Throws
  /// if a covering map is missing, has the wrong ends, or composites along
  /// different chains disagree.
  FinitePosetDiagram(FinitePoset poset, std::vector<FgAbGroup> groups,
                     std::map<std::pair<std::size_t, std::size_t>, GroupHom> maps);

  const FinitePoset& poset() const { return poset_; }
  const FgAbGroup& group(std::size_t x) const { return groups_[x]; }
  /// G(y) -> G(x) for x <= y.
  const GroupHom& map(std::size_t x, std::size_t y) const;

 private:
  FinitePoset poset_;
  std::vector<FgAbGroup> groups_;
  std::map<std::pair<std::size_t, std::size_t>, GroupHom> all_;
};

struct CochainComplex {
  std::vector<FgAbGroup> terms;       // C^0, C^1, ...
  std::vector<GroupHom> differentials;  // C^k -> C^{k+1}
};

/// Order-complex cochains: C^k is the sum over chains x_0 < ... < x_k of G(x_0).
CochainComplex order_complex_cochains(const FinitePosetDiagram& d);

/// lim^p for p = 0..pmax; entries beyond the poset height are the zero group.
std::vector<FgAbGroup> derived_limits(const FinitePosetDiagram& d, std::size_t pmax);

}  // namespace prolim
