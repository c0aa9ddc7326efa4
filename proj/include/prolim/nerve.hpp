#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prolim/simplicial.hpp"

namespace prolim {

using Rational = mpq_class;

struct CarrierPoint {
  std::string id;
  std::optional<std::pair<Rational, Rational>> xy;
};

/// Closed ball: a point is inside iff its squared distance to the center is
/// at most radius^2. Decided exactly.
struct Ball {
  std::string label;
  Rational cx, cy, radius;
};

/// Finite cover of a finite carrier. Elements are nonempty and their union is
/// the carrier; labels are distinct and order the tie-breaks.
class Cover {
 public:
  Cover(std::vector<CarrierPoint> carrier,
        const std::vector<std::pair<std::string, std::vector<std::string>>>& elements);
  /// Balls over a carrier with coordinates. Empty balls are rejected.
  static Cover balls(std::vector<CarrierPoint> carrier, const std::vector<Ball>& balls);

  const std::vector<CarrierPoint>& carrier() const { return carrier_; }
  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t e) const { return labels_[e]; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Sorted carrier indices.
  const std::vector<std::size_t>& members(std::size_t e) const { return members_[e]; }
  /// Elements containing a carrier point, increasing.
  const std::vector<std::size_t>& star(std::size_t point) const { return star_[point]; }
  std::size_t point_index(const std::string& id) const;
  std::optional<std::size_t> element_index(const std::string& label) const;
  /// For restricted covers, the ambient element each element came from.
  const std::optional<std::vector<std::size_t>>& parents() const { return parents_; }

 private:
  Cover() = default;
  void finish();
  std::vector<CarrierPoint> carrier_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::vector<std::size_t>> star_;
  std::optional<std::vector<std::size_t>> parents_;
  friend Cover restrict(const Cover& c, const std::vector<std::string>& y);
};

/// Vertices are element indices; a family spans a simplex iff the members
/// share a carrier point. With max_dim >= 0 only that skeleton is built.
SimplicialComplex nerve(const Cover& c, int max_dim = -1);

/// Cover of Y by the nonempty intersections, labels kept, parents recorded.
Cover restrict(const Cover& c, const std::vector<std::string>& y);

/// Restricted element -> parent element, between nerves of the given skeleton.
SimplicialMap parent_map(const Cover& restricted, const Cover& ambient, int max_dim = -1);

/// Two restrictions of one cover to nested carriers: element -> element with the same parent.
SimplicialMap restriction_inclusion(const Cover& small, const Cover& large, int max_dim = -1);

class RefinementError : public std::invalid_argument {
 public:
  RefinementError(const std::string& msg, std::string element)
      : std::invalid_argument(msg), element_(std::move(element)) {}
  const std::string& element() const { return element_; }

 private:
  std::string element_;
};

struct RefinementMap {
  Cover fine;
  Cover coarse;
  std::vector<std::size_t> assignment;  // fine element -> coarse element
  SimplicialMap nerve_map(int max_dim = -1) const;
};

/// Each fine element goes to the label-least coarse element containing it.
/// Carriers must have the same point ids. Throws RefinementError naming a
/// fine element contained in no coarse element.
RefinementMap refinement(const Cover& fine, const Cover& coarse);

/// Refinement fine -> coarse obtained by following g after f; containment is rechecked.
RefinementMap compose(const RefinementMap& g, const RefinementMap& f);

}  // namespace prolim
