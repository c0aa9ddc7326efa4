#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prolim/linalg.hpp"

namespace prolim {

struct Invariants {
  std::size_t free_rank = 0;
  IntVector torsion;  // each > 1, t_1 | t_2 | ...

  bool operator==(const Invariants& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }
  /// e.g. "Z^2 + Z/2 + Z/6", "0".
  std::string to_string() const;
};

/// Abelian group Z^n / (column span of relations).
///
/// Elements are coordinate vectors of length n; two vectors are the same
/// element when their difference lies in the relation lattice.
class FgAbGroup {
 public:
  FgAbGroup();  // trivial group on no generators
  explicit FgAbGroup(std::size_t generators);  // free
  FgAbGroup(std::size_t generators, IntMatrix relations);

  static FgAbGroup free(std::size_t rank) { return FgAbGroup(rank); }
  static FgAbGroup cyclic(const Integer& n);
  /// Z^free_rank + Z/t_1 + ... in canonical generator order (torsion first).
  static FgAbGroup from_invariants(const Invariants& inv);

  std::size_t generators() const { return n_; }
  const IntMatrix& relations() const { return rel_; }
  const Invariants& invariants() const { return data_->inv; }
  bool is_trivial() const { return data_->inv.is_zero(); }
  bool is_free() const { return data_->inv.torsion.empty(); }

  bool is_zero(const IntVector& x) const;
  bool equal(const IntVector& a, const IntVector& b) const { return is_zero(vec_sub(a, b)); }
  /// Coordinates in the canonical decomposition: torsion coordinates reduced
  /// into [0, t_i), then free coordinates. Equal elements give equal vectors.
  IntVector canonical(const IntVector& x) const;
  /// Inverse of canonical(): a representative with the given canonical coordinates.
  IntVector from_canonical(const IntVector& c) const;
  /// Order of an element, 0 when infinite.
  Integer order(const IntVector& x) const;
  void check_element(const IntVector& x) const;

  /// Matrices of the isomorphism to and from from_invariants(invariants()).
  const IntMatrix& to_canonical_matrix() const { return data_->to; }
  const IntMatrix& from_canonical_matrix() const { return data_->from; }

  std::string to_string() const { return invariants().to_string(); }

 private:
  struct Data {
    Invariants inv;
    IntMatrix to;    // (k + r) x n
    IntMatrix from;  // n x (k + r)
  };
  void build();

  std::size_t n_ = 0;
  IntMatrix rel_;
  std::shared_ptr<const Data> data_;
};

bool is_isomorphic(const FgAbGroup& a, const FgAbGroup& b);
/// Identical generator count and relation matrix (the test used for composability).
bool same_presentation(const FgAbGroup& a, const FgAbGroup& b);

/// Homomorphism given on generators: column j is the image of source generator j.
class GroupHom {
 public:
  GroupHom() = default;
  /// Throws std::invalid_argument if the matrix has the wrong shape or does
  /// not send every source relator into the target relation lattice.
  GroupHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

  static GroupHom identity(const FgAbGroup& g);
  static GroupHom zero(const FgAbGroup& s, const FgAbGroup& t);
  static GroupHom scalar(const FgAbGroup& g, const Integer& k);

  const FgAbGroup& source() const { return src_; }
  const FgAbGroup& target() const { return tgt_; }
  const IntMatrix& matrix() const { return m_; }

  IntVector apply(const IntVector& x) const { return m_ * x; }
  bool is_zero() const;
  bool equals(const GroupHom& o) const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_isomorphism() const { return is_injective() && is_surjective(); }

 private:
  FgAbGroup src_, tgt_;
  IntMatrix m_;
};

/// g after f. Throws std::invalid_argument when f's target is not g's source.
GroupHom compose(const GroupHom& g, const GroupHom& f);

/// Subgroup of an ambient group generated by the columns of `gens`.
class Subgroup {
 public:
  Subgroup(FgAbGroup ambient, IntMatrix gens);
  static Subgroup whole(const FgAbGroup& g) { return Subgroup(g, IntMatrix::identity(g.generators())); }
  static Subgroup trivial(const FgAbGroup& g) { return Subgroup(g, IntMatrix(g.generators(), 0)); }

  const FgAbGroup& ambient() const { return amb_; }
  const IntMatrix& gens() const { return gens_; }
  std::size_t count() const { return gens_.cols(); }

  bool contains(const IntVector& x) const;
  /// c with gens * c = x modulo the ambient relations, if x is in the subgroup.
  std::optional<IntVector> coordinates(const IntVector& x) const;
  bool contains(const Subgroup& other) const;
  bool equals(const Subgroup& other) const { return contains(other) && other.contains(*this); }
  /// First generator of `other` not contained here, if any.
  std::optional<IntVector> missing_from(const Subgroup& other) const;

  /// The subgroup as an abstract group on count() generators.
  const FgAbGroup& presentation() const;
  /// presentation() -> ambient.
  GroupHom inclusion() const;
  Subgroup intersect(const Subgroup& other) const;
  Subgroup sum(const Subgroup& other) const;

 private:
  FgAbGroup amb_;
  IntMatrix gens_;
  std::shared_ptr<LatticeSolver> solver_;  // over [gens | relations]
  mutable std::shared_ptr<FgAbGroup> pres_;
};

struct SubgroupResult {
  FgAbGroup group;
  GroupHom map;  // inclusion into (or projection from) the parent group
  IntMatrix gens;
};

SubgroupResult kernel(const GroupHom& f);
SubgroupResult image(const GroupHom& f);
SubgroupResult cokernel(const GroupHom& f);  // map is the projection
Subgroup kernel_subgroup(const GroupHom& f);
Subgroup image_subgroup(const GroupHom& f);
Subgroup preimage(const GroupHom& f, const Subgroup& h);
Subgroup image_of(const GroupHom& f, const Subgroup& h);

/// ker g / im f for composable f, g with g∘f = 0.
struct Subquotient {
  FgAbGroup group;
  IntMatrix reps;  // representatives in the middle group, one column per generator
  std::shared_ptr<LatticeSolver> classifier;  // over [ker gens | relations]
  std::size_t kernel_gens = 0;
  /// Class in `group` of a kernel element x of the middle group.
  std::optional<IntVector> classify(const IntVector& x) const;
};
Subquotient homology(const GroupHom& f, const GroupHom& g);

struct JunctionReport {
  std::size_t index = 0;  // junction between maps index and index+1
  bool composite_zero = true;
  bool kernel_in_image = true;
  std::optional<IntVector> witness;
  bool exact() const { return composite_zero && kernel_in_image; }
};

/// Per-junction exactness of a chain f_0, f_1, ... (f_{i+1} after f_i).
std::vector<JunctionReport> check_exact(const std::vector<GroupHom>& chain);
bool all_exact(const std::vector<JunctionReport>& r);

/// Purification {g : n g in H for some n != 0}. Throws when the ambient has torsion.
Subgroup purify(const Subgroup& h);

FgAbGroup hom_to_Z(const FgAbGroup& g);
FgAbGroup ext_to_Z(const FgAbGroup& g);

struct DirectSum {
  FgAbGroup group;
  GroupHom in1, in2, pr1, pr2;
};
DirectSum direct_sum(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup direct_sum(const std::vector<FgAbGroup>& parts);

struct Pullback {
  FgAbGroup group;
  GroupHom p1, p2;
  Subgroup sub;  // as a subgroup of source(f) + source(g)
  /// The unique map x -> group with p1 x = a, p2 x = b for a cone (a, b).
  GroupHom factor(const GroupHom& a, const GroupHom& b) const;
};
Pullback pullback(const GroupHom& f, const GroupHom& g);

struct Pushout {
  FgAbGroup group;
  GroupHom i1, i2;
};
Pushout pushout(const GroupHom& f, const GroupHom& g);

/// Canonical form of g with the isomorphisms in both directions.
struct Simplified {
  FgAbGroup group;
  GroupHom to, from;
};
Simplified simplify(const FgAbGroup& g);

}  // namespace prolim
