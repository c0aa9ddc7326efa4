#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prolim/fgab.hpp"
#include "prolim/towers.hpp"

namespace prolim {

enum class Verdict { CertifiedTrue, CertifiedFalse, Undetermined };
std::string to_string(Verdict v);

/// N x N indexed commuting grid. alpha maps G(a,b) -> G(a+1,b) run along the
/// colimit direction, beta maps G(a,b+1) -> G(a,b) along the limit direction.
class BiSystem {
 public:
  enum class Kind { ExplicitGrid, BiPeriodic };
  /// How an explicit A x B window continues beyond its edges.
  ///   Constant: G(a,b) = G(min(a,A-1), min(b,B-1)), identity maps outside.
  ///   Diagonal: G(a,b) = F(a-b) with F clamped to the window's diagonals;
  ///             the window must be Toeplitz (equal presentations and maps
  ///             along diagonals).
  enum class Tail { Constant, Diagonal };

  /// groups[a][b]; alpha[a][b] : G(a,b) -> G(a+1,b) for a < A-1;
  /// beta[a][b] : G(a,b+1) -> G(a,b) for b < B-1. Squares are checked.
  static BiSystem grid(std::vector<std::vector<FgAbGroup>> groups, std::vector<std::vector<GroupHom>> alpha,
                       std::vector<std::vector<GroupHom>> beta, Tail tail);
  /// Every term G, alpha maps u, beta maps v; requires uv = vu.
  static BiSystem periodic(const GroupHom& u, const GroupHom& v);

  Kind kind() const { return kind_; }
  Tail tail() const { return tail_; }
  std::size_t window_alpha() const { return groups_.size(); }
  std::size_t window_beta() const { return groups_.empty() ? 0 : groups_[0].size(); }
  const FgAbGroup& group(std::size_t a, std::size_t b) const;
  GroupHom alpha_map(std::size_t a, std::size_t b) const;
  GroupHom beta_map(std::size_t a, std::size_t b) const;
  const GroupHom& u() const { return u_; }
  const GroupHom& v() const { return v_; }

 private:
  Kind kind_ = Kind::BiPeriodic;
  Tail tail_ = Tail::Constant;
  std::vector<std::vector<FgAbGroup>> groups_;
  std::vector<std::vector<GroupHom>> alpha_, beta_;
  GroupHom u_, v_;
};

/// colim_a lim_b or lim_b colim_a, as far as it can be decided.
struct SideValue {
  enum class Form { Group, Symbolic, Undetermined };
  Form form = Form::Undetermined;
  FgAbGroup group;              // Form::Group
  bool certified_zero = false;
  bool certified_nonzero = false;
  /// Enlarging the window cannot change the value.
  bool stabilized = false;
  std::string description;
  std::string certificate;
};
std::string to_string(SideValue::Form f);

/// One of the lim^1 slots of the four-term sequence 0 -> p1 -> q1 -> colim lim -> lim colim -> 0.
struct SlotValue {
  std::string state = "undetermined";  // "zero", "nonzero", "undetermined"
  std::string note;
};

struct TauReport {
  std::size_t window_alpha = 0, window_beta = 0;
  SideValue colim_lim, lim_colim;
  Verdict injective = Verdict::Undetermined, surjective = Verdict::Undetermined;
  std::string injective_certificate, surjective_certificate;
  std::optional<GroupHom> tau;  // when both sides are groups
  std::optional<FgAbGroup> kernel, cokernel;
  /// Nonzero element of ker(tau), in colim_lim generator coordinates.
  std::optional<IntVector> kernel_witness;
  /// Thread of colimit classes outside the image of tau: level b is the class
  /// of thread[b] placed at alpha position thread_alpha[b].
  std::vector<IntVector> thread;
  std::vector<std::size_t> thread_alpha;
  SlotValue p1, q1;
  /// Set when every slot is f.g. and the sequence could be checked.
  std::optional<bool> sequence_exact;
  std::vector<JunctionReport> junctions;
};

SideValue colim_then_lim(const BiSystem& s, std::size_t wa, std::size_t wb);
SideValue lim_then_colim(const BiSystem& s, std::size_t wa, std::size_t wb);
TauReport tau(const BiSystem& s, std::size_t wa, std::size_t wb);

/// Re-checks the relations of a surjectivity thread against the system.
bool verify_thread(const BiSystem& s, const TauReport& r);

/// Union of ker(u^k); returned as a subgroup of u's source.
Subgroup eventual_kernel(const GroupHom& u);

}  // namespace prolim
