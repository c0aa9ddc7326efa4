#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prolim/fgab.hpp"

namespace prolim {

enum class TowerKind { ExplicitFinite, EventuallyPeriodic, FreeNested };

std::string to_string(TowerKind k);

/// Inverse sequence ... -> G_2 -> G_1 -> G_0. map(i) is G_{i+1} -> G_i.
///
/// Explicit and periodic towers are stored the same way: a prefix
/// P_0..P_{m-1}, then a period group G repeated forever with self-map phi.
/// An explicit finite tower is the special case phi = id. FreeNested towers
/// have term i free on basis indices k_i <= j < k_0 + width with
/// k_i = slope * i + offset; maps are the basis inclusions.
class Tower {
 public:
  /// groups[0..n-1] with maps[i] : groups[i+1] -> groups[i]; the last group
  /// repeats with identity maps.
  static Tower explicit_finite(std::vector<FgAbGroup> groups, std::vector<GroupHom> maps);
  /// prefix_maps has prefix.size() entries: prefix_maps[i] : P_{i+1} -> P_i,
  /// and the last one is G -> P_{m-1}.
  static Tower periodic(std::vector<FgAbGroup> prefix, std::vector<GroupHom> prefix_maps, GroupHom phi);
  /// (G, phi) with no prefix.
  static Tower periodic(GroupHom phi) { return periodic({}, {}, std::move(phi)); }
  static Tower constant(const FgAbGroup& g) { return periodic(GroupHom::identity(g)); }
  static Tower free_nested(long slope, long offset, std::size_t width);
  /// Parses offsets like "i+1", "2i+3", "2*i", "i".
  static Tower free_nested(const std::string& offsets, std::size_t width);

  TowerKind kind() const { return kind_; }
  bool symbolic() const { return kind_ == TowerKind::FreeNested; }

  FgAbGroup term(std::size_t i) const;
  GroupHom map(std::size_t i) const;
  /// G_j -> G_i for j >= i.
  GroupHom composite(std::size_t j, std::size_t i) const;

  std::size_t prefix_length() const { return prefix_.size(); }
  const std::vector<FgAbGroup>& prefix() const { return prefix_; }
  const std::vector<GroupHom>& prefix_maps() const { return prefix_maps_; }
  const GroupHom& period_map() const { return phi_; }
  const FgAbGroup& period_group() const { return phi_.source(); }

  long slope() const { return slope_; }
  long offset() const { return offset_; }
  std::size_t width() const { return width_; }
  /// k_i for FreeNested towers.
  long nested_offset(std::size_t i) const { return slope_ * static_cast<long>(i) + offset_; }
  std::string offsets_text() const;

 private:
  TowerKind kind_ = TowerKind::EventuallyPeriodic;
  std::vector<FgAbGroup> prefix_;
  std::vector<GroupHom> prefix_maps_;
  GroupHom phi_;
  long slope_ = 1, offset_ = 0;
  std::size_t width_ = 0;
};

/// Im(G_{i+k} -> G_i) for k = 0..depth-1.
std::vector<Subgroup> image_tower(const Tower& t, std::size_t i, std::size_t depth);

/// Certificate for Mittag-Leffler / lim^1 decisions.
struct MlCertificate {
  bool mittag_leffler = false;
  /// "stable-image", "determinant", "nilpotent-mod-p", "strict-descent", "purification"
  std::string kind;
  /// ML: index from which every image chain is constant (in period steps
  /// beyond the prefix). Non-ML: number of strict descents exhibited.
  std::size_t index = 0;
  /// Stable image inside the period group (ML only).
  std::optional<Subgroup> stable_image;
  /// Determinant of the period map on the saturated stable rational image.
  Integer determinant = 1;
  std::size_t rational_stabilization = 0;
  std::size_t bound = 0;
  /// For non-ML: elements of Im_k not in Im_{k+1} at the period term.
  std::vector<IntVector> descent_witnesses;
  std::string note;
};

MlCertificate is_mittag_leffler(const Tower& t);

struct Lim1Class {
  bool vanishes = false;
  MlCertificate certificate;
  /// Textual description of the nonzero group when known (e.g. "Zhat_p/Z").
  std::string annotation;
  /// "computed-as-lim1" or "computed-via-purification" (lim1_fg only).
  std::string method;
};

Lim1Class lim1_class(const Tower& t);
Lim1Class lim1_fg(const Tower& t);

struct LimResult {
  bool is_group = false;
  FgAbGroup group;
  /// Generator j of `group` as a thread: threads[j][i] is its coordinate in G_i,
  /// for i < requested depth.
  std::vector<std::vector<IntVector>> threads;
  /// Image of the limit in G_0 (as a subgroup), when is_group.
  std::optional<Subgroup> stable_image;
  std::string certificate;
  std::string refusal;  // set when !is_group
  /// Projection of the limit to G_i, as columns in G_i coordinates.
  IntMatrix projection(std::size_t i) const;
};

LimResult lim(const Tower& t, std::size_t depth = 4);

/// Checks that each thread reproduces itself under the bonding maps.
bool verify_threads(const Tower& t, const LimResult& r);

/// Largest Omega(n): number of prime factors of n with multiplicity.
std::size_t prime_factor_count(const Integer& n);

/// Bound on the number of period steps after which Im phi^k is constant,
/// when it stabilizes at all.
std::size_t ml_iteration_bound(const GroupHom& phi);

struct SubtowerSample {
  Tower tower;            // the subtower as a tower of presentations
  std::vector<IntMatrix> inclusions;  // generators of H_i in G_i coordinates, i <= prefix
  IntMatrix period_inclusion;         // generators of the periodic level in G coordinates
  std::string origin;     // "random", "thread-closure", "whole"
};

/// f.g. subtower whose periodic level is the phi-closure of `period_seeds`
/// (columns in period-group coordinates); prefix level i is the image of the
/// level above plus the columns of prefix_extras[i], if given.
SubtowerSample generated_subtower(const Tower& t, const IntMatrix& period_seeds,
                                  const std::vector<IntMatrix>& prefix_extras = {});

struct LimFgReport {
  bool pass = false;
  bool undetermined = false;
  std::size_t samples = 0;
  std::size_t depth = 0;
  std::size_t failures = 0;
  std::vector<std::string> notes;
};

/// Sampled check that the union of lims of f.g. subtowers is lim(T) on levels < depth.
LimFgReport lim_fg_check(const Tower& t, std::size_t samples, std::uint64_t seed, std::size_t depth = 5);

struct RoosReport {
  std::size_t depth = 0;
  FgAbGroup kernel;
  FgAbGroup cokernel;
  FgAbGroup truncated_lim;  // by iterated pullbacks
  bool kernel_matches = false;
  bool cokernel_zero = false;
  bool pass() const { return kernel_matches && cokernel_zero; }
};

/// Shift map (g_i) -> (g_i - f_i g_{i+1}) from G_0 + ... + G_{depth-1}
/// to G_0 + ... + G_{depth-2}.
RoosReport roos_shift_check(const Tower& t, std::size_t depth);

/// Lim of the finite diagram G_0 <- ... <- G_{depth-1} by iterated pullbacks.
FgAbGroup truncated_lim_by_pullbacks(const Tower& t, std::size_t depth);

/// Purification of a f.g. subtower of a FreeNested tower generated by
/// `seeds` in term 0 (columns over the truncation width); returns an
/// eventually constant tower of free groups.
Tower purified_nested_subtower(const Tower& t, const IntMatrix& seeds);

}  // namespace prolim
