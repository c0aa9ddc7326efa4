#include "prolim/towers.hpp"

#include <algorithm>
#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace prolim {

std::string to_string(TowerKind k) {
  switch (k) {
    case TowerKind::ExplicitFinite: return "explicit";
    case TowerKind::EventuallyPeriodic: return "periodic";
    case TowerKind::FreeNested: return "free_nested";
  }
  return "unknown";
}

Tower Tower::explicit_finite(std::vector<FgAbGroup> groups, std::vector<GroupHom> maps) {
  if (groups.empty()) throw std::invalid_argument("explicit tower needs at least one group");
  if (maps.size() + 1 != groups.size())
    throw std::invalid_argument("explicit tower with " + std::to_string(groups.size()) + " groups needs " +
                                std::to_string(groups.size() - 1) + " maps, got " + std::to_string(maps.size()));
  FgAbGroup last = groups.back();
  groups.pop_back();
  Tower t = periodic(std::move(groups), std::move(maps), GroupHom::identity(last));
  t.kind_ = TowerKind::ExplicitFinite;
  return t;
}

Tower Tower::periodic(std::vector<FgAbGroup> prefix, std::vector<GroupHom> prefix_maps, GroupHom phi) {
  if (!same_presentation(phi.source(), phi.target()))
    throw std::invalid_argument("period map must be an endomorphism");
  if (prefix_maps.size() != prefix.size())
    throw std::invalid_argument("tower prefix of length " + std::to_string(prefix.size()) + " needs " +
                                std::to_string(prefix.size()) + " maps, got " + std::to_string(prefix_maps.size()));
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const FgAbGroup& above = i + 1 < prefix.size() ? prefix[i + 1] : phi.source();
    if (!same_presentation(prefix_maps[i].source(), above) || !same_presentation(prefix_maps[i].target(), prefix[i]))
      throw std::invalid_argument("tower map " + std::to_string(i) + " does not go from term " +
                                  std::to_string(i + 1) + " to term " + std::to_string(i));
  }
  Tower t;
  t.kind_ = TowerKind::EventuallyPeriodic;
  t.prefix_ = std::move(prefix);
  t.prefix_maps_ = std::move(prefix_maps);
  t.phi_ = std::move(phi);
  return t;
}

Tower Tower::free_nested(long slope, long offset, std::size_t width) {
  if (slope < 1) throw std::invalid_argument("free_nested offsets must strictly increase (slope >= 1)");
  if (width == 0) throw std::invalid_argument("free_nested truncation width must be positive");
  Tower t;
  t.kind_ = TowerKind::FreeNested;
  t.slope_ = slope;
  t.offset_ = offset;
  t.width_ = width;
  t.phi_ = GroupHom::identity(FgAbGroup());
  return t;
}

Tower Tower::free_nested(const std::string& offsets, std::size_t width) {
  std::string s;
  for (char c : offsets)
    if (c != ' ') s += c;
  static const std::regex re(R"(^(\d*)\*?i([+-]\d+)?$)");
  std::smatch m;
  if (!std::regex_match(s, m, re))
    throw std::invalid_argument("cannot parse offsets '" + offsets + "'; expected an affine form like i+1 or 2i+3");
  long a = m[1].length() ? std::stol(m[1].str()) : 1;
  long b = m[2].length() ? std::stol(m[2].str()) : 0;
  return free_nested(a, b, width);
}

std::string Tower::offsets_text() const {
  std::ostringstream os;
  if (slope_ != 1) os << slope_;
  os << 'i';
  if (offset_ > 0) os << '+' << offset_;
  if (offset_ < 0) os << offset_;
  return os.str();
}

namespace {

std::size_t nested_rank(const Tower& t, std::size_t i) {
  long r = t.nested_offset(0) + static_cast<long>(t.width()) - t.nested_offset(i);
  return r > 0 ? static_cast<std::size_t>(r) : 0;
}

}  // namespace

FgAbGroup Tower::term(std::size_t i) const {
  if (kind_ == TowerKind::FreeNested) return FgAbGroup::free(nested_rank(*this, i));
  return i < prefix_.size() ? prefix_[i] : phi_.source();
}

GroupHom Tower::map(std::size_t i) const {
  if (kind_ == TowerKind::FreeNested) {
    std::size_t lo = nested_rank(*this, i), hi = nested_rank(*this, i + 1);
    std::size_t shift = static_cast<std::size_t>(nested_offset(i + 1) - nested_offset(i));
    IntMatrix m(lo, hi);
    for (std::size_t c = 0; c < hi; ++c) m(shift + c, c) = 1;
    return GroupHom(FgAbGroup::free(hi), FgAbGroup::free(lo), m);
  }
  return i < prefix_maps_.size() ? prefix_maps_[i] : phi_;
}

GroupHom Tower::composite(std::size_t j, std::size_t i) const {
  if (j < i) throw std::invalid_argument("composite: need j >= i");
  FgAbGroup top = term(j);
  IntMatrix m = IntMatrix::identity(top.generators());
  for (std::size_t k = j; k > i; --k) m = map(k - 1).matrix() * m;
  return GroupHom(top, term(i), m);
}

std::vector<Subgroup> image_tower(const Tower& t, std::size_t i, std::size_t depth) {
  if (depth == 0) throw std::invalid_argument("image_tower: depth must be at least 1");
  std::vector<Subgroup> out;
  FgAbGroup base = t.term(i);
  IntMatrix c = IntMatrix::identity(base.generators());
  for (std::size_t k = 0; k < depth; ++k) {
    if (k > 0) c = c * t.map(i + k - 1).matrix();
    out.emplace_back(base, lattice_basis(hconcat(c, base.relations())));
  }
  return out;
}

std::size_t prime_factor_count(const Integer& n) {
  Integer m = abs(n);
  std::size_t count = 0;
  for (Integer p = 2; p * p <= m; ++p) {
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      ++count;
    }
  }
  if (m > 1) ++count;
  return count;
}

namespace {

std::vector<Integer> prime_factors(const Integer& n) {
  Integer m = abs(n);
  std::vector<Integer> out;
  for (Integer p = 2; p * p <= m && p < 1000000; ++p) {
    if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      out.push_back(p);
      while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) m /= p;
    }
  }
  if (m > 1 && mpz_probab_prime_p(m.get_mpz_t(), 30) > 0) out.push_back(m);
  return out;
}

// phi in canonical coordinates: torsion block first, then the free block.
struct PeriodAnalysis {
  Simplified s;
  IntMatrix phi;  // (k + r) square
  std::size_t k = 0, r = 0;
  IntMatrix xbar;  // induced map on G / torsion
  std::size_t m1 = 0;
  IntMatrix J;  // saturated stable rational image (r x sdim)
  IntMatrix Y;  // xbar restricted to J
  Integer det = 1;
};

PeriodAnalysis analyze(const GroupHom& phi) {
  PeriodAnalysis a;
  const FgAbGroup& g = phi.source();
  a.s = simplify(g);
  a.phi = a.s.to.matrix() * phi.matrix() * a.s.from.matrix();
  a.k = g.invariants().torsion.size();
  a.r = g.invariants().free_rank;
  a.xbar = a.phi.block(a.k, a.k, a.r, a.r);
  IntMatrix power = IntMatrix::identity(a.r);
  std::size_t prev = a.r;
  a.m1 = 0;
  for (std::size_t step = 1; step <= a.r + 1; ++step) {
    IntMatrix next = a.xbar * power;
    std::size_t rk = rank(next);
    if (rk == prev) break;
    prev = rk;
    power = lattice_basis(next);
    a.m1 = step;
  }
  a.J = saturate(power);
  const std::size_t sdim = a.J.cols();
  a.Y = IntMatrix(sdim, sdim);
  if (sdim > 0) {
    LatticeSolver js(a.J);
    IntMatrix img = a.xbar * a.J;
    for (std::size_t c = 0; c < sdim; ++c) {
      auto y = js.solve(img.column(c));
      if (!y) throw std::logic_error("stable rational image is not invariant");
      a.Y.set_column(c, *y);
    }
  }
  a.det = determinant(a.Y);
  return a;
}

bool nilpotent_mod(const IntMatrix& y, const Integer& p) {
  const std::size_t n = y.rows();
  if (n == 0) return true;
  auto reduce = [&](IntMatrix m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) mpz_fdiv_r(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), p.get_mpz_t());
    return m;
  };
  IntMatrix pw = reduce(y);
  for (std::size_t i = 1; i < n; ++i) pw = reduce(pw * y);
  return pw.is_zero();
}

IntMatrix reduced_gens(const FgAbGroup& g, const IntMatrix& gens) {
  IntMatrix b = lattice_basis(hconcat(gens, g.relations()));
  // Drop columns that are zero in the group.
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < b.cols(); ++j)
    if (!g.is_zero(b.column(j))) keep.push_back(j);
  return b.select_columns(keep);
}

// Iterates S -> phi(S) from `start` until it repeats, at most `limit` steps.
std::optional<std::pair<Subgroup, std::size_t>> iterate_images(const GroupHom& phi, const IntMatrix& start,
                                                               std::size_t limit) {
  const FgAbGroup& g = phi.source();
  Subgroup cur(g, reduced_gens(g, start));
  for (std::size_t k = 0; k <= limit; ++k) {
    Subgroup next(g, reduced_gens(g, phi.matrix() * cur.gens()));
    if (next.contains(cur)) return std::make_pair(cur, k);
    cur = next;
  }
  return std::nullopt;
}

}  // namespace

std::size_t ml_iteration_bound(const GroupHom& phi) {
  const Invariants& inv = phi.source().invariants();
  Integer order = 1;
  for (const auto& t : inv.torsion) order *= t;
  return inv.free_rank + prime_factor_count(order) + 1;
}

MlCertificate is_mittag_leffler(const Tower& t) {
  MlCertificate c;
  if (t.kind() == TowerKind::FreeNested) {
    c.mittag_leffler = false;
    c.kind = "strict-descent";
    const std::size_t w = t.width();
    for (std::size_t j = 1; j <= 3; ++j) {
      long pos = t.nested_offset(j) - t.nested_offset(0);
      if (pos >= static_cast<long>(w)) break;
      c.descent_witnesses.push_back(unit_vector(w, static_cast<std::size_t>(pos)));
    }
    c.index = c.descent_witnesses.size();
    c.note = "basis vector e_{k_j} lies in Im(G_j -> G_0) but not in Im(G_{j+1} -> G_0) because k_{j+1} > k_j; "
             "this holds at every truncation width, so the image chain never stabilizes";
    return c;
  }
  const GroupHom& phi = t.period_map();
  PeriodAnalysis a = analyze(phi);
  c.determinant = a.det;
  c.rational_stabilization = a.m1;
  c.bound = ml_iteration_bound(phi);
  if (a.det == 1 || a.det == -1) {
    auto st = iterate_images(phi, IntMatrix::identity(phi.source().generators()), c.bound);
    if (!st) throw std::logic_error("image chain exceeded its stabilization bound");
    c.mittag_leffler = true;
    c.kind = "stable-image";
    c.stable_image = st->first;
    c.index = st->second;
    c.note = "Im phi^k is constant from k = " + std::to_string(c.index) + "; phi is invertible on the stable image";
    return c;
  }
  c.mittag_leffler = false;
  c.kind = "determinant";
  const FgAbGroup& g = phi.source();
  Subgroup cur = Subgroup::whole(g);
  for (std::size_t k = 0; k < 3; ++k) {
    Subgroup next(g, reduced_gens(g, phi.matrix() * cur.gens()));
    auto miss = next.missing_from(cur);
    if (!miss) throw std::logic_error("image chain stabilized despite |det| != 1");
    c.descent_witnesses.push_back(*miss);
    cur = next;
  }
  c.index = c.descent_witnesses.size();
  c.note = "phi has determinant " + a.det.get_str() +
           " on the saturated stable rational image; a phi-stable image would carry a bijective restriction of "
           "determinant +-1, so Im phi^k descends strictly forever";
  return c;
}

Lim1Class lim1_class(const Tower& t) {
  Lim1Class out;
  out.certificate = is_mittag_leffler(t);
  out.vanishes = out.certificate.mittag_leffler;
  out.method = "computed-as-lim1";
  if (!out.vanishes) {
    if (t.kind() == TowerKind::FreeNested) {
      out.annotation = "∏ℤ/⊕ℤ";
    } else {
      const FgAbGroup& g = t.period_group();
      if (g.invariants().free_rank == 1 && g.invariants().torsion.empty()) {
        PeriodAnalysis a = analyze(t.period_map());
        out.annotation = "Ẑ_" + Integer(abs(a.det)).get_str() + "/ℤ";
      }
    }
  }
  return out;
}

Tower purified_nested_subtower(const Tower& t, const IntMatrix& seeds) {
  if (t.kind() != TowerKind::FreeNested) throw std::invalid_argument("purified_nested_subtower needs a free_nested tower");
  const std::size_t w = t.width();
  if (seeds.rows() != w) throw std::invalid_argument("seed vectors must have the truncation width as length");
  FgAbGroup g0 = FgAbGroup::free(w);
  Subgroup h0(g0, seeds);
  std::vector<Subgroup> levels;
  for (std::size_t i = 0;; ++i) {
    std::size_t rk = nested_rank(t, i);
    if (rk == 0) break;
    std::size_t shift = w - rk;
    IntMatrix tail(w, rk);
    for (std::size_t c = 0; c < rk; ++c) tail(shift + c, c) = 1;
    Subgroup hi = h0.intersect(Subgroup(g0, tail));
    IntMatrix local = hi.gens().block(shift, 0, rk, hi.count());
    levels.push_back(purify(Subgroup(FgAbGroup::free(rk), local)));
  }
  std::vector<FgAbGroup> prefix;
  std::vector<GroupHom> maps;
  for (const auto& l : levels) prefix.push_back(l.presentation());
  FgAbGroup zero;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i + 1 == levels.size()) {
      maps.push_back(GroupHom::zero(zero, prefix[i]));
      break;
    }
    GroupHom f = t.map(i);
    IntMatrix m(levels[i].count(), levels[i + 1].count());
    for (std::size_t c = 0; c < levels[i + 1].count(); ++c) {
      auto co = levels[i].coordinates(f.apply(levels[i + 1].gens().column(c)));
      if (!co) throw std::logic_error("purified levels are not nested");
      m.set_column(c, *co);
    }
    maps.emplace_back(prefix[i + 1], prefix[i], m);
  }
  return Tower::periodic(prefix, maps, GroupHom::identity(zero));
}

Lim1Class lim1_fg(const Tower& t) {
  if (t.kind() != TowerKind::FreeNested) {
    Lim1Class out = lim1_class(t);
    out.method = "computed-as-lim1";
    return out;
  }
  const std::size_t w = t.width();
  IntMatrix seeds(w, 2);
  for (std::size_t i = 0; i < w; ++i) {
    seeds(i, 0) = 1;
    seeds(i, 1) = static_cast<long>(i + 1);
  }
  Tower pure = purified_nested_subtower(t, seeds);
  MlCertificate ml = is_mittag_leffler(pure);
  Lim1Class out;
  out.vanishes = ml.mittag_leffler;
  out.method = "computed-via-purification";
  out.certificate = ml;
  out.certificate.kind = "purification";
  out.certificate.index = pure.prefix_length();
  out.certificate.note =
      "a f.g. subtower H_i of the nested tower lies in H_0, whose support is below some basis index N, so "
      "H_i = 0 once k_i >= N; its purification is eventually 0 and Mittag-Leffler. Sample at width " +
      std::to_string(w) + ": purified subtower constant (zero) from level " + std::to_string(pure.prefix_length());
  return out;
}

IntMatrix LimResult::projection(std::size_t i) const {
  std::vector<IntVector> cols;
  for (const auto& th : threads) cols.push_back(th.at(i));
  std::size_t rows = cols.empty() ? 0 : cols.front().size();
  if (cols.empty()) return IntMatrix(0, 0);
  return IntMatrix::from_columns(cols, rows);
}

namespace {

// Limit of (G, phi) restricted to a phi-stable subgroup S on which phi is bijective.
LimResult lim_on_stable(const Tower& t, const Subgroup& s, std::size_t depth) {
  const GroupHom& phi = t.period_map();
  const FgAbGroup& g = phi.source();
  const std::size_t m = t.prefix_length();
  LatticeSolver back(hconcat(phi.matrix() * s.gens(), g.relations()));
  LimResult r;
  r.is_group = true;
  r.group = s.presentation();
  const std::size_t levels = std::max(depth, m + 1);
  for (std::size_t j = 0; j < s.count(); ++j) {
    std::vector<IntVector> th(levels);
    IntVector x = s.gens().column(j);
    th[m] = x;
    for (std::size_t i = m + 1; i < levels; ++i) {
      auto c = back.solve(th[i - 1]);
      if (!c) throw std::logic_error("period map is not surjective on the stable image");
      c->resize(s.count());
      th[i] = g.from_canonical(g.canonical(s.gens() * *c));
    }
    for (std::size_t i = m; i-- > 0;) th[i] = t.map(i).apply(th[i + 1]);
    th.resize(depth);
    r.threads.push_back(std::move(th));
  }
  GroupHom down = t.composite(m, 0);
  r.stable_image = Subgroup(t.term(0), down.matrix() * s.gens());
  return r;
}

}  // namespace

LimResult lim(const Tower& t, std::size_t depth) {
  if (depth == 0) depth = 1;
  if (t.kind() == TowerKind::FreeNested) {
    LimResult r;
    r.is_group = true;
    r.group = FgAbGroup();
    r.stable_image = Subgroup::trivial(t.term(0));
    r.certificate = "basis-index exclusion: a thread's entry in G_0 lies in every Im(G_j -> G_0), which has no "
                    "basis vector below k_j; finite support forces it to be 0, and the bonding maps are injective";
    return r;
  }
  MlCertificate ml = is_mittag_leffler(t);
  const GroupHom& phi = t.period_map();
  if (ml.mittag_leffler) {
    LimResult r = lim_on_stable(t, *ml.stable_image, depth);
    r.certificate = "Mittag-Leffler: " + ml.note + "; the limit is the stable image";
    return r;
  }
  PeriodAnalysis a = analyze(phi);
  for (const auto& p : prime_factors(a.det)) {
    if (!nilpotent_mod(a.Y, p)) continue;
    const FgAbGroup& g = phi.source();
    IntMatrix tors = a.s.from.matrix().block(0, 0, g.generators(), a.k);
    auto st = iterate_images(phi, tors, prime_factor_count([&] {
                               Integer o = 1;
                               for (const auto& x : g.invariants().torsion) o *= x;
                               return o;
                             }()) + 1);
    if (!st) throw std::logic_error("torsion image chain failed to stabilize");
    LimResult r = lim_on_stable(t, st->first, depth);
    r.certificate = "period map is nilpotent modulo " + p.get_str() +
                    " on the stable rational image (determinant " + a.det.get_str() +
                    "), so every free coordinate of a thread lies in all p-power multiples and vanishes; the limit "
                    "is the stable image of phi on the torsion subgroup";
    return r;
  }
  LimResult r;
  r.is_group = false;
  auto st = image_tower(t, t.prefix_length(), ml.bound + 1);
  r.stable_image = st.back();
  r.refusal = "period map has determinant " + a.det.get_str() +
              " on its stable rational image and is not nilpotent modulo any prime factor; the limit is not "
              "certified to be finitely generated";
  return r;
}

bool verify_threads(const Tower& t, const LimResult& r) {
  for (const auto& th : r.threads)
    for (std::size_t i = 0; i + 1 < th.size(); ++i)
      if (!t.term(i).equal(t.map(i).apply(th[i + 1]), th[i])) return false;
  return true;
}

SubtowerSample generated_subtower(const Tower& t, const IntMatrix& period_seeds,
                                  const std::vector<IntMatrix>& prefix_extras) {
  if (t.symbolic()) throw std::invalid_argument("generated_subtower needs a tower of f.g. groups");
  const GroupHom& phi = t.period_map();
  const FgAbGroup& g = phi.source();
  const std::size_t m = t.prefix_length();
  // phi-closure of the seeds
  Subgroup s(g, reduced_gens(g, period_seeds));
  for (;;) {
    Subgroup grown(g, reduced_gens(g, hconcat(s.gens(), phi.matrix() * s.gens())));
    if (s.contains(grown)) break;
    s = grown;
  }
  std::vector<Subgroup> levels;
  std::vector<IntMatrix> gens(m);
  IntMatrix above = s.gens();
  for (std::size_t i = m; i-- > 0;) {
    IntMatrix gi = t.map(i).matrix() * above;
    if (i < prefix_extras.size() && prefix_extras[i].cols() > 0) gi = hconcat(gi, prefix_extras[i]);
    gens[i] = reduced_gens(t.term(i), gi);
    above = gens[i];
  }
  std::vector<Subgroup> subs;
  for (std::size_t i = 0; i < m; ++i) subs.emplace_back(t.term(i), gens[i]);
  auto coords = [](const Subgroup& into, const IntMatrix& vecs) {
    IntMatrix out(into.count(), vecs.cols());
    for (std::size_t c = 0; c < vecs.cols(); ++c) {
      auto co = into.coordinates(vecs.column(c));
      if (!co) throw std::logic_error("subtower level is not mapped into the level below");
      out.set_column(c, *co);
    }
    return out;
  };
  std::vector<FgAbGroup> prefix;
  std::vector<GroupHom> maps;
  for (const auto& sub : subs) prefix.push_back(sub.presentation());
  const FgAbGroup& top = s.presentation();
  for (std::size_t i = 0; i < m; ++i) {
    const IntMatrix& src = i + 1 < m ? subs[i + 1].gens() : s.gens();
    const FgAbGroup& srcg = i + 1 < m ? prefix[i + 1] : top;
    maps.emplace_back(srcg, prefix[i], coords(subs[i], t.map(i).matrix() * src));
  }
  GroupHom psi(top, top, coords(s, phi.matrix() * s.gens()));
  SubtowerSample out{Tower::periodic(prefix, maps, psi), {}, s.gens(), "generated"};
  for (const auto& sub : subs) out.inclusions.push_back(sub.gens());
  return out;
}

LimFgReport lim_fg_check(const Tower& t, std::size_t samples, std::uint64_t seed, std::size_t depth) {
  LimFgReport rep;
  rep.depth = depth;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coeff(-2, 2);
  if (t.kind() == TowerKind::FreeNested) {
    const std::size_t w = t.width();
    for (std::size_t k = 0; k < samples; ++k) {
      IntMatrix seeds(w, 1 + k % 2);
      for (std::size_t i = 0; i < seeds.rows(); ++i)
        for (std::size_t j = 0; j < seeds.cols(); ++j) seeds(i, j) = coeff(rng);
      Tower pure = purified_nested_subtower(t, seeds);
      LimResult lh = lim(pure, depth);
      ++rep.samples;
      if (!lh.is_group || !lh.group.is_trivial()) ++rep.failures;
    }
    rep.notes.push_back("every purified f.g. subtower has zero limit, matching lim = 0");
    rep.pass = rep.failures == 0;
    return rep;
  }
  const std::size_t m = t.prefix_length();
  const std::size_t levels = std::max(depth, m + 1);
  LimResult lt = lim(t, levels);
  if (!lt.is_group) {
    rep.undetermined = true;
    rep.notes.push_back("limit of the tower is not certified: " + lt.refusal);
    return rep;
  }
  std::vector<Subgroup> target, uni;
  for (std::size_t i = 0; i < depth; ++i) {
    FgAbGroup gi = t.term(i);
    target.emplace_back(gi, lt.threads.empty() ? IntMatrix(gi.generators(), 0) : lt.projection(i));
    uni.push_back(Subgroup::trivial(gi));
  }
  const FgAbGroup& g = t.period_group();
  std::vector<SubtowerSample> subs;
  subs.push_back(generated_subtower(t, IntMatrix::identity(g.generators())));
  subs.back().origin = "whole";
  subs.push_back(generated_subtower(
      t, lt.threads.empty() ? IntMatrix(g.generators(), 0) : lt.projection(m)));
  subs.back().origin = "thread-closure";
  std::uniform_int_distribution<int> count(1, 2);
  for (std::size_t k = 0; k < samples; ++k) {
    IntMatrix seeds(g.generators(), count(rng));
    for (std::size_t i = 0; i < seeds.rows(); ++i)
      for (std::size_t j = 0; j < seeds.cols(); ++j) seeds(i, j) = coeff(rng);
    std::vector<IntMatrix> extras;
    for (std::size_t i = 0; i < m; ++i) {
      IntMatrix e(t.term(i).generators(), rng() % 2);
      for (std::size_t a = 0; a < e.rows(); ++a)
        for (std::size_t b = 0; b < e.cols(); ++b) e(a, b) = coeff(rng);
      extras.push_back(e);
    }
    subs.push_back(generated_subtower(t, seeds, extras));
    subs.back().origin = "random";
  }
  const bool t_vanishes = lim1_class(t).vanishes;
  for (const auto& h : subs) {
    ++rep.samples;
    LimResult lh = lim(h.tower, levels);
    if (!lh.is_group) {
      rep.notes.push_back(h.origin + " subtower: limit not certified, skipped");
      continue;
    }
    for (std::size_t i = 0; i < depth; ++i) {
      const IntMatrix& incl = i < m ? h.inclusions[i] : h.period_inclusion;
      IntMatrix proj = lh.threads.empty() ? IntMatrix(h.tower.term(i).generators(), 0) : lh.projection(i);
      Subgroup img(t.term(i), incl * proj);
      if (!target[i].contains(img)) {
        ++rep.failures;
        rep.notes.push_back(h.origin + " subtower: limit not contained in lim(T) at level " + std::to_string(i));
      }
      uni[i] = uni[i].sum(img);
    }
    if (!lim1_class(h.tower).vanishes && t_vanishes)
      rep.notes.push_back(h.origin + " subtower has nonzero lim^1; its class dies in the terminal f.g. subtower "
                                     "(the tower itself), so no kernel element of tau_fg is detected");
  }
  for (std::size_t i = 0; i < depth; ++i) {
    if (!uni[i].contains(target[i])) {
      ++rep.failures;
      rep.notes.push_back("union of subtower limits misses part of lim(T) at level " + std::to_string(i));
    }
  }
  rep.pass = rep.failures == 0;
  return rep;
}

FgAbGroup truncated_lim_by_pullbacks(const Tower& t, std::size_t depth) {
  if (depth == 0) throw std::invalid_argument("truncated_lim_by_pullbacks: depth must be positive");
  FgAbGroup l = t.term(0);
  GroupHom top = GroupHom::identity(l);
  for (std::size_t k = 1; k < depth; ++k) {
    Pullback pb = pullback(t.map(k - 1), top);
    l = pb.group;
    top = pb.p1;
  }
  return l;
}

RoosReport roos_shift_check(const Tower& t, std::size_t depth) {
  if (depth < 2) throw std::invalid_argument("roos_shift_check: depth must be at least 2");
  std::vector<FgAbGroup> terms;
  std::vector<std::size_t> off{0};
  for (std::size_t i = 0; i < depth; ++i) {
    terms.push_back(t.term(i));
    off.push_back(off.back() + terms.back().generators());
  }
  FgAbGroup src = direct_sum(terms);
  FgAbGroup tgt = direct_sum(std::vector<FgAbGroup>(terms.begin(), terms.end() - 1));
  IntMatrix m(off[depth - 1], off[depth]);
  for (std::size_t i = 0; i + 1 < depth; ++i) {
    for (std::size_t a = 0; a < terms[i].generators(); ++a) m(off[i] + a, off[i] + a) = 1;
    IntMatrix f = t.map(i).matrix();
    for (std::size_t a = 0; a < f.rows(); ++a)
      for (std::size_t b = 0; b < f.cols(); ++b) m(off[i] + a, off[i + 1] + b) = -f(a, b);
  }
  GroupHom shift(src, tgt, m);
  RoosReport r;
  r.depth = depth;
  r.kernel = kernel(shift).group;
  r.cokernel = cokernel(shift).group;
  r.truncated_lim = truncated_lim_by_pullbacks(t, depth);
  r.kernel_matches = is_isomorphic(r.kernel, r.truncated_lim);
  r.cokernel_zero = r.cokernel.is_trivial();
  return r;
}

}  // namespace prolim
