#include "prolim/bisystem.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace prolim {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedTrue: return "certified_true";
    case Verdict::CertifiedFalse: return "certified_false";
    case Verdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string to_string(SideValue::Form f) {
  switch (f) {
    case SideValue::Form::Group: return "group";
    case SideValue::Form::Symbolic: return "symbolic";
    case SideValue::Form::Undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

std::string at(std::size_t a, std::size_t b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

FgAbGroup quotient(const FgAbGroup& g, const IntMatrix& gens) {
  return FgAbGroup(g.generators(), hconcat(g.relations(), gens));
}

// u restricted to an invariant subgroup, on the subgroup's presentation.
GroupHom restrict_to(const GroupHom& u, const Subgroup& s) {
  IntMatrix m(s.count(), s.count());
  for (std::size_t j = 0; j < s.count(); ++j) {
    auto c = s.coordinates(u.apply(s.gens().column(j)));
    if (!c) throw std::logic_error("subgroup is not invariant");
    m.set_column(j, *c);
  }
  return GroupHom(s.presentation(), s.presentation(), m);
}

IntMatrix power(const IntMatrix& m, std::size_t k) {
  IntMatrix out = IntMatrix::identity(m.rows());
  for (std::size_t i = 0; i < k; ++i) out = m * out;
  return out;
}

constexpr std::size_t kLocalizationSearch = 16;

// Data behind lim_colim for a BiPeriodic system.
struct RowColim {
  Subgroup e;
  FgAbGroup gbar;
  bool u_onto = false;
  std::optional<LimResult> lim;  // when u_onto
  // v w = u^k on gbar with v injective: v is invertible on the localization
  std::optional<IntMatrix> w;
  std::size_t k = 0;
};

RowColim row_colim(const BiSystem& s) {
  RowColim r{eventual_kernel(s.u()), FgAbGroup(), false, std::nullopt, std::nullopt, 0};
  r.gbar = quotient(s.u().source(), r.e.gens());
  GroupHom ubar(r.gbar, r.gbar, s.u().matrix()), vbar(r.gbar, r.gbar, s.v().matrix());
  r.u_onto = ubar.is_surjective();
  if (r.u_onto) {
    r.lim = lim(Tower::periodic(vbar));
    return r;
  }
  if (!vbar.is_injective()) return r;
  Subgroup imv(r.gbar, vbar.matrix());
  const std::size_t n = r.gbar.generators();
  for (std::size_t k = 1; k <= kLocalizationSearch; ++k) {
    IntMatrix uk = power(s.u().matrix(), k);
    IntMatrix w(n, n);
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      auto c = imv.coordinates(uk.column(j));
      if (!c) ok = false;
      else w.set_column(j, *c);
    }
    if (ok) {
      r.w = w;
      r.k = k;
      break;
    }
  }
  return r;
}

SideValue value_of(const FgAbGroup& g, std::string description, std::string certificate) {
  SideValue out;
  out.form = SideValue::Form::Group;
  out.group = g;
  out.certified_zero = g.is_trivial();
  out.certified_nonzero = !g.is_trivial();
  out.stabilized = true;
  out.description = std::move(description);
  out.certificate = std::move(certificate);
  return out;
}

SideValue undetermined(std::string why) {
  SideValue out;
  out.description = std::move(why);
  return out;
}

// Column data for a BiPeriodic system: stable image S of v and colim over u.
struct ColumnLim {
  std::optional<Subgroup> s;
  FgAbGroup sbar;
  IntMatrix e_gens;  // eventual kernel of u on S, S coordinates
  bool u_onto = false;
  std::string certificate;
  std::string refusal;
};

ColumnLim column_lim(const BiSystem& s) {
  ColumnLim c;
  LimResult l = lim(Tower::periodic(s.v()));
  c.certificate = l.certificate;
  if (!l.is_group) {
    c.refusal = l.refusal;
    return c;
  }
  if (l.group.is_trivial()) {
    c.s = Subgroup::trivial(s.v().source());
    return c;
  }
  if (!l.stable_image || !GroupHom(l.group, s.v().source(), l.projection(0)).is_injective()) {
    c.refusal = "the lim does not embed in the base term";
    return c;
  }
  c.s = *l.stable_image;
  GroupHom us = restrict_to(s.u(), *c.s);
  Subgroup e = eventual_kernel(us);
  c.e_gens = e.gens();
  c.sbar = quotient(c.s->presentation(), e.gens());
  c.u_onto = GroupHom(c.sbar, c.sbar, us.matrix()).is_surjective();
  return c;
}

struct Diagonals {
  long dmin = 0, dmax = 0;
  std::vector<FgAbGroup> f;      // f[d - dmin]
  std::vector<GroupHom> psi;     // psi[d - dmin] : F(d) -> F(d+1)
  GroupHom total;                // F(dmin) -> F(dmax)
  bool ends_stable = false;
};

Diagonals diagonals(const BiSystem& s, std::size_t wa, std::size_t wb) {
  Diagonals d;
  d.dmin = -static_cast<long>(wb - 1);
  d.dmax = static_cast<long>(wa - 1);
  for (long x = d.dmin; x <= d.dmax; ++x) {
    std::size_t a = x >= 0 ? static_cast<std::size_t>(x) : 0, b = x >= 0 ? 0 : static_cast<std::size_t>(-x);
    d.f.push_back(s.group(a, b));
    if (x < d.dmax) d.psi.push_back(s.alpha_map(a, b));
  }
  d.total = GroupHom::identity(d.f.front());
  for (const auto& p : d.psi) d.total = compose(p, d.total);
  auto iso = [](const GroupHom& h) { return h.is_injective() && h.is_surjective(); };
  d.ends_stable = d.psi.empty() || (iso(d.psi.front()) && iso(d.psi.back()));
  return d;
}

std::pair<std::size_t, std::size_t> clamp_window(const BiSystem& s, std::size_t wa, std::size_t wb) {
  if (wa == 0 || wb == 0) throw std::invalid_argument("window must be at least 1 x 1");
  if (s.kind() == BiSystem::Kind::ExplicitGrid) {
    wa = std::min(wa, s.window_alpha());
    wb = std::min(wb, s.window_beta());
  }
  return {wa, wb};
}

IntVector sign_normalized(IntVector v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

void fill_from_hom(TauReport& r, const GroupHom& t, bool certified, const std::string& why) {
  r.tau = t;
  SubgroupResult k = kernel(t);
  SubgroupResult c = cokernel(t);
  r.kernel = k.group;
  r.cokernel = c.group;
  if (!certified) {
    r.injective_certificate = r.surjective_certificate = why;
    return;
  }
  r.injective = k.group.is_trivial() ? Verdict::CertifiedTrue : Verdict::CertifiedFalse;
  r.surjective = c.group.is_trivial() ? Verdict::CertifiedTrue : Verdict::CertifiedFalse;
  for (std::size_t j = 0; j < k.gens.cols(); ++j)
    if (!t.source().is_zero(k.gens.column(j))) {
      r.kernel_witness = sign_normalized(k.gens.column(j));
      break;
    }
  r.injective_certificate = k.group.is_trivial() ? "ker(tau) = 0 computed exactly" : "nonzero kernel element exhibited";
  r.surjective_certificate =
      c.group.is_trivial() ? "coker(tau) = 0 computed exactly" : "coker(tau) = " + c.group.invariants().to_string();
}

void check_sequence(TauReport& r) {
  if (r.p1.state != "zero" || r.q1.state != "zero" || !r.tau) return;
  const FgAbGroup zero;
  const FgAbGroup& cl = r.tau->source();
  const FgAbGroup& lc = r.tau->target();
  std::vector<GroupHom> chain{GroupHom::zero(zero, zero), GroupHom::zero(zero, zero), GroupHom::zero(zero, cl), *r.tau,
                              GroupHom::zero(lc, zero)};
  r.junctions = check_exact(chain);
  r.sequence_exact = all_exact(r.junctions);
}

}  // namespace

Subgroup eventual_kernel(const GroupHom& u) {
  if (!same_presentation(u.source(), u.target())) throw std::invalid_argument("eventual kernel: not an endomorphism");
  GroupHom uk = u;
  Subgroup k = kernel_subgroup(uk);
  for (std::size_t i = 0; i < 256; ++i) {
    uk = compose(u, uk);
    Subgroup next = kernel_subgroup(uk);
    if (k.contains(next)) return k;
    k = next;
  }
  throw std::runtime_error("eventual kernel: no stabilization after 256 steps");
}

BiSystem BiSystem::grid(std::vector<std::vector<FgAbGroup>> groups, std::vector<std::vector<GroupHom>> alpha,
                        std::vector<std::vector<GroupHom>> beta, Tail tail) {
  BiSystem s;
  s.kind_ = Kind::ExplicitGrid;
  s.tail_ = tail;
  const std::size_t na = groups.size();
  if (na == 0 || groups[0].empty()) throw std::invalid_argument("grid: empty window");
  const std::size_t nb = groups[0].size();
  for (const auto& col : groups)
    if (col.size() != nb) throw std::invalid_argument("grid: ragged window");
  if (alpha.size() != na - 1) throw std::invalid_argument("grid: expected " + std::to_string(na - 1) + " alpha columns");
  if (beta.size() != na) throw std::invalid_argument("grid: expected " + std::to_string(na) + " beta columns");
  for (std::size_t a = 0; a + 1 < na; ++a) {
    if (alpha[a].size() != nb) throw std::invalid_argument("grid: alpha column " + std::to_string(a) + " has the wrong length");
    for (std::size_t b = 0; b < nb; ++b)
      if (!same_presentation(alpha[a][b].source(), groups[a][b]) ||
          !same_presentation(alpha[a][b].target(), groups[a + 1][b]))
        throw std::invalid_argument("grid: alpha map at " + at(a, b) + " has the wrong ends");
  }
  for (std::size_t a = 0; a < na; ++a) {
    if (beta[a].size() != nb - 1) throw std::invalid_argument("grid: beta column " + std::to_string(a) + " has the wrong length");
    for (std::size_t b = 0; b + 1 < nb; ++b)
      if (!same_presentation(beta[a][b].source(), groups[a][b + 1]) ||
          !same_presentation(beta[a][b].target(), groups[a][b]))
        throw std::invalid_argument("grid: beta map at " + at(a, b) + " has the wrong ends");
  }
  for (std::size_t a = 0; a + 1 < na; ++a)
    for (std::size_t b = 0; b + 1 < nb; ++b)
      if (!compose(alpha[a][b], beta[a][b]).equals(compose(beta[a + 1][b], alpha[a][b + 1])))
        throw std::invalid_argument("grid: square at " + at(a, b) + " does not commute");
  if (tail == Tail::Diagonal) {
    for (std::size_t a = 0; a + 1 < na; ++a)
      for (std::size_t b = 0; b + 1 < nb; ++b)
        if (!same_presentation(groups[a][b], groups[a + 1][b + 1]))
          throw std::invalid_argument("grid: diagonal tail needs G" + at(a, b) + " = G" + at(a + 1, b + 1));
    // every map F(d) -> F(d+1) must agree, whichever direction carries it
    std::map<long, IntMatrix> psi;
    auto record = [&](long d, const GroupHom& h, const std::string& where) {
      auto [it, fresh] = psi.emplace(d, h.matrix());
      if (!fresh && !(it->second == h.matrix()))
        throw std::invalid_argument("grid: diagonal tail needs equal maps along diagonals (" + where + ")");
    };
    for (std::size_t a = 0; a + 1 < na; ++a)
      for (std::size_t b = 0; b < nb; ++b)
        record(static_cast<long>(a) - static_cast<long>(b), alpha[a][b], "alpha " + at(a, b));
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b + 1 < nb; ++b)
        record(static_cast<long>(a) - static_cast<long>(b) - 1, beta[a][b], "beta " + at(a, b));
  }
  s.groups_ = std::move(groups);
  s.alpha_ = std::move(alpha);
  s.beta_ = std::move(beta);
  return s;
}

BiSystem BiSystem::periodic(const GroupHom& u, const GroupHom& v) {
  if (!same_presentation(u.source(), u.target()) || !same_presentation(v.source(), v.target()) ||
      !same_presentation(u.source(), v.source()))
    throw std::invalid_argument("bi-periodic system: u and v must be endomorphisms of one group");
  if (!compose(u, v).equals(compose(v, u))) throw std::invalid_argument("bi-periodic system: u and v do not commute");
  BiSystem s;
  s.kind_ = Kind::BiPeriodic;
  s.u_ = u;
  s.v_ = v;
  return s;
}

const FgAbGroup& BiSystem::group(std::size_t a, std::size_t b) const {
  if (kind_ == Kind::BiPeriodic) return u_.source();
  const std::size_t na = window_alpha(), nb = window_beta();
  if (tail_ == Tail::Constant) return groups_[std::min(a, na - 1)][std::min(b, nb - 1)];
  long d = static_cast<long>(a) - static_cast<long>(b);
  d = std::max(d, -static_cast<long>(nb - 1));
  d = std::min(d, static_cast<long>(na - 1));
  return d >= 0 ? groups_[static_cast<std::size_t>(d)][0] : groups_[0][static_cast<std::size_t>(-d)];
}

GroupHom BiSystem::alpha_map(std::size_t a, std::size_t b) const {
  if (kind_ == Kind::BiPeriodic) return u_;
  const std::size_t na = window_alpha(), nb = window_beta();
  if (tail_ == Tail::Constant) {
    if (a + 1 >= na) return GroupHom::identity(group(a, b));
    return alpha_[a][std::min(b, nb - 1)];
  }
  const long d = static_cast<long>(a) - static_cast<long>(b);
  if (d < -static_cast<long>(nb - 1) || d >= static_cast<long>(na - 1)) return GroupHom::identity(group(a, b));
  if (d >= 0) return alpha_[static_cast<std::size_t>(d)][0];
  if (na >= 2) return alpha_[0][static_cast<std::size_t>(-d)];
  return beta_[0][static_cast<std::size_t>(-d - 1)];
}

GroupHom BiSystem::beta_map(std::size_t a, std::size_t b) const {
  if (kind_ == Kind::BiPeriodic) return v_;
  const std::size_t na = window_alpha(), nb = window_beta();
  if (tail_ == Tail::Constant) {
    if (b + 1 >= nb) return GroupHom::identity(group(a, b));
    return beta_[std::min(a, na - 1)][b];
  }
  // G(a,b+1) = F(d-1) -> G(a,b) = F(d), the same map as alpha at (a,b+1)
  return alpha_map(a, b + 1);
}

SideValue colim_then_lim(const BiSystem& s, std::size_t wa, std::size_t wb) {
  std::tie(wa, wb) = clamp_window(s, wa, wb);
  if (s.kind() == BiSystem::Kind::ExplicitGrid) {
    if (s.tail() == BiSystem::Tail::Constant)
      return value_of(s.group(wa - 1, wb - 1), "G(A-1,B-1)", "constant tail: every column is eventually constant");
    Diagonals d = diagonals(s, wa, wb);
    SideValue v = value_of(d.f.front(), "F(" + std::to_string(d.dmin) + ")",
                           "diagonal tail: every column tower is eventually F(dmin) with identity maps");
    if (!d.ends_stable) {
      v.stabilized = false;
      v.certificate += "; the window has not reached the constant regime";
    }
    return v;
  }
  ColumnLim c = column_lim(s);
  if (!c.s) return undetermined("lim of the column tower (G, v) is not decided: " + c.refusal);
  if (c.s->count() == 0 || c.s->presentation().is_trivial())
    return value_of(FgAbGroup(), "0", "column towers (G, v) have lim 0: " + c.certificate);
  if (c.sbar.is_trivial()) return value_of(FgAbGroup(), "0", "u is nilpotent on lim(G, v)");
  if (c.u_onto) return value_of(c.sbar, "lim(G,v)/ker u^inf", "u is an automorphism of lim(G, v) modulo its eventual kernel");
  SideValue v;
  v.form = SideValue::Form::Symbolic;
  v.certified_nonzero = true;
  v.stabilized = true;
  v.description = "colim(lim(G,v), u) = (lim(G,v)/ker u^inf)[1/u], not finitely generated";
  v.certificate = "u is injective and not onto on a nonzero f.g. group";
  return v;
}

SideValue lim_then_colim(const BiSystem& s, std::size_t wa, std::size_t wb) {
  std::tie(wa, wb) = clamp_window(s, wa, wb);
  if (s.kind() == BiSystem::Kind::ExplicitGrid) {
    if (s.tail() == BiSystem::Tail::Constant)
      return value_of(s.group(wa - 1, wb - 1), "G(A-1,B-1)", "constant tail: every row is eventually constant");
    Diagonals d = diagonals(s, wa, wb);
    SideValue v = value_of(d.f.back(), "F(" + std::to_string(d.dmax) + ")",
                           "diagonal tail: every row colim is F(dmax) and the beta maps on it are identities");
    if (!d.ends_stable) {
      v.stabilized = false;
      v.certificate += "; the window has not reached the constant regime";
    }
    return v;
  }
  RowColim r = row_colim(s);
  if (r.gbar.is_trivial()) return value_of(FgAbGroup(), "0", "u is nilpotent on G");
  if (r.u_onto) {
    if (!r.lim->is_group) return undetermined("lim of the row colims is not decided: " + r.lim->refusal);
    return value_of(r.lim->group, "lim(G/ker u^inf, v)", r.lim->certificate);
  }
  if (r.w) {
    SideValue v;
    v.form = SideValue::Form::Symbolic;
    v.certified_nonzero = true;
    v.stabilized = true;
    v.description = "(G/ker u^inf)[1/u], on which v is invertible; not finitely generated";
    v.certificate = "v w = u^" + std::to_string(r.k) + " on G/ker u^inf with v injective";
    return v;
  }
  return undetermined("row colim is not finitely generated and v is not shown invertible on it");
}

TauReport tau(const BiSystem& s, std::size_t wa, std::size_t wb) {
  std::tie(wa, wb) = clamp_window(s, wa, wb);
  TauReport r;
  r.window_alpha = wa;
  r.window_beta = wb;
  r.colim_lim = colim_then_lim(s, wa, wb);
  r.lim_colim = lim_then_colim(s, wa, wb);

  if (s.kind() == BiSystem::Kind::ExplicitGrid) {
    r.p1 = {"zero", "column towers are eventually constant"};
    r.q1 = {"zero", "the tower of row colims is eventually constant"};
    if (s.tail() == BiSystem::Tail::Constant) {
      fill_from_hom(r, GroupHom::identity(s.group(wa - 1, wb - 1)), true, "");
    } else {
      Diagonals d = diagonals(s, wa, wb);
      fill_from_hom(r, d.total, d.ends_stable, "the window has not reached the constant regime");
    }
    check_sequence(r);
    return r;
  }

  // BiPeriodic
  if (lim1_class(Tower::periodic(s.v())).vanishes) {
    r.p1 = {"zero", "column towers (G, v) are Mittag-Leffler"};
  } else if (s.u().is_injective() && s.u().is_surjective()) {
    r.p1 = {"nonzero", "lim^1(G, v) is nonzero and u acts on it by isomorphisms"};
  } else {
    r.p1 = {"undetermined", "lim^1(G, v) is nonzero; its colim over u is not decided"};
  }
  RowColim rc = row_colim(s);
  if (rc.u_onto) {
    GroupHom vbar(rc.gbar, rc.gbar, s.v().matrix());
    r.q1 = lim1_class(Tower::periodic(vbar)).vanishes ? SlotValue{"zero", "row colims form a Mittag-Leffler tower"}
                                                        : SlotValue{"nonzero", "row colims form a non-Mittag-Leffler tower"};
  } else {
    r.q1 = {"undetermined", "row colims are not finitely generated"};
  }

  const SideValue& cl = r.colim_lim;
  const SideValue& lc = r.lim_colim;
  if (cl.form == SideValue::Form::Group && lc.form == SideValue::Form::Group && !cl.group.is_trivial() && rc.lim) {
    // tau sends the class of x in S/E to the thread through x mod E_G
    ColumnLim c = column_lim(s);
    IntMatrix proj = rc.lim->projection(0);
    Subgroup img(rc.gbar, proj);
    IntMatrix m(lc.group.generators(), cl.group.generators());
    for (std::size_t j = 0; j < c.s->count(); ++j) {
      auto x = img.coordinates(c.s->gens().column(j));
      if (!x) throw std::logic_error("tau: image outside the stable image");
      m.set_column(j, *x);
    }
    fill_from_hom(r, GroupHom(cl.group, lc.group, m), true, "");
    check_sequence(r);
    return r;
  }
  if (cl.certified_zero) {
    r.injective = Verdict::CertifiedTrue;
    r.injective_certificate = "colim lim = 0";
    if (lc.form == SideValue::Form::Group) {
      fill_from_hom(r, GroupHom::zero(cl.group, lc.group), true, "");
      check_sequence(r);
      return r;
    }
    if (lc.certified_nonzero && rc.w) {
      // thread of classes g_b at alpha = k b with u^k g_b = v g_{b+1}
      const std::size_t n = rc.gbar.generators();
      std::optional<std::size_t> start;
      for (std::size_t i = 0; i < n && !start; ++i) {
        IntVector e(n, 0);
        e[i] = 1;
        if (!rc.gbar.is_zero(e)) start = i;
      }
      IntVector g(n, 0);
      g[*start] = 1;
      for (std::size_t b = 0; b < wb && rc.k * b < wa; ++b) {
        r.thread.push_back(g);
        r.thread_alpha.push_back(rc.k * b);
        g = (*rc.w) * g;
      }
      if (r.thread.size() >= 2) {
        r.surjective = Verdict::CertifiedFalse;
        r.surjective_certificate = "colim lim = 0 while lim colim contains the nonzero thread listed (" +
                                   std::to_string(r.thread.size()) + " levels checked in the window; " +
                                   lc.certificate + ")";
      } else {
        r.surjective_certificate = "window too small to exhibit a thread";
      }
    } else {
      r.surjective_certificate = "lim colim is not decided";
    }
    return r;
  }
  r.injective_certificate = r.surjective_certificate = "tau is not computable from the decided data";
  return r;
}

bool verify_thread(const BiSystem& s, const TauReport& r) {
  if (s.kind() != BiSystem::Kind::BiPeriodic || r.thread.size() < 2) return false;
  Subgroup e = eventual_kernel(s.u());
  FgAbGroup gbar = quotient(s.u().source(), e.gens());
  if (gbar.is_zero(r.thread[0])) return false;
  for (std::size_t b = 0; b + 1 < r.thread.size(); ++b) {
    if (r.thread_alpha[b + 1] < r.thread_alpha[b]) return false;
    IntMatrix uk = power(s.u().matrix(), r.thread_alpha[b + 1] - r.thread_alpha[b]);
    if (!gbar.equal(uk * r.thread[b], s.v().apply(r.thread[b + 1]))) return false;
  }
  return true;
}

}  // namespace prolim
