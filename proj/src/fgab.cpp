#include "prolim/fgab.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace prolim {

std::string Invariants::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << '^' << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t.get_str();
    first = false;
  }
  return os.str();
}

FgAbGroup::FgAbGroup() : FgAbGroup(0) {}

FgAbGroup::FgAbGroup(std::size_t generators) : FgAbGroup(generators, IntMatrix(generators, 0)) {}

FgAbGroup::FgAbGroup(std::size_t generators, IntMatrix relations) : n_(generators), rel_(std::move(relations)) {
  if (rel_.rows() != n_) {
    if (rel_.rows() == 0 && rel_.cols() == 0) {
      rel_ = IntMatrix(n_, 0);
    } else {
      throw std::invalid_argument("FgAbGroup: relation matrix has " + std::to_string(rel_.rows()) +
                                  " rows for " + std::to_string(n_) + " generators");
    }
  }
  build();
}

FgAbGroup FgAbGroup::cyclic(const Integer& n) { return FgAbGroup(1, IntMatrix::diagonal({n}, 1, 1)); }

FgAbGroup FgAbGroup::from_invariants(const Invariants& inv) {
  const std::size_t k = inv.torsion.size();
  return FgAbGroup(k + inv.free_rank, IntMatrix::diagonal(inv.torsion, k + inv.free_rank, k));
}

void FgAbGroup::build() {
  SnfDecomposition s = snf(rel_, kSnfLeft | kSnfLeftInverse);
  auto d = std::make_shared<Data>();
  std::vector<std::size_t> tors, fr;
  for (std::size_t i = 0; i < n_; ++i) {
    if (i < s.rank) {
      if (s.D(i, i) != 1) {
        tors.push_back(i);
        d->inv.torsion.push_back(s.D(i, i));
      }
    } else {
      fr.push_back(i);
    }
  }
  d->inv.free_rank = fr.size();
  std::vector<std::size_t> kept = tors;
  kept.insert(kept.end(), fr.begin(), fr.end());
  d->to = s.U.select_rows(kept);
  d->from = s.U_inv.select_columns(kept);
  data_ = d;
}

void FgAbGroup::check_element(const IntVector& x) const {
  if (x.size() != n_)
    throw std::invalid_argument("element has " + std::to_string(x.size()) + " coordinates, group has " +
                                std::to_string(n_) + " generators");
}

IntVector FgAbGroup::canonical(const IntVector& x) const {
  check_element(x);
  IntVector c = data_->to * x;
  for (std::size_t i = 0; i < data_->inv.torsion.size(); ++i) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), c[i].get_mpz_t(), data_->inv.torsion[i].get_mpz_t());
    c[i] = r;
  }
  return c;
}

IntVector FgAbGroup::from_canonical(const IntVector& c) const { return data_->from * c; }

bool FgAbGroup::is_zero(const IntVector& x) const { return is_zero_vector(canonical(x)); }

Integer FgAbGroup::order(const IntVector& x) const {
  IntVector c = canonical(x);
  const auto& t = data_->inv.torsion;
  for (std::size_t i = t.size(); i < c.size(); ++i)
    if (sgn(c[i]) != 0) return 0;
  Integer o = 1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    Integer g, part;
    mpz_gcd(g.get_mpz_t(), t[i].get_mpz_t(), c[i].get_mpz_t());
    part = t[i] / g;
    mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), part.get_mpz_t());
  }
  return o;
}

bool is_isomorphic(const FgAbGroup& a, const FgAbGroup& b) { return a.invariants() == b.invariants(); }

GroupHom::GroupHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
    : src_(std::move(source)), tgt_(std::move(target)), m_(std::move(matrix)) {
  if (m_.rows() == 0 && m_.cols() == 0) m_ = IntMatrix(tgt_.generators(), src_.generators());
  if (m_.rows() != tgt_.generators() || m_.cols() != src_.generators())
    throw std::invalid_argument("GroupHom: matrix is " + std::to_string(m_.rows()) + "x" +
                                std::to_string(m_.cols()) + ", expected " + std::to_string(tgt_.generators()) +
                                "x" + std::to_string(src_.generators()));
  const IntMatrix& r = src_.relations();
  for (std::size_t j = 0; j < r.cols(); ++j) {
    if (!tgt_.is_zero(m_ * r.column(j)))
      throw std::invalid_argument("GroupHom: source relation " + std::to_string(j) +
                                  " is not sent to zero, map is not well defined");
  }
}

GroupHom GroupHom::identity(const FgAbGroup& g) { return GroupHom(g, g, IntMatrix::identity(g.generators())); }

GroupHom GroupHom::zero(const FgAbGroup& s, const FgAbGroup& t) {
  return GroupHom(s, t, IntMatrix(t.generators(), s.generators()));
}

GroupHom GroupHom::scalar(const FgAbGroup& g, const Integer& k) {
  return GroupHom(g, g, IntMatrix::diagonal(IntVector(g.generators(), k), g.generators(), g.generators()));
}

bool GroupHom::is_zero() const {
  for (std::size_t j = 0; j < m_.cols(); ++j)
    if (!tgt_.is_zero(m_.column(j))) return false;
  return true;
}

bool GroupHom::equals(const GroupHom& o) const {
  if (m_.rows() != o.m_.rows() || m_.cols() != o.m_.cols()) return false;
  for (std::size_t j = 0; j < m_.cols(); ++j)
    if (!tgt_.equal(m_.column(j), o.m_.column(j))) return false;
  return true;
}

bool GroupHom::is_injective() const { return kernel(*this).group.is_trivial(); }

bool GroupHom::is_surjective() const { return cokernel(*this).group.is_trivial(); }

bool same_presentation(const FgAbGroup& a, const FgAbGroup& b) {
  return a.generators() == b.generators() && a.relations() == b.relations();
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (!same_presentation(f.target(), g.source()))
    throw std::invalid_argument("compose: target of the first map is not the source of the second");
  return GroupHom(f.source(), g.target(), g.matrix() * f.matrix());
}

Subgroup::Subgroup(FgAbGroup ambient, IntMatrix gens) : amb_(std::move(ambient)), gens_(std::move(gens)) {
  if (gens_.rows() == 0 && gens_.cols() == 0) gens_ = IntMatrix(amb_.generators(), 0);
  if (gens_.rows() != amb_.generators())
    throw std::invalid_argument("Subgroup: generator vectors have " + std::to_string(gens_.rows()) +
                                " coordinates, ambient has " + std::to_string(amb_.generators()) + " generators");
  solver_ = std::make_shared<LatticeSolver>(hconcat(gens_, amb_.relations()));
}

std::optional<IntVector> Subgroup::coordinates(const IntVector& x) const {
  amb_.check_element(x);
  auto sol = solver_->solve(x);
  if (!sol) return std::nullopt;
  sol->resize(gens_.cols());
  return sol;
}

bool Subgroup::contains(const IntVector& x) const {
  amb_.check_element(x);
  return solver_->in_lattice(x);
}

bool Subgroup::contains(const Subgroup& other) const { return !missing_from(other).has_value(); }

std::optional<IntVector> Subgroup::missing_from(const Subgroup& other) const {
  for (std::size_t j = 0; j < other.gens_.cols(); ++j) {
    IntVector v = other.gens_.column(j);
    if (!contains(v)) return v;
  }
  return std::nullopt;
}

const FgAbGroup& Subgroup::presentation() const {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (!pres_) {
    const std::size_t k = gens_.cols();
    IntMatrix kb = kernel_basis(hconcat(gens_, amb_.relations()));
    pres_ = std::make_shared<FgAbGroup>(k, lattice_basis(kb.block(0, 0, k, kb.cols())));
  }
  return *pres_;
}

GroupHom Subgroup::inclusion() const { return GroupHom(presentation(), amb_, gens_); }

Subgroup Subgroup::intersect(const Subgroup& other) const {
  const std::size_t k = gens_.cols();
  IntMatrix big = hconcat(hconcat(gens_, -other.gens_), amb_.relations());
  IntMatrix kb = kernel_basis(big);
  IntMatrix coeff = kb.block(0, 0, k, kb.cols());
  return Subgroup(amb_, lattice_basis(gens_ * coeff));
}

Subgroup Subgroup::sum(const Subgroup& other) const { return Subgroup(amb_, hconcat(gens_, other.gens_)); }

Subgroup kernel_subgroup(const GroupHom& f) {
  const std::size_t s = f.source().generators();
  IntMatrix kb = kernel_basis(hconcat(f.matrix(), f.target().relations()));
  return Subgroup(f.source(), lattice_basis(kb.block(0, 0, s, kb.cols())));
}

Subgroup image_subgroup(const GroupHom& f) { return Subgroup(f.target(), f.matrix()); }

SubgroupResult kernel(const GroupHom& f) {
  Subgroup k = kernel_subgroup(f);
  return {k.presentation(), k.inclusion(), k.gens()};
}

SubgroupResult image(const GroupHom& f) {
  Subgroup im = image_subgroup(f);
  return {im.presentation(), im.inclusion(), im.gens()};
}

SubgroupResult cokernel(const GroupHom& f) {
  const FgAbGroup& t = f.target();
  FgAbGroup q(t.generators(), hconcat(t.relations(), f.matrix()));
  return {q, GroupHom(t, q, IntMatrix::identity(t.generators())), IntMatrix::identity(t.generators())};
}

Subgroup preimage(const GroupHom& f, const Subgroup& h) {
  const std::size_t s = f.source().generators();
  IntMatrix kb = kernel_basis(hconcat(hconcat(f.matrix(), h.gens()), f.target().relations()));
  return Subgroup(f.source(), lattice_basis(kb.block(0, 0, s, kb.cols())));
}

Subgroup image_of(const GroupHom& f, const Subgroup& h) { return Subgroup(f.target(), f.matrix() * h.gens()); }

std::optional<IntVector> Subquotient::classify(const IntVector& x) const {
  auto sol = classifier->solve(x);
  if (!sol) return std::nullopt;
  sol->resize(kernel_gens);
  return sol;
}

Subquotient homology(const GroupHom& f, const GroupHom& g) {
  if (!same_presentation(f.target(), g.source()))
    throw std::invalid_argument("homology: maps are not composable");
  if (!compose(g, f).is_zero()) throw std::invalid_argument("homology: composite is not zero");
  Subgroup z = kernel_subgroup(g);
  const std::size_t k = z.count();
  Subquotient out;
  out.kernel_gens = k;
  out.reps = z.gens();
  out.classifier = std::make_shared<LatticeSolver>(hconcat(z.gens(), f.target().relations()));
  IntMatrix boundaries(k, f.source().generators());
  for (std::size_t j = 0; j < f.matrix().cols(); ++j) {
    auto c = out.classify(f.matrix().column(j));
    if (!c) throw std::logic_error("homology: boundary outside the kernel");
    boundaries.set_column(j, *c);
  }
  out.group = FgAbGroup(k, hconcat(z.presentation().relations(), boundaries));
  return out;
}

std::vector<JunctionReport> check_exact(const std::vector<GroupHom>& chain) {
  std::vector<JunctionReport> out;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const GroupHom& f = chain[i];
    const GroupHom& g = chain[i + 1];
    if (!same_presentation(f.target(), g.source()))
      throw std::invalid_argument("check_exact: maps " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                  " are not composable");
    JunctionReport r;
    r.index = i;
    GroupHom gf = compose(g, f);
    for (std::size_t j = 0; j < gf.matrix().cols(); ++j) {
      if (!gf.target().is_zero(gf.matrix().column(j))) {
        r.composite_zero = false;
        r.witness = f.matrix().column(j);
        break;
      }
    }
    if (r.composite_zero) {
      auto miss = image_subgroup(f).missing_from(kernel_subgroup(g));
      if (miss) {
        r.kernel_in_image = false;
        r.witness = miss;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool all_exact(const std::vector<JunctionReport>& r) {
  for (const auto& j : r)
    if (!j.exact()) return false;
  return true;
}

Simplified simplify(const FgAbGroup& g) {
  FgAbGroup c = FgAbGroup::from_invariants(g.invariants());
  return {c, GroupHom(g, c, g.to_canonical_matrix()), GroupHom(c, g, g.from_canonical_matrix())};
}

Subgroup purify(const Subgroup& h) {
  if (!h.ambient().is_free())
    throw std::invalid_argument("purify: ambient group " + h.ambient().to_string() +
                                " has torsion; purification is defined inside free groups");
  Simplified s = simplify(h.ambient());
  IntMatrix sat = saturate(s.to.matrix() * h.gens());
  return Subgroup(h.ambient(), s.from.matrix() * sat);
}

FgAbGroup hom_to_Z(const FgAbGroup& g) { return FgAbGroup::free(g.invariants().free_rank); }

FgAbGroup ext_to_Z(const FgAbGroup& g) {
  Invariants inv;
  inv.torsion = g.invariants().torsion;
  return FgAbGroup::from_invariants(inv);
}

DirectSum direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  const std::size_t na = a.generators(), nb = b.generators();
  FgAbGroup s(na + nb, block_diagonal(a.relations(), b.relations()));
  IntMatrix i1(na + nb, na), i2(na + nb, nb), p1(na, na + nb), p2(nb, na + nb);
  for (std::size_t i = 0; i < na; ++i) i1(i, i) = p1(i, i) = 1;
  for (std::size_t i = 0; i < nb; ++i) i2(na + i, i) = p2(i, na + i) = 1;
  return {s, GroupHom(a, s, i1), GroupHom(b, s, i2), GroupHom(s, a, p1), GroupHom(s, b, p2)};
}

FgAbGroup direct_sum(const std::vector<FgAbGroup>& parts) {
  std::size_t n = 0;
  IntMatrix rel(0, 0);
  for (const auto& p : parts) {
    rel = block_diagonal(rel, p.relations());
    n += p.generators();
  }
  return FgAbGroup(n, rel);
}

Pullback pullback(const GroupHom& f, const GroupHom& g) {
  if (!same_presentation(f.target(), g.target())) throw std::invalid_argument("pullback: maps have different targets");
  DirectSum ds = direct_sum(f.source(), g.source());
  GroupHom diff(ds.group, f.target(), hconcat(f.matrix(), -g.matrix()));
  Subgroup k = kernel_subgroup(diff);
  const std::size_t na = f.source().generators(), nb = g.source().generators();
  const FgAbGroup& p = k.presentation();
  return {p, GroupHom(p, f.source(), k.gens().block(0, 0, na, k.count())),
          GroupHom(p, g.source(), k.gens().block(na, 0, nb, k.count())), k};
}

GroupHom Pullback::factor(const GroupHom& a, const GroupHom& b) const {
  if (!same_presentation(a.source(), b.source())) throw std::invalid_argument("pullback factor: cone legs differ in source");
  IntMatrix joint = vconcat(a.matrix(), b.matrix());
  IntMatrix m(group.generators(), a.source().generators());
  for (std::size_t j = 0; j < joint.cols(); ++j) {
    auto c = sub.coordinates(joint.column(j));
    if (!c) throw std::invalid_argument("pullback factor: cone does not commute on generator " + std::to_string(j));
    m.set_column(j, *c);
  }
  return GroupHom(a.source(), group, m);
}

Pushout pushout(const GroupHom& f, const GroupHom& g) {
  if (!same_presentation(f.source(), g.source())) throw std::invalid_argument("pushout: maps have different sources");
  DirectSum ds = direct_sum(f.target(), g.target());
  IntMatrix glue = vconcat(f.matrix(), -g.matrix());
  FgAbGroup q(ds.group.generators(), hconcat(ds.group.relations(), glue));
  return {q, GroupHom(f.target(), q, ds.in1.matrix()), GroupHom(g.target(), q, ds.in2.matrix())};
}

}  // namespace prolim
