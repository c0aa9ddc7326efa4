#include "prolim/scenarios.hpp"

#include <sstream>
#include <stdexcept>

namespace prolim {

namespace {

// maps[i] : groups[i+1] -> groups[i], rewritten on simplified presentations
void simplify_chain(std::vector<FgAbGroup>& groups, std::vector<GroupHom>& maps) {
  std::vector<Simplified> s;
  for (const auto& g : groups) s.push_back(simplify(g));
  for (std::size_t i = 0; i < maps.size(); ++i) maps[i] = compose(s[i].to, compose(maps[i], s[i + 1].from));
  for (std::size_t i = 0; i < groups.size(); ++i) groups[i] = s[i].group;
}

}  // namespace

void Report::check(const std::string& name, bool ok, const std::string& detail) {
  certificates.push_back({name, ok ? "pass" : "fail", detail});
}

void Report::undetermined(const std::string& name, const std::string& detail) {
  certificates.push_back({name, "undetermined", detail});
}

bool Report::passed() const {
  for (const auto& c : certificates)
    if (c.status == "fail") return false;
  return true;
}

io::json Report::to_json() const {
  io::json certs = io::json::array();
  for (const auto& c : certificates) certs.push_back({{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
  return {{"scenario", scenario},
          {"parameters", parameters},
          {"results", results},
          {"certificates", certs},
          {"narrative", narrative},
          {"passed", passed()}};
}

std::string Report::text() const {
  std::ostringstream out;
  out << scenario << " " << parameters.dump() << "\n";
  for (const auto& line : narrative) out << "  " << line << "\n";
  for (const auto& c : certificates) out << "  [" << c.status << "] " << c.name << ": " << c.detail << "\n";
  out << (passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

TowerOfComplexes tower_of_complexes_from_json(const io::json& j) {
  TowerOfComplexes t;
  for (const auto& s : j.at("stages")) t.stages.push_back(io::complex_from_json(s));
  if (t.stages.empty()) throw std::invalid_argument("tower of complexes: no stages");
  const io::json& maps = j.contains("maps") ? j.at("maps") : io::json::array();
  if (maps.size() + 1 != t.stages.size()) throw std::invalid_argument("tower of complexes: need one map per consecutive pair of stages");
  for (std::size_t i = 0; i < maps.size(); ++i) {
    std::map<Vertex, Vertex> vm;
    for (const auto& p : maps[i].at("vertex_map")) vm[p.at(0).get<Vertex>()] = p.at(1).get<Vertex>();
    t.maps.emplace_back(t.stages[i + 1], t.stages[i], vm);
  }
  return t;
}

io::json to_json(const TowerOfComplexes& t) {
  io::json st = io::json::array(), mp = io::json::array();
  for (const auto& s : t.stages) st.push_back(io::to_json(s));
  for (const auto& f : t.maps) {
    io::json vm = io::json::array();
    for (const auto& [v, w] : f.vertex_map()) vm.push_back({v, w});
    mp.push_back({{"vertex_map", vm}});
  }
  return {{"stages", st}, {"maps", mp}};
}

SimplicialComplex polygon(std::size_t n) {
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  std::vector<Simplex> fs;
  for (std::size_t i = 0; i < n; ++i) fs.push_back(make_simplex({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)}));
  return SimplicialComplex(fs);
}

SimplicialMap wrap_map(std::size_t n, std::size_t m) {
  if (m == 0 || n % m != 0) throw std::invalid_argument("wrap map needs m | n");
  std::map<Vertex, Vertex> vm;
  for (std::size_t i = 0; i < n; ++i) vm[static_cast<Vertex>(i)] = static_cast<Vertex>(i % m);
  return SimplicialMap(polygon(n), polygon(m), vm);
}

HomologyTower homology_tower(const TowerOfComplexes& t, int n) {
  HomologyTower h;
  if (t.maps.empty()) {
    h.groups.push_back(homology(t.stages.at(0), n));
    h.tower = Tower::constant(h.groups[0]);
    return h;
  }
  for (const auto& f : t.maps) h.maps.push_back(induced_map(f, n));
  for (const auto& f : h.maps) h.groups.push_back(f.target());
  h.groups.push_back(h.maps.back().source());
  simplify_chain(h.groups, h.maps);
  const FgAbGroup& top = h.groups.back();
  const FgAbGroup& below = h.groups[h.groups.size() - 2];
  if (!same_presentation(top, below))
    throw std::invalid_argument("homology tower: the last two stages differ, so the last map cannot repeat");
  std::vector<FgAbGroup> prefix(h.groups.begin(), h.groups.end() - 1);
  h.tower = Tower::periodic(prefix, h.maps, GroupHom(top, top, h.maps.back().matrix()));
  return h;
}

namespace {

Integer ipow(long p, std::size_t k) {
  Integer r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= p;
  return r;
}

std::size_t to_size(const Integer& x) { return static_cast<std::size_t>(x.get_ui()); }

bool is_z(const FgAbGroup& g) { return g.invariants() == Invariants{1, {}}; }

// 1x1 map between copies of Z whose entry is +p or -p
bool is_times_p(const GroupHom& h, long p) {
  return is_z(h.source()) && is_z(h.target()) && h.matrix().rows() == 1 && h.matrix().cols() == 1 &&
         abs(h.matrix()(0, 0)) == p;
}

io::json entries(const std::vector<GroupHom>& maps) {
  io::json out = io::json::array();
  for (const auto& h : maps) out.push_back(io::to_json(h.matrix()));
  return out;
}

io::json group_strings(const std::vector<FgAbGroup>& gs) {
  io::json out = io::json::array();
  for (const auto& g : gs) out.push_back(g.to_string());
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

SolenoidScenario scenario_solenoid(long p, std::size_t depth) {
  require(p >= 2, "solenoid: p >= 2");
  require(depth >= 1, "solenoid: depth >= 1");
  SolenoidScenario s;
  s.p = p;
  s.depth = depth;
  for (std::size_t i = 0; i <= depth; ++i) s.complexes.stages.push_back(polygon(3 * to_size(ipow(p, i))));
  for (std::size_t i = 0; i < depth; ++i)
    s.complexes.maps.push_back(wrap_map(3 * to_size(ipow(p, i + 1)), 3 * to_size(ipow(p, i))));
  s.h1 = homology_tower(s.complexes, 1);
  s.lim = lim(s.h1.tower);
  s.lim1 = lim1_class(s.h1.tower);
  HomologyTower h0 = homology_tower(s.complexes, 0);
  LimResult lim0 = lim(h0.tower);

  Report& r = s.report;
  r.scenario = "solenoid";
  r.parameters = {{"p", p}, {"depth", depth}};
  io::json sizes = io::json::array();
  for (const auto& st : s.complexes.stages) sizes.push_back(st.count(0));
  r.results = {{"stage_vertices", sizes},
               {"h1_groups", group_strings(s.h1.groups)},
               {"h1_maps", entries(s.h1.maps)},
               {"lim_h1", io::to_json(s.lim)},
               {"lim1_h1", io::to_json(s.lim1)},
               {"lim_h0", io::to_json(lim0)}};

  bool all_z = true, all_p = true;
  for (const auto& g : s.h1.groups) all_z = all_z && is_z(g);
  for (const auto& h : s.h1.maps) all_p = all_p && is_times_p(h, p);
  r.check("h1_stages_are_Z", all_z, "H_1 of every polygon stage computed from its boundary matrices");
  r.check("h1_maps_are_times_p", all_p, "induced maps of the wrap maps are multiplication by +-" + std::to_string(p));
  r.check("lim_h1_zero", s.lim.is_group && s.lim.group.is_trivial(), "lim H_1 = 0: " + s.lim.certificate);
  r.check("lim1_h1_nonvanishing", !s.lim1.vanishes,
          "lim^1 H_1 certified nonzero (" + s.lim1.certificate.kind + "); " + s.lim1.annotation);
  r.check("lim_h0_is_Z", lim0.is_group && is_z(lim0.group), "H_0 tower is constant Z");
  r.narrative = {"Stage i is the " + std::to_string(3) + "*" + std::to_string(p) + "^i-gon; bonding maps wrap " +
                     std::to_string(p) + " times.",
                 "H_1 tower is (Z, x" + std::to_string(p) + "): its lim is 0, so H_1 of the solenoid is 0.",
                 "Its lim^1 is nonzero (" + s.lim1.annotation + "), which is the reduced H_0 of the solenoid."};
  return s;
}

TelescopeScenario scenario_telescope(long p, std::size_t m) {
  require(p >= 2, "telescope: p >= 2");
  require(m >= 1, "telescope: m >= 1");
  TelescopeScenario s;
  s.p = p;
  s.m = m;
  for (std::size_t k = 0; k < m; ++k)
    s.bonding.push_back(wrap_map(3 * to_size(ipow(p, m - k)), 3 * to_size(ipow(p, m - k - 1))));
  std::vector<Telescope> ts;
  for (std::size_t k = 0; k <= m; ++k) {
    ts.push_back(mapping_telescope(s.bonding, k));
    s.telescopes.push_back(ts.back().complex);
  }
  bool nested = true, retracts = true;
  for (std::size_t k = 0; k < m; ++k) {
    nested = nested && s.telescopes[k].is_subcomplex_of(s.telescopes[k + 1]);
    s.restrictions.push_back(induced_cohomology_map(SimplicialMap::inclusion(s.telescopes[k], s.telescopes[k + 1]), 1));
  }
  for (const auto& r : s.restrictions) s.h1.push_back(r.target());
  s.h1.push_back(s.restrictions.back().source());
  simplify_chain(s.h1, s.restrictions);
  // T_[0,k] retracts onto its last stage
  for (std::size_t k = 0; k <= m; ++k)
    retracts = retracts && induced_cohomology_map(ts[k].stage_inclusions[k], 1).is_isomorphism();

  std::vector<FgAbGroup> prefix(s.h1.begin(), s.h1.end() - 1);
  const FgAbGroup& top = s.h1.back();
  s.tower = Tower::periodic(prefix, s.restrictions, GroupHom(top, top, s.restrictions.back().matrix()));
  s.lim = lim(s.tower);
  s.lim1 = lim1_class(s.tower);

  Report& r = s.report;
  r.scenario = "telescope";
  r.parameters = {{"p", p}, {"m", m}};
  io::json sizes = io::json::array();
  for (const auto& t : s.telescopes) sizes.push_back(t.total());
  r.results = {{"telescope_simplices", sizes},
               {"h1_groups", group_strings(s.h1)},
               {"h1_maps", entries(s.restrictions)},
               {"lim_h1", io::to_json(s.lim)},
               {"lim1_h1", io::to_json(s.lim1)}};
  bool all_z = true, all_p = true;
  for (const auto& g : s.h1) all_z = all_z && is_z(g);
  for (const auto& h : s.restrictions) all_p = all_p && is_times_p(h, p);
  r.check("telescopes_nested", nested, "T_[0,k] is a subcomplex of T_[0,k+1]");
  r.check("telescopes_retract", retracts, "H^1(T_[0,k]) -> H^1(P_k) is an isomorphism");
  r.check("h1_groups_are_Z", all_z, "H^1(T_[0,k]) computed from coboundary matrices");
  r.check("h1_maps_are_times_p", all_p, "restrictions H^1(T_[0,k+1]) -> H^1(T_[0,k]) are +-" + std::to_string(p));
  r.check("lim_h1_zero", s.lim.is_group && s.lim.group.is_trivial(), "lim H^1 = 0, so H^1 of the infinite telescope is 0");
  r.check("lim1_h1_nonvanishing", !s.lim1.vanishes,
          "lim^1 H^1 nonzero (" + s.lim1.annotation + "), which is H^2 of the infinite telescope");
  r.narrative = {"Telescopes of degree-" + std::to_string(p) + " circle maps, k = 0.." + std::to_string(m) + ".",
                 "The H^1 tower is (Z, x" + std::to_string(p) + "); lim = 0 and lim^1 != 0."};
  return s;
}

NestedFreeScenario scenario_nested_free(std::size_t width) {
  require(width >= 2, "nested_free: width >= 2");
  NestedFreeScenario s;
  s.width = width;
  s.tower = Tower::free_nested("i+1", width);
  s.lim = lim(s.tower);
  s.lim1 = lim1_class(s.tower);
  s.lim1_fg = lim1_fg(s.tower);
  Report& r = s.report;
  r.scenario = "nested_free";
  r.parameters = {{"width", width}};
  r.results = {{"tower", io::to_json(s.tower)},
               {"lim", io::to_json(s.lim)},
               {"lim1", io::to_json(s.lim1)},
               {"lim1_fg", io::to_json(s.lim1_fg)},
               {"h1_slot", "H_1(X) = lim = 0"},
               {"h0_slot", "reduced H_0(X) = lim^1 = " + s.lim1.annotation}};
  r.check("lim_zero", s.lim.is_group && s.lim.group.is_trivial(), "no basis index survives every level: " + s.lim.certificate);
  r.check("lim1_nonvanishing", !s.lim1.vanishes, "strict image descent; " + s.lim1.annotation);
  r.check("lim1_fg_vanishes", s.lim1_fg.vanishes, "f.g. subtowers are Mittag-Leffler after purification");
  r.check("quotient_slot_nonzero", !s.lim1.vanishes && s.lim1_fg.vanishes, "lim^1 / lim^1_fg is nonzero");
  r.narrative = {"Tower ... -> Z{2,3,..} -> Z{1,2,..} of basis inclusions, truncated at width " + std::to_string(width) + ".",
                 "lim = 0 and lim^1 != 0 while lim^1_fg = 0: the quotient slot is nonzero."};
  return s;
}

namespace {

std::string point_id(long n, long j) { return "x" + std::to_string(n) + "y" + std::to_string(j); }

// [a]-[b] in H_0 of a nerve: Z^2 -> H_0 sending e_1, e_2 to the a and b balls
GroupHom marked_classes(const SimplicialComplex& nerve, std::size_t a, std::size_t b) {
  SimplicialComplex two({0, 1}, std::vector<Simplex>{{0}, {1}});
  SimplicialMap f(two, nerve, {{0, static_cast<Vertex>(a)}, {1, static_cast<Vertex>(b)}});
  return induced_map(f, 0);
}

std::size_t element(const Cover& c, const std::string& label) {
  auto e = c.element_index(label);
  if (!e) throw std::logic_error("missing element " + label);
  return *e;
}

}  // namespace

AlexandroffScenario scenario_alexandroff(std::size_t scales, std::size_t columns) {
  require(scales >= 2 && columns >= 2, "alexandroff: scales, columns >= 2");
  AlexandroffScenario s;
  s.scales = scales;
  s.columns = columns;
  const long N = static_cast<long>((scales + 1) * (scales + 2));
  const long F = static_cast<long>(std::max(columns, scales + 1));

  s.carrier.push_back({"a", std::make_pair(Rational(0), Rational(1))});
  s.carrier.push_back({"b", std::make_pair(Rational(0), Rational(-1))});
  for (long n = 1; n <= F; ++n)
    for (long j = -N; j <= N; ++j) s.carrier.push_back({point_id(n, j), std::make_pair(Rational(1, n), Rational(j, N))});
  for (long n = F + 1; n <= N; ++n) {
    s.carrier.push_back({point_id(n, N), std::make_pair(Rational(1, n), Rational(1))});
    s.carrier.push_back({point_id(n, -N), std::make_pair(Rational(1, n), Rational(-1))});
  }

  for (std::size_t k = 1; k <= scales; ++k) {
    Rational r(1, static_cast<long>((k + 1) * (k + 2)));
    s.radii.push_back(r);
    std::vector<Ball> bs;
    for (const auto& p : s.carrier) bs.push_back({"B" + p.id, p.xy->first, p.xy->second, r});
    s.covers.push_back(Cover::balls(s.carrier, bs));
  }
  for (std::size_t j = 1; j <= columns; ++j) {
    Rational h(1, static_cast<long>(j));
    std::vector<std::string> ids;
    for (const auto& p : s.carrier)
      if (!(abs(p.xy->first) < h && abs(p.xy->second) < h)) ids.push_back(p.id);
    s.compacta.push_back(ids);
  }

  Report& rep = s.report;
  rep.scenario = "alexandroff";
  rep.parameters = {{"scales", scales}, {"columns", columns}};

  // full covers
  for (std::size_t k = 0; k < scales; ++k) {
    SimplicialComplex nv = nerve(s.covers[k], 1);
    s.nerve_sizes.push_back(nv.total());
    GroupHom iota = marked_classes(nv, element(s.covers[k], "Ba"), element(s.covers[k], "Bb"));
    s.dies.push_back(iota.target().is_zero(iota.apply({1, -1})));
  }

  // restricted covers, their nerves and the Z^2 / ker presentations
  std::vector<std::vector<Cover>> rc(columns);
  std::vector<std::vector<SimplicialComplex>> nv(columns);
  std::vector<std::vector<GroupHom>> iota(columns);
  std::vector<std::vector<FgAbGroup>> groups(columns);
  s.separated.assign(columns, std::vector<bool>(scales));
  for (std::size_t j = 0; j < columns; ++j)
    for (std::size_t k = 0; k < scales; ++k) {
      rc[j].push_back(restrict(s.covers[k], s.compacta[j]));
      nv[j].push_back(nerve(rc[j][k], 1));
      iota[j].push_back(marked_classes(nv[j][k], element(rc[j][k], "Ba"), element(rc[j][k], "Bb")));
      s.separated[j][k] = !iota[j][k].target().is_zero(iota[j][k].apply({1, -1}));
      groups[j].push_back(FgAbGroup(2, lattice_basis(kernel_subgroup(iota[j][k]).gens())));
    }

  // grid maps are the identity on the marked classes; check that against the induced maps
  bool natural = true;
  const IntMatrix id2 = IntMatrix::identity(2);
  std::vector<std::vector<GroupHom>> alpha(columns - 1), beta(columns);
  for (std::size_t j = 0; j + 1 < columns; ++j)
    for (std::size_t k = 0; k < scales; ++k) {
      GroupHom h = induced_map(restriction_inclusion(rc[j][k], rc[j + 1][k], 1), 0);
      natural = natural && compose(h, iota[j][k]).equals(iota[j + 1][k]);
      alpha[j].push_back(GroupHom(groups[j][k], groups[j + 1][k], id2));
    }
  for (std::size_t j = 0; j < columns; ++j)
    for (std::size_t k = 0; k + 1 < scales; ++k) {
      GroupHom h = induced_map(refinement(rc[j][k + 1], rc[j][k]).nerve_map(1), 0);
      natural = natural && compose(h, iota[j][k + 1]).equals(iota[j][k]);
      beta[j].push_back(GroupHom(groups[j][k + 1], groups[j][k], id2));
    }
  s.bisystem = BiSystem::grid(groups, alpha, beta, BiSystem::Tail::Diagonal);
  s.tau = tau(s.bisystem, columns, scales);

  io::json sep = io::json::array();
  for (const auto& row : s.separated) sep.push_back(row);
  io::json radii = io::json::array();
  for (const auto& r : s.radii) radii.push_back(r.get_str());
  rep.results = {{"carrier_points", s.carrier.size()},
                 {"radii", radii},
                 {"nerve_simplices", s.nerve_sizes},
                 {"difference_dies_in_cover", s.dies},
                 {"difference_survives_in_compactum", sep},
                 {"bisystem", io::to_json(s.bisystem)},
                 {"tau", io::to_json(s.tau)}};

  bool all_die = true;
  for (bool d : s.dies) all_die = all_die && d;
  bool finest_sep = true;
  for (std::size_t j = 1; j < columns; ++j) finest_sep = finest_sep && s.separated[j][scales - 1];
  rep.check("difference_dies_in_every_cover", all_die, "[a]-[b] = 0 in H_0 of the nerve of every scheduled cover");
  rep.check("difference_survives_in_compacta", finest_sep,
            "[a]-[b] != 0 in H_0 of the restricted nerve for K_j, j = 2.." + std::to_string(columns) + ", at the finest scale");
  rep.check("grid_maps_natural", natural, "restriction and refinement maps fix the classes of the a and b balls");
  const bool witness = s.tau.kernel_witness && *s.tau.kernel_witness == IntVector{1, -1};
  rep.check("tau_injective_certified_false", s.tau.injective == Verdict::CertifiedFalse,
            s.tau.injective_certificate + (witness ? "; kernel witness [a]-[b]" : ""));
  rep.check("kernel_witness_is_a_minus_b", witness, "kernel of tau is generated by class([a]) - class([b])");
  rep.narrative = {"Carrier: " + std::to_string(s.carrier.size()) + " rational points of {1/n} x [-1,1] with a = (0,1), b = (0,-1).",
                   "Covers: closed balls about every point, radius 1/((k+1)(k+2)) for k = 1.." + std::to_string(scales) + ".",
                   "Compacta: the sample outside the open box (-1/j,1/j)^2 for j = 1.." + std::to_string(columns) + ".",
                   "The kernel certificate holds for this cover schedule; other cofinal schedules are not examined."};
  return s;
}

PPowerScenario scenario_p_power_bisystem(long p, std::size_t window) {
  require(p >= 2, "p_power_bisystem: p >= 2");
  PPowerScenario s;
  s.p = p;
  s.window = window;
  GroupHom mp = GroupHom::scalar(FgAbGroup::free(1), p);
  s.system = BiSystem::periodic(mp, mp);
  s.tau = tau(s.system, window, window);
  s.thread_verified = verify_thread(s.system, s.tau);
  Report& r = s.report;
  r.scenario = "p_power_bisystem";
  r.parameters = {{"p", p}, {"window", window}};
  r.results = {{"bisystem", io::to_json(s.system)}, {"tau", io::to_json(s.tau)}};
  r.check("colim_lim_zero", s.tau.colim_lim.certified_zero, s.tau.colim_lim.certificate);
  r.check("lim_colim_nonzero", s.tau.lim_colim.certified_nonzero, s.tau.lim_colim.certificate);
  r.check("tau_surjective_certified_false", s.tau.surjective == Verdict::CertifiedFalse, s.tau.surjective_certificate);
  r.check("thread_verified", s.thread_verified, "the thread relations hold in the window data");
  r.narrative = {"Every term Z, alpha = beta = x" + std::to_string(p) + ".",
                 "Columns (Z, x" + std::to_string(p) + ") have lim 0; rows have colim Z[1/" + std::to_string(p) +
                     "] on which beta is invertible."};
  return s;
}

TowerOfComplexes constant_circle_tower(std::size_t depth) {
  TowerOfComplexes t;
  SimplicialComplex c = polygon(3);
  for (std::size_t i = 0; i <= depth; ++i) t.stages.push_back(c);
  for (std::size_t i = 0; i < depth; ++i) t.maps.push_back(SimplicialMap::identity(c));
  return t;
}

Report verify_milnor(const TowerOfComplexes& t, int n, const std::string& name) {
  require(n >= 0, "verify: degree >= 0");
  Report r;
  r.scenario = "verify_milnor";
  r.parameters = {{"tower", name}, {"n", n}, {"stages", t.stages.size()}};
  HomologyTower hn = homology_tower(t, n), hn1 = homology_tower(t, n + 1);
  LimResult l = lim(hn.tower);
  Lim1Class l1 = lim1_class(hn1.tower);
  const std::string hs = "H_" + std::to_string(n), hs1 = "H_" + std::to_string(n + 1);

  io::json slots = io::json::object();
  slots["lim1_" + hs1] = io::to_json(l1);
  slots["lim_" + hs] = io::to_json(l);
  if (l1.vanishes && l.is_group) {
    slots[hs + "_of_lim"] = {{"form", "Group"}, {"group", io::to_json(l.group)}};
  } else if (!l1.vanishes) {
    slots[hs + "_of_lim"] = {{"form", "Symbolic"}, {"description", "extension of lim " + hs + " by " + (l1.annotation.empty() ? "a nonzero lim^1" : l1.annotation)}};
  } else {
    slots[hs + "_of_lim"] = {{"form", "Undetermined"}};
  }
  r.results = {{hs + "_groups", group_strings(hn.groups)},
               {hs1 + "_groups", group_strings(hn1.groups)},
               {hs + "_maps", entries(hn.maps)},
               {hs1 + "_maps", entries(hn1.maps)},
               {"slots", slots}};

  if (l1.vanishes && l.is_group) {
    // 0 -> 0 -> H_n(lim) -> lim H_n -> 0 with H_n(lim) = lim H_n
    const FgAbGroup zero;
    std::vector<GroupHom> chain{GroupHom::zero(zero, zero), GroupHom::zero(zero, l.group), GroupHom::identity(l.group),
                                GroupHom::zero(l.group, zero)};
    auto junctions = check_exact(chain);
    r.results["exact"] = all_exact(junctions);
    r.results["junctions"] = io::to_json(junctions);
    r.check("sequence_exact", all_exact(junctions), "all slots f.g.; exactness checked junction by junction");
  } else {
    r.results["exact"] = nullptr;
    r.undetermined("sequence_exact", "a slot is not finitely generated; slot values reported with certificates");
  }
  if (l.is_group) {
    const std::size_t depth = std::max<std::size_t>(t.stages.size(), 3);
    RoosReport roos = roos_shift_check(hn.tower, depth);
    r.check("shift_kernel_is_truncated_lim", roos.pass(),
            "ker of (g_i) -> (g_i - f g_(i+1)) equals the iterated pullback at depth " + std::to_string(depth));
  }
  r.check("lim1_decided", true, hs1 + " tower lim^1 " + (l1.vanishes ? "vanishes" : "is nonzero") + " (" + l1.certificate.kind + ")");
  r.narrative = {"0 -> lim^1 " + hs1 + " -> " + hs + "(lim) -> lim " + hs + " -> 0 for the tower '" + name + "'.",
                 std::string("lim ") + hs + " = " + (l.is_group ? l.group.to_string() : "not f.g.") + ", lim^1 " + hs1 +
                     (l1.vanishes ? " = 0" : " != 0 " + l1.annotation) + "."};
  return r;
}

Report run_scenario(const std::string& name, const io::json& params) {
  auto get = [&](const char* key, long dflt) { return params.contains(key) ? params.at(key).get<long>() : dflt; };
  auto size = [&](const char* key, long dflt) {
    long v = get(key, dflt);
    if (v < 0) throw std::invalid_argument(std::string(key) + " must be nonnegative");
    return static_cast<std::size_t>(v);
  };
  if (name == "solenoid") return scenario_solenoid(get("p", 2), size("depth", 4)).report;
  if (name == "telescope") return scenario_telescope(get("p", 2), size("m", 4)).report;
  if (name == "nested_free") return scenario_nested_free(size("width", 5)).report;
  if (name == "alexandroff") return scenario_alexandroff(size("scales", 4), size("columns", 4)).report;
  if (name == "p_power_bisystem") return scenario_p_power_bisystem(get("p", 2), size("window", 6)).report;
  throw std::invalid_argument("unknown scenario '" + name +
                              "' (solenoid, telescope, nested_free, alexandroff, p_power_bisystem)");
}

}  // namespace prolim
