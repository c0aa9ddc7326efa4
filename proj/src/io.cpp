#include "prolim/io.hpp"

#include <stdexcept>

namespace prolim::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("json: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    bad(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

}  // namespace

json to_json(const Integer& x) { return x.get_str(); }

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) bad("'" + j.get<std::string>() + "' is not a decimal integer");
    return x;
  }
  bad("expected an integer or a decimal string, got " + j.dump());
}

json to_json(const Rational& x) { return json::array({x.get_num().get_str(), x.get_den().get_str()}); }

Rational rational_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) bad("a rational is a [numerator, denominator] pair");
    Integer n = integer_from_json(j[0]), d = integer_from_json(j[1]);
    if (d == 0) bad("zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
  }
  if (j.is_string()) {
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) != 0) bad("'" + j.get<std::string>() + "' is not a rational");
    q.canonicalize();
    return q;
  }
  return Rational(integer_from_json(j));
}

json to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

IntVector vector_from_json(const json& j) {
  if (!j.is_array()) bad("expected an array of integers");
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(to_json(m(i, k)));
    rows.push_back(std::move(r));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

IntMatrix matrix_from_json(const json& j) {
  const std::size_t r = size_field(j, "rows"), c = size_field(j, "cols");
  const json& e = field(j, "entries");
  if (!e.is_array() || e.size() != r) bad("matrix has " + std::to_string(r) + " rows but entries do not match");
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!e[i].is_array() || e[i].size() != c) bad("matrix row " + std::to_string(i) + " does not have " + std::to_string(c) + " entries");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = integer_from_json(e[i][k]);
  }
  return m;
}

json to_json(const FgAbGroup& g) {
  return {{"generators", g.generators()}, {"relations", to_json(g.relations())}, {"invariants", g.to_string()}};
}

FgAbGroup group_from_json(const json& j) {
  const std::size_t n = size_field(j, "generators");
  if (!j.contains("relations")) return FgAbGroup(n);
  IntMatrix rel = matrix_from_json(j.at("relations"));
  if (rel.rows() != n) bad("relations must have one row per generator");
  return FgAbGroup(n, rel);
}

json to_json(const GroupHom& h) {
  return {{"source", to_json(h.source())}, {"target", to_json(h.target())}, {"matrix", to_json(h.matrix())}};
}

GroupHom hom_from_json(const json& j) {
  return GroupHom(group_from_json(field(j, "source")), group_from_json(field(j, "target")), matrix_from_json(field(j, "matrix")));
}

GroupHom hom_from_json(const json& j, const FgAbGroup& source, const FgAbGroup& target) {
  if (j.is_object() && j.contains("matrix")) return GroupHom(source, target, matrix_from_json(j.at("matrix")));
  return GroupHom(source, target, matrix_from_json(j));
}

json to_json(const SnfDecomposition& d) {
  return {{"diagonal", to_json(d.diagonal())}, {"rank", d.rank}, {"U", to_json(d.U)}, {"D", to_json(d.D)}, {"V", to_json(d.V)}};
}

json to_json(const Tower& t) {
  switch (t.kind()) {
    case TowerKind::FreeNested:
      return {{"kind", "free_nested"}, {"offsets", t.offsets_text()}, {"width", t.width()}};
    case TowerKind::ExplicitFinite:
    case TowerKind::EventuallyPeriodic: {
      json prefix = json::array();
      for (std::size_t i = 0; i < t.prefix_length(); ++i)
        prefix.push_back({{"group", to_json(t.prefix()[i])}, {"map", to_json(t.prefix_maps()[i].matrix())}});
      return {{"kind", "periodic"},
              {"prefix", prefix},
              {"period_group", to_json(t.period_group())},
              {"period_map", to_json(t.period_map().matrix())}};
    }
  }
  return {};
}

Tower tower_from_json(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "free_nested") {
    const json& o = field(j, "offsets");
    return Tower::free_nested(o.get<std::string>(), size_field(j, "width"));
  }
  if (kind == "explicit") {
    std::vector<FgAbGroup> gs;
    for (const auto& g : field(j, "groups")) gs.push_back(group_from_json(g));
    std::vector<GroupHom> ms;
    const json& maps = field(j, "maps");
    if (gs.empty() || maps.size() + 1 != gs.size()) bad("explicit tower needs one map fewer than groups");
    for (std::size_t i = 0; i < maps.size(); ++i) ms.push_back(hom_from_json(maps[i], gs[i + 1], gs[i]));
    return Tower::explicit_finite(gs, ms);
  }
  if (kind != "periodic") bad("unknown tower kind '" + kind + "'");
  FgAbGroup g = group_from_json(field(j, "period_group"));
  GroupHom phi = hom_from_json(field(j, "period_map"), g, g);
  std::vector<FgAbGroup> pre;
  std::vector<json> pm;
  if (j.contains("prefix"))
    for (const auto& p : j.at("prefix")) {
      pre.push_back(group_from_json(field(p, "group")));
      pm.push_back(field(p, "map"));
    }
  std::vector<GroupHom> maps;
  for (std::size_t i = 0; i < pre.size(); ++i) maps.push_back(hom_from_json(pm[i], i + 1 < pre.size() ? pre[i + 1] : g, pre[i]));
  return Tower::periodic(pre, maps, phi);
}

json to_json(const MlCertificate& c) {
  json w = json::array();
  for (const auto& v : c.descent_witnesses) w.push_back(to_json(v));
  json out = {{"mittag_leffler", c.mittag_leffler},
              {"kind", c.kind},
              {"index", c.index},
              {"determinant", to_json(c.determinant)},
              {"bound", c.bound},
              {"descent_witnesses", w}};
  if (c.stable_image) out["stable_image"] = to_json(c.stable_image->gens());
  return out;
}

json to_json(const Lim1Class& c) {
  return {{"class", c.vanishes ? "Vanishes" : "NonVanishing"},
          {"annotation", c.annotation},
          {"method", c.method},
          {"certificate", to_json(c.certificate)}};
}

json to_json(const LimResult& r) {
  if (!r.is_group) return {{"form", "ProNormalForm"}, {"refusal", r.refusal}, {"certificate", r.certificate}};
  json th = json::array();
  for (const auto& t : r.threads) {
    json levels = json::array();
    for (const auto& v : t) levels.push_back(to_json(v));
    th.push_back(levels);
  }
  return {{"form", "Group"}, {"group", to_json(r.group)}, {"threads", th}, {"certificate", r.certificate}};
}

json tower_report(const Tower& t, std::size_t depth) {
  Lim1Class l1 = lim1_class(t);
  return {{"tower", to_json(t)},
          {"lim", to_json(lim(t, depth))},
          {"lim1", to_json(l1)},
          {"lim1_fg", to_json(lim1_fg(t))},
          {"ml_certificate", to_json(l1.certificate)}};
}

json to_json(const SimplicialComplex& k) {
  json fs = json::array();
  for (const auto& f : k.facets()) fs.push_back(f);
  return {{"vertices", k.vertices()}, {"facets", fs}};
}

SimplicialComplex complex_from_json(const json& j) {
  std::vector<Simplex> fs;
  for (const auto& f : field(j, "facets")) fs.push_back(f.get<Simplex>());
  if (j.contains("vertices")) return SimplicialComplex(j.at("vertices").get<std::vector<Vertex>>(), fs);
  return SimplicialComplex(fs);
}

json to_json(const SimplicialMap& f) {
  json vm = json::array();
  for (Vertex v : f.source().vertices()) vm.push_back({v, f(v)});
  return {{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"vertex_map", vm}};
}

SimplicialMap map_from_json(const json& j) {
  std::map<Vertex, Vertex> vm;
  for (const auto& p : field(j, "vertex_map")) {
    if (!p.is_array() || p.size() != 2) bad("vertex_map entries are [vertex, image] pairs");
    vm[p[0].get<Vertex>()] = p[1].get<Vertex>();
  }
  return SimplicialMap(complex_from_json(field(j, "source")), complex_from_json(field(j, "target")), vm);
}

json to_json(const Cover& c) {
  json pts = json::array();
  for (const auto& p : c.carrier()) {
    json q = {{"id", p.id}};
    if (p.xy) q["xy"] = json::array({to_json(p.xy->first), to_json(p.xy->second)});
    pts.push_back(q);
  }
  json es = json::array();
  for (std::size_t e = 0; e < c.size(); ++e) {
    json m = json::array();
    for (std::size_t i : c.members(e)) m.push_back(c.carrier()[i].id);
    es.push_back({{"label", c.label(e)}, {"members", m}});
  }
  return {{"carrier", pts}, {"elements", es}};
}

Cover cover_from_json(const json& j) {
  std::vector<CarrierPoint> pts;
  for (const auto& p : field(j, "carrier")) {
    CarrierPoint q{field(p, "id").get<std::string>(), std::nullopt};
    if (p.contains("xy")) {
      const json& xy = p.at("xy");
      if (!xy.is_array() || xy.size() != 2) bad("point '" + q.id + "': xy is a pair of rationals");
      q.xy = std::make_pair(rational_from_json(xy[0]), rational_from_json(xy[1]));
    }
    pts.push_back(std::move(q));
  }
  if (j.contains("balls")) {
    std::vector<Ball> bs;
    for (const auto& b : j.at("balls")) {
      const json& c = field(b, "center");
      if (!c.is_array() || c.size() != 2) bad("ball center is a pair of rationals");
      bs.push_back({field(b, "label").get<std::string>(), rational_from_json(c[0]), rational_from_json(c[1]),
                    rational_from_json(field(b, "radius"))});
    }
    return Cover::balls(std::move(pts), bs);
  }
  std::vector<std::pair<std::string, std::vector<std::string>>> es;
  for (const auto& e : field(j, "elements"))
    es.emplace_back(field(e, "label").get<std::string>(), field(e, "members").get<std::vector<std::string>>());
  return Cover(std::move(pts), es);
}

json to_json(const FinitePosetDiagram& d) {
  const FinitePoset& p = d.poset();
  json rel = json::array(), groups = json::object(), maps = json::array();
  for (auto [x, y] : p.covering_pairs()) {
    rel.push_back({p.labels()[x], p.labels()[y]});
    maps.push_back({{"lower", p.labels()[x]}, {"upper", p.labels()[y]}, {"matrix", to_json(d.map(x, y).matrix())}});
  }
  for (std::size_t x = 0; x < p.size(); ++x) groups[p.labels()[x]] = to_json(d.group(x));
  return {{"elements", p.labels()}, {"relations", rel}, {"groups", groups}, {"maps", maps}};
}

FinitePosetDiagram diagram_from_json(const json& j) {
  auto labels = field(j, "elements").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& r : field(j, "relations")) {
    if (!r.is_array() || r.size() != 2) bad("relations are [lower, upper] pairs");
    pairs.emplace_back(r[0].get<std::string>(), r[1].get<std::string>());
  }
  FinitePoset p(labels, pairs);
  std::vector<FgAbGroup> gs;
  const json& gj = field(j, "groups");
  for (const auto& l : labels) {
    if (!gj.contains(l)) bad("no group for element '" + l + "'");
    gs.push_back(group_from_json(gj.at(l)));
  }
  std::map<std::pair<std::size_t, std::size_t>, GroupHom> maps;
  for (const auto& m : field(j, "maps")) {
    std::size_t x = p.index(field(m, "lower").get<std::string>()), y = p.index(field(m, "upper").get<std::string>());
    maps[{x, y}] = hom_from_json(field(m, "matrix"), gs[y], gs[x]);
  }
  return FinitePosetDiagram(p, gs, maps);
}

json to_json(const BiSystem& s) {
  if (s.kind() == BiSystem::Kind::BiPeriodic) return {{"kind", "periodic"}, {"u", to_json(s.u())}, {"v", to_json(s.v())}};
  const std::size_t na = s.window_alpha(), nb = s.window_beta();
  json gs = json::array(), al = json::array(), be = json::array();
  for (std::size_t a = 0; a < na; ++a) {
    json g = json::array(), x = json::array(), y = json::array();
    for (std::size_t b = 0; b < nb; ++b) {
      g.push_back(to_json(s.group(a, b)));
      if (a + 1 < na) x.push_back(to_json(s.alpha_map(a, b).matrix()));
      if (b + 1 < nb) y.push_back(to_json(s.beta_map(a, b).matrix()));
    }
    gs.push_back(g);
    if (a + 1 < na) al.push_back(x);
    be.push_back(y);
  }
  return {{"kind", "grid"},
          {"tail", s.tail() == BiSystem::Tail::Constant ? "constant" : "diagonal"},
          {"groups", gs},
          {"alpha", al},
          {"beta", be}};
}

BiSystem bisystem_from_json(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "periodic") {
    const json& u = field(j, "u");
    if (j.contains("group")) {
      FgAbGroup g = group_from_json(j.at("group"));
      return BiSystem::periodic(hom_from_json(u, g, g), hom_from_json(field(j, "v"), g, g));
    }
    return BiSystem::periodic(hom_from_json(u), hom_from_json(field(j, "v")));
  }
  if (kind != "grid") bad("unknown bisystem kind '" + kind + "'");
  std::string tail = j.value("tail", "constant");
  if (tail != "constant" && tail != "diagonal") bad("tail must be 'constant' or 'diagonal'");
  std::vector<std::vector<FgAbGroup>> gs;
  for (const auto& col : field(j, "groups")) {
    std::vector<FgAbGroup> c;
    for (const auto& g : col) c.push_back(group_from_json(g));
    gs.push_back(std::move(c));
  }
  const json& aj = field(j, "alpha");
  const json& bj = field(j, "beta");
  if (gs.empty() || aj.size() + 1 != gs.size() || bj.size() != gs.size()) bad("grid: alpha needs A-1 columns and beta A columns");
  std::vector<std::vector<GroupHom>> al(aj.size()), be(bj.size());
  for (std::size_t a = 0; a < aj.size(); ++a) {
    if (aj[a].size() != gs[a].size()) bad("grid: alpha column " + std::to_string(a) + " has the wrong length");
    for (std::size_t b = 0; b < aj[a].size(); ++b) al[a].push_back(hom_from_json(aj[a][b], gs[a][b], gs[a + 1][b]));
  }
  for (std::size_t a = 0; a < bj.size(); ++a) {
    if (bj[a].size() + 1 != gs[a].size()) bad("grid: beta column " + std::to_string(a) + " has the wrong length");
    for (std::size_t b = 0; b < bj[a].size(); ++b) be[a].push_back(hom_from_json(bj[a][b], gs[a][b + 1], gs[a][b]));
  }
  return BiSystem::grid(gs, al, be, tail == "constant" ? BiSystem::Tail::Constant : BiSystem::Tail::Diagonal);
}

json to_json(const SideValue& v) {
  json out = {{"form", to_string(v.form)},
              {"certified_zero", v.certified_zero},
              {"certified_nonzero", v.certified_nonzero},
              {"stabilized", v.stabilized},
              {"description", v.description},
              {"certificate", v.certificate}};
  if (v.form == SideValue::Form::Group) out["group"] = to_json(v.group);
  return out;
}

json to_json(const std::vector<JunctionReport>& r) {
  json out = json::array();
  for (const auto& j : r) {
    json x = {{"index", j.index}, {"composite_zero", j.composite_zero}, {"kernel_in_image", j.kernel_in_image}};
    if (j.witness) x["witness"] = to_json(*j.witness);
    out.push_back(x);
  }
  return out;
}

json to_json(const TauReport& r) {
  json out = {{"window", {r.window_alpha, r.window_beta}},
              {"colim_lim", to_json(r.colim_lim)},
              {"lim_colim", to_json(r.lim_colim)},
              {"tau_injective", {{"verdict", to_string(r.injective)}, {"certificate", r.injective_certificate}}},
              {"tau_surjective", {{"verdict", to_string(r.surjective)}, {"certificate", r.surjective_certificate}}},
              {"p1", {{"state", r.p1.state}, {"note", r.p1.note}}},
              {"q1", {{"state", r.q1.state}, {"note", r.q1.note}}}};
  if (r.tau) out["tau"] = to_json(r.tau->matrix());
  if (r.kernel) out["kernel"] = r.kernel->to_string();
  if (r.cokernel) out["cokernel"] = r.cokernel->to_string();
  if (r.kernel_witness) out["kernel_witness"] = to_json(*r.kernel_witness);
  if (!r.thread.empty()) {
    json th = json::array();
    for (std::size_t b = 0; b < r.thread.size(); ++b) th.push_back({{"alpha", r.thread_alpha[b]}, {"beta", b}, {"class", to_json(r.thread[b])}});
    out["thread"] = th;
  }
  if (r.sequence_exact) {
    out["sequence_exact"] = *r.sequence_exact;
    out["junctions"] = to_json(r.junctions);
  } else {
    out["sequence_exact"] = nullptr;
  }
  return out;
}

}  // namespace prolim::io
