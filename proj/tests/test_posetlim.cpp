#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "prolim/posetlim.hpp"

using namespace prolim;
using namespace fixture;

namespace {

FgAbGroup Z() { return FgAbGroup::free(1); }

}  // namespace

TEST_CASE("poset construction") {
  FinitePoset chain({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(chain.leq(0, 2));
  CHECK(chain.covers(0, 1));
  CHECK_FALSE(chain.covers(0, 2));
  CHECK(chain.height() == 2);
  CHECK(chain.chains(2).size() == 1);
  CHECK_THROWS_AS(FinitePoset({"a", "b"}, {{"a", "b"}, {"b", "a"}}), std::invalid_argument);
  CHECK_THROWS_AS(FinitePoset({"a"}, {{"a", "q"}}), std::invalid_argument);
}

TEST_CASE("is_directed") {
  CHECK(is_directed(FinitePoset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}})));
  CHECK_FALSE(is_directed(FinitePoset({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}})));
  CHECK(is_directed(FinitePoset({"0", "l", "r", "1"}, {{"0", "l"}, {"0", "r"}, {"l", "1"}, {"r", "1"}})));
}

TEST_CASE("derived limits: maximum, point, cospan") {
  FinitePoset point({"p"}, {});
  FinitePosetDiagram dp(point, {Z()}, {});
  auto lp = derived_limits(dp, 3);
  CHECK(lp[0].invariants() == Invariants{1, {}});
  for (std::size_t i = 1; i < 4; ++i) CHECK(lp[i].is_trivial());

  FinitePoset cospan({"c", "a", "b"}, {{"c", "a"}, {"c", "b"}});
  std::map<std::pair<std::size_t, std::size_t>, GroupHom> maps;
  maps.emplace(std::make_pair(0, 1), GroupHom::scalar(Z(), 2));
  maps.emplace(std::make_pair(0, 2), GroupHom::scalar(Z(), 2));
  FinitePosetDiagram d(cospan, {Z(), Z(), Z()}, maps);
  auto l = derived_limits(d, 3);
  CHECK(l[0].invariants() == Invariants{1, {}});
  CHECK(l[1].invariants() == Invariants{0, {Integer(2)}});
  CHECK(l[2].is_trivial());

  // brute force: the single differential is the 2x3 matrix below; its
  // cokernel is read off the minor gcds
  IntMatrix delta{{-1, 2, 0}, {-1, 0, 2}};
  CHECK(order_complex_cochains(d).differentials[0].matrix() == delta);
  auto f = oracle::invariant_factors(delta);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == 1);
  CHECK(f[1] == 2);

  // poset with a maximum: lim^0 = G(max)
  FinitePoset diamond({"0", "l", "r", "1"}, {{"0", "l"}, {"0", "r"}, {"l", "1"}, {"r", "1"}});
  std::map<std::pair<std::size_t, std::size_t>, GroupHom> dm;
  FgAbGroup z6 = FgAbGroup::cyclic(6);
  dm.emplace(std::make_pair(0, 1), GroupHom::identity(z6));
  dm.emplace(std::make_pair(0, 2), GroupHom::identity(z6));
  dm.emplace(std::make_pair(1, 3), GroupHom::identity(z6));
  dm.emplace(std::make_pair(2, 3), GroupHom::identity(z6));
  auto ld = derived_limits(FinitePosetDiagram(diamond, {z6, z6, z6, z6}, dm), 3);
  CHECK(is_isomorphic(ld[0], z6));
  for (std::size_t i = 1; i < 4; ++i) CHECK(ld[i].is_trivial());
}

TEST_CASE("non-functorial diagrams are rejected") {
  FinitePoset diamond({"0", "l", "r", "1"}, {{"0", "l"}, {"0", "r"}, {"l", "1"}, {"r", "1"}});
  std::map<std::pair<std::size_t, std::size_t>, GroupHom> dm;
  dm.emplace(std::make_pair(0, 1), GroupHom::scalar(Z(), 2));
  dm.emplace(std::make_pair(0, 2), GroupHom::identity(Z()));
  dm.emplace(std::make_pair(1, 3), GroupHom::identity(Z()));
  dm.emplace(std::make_pair(2, 3), GroupHom::identity(Z()));
  CHECK_THROWS_AS(FinitePosetDiagram(diamond, {Z(), Z(), Z(), Z()}, dm), std::invalid_argument);
  dm.erase({2, 3});
  CHECK_THROWS_AS(FinitePosetDiagram(diamond, {Z(), Z(), Z(), Z()}, dm), std::invalid_argument);
}

TEST_CASE("one-chain poset agrees with the single map") {
  FinitePoset two({"x", "y"}, {{"x", "y"}});
  std::map<std::pair<std::size_t, std::size_t>, GroupHom> m;
  FgAbGroup gy = FgAbGroup::free(2), gx = FgAbGroup::cyclic(4);
  GroupHom f(gy, gx, IntMatrix{{1, 2}});
  m.emplace(std::make_pair(0, 1), f);
  auto l = derived_limits(FinitePosetDiagram(two, {gx, gy}, m), 2);
  CHECK(is_isomorphic(l[0], gy));
  CHECK(l[1].is_trivial());
}

TEST_CASE("directed posets have vanishing higher limits") {
  std::mt19937_64 rng(1001);
  for (int t = 0; t < 50; ++t) {
    FinitePoset p = random_poset(rng, 2 + rng() % 5, true);
    REQUIRE(is_directed(p));
    auto l = derived_limits(random_diagram(rng, p, 2), 3);
    for (std::size_t i = 1; i <= 3; ++i) CHECK(l[i].is_trivial());
  }
}

TEST_CASE("Euler characteristic of the cochain complex") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    FinitePoset p = random_poset(rng, 2 + rng() % 4, false);
    FinitePosetDiagram d = random_diagram(rng, p, 2);
    CochainComplex cx = order_complex_cochains(d);
    auto l = derived_limits(d, p.height() + 1);
    long chi_c = 0, chi_h = 0;
    for (std::size_t k = 0; k < cx.terms.size(); ++k)
      chi_c += (k % 2 ? -1 : 1) * static_cast<long>(cx.terms[k].invariants().free_rank);
    for (std::size_t k = 0; k < l.size(); ++k)
      chi_h += (k % 2 ? -1 : 1) * static_cast<long>(l[k].invariants().free_rank);
    CHECK(chi_c == chi_h);
    for (std::size_t k = 0; k + 1 < cx.differentials.size(); ++k)
      CHECK(compose(cx.differentials[k + 1], cx.differentials[k]).is_zero());
  }
}
