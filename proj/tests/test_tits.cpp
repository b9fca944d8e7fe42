#include <doctest.h>

#include "hcv/error.hpp"
#include "hcv/symplectic.hpp"
#include "hcv/tits.hpp"

using namespace hcv;
using roots::CartanDatum;
using roots::Family;

namespace {

std::size_t weyl_order(Family f, int l) {
  return roots::WeylGroup(roots::build_root_system(CartanDatum::make(f, l))).order();
}

roots::DiagramAut swap_last(int l) {
  std::vector<int> p(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) p[static_cast<std::size_t>(i)] = i;
  std::swap(p[static_cast<std::size_t>(l - 2)], p[static_cast<std::size_t>(l - 1)]);
  return {p};
}

roots::DiagramAut identity_aut(int l) {
  std::vector<int> p(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) p[static_cast<std::size_t>(i)] = i;
  return {p};
}

}  // namespace

TEST_CASE("extended Weyl group orders are 2^l |W|") {
  const std::vector<std::pair<Family, int>> cases = {
      {Family::A, 1}, {Family::A, 2}, {Family::B, 2}, {Family::C, 3}, {Family::D, 3}, {Family::D, 4}};
  for (auto [f, l] : cases) {
    tits::ExtendedWeylGroup v(CartanDatum::make(f, l));
    CHECK(v.order() == (std::size_t{1} << l) * weyl_order(f, l));
    const auto h = v.h_subgroup();
    CHECK(h.size() == (std::size_t{1} << l));
    for (auto x : h) {
      CHECK(v.multiply(x, x) == v.identity());
      CHECK(v.project(x) == v.weyl().identity());
    }
  }
  CHECK(tits::ExtendedWeylGroup(CartanDatum::make(Family::A, 1)).order() == 4);
  CHECK(tits::ExtendedWeylGroup(CartanDatum::make(Family::B, 2)).order() == 32);
  CHECK(tits::ExtendedWeylGroup(CartanDatum::make(Family::C, 3)).order() == 384);
  CHECK(tits::ExtendedWeylGroup(CartanDatum::make(Family::D, 4)).order() == 3072);
}

TEST_CASE("projection to W is a surjective homomorphism with kernel H") {
  tits::ExtendedWeylGroup v(CartanDatum::make(Family::B, 3));
  std::vector<std::size_t> hits(v.weyl().order(), 0);
  for (std::size_t x = 0; x < v.order(); ++x) ++hits[v.project(x)];
  for (auto c : hits) CHECK(c == 8);
  for (std::size_t a = 0; a < v.order(); a += 37)
    for (std::size_t b = 0; b < v.order(); b += 41)
      CHECK(v.project(v.multiply(a, b)) == v.weyl().multiply(v.project(a), v.project(b)));
}

TEST_CASE("Tits relators hold for n_alpha(1) in Sp4(3)") {
  groups::SymplecticModel m(2, 3);
  const auto& u = m.universe();
  const auto pres = tits::tits_presentation(CartanDatum::make(Family::C, 2));
  std::vector<groups::Bytes> gens;
  for (int i = 0; i < 2; ++i) gens.push_back(m.n_simple(i, 1));
  for (int i = 0; i < 2; ++i) gens.push_back(u.multiply(gens[static_cast<std::size_t>(i)], gens[static_cast<std::size_t>(i)]));
  for (int i = 0; i < 2; ++i) {
    CHECK(gens[static_cast<std::size_t>(2 + i)] == m.h_simple(i, 2));
    CHECK(m.n_simple(i, 2) == u.multiply(gens[static_cast<std::size_t>(i)], gens[static_cast<std::size_t>(2 + i)]));
  }
  for (const auto& r : pres.relators) {
    groups::Bytes x = u.identity();
    for (int letter : r) {
      const auto& g = gens[static_cast<std::size_t>(letter / 2)];
      x = u.multiply(x, (letter & 1) ? u.inverse(g) : g);
    }
    INFO(groups::word_to_string(pres, r));
    CHECK(x == u.identity());
  }
}

TEST_CASE("longest lift") {
  tits::ExtendedWeylGroup c3(CartanDatum::make(Family::C, 3));
  const auto w0 = c3.longest_lift();
  CHECK(c3.project(w0) == c3.weyl().longest());
  CHECK(c3.is_central(w0));
  tits::ExtendedWeylGroup a2(CartanDatum::make(Family::A, 2));
  CHECK_FALSE(a2.is_central(a2.longest_lift()));
}

TEST_CASE("fixed points under the graph automorphism of D_l") {
  for (int l : {3, 4}) {
    tits::ExtendedWeylGroup v(CartanDatum::make(Family::D, l));
    const auto fp = tits::fixed_points(v, {swap_last(l), 1});
    const std::size_t expected = tits::ExtendedWeylGroup(CartanDatum::make(Family::B, l - 1)).order();
    CHECK(fp.v1.size() == expected);
    CHECK(fp.v1_is_centralizer);
    CHECK(fp.h1.size() == (std::size_t{1} << (l - 1)));
  }
}

TEST_CASE("d = 2 on D_l: V1 is V or C_V(gamma)") {
  // l even: w0 = -1 and its lift is central; l odd: w0 acts as -gamma.
  for (int l : {3, 4}) {
    tits::ExtendedWeylGroup v(CartanDatum::make(Family::D, l));
    for (const auto& g : {identity_aut(l), swap_last(l)}) {
      const auto fp = tits::fixed_points(v, {g, 2});
      CHECK((fp.v1_is_v || fp.v1.size() == tits::fixed_points(v, {swap_last(l), 1}).v1.size()));
    }
  }
}

TEST_CASE("graph automorphism subgroup of V(D_l) satisfies the B_{l-1} relators") {
  for (int l : {3, 4, 5}) {
    const auto rep = tits::verify_lemA3(l);
    INFO("l = " << l);
    CHECK(rep.relators_pass());
    CHECK(rep.orders_match());
    CHECK(rep.equals_centralizer);
    CHECK(rep.expected_order == (std::size_t{1} << (l - 1)) * weyl_order(Family::B, l - 1));
  }
  CHECK_THROWS_AS(tits::verify_lemA3(2), Unsupported);
}

TEST_CASE("fixed points reject a non-automorphism") {
  tits::ExtendedWeylGroup v(CartanDatum::make(Family::B, 2));
  CHECK_THROWS_AS(tits::fixed_points(v, {roots::DiagramAut{{1, 0}}, 1}), InvalidArgument);
}
