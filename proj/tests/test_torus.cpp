#include <doctest.h>

#include <algorithm>

#include "hcv/error.hpp"
#include "hcv/symplectic.hpp"
#include "hcv/torus.hpp"

using namespace hcv;
using roots::CartanDatum;
using roots::Family;
using torus::Lambda;
using torus::TorusModel;

namespace {

struct Oracle {
  std::size_t order, total, odd;
};

Oracle brute_force(const groups::FiniteGroup& n) {
  const auto cls = groups::conjugacy_classes(n);
  const auto t = groups::character_table(n, cls);
  return {n.order(), t.size(), groups::count_odd_degree(t)};
}

}  // namespace

TEST_CASE("torus models") {
  TorusModel a(CartanDatum::make(Family::C, 2), 5, 1);
  CHECK(a.modulus() == 4);
  CHECK(a.num_characters() == 16);
  CHECK(a.action_relations_hold());
  TorusModel b(CartanDatum::make(Family::C, 2), 3, 2);
  CHECK(b.modulus() == 4);
  CHECK(b.action_relations_hold());
  CHECK(TorusModel(CartanDatum::make(Family::B, 3), 7, 1).action_relations_hold());
  CHECK_THROWS_AS(TorusModel(CartanDatum::make(Family::A, 2), 3, 2), Unsupported);
  CHECK_THROWS_AS(TorusModel(CartanDatum::make(Family::D, 3), 3, 2), Unsupported);
  CHECK_NOTHROW(TorusModel(CartanDatum::make(Family::D, 4), 3, 2));
  for (std::size_t c = 0; c < a.num_characters(); ++c) CHECK(a.encode(a.decode(c)) == c);
}

TEST_CASE("stabilisers and orbit-stabiliser") {
  TorusModel t(CartanDatum::make(Family::C, 2), 5, 1);
  CHECK(torus::stabilizer(t, {0, 0}).size() == 8);
  std::size_t sum = 0;
  for (const auto& o : torus::orbits(t)) {
    CHECK(torus::stabilizer(t, o.rep).size() * o.size == 8);
    sum += o.size;
  }
  CHECK(sum == 16);
  // Brute force over all elements and characters for lambda = (2, 2).
  const Lambda l{2, 2};
  std::size_t count = 0;
  for (std::size_t w = 0; w < t.weyl().order(); ++w) {
    Lambda x = l;
    const auto& word = t.weyl().word(w);
    for (auto it = word.rbegin(); it != word.rend(); ++it) x = t.reflect(*it, x);
    count += x == l;
  }
  CHECK(torus::stabilizer(t, l).size() == count);
}

TEST_CASE("phi_lambda") {
  TorusModel t(CartanDatum::make(Family::C, 2), 5, 1);
  const auto zero = torus::phi_lambda(t, {0, 0});
  CHECK(zero.phi.size() == 8);
  CHECK(zero.delta.size() == 2);
  CHECK(zero.r_lambda.size() == 8);
  CHECK(zero.c_lambda.size() == 1);
  CHECK(zero.num_parameters == 2);  // long and short roots

  const auto generic = torus::phi_lambda(t, {1, 1});
  for (std::size_t r = 0; r < t.roots().size(); ++r) CHECK(t.pairing({1, 1}, r) != 0);
  CHECK(generic.phi.empty());
  CHECK(generic.r_lambda.size() == 1);
  CHECK(generic.c_lambda == generic.w_lambda);

  const auto mixed = torus::phi_lambda(t, {0, 2});
  std::size_t zeros = 0;
  for (std::size_t r = 0; r < t.roots().size(); ++r) zeros += t.pairing({0, 2}, r) == 0;
  CHECK(mixed.phi.size() == zeros);
  CHECK(mixed.r_lambda.size() * mixed.c_lambda.size() == mixed.w_lambda.size());
  for (auto a : mixed.delta) CHECK(t.pairing({0, 2}, a) == 0);

  // All characters: R(lambda) generators pair trivially with lambda.
  for (std::size_t c = 0; c < t.num_characters(); ++c) {
    const auto d = torus::phi_lambda(t, t.decode(c));
    for (auto a : d.delta) CHECK(t.pairing(d.lambda, a) == 0);
  }
}

TEST_CASE("local counts against normalisers in SL2") {
  groups::SymplecticModel m3(1, 3);
  // d = 1: N = T.2 = C4.
  const auto c1 = torus::local_count(TorusModel(CartanDatum::make(Family::C, 1), 3, 1), torus::Parity::All);
  const auto n1 = brute_force(groups::monomial_subgroup(m3));
  CHECK(n1.order == 4);
  CHECK(c1.total == 4);
  CHECK(c1.total == n1.total);
  // d = 2: N = Q8.
  const auto c2 = torus::local_count(TorusModel(CartanDatum::make(Family::C, 1), 3, 2), torus::Parity::Odd);
  const auto n2 = brute_force(groups::twisted_torus_normalizer(m3));
  CHECK(n2.order == 8);
  CHECK(c2.total == 5);
  CHECK(c2.odd == 4);
  CHECK(c2.total == n2.total);
  CHECK(c2.odd == n2.odd);
  CHECK(c2.labels.size() == 4);
}

TEST_CASE("local counts against normalisers in Sp4") {
  for (auto [q, d] : std::vector<std::pair<int, int>>{{5, 1}, {3, 2}, {3, 1}}) {
    groups::SymplecticModel m(2, q);
    const auto n = brute_force(d == 1 ? groups::monomial_subgroup(m) : groups::twisted_torus_normalizer(m));
    for (auto f : {Family::C, Family::B}) {
      TorusModel t(CartanDatum::make(f, 2), q, d);
      const auto c = torus::local_count(t, torus::Parity::All);
      INFO("q = " << q << " d = " << d);
      CHECK(c.total == n.total);
      CHECK(c.odd == n.odd);
      std::size_t sq = 0;
      for (const auto& lab : c.labels) sq += static_cast<std::size_t>(lab.degree * lab.degree);
      CHECK(sq == n.order);
    }
  }
}

TEST_CASE("relabel") {
  TorusModel t(CartanDatum::make(Family::C, 2), 5, 1);
  const auto& w = t.weyl();
  for (std::size_t c = 0; c < t.num_characters(); ++c) {
    const Lambda l = t.decode(c);
    const auto stab = torus::stabilizer(t, l);
    const auto& tab = t.subgroup_table(stab);
    for (std::size_t eta = 0; eta < tab.table.size(); ++eta) {
      CHECK(torus::relabel(t, l, eta, w.identity()) == eta);
      for (auto x : stab) CHECK(torus::relabel(t, l, eta, x) == eta);
      for (std::size_t g = 0; g < w.order(); ++g) {
        const auto img = torus::relabel(t, l, eta, g);
        const auto& dst = t.subgroup_table(torus::stabilizer(t, t.act(g, l)));
        CHECK(dst.table.degrees[img] == tab.table.degrees[eta]);
      }
    }
  }
}

TEST_CASE("Levi series of type C") {
  const auto s1 = torus::typeC_levi_series(1, 3);
  auto degs = s1.cuspidal_degrees;
  std::sort(degs.begin(), degs.end());
  CHECK(degs == std::vector<std::int64_t>{1, 1, 2});
  const auto s2 = torus::typeC_levi_series(2, 3);
  CHECK(s2.entries.size() == 6);
  for (const auto& e : s2.entries) CHECK(e.w_lambda_order == 2);
  const auto s3 = torus::typeC_levi_series(3, 5);
  for (const auto& e : s3.entries)
    if (e.lambda1 == Lambda{0, 0}) CHECK(e.w_lambda_order == 8);
  CHECK(torus::d2(5) == 1);
  CHECK(torus::d2(3) == 2);
  CHECK(torus::d2(7) == 2);
}
