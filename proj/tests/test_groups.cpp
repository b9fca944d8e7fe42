#include "doctest.h"

#include <algorithm>
#include <random>

#include "hcv/error.hpp"
#include "hcv/groups.hpp"
#include "hcv/symplectic.hpp"

using namespace hcv::groups;
using hcv::cyc::Cyc;

namespace {

std::vector<std::int64_t> sorted_degrees(const CharacterTable& t) {
  auto d = t.degrees;
  std::sort(d.begin(), d.end());
  return d;
}

Bytes perm(std::initializer_list<int> p) { return Bytes(p.begin(), p.end()); }

}  // namespace

TEST_CASE("trivial and cyclic groups") {
  FiniteGroup triv(Universe::permutations(3), {perm({0, 1, 2})});
  CHECK(triv.order() == 1);
  FiniteGroup c2(Universe::permutations(2), {perm({1, 0})});
  auto cl = conjugacy_classes(c2);
  CHECK(cl.size() == 2);
  auto t = character_table(c2, cl);
  CHECK(sorted_degrees(t) == std::vector<std::int64_t>{1, 1});
  CHECK(count_odd_degree(t) == 2);
  FiniteGroup c5(Universe::permutations(5), {perm({1, 2, 3, 4, 0})});
  auto cl5 = conjugacy_classes(c5);
  CHECK(cl5.size() == 5);  // abelian: one class per element
  auto t5 = character_table(c5, cl5);
  CHECK(t5.size() == 5);
}

TEST_CASE("S3 character table") {
  FiniteGroup s3(Universe::permutations(3), {perm({1, 0, 2}), perm({0, 2, 1})});
  CHECK(s3.order() == 6);
  auto cl = conjugacy_classes(s3);
  auto t = character_table(s3, cl);
  CHECK(sorted_degrees(t) == std::vector<std::int64_t>{1, 1, 2});
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(inner_product(t, t.rows[i], t.rows[i]) == 1);
}

TEST_CASE("SL2(3)") {
  SymplecticModel m(1, 3);
  auto g = symplectic_group(m);
  CHECK(g.order() == 24);
  auto cl = conjugacy_classes(g);
  CHECK(cl.size() == 7);
  auto t = character_table(g, cl);
  CHECK(sorted_degrees(t) == std::vector<std::int64_t>{1, 1, 1, 2, 2, 2, 3});
  CHECK(count_odd_degree(t) == 4);
  // Ind_B^G(1) = 1 + St
  auto b = borel_subgroup(m);
  CHECK(b.order() == 6);
  auto ind = induce_elementwise(g, cl, b, [](std::size_t) { return Cyc(1); });
  auto mult = decompose(t, ind);
  std::vector<std::int64_t> constituents;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (int k = 0; k < mult[i].get_num().get_si(); ++k) constituents.push_back(t.degrees[i]);
  std::sort(constituents.begin(), constituents.end());
  CHECK(constituents == std::vector<std::int64_t>{1, 3});
  CHECK(split_torus(m).order() == 2);
  CHECK(monomial_subgroup(m).order() == 4);
  CHECK(twisted_torus_normalizer(m).order() == 8);
}

TEST_CASE("Frobenius reciprocity on random pairs") {
  SymplecticModel m(1, 5);
  auto g = symplectic_group(m);
  CHECK(g.order() == 120);
  auto gcl = conjugacy_classes(g);
  auto gt = character_table(g, gcl);
  auto h = borel_subgroup(m);
  auto hcl = conjugacy_classes(h);
  auto ht = character_table(h, hcl);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto& psi = ht.rows[rng() % ht.size()];
    const auto& chi = gt.rows[rng() % gt.size()];
    auto lhs = inner_product(gt, induce(g, gcl, h, hcl, psi), chi);
    auto rhs = inner_product(ht, psi, restrict_to(g, gcl, h, hcl, chi));
    CHECK(lhs == rhs);
    CHECK(lhs >= 0);
  }
}

TEST_CASE("Sp4(3) structure") {
  SymplecticModel m(2, 3);
  for (const auto& x : m.chevalley_generators()) CHECK(m.preserves_form(x));
  auto g = symplectic_group(m);
  CHECK(g.order() == 51840);
  CHECK(split_torus(m).order() == 4);
  CHECK(monomial_subgroup(m).order() == 32);
  CHECK(borel_subgroup(m).order() == 4 * 81);
  CHECK(levi_subgroup(m).order() == 24 * 2);
  CHECK(twisted_torus(m).order() == 16);
  CHECK(twisted_torus_normalizer(m).order() == 128);
  auto cl = conjugacy_classes(g);
  CHECK(cl.size() == 34);
  std::size_t total = 0;
  for (auto s : cl.sizes) {
    CHECK(g.order() % s == 0);
    total += s;
  }
  CHECK(total == g.order());
}

TEST_CASE("normalizer of a Sylow 2-subgroup of SL2(5)") {
  SymplecticModel m(1, 5);
  auto g = symplectic_group(m);
  auto n = monomial_subgroup(m);  // Q8 for q = 5
  CHECK(n.order() == 8);
  CHECK(normalizer(g, n).order() == 24);
}

TEST_CASE("Todd-Coxeter") {
  Presentation c2{{"a"}, {{0, 0}}};
  CHECK(todd_coxeter(c2, {}).index == 2);
  // S3 = <a, b | a^2, b^2, (ab)^3>
  Presentation s3{{"a", "b"}, {{0, 0}, {2, 2}, {0, 2, 0, 2, 0, 2}}};
  auto t = todd_coxeter(s3, {});
  CHECK(t.index == 6);
  CHECK(todd_coxeter(s3, {{0}}).index == 3);
  // <a, b | a^3, b^2, abab> dihedral of order 6 written differently
  Presentation d3{{"a", "b"}, {{0, 0, 0}, {2, 2}, {0, 2, 0, 2}}};
  CHECK(todd_coxeter(d3, {}).index == 6);
  // Coxeter presentation of W(B3), order 48
  Presentation b3{{"s", "t", "u"},
                  {{0, 0}, {2, 2}, {4, 4}, {0, 2, 0, 2, 0, 2}, {2, 4, 2, 4, 2, 4, 2, 4}, {0, 4, 0, 4}}};
  CHECK(todd_coxeter(b3, {}).index == 48);
  // Infinite group hits the cap.
  Presentation z{{"a"}, {}};
  CHECK_THROWS_AS(todd_coxeter(z, {}, 1000), hcv::CapExceeded);
}

TEST_CASE("cache round trip") {
  auto dir = std::filesystem::temp_directory_path() / "hcv_cache_test";
  std::filesystem::remove_all(dir);
  CacheOptions opt{dir};
  SymplecticModel m(1, 3);
  auto g = symplectic_group(m);
  auto cl = conjugacy_classes(g);
  auto t1 = character_table(g, cl, opt);
  CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 1);
  auto t2 = character_table(g, cl, opt);
  CHECK(t1.degrees == t2.degrees);
  CHECK(t1.rows == t2.rows);
  std::filesystem::remove_all(dir);
}

TEST_CASE("Sp4(3) character table") {
  SymplecticModel m(2, 3);
  auto g = symplectic_group(m);
  auto cl = conjugacy_classes(g);
  auto t = character_table(g, cl);
  CHECK(t.size() == 34);
  CHECK(t.dixon_prime == 1801);
  std::int64_t sq = 0;
  for (auto d : t.degrees) {
    CHECK(51840 % d == 0);
    sq += d * d;
  }
  CHECK(sq == 51840);
  // The cuspidal unipotent character of degree q(q-1)^2/2 = 6 is present.
  CHECK(std::count(t.degrees.begin(), t.degrees.end(), 6) >= 1);
  MESSAGE("Sp4(3) odd degree count: " << count_odd_degree(t));
}
