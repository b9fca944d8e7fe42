#include "doctest.h"

#include <algorithm>
#include <cstdlib>

#include "hcv/error.hpp"
#include "hcv/rootsystems.hpp"

using namespace hcv::roots;

namespace {

std::shared_ptr<const RootSystem> rs(Family f, int n) { return build_root_system(CartanDatum::make(f, n)); }

}  // namespace

TEST_CASE("root counts") {
  CHECK(rs(Family::A, 1)->size() == 2);
  CHECK(rs(Family::A, 3)->size() == 12);
  CHECK(rs(Family::B, 2)->size() == 8);
  CHECK(rs(Family::C, 3)->size() == 18);
  CHECK(rs(Family::D, 4)->size() == 24);
  CHECK(rs(Family::E6, 6)->size() == 72);
  CHECK(rs(Family::E7, 7)->size() == 126);
  CHECK(rs(Family::B, 8)->size() == 128);
}

TEST_CASE("simple roots come first and in order") {
  auto r = rs(Family::D, 5);
  for (int i = 0; i < r->rank(); ++i) {
    CHECK(r->height(r->simple(i)) == 1);
    CHECK(r->root(r->simple(i))[static_cast<std::size_t>(i)] == 1);
  }
}

TEST_CASE("B2 pairings and coroots") {
  auto r = rs(Family::B, 2);
  // alpha_2 short: <alpha_1, alpha_2^vee> = -2
  CHECK(r->pairing(r->simple(0), r->simple(1)) == -2);
  CHECK(r->pairing(r->simple(1), r->simple(0)) == -1);
  for (std::size_t a = 0; a < r->size(); ++a) CHECK(r->pairing(a, a) == 2);
}

TEST_CASE("Weyl group orders and longest element") {
  WeylGroup b2(rs(Family::B, 2));
  CHECK(b2.order() == 8);
  CHECK(b2.length(b2.longest()) == 4);
  WeylGroup d4(rs(Family::D, 4));
  CHECK(d4.order() == 192);
  CHECK(d4.length(d4.longest()) == 12);
  WeylGroup c3(rs(Family::C, 3));
  CHECK(c3.order() == 48);
  // w0 = -1 in C3
  for (std::size_t r = 0; r < c3.roots().size(); ++r) CHECK(c3.act(c3.longest(), r) == c3.roots().negative(r));
  CHECK(ind_exponent(c3, c3.longest()) == 9);
}

TEST_CASE("braid relations") {
  for (auto [f, n] : {std::pair{Family::B, 3}, std::pair{Family::D, 4}, std::pair{Family::A, 3}}) {
    auto r = rs(f, n);
    WeylGroup w(r);
    const auto& a = r->datum().cartan;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const int prod = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                         a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        const int m = prod == 0 ? 2 : prod == 1 ? 3 : prod == 2 ? 4 : 6;
        auto st = w.multiply(w.generator(i), w.generator(j));
        std::size_t x = w.identity();
        for (int k = 0; k < m; ++k) x = w.multiply(x, st);
        CHECK(x == w.identity());
      }
  }
}

TEST_CASE("word representatives reproduce elements") {
  WeylGroup w(rs(Family::B, 3));
  for (std::size_t x = 0; x < w.order(); ++x) {
    std::size_t y = w.identity();
    for (int s : w.word(x)) y = w.multiply(y, w.generator(s));
    CHECK(y == x);
  }
}

TEST_CASE("fundamental degrees") {
  CHECK(fundamental_degrees(*rs(Family::A, 1)) == std::vector<int>{2});
  CHECK(fundamental_degrees(*rs(Family::B, 2)) == std::vector<int>{2, 4});
  CHECK(fundamental_degrees(*rs(Family::D, 4)) == std::vector<int>{2, 4, 4, 6});
  CHECK(fundamental_degrees(*rs(Family::E6, 6)) == std::vector<int>{2, 5, 6, 8, 9, 12});
  CHECK(fundamental_degrees(*rs(Family::E7, 7)) == std::vector<int>{2, 6, 8, 10, 12, 14, 18});
  CHECK(fundamental_degrees(*rs(Family::B, 8)) == std::vector<int>{2, 4, 6, 8, 10, 12, 14, 16});
  CHECK(fundamental_degrees(*rs(Family::D, 8)) == std::vector<int>{2, 4, 6, 8, 8, 10, 12, 14});
}

TEST_CASE("degree product equals group order") {
  for (auto [f, n] : {std::pair{Family::B, 3}, std::pair{Family::D, 5}, std::pair{Family::A, 4}}) {
    auto r = rs(f, n);
    WeylGroup w(r);
    std::size_t prod = 1;
    int sum = 0;
    for (int d : fundamental_degrees(*r)) {
      prod *= static_cast<std::size_t>(d);
      sum += d - 1;
    }
    CHECK(prod == w.order());
    CHECK(static_cast<std::size_t>(sum) == r->num_positive());
  }
}

TEST_CASE("diagram automorphisms") {
  CHECK(diagram_automorphisms(CartanDatum::make(Family::D, 4)).size() == 6);
  CHECK(diagram_automorphisms(CartanDatum::make(Family::D, 5)).size() == 2);
  CHECK(diagram_automorphisms(CartanDatum::make(Family::E6, 6)).size() == 2);
  CHECK(diagram_automorphisms(CartanDatum::make(Family::B, 3)).size() == 1);
  auto r = rs(Family::D, 5);
  for (auto& g : diagram_automorphisms(r->datum())) {
    auto p = root_permutation(*r, g);
    for (std::size_t a = 0; a < r->size(); ++a) CHECK(r->is_positive(p[a]) == r->is_positive(a));
  }
}

TEST_CASE("reflection subgroup of long roots in B2") {
  auto r = rs(Family::B, 2);
  WeylGroup w(r);
  std::vector<std::size_t> longs;
  // a is long iff |<b, a^vee>| <= 1 for every b != +-a
  for (std::size_t a = 0; a < r->size(); ++a) {
    bool is_long = true;
    for (std::size_t b = 0; b < r->size(); ++b)
      if (b != a && b != r->negative(a) && std::abs(r->pairing(b, a)) > 1) is_long = false;
    if (is_long) longs.push_back(a);
  }
  REQUIRE(longs.size() == 4);
  auto sub = reflection_subgroup(w, longs);
  CHECK(sub.elements.size() == 4);
  CHECK(sub.simple_roots.size() == 2);
}

TEST_CASE("unsupported types") {
  CHECK_THROWS_AS(CartanDatum::make(Family::D, 2), hcv::Unsupported);
  CHECK_THROWS_AS(parse_family("G"), hcv::Unsupported);
}
