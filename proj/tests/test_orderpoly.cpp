#include <doctest.h>

#include <algorithm>
#include <set>

#include "hcv/error.hpp"
#include "hcv/groups.hpp"
#include "hcv/hecke.hpp"
#include "hcv/orderpoly.hpp"
#include "hcv/symplectic.hpp"

using namespace hcv;
using namespace hcv::orderpoly;
using roots::CartanDatum;
using roots::Family;

namespace {

CompleteRootDatum split(Family f, int l) { return {f, l, Twist::Split}; }

}  // namespace

TEST_CASE("order polynomials of small groups") {
  const auto c2 = order_poly(split(Family::C, 2));
  CHECK(c2 == CycloPoly::x(4) * CycloPoly::phi(1, 2) * CycloPoly::phi(2, 2) * CycloPoly::phi(4));
  CHECK(c2.eval(3) == 51840);
  CHECK(c2.degree() == 10);

  const auto d2 = order_poly({Family::D, 2, Twist::TwistedD});
  CHECK(d2 == CycloPoly::x(2) * CycloPoly::phi(1) * CycloPoly::phi(2) * CycloPoly::phi(4));

  CHECK(order_poly({Family::D, 1, Twist::Split}) == CycloPoly::phi(1));
  CHECK(order_poly({Family::D, 1, Twist::TwistedD}) == CycloPoly::phi(2));
  CHECK(order_poly({Family::A, 0, Twist::Split}) == CycloPoly{});
  CHECK(order_poly({Family::A, 3, Twist::TorusPlus}) == CycloPoly::phi(2, 3));

  // |SL_3(2)| = 168, |E6(q)| has degree dim E6 = 78.
  CHECK(order_poly(split(Family::A, 2)).eval(2) == 168);
  CHECK(order_poly(split(Family::E6, 6)).degree() == 78);
  CHECK(order_poly(split(Family::E7, 7)).degree() == 133);
  CHECK(order_poly(split(Family::D, 4)).degree() == 28);
}

TEST_CASE("order polynomial matches enumerated symplectic groups") {
  for (auto [l, q] : {std::pair{1, 3}, std::pair{1, 5}, std::pair{2, 3}}) {
    groups::SymplecticModel m(l, q);
    const auto g = groups::symplectic_group(m);
    CHECK(order_poly(split(Family::C, l)).eval(q) == static_cast<long>(g.order()));
  }
}

TEST_CASE("expand and factor round trip") {
  const auto c2 = order_poly(split(Family::C, 2));
  const auto coeffs = c2.expand();
  mpz_class v = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) v = v * 5 + coeffs[k];
  CHECK(v == c2.eval(5));

  hecke::LaurentPoly lp;
  lp.low = -3;
  for (const auto& c : coeffs) lp.coeffs.push_back(mpq_class(c) * 3);
  const auto f = factor_laurent(lp);
  REQUIRE(f.has_value());
  CHECK(f->scalar == 3);
  CHECK(f->xpow == 1);
  CHECK(f->cyclo == c2.cyclo);

  hecke::LaurentPoly notcyclo{0, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}};
  notcyclo.coeffs[0] = 2;
  CHECK_FALSE(factor_laurent(notcyclo).has_value());
}

TEST_CASE("p' parts and degrees") {
  const auto c2 = order_poly(split(Family::C, 2));
  const auto idx = p_prime_part(c2, CycloPoly::phi(1, 2));
  CHECK(idx.eval(3) == 160);
  CHECK(idx == split_index(CartanDatum::make(Family::C, 2)));
  CHECK_THROWS_AS(p_prime_part(c2, CycloPoly::phi(3)), InvalidArgument);

  // Cuspidal unipotent of Sp4: 1/2 X Phi1^2 has X' part 1/2 Phi1^2.
  const auto theta = CycloPoly::constant(mpq_class(1, 2)) * CycloPoly::x(1) * CycloPoly::phi(1, 2);
  CHECK(p_prime_part(theta, CycloPoly{}) == CycloPoly::constant(mpq_class(1, 2)) * CycloPoly::phi(1, 2));
  CHECK(theta.eval(3) == 6);

  CHECK(x_minus_1_divisibility(CycloPoly::phi(1, 3) * CycloPoly::phi(2), 3));
  CHECK_FALSE(x_minus_1_divisibility(CycloPoly::phi(1, 2), 3));
  CHECK_THROWS_AS(x_minus_1_divisibility(CycloPoly::phi(1, -1), 0), InvalidArgument);
}

TEST_CASE("principal series unipotent degrees of B2 from Schur functions") {
  const CartanDatum b2 = CartanDatum::make(Family::B, 2);
  torus::TorusModel t(b2, 5, 1);
  const auto d = torus::phi_lambda(t, {0, 0});
  hecke::GenericHecke h(t, d);
  const auto& tab = t.subgroup_table(d.w_lambda);
  const auto fns = hecke::schur_functions(h, tab, 4);
  const auto idx = split_index(b2);
  std::multiset<std::string> got;
  for (std::size_t e = 0; e < fns.size(); ++e) {
    REQUIRE(fns[e].has_value());
    const auto c = factor_laurent(*fns[e]);
    REQUIRE(c.has_value());
    // Principal series: the cuspidal datum is the trivial character of T.
    const auto deg = degree_polynomial(idx, CycloPoly{}, CycloPoly{} / *c);
    CHECK(deg.xpow >= 0);
    CHECK(degree_value(idx, 1, CycloPoly{} / *c, 5) == deg.eval(5));
    got.insert(deg.to_string());
  }
  // Trivial, Steinberg X^N, and three of the form 1/2 X (...).
  CHECK(got == std::multiset<std::string>{"1", "X^4", "1/2*X*Phi2^2", "1/2*X*Phi4", "1/2*X*Phi4"});
}

TEST_CASE("two-adic profile") {
  CHECK(two_adic_profile(4, 3).at_q == 1);
  CHECK(two_adic_profile(4, 3).at_1 == 1);
  CHECK(two_adic_profile(2, 3).at_q == 2);
  CHECK(two_adic_profile(2, 3).at_1 == 1);
  CHECK(two_adic_profile(3, 7).at_q == 0);
  CHECK(two_adic_profile(3, 7).at_1 == 0);
  CHECK_FALSE(two_adic_profile(1, 3).at_1.has_value());
  CHECK_THROWS_AS(two_adic_profile(3, 4), InvalidArgument);
}

TEST_CASE("two-adic invariant for i > 2") {
  // For i >= 3 the 2-part of Phi_i(q) equals that of Phi_i(1) for odd q.
  for (int i = 3; i <= 64; ++i)
    for (int q = 3; q <= 97; q += 2) {
      const auto p = two_adic_profile(i, q);
      REQUIRE(p.at_1.has_value());
      CHECK_MESSAGE(p.at_q == *p.at_1, "i=" << i << " q=" << q);
    }
}

TEST_CASE("cyclotomic parity grid") {
  for (int i = 1; i <= 64; ++i) {
    const bool two_power = i >= 4 && (i & (i - 1)) == 0;
    for (int q = 3; q <= 97; q += 2) {
      const auto v = *val2(cyclotomic_value(i, q));
      CHECK_MESSAGE((v == 0) == (i > 2 && !two_power), "i=" << i << " q=" << q);
      if (two_power) CHECK(v == 1);
      if (i >= 2) CHECK(v >= *two_adic_profile(i, q).at_1);
    }
  }
}

TEST_CASE("p' part is multiplicative") {
  const auto f = CycloPoly::constant(3) * CycloPoly::x(2) * CycloPoly::phi(1, 2) * CycloPoly::phi(4);
  const auto g = CycloPoly::x(5) * CycloPoly::phi(2, 3) * CycloPoly::phi(6);
  CHECK(p_prime_part(f * g, CycloPoly{}) == p_prime_part(f, CycloPoly{}) * p_prime_part(g, CycloPoly{}));
}

TEST_CASE("cusp parity") {
  const auto entries = load_cuspidal_data(HCV_DATA_DIR "/cuspidal_unipotent.json");
  for (const auto& e : entries)
    if (e.group.family == Family::B && e.group.rank == 2) {
      auto f = e.degree;
      const int m = f.multiplicity(1);
      f.cyclo.erase(1);
      const mpq_class a = f.scalar;
      f.scalar = 1;
      CHECK(cusp_parity_check(a, m, f, 3));
    }
  CHECK(cusp_parity_check(mpq_class(1, 2), 2, CycloPoly::phi(2), 3));
  CHECK(cusp_parity_check(mpq_class(1, 2), 0, CycloPoly{}, 3) == false);
  CHECK(cusp_parity_check(1, 1, CycloPoly{}, 7));
  CHECK_THROWS_AS(cusp_parity_check(1, 1, CycloPoly::phi(1), 7), InvalidArgument);
}

TEST_CASE("centraliser catalogue") {
  const auto b = centralizer_row("B", 2, 1);
  CHECK(b.centralizer.name() == "B0.D2.2");
  CHECK(centralizer_scan(b, 3).contains_sylow2());
  const auto c = centralizer_row("C", 4, 0);
  CHECK(centralizer_scan(c, 3).contains_sylow2());
  CHECK_THROWS_AS(centralizer_row("C", 5, 0), InvalidArgument);
  CHECK_THROWS_AS(centralizer_row("D", 4, 2), InvalidArgument);
  CHECK_THROWS_AS(centralizer_row("X", 4, 1), InvalidArgument);

  // Enlarging the centraliser never lowers its 2-part: D_{l-k}.D_k.2 inside B-type rows.
  for (int l = 2; l <= 8; ++l)
    for (int k = 1; 2 * k <= l; ++k) {
      const auto s = centralizer_scan(centralizer_row("B", l, k), 3);
      const auto bl = *val2(order_poly(split(Family::B, l - 2 * k)).eval(3));
      CHECK(s.val2_centralizer >= bl);
    }

  // Centraliser order divides the ambient order.
  for (const auto& r : centralizer_instances(8)) {
    const auto quo = order_poly(r.ambient) / order_poly(r.centralizer);
    for (const auto& [i, m] : quo.cyclo) CHECK_MESSAGE(m >= 0, r.label());
    CHECK_MESSAGE(quo.xpow >= 0, r.label());
    for (long q : {3L, 7L}) {
      const auto s = centralizer_scan(r, q);
      CHECK(s.val2_centralizer <= s.val2_ambient + 2);
    }
  }
}

TEST_CASE("Jordan decomposition degree") {
  // Sp4 over the centraliser (q-1)(q+1)... with Phi1^2 removed: Phi2^2 Phi4.
  const auto g = order_poly(split(Family::C, 2));
  const auto cent = CycloPoly::x(0) * CycloPoly::phi(1, 2);
  CHECK(jordan_degree(g, cent, CycloPoly{}) == CycloPoly::phi(2, 2) * CycloPoly::phi(4));
  const auto st = CycloPoly::x(4);
  CHECK(jordan_degree(g, g, st) == st);
  CHECK_THROWS_AS(jordan_degree(cent, g, CycloPoly{}), InvalidArgument);
  CHECK_FALSE(x_minus_1_divisibility(st, 1));
}

TEST_CASE("cuspidal data file") {
  const auto entries = load_cuspidal_data(HCV_DATA_DIR "/cuspidal_unipotent.json");
  REQUIRE(entries.size() >= 3);
  for (const auto& e : entries) {
    CHECK(e.degree.scalar > 0);
    CHECK_FALSE(e.provenance.empty());
    // A unipotent degree divides the group order up to the scalar.
    const auto quo = order_poly(e.group) / e.degree;
    for (const auto& [i, m] : quo.cyclo) CHECK(m >= 0);
  }
  const auto sp4 = std::find_if(entries.begin(), entries.end(),
                                [](const auto& e) { return e.group.family == Family::C && e.group.rank == 2; });
  REQUIRE(sp4 != entries.end());
  CHECK(sp4->degree.eval(3) == 6);

  CHECK_THROWS_AS(parse_cuspidal_data("{}"), InvalidArgument);
  CHECK_THROWS_AS(parse_cuspidal_data(R"({"schema":"hcverify-cuspidal-unipotent","version":2,"entries":[]})"),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_cuspidal_data(R"({"schema":"hcverify-cuspidal-unipotent","version":1,"entries":[],"x":1})"),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_cuspidal_data(
                      R"({"schema":"hcverify-cuspidal-unipotent","version":1,"entries":[{"type":"B","rank":2,
                      "twist":"split","degree":{"scalar":"1/2","xpow":1,"cyclo":{"a":2}},"provenance":"x"}]})"),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_cuspidal_data("not json"), InvalidArgument);
}
