#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "hcv/error.hpp"
#include "hcv/hecke.hpp"
#include "hcv/symplectic.hpp"

using namespace hcv;
using roots::CartanDatum;
using roots::Family;
using torus::Lambda;
using torus::TorusModel;

namespace {

struct Setup {
  TorusModel t;
  torus::RelWeylData d;
  hecke::GenericHecke h;
  Setup(Family f, int l, int q, const Lambda& lam)
      : t(CartanDatum::make(f, l), q, 1), d(torus::phi_lambda(t, lam)), h(t, d) {}
  const torus::WeylSubgroupTable& table() const { return t.subgroup_table(d.w_lambda); }
};

std::multiset<std::pair<std::int64_t, std::int64_t>> oracle_constituents(const groups::SymplecticModel& m,
                                                                          const groups::FiniteGroup& g,
                                                                          const groups::ConjClasses& cls,
                                                                          const groups::CharacterTable& tab,
                                                                          const groups::FiniteGroup& b,
                                                                          const Lambda& lam) {
  const auto ind = torus::induce_principal(m, g, cls, b, lam);
  std::multiset<std::pair<std::int64_t, std::int64_t>> out;
  const auto mult = groups::decompose(tab, ind);
  for (std::size_t chi = 0; chi < tab.size(); ++chi)
    if (mult[chi] != 0) out.insert({tab.degrees[chi], mult[chi].get_num().get_si()});
  return out;
}

}  // namespace

TEST_CASE("one-dimensional and group-algebra cases") {
  TorusModel t7(CartanDatum::make(Family::C, 2), 7, 1);
  std::size_t regular = 0;
  for (const auto& o : torus::orbits(t7)) {
    if (o.size != 8) continue;
    ++regular;
    hecke::GenericHecke h(t7, torus::phi_lambda(t7, o.rep));
    CHECK(h.dim() == 1);
  }
  CHECK(regular > 0);

  Setup c_only(Family::C, 1, 3, {1});  // W(lambda) = W, phi empty
  CHECK(c_only.h.dim() == 2);
  CHECK(c_only.h.num_parameters() == 0);
  const std::vector<mpq_class> none;
  const auto s = c_only.h.index_of(c_only.t.weyl().generator(0));
  const auto sq = c_only.h.left_basis(s, c_only.h.unit<mpq_class>(s), none);
  CHECK(sq == c_only.h.unit<mpq_class>(c_only.h.identity_index()));
}

TEST_CASE("quadratic relation in rank one") {
  Setup a1(Family::C, 1, 3, {0});
  REQUIRE(a1.h.dim() == 2);
  REQUIRE(a1.h.num_parameters() == 1);
  const std::vector<hecke::MPoly> u{hecke::MPoly::var(0, 1)};
  const auto s = a1.h.generator_index(0);
  const auto sq = a1.h.left_basis(s, a1.h.unit<hecke::MPoly>(s), u);
  CHECK(sq[a1.h.identity_index()] == u[0]);
  CHECK(sq[s] == u[0] - hecke::MPoly(1));
  CHECK(sq[s].to_string() == "-1 + u0");
}

TEST_CASE("associativity") {
  for (auto [f, l, q] : std::vector<std::tuple<Family, int, int>>{{Family::B, 2, 3}, {Family::C, 3, 3}, {Family::B, 3, 5}}) {
    TorusModel t(CartanDatum::make(f, l), q, 1);
    for (const auto& o : torus::orbits(t)) {
      const auto d = torus::phi_lambda(t, o.rep);
      hecke::GenericHecke h(t, d);
      const auto rep = hecke::check_associativity(h, q, 48);
      CHECK(rep.failures == 0);
      CHECK(rep.full);
      CHECK(rep.full_checked == 2 * h.dim() * h.dim() * h.dim());
    }
  }
}

TEST_CASE("trace and dual basis") {
  Setup b2(Family::B, 2, 5, {0, 0});
  CHECK(hecke::check_dual_basis(b2.h, b2.h.f(5)) == 0);
  CHECK(hecke::check_dual_basis(b2.h, b2.h.g()) == 0);
  Setup a1(Family::C, 1, 3, {0});
  // a_s^vee = q^-1 a_s
  const auto s = a1.h.generator_index(0);
  CHECK(a1.h.ind(s, a1.h.f(3).u) == 3);
  CHECK(a1.h.inverse_index(s) == s);
}

TEST_CASE("specialisation g is the group algebra") {
  for (auto lam : std::vector<Lambda>{{0, 0}, {0, 2}, {2, 0}, {2, 2}, {1, 3}}) {
    Setup s(Family::C, 2, 5, lam);
    CHECK(hecke::is_group_algebra_at_g(s.h));
    CHECK(hecke::check_group_idempotents(s.h, s.table()));
    const auto dec = hecke::decompose(s.h, s.table(), s.h.g());
    CHECK(dec.blocks.size() == s.table().table.size());
    CHECK_NOTHROW(hecke::schur_elements(dec, s.h.dim()));
  }
}

TEST_CASE("rank one blocks and Schur elements") {
  Setup a1(Family::C, 1, 3, {0});
  const auto dec = hecke::decompose(a1.h, a1.table(), a1.h.f(3));
  REQUIRE(dec.blocks.size() == 2);
  const auto s = a1.h.generator_index(0);
  std::map<int, mpq_class> by_value;
  for (const auto& b : dec.blocks) by_value[static_cast<int>(std::lround(b.values[s].real()))] = b.schur;
  CHECK(by_value.at(3) == 4);                 // trivial: 1 + q
  CHECK(by_value.at(-1) == mpq_class(4, 3));  // sign: 1 + 1/q

  const auto fns = hecke::schur_functions(a1.h, a1.table(), 1);
  std::vector<std::string> forms;
  for (const auto& f : fns) {
    REQUIRE(f.has_value());
    forms.push_back(f->to_string());
    for (int u : {1, 3, 5}) CHECK(f->eval(u) > 0);
  }
  std::sort(forms.begin(), forms.end());
  CHECK(forms == std::vector<std::string>{"1 + u^-1", "u + 1"});
}

TEST_CASE("B2 and C3 Schur elements") {
  Setup b2(Family::B, 2, 5, {0, 0});
  const auto dec = hecke::decompose(b2.h, b2.table(), b2.h.f(5));
  CHECK(dec.blocks.size() == 5);
  for (const auto& e : hecke::schur_elements(dec, 8)) CHECK(e.c > 0);
  const auto fns = hecke::schur_functions(b2.h, b2.table(), 4);
  for (const auto& f : fns) {
    REQUIRE(f.has_value());
    CHECK(f->eval(1) * b2.table().table.degrees[0] > 0);
  }
  Setup c3(Family::C, 3, 3, {0, 0, 0});
  const auto g = hecke::decompose(c3.h, c3.table(), c3.h.g());
  const auto entries = hecke::schur_elements(g, 48);
  CHECK(entries.size() == 10);
  for (const auto& e : entries) CHECK(e.c * e.eta_degree == 48);
}

TEST_CASE("series degrees against SL2 oracles") {
  for (int q : {3, 5, 7}) {
    groups::SymplecticModel m(1, q);
    const auto g = groups::symplectic_group(m);
    const auto cls = groups::conjugacy_classes(g);
    const auto tab = groups::character_table(g, cls);
    const auto b = groups::borel_subgroup(m);
    TorusModel t(CartanDatum::make(Family::C, 1), q, 1);
    hecke::DecompositionCache cache;
    for (int k = 0; k < q - 1; ++k) {
      const auto r = hecke::series_degrees(t, {k}, &cache);
      std::multiset<std::pair<std::int64_t, std::int64_t>> ours;
      mpz_class sum = 0;
      for (const auto& d : r.degrees) {
        ours.insert({d.degree.get_si(), d.eta_degree});
        sum += d.degree * d.eta_degree;
      }
      CHECK(sum == r.index_p_prime);
      CHECK(ours == oracle_constituents(m, g, cls, tab, b, {k}));
      if (k == 0) CHECK(ours == std::multiset<std::pair<std::int64_t, std::int64_t>>{{1, 1}, {q, 1}});
    }
  }
}

TEST_CASE("series degrees against the Sp4(3) oracle") {
  groups::SymplecticModel m(2, 3);
  const auto g = groups::symplectic_group(m);
  const auto cls = groups::conjugacy_classes(g);
  const auto tab = groups::character_table(g, cls);
  const auto b = groups::borel_subgroup(m);
  TorusModel t(CartanDatum::make(Family::C, 2), 3, 1);
  hecke::DecompositionCache cache;
  for (std::size_t c = 0; c < t.num_characters(); ++c) {
    const auto lam = t.decode(c);
    const auto r = hecke::series_degrees(t, lam, &cache);
    std::multiset<std::pair<std::int64_t, std::int64_t>> ours;
    for (const auto& d : r.degrees) ours.insert({d.degree.get_si(), d.eta_degree});
    CHECK(ours == oracle_constituents(m, g, cls, tab, b, lam));
  }
}

TEST_CASE("relabel_sigma") {
  TorusModel t(CartanDatum::make(Family::C, 2), 5, 1);
  const auto& w = t.weyl();
  const Lambda lam{0, 2};
  const auto d = torus::phi_lambda(t, lam);
  const auto& src = t.subgroup_table(d.w_lambda);
  for (std::size_t eta = 0; eta < src.table.size(); ++eta) {
    CHECK(hecke::relabel_sigma(src, src, eta, [](std::size_t x) { return x; }, 0, d.r_lambda, w) == eta);
    for (std::size_t n = 0; n < w.order(); ++n) {
      const auto target = torus::phi_lambda(t, t.act(n, lam));
      const auto& dst = t.subgroup_table(target.w_lambda);
      const auto ninv = w.inverse(n);
      const auto by_sigma = hecke::relabel_sigma(
          src, dst, eta, [&](std::size_t y) { return w.multiply(w.multiply(ninv, y), n); }, 0, target.r_lambda, w);
      CHECK(by_sigma == torus::relabel(t, lam, eta, n));
    }
  }
  // A nontrivial linear character that is not trivial on R must be rejected.
  const auto zero = torus::phi_lambda(t, {0, 0});
  const auto& full = t.subgroup_table(zero.w_lambda);
  std::size_t sign = 0;
  for (std::size_t r = 1; r < full.table.size(); ++r)
    if (full.table.degrees[r] == 1) sign = r;
  CHECK_THROWS_AS(hecke::relabel_sigma(full, full, 0, [](std::size_t x) { return x; }, sign, zero.r_lambda, w),
                  InvalidArgument);
}

TEST_CASE("series degrees are integral and sum to the p'-index") {
  for (auto [f, l] : std::vector<std::pair<Family, int>>{{Family::B, 2}, {Family::B, 3}, {Family::C, 3}}) {
    for (int q : {3, 5, 7}) {
      TorusModel t(CartanDatum::make(f, l), q, 1);
      hecke::DecompositionCache cache;
      for (const auto& o : torus::orbits(t)) {
        INFO("rank " << l << " q = " << q);
        const auto r = hecke::series_degrees(t, o.rep, &cache);
        mpz_class sum = 0;
        for (const auto& d : r.degrees) {
          CHECK(d.degree > 0);
          sum += d.degree * d.eta_degree;
        }
        CHECK(sum == r.index_p_prime);
        CHECK(r.index_p_prime == hecke::split_index_p_prime(t.weyl(), q));
      }
    }
  }
}

TEST_CASE("associativity beyond the full-check limit") {
  Setup b3(Family::B, 3, 3, {0, 0, 0});
  const auto rep = hecke::check_associativity(b3.h, 3, 16, 2000);
  CHECK_FALSE(rep.full);
  CHECK(rep.random_checked == 2000);
  CHECK(rep.failures == 0);
}

TEST_CASE("Schur consistency at u = 1") {
  // sum_eta eta(1) P(1) / c_eta(1) = |W(lambda)|, with P(1) = |W(lambda)|.
  for (auto lam : std::vector<Lambda>{{0, 0}, {0, 2}, {2, 2}}) {
    Setup s(Family::C, 2, 5, lam);
    const auto dec = hecke::decompose(s.h, s.table(), s.h.g());
    mpq_class sum = 0;
    for (const auto& b : dec.blocks) sum += mpq_class(b.degree * static_cast<long>(s.h.dim())) / b.schur;
    CHECK(sum == static_cast<long>(s.h.dim()));
  }
}
