#pragma once

#include <map>
#include <memory>
#include <vector>

#include "hcv/groups.hpp"
#include "hcv/rootsystems.hpp"
#include "hcv/symplectic.hpp"

// Characters of the split (d = 1) or w0-twisted (d = 2) maximal torus of a
// simply connected group, as points of (Z/m)^rank given by their values on
// the simple coroots, with the Weyl group acting through the coroot lattice.
namespace hcv::torus {

using Lambda = std::vector<int>;

// Character table of a subgroup of W realised on the roots.
struct WeylSubgroupTable {
  std::vector<std::size_t> elements;  // sorted indices into W
  std::unique_ptr<groups::FiniteGroup> group;
  groups::ConjClasses classes;
  groups::CharacterTable table;
  std::vector<std::uint32_t> class_by_position;  // class of elements[i]

  std::size_t position(std::size_t w) const;  // throws if w is not in the subgroup
  std::size_t class_of(std::size_t w) const { return class_by_position[position(w)]; }
};

class TorusModel {
 public:
  TorusModel(const roots::CartanDatum& datum, int q, int d, groups::CacheOptions cache = {});

  const roots::WeylGroup& weyl() const { return *weyl_; }
  const roots::RootSystem& roots() const { return weyl_->roots(); }
  const roots::CartanDatum& datum() const { return roots().datum(); }
  int q() const { return q_; }
  int d() const { return d_; }
  int modulus() const { return m_; }
  int rank() const { return roots().rank(); }

  std::size_t num_characters() const { return count_; }
  std::size_t encode(const Lambda& l) const;
  Lambda decode(std::size_t code) const;
  Lambda reduce(Lambda l) const;

  // <lambda, alpha^vee> mod m.
  int pairing(const Lambda& l, std::size_t root) const;
  Lambda reflect(int i, const Lambda& l) const;
  Lambda act(std::size_t w, const Lambda& l) const;
  // Transport by a diagram automorphism: (gamma l)_{gamma(i)} = l_i.
  Lambda act(const roots::DiagramAut& g, const Lambda& l) const;
  // s_i^2 = 1 and the braid relations on the whole lattice.
  bool action_relations_hold() const;

  // Memoised character table of a subgroup of W.
  const WeylSubgroupTable& subgroup_table(const std::vector<std::size_t>& elements) const;

 private:
  std::shared_ptr<const roots::WeylGroup> weyl_;
  int q_, d_, m_;
  std::size_t count_;
  groups::CacheOptions cache_;
  mutable std::map<std::vector<std::size_t>, std::unique_ptr<WeylSubgroupTable>> tables_;
};

// Sorted W indices of the stabiliser W(lambda).
std::vector<std::size_t> stabilizer(const TorusModel& t, const Lambda& l);

struct RelWeylData {
  Lambda lambda;
  std::vector<std::size_t> w_lambda;   // sorted
  std::vector<std::size_t> phi;        // roots with <lambda, alpha^vee> = 0
  std::vector<std::size_t> delta;      // simple system of phi
  std::vector<std::size_t> r_lambda;   // reflection subgroup, sorted
  std::vector<std::size_t> c_lambda;   // stabiliser of delta in W(lambda), sorted
  std::vector<int> parameter_class;    // per delta entry: W(lambda)-orbit index
  int num_parameters = 0;
  std::vector<bool> in_phi;            // per root

  // p_{alpha,lambda} exponent: 1 (p = q) on phi, 0 (p = 1) elsewhere.
  int p_exponent(std::size_t root) const { return in_phi[root] ? 1 : 0; }
};

// Computes phi, its base, R and C, and checks W(lambda) = R x| C.
RelWeylData phi_lambda(const TorusModel& t, const Lambda& l);

struct Orbit {
  Lambda rep;  // smallest code in the orbit
  std::size_t size = 0;
};
std::vector<Orbit> orbits(const TorusModel& t);

enum class Parity { All, Odd };

struct LocalLabel {
  Lambda lambda;
  std::size_t orbit_size = 0;
  std::size_t w_lambda_order = 0;
  std::size_t eta = 0;
  std::int64_t eta_degree = 0;
  std::int64_t degree = 0;  // |W : W(lambda)| eta(1)
};

struct LocalCount {
  std::size_t total = 0;
  std::size_t odd = 0;
  std::size_t orbits = 0;
  std::vector<LocalLabel> labels;  // filtered by the requested parity
};

// Irr(N) through pairs (lambda, eta) up to W-conjugacy.
LocalCount local_count(const TorusModel& t, Parity parity);

// d_2(q): 1 if q = 1 mod 4, else 2.
int d2(int q);

struct LeviSeriesEntry {
  Lambda lambda1;  // character of the (q-1)^{l-1} torus, C_{l-1} pairing coordinates
  std::size_t zeta = 0;  // cuspidal character of SL2(q)
  std::int64_t zeta_degree = 0;
  std::size_t w_lambda_order = 0;
  std::size_t num_eta = 0;
};

struct LeviSeries {
  int l = 0, q = 0;
  std::vector<std::size_t> cuspidals;  // rows of the SL2(q) table
  std::vector<std::int64_t> cuspidal_degrees;
  std::vector<LeviSeriesEntry> entries;  // one per lambda1 orbit and cuspidal
};

// Epsilon coordinates mu of a type C character: lambda_i = mu_i - mu_{i+1}, lambda_l = mu_l.
std::vector<int> epsilon_coordinates(const Lambda& l, int m);

// Ind_B^G of the inflation of lambda (type C pairing coordinates mod q-1)
// in the symplectic matrix model.
groups::ClassFunction induce_principal(const groups::SymplecticModel& m, const groups::FiniteGroup& g,
                                       const groups::ConjClasses& gcl, const groups::FiniteGroup& borel,
                                       const Lambda& l);

// Cuspidal characters of SL2(q): orthogonal to Ind_B(theta) for every linear theta.
std::vector<std::size_t> sl2_cuspidals(const groups::SymplecticModel& m, const groups::FiniteGroup& g,
                                       const groups::ConjClasses& cls, const groups::CharacterTable& t,
                                       const groups::FiniteGroup& borel);

// Series above L = T_1 x SL2(q) in Sp_{2l}(q).
LeviSeries typeC_levi_series(int l, int q, const groups::CacheOptions& cache = {});

// Irreducible eta' of W(w lambda) with eta'(w x w^-1) = eta(x).
std::size_t relabel(const TorusModel& t, const Lambda& l, std::size_t eta, std::size_t w);

}  // namespace hcv::torus
