#pragma once

#include <gmpxx.h>

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hcv/torus.hpp"

// The algebra with basis a_w (w in W(lambda) = R(lambda) x| C(lambda)):
//   a_x a_w = a_{xw}, a_w a_x = a_{wx}           for x in C(lambda),
//   a_s a_w = a_{sw}                               if w^-1(alpha_s) > 0,
//   a_s a_w = u_s a_{sw} + (u_s - 1) a_w           otherwise,
// for the simple reflections s of R(lambda), one symbol u per W(lambda)-orbit.
namespace hcv::hecke {

inline constexpr std::size_t kDefaultHeckeCap = 384;

// Polynomial in the parameter symbols with integer coefficients.
class MPoly {
 public:
  MPoly() = default;
  MPoly(long long c);  // NOLINT: scalar embedding
  static MPoly var(int k, int nvars);

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::string to_string() const;

 private:
  void add(const std::vector<int>& e, const mpz_class& c);
  std::map<std::vector<int>, mpz_class> terms_;
};

struct Specialization {
  std::string tag;            // "f", "g" or "custom"
  std::vector<mpq_class> u;   // value per symbol, positive
};

class GenericHecke {
 public:
  GenericHecke(const torus::TorusModel& t, const torus::RelWeylData& d, std::size_t cap = kDefaultHeckeCap);

  const roots::WeylGroup& weyl() const { return *weyl_; }
  std::size_t dim() const { return basis_.size(); }
  int num_parameters() const { return nparams_; }
  int num_generators() const { return static_cast<int>(symbol_.size()); }
  int symbol(int k) const { return symbol_[static_cast<std::size_t>(k)]; }
  const std::vector<std::size_t>& elements() const { return basis_; }  // W indices
  std::size_t element(std::size_t b) const { return basis_[b]; }
  std::size_t index_of(std::size_t w) const;
  std::size_t identity_index() const { return identity_; }
  std::size_t inverse_index(std::size_t b) const { return inverse_[b]; }
  std::size_t generator_index(int k) const { return gen_basis_[static_cast<std::size_t>(k)]; }
  const std::vector<std::size_t>& complement() const { return clist_; }  // basis indices of C(lambda)
  // a_b = a_{s_1} ... a_{s_k} a_c with (s_1..s_k) reduced in R(lambda).
  const std::vector<int>& reduced_word(std::size_t b) const { return word_[b]; }
  std::size_t c_part(std::size_t b) const { return cpart_[b]; }
  // ind(a_b) = product of u over the reduced word, as symbol exponents.
  const std::vector<int>& ind_exponents(std::size_t b) const { return ind_exp_[b]; }

  Specialization f(int q) const;
  Specialization g() const;

  template <class S>
  std::vector<S> unit(std::size_t b) const {
    std::vector<S> v(dim(), S(0));
    v[b] = S(1);
    return v;
  }

  template <class S>
  std::vector<S> left_generator(int k, const std::vector<S>& y, const std::vector<S>& u) const {
    const auto uk = static_cast<std::size_t>(k);
    const S& us = u[static_cast<std::size_t>(symbol_[uk])];
    std::vector<S> out(dim(), S(0));
    for (std::size_t w = 0; w < dim(); ++w) {
      if (y[w] == S(0)) continue;
      const std::size_t sw = lmul_[uk][w];
      if (lup_[uk][w]) {
        out[sw] += y[w];
      } else {
        out[sw] += us * y[w];
        out[w] += (us - S(1)) * y[w];
      }
    }
    return out;
  }

  template <class S>
  std::vector<S> right_generator(const std::vector<S>& y, int k, const std::vector<S>& u) const {
    const auto uk = static_cast<std::size_t>(k);
    const S& us = u[static_cast<std::size_t>(symbol_[uk])];
    std::vector<S> out(dim(), S(0));
    for (std::size_t w = 0; w < dim(); ++w) {
      if (y[w] == S(0)) continue;
      const std::size_t ws = rmul_[uk][w];
      if (rup_[uk][w]) {
        out[ws] += y[w];
      } else {
        out[ws] += us * y[w];
        out[w] += (us - S(1)) * y[w];
      }
    }
    return out;
  }

  // a_b y
  template <class S>
  std::vector<S> left_basis(std::size_t b, const std::vector<S>& y, const std::vector<S>& u) const {
    std::vector<S> out = permute(cleft_[cpos_[cpart_[b]]], y);
    const auto& word = word_[b];
    for (auto it = word.rbegin(); it != word.rend(); ++it) out = left_generator(*it, out, u);
    return out;
  }

  // y a_b
  template <class S>
  std::vector<S> right_basis(const std::vector<S>& y, std::size_t b, const std::vector<S>& u) const {
    std::vector<S> out = y;
    for (int k : word_[b]) out = right_generator(out, k, u);
    return permute(cright_[cpos_[cpart_[b]]], out);
  }

  template <class S>
  std::vector<S> multiply(const std::vector<S>& x, const std::vector<S>& y, const std::vector<S>& u) const {
    std::vector<S> out(dim(), S(0));
    for (std::size_t v = 0; v < dim(); ++v) {
      if (x[v] == S(0)) continue;
      const auto p = left_basis(v, y, u);
      for (std::size_t i = 0; i < dim(); ++i)
        if (!(p[i] == S(0))) out[i] += x[v] * p[i];
    }
    return out;
  }

  template <class S>
  S ind(std::size_t b, const std::vector<S>& u) const {
    S r(1);
    for (int k : word_[b]) r = r * u[static_cast<std::size_t>(symbol_[static_cast<std::size_t>(k)])];
    return r;
  }

  // Sum_w a_w x a_w^vee with a_w^vee = ind(w)^-1 a_{w^-1}; central, acting on
  // the block of eta by c_eta * eta(x).  Requires a field of scalars.
  template <class S>
  std::vector<S> casimir(const std::vector<S>& x, const std::vector<S>& u) const {
    std::vector<S> z(dim(), S(0));
    for (std::size_t w = 0; w < dim(); ++w) {
      const auto y = left_basis(w, right_basis(x, inverse_[w], u), u);
      const S inv = S(1) / ind(w, u);
      for (std::size_t i = 0; i < dim(); ++i) z[i] += y[i] * inv;
    }
    return z;
  }

 private:
  template <class S>
  static std::vector<S> permute(const std::vector<std::uint32_t>& p, const std::vector<S>& y) {
    std::vector<S> out(y.size(), S(0));
    for (std::size_t w = 0; w < y.size(); ++w) out[p[w]] = y[w];
    return out;
  }

  const roots::WeylGroup* weyl_ = nullptr;
  std::vector<std::size_t> basis_;
  std::map<std::size_t, std::size_t> pos_;
  std::size_t identity_ = 0;
  int nparams_ = 0;
  std::vector<int> symbol_;
  std::vector<std::size_t> gen_basis_;
  std::vector<std::vector<std::uint32_t>> lmul_, rmul_;
  std::vector<std::vector<bool>> lup_, rup_;
  std::vector<std::vector<int>> word_;
  std::vector<std::size_t> cpart_, inverse_;
  std::vector<std::vector<int>> ind_exp_;
  std::vector<std::size_t> clist_;
  std::vector<std::size_t> cpos_;  // position in clist_ per basis index (only C entries used)
  std::vector<std::vector<std::uint32_t>> cleft_, cright_;
};

struct AssociativityReport {
  std::size_t generic_checked = 0;  // (generator, generator, basis) triples over MPoly
  std::size_t full_checked = 0;     // all basis triples at the f and g points
  std::size_t rule_checked = 0;     // left rule against right rule
  std::size_t random_checked = 0;   // random basis triples at u = q when dim > full_limit
  std::size_t failures = 0;
  bool full = false;
};

// Generic check on generator triples, and all triples when dim <= full_limit;
// above that, random_triples random basis triples at u = q.
AssociativityReport check_associativity(const GenericHecke& h, int q, std::size_t full_limit = 48,
                                        std::size_t random_triples = 10000);

// tau(a_w) = delta_{w,1}; dual a_w^vee = ind(w)^-1 a_{w^-1}.  Returns the Gram
// matrix deviation count of <a_v, a_w^vee> from the identity.
std::size_t check_dual_basis(const GenericHecke& h, const Specialization& s);

// At u = 1 the structure constants are the multiplication of W(lambda).
bool is_group_algebra_at_g(const GenericHecke& h);

// Central idempotents from Irr(W(lambda)) are idempotent in the u = 1 algebra.
bool check_group_idempotents(const GenericHecke& h, const torus::WeylSubgroupTable& tab);

struct Block {
  std::size_t eta = 0;              // row of the W(lambda) table
  std::int64_t degree = 0;          // eta(1)
  mpq_class schur;                  // c_eta, exact
  std::vector<std::complex<double>> values;  // chi_eta(a_w) per basis element
};

struct SemisimpleDecomposition {
  Specialization spec;
  std::vector<Block> blocks;  // ordered by eta
  std::size_t homotopy_steps = 0;
};

// Blocks at the target specialisation, labelled by Irr(W(lambda)) through a
// parameter homotopy starting at u = 1.  Schur elements are certified
// exactly: c_eta eta(1) are the eigenvalues of left multiplication by
// the Casimir element of 1 with multiplicities sum eta(1)^2, and
// sum eta(1)/c_eta = 1.
SemisimpleDecomposition decompose(const GenericHecke& h, const torus::WeylSubgroupTable& tab,
                                  const Specialization& target);
// Same along a path visiting every target in order.
std::vector<SemisimpleDecomposition> decompose_path(const GenericHecke& h, const torus::WeylSubgroupTable& tab,
                                                    const std::vector<Specialization>& targets);

struct SchurEntry {
  std::size_t eta = 0;
  std::int64_t eta_degree = 0;
  mpq_class c;
  mpq_class d;  // 1/c
  std::string epsilon = "unknown";
};
// At g asserts c = |W(lambda)|/eta(1).
std::vector<SchurEntry> schur_elements(const SemisimpleDecomposition& dec, std::size_t group_order);

// One-parameter Laurent polynomial sum_i coeffs[i] u^{low+i}.
struct LaurentPoly {
  int low = 0;
  std::vector<mpq_class> coeffs;
  mpq_class eval(const mpq_class& u) const;
  std::string to_string() const;
};

// c_eta(u) with all symbols equal, from exact values at u = 1, 2, ...,
// checked at one extra point; nullopt if the check fails.
std::vector<std::optional<LaurentPoly>> schur_functions(const GenericHecke& h, const torus::WeylSubgroupTable& tab,
                                                        int max_exponent);

struct SeriesDegree {
  std::size_t eta = 0;
  std::int64_t eta_degree = 0;
  mpq_class schur;
  mpz_class degree;  // |G:T|_{p'} / c_eta
};

struct SeriesResult {
  torus::Lambda lambda;
  std::size_t w_lambda_order = 0;
  mpz_class index_p_prime;  // |G:T|_{p'}
  std::vector<SeriesDegree> degrees;
};

// Memo of decompositions keyed by W(lambda), its base and q.
class DecompositionCache {
 public:
  const SemisimpleDecomposition& get(const torus::TorusModel& t, const torus::RelWeylData& d);

 private:
  std::map<std::tuple<std::vector<std::size_t>, std::vector<std::size_t>, int>, SemisimpleDecomposition> memo_;
};

// Principal-series degrees of the split group (d = 1).
SeriesResult series_degrees(const torus::TorusModel& t, const torus::Lambda& l, DecompositionCache* cache = nullptr);

// |G:T|_{p'} = prod (q^{d_i} - 1) / (q - 1)^rank.
mpz_class split_index_p_prime(const roots::WeylGroup& w, int q);

// eta' = (eta o sigma^-1) delta^-1 on W(sigma lambda); delta must be a linear
// character trivial on R(sigma lambda).
std::size_t relabel_sigma(const torus::WeylSubgroupTable& src, const torus::WeylSubgroupTable& dst, std::size_t eta,
                          const std::function<std::size_t(std::size_t)>& sigma_inverse, std::size_t delta,
                          const std::vector<std::size_t>& r_target, const roots::WeylGroup& w);

}  // namespace hcv::hecke
