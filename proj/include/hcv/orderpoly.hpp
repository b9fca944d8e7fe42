#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hcv/hecke.hpp"
#include "hcv/rootsystems.hpp"

// Order and degree polynomials kept factored over cyclotomic polynomials.
namespace hcv::orderpoly {

// c * X^a * prod_i Phi_i^{m_i}.  Negative a or m_i give rational functions.
struct CycloPoly {
  mpq_class scalar = 1;
  int xpow = 0;
  std::map<int, int> cyclo;  // no zero multiplicities stored

  static CycloPoly constant(const mpq_class& c);
  static CycloPoly x(int a);
  static CycloPoly phi(int i, int m = 1);
  static CycloPoly q_power_minus_one(int d);  // X^d - 1
  static CycloPoly q_power_plus_one(int d);   // X^d + 1

  int multiplicity(int i) const;
  bool is_polynomial() const;  // integral scalar, no negative exponents
  bool is_zero() const { return scalar == 0; }
  int degree() const;          // as a rational function: deg num - deg den
  mpq_class eval(const mpq_class& q) const;
  std::vector<mpz_class> expand() const;  // coefficients, polynomial mode only
  std::string to_string() const;

  CycloPoly& operator*=(const CycloPoly& o);
  CycloPoly& operator/=(const CycloPoly& o);
  friend CycloPoly operator*(CycloPoly a, const CycloPoly& b) { return a *= b; }
  friend CycloPoly operator/(CycloPoly a, const CycloPoly& b) { return a /= b; }
  friend bool operator==(const CycloPoly& a, const CycloPoly& b) {
    return a.scalar == b.scalar && a.xpow == b.xpow && a.cyclo == b.cyclo;
  }
};

// Phi_i(q) exactly.
mpz_class cyclotomic_value(int i, const mpz_class& q);

// 2-adic valuation of an integer or rational; nullopt for zero.
std::optional<int> val2(const mpz_class& n);
std::optional<int> val2(const mpq_class& x);

enum class Twist { Split, TwistedD, TorusMinus, TorusPlus };
std::string to_string(Twist t);
Twist parse_twist(const std::string& s);

// A connected reductive group up to isogeny: a simple factor, or a torus of
// rank `rank` split over F_q (TorusMinus) or of type (q+1)^rank (TorusPlus).
// Rank 0 is the trivial group.  D_1 and 2D_1 are read as the rank 1 tori.
struct CompleteRootDatum {
  roots::Family family = roots::Family::A;
  int rank = 0;
  Twist twist = Twist::Split;

  std::string name() const;
};

CycloPoly order_poly(const CompleteRootDatum& crd);

// A product of factors extended by a component group of the given order.
struct ProductDatum {
  std::vector<CompleteRootDatum> factors;
  int components = 1;
  std::string name() const;
};
CycloPoly order_poly(const ProductDatum& p);

// (num / den) with the X-power removed; den must divide num factorwise.
CycloPoly p_prime_part(const CycloPoly& num, const CycloPoly& den);

// |G : T|_{p'} for a split maximal torus, as a polynomial.
CycloPoly split_index(const roots::CartanDatum& datum);

// Laurent polynomial factored into cyclotomics; nullopt if a factor is not
// cyclotomic.
std::optional<CycloPoly> factor_laurent(const hecke::LaurentPoly& p);

// f' = (index)_{X'} * D * f_lambda in polynomial mode.
CycloPoly degree_polynomial(const CycloPoly& index, const CycloPoly& d_chi, const CycloPoly& f_lambda);
// Value mode when D_chi is only known at q.
mpq_class degree_value(const CycloPoly& index, const mpq_class& d_chi_at_q, const CycloPoly& f_lambda,
                       const mpq_class& q);

// Multiplicity of Phi_1 is at least r.  Throws on rational-function input.
bool x_minus_1_divisibility(const CycloPoly& f, int r);

struct TwoAdic {
  int at_q = 0;
  std::optional<int> at_1;  // nullopt for Phi_1(1) = 0
};
TwoAdic two_adic_profile(int i, const mpz_class& q);

// Evenness of a (q-1)^m; f must be prime to Phi_1 and q odd.
bool cusp_parity_check(const mpq_class& a, int m, const CycloPoly& f, const mpz_class& q);

// One line of the catalogue of disconnected centralisers of 2-central
// elements, instantiated at (l, k).
struct CentralizerRow {
  std::string row;  // catalogue key
  int l = 0, k = 0;
  CompleteRootDatum ambient;
  ProductDatum centralizer;
  std::string label() const;
};

// Catalogue keys: "B", "B-2D", "C", "D", "D-4", "2D".
const std::vector<std::string>& centralizer_rows();
// Instantiates a row for ambient rank `rank` and parameter k; throws
// InvalidArgument if (rank, k) violates the row conditions.
CentralizerRow centralizer_row(const std::string& row, int rank, int k);
// All valid instances with ambient rank <= max_rank.
std::vector<CentralizerRow> centralizer_instances(int max_rank);

struct ScanResult {
  CentralizerRow row;
  long q = 0;
  int val2_ambient = 0;
  int val2_centralizer = 0;
  bool contains_sylow2() const { return val2_centralizer == val2_ambient; }
};
// val2(|C^F|) = val2(|H^F|); q must be odd.
ScanResult centralizer_scan(const CentralizerRow& row, long q);

// (ambient / cent)_{X'} * unipotent degree.
CycloPoly jordan_degree(const CycloPoly& ambient, const CycloPoly& cent, const CycloPoly& unip_degree);

// Cuspidal unipotent degree data file.
struct CuspidalEntry {
  CompleteRootDatum group;
  CycloPoly degree;
  std::string provenance;
};
std::vector<CuspidalEntry> load_cuspidal_data(const std::string& path);
std::vector<CuspidalEntry> parse_cuspidal_data(const std::string& json_text);

}  // namespace hcv::orderpoly
