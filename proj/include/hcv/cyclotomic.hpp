#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

// Cyclotomic integers: elements of Z[zeta_n] stored in the power basis
// 1, zeta, ..., zeta^{phi(n)-1}.  Character values of finite groups live here.
namespace hcv::cyc {

class Cyc {
 public:
  Cyc() : n_(1), c_{0} {}
  Cyc(std::int64_t v) : n_(1), c_{v} {}  // NOLINT(google-explicit-constructor)

  // zeta_n^k.
  static Cyc root_of_unity(int n, long long k);
  // sum_j coeffs[j] zeta_n^j, coeffs indexed 0..n-1 (not yet reduced).
  static Cyc from_group_ring(int n, const std::vector<std::int64_t>& coeffs);

  int field() const { return n_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  std::int64_t rational_value() const;  // throws unless rational

  Cyc promote(int n) const;  // requires field() | n
  Cyc conj() const;
  Cyc galois(long long k) const;  // zeta -> zeta^k, gcd(k, n) = 1

  std::complex<double> to_complex() const;
  std::string to_string() const;

  Cyc operator-() const;
  friend Cyc operator+(const Cyc& a, const Cyc& b);
  friend Cyc operator-(const Cyc& a, const Cyc& b);
  friend Cyc operator*(const Cyc& a, const Cyc& b);
  Cyc& operator+=(const Cyc& b) { return *this = *this + b; }
  Cyc& operator*=(const Cyc& b) { return *this = *this * b; }
  friend bool operator==(const Cyc& a, const Cyc& b);

  // Multiply by an integer; division must be exact coefficientwise.
  Cyc scaled(std::int64_t num, std::int64_t den) const;

 private:
  Cyc(int n, std::vector<std::int64_t> c) : n_(n), c_(std::move(c)) {}
  int n_;
  std::vector<std::int64_t> c_;
};

int euler_phi(int n);

// Sums of cyclotomic integers of mixed fields, collected in Z[C_n] and reduced
// once.  Cheaper than repeated promotion when adding many terms.
class Accumulator {
 public:
  explicit Accumulator(int n);
  void add(const Cyc& x, std::int64_t mult = 1);
  Cyc value() const;
  int field() const { return n_; }

 private:
  int n_;
  std::vector<__int128> c_;
};

}  // namespace hcv::cyc
