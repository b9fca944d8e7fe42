#include "hcv/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "hcv/error.hpp"
#include "hcv/intpoly.hpp"

namespace hcv::cyc {

namespace {

std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error("cyclotomic coefficient overflow");
  return static_cast<std::int64_t>(v);
}

// Reduce sum_j a[j] X^j modulo Phi_n.
std::vector<std::int64_t> reduce(int n, std::vector<__int128> a) {
  const auto& phi = intpoly::cyclotomic(n);
  const std::size_t d = phi.size() - 1;
  for (std::size_t k = a.size(); k-- > d;) {
    const __int128 c = a[k];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j) a[k - d + j] -= c * phi[j];
  }
  std::vector<std::int64_t> out(d, 0);
  for (std::size_t j = 0; j < d && j < a.size(); ++j) out[j] = narrow(a[j]);
  return out;
}

long long mod(long long a, long long n) {
  a %= n;
  return a < 0 ? a + n : a;
}

}  // namespace

int euler_phi(int n) { return static_cast<int>(intpoly::cyclotomic(n).size()) - 1; }

Cyc Cyc::root_of_unity(int n, long long k) {
  if (n < 1) throw InvalidArgument("root_of_unity: n must be positive");
  std::vector<__int128> a(static_cast<std::size_t>(n), 0);
  a[static_cast<std::size_t>(mod(k, n))] = 1;
  return Cyc(n, reduce(n, std::move(a)));
}

Cyc Cyc::from_group_ring(int n, const std::vector<std::int64_t>& coeffs) {
  std::vector<__int128> a(static_cast<std::size_t>(n), 0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) a[j % static_cast<std::size_t>(n)] += coeffs[j];
  return Cyc(n, reduce(n, std::move(a)));
}

bool Cyc::is_zero() const {
  for (auto v : c_)
    if (v != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (std::size_t j = 1; j < c_.size(); ++j)
    if (c_[j] != 0) return false;
  return true;
}

std::int64_t Cyc::rational_value() const {
  if (!is_rational()) throw InvalidArgument("cyclotomic value is not rational: " + to_string());
  return c_[0];
}

Cyc Cyc::promote(int n) const {
  if (n % n_ != 0) throw InvalidArgument("promote: field does not divide target");
  if (n == n_) return *this;
  const auto step = static_cast<std::size_t>(n / n_);
  std::vector<__int128> a(static_cast<std::size_t>(n), 0);
  for (std::size_t j = 0; j < c_.size(); ++j) a[j * step] = c_[j];
  return Cyc(n, reduce(n, std::move(a)));
}

Cyc Cyc::galois(long long k) const {
  if (std::gcd(static_cast<long long>(n_), k) != 1 && n_ > 1) throw InvalidArgument("galois: exponent not a unit");
  std::vector<__int128> a(static_cast<std::size_t>(n_), 0);
  for (std::size_t j = 0; j < c_.size(); ++j) a[static_cast<std::size_t>(mod(static_cast<long long>(j) * k, n_))] += c_[j];
  return Cyc(n_, reduce(n_, std::move(a)));
}

Cyc Cyc::conj() const { return galois(-1); }

std::complex<double> Cyc::to_complex() const {
  std::complex<double> s = 0;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / n_;
    s += static_cast<double>(c_[j]) * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return s;
}

std::string Cyc::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    const auto v = c_[j];
    if (v == 0) continue;
    if (!first) os << (v > 0 ? "+" : "-");
    else if (v < 0) os << "-";
    const auto a = v < 0 ? -v : v;
    if (j == 0) os << a;
    else {
      if (a != 1) os << a << "*";
      os << "E(" << n_ << ")";
      if (j != 1) os << "^" << j;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

Cyc Cyc::operator-() const {
  Cyc r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Cyc operator+(const Cyc& a, const Cyc& b) {
  if (a.n_ != b.n_) {
    const int n = std::lcm(a.n_, b.n_);
    return a.promote(n) + b.promote(n);
  }
  Cyc r = a;
  for (std::size_t j = 0; j < r.c_.size(); ++j) r.c_[j] = narrow(static_cast<__int128>(r.c_[j]) + b.c_[j]);
  return r;
}

Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }

Cyc operator*(const Cyc& a, const Cyc& b) {
  if (a.n_ != b.n_) {
    const int n = std::lcm(a.n_, b.n_);
    return a.promote(n) * b.promote(n);
  }
  if (a.n_ == 1) return Cyc(narrow(static_cast<__int128>(a.c_[0]) * b.c_[0]));
  std::vector<__int128> p(a.c_.size() + b.c_.size(), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) p[i + j] += static_cast<__int128>(a.c_[i]) * b.c_[j];
  }
  return Cyc(a.n_, reduce(a.n_, std::move(p)));
}

bool operator==(const Cyc& a, const Cyc& b) {
  if (a.n_ != b.n_) {
    const int n = std::lcm(a.n_, b.n_);
    return a.promote(n).c_ == b.promote(n).c_;
  }
  return a.c_ == b.c_;
}

Cyc Cyc::scaled(std::int64_t num, std::int64_t den) const {
  if (den == 0) throw InvalidArgument("scaled: zero denominator");
  Cyc r = *this;
  for (auto& v : r.c_) {
    const __int128 t = static_cast<__int128>(v) * num;
    if (t % den != 0) throw InvalidArgument("scaled: inexact division");
    v = narrow(t / den);
  }
  return r;
}

Accumulator::Accumulator(int n) : n_(n), c_(static_cast<std::size_t>(n), 0) {}

void Accumulator::add(const Cyc& x, std::int64_t mult) {
  if (n_ % x.field() != 0) throw InvalidArgument("Accumulator: field does not divide accumulator order");
  const auto step = static_cast<std::size_t>(n_ / x.field());
  const auto& c = x.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] != 0) c_[j * step] += static_cast<__int128>(c[j]) * mult;
}

Cyc Accumulator::value() const {
  std::vector<std::int64_t> tmp(c_.size());
  // Reduce directly from the wide accumulator.
  std::vector<__int128> a = c_;
  const auto& phi = intpoly::cyclotomic(n_);
  const std::size_t d = phi.size() - 1;
  for (std::size_t k = a.size(); k-- > d;) {
    const __int128 c = a[k];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j) a[k - d + j] -= c * phi[j];
  }
  for (std::size_t j = 0; j < tmp.size(); ++j) tmp[j] = j < d ? narrow(a[j]) : 0;
  tmp.resize(d);
  return Cyc::from_group_ring(n_, tmp);
}

}  // namespace hcv::cyc
