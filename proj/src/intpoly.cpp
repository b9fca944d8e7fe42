#include "hcv/intpoly.hpp"

#include <map>
#include <mutex>

#include "hcv/error.hpp"

namespace hcv::intpoly {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly multiply(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

bool divide_exact(const Poly& num, const Poly& den, Poly& quotient) {
  Poly rem = num;
  trim(rem);
  if (den.empty() || den.back() != 1) throw InvalidArgument("divide_exact: divisor must be monic");
  if (rem.size() < den.size()) {
    quotient.clear();
    return rem.empty();
  }
  quotient.assign(rem.size() - den.size() + 1, 0);
  for (std::size_t k = rem.size() - 1;; --k) {
    const std::int64_t c = rem[k];
    const std::size_t shift = k - (den.size() - 1);
    quotient[shift] = c;
    if (c != 0)
      for (std::size_t j = 0; j < den.size(); ++j) rem[shift + j] -= c * den[j];
    if (k == den.size() - 1) break;
  }
  trim(rem);
  trim(quotient);
  return rem.empty();
}

std::vector<int> divisors(int n) {
  std::vector<int> d;
  for (int i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

const Poly& cyclotomic(int n) {
  static std::map<int, Poly> cache;
  static std::mutex mu;
  if (n < 1) throw InvalidArgument("cyclotomic: index must be positive");
  {
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  Poly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d : divisors(n)) {
    if (d == n) break;
    Poly q;
    if (!divide_exact(p, cyclotomic(d), q)) throw Falsification("cyclotomic: X^n-1 not divisible by Phi_d");
    p = std::move(q);
  }
  std::lock_guard lock(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

Poly charpoly(const std::vector<std::vector<std::int64_t>>& a) {
  // Faddeev-LeVerrier; the divisions by k are exact over the integers.
  const std::size_t n = a.size();
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, 0));
  Poly c(n + 1, 0);
  c[n] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<std::int64_t>> am(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::int64_t s = 0;
        for (std::size_t t = 0; t < n; ++t) s += a[i][t] * m[t][j];
        am[i][j] = s;
      }
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = am;
    std::int64_t tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < n; ++t) tr += a[i][t] * m[t][i];
    if (tr % static_cast<std::int64_t>(k) != 0) throw Falsification("charpoly: inexact division");
    c[n - k] = -tr / static_cast<std::int64_t>(k);
  }
  return c;
}

std::vector<std::pair<int, int>> cyclotomic_factorisation(Poly p, int max_index) {
  trim(p);
  if (p.empty() || p.back() != 1) throw InvalidArgument("cyclotomic_factorisation: polynomial must be monic");
  std::vector<std::pair<int, int>> out;
  for (int d = 1; d <= max_index && p.size() > 1; ++d) {
    int m = 0;
    Poly q;
    while (p.size() > 1 && divide_exact(p, cyclotomic(d), q)) {
      p = q;
      ++m;
    }
    if (m > 0) out.emplace_back(d, m);
  }
  if (p.size() != 1) throw Falsification("cyclotomic_factorisation: non-cyclotomic factor remains");
  return out;
}

}  // namespace hcv::intpoly
