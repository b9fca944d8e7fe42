#include "hcv/symplectic.hpp"

#include <array>

#include "hcv/error.hpp"

namespace hcv::groups {

namespace {

int mod(long long a, int q) {
  a %= q;
  return static_cast<int>(a < 0 ? a + q : a);
}

int inv_mod(int a, int q) {
  for (int x = 1; x < q; ++x)
    if (mod(static_cast<long long>(a) * x, q) == 1) return x;
  throw InvalidArgument("no inverse modulo q");
}

}  // namespace

SymplecticModel::SymplecticModel(int l, int q) : l_(l), q_(q), nu_(0), u_(Universe::matrices(2 * l, q)) {
  if (l < 1) throw InvalidArgument("symplectic rank must be positive");
  if (q % 2 == 0) throw Unsupported("only odd q is supported");
  const auto n = static_cast<std::size_t>(2 * l);
  form_.assign(n * n, 0);
  for (int i = 0; i < l; ++i) {
    form_[e(i) * n + f(i)] = 1;
    form_[f(i) * n + e(i)] = static_cast<std::uint8_t>(q - 1);
  }
  for (int g = 2; g < q; ++g) {
    int x = 1, ord = 0;
    do {
      x = mod(static_cast<long long>(x) * g, q);
      ++ord;
    } while (x != 1);
    if (ord == q - 1) {
      nu_ = g;
      break;
    }
  }
  if (nu_ == 0) throw Falsification("no primitive root found");
  log_.assign(static_cast<std::size_t>(q), -1);
  for (int k = 0, x = 1; k < q - 1; ++k, x = mod(static_cast<long long>(x) * nu_, q)) log_[static_cast<std::size_t>(x)] = k;
}

bool SymplecticModel::preserves_form(std::span<const std::uint8_t> g) const {
  // g^T J g == J
  const Bytes gt = [&] {
    const auto n = static_cast<std::size_t>(2 * l_);
    Bytes t(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t[i * n + j] = g[j * n + i];
    return t;
  }();
  return u_.multiply(u_.multiply(gt, form_), g) == form_;
}

Bytes SymplecticModel::root_element(const std::vector<int>& eps, int t) const {
  if (eps.size() != static_cast<std::size_t>(l_)) throw InvalidArgument("root has wrong length");
  std::vector<int> plus, minus, two_plus, two_minus;
  for (int i = 0; i < l_; ++i) {
    switch (eps[static_cast<std::size_t>(i)]) {
      case 0: break;
      case 1: plus.push_back(i); break;
      case -1: minus.push_back(i); break;
      case 2: two_plus.push_back(i); break;
      case -2: two_minus.push_back(i); break;
      default: throw InvalidArgument("not a root of type C");
    }
  }
  // Pairs of matrix units (row, col); the second gets a sign fixed below.
  std::vector<std::array<std::size_t, 2>> units;
  if (two_plus.size() == 1 && plus.empty() && minus.empty() && two_minus.empty()) {
    units.push_back({e(two_plus[0]), f(two_plus[0])});
  } else if (two_minus.size() == 1 && plus.empty() && minus.empty() && two_plus.empty()) {
    units.push_back({f(two_minus[0]), e(two_minus[0])});
  } else if (plus.size() == 1 && minus.size() == 1) {
    const int i = plus[0], j = minus[0];
    units.push_back({e(i), e(j)});
    units.push_back({f(j), f(i)});
  } else if (plus.size() == 2 && minus.empty()) {
    const int i = plus[0], j = plus[1];
    units.push_back({e(i), f(j)});
    units.push_back({e(j), f(i)});
  } else if (minus.size() == 2 && plus.empty()) {
    const int i = minus[0], j = minus[1];
    units.push_back({f(j), e(i)});
    units.push_back({f(i), e(j)});
  } else {
    throw InvalidArgument("not a root of type C");
  }
  const auto n = static_cast<std::size_t>(2 * l_);
  for (int sign : {1, -1}) {
    Bytes x = u_.identity();
    x[units[0][0] * n + units[0][1]] = static_cast<std::uint8_t>(mod(t, q_));
    if (units.size() == 2) x[units[1][0] * n + units[1][1]] = static_cast<std::uint8_t>(mod(sign * t, q_));
    if (preserves_form(x)) return x;
  }
  throw Falsification("no sign makes the root element symplectic");
}

std::vector<int> SymplecticModel::simple_root(int i) const {
  std::vector<int> r(static_cast<std::size_t>(l_), 0);
  if (i < l_ - 1) {
    r[static_cast<std::size_t>(i)] = 1;
    r[static_cast<std::size_t>(i + 1)] = -1;
  } else {
    r[static_cast<std::size_t>(i)] = 2;
  }
  return r;
}

std::vector<std::vector<int>> SymplecticModel::positive_roots() const {
  std::vector<std::vector<int>> out;
  const auto L = static_cast<std::size_t>(l_);
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = i + 1; j < L; ++j) {
      std::vector<int> a(L, 0), b(L, 0);
      a[i] = 1;
      a[j] = -1;
      b[i] = 1;
      b[j] = 1;
      out.push_back(a);
      out.push_back(b);
    }
  for (std::size_t i = 0; i < L; ++i) {
    std::vector<int> c(L, 0);
    c[i] = 2;
    out.push_back(c);
  }
  return out;
}

Bytes SymplecticModel::x_simple(int i, int t) const { return root_element(simple_root(i), t); }

Bytes SymplecticModel::x_neg_simple(int i, int t) const {
  auto r = simple_root(i);
  for (auto& v : r) v = -v;
  return root_element(r, t);
}

Bytes SymplecticModel::n_simple(int i, int t) const {
  const int ti = inv_mod(mod(t, q_), q_);
  return u_.multiply(u_.multiply(x_simple(i, t), x_neg_simple(i, -ti)), x_simple(i, t));
}

Bytes SymplecticModel::h_simple(int i, int t) const {
  std::vector<int> d(static_cast<std::size_t>(l_), 1);
  t = mod(t, q_);
  if (i < l_ - 1) {
    d[static_cast<std::size_t>(i)] = t;
    d[static_cast<std::size_t>(i + 1)] = inv_mod(t, q_);
  } else {
    d[static_cast<std::size_t>(i)] = t;
  }
  return torus_element(d);
}

Bytes SymplecticModel::torus_element(const std::vector<int>& t) const {
  const auto n = static_cast<std::size_t>(2 * l_);
  Bytes x(n * n, 0);
  for (int i = 0; i < l_; ++i) {
    const int v = mod(t[static_cast<std::size_t>(i)], q_);
    if (v == 0) throw InvalidArgument("torus entries must be units");
    x[e(i) * n + e(i)] = static_cast<std::uint8_t>(v);
    x[f(i) * n + f(i)] = static_cast<std::uint8_t>(inv_mod(v, q_));
  }
  return x;
}

std::vector<int> SymplecticModel::torus_coordinates(std::span<const std::uint8_t> g) const {
  const auto n = static_cast<std::size_t>(2 * l_);
  std::vector<int> out;
  for (int i = 0; i < l_; ++i) {
    const int v = g[e(i) * n + e(i)];
    if (v == 0) throw InvalidArgument("torus_coordinates: zero diagonal entry");
    out.push_back(log_[static_cast<std::size_t>(v)]);
  }
  return out;
}

std::vector<Bytes> SymplecticModel::chevalley_generators() const {
  std::vector<Bytes> g;
  for (int i = 0; i < l_; ++i) {
    g.push_back(x_simple(i, 1));
    g.push_back(x_neg_simple(i, 1));
  }
  return g;
}

Bytes SymplecticModel::plane_element(int i, int a, int b, int c, int d) const {
  const auto n = static_cast<std::size_t>(2 * l_);
  Bytes x = u_.identity();
  x[e(i) * n + e(i)] = static_cast<std::uint8_t>(mod(a, q_));
  x[e(i) * n + f(i)] = static_cast<std::uint8_t>(mod(b, q_));
  x[f(i) * n + e(i)] = static_cast<std::uint8_t>(mod(c, q_));
  x[f(i) * n + f(i)] = static_cast<std::uint8_t>(mod(d, q_));
  return x;
}

Bytes SymplecticModel::plane_swap(int i, int j) const {
  const auto n = static_cast<std::size_t>(2 * l_);
  Bytes x(n * n, 0);
  std::vector<std::size_t> p(n);
  for (std::size_t k = 0; k < n; ++k) p[k] = k;
  std::swap(p[e(i)], p[e(j)]);
  std::swap(p[f(i)], p[f(j)]);
  for (std::size_t k = 0; k < n; ++k) x[p[k] * n + k] = 1;
  return x;
}

FiniteGroup symplectic_group(const SymplecticModel& m) {
  auto gens = m.chevalley_generators();
  for (const auto& g : gens)
    if (!m.preserves_form(g)) throw Falsification("Chevalley generator does not preserve the form");
  return FiniteGroup(m.universe(), std::move(gens));
}

namespace {

std::vector<Bytes> torus_generators(const SymplecticModel& m, int upto) {
  std::vector<Bytes> g;
  for (int i = 0; i < upto; ++i) {
    std::vector<int> t(static_cast<std::size_t>(m.rank()), 1);
    t[static_cast<std::size_t>(i)] = m.primitive_root();
    g.push_back(m.torus_element(t));
  }
  if (g.empty()) g.push_back(m.universe().identity());
  return g;
}

// An element of order q+1 in SL_2(q) and an element inverting it.
std::pair<std::array<int, 4>, std::array<int, 4>> nonsplit_pair(int q) {
  auto mul = [q](const std::array<int, 4>& x, const std::array<int, 4>& y) {
    return std::array<int, 4>{mod(x[0] * y[0] + x[1] * y[2], q), mod(x[0] * y[1] + x[1] * y[3], q),
                              mod(x[2] * y[0] + x[3] * y[2], q), mod(x[2] * y[1] + x[3] * y[3], q)};
  };
  const std::array<int, 4> id{1, 0, 0, 1};
  std::vector<std::array<int, 4>> sl2;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c)
        for (int d = 0; d < q; ++d)
          if (mod(a * d - b * c, q) == 1) sl2.push_back({a, b, c, d});
  for (const auto& s : sl2) {
    int ord = 1;
    auto x = s;
    while (x != id) {
      x = mul(x, s);
      ++ord;
    }
    if (ord != q + 1) continue;
    std::array<int, 4> sinv = s;
    for (int k = 0; k < q - 1; ++k) sinv = mul(sinv, s);  // s^q = s^-1
    for (const auto& n : sl2) {
      const std::array<int, 4> ninv{n[3], mod(-n[1], q), mod(-n[2], q), n[0]};
      if (mul(mul(n, s), ninv) == sinv) return {s, n};
    }
  }
  throw Falsification("SL2(q) has no inverted element of order q+1");
}

}  // namespace

FiniteGroup split_torus(const SymplecticModel& m) {
  return FiniteGroup(m.universe(), torus_generators(m, m.rank()));
}

FiniteGroup borel_subgroup(const SymplecticModel& m) {
  auto g = torus_generators(m, m.rank());
  for (const auto& r : m.positive_roots()) g.push_back(m.root_element(r, 1));
  return FiniteGroup(m.universe(), std::move(g));
}

FiniteGroup monomial_subgroup(const SymplecticModel& m) {
  auto g = torus_generators(m, m.rank());
  for (int i = 0; i < m.rank(); ++i) g.push_back(m.n_simple(i, 1));
  return FiniteGroup(m.universe(), std::move(g));
}

FiniteGroup levi_subgroup(const SymplecticModel& m) {
  auto g = torus_generators(m, m.rank() - 1);
  g.push_back(m.x_simple(m.rank() - 1, 1));
  g.push_back(m.x_neg_simple(m.rank() - 1, 1));
  return FiniteGroup(m.universe(), std::move(g));
}

FiniteGroup twisted_torus(const SymplecticModel& m) {
  const auto [s, n] = nonsplit_pair(m.q());
  std::vector<Bytes> g;
  for (int i = 0; i < m.rank(); ++i) g.push_back(m.plane_element(i, s[0], s[1], s[2], s[3]));
  return FiniteGroup(m.universe(), std::move(g));
}

FiniteGroup twisted_torus_normalizer(const SymplecticModel& m) {
  const auto [s, n] = nonsplit_pair(m.q());
  std::vector<Bytes> g;
  for (int i = 0; i < m.rank(); ++i) {
    g.push_back(m.plane_element(i, s[0], s[1], s[2], s[3]));
    g.push_back(m.plane_element(i, n[0], n[1], n[2], n[3]));
  }
  for (int i = 0; i + 1 < m.rank(); ++i) g.push_back(m.plane_swap(i, i + 1));
  for (const auto& x : g)
    if (!m.preserves_form(x)) throw Falsification("twisted torus normaliser generator is not symplectic");
  return FiniteGroup(m.universe(), std::move(g));
}

}  // namespace hcv::groups
