#include "hcv/groups.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>

#include "hcv/error.hpp"
#include "table_cache.hpp"

namespace hcv::groups {

// ---------------------------------------------------------------- Universe

Universe Universe::permutations(int degree) {
  if (degree < 1 || degree > 256) throw Unsupported("permutation degree must be in [1, 256]");
  Universe u;
  u.kind_ = Kind::Permutation;
  u.degree_ = degree;
  u.width_ = static_cast<std::size_t>(degree);
  return u;
}

Universe Universe::matrices(int n, int p) {
  if (n < 1 || n > 16) throw Unsupported("matrix size must be in [1, 16]");
  if (p < 2 || p > 251) throw Unsupported("field characteristic must be a prime below 256");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw Unsupported("only prime fields are supported, got q = " + std::to_string(p));
  Universe u;
  u.kind_ = Kind::Matrix;
  u.degree_ = n;
  u.p_ = p;
  u.width_ = static_cast<std::size_t>(n * n);
  return u;
}

void Universe::multiply(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, std::uint8_t* out) const {
  if (kind_ == Kind::Permutation) {
    for (std::size_t x = 0; x < width_; ++x) out[x] = a[b[x]];
    return;
  }
  const auto n = static_cast<std::size_t>(degree_);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      unsigned s = 0;
      for (std::size_t k = 0; k < n; ++k) s += unsigned(a[i * n + k]) * b[k * n + j];
      out[i * n + j] = static_cast<std::uint8_t>(s % static_cast<unsigned>(p_));
    }
}

Bytes Universe::multiply(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) const {
  Bytes out(width_);
  multiply(a, b, out.data());
  return out;
}

Bytes Universe::identity() const {
  Bytes e(width_, 0);
  if (kind_ == Kind::Permutation) {
    std::iota(e.begin(), e.end(), 0);
  } else {
    const auto n = static_cast<std::size_t>(degree_);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  }
  return e;
}

namespace {

long long modinv(long long a, long long p) {
  long long r = 1, e = p - 2;
  a %= p;
  if (a < 0) a += p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

}  // namespace

Bytes Universe::inverse(std::span<const std::uint8_t> a) const {
  Bytes out(width_);
  if (kind_ == Kind::Permutation) {
    for (std::size_t x = 0; x < width_; ++x) out[a[x]] = static_cast<std::uint8_t>(x);
    return out;
  }
  const auto n = static_cast<std::size_t>(degree_);
  const int p = p_;
  std::vector<int> m(n * 2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i * 2 * n + j] = a[i * n + j];
    m[i * 2 * n + n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv * 2 * n + col] == 0) ++piv;
    if (piv == n) throw InvalidArgument("matrix is singular");
    for (std::size_t j = 0; j < 2 * n; ++j) std::swap(m[col * 2 * n + j], m[piv * 2 * n + j]);
    const int inv = static_cast<int>(modinv(m[col * 2 * n + col], p));
    for (std::size_t j = 0; j < 2 * n; ++j) m[col * 2 * n + j] = m[col * 2 * n + j] * inv % p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i * 2 * n + col] == 0) continue;
      const int f = m[i * 2 * n + col];
      for (std::size_t j = 0; j < 2 * n; ++j) m[i * 2 * n + j] = ((m[i * 2 * n + j] - f * m[col * 2 * n + j]) % p + p) % p;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = static_cast<std::uint8_t>(m[i * 2 * n + n + j]);
  return out;
}

bool Universe::is_valid(std::span<const std::uint8_t> a) const {
  if (a.size() != width_) return false;
  if (kind_ == Kind::Permutation) {
    std::vector<bool> seen(width_, false);
    for (auto x : a) {
      if (x >= width_ || seen[x]) return false;
      seen[x] = true;
    }
    return true;
  }
  for (auto x : a)
    if (x >= p_) return false;
  try {
    (void)inverse(a);
  } catch (const InvalidArgument&) {
    return false;
  }
  return true;
}

std::string Universe::describe() const {
  if (kind_ == Kind::Permutation) return "perm(" + std::to_string(degree_) + ")";
  return "mat(" + std::to_string(degree_) + ",F" + std::to_string(p_) + ")";
}

// ------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup(Universe u, std::vector<Bytes> generators, std::size_t cap)
    : u_(std::move(u)), gens_(std::move(generators)), store_(u_.width()) {
  for (const auto& g : gens_)
    if (!u_.is_valid(g)) throw InvalidArgument("generator is not an element of " + u_.describe());
  store_.insert(u_.identity());
  Bytes buf(u_.width());
  for (std::size_t cur = 0; cur < store_.size(); ++cur) {
    for (const auto& g : gens_) {
      u_.multiply(store_[cur], g, buf.data());
      if (store_.insert(buf).second && store_.size() > cap)
        throw CapExceeded("group enumeration exceeded cap " + std::to_string(cap));
    }
  }
  inverse_.resize(store_.size());
  for (std::size_t i = 0; i < store_.size(); ++i) inverse_[i] = *store_.find(u_.inverse(store_[i]));
  for (const auto& g : gens_) gen_idx_.push_back(*store_.find(g));
}

std::optional<std::size_t> FiniteGroup::index_of(std::span<const std::uint8_t> e) const {
  if (e.size() != u_.width()) return std::nullopt;
  auto i = store_.find(e);
  if (!i) return std::nullopt;
  return *i;
}

std::size_t FiniteGroup::multiply(std::size_t a, std::size_t b) const {
  Bytes buf(u_.width());
  u_.multiply(store_[a], store_[b], buf.data());
  return *store_.find(buf);
}

std::size_t FiniteGroup::power(std::size_t a, long long k) const {
  if (k < 0) {
    a = inverse(a);
    k = -k;
  }
  std::size_t r = identity();
  std::size_t base = a;
  while (k) {
    if (k & 1) r = multiply(r, base);
    base = multiply(base, base);
    k >>= 1;
  }
  return r;
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
  std::size_t o = 1;
  std::size_t x = a;
  while (x != identity()) {
    x = multiply(x, a);
    ++o;
  }
  return o;
}

std::size_t FiniteGroup::exponent() const {
  std::size_t e = 1;
  for (std::size_t i = 0; i < order(); ++i) e = std::lcm(e, element_order(i));
  return e;
}

std::string FiniteGroup::descriptor() const {
  std::ostringstream os;
  os << u_.describe() << ";";
  static const char* hex = "0123456789abcdef";
  for (const auto& g : gens_) {
    for (auto b : g) os << hex[b >> 4] << hex[b & 15];
    os << ";";
  }
  return os.str();
}

FiniteGroup generate(const Universe& u, std::vector<Bytes> generators, std::size_t cap) {
  return FiniteGroup(u, std::move(generators), cap);
}

FiniteGroup subgroup(const FiniteGroup& g, const std::vector<std::size_t>& elements, std::size_t cap) {
  std::vector<Bytes> gens;
  for (auto e : elements) {
    auto s = g.element(e);
    gens.emplace_back(s.begin(), s.end());
  }
  return FiniteGroup(g.universe(), std::move(gens), cap);
}

std::vector<std::size_t> embed(const FiniteGroup& h, const FiniteGroup& g) {
  if (!(h.universe() == g.universe())) throw InvalidArgument("embed: different universes");
  std::vector<std::size_t> out(h.order());
  for (std::size_t i = 0; i < h.order(); ++i) {
    auto j = g.index_of(h.element(i));
    if (!j) throw InvalidArgument("embed: not a subgroup");
    out[i] = *j;
  }
  return out;
}

namespace {

// Greedy generating set for the subgroup with the given element set.
FiniteGroup group_from_elements(const FiniteGroup& g, const std::vector<std::size_t>& elems) {
  std::vector<std::size_t> gens;
  std::optional<FiniteGroup> cur;
  for (auto e : elems) {
    if (cur && cur->contains(g.element(e))) continue;
    if (!cur && e == g.identity()) continue;
    gens.push_back(e);
    cur.emplace(subgroup(g, gens));
  }
  if (!cur) return FiniteGroup(g.universe(), {});
  return std::move(*cur);
}

}  // namespace

FiniteGroup normalizer(const FiniteGroup& g, const FiniteGroup& h) {
  std::vector<std::size_t> hgens;
  for (const auto& b : h.generators()) hgens.push_back(*g.index_of(b));
  std::vector<std::size_t> elems;
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (auto y : hgens) {
      if (!h.contains(g.element(g.multiply(g.multiply(x, y), g.inverse(x))))) {
        ok = false;
        break;
      }
    }
    if (ok) elems.push_back(x);
  }
  return group_from_elements(g, elems);
}

// ---------------------------------------------------------- ConjClasses

ConjClasses conjugacy_classes(const FiniteGroup& g) {
  const std::size_t n = g.order();
  constexpr std::uint32_t kNone = 0xffffffffu;
  std::vector<std::uint32_t> raw(n, kNone);
  std::vector<std::vector<std::size_t>> members;
  const auto& gi = g.generator_indices();
  std::vector<std::size_t> ginv;
  for (auto x : gi) ginv.push_back(g.inverse(x));
  for (std::size_t x = 0; x < n; ++x) {
    if (raw[x] != kNone) continue;
    const auto id = static_cast<std::uint32_t>(members.size());
    members.push_back({x});
    raw[x] = id;
    for (std::size_t qi = 0; qi < members.back().size(); ++qi) {
      const std::size_t y = members.back()[qi];
      for (std::size_t k = 0; k < gi.size(); ++k) {
        const std::size_t z = g.multiply(g.multiply(gi[k], y), ginv[k]);
        if (raw[z] == kNone) {
          raw[z] = id;
          members.back().push_back(z);
        }
      }
    }
  }
  std::vector<std::size_t> orders(members.size());
  for (std::size_t c = 0; c < members.size(); ++c) orders[c] = g.element_order(members[c][0]);
  // Deterministic order: element order, then class size, then first element.
  std::vector<std::size_t> perm(members.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (orders[a] != orders[b]) return orders[a] < orders[b];
    if (members[a].size() != members[b].size()) return members[a].size() < members[b].size();
    return members[a][0] < members[b][0];
  });
  std::vector<std::uint32_t> newid(members.size());
  for (std::size_t i = 0; i < perm.size(); ++i) newid[perm[i]] = static_cast<std::uint32_t>(i);

  ConjClasses cl;
  cl.group_order = n;
  cl.class_of.resize(n);
  for (std::size_t x = 0; x < n; ++x) cl.class_of[x] = newid[raw[x]];
  for (auto c : perm) {
    cl.reps.push_back(members[c][0]);
    cl.sizes.push_back(members[c].size());
    cl.orders.push_back(orders[c]);
  }
  for (std::size_t k = 0; k < cl.size(); ++k) {
    cl.exponent = std::lcm(cl.exponent, cl.orders[k]);
    std::vector<std::size_t> pm(cl.orders[k]);
    std::size_t x = g.identity();
    for (std::size_t t = 0; t < cl.orders[k]; ++t) {
      pm[t] = cl.class_of[x];
      x = g.multiply(x, cl.reps[k]);
    }
    cl.power_map.push_back(std::move(pm));
    cl.inverse_class.push_back(cl.class_of[g.inverse(cl.reps[k])]);
  }
  return cl;
}

// ------------------------------------------------------ Dixon's algorithm

namespace {

using u64 = std::uint64_t;

struct ModP {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    if (a % p == 0) throw Error("division by zero modulo Dixon prime");
    return pow(a, p - 2);
  }
};

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 dixon_prime(std::size_t order, std::size_t exponent) {
  const double bound = 2.0 * std::sqrt(static_cast<double>(order));
  u64 l = exponent + 1;
  while (static_cast<double>(l) <= bound || !is_prime(l)) l += exponent;
  return l;
}

u64 primitive_root(const ModP& f) {
  const u64 n = f.p - 1;
  std::vector<u64> primes;
  u64 m = n;
  for (u64 d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      primes.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) primes.push_back(m);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (auto q : primes)
      if (f.pow(g, n / q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

using Mat = std::vector<std::vector<u64>>;  // row-major

// Columns of b span a subspace; rows piv are the identity.
struct Subspace {
  Mat basis;  // r x d
  std::vector<std::size_t> piv;
};

// Reduced column echelon form of the span of the columns of b.
Subspace normalise(const ModP& f, const Mat& b) {
  const std::size_t r = b.size();
  const std::size_t d = r ? b[0].size() : 0;
  Mat t(d, std::vector<u64>(r));  // transpose; rows are vectors
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < d; ++j) t[j][i] = b[i][j];
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r && row < d; ++col) {
    std::size_t sel = row;
    while (sel < d && t[sel][col] == 0) ++sel;
    if (sel == d) continue;
    std::swap(t[sel], t[row]);
    const u64 inv = f.inv(t[row][col]);
    for (auto& x : t[row]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == row || t[i][col] == 0) continue;
      const u64 c = t[i][col];
      for (std::size_t j = 0; j < r; ++j) t[i][j] = f.sub(t[i][j], f.mul(c, t[row][j]));
    }
    piv.push_back(col);
    ++row;
  }
  Subspace s;
  s.piv = piv;
  s.basis.assign(r, std::vector<u64>(piv.size()));
  for (std::size_t j = 0; j < piv.size(); ++j)
    for (std::size_t i = 0; i < r; ++i) s.basis[i][j] = t[j][i];
  return s;
}

// Nullspace of a (d x d) as column vectors.
Mat nullspace(const ModP& f, Mat a) {
  const std::size_t d = a.size();
  std::vector<std::size_t> pivcol;
  std::size_t row = 0;
  std::vector<long> where(d, -1);
  for (std::size_t col = 0; col < d && row < d; ++col) {
    std::size_t sel = row;
    while (sel < d && a[sel][col] == 0) ++sel;
    if (sel == d) continue;
    std::swap(a[sel], a[row]);
    const u64 inv = f.inv(a[row][col]);
    for (auto& x : a[row]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const u64 c = a[i][col];
      for (std::size_t j = 0; j < d; ++j) a[i][j] = f.sub(a[i][j], f.mul(c, a[row][j]));
    }
    where[col] = static_cast<long>(row);
    ++row;
  }
  std::vector<std::vector<u64>> vecs;
  for (std::size_t free = 0; free < d; ++free) {
    if (where[free] != -1) continue;
    std::vector<u64> v(d, 0);
    v[free] = 1;
    for (std::size_t col = 0; col < d; ++col)
      if (where[col] != -1) v[col] = f.sub(0, a[static_cast<std::size_t>(where[col])][free]);
    vecs.push_back(std::move(v));
  }
  Mat out(d, std::vector<u64>(vecs.size()));
  for (std::size_t j = 0; j < vecs.size(); ++j)
    for (std::size_t i = 0; i < d; ++i) out[i][j] = vecs[j][i];
  return out;
}

// Characteristic polynomial via Hessenberg reduction, coefficients low to high.
std::vector<u64> charpoly(const ModP& f, Mat h) {
  const std::size_t n = h.size();
  for (std::size_t m = 1; m + 1 < n + 1 && m < n; ++m) {
    std::size_t i = m;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (auto& rowv : h) std::swap(rowv[i], rowv[m]);
    }
    const u64 inv = f.inv(h[m][m - 1]);
    for (std::size_t k = m + 1; k < n; ++k) {
      if (h[k][m - 1] == 0) continue;
      const u64 c = f.mul(h[k][m - 1], inv);
      for (std::size_t j = 0; j < n; ++j) h[k][j] = f.sub(h[k][j], f.mul(c, h[m][j]));
      for (std::size_t j = 0; j < n; ++j) h[j][m] = f.add(h[j][m], f.mul(c, h[j][k]));
    }
  }
  // p_k = charpoly of leading k x k block.
  std::vector<std::vector<u64>> p(n + 1);
  p[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<u64> pk(k + 1, 0);
    // (x - h[k-1][k-1]) p_{k-1}
    for (std::size_t j = 0; j < p[k - 1].size(); ++j) {
      pk[j + 1] = f.add(pk[j + 1], p[k - 1][j]);
      pk[j] = f.sub(pk[j], f.mul(h[k - 1][k - 1], p[k - 1][j]));
    }
    u64 t = 1;
    for (std::size_t i = 1; i < k; ++i) {
      t = f.mul(t, h[k - i][k - i - 1]);
      const u64 c = f.mul(t, h[k - i - 1][k - 1]);
      for (std::size_t j = 0; j < p[k - i - 1].size(); ++j) pk[j] = f.sub(pk[j], f.mul(c, p[k - i - 1][j]));
    }
    p[k] = std::move(pk);
  }
  return p[n];
}

std::vector<u64> roots(const ModP& f, const std::vector<u64>& poly) {
  std::vector<u64> out;
  for (u64 x = 0; x < f.p; ++x) {
    u64 v = 0;
    for (std::size_t j = poly.size(); j-- > 0;) v = f.add(f.mul(v, x), poly[j]);
    if (v == 0) out.push_back(x);
  }
  return out;
}

}  // namespace

CharacterTable character_table(const FiniteGroup& g, const ConjClasses& cls, const CacheOptions& cache) {
  if (auto hit = detail::load_table(cache, g, cls)) return *hit;

  const std::size_t r = cls.size();
  const std::size_t order = g.order();
  const ModP f{dixon_prime(order, cls.exponent)};
  std::vector<std::vector<std::size_t>> members(r);
  for (std::size_t x = 0; x < order; ++x) members[cls.class_of[x]].push_back(x);

  auto class_matrix = [&](std::size_t i) {
    Mat m(r, std::vector<u64>(r, 0));
    for (std::size_t k = 0; k < r; ++k)
      for (auto x : members[i]) {
        const std::size_t j = cls.class_of[g.multiply(g.inverse(x), cls.reps[k])];
        ++m[j][k];
      }
    for (auto& row : m)
      for (auto& v : row) v %= f.p;
    return m;
  };

  std::vector<Subspace> spaces;
  {
    Mat id(r, std::vector<u64>(r, 0));
    for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
    spaces.push_back(normalise(f, id));
  }
  auto all_split = [&] {
    for (auto& s : spaces)
      if (s.piv.size() > 1) return false;
    return true;
  };
  for (std::size_t i = 1; i < r && !all_split(); ++i) {
    const Mat m = class_matrix(i);
    std::vector<Subspace> next;
    for (auto& s : spaces) {
      const std::size_t d = s.piv.size();
      if (d == 1) {
        next.push_back(std::move(s));
        continue;
      }
      // restriction A = (M B)[piv, :]
      Mat a(d, std::vector<u64>(d, 0));
      for (std::size_t pi = 0; pi < d; ++pi) {
        const auto& mrow = m[s.piv[pi]];
        for (std::size_t j = 0; j < d; ++j) {
          u64 acc = 0;
          for (std::size_t k = 0; k < r; ++k)
            if (mrow[k] && s.basis[k][j]) acc = f.add(acc, f.mul(mrow[k], s.basis[k][j]));
          a[pi][j] = acc;
        }
      }
      const auto ev = roots(f, charpoly(f, a));
      std::size_t total = 0;
      for (auto mu : ev) {
        Mat am = a;
        for (std::size_t t = 0; t < d; ++t) am[t][t] = f.sub(am[t][t], mu);
        Mat ns = nullspace(f, am);
        const std::size_t dn = ns.empty() ? 0 : ns[0].size();
        total += dn;
        Mat nb(r, std::vector<u64>(dn, 0));
        for (std::size_t row = 0; row < r; ++row)
          for (std::size_t j = 0; j < dn; ++j) {
            u64 acc = 0;
            for (std::size_t t = 0; t < d; ++t) acc = f.add(acc, f.mul(s.basis[row][t], ns[t][j]));
            nb[row][j] = acc;
          }
        next.push_back(normalise(f, nb));
      }
      if (total != d) throw Falsification("Dixon: class matrix not diagonalisable over the splitting prime");
    }
    spaces = std::move(next);
  }
  if (!all_split() || spaces.size() != r) throw Falsification("Dixon: eigenspaces did not split into lines");

  const u64 z = f.pow(primitive_root(f), (f.p - 1) / cls.exponent);
  CharacterTable t;
  t.group_order = order;
  t.class_sizes = cls.sizes;
  t.inverse_class = cls.inverse_class;
  t.dixon_prime = f.p;
  const auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(order))) + 1;
  for (auto& s : spaces) {
    std::vector<u64> w(r);
    const u64 inv0 = f.inv(s.basis[0][0]);
    for (std::size_t k = 0; k < r; ++k) w[k] = f.mul(s.basis[k][0], inv0);
    u64 sum = 0;
    for (std::size_t k = 0; k < r; ++k)
      sum = f.add(sum, f.mul(f.mul(w[k], w[cls.inverse_class[k]]), f.inv(cls.sizes[k] % f.p)));
    const u64 target = f.mul(order % f.p, f.inv(sum));
    std::int64_t deg = 0;
    for (std::int64_t d = 1; d <= root; ++d)
      if (f.mul(static_cast<u64>(d), static_cast<u64>(d)) == target && order % static_cast<std::size_t>(d) == 0) {
        deg = d;
        break;
      }
    if (deg == 0) throw Falsification("Dixon: no admissible degree");
    std::vector<u64> chi(r);
    for (std::size_t k = 0; k < r; ++k)
      chi[k] = f.mul(f.mul(w[k], static_cast<u64>(deg)), f.inv(cls.sizes[k] % f.p));
    ClassFunction row(r);
    for (std::size_t k = 0; k < r; ++k) {
      const std::size_t o = cls.orders[k];
      const u64 zo = f.pow(z, cls.exponent / o);
      const u64 oinv = f.inv(o % f.p);
      std::vector<std::int64_t> mult(o, 0);
      std::int64_t total = 0;
      for (std::size_t j = 0; j < o; ++j) {
        u64 acc = 0;
        for (std::size_t tt = 0; tt < o; ++tt) {
          const u64 zeta = f.pow(zo, (o - (j * tt) % o) % o);
          acc = f.add(acc, f.mul(chi[cls.power_map[k][tt]], zeta));
        }
        acc = f.mul(acc, oinv);
        if (acc > static_cast<u64>(deg)) throw Falsification("Dixon: eigenvalue multiplicity out of range");
        mult[j] = static_cast<std::int64_t>(acc);
        total += mult[j];
      }
      if (total != deg) throw Falsification("Dixon: eigenvalue multiplicities do not sum to the degree");
      row[k] = cyc::Cyc::from_group_ring(static_cast<int>(o), mult);
    }
    t.rows.push_back(std::move(row));
    t.degrees.push_back(deg);
  }

  // Trivial character first, then by degree, then by value pattern.
  auto key = [](const ClassFunction& row) {
    std::vector<std::pair<int, std::vector<std::int64_t>>> k;
    for (const auto& v : row) k.emplace_back(v.field(), v.coeffs());
    return k;
  };
  std::vector<std::size_t> perm(t.rows.size());
  std::iota(perm.begin(), perm.end(), 0);
  auto is_trivial = [&](std::size_t i) {
    for (const auto& v : t.rows[i])
      if (!(v == cyc::Cyc(1))) return false;
    return true;
  };
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    const bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb) return ta;
    if (t.degrees[a] != t.degrees[b]) return t.degrees[a] < t.degrees[b];
    return key(t.rows[a]) < key(t.rows[b]);
  });
  CharacterTable sorted = t;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    sorted.rows[i] = t.rows[perm[i]];
    sorted.degrees[i] = t.degrees[perm[i]];
  }

  // Exact orthogonality; a failure here is a bug, never an input condition.
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a; b < r; ++b) {
      const mpq_class ip = inner_product(sorted, sorted.rows[a], sorted.rows[b]);
      if (ip != (a == b ? 1 : 0)) throw Falsification("Dixon: row orthogonality failed");
    }
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = k; l < r; ++l) {
      cyc::Cyc s(0);
      for (std::size_t c = 0; c < r; ++c) s += sorted.rows[c][k] * sorted.rows[c][l].conj();
      const cyc::Cyc expect(k == l ? static_cast<std::int64_t>(cls.centralizer_order(k)) : 0);
      if (!(s == expect)) throw Falsification("Dixon: column orthogonality failed");
    }

  detail::store_table(cache, g, cls, sorted);
  return sorted;
}

// ------------------------------------------------------- class functions

namespace {

mpq_class inner_product_impl(std::size_t order, const std::vector<std::size_t>& sizes, const ClassFunction& f,
                             const ClassFunction& g) {
  if (f.size() != sizes.size() || g.size() != sizes.size()) throw InvalidArgument("inner_product: length mismatch");
  int n = 1;
  for (std::size_t k = 0; k < f.size(); ++k) n = std::lcm(n, std::lcm(f[k].field(), g[k].field()));
  cyc::Accumulator acc(n);
  for (std::size_t k = 0; k < f.size(); ++k) acc.add(f[k] * g[k].conj(), static_cast<std::int64_t>(sizes[k]));
  const cyc::Cyc s = acc.value();
  if (!s.is_rational()) throw Falsification("inner product of class functions is not rational");
  mpq_class q(mpz_class(std::to_string(s.rational_value())), mpz_class(std::to_string(order)));
  q.canonicalize();
  return q;
}

}  // namespace

mpq_class inner_product(const ConjClasses& cls, const ClassFunction& f, const ClassFunction& g) {
  return inner_product_impl(cls.group_order, cls.sizes, f, g);
}

mpq_class inner_product(const CharacterTable& t, const ClassFunction& f, const ClassFunction& g) {
  return inner_product_impl(t.group_order, t.class_sizes, f, g);
}

ClassFunction induce_elementwise(const FiniteGroup& g, const ConjClasses& gcl, const FiniteGroup& h,
                                 const std::function<cyc::Cyc(std::size_t)>& f) {
  if (g.order() % h.order() != 0) throw InvalidArgument("induce: order of H does not divide order of G");
  std::vector<cyc::Cyc> vals(h.order());
  int n = static_cast<int>(gcl.exponent);
  for (std::size_t x = 0; x < h.order(); ++x) {
    vals[x] = f(x);
    n = std::lcm(n, vals[x].field());
  }
  std::vector<cyc::Accumulator> acc(gcl.size(), cyc::Accumulator(n));
  for (std::size_t x = 0; x < h.order(); ++x) {
    auto gi = g.index_of(h.element(x));
    if (!gi) throw InvalidArgument("induce: H is not a subgroup of G");
    acc[gcl.class_of[*gi]].add(vals[x]);
  }
  ClassFunction out(gcl.size());
  for (std::size_t k = 0; k < gcl.size(); ++k)
    out[k] = acc[k].value().scaled(static_cast<std::int64_t>(gcl.centralizer_order(k)),
                                   static_cast<std::int64_t>(h.order()));
  return out;
}

ClassFunction induce(const FiniteGroup& g, const ConjClasses& gcl, const FiniteGroup& h, const ConjClasses& hcl,
                     const ClassFunction& f) {
  if (f.size() != hcl.size()) throw InvalidArgument("induce: class function length mismatch");
  return induce_elementwise(g, gcl, h, [&](std::size_t x) { return f[hcl.class_of[x]]; });
}

ClassFunction restrict_to(const FiniteGroup& g, const ConjClasses& gcl, const FiniteGroup& h, const ConjClasses& hcl,
                          const ClassFunction& f) {
  ClassFunction out(hcl.size());
  for (std::size_t k = 0; k < hcl.size(); ++k) {
    auto gi = g.index_of(h.element(hcl.reps[k]));
    if (!gi) throw InvalidArgument("restrict: H is not a subgroup of G");
    out[k] = f[gcl.class_of[*gi]];
  }
  return out;
}

std::vector<mpq_class> decompose(const CharacterTable& t, const ClassFunction& f) {
  std::vector<mpq_class> out;
  for (const auto& row : t.rows) out.push_back(inner_product(t, f, row));
  return out;
}

std::size_t count_odd_degree(const CharacterTable& t) {
  return static_cast<std::size_t>(std::count_if(t.degrees.begin(), t.degrees.end(), [](auto d) { return d % 2 != 0; }));
}

CacheOptions CacheOptions::from_env() {
  CacheOptions c;
  if (const char* e = std::getenv("HCVERIFY_CACHE"); e && *e) c.dir = e;
  return c;
}

}  // namespace hcv::groups
