#include "hcv/rootsystems.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "hcv/error.hpp"
#include "hcv/intpoly.hpp"

namespace hcv::roots {

std::string to_string(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "A") return Family::A;
  if (s == "B") return Family::B;
  if (s == "C") return Family::C;
  if (s == "D") return Family::D;
  if (s == "E6" || s == "E") return Family::E6;
  if (s == "E7") return Family::E7;
  throw Unsupported("unknown root system family '" + s + "'");
}

CartanDatum CartanDatum::make(Family family, int rank) {
  CartanDatum d;
  d.family = family;
  auto need = [&](bool ok) {
    if (!ok) throw Unsupported("unsupported Cartan type " + to_string(family) + std::to_string(rank));
  };
  switch (family) {
    case Family::A: need(rank >= 1 && rank <= 8); break;
    case Family::B:
    case Family::C: need(rank >= 1 && rank <= 8); break;
    case Family::D: need(rank >= 3 && rank <= 8); break;
    case Family::E6: need(rank == 6); break;
    case Family::E7: need(rank == 7); break;
  }
  d.rank = rank;
  const auto n = static_cast<std::size_t>(rank);
  d.cartan.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) d.cartan[i][i] = 2;
  auto bond = [&](std::size_t i, std::size_t j) { d.cartan[i][j] = d.cartan[j][i] = -1; };
  switch (family) {
    case Family::A:
      for (std::size_t i = 0; i + 1 < n; ++i) bond(i, i + 1);
      break;
    case Family::B:
    case Family::C:
      for (std::size_t i = 0; i + 1 < n; ++i) bond(i, i + 1);
      if (n >= 2) {
        // B: alpha_l short, <alpha_{l-1}, alpha_l^vee> = -2.
        if (family == Family::B)
          d.cartan[n - 1][n - 2] = -2;
        else
          d.cartan[n - 2][n - 1] = -2;
      }
      break;
    case Family::D:
      for (std::size_t i = 0; i + 2 < n; ++i) bond(i, i + 1);
      bond(n - 3, n - 1);
      break;
    case Family::E6:
    case Family::E7:
      bond(0, 2);
      bond(2, 3);
      bond(3, 4);
      bond(4, 5);
      bond(1, 3);
      if (family == Family::E7) bond(5, 6);
      break;
  }
  return d;
}

std::string CartanDatum::name() const {
  if (family == Family::E6 || family == Family::E7) return to_string(family);
  return to_string(family) + std::to_string(rank);
}

namespace {

int dot_row(const IntVec& v, const IntMatrix& a, std::size_t i) {
  // sum_j v_j a[i][j]
  int s = 0;
  for (std::size_t j = 0; j < v.size(); ++j) s += v[j] * a[i][j];
  return s;
}

int dot_col(const IntVec& v, const IntMatrix& a, std::size_t i) {
  // sum_j v_j a[j][i]
  int s = 0;
  for (std::size_t j = 0; j < v.size(); ++j) s += v[j] * a[j][i];
  return s;
}

}  // namespace

RootSystem::RootSystem(CartanDatum datum) : datum_(std::move(datum)) {
  const auto n = static_cast<std::size_t>(datum_.rank);
  const auto& a = datum_.cartan;
  // Closure of the simple roots under simple reflections, tracking coroots
  // along the same reflection sequence.
  std::map<IntVec, IntVec> found;
  std::deque<IntVec> queue;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    found.emplace(e, e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    IntVec r = queue.front();
    queue.pop_front();
    const IntVec cr = found.at(r);
    for (std::size_t i = 0; i < n; ++i) {
      IntVec s = r;
      s[i] -= dot_row(r, a, i);   // <r, alpha_i^vee>
      IntVec cs = cr;
      cs[i] -= dot_col(cr, a, i);  // <alpha_i, r^vee>
      if (found.emplace(s, cs).second) queue.push_back(s);
    }
  }
  struct Entry {
    IntVec root, coroot;
    int height;
  };
  std::vector<Entry> all;
  for (auto& [r, c] : found) all.push_back({r, c, std::accumulate(r.begin(), r.end(), 0)});
  // Height ascending; ties by descending lexicographic order so that the
  // simple roots come out as alpha_1, ..., alpha_l.
  std::sort(all.begin(), all.end(), [](const Entry& x, const Entry& y) {
    if (x.height != y.height) return x.height < y.height;
    return x.root > y.root;
  });
  if (all.size() > 255) throw Unsupported("root system too large for byte permutations");
  for (auto& e : all) {
    roots_.push_back(e.root);
    coroots_.push_back(e.coroot);
    height_.push_back(e.height);
  }
  simple_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    simple_[i] = *find(e);
  }
  negative_.resize(roots_.size());
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    IntVec m = roots_[i];
    for (int& x : m) x = -x;
    auto j = find(m);
    if (!j) throw Falsification("root system not closed under negation");
    negative_[i] = *j;
  }
  for (std::size_t i = 0; i < n; ++i) simple_perms_.push_back(reflection(simple_[i]));
}

std::optional<std::size_t> RootSystem::find(const IntVec& coords) const {
  const int h = std::accumulate(coords.begin(), coords.end(), 0);
  auto lo = std::lower_bound(height_.begin(), height_.end(), h);
  for (auto it = lo; it != height_.end() && *it == h; ++it) {
    const auto idx = static_cast<std::size_t>(it - height_.begin());
    if (roots_[idx] == coords) return idx;
  }
  return std::nullopt;
}

int RootSystem::pairing(std::size_t a, std::size_t b) const {
  // <alpha_a, alpha_b^vee> = sum_{i,j} root_a[i] coroot_b[j] <alpha_i, alpha_j^vee>
  const auto n = static_cast<std::size_t>(rank());
  int s = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += roots_[a][i] * coroots_[b][j] * datum_.cartan[j][i];
  return s;
}

std::size_t RootSystem::reflect(std::size_t b, std::size_t a) const {
  const int c = pairing(a, b);
  IntVec r = roots_[a];
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * roots_[b][i];
  auto idx = find(r);
  if (!idx) throw Falsification("reflection left the root system");
  return *idx;
}

RootPerm RootSystem::reflection(std::size_t b) const {
  RootPerm p(size());
  for (std::size_t a = 0; a < size(); ++a) p[a] = static_cast<std::uint8_t>(reflect(b, a));
  return p;
}

std::vector<std::size_t> RootSystem::positive_roots() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (is_positive(i)) out.push_back(i);
  return out;
}

std::shared_ptr<const RootSystem> build_root_system(const CartanDatum& datum) {
  return std::make_shared<const RootSystem>(datum);
}

WeylGroup::WeylGroup(std::shared_ptr<const RootSystem> rs, std::size_t cap)
    : rs_(std::move(rs)), store_(rs_->size()) {
  RootPerm id(rs_->size());
  std::iota(id.begin(), id.end(), 0);
  store_.insert(id);
  words_.push_back({});
  RootPerm buf(rs_->size());
  for (std::size_t cur = 0; cur < store_.size(); ++cur) {
    for (int i = 0; i < rs_->rank(); ++i) {
      const auto& s = rs_->simple_reflection(i);
      auto x = store_[cur];
      for (std::size_t r = 0; r < buf.size(); ++r) buf[r] = s[x[r]];
      auto [idx, fresh] = store_.insert(buf);
      if (fresh) {
        if (store_.size() > cap)
          throw CapExceeded("Weyl group of " + rs_->datum().name() + " exceeds element cap " + std::to_string(cap));
        std::vector<int> w{i};
        const auto& tail = words_[cur];
        w.insert(w.end(), tail.begin(), tail.end());
        words_.push_back(std::move(w));
      }
    }
  }
  for (int i = 0; i < rs_->rank(); ++i) generators_.push_back(*index_of(rs_->simple_reflection(i)));
  longest_ = store_.size() - 1;
  for (std::size_t w = 0; w < store_.size(); ++w)
    if (words_[w].size() > words_[longest_].size()) longest_ = w;
}

std::optional<std::size_t> WeylGroup::index_of(std::span<const std::uint8_t> perm) const {
  auto i = store_.find(perm);
  if (!i) return std::nullopt;
  return *i;
}

std::size_t WeylGroup::multiply(std::size_t a, std::size_t b) const {
  auto pa = store_[a];
  auto pb = store_[b];
  RootPerm out(pa.size());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = pa[pb[r]];
  return *store_.find(out);
}

std::size_t WeylGroup::inverse(std::size_t a) const {
  auto pa = store_[a];
  RootPerm out(pa.size());
  for (std::size_t r = 0; r < out.size(); ++r) out[pa[r]] = static_cast<std::uint8_t>(r);
  return *store_.find(out);
}

std::size_t WeylGroup::conjugate(std::size_t g, std::size_t x) const {
  return multiply(multiply(g, x), inverse(g));
}

std::size_t WeylGroup::reflection_element(std::size_t root) const {
  auto idx = index_of(rs_->reflection(root));
  if (!idx) throw Falsification("reflection not found in Weyl group");
  return *idx;
}

WeylGroup weyl_group(std::shared_ptr<const RootSystem> rs, std::size_t cap) { return WeylGroup(std::move(rs), cap); }

int ind_exponent(const WeylGroup& w, std::size_t element) {
  const auto& rs = w.roots();
  int n = 0;
  for (std::size_t r = 0; r < rs.size(); ++r)
    if (rs.is_positive(r) && !rs.is_positive(w.act(element, r))) ++n;
  return n;
}

std::vector<std::size_t> simple_system(const RootSystem& rs, std::span<const std::size_t> subsystem) {
  std::vector<std::size_t> pos;
  for (auto r : subsystem)
    if (rs.is_positive(r)) pos.push_back(r);
  std::vector<std::size_t> base;
  for (auto a : pos) {
    int flipped = 0;
    for (auto b : pos)
      if (!rs.is_positive(rs.reflect(a, b))) ++flipped;
    if (flipped == 1) base.push_back(a);
  }
  std::sort(base.begin(), base.end());
  return base;
}

ReflectionSubgroup reflection_subgroup(const WeylGroup& w, std::span<const std::size_t> subset) {
  const auto& rs = w.roots();
  std::set<std::size_t> given(subset.begin(), subset.end());
  for (auto r : given)
    if (!given.count(rs.negative(r))) throw InvalidArgument("reflection_subgroup: subset not closed under negation");
  std::set<std::size_t> closure = given;
  std::deque<std::size_t> queue(given.begin(), given.end());
  while (!queue.empty()) {
    auto b = queue.front();
    queue.pop_front();
    for (auto a : given) {
      auto c = rs.reflect(a, b);
      if (closure.insert(c).second) queue.push_back(c);
    }
  }
  ReflectionSubgroup out;
  out.subsystem.assign(closure.begin(), closure.end());
  out.simple_roots = simple_system(rs, out.subsystem);
  std::vector<std::size_t> gens;
  for (auto a : out.simple_roots) gens.push_back(w.reflection_element(a));
  std::set<std::size_t> elems{w.identity()};
  std::deque<std::size_t> q{w.identity()};
  while (!q.empty()) {
    auto x = q.front();
    q.pop_front();
    for (auto g : gens) {
      auto y = w.multiply(g, x);
      if (elems.insert(y).second) q.push_back(y);
    }
  }
  out.elements.assign(elems.begin(), elems.end());
  return out;
}

std::vector<int> fundamental_degrees(const RootSystem& rs) {
  // Matrix of the Coxeter element s_1 ... s_l on the root lattice, then the
  // exponents from its cyclotomic characteristic polynomial.
  const auto n = static_cast<std::size_t>(rs.rank());
  const auto& a = rs.datum().cartan;
  using M = std::vector<std::vector<std::int64_t>>;
  auto ident = [&] {
    M m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
  };
  auto mul = [&](const M& x, const M& y) {
    M z(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
    return z;
  };
  M c = ident();
  for (std::size_t i = 0; i < n; ++i) {
    M s = ident();
    // column j holds s_i(alpha_j) = alpha_j - a[i][j] alpha_i
    for (std::size_t j = 0; j < n; ++j) s[i][j] -= a[i][j];
    c = mul(c, s);
  }
  int h = 1;
  M p = c;
  while (p != ident()) {
    p = mul(p, c);
    ++h;
    if (h > 1000) throw Falsification("Coxeter element of unexpected order");
  }
  auto chi = intpoly::charpoly(c);
  std::vector<int> degrees;
  for (auto [d, mult] : intpoly::cyclotomic_factorisation(chi, h)) {
    if (h % d != 0) throw Falsification("Coxeter eigenvalue order does not divide h");
    for (int t = 0; t < mult; ++t)
      for (int k = 1; k <= d; ++k)
        if (std::gcd(k, d) == 1) degrees.push_back((h / d) * k + 1);
  }
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

std::vector<int> fundamental_degrees(const WeylGroup& w) { return fundamental_degrees(w.roots()); }

bool DiagramAut::is_identity() const {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<DiagramAut> diagram_automorphisms(const CartanDatum& datum) {
  const auto n = static_cast<std::size_t>(datum.rank);
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<DiagramAut> out;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        ok = datum.cartan[static_cast<std::size_t>(p[i])][static_cast<std::size_t>(p[j])] == datum.cartan[i][j];
    if (ok) out.push_back({p});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

RootPerm root_permutation(const RootSystem& rs, const DiagramAut& g) {
  RootPerm out(rs.size());
  for (std::size_t r = 0; r < rs.size(); ++r) {
    IntVec img(rs.root(r).size(), 0);
    for (std::size_t i = 0; i < img.size(); ++i) img[static_cast<std::size_t>(g.perm[i])] = rs.root(r)[i];
    auto idx = rs.find(img);
    if (!idx) throw InvalidArgument("diagram automorphism does not preserve the root system");
    out[r] = static_cast<std::uint8_t>(*idx);
  }
  return out;
}

}  // namespace hcv::roots
