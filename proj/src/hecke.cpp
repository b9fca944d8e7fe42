#include "hcv/hecke.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "hcv/error.hpp"

namespace hcv::hecke {

using LD = long double;
using CLD = std::complex<LD>;

// ---------------------------------------------------------------------------
// MPoly

MPoly::MPoly(long long c) {
  if (c != 0) terms_[{}] = mpz_class(static_cast<long>(c));
}

MPoly MPoly::var(int k, int nvars) {
  if (k < 0 || k >= nvars) throw InvalidArgument("symbol out of range");
  MPoly p;
  std::vector<int> e(static_cast<std::size_t>(k) + 1, 0);
  e.back() = 1;
  p.terms_[e] = 1;
  return p;
}

void MPoly::add(const std::vector<int>& e, const mpz_class& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [e, c] : o.terms_) add(e, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      std::vector<int> e(std::max(ea.size(), eb.size()), 0);
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      while (!e.empty() && e.back() == 0) e.pop_back();
      r.add(e, ca * cb);
    }
  return r;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    const mpz_class a = abs(c);
    bool mono = false;
    for (std::size_t i = 0; i < e.size(); ++i) mono = mono || e[i] != 0;
    if (a != 1 || !mono) os << a.get_str();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "u" << i;
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// GenericHecke

GenericHecke::GenericHecke(const torus::TorusModel& t, const torus::RelWeylData& d, std::size_t cap) {
  const auto& W = t.weyl();
  const auto& rs = t.roots();
  if (d.w_lambda.size() > cap)
    throw CapExceeded("|W(lambda)| = " + std::to_string(d.w_lambda.size()) + " exceeds the Hecke cap " +
                      std::to_string(cap));
  basis_ = d.w_lambda;
  for (std::size_t b = 0; b < basis_.size(); ++b) pos_[basis_[b]] = b;
  const std::size_t n = basis_.size();
  identity_ = index_of(W.identity());
  nparams_ = d.num_parameters;
  symbol_ = d.parameter_class;
  const std::size_t ng = d.delta.size();
  gen_basis_.resize(ng);
  lmul_.assign(ng, std::vector<std::uint32_t>(n));
  rmul_.assign(ng, std::vector<std::uint32_t>(n));
  lup_.assign(ng, std::vector<bool>(n));
  rup_.assign(ng, std::vector<bool>(n));
  std::vector<std::size_t> sref(ng);
  for (std::size_t k = 0; k < ng; ++k) {
    const std::size_t alpha = d.delta[k];
    sref[k] = W.reflection_element(alpha);
    gen_basis_[k] = index_of(sref[k]);
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t w = basis_[b];
      lmul_[k][b] = static_cast<std::uint32_t>(index_of(W.multiply(sref[k], w)));
      rmul_[k][b] = static_cast<std::uint32_t>(index_of(W.multiply(w, sref[k])));
      lup_[k][b] = rs.is_positive(W.act(W.inverse(w), alpha));
      rup_[k][b] = rs.is_positive(W.act(w, alpha));
    }
  }
  inverse_.resize(n);
  word_.resize(n);
  cpart_.resize(n);
  ind_exp_.assign(n, std::vector<int>(static_cast<std::size_t>(nparams_), 0));
  const std::set<std::size_t> cset(d.c_lambda.begin(), d.c_lambda.end());
  for (std::size_t b = 0; b < n; ++b) {
    inverse_[b] = index_of(W.inverse(basis_[b]));
    std::size_t x = basis_[b];
    for (bool found = true; found;) {
      found = false;
      for (std::size_t k = 0; k < ng; ++k)
        if (!rs.is_positive(W.act(W.inverse(x), d.delta[k]))) {
          word_[b].push_back(static_cast<int>(k));
          ++ind_exp_[b][static_cast<std::size_t>(symbol_[k])];
          x = W.multiply(sref[k], x);
          found = true;
          break;
        }
    }
    if (!cset.count(x)) throw Falsification("descent did not end in C(lambda)");
    cpart_[b] = index_of(x);
  }
  cpos_.assign(n, 0);
  for (auto c : d.c_lambda) {
    const std::size_t cb = index_of(c);
    cpos_[cb] = clist_.size();
    clist_.push_back(cb);
    std::vector<std::uint32_t> l(n), r(n);
    for (std::size_t b = 0; b < n; ++b) {
      l[b] = static_cast<std::uint32_t>(index_of(W.multiply(c, basis_[b])));
      r[b] = static_cast<std::uint32_t>(index_of(W.multiply(basis_[b], c)));
    }
    cleft_.push_back(std::move(l));
    cright_.push_back(std::move(r));
  }
  weyl_ = &W;
}

std::size_t GenericHecke::index_of(std::size_t w) const {
  const auto it = pos_.find(w);
  if (it == pos_.end()) throw InvalidArgument("element is not in W(lambda)");
  return it->second;
}

Specialization GenericHecke::f(int q) const {
  return {"f", std::vector<mpq_class>(static_cast<std::size_t>(nparams_), mpq_class(q))};
}

Specialization GenericHecke::g() const {
  return {"g", std::vector<mpq_class>(static_cast<std::size_t>(nparams_), mpq_class(1))};
}

// ---------------------------------------------------------------------------
// Checks

namespace {

using I128 = __int128;

template <class S>
std::vector<std::vector<std::vector<S>>> full_table(const GenericHecke& h, const std::vector<S>& u) {
  const std::size_t n = h.dim();
  std::vector<std::vector<std::vector<S>>> t(n, std::vector<std::vector<S>>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) t[x][y] = h.left_basis(x, h.unit<S>(y), u);
  return t;
}

template <class S>
std::size_t full_triples(const GenericHecke& h, const std::vector<S>& u, std::size_t& checked) {
  const std::size_t n = h.dim();
  const auto t = full_table(h, u);
  std::size_t fails = 0;
  std::vector<S> lhs(n), rhs(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        std::fill(lhs.begin(), lhs.end(), S(0));
        std::fill(rhs.begin(), rhs.end(), S(0));
        for (std::size_t v = 0; v < n; ++v) {
          const S& a = t[x][y][v];
          if (!(a == S(0)))
            for (std::size_t i = 0; i < n; ++i) lhs[i] += a * t[v][z][i];
          const S& b = t[y][z][v];
          if (!(b == S(0)))
            for (std::size_t i = 0; i < n; ++i) rhs[i] += b * t[x][v][i];
        }
        ++checked;
        if (lhs != rhs) ++fails;
      }
  return fails;
}

}  // namespace

AssociativityReport check_associativity(const GenericHecke& h, int q, std::size_t full_limit,
                                        std::size_t random_triples) {
  AssociativityReport rep;
  const std::size_t n = h.dim();
  const int np = h.num_parameters();
  std::vector<MPoly> u;
  for (int k = 0; k < np; ++k) u.push_back(MPoly::var(k, np));
  std::vector<std::size_t> gens;
  for (int k = 0; k < h.num_generators(); ++k) gens.push_back(h.generator_index(k));
  for (auto c : h.complement()) gens.push_back(c);

  for (auto s : gens)
    for (auto t : gens) {
      const auto st = h.left_basis(s, h.unit<MPoly>(t), u);
      for (std::size_t w = 0; w < n; ++w) {
        const auto e = h.unit<MPoly>(w);
        const auto lhs = h.multiply(st, e, u);
        const auto rhs = h.left_basis(s, h.left_basis(t, e, u), u);
        ++rep.generic_checked;
        if (lhs != rhs) ++rep.failures;
      }
    }
  // Left rule against right rule.
  const bool all_pairs = n <= full_limit;
  for (std::size_t x = 0; x < n; ++x) {
    if (!all_pairs && std::find(gens.begin(), gens.end(), x) == gens.end()) continue;
    for (std::size_t w = 0; w < n; ++w) {
      ++rep.rule_checked;
      if (h.left_basis(x, h.unit<MPoly>(w), u) != h.right_basis(h.unit<MPoly>(x), w, u)) ++rep.failures;
    }
  }
  if (all_pairs) {
    rep.full = true;
    // Structure constants are bounded by (2q)^(2 * length); fall back to GMP if int128 could overflow.
    int maxlen = 0;
    for (std::size_t b = 0; b < n; ++b) maxlen = std::max(maxlen, static_cast<int>(h.reduced_word(b).size()));
    const double bits = 2.0 * maxlen * std::log2(2.0 * q) + 2.0 * std::log2(static_cast<double>(n) + 1.0) + 4.0;
    for (int val : {1, q}) {
      if (bits < 120) {
        rep.failures += full_triples(h, std::vector<I128>(static_cast<std::size_t>(np), I128(val)), rep.full_checked);
      } else {
        rep.failures +=
            full_triples(h, std::vector<mpz_class>(static_cast<std::size_t>(np), mpz_class(val)), rep.full_checked);
      }
    }
  } else {
    const std::vector<mpz_class> uq(static_cast<std::size_t>(np), mpz_class(q));
    std::mt19937_64 rng(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t k = 0; k < random_triples; ++k) {
      const auto x = pick(rng), y = pick(rng), z = pick(rng);
      const auto lhs = h.right_basis(h.left_basis(x, h.unit<mpz_class>(y), uq), z, uq);
      const auto rhs = h.left_basis(x, h.left_basis(y, h.unit<mpz_class>(z), uq), uq);
      ++rep.random_checked;
      if (lhs != rhs) ++rep.failures;
    }
  }
  return rep;
}

std::size_t check_dual_basis(const GenericHecke& h, const Specialization& s) {
  const std::size_t n = h.dim();
  std::size_t bad = 0;
  const auto id = h.identity_index();
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w) {
      const auto p = h.left_basis(v, h.unit<mpq_class>(h.inverse_index(w)), s.u);
      const mpq_class pairing = p[id] / h.ind(w, s.u);
      if (pairing != (v == w ? 1 : 0)) ++bad;
    }
  return bad;
}

bool is_group_algebra_at_g(const GenericHecke& h) {
  const std::vector<long long> one(static_cast<std::size_t>(h.num_parameters()), 1);
  for (std::size_t x = 0; x < h.dim(); ++x)
    for (std::size_t y = 0; y < h.dim(); ++y) {
      const auto p = h.left_basis(x, h.unit<long long>(y), one);
      const auto xy = h.index_of(h.weyl().multiply(h.element(x), h.element(y)));
      if (p != h.unit<long long>(xy)) return false;
    }
  return true;
}

bool check_group_idempotents(const GenericHecke& h, const torus::WeylSubgroupTable& tab) {
  const std::size_t n = h.dim();
  const std::vector<cyc::Cyc> one(static_cast<std::size_t>(h.num_parameters()), cyc::Cyc(1));
  std::vector<cyc::Cyc> total(n, cyc::Cyc(0));
  for (std::size_t eta = 0; eta < tab.table.size(); ++eta) {
    std::vector<cyc::Cyc> e(n);
    for (std::size_t b = 0; b < n; ++b) e[b] = tab.table.rows[eta][tab.class_of(h.element(h.inverse_index(b)))];
    const auto ee = h.multiply(e, e, one);
    const cyc::Cyc k(static_cast<std::int64_t>(n) / tab.table.degrees[eta]);
    for (std::size_t b = 0; b < n; ++b)
      if (!(ee[b] == k * e[b])) return false;
    for (int g = 0; g < h.num_generators(); ++g) {
      const auto s = h.generator_index(g);
      if (h.left_basis(s, e, one) != h.right_basis(e, s, one)) return false;
    }
    for (std::size_t b = 0; b < n; ++b) total[b] += cyc::Cyc(tab.table.degrees[eta]) * e[b];
  }
  for (std::size_t b = 0; b < n; ++b)
    if (!(total[b] == (b == h.identity_index() ? cyc::Cyc(static_cast<std::int64_t>(n)) : cyc::Cyc(0)))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Numeric block separation

namespace {

struct NumBlock {
  CLD theta;
  std::size_t size = 0;
  std::int64_t degree = 0;
  CLD c;
  std::vector<CLD> values;
  std::vector<CLD> shape;  // values / sqrt(ind), used to follow blocks along a path
  std::size_t eta = 0;
};

// Blocks of H at real parameters u.  A complex x keeps eigenvalues of
// distinct blocks from crossing along a real parameter path.
std::optional<std::vector<NumBlock>> numeric_blocks(const GenericHecke& h, const std::vector<LD>& u_real,
                                                                   std::size_t expected, unsigned seed) {
  const std::size_t n = h.dim();
  std::vector<CLD> u(u_real.begin(), u_real.end());
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  // Work in the basis a_w / sqrt(ind(w)), where structure constants stay bounded.
  std::vector<LD> root_ind(n);
  for (std::size_t w = 0; w < n; ++w) root_ind[w] = std::sqrt(h.ind(w, u_real));
  std::vector<CLD> x(n);
  for (std::size_t w = 0; w < n; ++w) x[w] = CLD(dist(rng), dist(rng)) / root_ind[w];
  const auto z = h.casimir(x, u);
  Eigen::Matrix<CLD, Eigen::Dynamic, Eigen::Dynamic> m(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto col = h.left_basis(v, z, u);
    for (std::size_t i = 0; i < n; ++i)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(v)) = col[i] * root_ind[i] / root_ind[v];
  }
  Eigen::ComplexEigenSolver<decltype(m)> es(m, false);
  if (es.info() != Eigen::Success) return std::nullopt;
  const auto ev = es.eigenvalues();
  LD scale = 1;
  for (Eigen::Index i = 0; i < ev.size(); ++i) scale = std::max(scale, std::abs(ev[i]));
  // Single linkage down to the expected number of clusters; the last merge
  // must be far shorter than the first edge left unmerged.
  const auto ne = static_cast<std::size_t>(ev.size());
  if (ne < expected) return std::nullopt;
  std::vector<std::tuple<LD, std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t j = i + 1; j < ne; ++j)
      edges.emplace_back(std::abs(ev[static_cast<Eigen::Index>(i)] - ev[static_cast<Eigen::Index>(j)]), i, j);
  std::sort(edges.begin(), edges.end());
  std::vector<std::size_t> parent(ne);
  for (std::size_t i = 0; i < ne; ++i) parent[i] = i;
  const auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::size_t components = ne;
  LD merged = 0, next = std::numeric_limits<LD>::infinity();
  for (const auto& [d, i, j] : edges) {
    const auto a1 = find(i), b1 = find(j);
    if (a1 == b1) continue;
    if (components == expected) {
      next = d;
      break;
    }
    parent[a1] = b1;
    --components;
    merged = d;
  }
  if (!(merged <= 1e-6L * next) || merged > 1e-9L * scale) return std::nullopt;
  std::vector<NumBlock> blocks;
  std::map<std::size_t, std::size_t> root_block;
  for (std::size_t i = 0; i < ne; ++i) {
    const auto r = find(i);
    auto [it, fresh] = root_block.emplace(r, blocks.size());
    if (fresh) blocks.push_back(NumBlock{});
    auto& b = blocks[it->second];
    b.theta += ev[static_cast<Eigen::Index>(i)];
    ++b.size;
  }
  for (auto& b : blocks) b.theta /= static_cast<LD>(b.size);
  if (blocks.size() != expected) return std::nullopt;
  for (auto& b : blocks) {
    const auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(b.size))));
    if (static_cast<std::size_t>(r * r) != b.size) return std::nullopt;
    b.degree = r;
  }
  const auto id = h.identity_index();
  const auto mult = [&](const std::vector<CLD>& p, const std::vector<CLD>& q) { return h.multiply(p, q, u); };
  // Rescales p to the nearest multiple k p with (k p)^2 ~ k p; returns the defect.
  const auto rescale = [&](std::vector<CLD>& p) -> LD {
    const auto p2 = mult(p, p);
    CLD num = 0;
    LD den = 0;
    for (std::size_t i = 0; i < n; ++i) {
      num += std::conj(p2[i]) * p[i];
      den += std::norm(p2[i]);
    }
    if (den == 0) return std::numeric_limits<LD>::infinity();
    const CLD k = num / den;
    LD defect = 0, size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      defect = std::max(defect, std::abs(k * k * p2[i] - k * p[i]) * root_ind[i]);
      size = std::max(size, std::abs(k * p[i]) * root_ind[i]);
      p[i] *= k;
    }
    return size == 0 ? std::numeric_limits<LD>::infinity() : defect / size;
  };

  // Extract idempotents one at a time, always the block whose eigenvalue is
  // most isolated among those left, projecting the complement of the blocks
  // already found and refining by e <- 3e^2 - 2e^3.
  const auto to_hat = [&](const std::vector<CLD>& y) {
    Eigen::Matrix<CLD, Eigen::Dynamic, 1> v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = y[i] * root_ind[i];
    return v;
  };
  std::vector<std::size_t> left(blocks.size());
  for (std::size_t i = 0; i < left.size(); ++i) left[i] = i;
  auto rest = h.unit<CLD>(id);
  while (!left.empty()) {
    std::size_t pick = 0;
    LD best_gap = -1;
    for (std::size_t k = 0; k < left.size(); ++k) {
      LD g = std::numeric_limits<LD>::infinity();
      for (auto o : left)
        if (o != left[k]) g = std::min(g, std::abs(blocks[o].theta - blocks[left[k]].theta));
      if (g > best_gap) {
        best_gap = g;
        pick = k;
      }
    }
    auto& b = blocks[left[pick]];
    // Shifted inverse iteration: z is the scalar theta_b on the block, so the
    // block component of rest is only rescaled while the others shrink.
    const LD near = std::isfinite(static_cast<double>(best_gap)) ? best_gap : scale;
    const CLD sigma = b.theta + CLD(1e-6L * near, 1e-6L * near);
    const Eigen::PartialPivLU<Eigen::Matrix<CLD, Eigen::Dynamic, Eigen::Dynamic>> lu(
        m - sigma * Eigen::Matrix<CLD, Eigen::Dynamic, Eigen::Dynamic>::Identity(m.rows(), m.cols()));
    auto v = to_hat(rest);
    for (int pass = 0; pass < 2; ++pass) {
      v = lu.solve(v);
      v /= v.norm();
    }
    std::vector<CLD> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = v(static_cast<Eigen::Index>(i)) / root_ind[i];
    if (!std::isfinite(static_cast<double>(rescale(e)))) return std::nullopt;
    for (int it = 0; it < 10; ++it) {
      const auto e2 = mult(e, e);
      const auto e3 = mult(e2, e);
      LD change = 0, size = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const CLD next = LD(3) * e2[i] - LD(2) * e3[i];
        change = std::max(change, std::abs(next - e[i]) * root_ind[i]);
        size = std::max(size, std::abs(next) * root_ind[i]);
        e[i] = next;
      }
      if (change <= 1e-17L * size) break;
    }
    // e must lie in the eigenspace of theta_b.
    const auto eh = to_hat(e);
    const LD resid = (m * eh - b.theta * eh).norm();
    if (!(resid <= 1e-3L * std::min(best_gap, scale) * eh.norm())) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) rest[i] -= e[i];
    left.erase(left.begin() + static_cast<std::ptrdiff_t>(pick));
    const CLD tau = e[id];
    if (std::abs(tau) < 1e-30L) return std::nullopt;
    b.c = static_cast<LD>(b.degree) / tau;
    b.values.resize(n);
    b.shape.resize(n);
    for (std::size_t w = 0; w < n; ++w) {
      b.values[w] = b.c * h.ind(w, u_real) * e[h.inverse_index(w)];
      b.shape[w] = b.values[w] / root_ind[w];
    }
  }
  return blocks;
}

std::optional<std::vector<NumBlock>> numeric_blocks_retry(const GenericHecke& h, const std::vector<LD>& u,
                                                          std::size_t expected) {
  for (unsigned seed = 1; seed <= 3; ++seed)
    if (auto b = numeric_blocks(h, u, expected, seed)) return b;
  return std::nullopt;
}

LD rel_distance(const NumBlock& a, const NumBlock& b) {
  if (a.degree != b.degree) return std::numeric_limits<LD>::infinity();
  LD d = 0, s = 1;
  for (std::size_t w = 0; w < a.shape.size(); ++w) {
    d = std::max(d, std::abs(a.shape[w] - b.shape[w]));
    s = std::max(s, std::abs(a.shape[w]));
  }
  return d / s;
}

// Transfers labels from prev to cur; false if the matching is ambiguous.
bool transfer_labels(const std::vector<NumBlock>& prev, std::vector<NumBlock>& cur) {
  std::vector<bool> used(prev.size(), false);
  for (auto& b : cur) {
    LD best = std::numeric_limits<LD>::infinity(), second = best;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < prev.size(); ++i) {
      const LD d = rel_distance(prev[i], b);
      if (d < best) {
        second = best;
        best = d;
        arg = i;
      } else if (d < second) {
        second = d;
      }
    }
    if (!(best < 0.2L) || !(best < 0.25L * second) || used[arg]) return false;
    used[arg] = true;
    b.eta = prev[arg].eta;
  }
  return true;
}

std::vector<NumBlock> label_at_g(const GenericHecke& h, const torus::WeylSubgroupTable& tab) {
  const std::vector<LD> one(static_cast<std::size_t>(h.num_parameters()), 1.0L);
  auto blocks = numeric_blocks_retry(h, one, tab.table.size());
  if (!blocks) throw Error("block separation failed at u = 1");
  std::vector<bool> used(tab.table.size(), false);
  for (auto& b : *blocks) {
    bool found = false;
    for (std::size_t eta = 0; eta < tab.table.size() && !found; ++eta) {
      if (used[eta] || tab.table.degrees[eta] != b.degree) continue;
      LD d = 0;
      for (std::size_t w = 0; w < h.dim(); ++w) {
        const auto z = tab.table.rows[eta][tab.class_of(h.element(w))].to_complex();
        d = std::max(d, std::abs(b.values[w] - CLD(z.real(), z.imag())));
      }
      if (d < 1e-6L) {
        used[eta] = true;
        b.eta = eta;
        found = true;
      }
    }
    if (!found) throw Error("block at u = 1 does not match Irr(W(lambda))");
  }
  return *blocks;
}

// det(X I - A) over Q by reduction to Hessenberg form.
std::vector<mpq_class> charpoly_q(std::vector<std::vector<mpq_class>> a) {
  const std::size_t n = a.size();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t piv = m;
    while (piv < n && a[piv][m - 1] == 0) ++piv;
    if (piv == n) continue;
    if (piv != m) {
      std::swap(a[piv], a[m]);
      for (auto& row : a) std::swap(row[piv], row[m]);
    }
    for (std::size_t i = m + 1; i < n; ++i) {
      if (a[i][m - 1] == 0) continue;
      const mpq_class f = a[i][m - 1] / a[m][m - 1];
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[m][j];
      for (std::size_t r = 0; r < n; ++r) a[r][m] += f * a[r][i];
    }
  }
  // p_k = charpoly of the leading k x k block.
  std::vector<std::vector<mpq_class>> p(n + 1);
  p[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<mpq_class> cur(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) {
      cur[i + 1] += p[k - 1][i];
      cur[i] -= a[k - 1][k - 1] * p[k - 1][i];
    }
    mpq_class prod = 1;
    for (std::size_t i = k - 1; i-- > 0;) {
      prod *= a[i + 1][i];
      if (prod == 0) break;
      const mpq_class coef = prod * a[i][k - 1];
      for (std::size_t j = 0; j < p[i].size(); ++j) cur[j] -= coef * p[i][j];
    }
    p[k] = std::move(cur);
  }
  return p[n];
}

// Divides p by (X - e) in place; returns false if the remainder is nonzero.
bool divide_linear(std::vector<mpz_class>& p, const mpz_class& e) {
  const std::size_t n = p.size() - 1;
  std::vector<mpz_class> q(n);
  mpz_class carry = 0;
  for (std::size_t i = n + 1; i-- > 1;) {
    carry = carry * e + p[i];
    q[i - 1] = carry;
  }
  if (carry * e + p[0] != 0) return false;
  p = std::move(q);
  return true;
}

mpz_class newton_root(const std::vector<mpz_class>& p, LD approx, std::size_t mult) {
  std::size_t bits = 64;
  for (const auto& c : p) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  const mp_bitcnt_t prec = static_cast<mp_bitcnt_t>(bits + 256);
  mpf_class x(0, prec);
  {
    std::ostringstream os;
    os.precision(21);
    os << approx;
    x = mpf_class(os.str(), prec);
  }
  for (int it = 0; it < 200; ++it) {
    mpf_class v(0, prec), dv(0, prec);
    for (std::size_t i = p.size(); i-- > 0;) {
      dv = dv * x + v;
      v = v * x + mpf_class(p[i], prec);
    }
    if (v == 0 || dv == 0) break;
    const mpf_class step = mpf_class(static_cast<unsigned long>(mult), prec) * v / dv;
    x -= step;
    if (abs(step) < 1e-3) break;
  }
  mpf_class r = floor(x + 0.5);
  return mpz_class(r);
}

SemisimpleDecomposition certify(const GenericHecke& h, const Specialization& s, const std::vector<NumBlock>& blocks) {
  const std::size_t n = h.dim();
  const auto z1 = h.casimir(h.unit<mpq_class>(h.identity_index()), s.u);
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  mpz_class den = 1;
  for (std::size_t v = 0; v < n; ++v) {
    const auto col = h.left_basis(v, z1, s.u);
    for (std::size_t i = 0; i < n; ++i) {
      a[i][v] = col[i];
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), col[i].get_den_mpz_t());
    }
  }
  for (auto& row : a)
    for (auto& x : row) x *= den;
  const auto pq = charpoly_q(a);
  std::vector<mpz_class> p;
  for (const auto& c : pq) {
    if (c.get_den() != 1) throw Falsification("scaled Casimir matrix has a non-integral characteristic polynomial");
    p.push_back(c.get_num());
  }

  // Group numeric blocks by the eigenvalue c * eta(1) of the Casimir of 1.
  std::vector<std::pair<LD, std::vector<std::size_t>>> groups;
  const LD dd = static_cast<LD>(den.get_d());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const LD val = dd * blocks[i].c.real() * static_cast<LD>(blocks[i].degree);
    bool placed = false;
    for (auto& [g, members] : groups)
      if (std::abs(g - val) <= 1e-6L * std::max<LD>(1, std::abs(g))) {
        members.push_back(i);
        placed = true;
        break;
      }
    if (!placed) groups.push_back({val, {i}});
  }
  SemisimpleDecomposition dec;
  dec.spec = s;
  std::vector<mpz_class> rest = p;
  for (const auto& [val, members] : groups) {
    std::size_t mult = 0;
    for (auto i : members) mult += static_cast<std::size_t>(blocks[i].degree * blocks[i].degree);
    const mpz_class e = newton_root(p, val, mult);
    for (std::size_t k = 0; k < mult; ++k)
      if (!divide_linear(rest, e)) throw Falsification("Casimir eigenvalue " + e.get_str() + " has lower multiplicity");
    for (auto i : members) {
      Block b;
      b.eta = blocks[i].eta;
      b.degree = blocks[i].degree;
      b.schur = mpq_class(e, den * blocks[i].degree);
      b.schur.canonicalize();
      b.values.resize(n);
      for (std::size_t w = 0; w < n; ++w)
        b.values[w] = {static_cast<double>(blocks[i].values[w].real()), static_cast<double>(blocks[i].values[w].imag())};
      dec.blocks.push_back(std::move(b));
    }
  }
  if (rest.size() != 1 || rest[0] != 1) throw Falsification("Casimir spectrum not accounted for by the blocks");
  mpq_class sum = 0;
  for (const auto& b : dec.blocks) sum += mpq_class(b.degree) / b.schur;
  if (sum != 1) throw Falsification("sum of eta(1)/c_eta is " + sum.get_str() + ", not 1");
  std::sort(dec.blocks.begin(), dec.blocks.end(), [](const Block& x, const Block& y) { return x.eta < y.eta; });
  return dec;
}

std::vector<LD> to_ld(const std::vector<mpq_class>& u) {
  std::vector<LD> r;
  for (const auto& x : u) r.push_back(static_cast<LD>(x.get_d()));
  return r;
}

}  // namespace

std::vector<SemisimpleDecomposition> decompose_path(const GenericHecke& h, const torus::WeylSubgroupTable& tab,
                                                    const std::vector<Specialization>& targets) {
  if (tab.elements != h.elements()) throw InvalidArgument("table does not belong to W(lambda)");
  for (const auto& t : targets) {
    if (t.u.size() != static_cast<std::size_t>(h.num_parameters())) throw InvalidArgument("wrong parameter count");
    for (const auto& x : t.u)
      if (x <= 0) throw InvalidArgument("parameters must be positive");
  }
  auto cur = label_at_g(h, tab);
  std::vector<LD> from(static_cast<std::size_t>(h.num_parameters()), 1.0L);
  std::vector<SemisimpleDecomposition> out;
  std::size_t steps = 0;
  for (const auto& target : targets) {
    const auto to = to_ld(target.u);
    LD s = 0, step = 0.125L;
    while (s < 1) {
      const LD next = std::min<LD>(1, s + step);
      std::vector<LD> u(from.size());
      for (std::size_t k = 0; k < u.size(); ++k) u[k] = from[k] + next * (to[k] - from[k]);
      auto nb = numeric_blocks_retry(h, u, tab.table.size());
      if (nb && transfer_labels(cur, *nb)) {
        cur = std::move(*nb);
        s = next;
        ++steps;
        step = std::min<LD>(step * 1.5L, 0.25L);
      } else {
        step /= 2;
        if (step < 1e-6L) throw Error("parameter homotopy could not separate the blocks");
      }
    }
    from = to;
    out.push_back(certify(h, target, cur));
    out.back().homotopy_steps = steps;
  }
  return out;
}

SemisimpleDecomposition decompose(const GenericHecke& h, const torus::WeylSubgroupTable& tab,
                                  const Specialization& target) {
  return decompose_path(h, tab, {target}).front();
}

std::vector<SchurEntry> schur_elements(const SemisimpleDecomposition& dec, std::size_t group_order) {
  std::vector<SchurEntry> out;
  for (const auto& b : dec.blocks) {
    if (b.schur <= 0) throw Falsification("non-positive Schur element");
    SchurEntry e{b.eta, b.degree, b.schur, 1 / b.schur, "unknown"};
    mpq_class expected(static_cast<long>(group_order), static_cast<long>(b.degree));
    expected.canonicalize();
    if (dec.spec.tag == "g" && b.schur != expected)
      throw Falsification("Schur element at u = 1 differs from |W(lambda)|/eta(1)");
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Schur functions

mpq_class LaurentPoly::eval(const mpq_class& u) const {
  mpq_class r = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) r = r * u + coeffs[i];
  mpq_class shift = 1;
  for (int k = 0; k < std::abs(low); ++k) shift *= u;
  if (low >= 0) return r * shift;
  return r / shift;
}

std::string LaurentPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    const mpq_class& c = coeffs[i];
    if (c == 0) continue;
    const int e = low + static_cast<int>(i);
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    const mpq_class a = abs(c);
    if (a != 1 || e == 0) os << a.get_str();
    if (e != 0) {
      if (a != 1) os << "*";
      os << "u";
      if (e != 1) os << "^" << e;
    }
  }
  return first ? "0" : os.str();
}

std::vector<std::optional<LaurentPoly>> schur_functions(const GenericHecke& h, const torus::WeylSubgroupTable& tab,
                                                        int max_exponent) {
  const int npts = 2 * max_exponent + 2;  // interpolation points 1..2N+1, check at 2N+2
  std::vector<Specialization> targets;
  for (int u = 2; u <= npts; ++u)
    targets.push_back({"custom", std::vector<mpq_class>(static_cast<std::size_t>(h.num_parameters()), mpq_class(u))});
  const auto decs = decompose_path(h, tab, targets);
  const std::size_t k = tab.table.size();
  // values[eta][u-1]
  std::vector<std::vector<mpq_class>> values(k);
  for (std::size_t eta = 0; eta < k; ++eta)
  {
    mpq_class v(static_cast<long>(h.dim()), static_cast<long>(tab.table.degrees[eta]));
    v.canonicalize();
    values[eta].push_back(v);
  }
  for (const auto& d : decs)
    for (const auto& b : d.blocks) values[b.eta].push_back(b.schur);

  std::vector<std::optional<LaurentPoly>> out;
  for (std::size_t eta = 0; eta < k; ++eta) {
    // Newton interpolation of u^N c(u) through u = 1..2N+1.
    const int m = npts - 1;
    std::vector<mpq_class> xs, ys;
    for (int i = 0; i < m; ++i) {
      const mpq_class u(i + 1);
      mpq_class un = 1;
      for (int e = 0; e < max_exponent; ++e) un *= u;
      xs.push_back(u);
      ys.push_back(values[eta][static_cast<std::size_t>(i)] * un);
    }
    std::vector<mpq_class> dd = ys;
    for (int j = 1; j < m; ++j)
      for (int i = m - 1; i >= j; --i)
        dd[static_cast<std::size_t>(i)] = (dd[static_cast<std::size_t>(i)] - dd[static_cast<std::size_t>(i - 1)]) /
                                          (xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(i - j)]);
    std::vector<mpq_class> poly{dd[static_cast<std::size_t>(m - 1)]};
    for (int i = m - 2; i >= 0; --i) {
      // poly = poly * (X - xs[i]) + dd[i]
      std::vector<mpq_class> next(poly.size() + 1, 0);
      for (std::size_t j = 0; j < poly.size(); ++j) {
        next[j + 1] += poly[j];
        next[j] -= poly[j] * xs[static_cast<std::size_t>(i)];
      }
      next[0] += dd[static_cast<std::size_t>(i)];
      poly = std::move(next);
    }
    LaurentPoly lp{-max_exponent, poly};
    while (!lp.coeffs.empty() && lp.coeffs.back() == 0) lp.coeffs.pop_back();
    while (!lp.coeffs.empty() && lp.coeffs.front() == 0) {
      lp.coeffs.erase(lp.coeffs.begin());
      ++lp.low;
    }
    if (lp.eval(mpq_class(npts)) == values[eta].back()) out.push_back(lp);
    else out.push_back(std::nullopt);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Series degrees

const SemisimpleDecomposition& DecompositionCache::get(const torus::TorusModel& t, const torus::RelWeylData& d) {
  auto key = std::make_tuple(d.w_lambda, d.delta, t.q());
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  GenericHecke h(t, d);
  const auto& tab = t.subgroup_table(d.w_lambda);
  return memo_.emplace(key, decompose(h, tab, h.f(t.q()))).first->second;
}

mpz_class split_index_p_prime(const roots::WeylGroup& w, int q) {
  mpz_class num = 1, den = 1;
  for (int d : roots::fundamental_degrees(w)) {
    mpz_class qd;
    mpz_ui_pow_ui(qd.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(d));
    num *= qd - 1;
    den *= q - 1;
  }
  if (num % den != 0) throw Falsification("|G|_{p'} not divisible by |T|");
  return num / den;
}

SeriesResult series_degrees(const torus::TorusModel& t, const torus::Lambda& l, DecompositionCache* cache) {
  if (t.d() != 1) throw Unsupported("series degrees implemented for the split torus only");
  const auto d = torus::phi_lambda(t, l);
  SeriesResult r;
  r.lambda = d.lambda;
  r.w_lambda_order = d.w_lambda.size();
  r.index_p_prime = split_index_p_prime(t.weyl(), t.q());
  DecompositionCache local;
  const auto& dec = (cache ? *cache : local).get(t, d);
  for (const auto& b : dec.blocks) {
    const mpq_class deg = mpq_class(r.index_p_prime) / b.schur;
    if (deg.get_den() != 1 || deg <= 0)
      throw Falsification("non-integral degree " + deg.get_str() + " for lambda orbit");
    r.degrees.push_back({b.eta, b.degree, b.schur, deg.get_num()});
  }
  return r;
}

std::size_t relabel_sigma(const torus::WeylSubgroupTable& src, const torus::WeylSubgroupTable& dst, std::size_t eta,
                          const std::function<std::size_t(std::size_t)>& sigma_inverse, std::size_t delta,
                          const std::vector<std::size_t>& r_target, const roots::WeylGroup& w) {
  if (eta >= src.table.size() || delta >= dst.table.size()) throw InvalidArgument("character index out of range");
  if (dst.table.degrees[delta] != 1) throw InvalidArgument("delta is not linear");
  for (auto r : r_target)
    if (!(dst.table.rows[delta][dst.class_of(r)] == cyc::Cyc(1)))
      throw InvalidArgument("delta is not trivial on R(sigma lambda)");
  groups::ClassFunction image(dst.classes.size());
  for (std::size_t k = 0; k < dst.classes.size(); ++k) {
    const auto y = *w.index_of(dst.group->element(dst.classes.reps[k]));
    const auto x = sigma_inverse(y);
    image[k] = src.table.rows[eta][src.class_of(x)] * dst.table.rows[delta][k].conj();
  }
  for (std::size_t r = 0; r < dst.table.size(); ++r)
    if (dst.table.rows[r] == image) return r;
  throw Falsification("relabelled character is not irreducible");
}

}  // namespace hcv::hecke
