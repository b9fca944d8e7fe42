#include "hcv/torus.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hcv/error.hpp"

namespace hcv::torus {

using groups::Bytes;
using groups::FiniteGroup;

namespace {

int mod(long long a, int m) {
  const long long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

bool w0_is_minus_one(const roots::WeylGroup& w) {
  const auto& rs = w.roots();
  for (std::size_t r = 0; r < rs.size(); ++r)
    if (w.act(w.longest(), r) != rs.negative(r)) return false;
  return true;
}

Bytes to_bytes(std::span<const std::uint8_t> p) { return Bytes(p.begin(), p.end()); }

}  // namespace

std::size_t WeylSubgroupTable::position(std::size_t w) const {
  const auto it = std::lower_bound(elements.begin(), elements.end(), w);
  if (it == elements.end() || *it != w) throw InvalidArgument("element not in the subgroup");
  return static_cast<std::size_t>(it - elements.begin());
}

TorusModel::TorusModel(const roots::CartanDatum& datum, int q, int d, groups::CacheOptions cache)
    : q_(q), d_(d), cache_(std::move(cache)) {
  if (q < 3 || q % 2 == 0) throw InvalidArgument("q must be an odd prime power >= 3");
  if (d != 1 && d != 2) throw InvalidArgument("d must be 1 or 2");
  weyl_ = std::make_shared<const roots::WeylGroup>(roots::build_root_system(datum));
  if (d == 2 && !w0_is_minus_one(*weyl_))
    throw Unsupported("d = 2 needs w0 = -1; " + datum.name() + " is out of scope");
  m_ = d == 1 ? q - 1 : q + 1;
  count_ = 1;
  for (int i = 0; i < rank(); ++i) {
    count_ *= static_cast<std::size_t>(m_);
    if (count_ > 50'000'000) throw CapExceeded("torus character group too large");
  }
}

std::size_t TorusModel::encode(const Lambda& l) const {
  std::size_t c = 0;
  for (int i = rank() - 1; i >= 0; --i) c = c * static_cast<std::size_t>(m_) + static_cast<std::size_t>(l[static_cast<std::size_t>(i)]);
  return c;
}

Lambda TorusModel::decode(std::size_t code) const {
  Lambda l(static_cast<std::size_t>(rank()));
  for (auto& x : l) {
    x = static_cast<int>(code % static_cast<std::size_t>(m_));
    code /= static_cast<std::size_t>(m_);
  }
  return l;
}

Lambda TorusModel::reduce(Lambda l) const {
  if (l.size() != static_cast<std::size_t>(rank())) throw InvalidArgument("character has wrong rank");
  for (auto& x : l) x = mod(x, m_);
  return l;
}

int TorusModel::pairing(const Lambda& l, std::size_t root) const {
  const auto& c = roots().coroot(root);
  long long s = 0;
  for (std::size_t k = 0; k < c.size(); ++k) s += static_cast<long long>(c[k]) * l[k];
  return mod(s, m_);
}

Lambda TorusModel::reflect(int i, const Lambda& l) const {
  // (s_i l)(alpha_j^vee) = l_j - <alpha_i, alpha_j^vee> l_i
  const auto& a = datum().cartan;
  Lambda out(l.size());
  const auto ui = static_cast<std::size_t>(i);
  for (std::size_t j = 0; j < l.size(); ++j) out[j] = mod(l[j] - static_cast<long long>(a[j][ui]) * l[ui], m_);
  return out;
}

Lambda TorusModel::act(std::size_t w, const Lambda& l) const {
  const auto& word = weyl_->word(w);
  Lambda out = l;
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = reflect(*it, out);
  return out;
}

Lambda TorusModel::act(const roots::DiagramAut& g, const Lambda& l) const {
  Lambda out(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) out[static_cast<std::size_t>(g.perm[i])] = l[i];
  return out;
}

bool TorusModel::action_relations_hold() const {
  const int r = rank();
  const auto& a = datum().cartan;
  for (std::size_t code = 0; code < count_; ++code) {
    const Lambda l = decode(code);
    for (int i = 0; i < r; ++i) {
      if (reflect(i, reflect(i, l)) != l) return false;
      for (int j = i + 1; j < r; ++j) {
        const int prod = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                         a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        const int m = prod == 0 ? 2 : prod == 1 ? 3 : prod == 2 ? 4 : 6;
        Lambda x = l, y = l;
        for (int k = 0; k < m; ++k) {
          x = reflect(k % 2 == 0 ? i : j, x);
          y = reflect(k % 2 == 0 ? j : i, y);
        }
        if (x != y) return false;
      }
    }
  }
  return true;
}

const WeylSubgroupTable& TorusModel::subgroup_table(const std::vector<std::size_t>& elements) const {
  auto it = tables_.find(elements);
  if (it != tables_.end()) return *it->second;
  auto t = std::make_unique<WeylSubgroupTable>();
  t->elements = elements;
  const auto u = groups::Universe::permutations(static_cast<int>(roots().size()));
  std::vector<Bytes> gens{u.identity()};
  t->group = std::make_unique<FiniteGroup>(u, gens);
  for (auto w : elements) {
    const auto p = weyl_->perm(w);
    if (t->group->contains(p)) continue;
    gens.push_back(to_bytes(p));
    t->group = std::make_unique<FiniteGroup>(u, gens);
  }
  if (t->group->order() != elements.size()) throw Falsification("element set is not a subgroup of W");
  t->classes = groups::conjugacy_classes(*t->group);
  t->table = groups::character_table(*t->group, t->classes, cache_);
  t->class_by_position.resize(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i)
    t->class_by_position[i] = t->classes.class_of[*t->group->index_of(weyl_->perm(elements[i]))];
  return *tables_.emplace(elements, std::move(t)).first->second;
}

std::vector<std::size_t> stabilizer(const TorusModel& t, const Lambda& l) {
  const Lambda lam = t.reduce(l);
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < t.weyl().order(); ++w)
    if (t.act(w, lam) == lam) out.push_back(w);
  return out;
}

RelWeylData phi_lambda(const TorusModel& t, const Lambda& l) {
  const auto& rs = t.roots();
  const auto& w = t.weyl();
  RelWeylData d;
  d.lambda = t.reduce(l);
  d.w_lambda = stabilizer(t, d.lambda);
  d.in_phi.assign(rs.size(), false);
  for (std::size_t r = 0; r < rs.size(); ++r)
    if (t.pairing(d.lambda, r) == 0) {
      d.in_phi[r] = true;
      d.phi.push_back(r);
    }
  d.delta = roots::simple_system(rs, d.phi);
  d.r_lambda = roots::reflection_subgroup(w, d.phi).elements;

  const std::set<std::size_t> delta(d.delta.begin(), d.delta.end());
  for (auto x : d.w_lambda) {
    bool keeps = true;
    for (auto a : d.delta) keeps = keeps && delta.count(w.act(x, a));
    if (keeps) d.c_lambda.push_back(x);
    for (auto a : d.phi)
      if (!d.in_phi[w.act(x, a)]) throw Falsification("phi_lambda is not W(lambda)-stable");
  }
  if (!std::includes(d.w_lambda.begin(), d.w_lambda.end(), d.r_lambda.begin(), d.r_lambda.end()))
    throw Falsification("R(lambda) is not contained in W(lambda)");
  std::set<std::size_t> prod;
  for (auto r : d.r_lambda)
    for (auto c : d.c_lambda) prod.insert(w.multiply(r, c));
  if (prod.size() != d.w_lambda.size() || d.r_lambda.size() * d.c_lambda.size() != d.w_lambda.size())
    throw Falsification("W(lambda) is not R(lambda) x| C(lambda)");

  // Parameter symbols: W(lambda)-orbits on phi, restricted to delta.
  std::vector<int> orbit(rs.size(), -1);
  int next = 0;
  for (auto a : d.delta) {
    if (orbit[a] >= 0) continue;
    for (auto x : d.w_lambda) orbit[w.act(x, a)] = next;
    ++next;
  }
  for (auto a : d.delta) d.parameter_class.push_back(orbit[a]);
  d.num_parameters = next;
  return d;
}

std::vector<Orbit> orbits(const TorusModel& t) {
  std::vector<bool> seen(t.num_characters(), false);
  std::vector<Orbit> out;
  for (std::size_t c = 0; c < t.num_characters(); ++c) {
    if (seen[c]) continue;
    seen[c] = true;
    std::vector<std::size_t> queue{c};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Lambda l = t.decode(queue[qi]);
      for (int i = 0; i < t.rank(); ++i) {
        const auto d = t.encode(t.reflect(i, l));
        if (!seen[d]) {
          seen[d] = true;
          queue.push_back(d);
        }
      }
    }
    out.push_back({t.decode(c), queue.size()});
  }
  return out;
}

LocalCount local_count(const TorusModel& t, Parity parity) {
  LocalCount out;
  const std::size_t wo = t.weyl().order();
  for (const auto& o : orbits(t)) {
    ++out.orbits;
    const auto stab = stabilizer(t, o.rep);
    if (stab.size() * o.size != wo) throw Falsification("orbit-stabiliser count mismatch");
    const auto& tab = t.subgroup_table(stab);
    for (std::size_t eta = 0; eta < tab.table.size(); ++eta) {
      LocalLabel lab{o.rep, o.size, stab.size(), eta, tab.table.degrees[eta],
                     static_cast<std::int64_t>(o.size) * tab.table.degrees[eta]};
      const bool odd = lab.degree % 2 != 0;
      if (odd != (o.size % 2 != 0 && lab.eta_degree % 2 != 0)) throw Falsification("degree parity mismatch");
      ++out.total;
      if (odd) ++out.odd;
      if (parity == Parity::All || odd) out.labels.push_back(std::move(lab));
    }
  }
  return out;
}

int d2(int q) { return q % 4 == 1 ? 1 : 2; }

std::vector<int> epsilon_coordinates(const Lambda& l, int m) {
  std::vector<int> mu(l.size());
  for (std::size_t j = l.size(); j-- > 0;) mu[j] = mod(l[j] + (j + 1 < l.size() ? mu[j + 1] : 0), m);
  return mu;
}

groups::ClassFunction induce_principal(const groups::SymplecticModel& m, const FiniteGroup& g,
                                       const groups::ConjClasses& gcl, const FiniteGroup& borel, const Lambda& l) {
  const int mm = m.q() - 1;
  if (l.size() != static_cast<std::size_t>(m.rank())) throw InvalidArgument("character has wrong rank");
  const auto mu = epsilon_coordinates(l, mm);
  return groups::induce_elementwise(g, gcl, borel, [&](std::size_t b) {
    const auto a = m.torus_coordinates(borel.element(b));
    long long e = 0;
    for (std::size_t j = 0; j < mu.size(); ++j) e += static_cast<long long>(a[j]) * mu[j];
    return cyc::Cyc::root_of_unity(mm, mod(e, mm));
  });
}

std::vector<std::size_t> sl2_cuspidals(const groups::SymplecticModel& m, const FiniteGroup& g,
                                       const groups::ConjClasses& cls, const groups::CharacterTable& t,
                                       const FiniteGroup& borel) {
  if (m.rank() != 1) throw InvalidArgument("sl2_cuspidals needs the rank one model");
  std::vector<bool> principal(t.size(), false);
  for (int k = 0; k < m.q() - 1; ++k) {
    const auto ind = induce_principal(m, g, cls, borel, {k});
    for (std::size_t chi = 0; chi < t.size(); ++chi)
      if (groups::inner_product(cls, t.rows[chi], ind) != 0) principal[chi] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t chi = 0; chi < t.size(); ++chi)
    if (!principal[chi]) out.push_back(chi);
  return out;
}

LeviSeries typeC_levi_series(int l, int q, const groups::CacheOptions& cache) {
  if (l < 1) throw InvalidArgument("rank must be positive");
  LeviSeries s;
  s.l = l;
  s.q = q;
  groups::SymplecticModel m(1, q);
  const auto g = groups::symplectic_group(m);
  const auto cls = groups::conjugacy_classes(g);
  const auto tab = groups::character_table(g, cls, cache);
  const auto b = groups::borel_subgroup(m);
  s.cuspidals = sl2_cuspidals(m, g, cls, tab, b);
  for (auto c : s.cuspidals) s.cuspidal_degrees.push_back(tab.degrees[c]);
  if (l == 1) {
    for (std::size_t i = 0; i < s.cuspidals.size(); ++i)
      s.entries.push_back({{}, s.cuspidals[i], s.cuspidal_degrees[i], 1, 1});
    return s;
  }
  TorusModel t1(roots::CartanDatum::make(roots::Family::C, l - 1), q, 1, cache);
  for (const auto& o : orbits(t1)) {
    const auto stab = stabilizer(t1, o.rep);
    const auto& wt = t1.subgroup_table(stab);
    for (std::size_t i = 0; i < s.cuspidals.size(); ++i)
      s.entries.push_back({o.rep, s.cuspidals[i], s.cuspidal_degrees[i], stab.size(), wt.table.size()});
  }
  return s;
}

std::size_t relabel(const TorusModel& t, const Lambda& l, std::size_t eta, std::size_t w) {
  const auto& wg = t.weyl();
  const Lambda lam = t.reduce(l);
  const auto& src = t.subgroup_table(stabilizer(t, lam));
  const auto& dst = t.subgroup_table(stabilizer(t, t.act(w, lam)));
  if (eta >= src.table.size()) throw InvalidArgument("eta out of range");
  const std::size_t winv = wg.inverse(w);
  groups::ClassFunction image(dst.classes.size());
  for (std::size_t k = 0; k < dst.classes.size(); ++k) {
    const auto y = *wg.index_of(dst.group->element(dst.classes.reps[k]));
    const auto x = wg.multiply(wg.multiply(winv, y), w);
    image[k] = src.table.rows[eta][src.class_of(x)];
  }
  for (std::size_t r = 0; r < dst.table.size(); ++r)
    if (dst.table.rows[r] == image) return r;
  throw Falsification("transported character is not irreducible");
}

}  // namespace hcv::torus
