#include "hcv/tits.hpp"

#include <algorithm>
#include <set>

#include "hcv/error.hpp"

namespace hcv::tits {

using groups::Presentation;

namespace {

int braid_order(const roots::CartanDatum& d, std::size_t i, std::size_t j) {
  switch (d.cartan[i][j] * d.cartan[j][i]) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: throw Unsupported("unexpected Cartan product");
  }
}

Word alternating(int a, int b, int m) {
  Word w;
  for (int k = 0; k < m; ++k) w.push_back(k % 2 == 0 ? a : b);
  return w;
}

Word cat(std::initializer_list<Word> parts) {
  Word w;
  for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
  return w;
}

}  // namespace

Presentation tits_presentation(const roots::CartanDatum& datum) {
  const int l = datum.rank;
  Presentation p;
  for (int i = 0; i < l; ++i) p.generators.push_back("n" + std::to_string(i + 1));
  for (int i = 0; i < l; ++i) p.generators.push_back("h" + std::to_string(i + 1));
  auto N = [](int i) { return n_letter(i); };
  auto H = [l](int i) { return h_letter(l, i); };
  for (int i = 0; i < l; ++i) p.relators.push_back({H(i), H(i)});
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) p.relators.push_back({H(i), H(j), H(i) ^ 1, H(j) ^ 1});
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      const int m = braid_order(datum, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      p.relators.push_back(cat({alternating(N(i), N(j), m), groups::inverse_word(alternating(N(j), N(i), m))}));
    }
  for (int i = 0; i < l; ++i) p.relators.push_back({N(i), N(i), H(i) ^ 1});
  // n_j^-1 h_i n_j = h_j^{<alpha_j, alpha_i^vee>} h_i
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      if (i == j) continue;
      const int a = ((datum.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] % 2) + 2) % 2;
      Word rhs = a ? Word{H(j), H(i)} : Word{H(i)};
      p.relators.push_back(cat({{N(j) ^ 1, H(i), N(j)}, groups::inverse_word(rhs)}));
    }
  return p;
}

ExtendedWeylGroup::ExtendedWeylGroup(const roots::CartanDatum& datum, std::size_t cap)
    : datum_(datum), pres_(tits_presentation(datum)) {
  weyl_ = std::make_unique<roots::WeylGroup>(roots::build_root_system(datum));
  table_ = groups::todd_coxeter(pres_, {}, cap);
  // Breadth-first representative words and the projection to W.
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  words_.assign(table_.index, {});
  proj_.assign(table_.index, kNone);
  proj_[0] = weyl_->identity();
  std::vector<std::size_t> queue{0};
  const int l = rank();
  auto letter_image = [&](int x) -> std::size_t {
    const int g = x / 2;
    if (g < l) return weyl_->generator(g);  // s_i is an involution
    return weyl_->identity();
  };
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::size_t c = queue[qi];
    for (std::size_t x = 0; x < table_.num_letters; ++x) {
      const std::size_t d = table_.act(c, static_cast<int>(x));
      const std::size_t img = weyl_->multiply(proj_[c], letter_image(static_cast<int>(x)));
      if (proj_[d] == kNone) {
        proj_[d] = img;
        words_[d] = words_[c];
        words_[d].push_back(static_cast<int>(x));
        queue.push_back(d);
      } else if (proj_[d] != img) {
        throw Falsification("projection V -> W is not well defined");
      }
    }
  }
}

std::size_t ExtendedWeylGroup::longest_lift() const {
  std::size_t x = identity();
  for (int s : weyl_->word(weyl_->longest())) x = multiply(x, n(s));
  return x;
}

std::vector<std::size_t> ExtendedWeylGroup::closure(const std::vector<std::size_t>& gens) const {
  std::vector<bool> seen(order(), false);
  std::vector<std::size_t> out{identity()};
  seen[identity()] = true;
  for (std::size_t qi = 0; qi < out.size(); ++qi)
    for (auto g : gens) {
      const std::size_t y = multiply(out[qi], g);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> ExtendedWeylGroup::h_subgroup() const {
  std::vector<std::size_t> gens;
  for (int i = 0; i < rank(); ++i) gens.push_back(h(i));
  return closure(gens);
}

bool ExtendedWeylGroup::is_central(std::size_t a) const {
  for (std::size_t x = 0; x < table_.num_letters; x += 2) {
    const std::size_t g = evaluate({static_cast<int>(x)});
    if (multiply(a, g) != multiply(g, a)) return false;
  }
  return true;
}

namespace {

// gamma applied letterwise to a word.
Word apply_gamma(const roots::DiagramAut& gamma, int l, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    const int g = x / 2;
    const int inv = x & 1;
    const int img = g < l ? gamma.perm[static_cast<std::size_t>(g)] : l + gamma.perm[static_cast<std::size_t>(g - l)];
    out.push_back(2 * img + inv);
  }
  return out;
}

}  // namespace

FixedPoints fixed_points(const ExtendedWeylGroup& v, const TwistSpec& twist) {
  const int l = v.rank();
  if (twist.gamma.perm.size() != static_cast<std::size_t>(l)) throw InvalidArgument("twist has wrong rank");
  const auto auts = roots::diagram_automorphisms(v.datum());
  if (std::find(auts.begin(), auts.end(), twist.gamma) == auts.end())
    throw InvalidArgument("twist does not preserve the Cartan matrix");
  if (twist.d != 1 && twist.d != 2) throw InvalidArgument("twist flag d must be 1 or 2");
  for (const auto& r : v.presentation().relators)
    if (v.evaluate(apply_gamma(twist.gamma, l, r)) != v.identity())
      throw InvalidArgument("automorphism does not normalise the presentation");

  const std::size_t vv = twist.d == 2 ? v.longest_lift() : v.identity();
  const std::size_t vinv = v.inverse(vv);
  FixedPoints fp;
  fp.v_central = v.is_central(vv);
  const auto hset = v.h_subgroup();
  std::vector<std::size_t> centralizer;
  for (std::size_t x = 0; x < v.order(); ++x) {
    const std::size_t gx = v.evaluate(apply_gamma(twist.gamma, l, v.word(x)));
    if (v.multiply(v.multiply(vv, gx), vinv) == x) fp.v1.push_back(x);
    if (gx == x) centralizer.push_back(x);
  }
  std::set_intersection(fp.v1.begin(), fp.v1.end(), hset.begin(), hset.end(), std::back_inserter(fp.h1));
  fp.v1_is_v = fp.v1.size() == v.order();
  fp.v1_is_centralizer = fp.v1 == centralizer;
  return fp;
}

namespace {

// Evaluate relators of `pres` with generator images given as elements of v.
std::vector<std::string> failing_relators(const ExtendedWeylGroup& v, const Presentation& pres,
                                          const std::vector<std::size_t>& images) {
  std::vector<std::size_t> inverses;
  for (auto g : images) inverses.push_back(v.inverse(g));
  std::vector<std::string> failed;
  for (const auto& r : pres.relators) {
    std::size_t x = v.identity();
    for (int letter : r) {
      const auto g = static_cast<std::size_t>(letter / 2);
      x = v.multiply(x, (letter & 1) ? inverses[g] : images[g]);
    }
    if (x != v.identity()) failed.push_back(groups::word_to_string(pres, r));
  }
  return failed;
}

}  // namespace

LemA3Report verify_lemA3(int l) {
  if (l < 3 || l > 5) throw Unsupported("verify_lemA3 supports 3 <= l <= 5");
  LemA3Report rep;
  rep.l = l;
  ExtendedWeylGroup vd(roots::CartanDatum::make(roots::Family::D, l));
  const auto bdatum = roots::CartanDatum::make(roots::Family::B, l - 1);
  const auto bpres = tits_presentation(bdatum);
  rep.expected_order = groups::todd_coxeter(bpres, {}).index;

  auto images = [&](bool minus) {
    auto nn = [&](int i) { return minus ? vd.n_minus(i) : vd.n(i); };
    std::vector<std::size_t> ns;
    for (int k = 0; k < l - 2; ++k) ns.push_back(nn(k));
    ns.push_back(vd.multiply(nn(l - 2), nn(l - 1)));
    std::vector<std::size_t> all = ns;
    for (auto x : ns) all.push_back(vd.multiply(x, x));  // h'_k = n'_k^2
    return std::make_pair(ns, all);
  };

  const auto [ns, all] = images(true);
  rep.failed_relators = failing_relators(vd, bpres, all);
  const auto sub = vd.closure(ns);
  rep.subgroup_order = sub.size();

  std::vector<int> swap(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) swap[static_cast<std::size_t>(i)] = i;
  std::swap(swap[static_cast<std::size_t>(l - 2)], swap[static_cast<std::size_t>(l - 1)]);
  const auto fp = fixed_points(vd, TwistSpec{roots::DiagramAut{swap}, 1});
  rep.equals_centralizer = fp.v1 == sub;

  const auto [pns, pall] = images(false);
  rep.plus_failed_relators = failing_relators(vd, bpres, pall).size();
  rep.plus_subgroup_order = vd.closure(pns).size();
  return rep;
}

}  // namespace hcv::tits
