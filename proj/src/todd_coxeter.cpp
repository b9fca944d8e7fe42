#include <algorithm>
#include <deque>
#include <sstream>

#include "hcv/error.hpp"
#include "hcv/groups.hpp"

// HLT coset enumeration with coincidence processing (Holt, Eick, O'Brien,
// Handbook of Computational Group Theory, ch. 5).
namespace hcv::groups {

namespace {

constexpr std::uint32_t kUndef = 0xffffffffu;

inline int inv(int x) { return x ^ 1; }

class Enumerator {
 public:
  Enumerator(std::size_t letters, std::size_t cap) : L_(letters), cap_(cap) { new_coset(); }

  std::uint32_t& at(std::size_t c, int x) { return table_[c * L_ + static_cast<std::size_t>(x)]; }
  bool live(std::size_t c) const { return parent_[c] == c; }
  std::size_t size() const { return parent_.size(); }

  void define(std::size_t c, int x) {
    const auto n = new_coset();
    at(c, x) = static_cast<std::uint32_t>(n);
    at(n, inv(x)) = static_cast<std::uint32_t>(c);
  }

  void scan_and_fill(std::size_t c, const Word& w) {
    std::size_t f = c, b = c;
    long i = 0, j = static_cast<long>(w.size()) - 1;
    auto letter = [&](long k) { return w[static_cast<std::size_t>(k)]; };
    while (true) {
      while (i <= j && at(f, letter(i)) != kUndef) f = at(f, letter(i++));
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && at(b, inv(letter(j))) != kUndef) b = at(b, inv(letter(j--)));
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        at(f, letter(i)) = static_cast<std::uint32_t>(b);
        at(b, inv(letter(i))) = static_cast<std::uint32_t>(f);
        return;
      }
      define(f, letter(i));
    }
  }

  std::size_t rep(std::size_t k) {
    std::size_t l = k;
    while (parent_[l] != l) l = parent_[l];
    while (parent_[k] != l) {
      const std::size_t next = parent_[k];
      parent_[k] = l;
      k = next;
    }
    return l;
  }

  CosetTable finish() {
    // Renumber live cosets in breadth-first order from coset 0.
    std::vector<std::uint32_t> number(size(), kUndef);
    std::vector<std::size_t> order{0};
    number[0] = 0;
    for (std::size_t qi = 0; qi < order.size(); ++qi)
      for (std::size_t x = 0; x < L_; ++x) {
        auto d = at(order[qi], static_cast<int>(x));
        if (d != kUndef) d = static_cast<std::uint32_t>(rep(d));
        if (d == kUndef) throw Falsification("coset table incomplete after enumeration");
        if (number[d] == kUndef) {
          number[d] = static_cast<std::uint32_t>(order.size());
          order.push_back(d);
        }
      }
    CosetTable t;
    t.index = order.size();
    t.num_letters = L_;
    t.table.resize(t.index * L_);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t x = 0; x < L_; ++x) t.table[i * L_ + x] = number[rep(at(order[i], static_cast<int>(x)))];
    return t;
  }

 private:
  std::size_t new_coset() {
    if (parent_.size() >= cap_) throw CapExceeded("coset enumeration exceeded " + std::to_string(cap_) + " cosets");
    const std::size_t n = parent_.size();
    parent_.push_back(n);
    table_.resize(table_.size() + L_, kUndef);
    return n;
  }

  void merge(std::size_t k, std::size_t l, std::deque<std::size_t>& q) {
    const std::size_t a = rep(k), b = rep(l);
    if (a == b) return;
    const std::size_t lo = std::min(a, b), hi = std::max(a, b);
    parent_[hi] = lo;
    q.push_back(hi);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::deque<std::size_t> q;
    merge(a, b, q);
    while (!q.empty()) {
      const std::size_t g = q.front();
      q.pop_front();
      for (std::size_t xi = 0; xi < L_; ++xi) {
        const int x = static_cast<int>(xi);
        const auto d = at(g, x);
        if (d == kUndef) continue;
        at(d, inv(x)) = kUndef;
        const std::size_t mu = rep(g), nu = rep(d);
        if (at(mu, x) != kUndef) {
          merge(nu, at(mu, x), q);
        } else if (at(nu, inv(x)) != kUndef) {
          merge(mu, at(nu, inv(x)), q);
        } else {
          at(mu, x) = static_cast<std::uint32_t>(nu);
          at(nu, inv(x)) = static_cast<std::uint32_t>(mu);
        }
      }
    }
  }

  std::size_t L_;
  std::size_t cap_;
  std::vector<std::uint32_t> table_;
  std::vector<std::size_t> parent_;
};

}  // namespace

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& x : out) x = inv(x);
  return out;
}

std::string word_to_string(const Presentation& p, const Word& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << "*";
    os << p.generators[static_cast<std::size_t>(w[i] / 2)];
    if (w[i] & 1) os << "^-1";
  }
  if (w.empty()) os << "1";
  return os.str();
}

std::size_t CosetTable::trace(std::size_t coset, const Word& w) const {
  for (int x : w) coset = act(coset, x);
  return coset;
}

CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup, std::size_t cap) {
  const std::size_t L = 2 * p.num_generators();
  for (const auto& r : p.relators)
    for (int x : r)
      if (x < 0 || static_cast<std::size_t>(x) >= L) throw InvalidArgument("relator uses an unknown generator");
  Enumerator e(L, cap);
  for (const auto& w : subgroup) e.scan_and_fill(0, w);
  for (std::size_t c = 0; c < e.size(); ++c) {
    for (const auto& r : p.relators) {
      if (!e.live(c)) break;
      e.scan_and_fill(c, r);
    }
    if (!e.live(c)) continue;
    for (std::size_t x = 0; x < L; ++x)
      if (e.live(c) && e.at(c, static_cast<int>(x)) == kUndef) e.define(c, static_cast<int>(x));
  }
  return e.finish();
}

}  // namespace hcv::groups
