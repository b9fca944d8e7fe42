#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hcv/groups.hpp"
#include "hcv/rootsystems.hpp"

// Extended Weyl groups V = <n_i, h_i> given by the Tits presentation and
// realised as the regular permutation representation from coset enumeration.
namespace hcv::tits {

using groups::Word;

// Generators n_1..n_l, h_1..h_l.  Letter of n_i is 2i, of h_i is 2(l+i).
groups::Presentation tits_presentation(const roots::CartanDatum& datum);

inline int n_letter(int i) { return 2 * i; }
inline int h_letter(int rank, int i) { return 2 * (rank + i); }

class ExtendedWeylGroup {
 public:
  explicit ExtendedWeylGroup(const roots::CartanDatum& datum, std::size_t cap = groups::kDefaultCosetCap);

  const roots::CartanDatum& datum() const { return datum_; }
  const groups::Presentation& presentation() const { return pres_; }
  const roots::WeylGroup& weyl() const { return *weyl_; }
  int rank() const { return datum_.rank; }

  std::size_t order() const { return table_.index; }
  std::size_t identity() const { return 0; }
  std::size_t multiply(std::size_t a, std::size_t b) const { return table_.trace(a, words_[b]); }
  std::size_t inverse(std::size_t a) const { return table_.trace(0, groups::inverse_word(words_[a])); }
  std::size_t evaluate(const Word& w) const { return table_.trace(0, w); }
  const Word& word(std::size_t a) const { return words_[a]; }

  std::size_t n(int i) const { return evaluate({n_letter(i)}); }
  std::size_t h(int i) const { return evaluate({h_letter(rank(), i)}); }
  // n_{alpha_i}(-1) = n_i h_i.
  std::size_t n_minus(int i) const { return multiply(n(i), h(i)); }
  // Canonical lift of w0: product of the n_i along a reduced word.
  std::size_t longest_lift() const;

  // Image in W (kill every h_i).
  std::size_t project(std::size_t a) const { return proj_[a]; }

  // Sorted element list of the subgroup generated by gens.
  std::vector<std::size_t> closure(const std::vector<std::size_t>& gens) const;
  std::vector<std::size_t> h_subgroup() const;
  bool is_central(std::size_t a) const;

 private:
  roots::CartanDatum datum_;
  groups::Presentation pres_;
  std::unique_ptr<roots::WeylGroup> weyl_;
  groups::CosetTable table_;
  std::vector<Word> words_;
  std::vector<std::size_t> proj_;
};

struct TwistSpec {
  roots::DiagramAut gamma;  // identity for the untwisted case
  int d = 1;                // 1: v = 1, 2: v = canonical lift of w0
};

struct FixedPoints {
  std::vector<std::size_t> v1;  // sorted
  std::vector<std::size_t> h1;
  bool v_central = false;  // v in Z(V)
  bool v1_is_v = false;
  bool v1_is_centralizer = false;  // V1 = C_V(gamma)
};

// V1 = {x : v gamma(x) v^-1 = x} and H1 = V1 cap H.
FixedPoints fixed_points(const ExtendedWeylGroup& v, const TwistSpec& twist);

struct LemA3Report {
  int l = 0;
  std::vector<std::string> failed_relators;  // empty when all B_{l-1} relators hold
  std::size_t subgroup_order = 0;
  std::size_t expected_order = 0;  // |V(B_{l-1})| by coset enumeration
  bool equals_centralizer = false;  // subgroup equals C_V(gamma)
  // Diagnostic with n_alpha(+1) in place of n_alpha(-1).
  std::size_t plus_failed_relators = 0;
  std::size_t plus_subgroup_order = 0;

  bool relators_pass() const { return failed_relators.empty(); }
  bool orders_match() const { return subgroup_order == expected_order; }
};

// Inside V(D_l): n'_k = n_k(-1) for k <= l-2 and n'_{l-1} = n_{l-1}(-1) n_l(-1)
// against the Tits relators of B_{l-1}.
LemA3Report verify_lemA3(int l);

}  // namespace hcv::tits
