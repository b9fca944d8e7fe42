#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hcv/detail/flat_store.hpp"

namespace hcv::roots {

enum class Family { A, B, C, D, E6, E7 };

std::string to_string(Family f);
Family parse_family(const std::string& s);

using IntMatrix = std::vector<std::vector<int>>;
using IntVec = std::vector<int>;

// Cartan matrix with cartan[i][j] = <alpha_j, alpha_i^vee>, so that
// s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i.  Bourbaki labelling.
struct CartanDatum {
  Family family = Family::A;
  int rank = 1;
  IntMatrix cartan;

  static CartanDatum make(Family family, int rank);
  std::string name() const;  // e.g. "B3"

  bool operator==(const CartanDatum&) const = default;
};

// Permutation of root indices; every supported system has fewer than 256 roots.
using RootPerm = std::vector<std::uint8_t>;

class RootSystem {
 public:
  explicit RootSystem(CartanDatum datum);

  const CartanDatum& datum() const { return datum_; }
  int rank() const { return datum_.rank; }
  std::size_t size() const { return roots_.size(); }
  std::size_t num_positive() const { return roots_.size() / 2; }

  // Simple-root coordinates.
  const IntVec& root(std::size_t i) const { return roots_[i]; }
  // Simple-coroot coordinates of the coroot of root(i).
  const IntVec& coroot(std::size_t i) const { return coroots_[i]; }
  bool is_positive(std::size_t i) const { return height_[i] > 0; }
  int height(std::size_t i) const { return height_[i]; }
  std::size_t simple(int i) const { return simple_[static_cast<std::size_t>(i)]; }
  std::size_t negative(std::size_t i) const { return negative_[i]; }
  std::optional<std::size_t> find(const IntVec& coords) const;

  // <root(a), coroot(b)>.
  int pairing(std::size_t a, std::size_t b) const;
  // s_b(root a) as a root index.
  std::size_t reflect(std::size_t b, std::size_t a) const;
  RootPerm reflection(std::size_t b) const;
  const RootPerm& simple_reflection(int i) const { return simple_perms_[static_cast<std::size_t>(i)]; }

  std::vector<std::size_t> positive_roots() const;

 private:
  CartanDatum datum_;
  std::vector<IntVec> roots_;
  std::vector<IntVec> coroots_;
  std::vector<int> height_;
  std::vector<std::size_t> simple_;
  std::vector<std::size_t> negative_;
  std::vector<RootPerm> simple_perms_;
};

std::shared_ptr<const RootSystem> build_root_system(const CartanDatum& datum);

inline constexpr std::size_t kDefaultWeylCap = 1'000'000;

// Weyl group enumerated as permutations of the root list.  Element 0 is the
// identity; elements appear in breadth-first order so lengths are
// non-decreasing.
class WeylGroup {
 public:
  WeylGroup(std::shared_ptr<const RootSystem> rs, std::size_t cap = kDefaultWeylCap);

  const RootSystem& roots() const { return *rs_; }
  std::shared_ptr<const RootSystem> root_system() const { return rs_; }
  std::size_t order() const { return store_.size(); }
  std::size_t identity() const { return 0; }
  std::size_t longest() const { return longest_; }
  std::size_t generator(int i) const { return generators_[static_cast<std::size_t>(i)]; }
  int rank() const { return rs_->rank(); }

  std::span<const std::uint8_t> perm(std::size_t w) const { return store_[w]; }
  const std::vector<int>& word(std::size_t w) const { return words_[w]; }
  int length(std::size_t w) const { return static_cast<int>(words_[w].size()); }

  std::optional<std::size_t> index_of(std::span<const std::uint8_t> perm) const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;
  std::size_t conjugate(std::size_t g, std::size_t x) const;  // g x g^-1
  std::size_t reflection_element(std::size_t root) const;
  // Image of root r under w.
  std::size_t act(std::size_t w, std::size_t r) const { return store_[w][r]; }

 private:
  std::shared_ptr<const RootSystem> rs_;
  detail::FlatStore store_;
  std::vector<std::vector<int>> words_;
  std::vector<std::size_t> generators_;
  std::size_t longest_ = 0;
};

WeylGroup weyl_group(std::shared_ptr<const RootSystem> rs, std::size_t cap = kDefaultWeylCap);

// Exponent e with ind(w) = q^e in the split equal-parameter case: the
// number of positive roots sent to negative roots.
int ind_exponent(const WeylGroup& w, std::size_t element);

struct ReflectionSubgroup {
  std::vector<std::size_t> elements;      // sorted indices into W
  std::vector<std::size_t> subsystem;     // roots of the generated subsystem
  std::vector<std::size_t> simple_roots;  // base w.r.t. the ambient positive system
};

// Group generated by the reflections in `subset` (closed under negation).
ReflectionSubgroup reflection_subgroup(const WeylGroup& w, std::span<const std::size_t> subset);

// Simple system of a reflection-closed root subset, w.r.t. ambient positivity.
std::vector<std::size_t> simple_system(const RootSystem& rs, std::span<const std::size_t> subsystem);

std::vector<int> fundamental_degrees(const RootSystem& rs);
std::vector<int> fundamental_degrees(const WeylGroup& w);

struct DiagramAut {
  std::vector<int> perm;  // simple root i -> simple root perm[i]
  bool is_identity() const;
  bool operator==(const DiagramAut&) const = default;
};

std::vector<DiagramAut> diagram_automorphisms(const CartanDatum& datum);

// Root permutation induced by a diagram automorphism.
RootPerm root_permutation(const RootSystem& rs, const DiagramAut& g);

}  // namespace hcv::roots
