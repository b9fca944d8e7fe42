#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hcv/cyclotomic.hpp"
#include "hcv/detail/flat_store.hpp"

namespace hcv::groups {

using Bytes = std::vector<std::uint8_t>;

// Where group elements live: permutations of {0..degree-1} (composition
// (ab)(x) = a(b(x))) or invertible n x n matrices over F_p, row-major.
class Universe {
 public:
  enum class Kind { Permutation, Matrix };

  static Universe permutations(int degree);
  static Universe matrices(int n, int p);

  Kind kind() const { return kind_; }
  int degree() const { return degree_; }
  int prime() const { return p_; }
  std::size_t width() const { return width_; }

  void multiply(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, std::uint8_t* out) const;
  Bytes multiply(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) const;
  Bytes inverse(std::span<const std::uint8_t> a) const;
  Bytes identity() const;
  bool is_valid(std::span<const std::uint8_t> a) const;
  std::string describe() const;

  bool operator==(const Universe&) const = default;

 private:
  Kind kind_ = Kind::Permutation;
  int degree_ = 0;
  int p_ = 0;
  std::size_t width_ = 0;
};

inline constexpr std::size_t kDefaultGroupCap = 20'000'000;

class FiniteGroup {
 public:
  FiniteGroup(Universe u, std::vector<Bytes> generators, std::size_t cap = kDefaultGroupCap);

  const Universe& universe() const { return u_; }
  const std::vector<Bytes>& generators() const { return gens_; }
  std::size_t order() const { return store_.size(); }
  std::size_t identity() const { return 0; }
  std::span<const std::uint8_t> element(std::size_t i) const { return store_[i]; }
  std::optional<std::size_t> index_of(std::span<const std::uint8_t> e) const;
  bool contains(std::span<const std::uint8_t> e) const { return index_of(e).has_value(); }

  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  std::size_t power(std::size_t a, long long k) const;
  std::size_t element_order(std::size_t a) const;
  std::size_t exponent() const;
  // Index of each generator inside the group.
  const std::vector<std::size_t>& generator_indices() const { return gen_idx_; }

  // Canonical text describing universe and generators; the cache key.
  std::string descriptor() const;

 private:
  Universe u_;
  std::vector<Bytes> gens_;
  detail::FlatStore store_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::size_t> gen_idx_;
};

FiniteGroup generate(const Universe& u, std::vector<Bytes> generators, std::size_t cap = kDefaultGroupCap);

// Subgroup generated by elements (given as indices) of g.
FiniteGroup subgroup(const FiniteGroup& g, const std::vector<std::size_t>& elements, std::size_t cap = kDefaultGroupCap);

// Position of every element of h inside g; throws if h is not a subset.
std::vector<std::size_t> embed(const FiniteGroup& h, const FiniteGroup& g);

// {x in g : x h x^-1 = h}.
FiniteGroup normalizer(const FiniteGroup& g, const FiniteGroup& h);

struct ConjClasses {
  std::vector<std::uint32_t> class_of;  // per element of G
  std::vector<std::size_t> reps;
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> orders;                 // element order per class
  std::vector<std::vector<std::size_t>> power_map;  // power_map[k][t]: class of g_k^t, t < orders[k]
  std::vector<std::size_t> inverse_class;
  std::size_t group_order = 0;
  std::size_t exponent = 1;

  std::size_t size() const { return reps.size(); }
  std::size_t centralizer_order(std::size_t k) const { return group_order / sizes[k]; }
};

ConjClasses conjugacy_classes(const FiniteGroup& g);

using ClassFunction = std::vector<cyc::Cyc>;

struct CharacterTable {
  std::vector<ClassFunction> rows;  // rows[chi][class]
  std::vector<std::int64_t> degrees;
  std::size_t group_order = 0;
  std::vector<std::size_t> class_sizes;
  std::vector<std::size_t> inverse_class;
  std::uint64_t dixon_prime = 0;

  std::size_t size() const { return rows.size(); }
};

struct CacheOptions {
  std::filesystem::path dir;  // empty: no cache
  // Directory from HCVERIFY_CACHE, if set.
  static CacheOptions from_env();
};

// Dixon's method over F_l with l = 1 mod exponent and l > 2 sqrt|G|, values
// lifted through the eigenvalue multiplicities of each class.
CharacterTable character_table(const FiniteGroup& g, const ConjClasses& cls, const CacheOptions& cache = {});

// <f, g> = (1/|G|) sum_k |C_k| f(g_k) conj(g(g_k)); must be rational.
mpq_class inner_product(const ConjClasses& cls, const ClassFunction& f, const ClassFunction& g);
mpq_class inner_product(const CharacterTable& t, const ClassFunction& f, const ClassFunction& g);

// Induction from h to g of a class function on h.
ClassFunction induce(const FiniteGroup& g, const ConjClasses& gcl, const FiniteGroup& h, const ConjClasses& hcl,
                     const ClassFunction& f);
// Induction of a class function given elementwise on h (value per element of h).
ClassFunction induce_elementwise(const FiniteGroup& g, const ConjClasses& gcl, const FiniteGroup& h,
                                 const std::function<cyc::Cyc(std::size_t)>& f);
ClassFunction restrict_to(const FiniteGroup& g, const ConjClasses& gcl, const FiniteGroup& h, const ConjClasses& hcl,
                          const ClassFunction& f);

// Multiplicity of each row of the table in f.
std::vector<mpq_class> decompose(const CharacterTable& t, const ClassFunction& f);

std::size_t count_odd_degree(const CharacterTable& t);

// Coset enumeration.  Letters are 2i for generator i and 2i+1 for its inverse.
using Word = std::vector<int>;

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  std::size_t num_generators() const { return generators.size(); }
};

Word inverse_word(const Word& w);
std::string word_to_string(const Presentation& p, const Word& w);

struct CosetTable {
  std::size_t index = 0;
  std::size_t num_letters = 0;
  std::vector<std::uint32_t> table;  // table[coset * num_letters + letter]

  std::size_t act(std::size_t coset, int letter) const {
    return table[coset * num_letters + static_cast<std::size_t>(letter)];
  }
  std::size_t trace(std::size_t coset, const Word& w) const;
};

inline constexpr std::size_t kDefaultCosetCap = 4'000'000;

CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup, std::size_t cap = kDefaultCosetCap);

}  // namespace hcv::groups
