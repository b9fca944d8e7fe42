#pragma once

#include <vector>

#include "hcv/groups.hpp"

// Sp_{2l}(q) for prime q as 2l x 2l matrices on the basis e_1..e_l, f_l..f_1
// with form w(e_i, f_i) = 1.  Roots are given in epsilon coordinates; the
// simple roots are Bourbaki's alpha_i = e_i - e_{i+1}, alpha_l = 2 e_l.
namespace hcv::groups {

class SymplecticModel {
 public:
  SymplecticModel(int l, int q);

  int rank() const { return l_; }
  int q() const { return q_; }
  const Universe& universe() const { return u_; }
  const Bytes& form() const { return form_; }
  // Generator of F_q^x used for torus coordinates.
  int primitive_root() const { return nu_; }

  bool preserves_form(std::span<const std::uint8_t> g) const;

  // x_alpha(t) for alpha in epsilon coordinates.
  Bytes root_element(const std::vector<int>& eps, int t) const;
  std::vector<int> simple_root(int i) const;  // i = 0..l-1
  std::vector<std::vector<int>> positive_roots() const;
  Bytes x_simple(int i, int t) const;
  Bytes x_neg_simple(int i, int t) const;
  // n_alpha(t) = x_alpha(t) x_{-alpha}(-1/t) x_alpha(t).
  Bytes n_simple(int i, int t) const;
  // h_alpha(t) = alpha^vee(t).
  Bytes h_simple(int i, int t) const;
  // diag(t_1, ..., t_l, t_l^-1, ..., t_1^-1).
  Bytes torus_element(const std::vector<int>& t) const;
  // Discrete logs (base primitive_root) of the first l diagonal entries.
  std::vector<int> torus_coordinates(std::span<const std::uint8_t> g) const;

  // x_{+-alpha_i}(1).
  std::vector<Bytes> chevalley_generators() const;

  // Plane i (0-based) is span(e_{i+1}, f_{i+1}); embed a 2x2 matrix there.
  Bytes plane_element(int i, int a, int b, int c, int d) const;
  Bytes plane_swap(int i, int j) const;

 private:
  std::size_t e(int i) const { return static_cast<std::size_t>(i); }
  std::size_t f(int i) const { return static_cast<std::size_t>(2 * l_ - 1 - i); }

  int l_, q_, nu_;
  Universe u_;
  Bytes form_;
  std::vector<int> log_;
};

FiniteGroup symplectic_group(const SymplecticModel& m);
FiniteGroup split_torus(const SymplecticModel& m);
FiniteGroup borel_subgroup(const SymplecticModel& m);
// N_G(T) = <T, n_alpha_i(1)>.
FiniteGroup monomial_subgroup(const SymplecticModel& m);
// Levi Sp_2 x (q-1)^{l-1}: Sp_2 on the last plane, split torus on the others.
FiniteGroup levi_subgroup(const SymplecticModel& m);
// Torus of order (q+1)^l: an element of order q+1 in each plane.
FiniteGroup twisted_torus(const SymplecticModel& m);
// Its normaliser (C_{q+1}.2) wr S_l of order (2(q+1))^l l!.
FiniteGroup twisted_torus_normalizer(const SymplecticModel& m);

}  // namespace hcv::groups
