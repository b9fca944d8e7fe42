#pragma once

#include <cstdint>
#include <vector>

// Dense integer polynomials, coefficient i multiplies X^i.  Used for
// cyclotomic factorisation of characteristic and order polynomials.
namespace hcv::intpoly {

using Poly = std::vector<std::int64_t>;

void trim(Poly& p);
Poly multiply(const Poly& a, const Poly& b);

// Exact division by a monic divisor; returns false if the remainder is nonzero.
bool divide_exact(const Poly& num, const Poly& monic_den, Poly& quotient);

// Phi_n, cached.
const Poly& cyclotomic(int n);

std::vector<int> divisors(int n);

// Characteristic polynomial det(X*I - A) of a small integer matrix.
Poly charpoly(const std::vector<std::vector<std::int64_t>>& a);

// Multiplicities m_d with p = prod_d Phi_d^{m_d}.  Throws if p has a
// non-cyclotomic factor or is not monic.
std::vector<std::pair<int, int>> cyclotomic_factorisation(Poly p, int max_index);

}  // namespace hcv::intpoly
