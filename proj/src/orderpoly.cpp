#include "hcv/orderpoly.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "hcv/error.hpp"
#include "hcv/intpoly.hpp"

namespace hcv::orderpoly {

using roots::Family;

// ---------------------------------------------------------------------------
// CycloPoly

CycloPoly CycloPoly::constant(const mpq_class& c) {
  CycloPoly p;
  p.scalar = c;
  p.scalar.canonicalize();
  return p;
}

CycloPoly CycloPoly::x(int a) {
  CycloPoly p;
  p.xpow = a;
  return p;
}

CycloPoly CycloPoly::phi(int i, int m) {
  if (i < 1) throw InvalidArgument("cyclotomic index must be positive");
  CycloPoly p;
  if (m != 0) p.cyclo[i] = m;
  return p;
}

CycloPoly CycloPoly::q_power_minus_one(int d) {
  if (d < 1) throw InvalidArgument("X^d - 1 needs d >= 1");
  CycloPoly p;
  for (int e : intpoly::divisors(d)) p.cyclo[e] = 1;
  return p;
}

CycloPoly CycloPoly::q_power_plus_one(int d) {
  if (d < 1) throw InvalidArgument("X^d + 1 needs d >= 1");
  // Phi_e for e | 2d, e not dividing d.
  CycloPoly p;
  for (int e : intpoly::divisors(2 * d))
    if (d % e != 0) p.cyclo[e] = 1;
  return p;
}

int CycloPoly::multiplicity(int i) const {
  const auto it = cyclo.find(i);
  return it == cyclo.end() ? 0 : it->second;
}

bool CycloPoly::is_polynomial() const {
  if (scalar.get_den() != 1 || xpow < 0) return false;
  for (const auto& [i, m] : cyclo)
    if (m < 0) return false;
  return true;
}

int CycloPoly::degree() const {
  int d = xpow;
  for (const auto& [i, m] : cyclo) d += m * static_cast<int>(intpoly::cyclotomic(i).size() - 1);
  return d;
}

mpq_class CycloPoly::eval(const mpq_class& q) const {
  mpq_class r = scalar;
  if (r == 0) return r;
  const auto pow_q = [&](const mpq_class& base, int e) {
    mpq_class out = 1;
    for (int k = 0; k < std::abs(e); ++k) out *= base;
    if (e < 0) {
      if (out == 0) throw InvalidArgument("evaluation at a pole");
      out = 1 / out;
    }
    return out;
  };
  r *= pow_q(q, xpow);
  for (const auto& [i, m] : cyclo) {
    mpq_class v = 0;
    const auto& c = intpoly::cyclotomic(i);
    for (std::size_t k = c.size(); k-- > 0;) v = v * q + static_cast<long>(c[k]);
    r *= pow_q(v, m);
  }
  r.canonicalize();
  return r;
}

std::vector<mpz_class> CycloPoly::expand() const {
  if (!is_polynomial()) throw InvalidArgument("expand needs a polynomial");
  std::vector<mpz_class> r(static_cast<std::size_t>(xpow) + 1, 0);
  r.back() = scalar.get_num();
  for (const auto& [i, m] : cyclo) {
    const auto& c = intpoly::cyclotomic(i);
    for (int t = 0; t < m; ++t) {
      std::vector<mpz_class> next(r.size() + c.size() - 1, 0);
      for (std::size_t a = 0; a < r.size(); ++a)
        for (std::size_t b = 0; b < c.size(); ++b) next[a + b] += r[a] * static_cast<long>(c[b]);
      r = std::move(next);
    }
  }
  return r;
}

std::string CycloPoly::to_string() const {
  if (scalar == 0) return "0";
  std::vector<std::string> parts;
  if (scalar != 1 || (xpow == 0 && cyclo.empty())) parts.push_back(scalar.get_str());
  if (xpow == 1) parts.push_back("X");
  else if (xpow != 0) parts.push_back("X^" + std::to_string(xpow));
  for (const auto& [i, m] : cyclo) parts.push_back("Phi" + std::to_string(i) + (m == 1 ? "" : "^" + std::to_string(m)));
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? "*" : "") + parts[k];
  return out;
}

CycloPoly& CycloPoly::operator*=(const CycloPoly& o) {
  scalar *= o.scalar;
  xpow += o.xpow;
  for (const auto& [i, m] : o.cyclo) {
    const int v = (cyclo[i] += m);
    if (v == 0) cyclo.erase(i);
  }
  return *this;
}

CycloPoly& CycloPoly::operator/=(const CycloPoly& o) {
  if (o.scalar == 0) throw InvalidArgument("division by zero");
  scalar /= o.scalar;
  xpow -= o.xpow;
  for (const auto& [i, m] : o.cyclo) {
    const int v = (cyclo[i] -= m);
    if (v == 0) cyclo.erase(i);
  }
  return *this;
}

mpz_class cyclotomic_value(int i, const mpz_class& q) {
  const auto& c = intpoly::cyclotomic(i);
  mpz_class v = 0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * q + static_cast<long>(c[k]);
  return v;
}

std::optional<int> val2(const mpz_class& n) {
  if (n == 0) return std::nullopt;
  return static_cast<int>(mpz_scan1(n.get_mpz_t(), 0));
}

std::optional<int> val2(const mpq_class& x) {
  if (x == 0) return std::nullopt;
  return *val2(mpz_class(x.get_num())) - *val2(mpz_class(x.get_den()));
}

// ---------------------------------------------------------------------------
// Order polynomials

std::string to_string(Twist t) {
  switch (t) {
    case Twist::Split: return "split";
    case Twist::TwistedD: return "2D";
    case Twist::TorusMinus: return "torus(q-1)";
    case Twist::TorusPlus: return "torus(q+1)";
  }
  return "?";
}

Twist parse_twist(const std::string& s) {
  if (s == "split") return Twist::Split;
  if (s == "2D") return Twist::TwistedD;
  if (s == "torus(q-1)") return Twist::TorusMinus;
  if (s == "torus(q+1)") return Twist::TorusPlus;
  throw InvalidArgument("unknown twist '" + s + "'");
}

std::string CompleteRootDatum::name() const {
  switch (twist) {
    case Twist::TorusMinus: return "(q-1)^" + std::to_string(rank);
    case Twist::TorusPlus: return "(q+1)^" + std::to_string(rank);
    case Twist::TwistedD: return "2D" + std::to_string(rank);
    case Twist::Split: break;
  }
  const std::string f = roots::to_string(family);
  return f.size() > 1 ? f : f + std::to_string(rank);
}

namespace {

CycloPoly split_from_degrees(const std::vector<int>& degrees) {
  CycloPoly p;
  int n = 0;
  for (int d : degrees) {
    p *= CycloPoly::q_power_minus_one(d);
    n += d - 1;
  }
  p.xpow = n;
  return p;
}

}  // namespace

CycloPoly order_poly(const CompleteRootDatum& crd) {
  const int l = crd.rank;
  if (l < 0) throw InvalidArgument("negative rank");
  if (crd.twist == Twist::TorusMinus) return CycloPoly::phi(1, l);
  if (crd.twist == Twist::TorusPlus) return CycloPoly::phi(2, l);
  if (l == 0) return CycloPoly{};
  if (crd.twist == Twist::TwistedD) {
    if (crd.family != Family::D) throw Unsupported("only type D has a supported twisted form");
    if (l == 1) return CycloPoly::phi(2);
    CycloPoly p = CycloPoly::q_power_plus_one(l);
    for (int i = 1; i < l; ++i) p *= CycloPoly::q_power_minus_one(2 * i);
    p.xpow = l * (l - 1);
    return p;
  }
  std::vector<int> deg;
  switch (crd.family) {
    case Family::A:
      for (int i = 2; i <= l + 1; ++i) deg.push_back(i);
      break;
    case Family::B:
    case Family::C:
      for (int i = 1; i <= l; ++i) deg.push_back(2 * i);
      break;
    case Family::D:
      if (l == 1) return CycloPoly::phi(1);
      for (int i = 1; i < l; ++i) deg.push_back(2 * i);
      deg.push_back(l);
      break;
    case Family::E6:
      if (l != 6) throw Unsupported("E6 has rank 6");
      deg = {2, 5, 6, 8, 9, 12};
      break;
    case Family::E7:
      if (l != 7) throw Unsupported("E7 has rank 7");
      deg = {2, 6, 8, 10, 12, 14, 18};
      break;
  }
  return split_from_degrees(deg);
}

std::string ProductDatum::name() const {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? "." : "") + factors[i].name();
  if (components != 1) out += "." + std::to_string(components);
  return out;
}

CycloPoly order_poly(const ProductDatum& p) {
  CycloPoly r = CycloPoly::constant(p.components);
  for (const auto& f : p.factors) r *= order_poly(f);
  return r;
}

CycloPoly p_prime_part(const CycloPoly& num, const CycloPoly& den) {
  for (const auto& [i, m] : den.cyclo)
    if (m > 0 && num.multiplicity(i) < m)
      throw InvalidArgument("p_prime_part: Phi" + std::to_string(i) + " multiplicity too small");
  CycloPoly r = num / den;
  r.xpow = 0;
  return r;
}

CycloPoly split_index(const roots::CartanDatum& datum) {
  const CycloPoly g = order_poly(CompleteRootDatum{datum.family, datum.rank, Twist::Split});
  return p_prime_part(g, CycloPoly::phi(1, datum.rank));
}

std::optional<CycloPoly> factor_laurent(const hecke::LaurentPoly& lp) {
  std::vector<mpq_class> p = lp.coeffs;
  while (!p.empty() && p.back() == 0) p.pop_back();
  if (p.empty()) return CycloPoly::constant(0);
  std::size_t shift = 0;
  while (p[shift] == 0) ++shift;
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(shift));
  CycloPoly out = CycloPoly::constant(p.back());
  out.xpow = lp.low + static_cast<int>(shift);
  for (auto& c : p) c /= out.scalar;
  const int deg = static_cast<int>(p.size()) - 1;
  // Every Phi_i of degree <= deg has i <= 2 deg^2 + 2.
  for (int i = 1; deg > 0 && i <= 2 * deg * deg + 2; ++i) {
    const auto& c = intpoly::cyclotomic(i);
    if (static_cast<int>(c.size()) - 1 > static_cast<int>(p.size()) - 1) continue;
    for (;;) {
      if (p.size() < c.size()) break;
      std::vector<mpq_class> rem = p, quo(p.size() - c.size() + 1, 0);
      const std::size_t top = c.size() - 1;
      for (std::size_t k = rem.size() - 1; k + 1 > top; --k) {
        const mpq_class f = rem[k];
        quo[k - top] = f;
        if (f != 0)
          for (std::size_t j = 0; j < c.size(); ++j) rem[k - top + j] -= f * static_cast<long>(c[j]);
        if (k == top) break;
      }
      bool zero = true;
      for (const auto& r : rem) zero = zero && r == 0;
      if (!zero) break;
      p = std::move(quo);
      ++out.cyclo[i];
    }
  }
  if (p.size() != 1 || p[0] != 1) return std::nullopt;
  return out;
}

CycloPoly degree_polynomial(const CycloPoly& index, const CycloPoly& d_chi, const CycloPoly& f_lambda) {
  return p_prime_part(index, CycloPoly{}) * d_chi * f_lambda;
}

mpq_class degree_value(const CycloPoly& index, const mpq_class& d_chi_at_q, const CycloPoly& f_lambda,
                       const mpq_class& q) {
  mpq_class r = p_prime_part(index, CycloPoly{}).eval(q) * d_chi_at_q * f_lambda.eval(q);
  r.canonicalize();
  return r;
}

bool x_minus_1_divisibility(const CycloPoly& f, int r) {
  if (!f.is_polynomial()) throw InvalidArgument("x_minus_1_divisibility needs a polynomial");
  return f.multiplicity(1) >= r;
}

TwoAdic two_adic_profile(int i, const mpz_class& q) {
  if (i < 1) throw InvalidArgument("cyclotomic index must be positive");
  if (q % 2 == 0) throw InvalidArgument("q must be odd");
  TwoAdic t;
  const auto vq = val2(cyclotomic_value(i, q));
  if (!vq) throw InvalidArgument("Phi_i(q) = 0");
  t.at_q = *vq;
  t.at_1 = val2(cyclotomic_value(i, 1));
  return t;
}

bool cusp_parity_check(const mpq_class& a, int m, const CycloPoly& f, const mpz_class& q) {
  if (q % 2 == 0) throw InvalidArgument("q must be odd");
  if (m < 0) throw InvalidArgument("m must be non-negative");
  if (f.multiplicity(1) != 0) throw InvalidArgument("f must be prime to X - 1");
  mpq_class v = a;
  for (int k = 0; k < m; ++k) v *= q - 1;
  v.canonicalize();
  if (v.get_den() != 1) return false;
  const auto e = val2(mpz_class(v.get_num()));
  return !e || *e >= 1;
}

// ---------------------------------------------------------------------------
// Catalogue of disconnected centralisers

std::string CentralizerRow::label() const {
  return ambient.name() + " > " + centralizer.name() + " (row " + row + ", k=" + std::to_string(k) + ")";
}

const std::vector<std::string>& centralizer_rows() {
  static const std::vector<std::string> rows{"B", "B-2D", "C", "D", "D-4", "2D"};
  return rows;
}

CentralizerRow centralizer_row(const std::string& row, int rank, int k) {
  const auto bad = [&](const std::string& why) {
    return InvalidArgument("row " + row + " at rank " + std::to_string(rank) + ", k=" + std::to_string(k) + ": " + why);
  };
  const auto split = [](Family f, int r) { return CompleteRootDatum{f, r, Twist::Split}; };
  const auto twisted = [](int r) { return CompleteRootDatum{Family::D, r, Twist::TwistedD}; };
  CentralizerRow r;
  r.row = row;
  r.l = rank;
  r.k = k;
  if (row == "B") {
    if (rank < 2) throw bad("ambient rank must be >= 2");
    if (k < 1 || 2 * k > rank) throw bad("need 1 <= k <= l/2");
    r.ambient = split(Family::B, rank);
    r.centralizer = {{split(Family::B, rank - 2 * k), split(Family::D, 2 * k)}, 2};
  } else if (row == "B-2D") {
    if (rank < 3 || rank % 2 == 0) throw bad("ambient rank must be odd and >= 3");
    const int l = (rank - 1) / 2;
    if (k < 0 || k > l) throw bad("need 0 <= k <= (rank-1)/2");
    r.ambient = split(Family::B, rank);
    r.centralizer = {{split(Family::B, 2 * k), twisted(2 * (l - k) + 1)}, 2};
  } else if (row == "C") {
    if (rank < 4 || rank % 2 != 0) throw bad("ambient rank must be even and >= 4");
    if (k != 0) throw bad("row has no parameter, pass k = 0");
    r.ambient = split(Family::C, rank);
    r.centralizer = {{split(Family::C, rank / 2), split(Family::C, rank / 2)}, 2};
  } else if (row == "D") {
    if (rank < 4) throw bad("ambient rank must be >= 4");
    if (k < 1 || 2 * k >= rank) throw bad("need 1 <= k < l/2");
    r.ambient = split(Family::D, rank);
    r.centralizer = {{split(Family::D, k), split(Family::D, rank - k)}, 2};
  } else if (row == "D-4") {
    if (rank < 4 || rank % 4 != 0) throw bad("ambient rank must be a multiple of 4");
    if (k != 0) throw bad("row has no parameter, pass k = 0");
    r.ambient = split(Family::D, rank);
    r.centralizer = {{split(Family::D, rank / 2), split(Family::D, rank / 2)}, 4};
  } else if (row == "2D") {
    if (rank < 4) throw bad("ambient rank must be >= 4");
    if (k < 2 || k > rank - 1 || 2 * k == rank) throw bad("need 2 <= k <= l-1, k != l/2");
    r.ambient = twisted(rank);
    r.centralizer = {{split(Family::D, k), twisted(rank - k)}, 2};
  } else {
    throw InvalidArgument("unknown table row '" + row + "'");
  }
  return r;
}

std::vector<CentralizerRow> centralizer_instances(int max_rank) {
  std::vector<CentralizerRow> out;
  for (const auto& row : centralizer_rows())
    for (int rank = 1; rank <= max_rank; ++rank)
      for (int k = 0; k <= rank; ++k) {
        try {
          out.push_back(centralizer_row(row, rank, k));
        } catch (const InvalidArgument&) {
        }
      }
  return out;
}

ScanResult centralizer_scan(const CentralizerRow& row, long q) {
  if (q < 3 || q % 2 == 0) throw InvalidArgument("q must be odd and >= 3");
  ScanResult s;
  s.row = row;
  s.q = q;
  s.val2_ambient = *val2(order_poly(row.ambient).eval(q));
  s.val2_centralizer = *val2(order_poly(row.centralizer).eval(q));
  return s;
}

CycloPoly jordan_degree(const CycloPoly& ambient, const CycloPoly& cent, const CycloPoly& unip_degree) {
  return p_prime_part(ambient, cent) * unip_degree;
}

// ---------------------------------------------------------------------------
// Cuspidal unipotent data

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::set<std::string>& allowed, const std::set<std::string>& required,
                  const std::string& where) {
  if (!j.is_object()) throw InvalidArgument(where + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw InvalidArgument(where + ": unknown key '" + k + "'");
  for (const auto& k : required)
    if (!j.contains(k)) throw InvalidArgument(where + ": missing key '" + k + "'");
}

mpq_class parse_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (!j.is_string()) throw InvalidArgument(where + ": scalar must be an integer or a rational string");
  mpq_class r;
  const std::string s = j.get<std::string>();
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0) throw InvalidArgument(where + ": bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace

std::vector<CuspidalEntry> parse_cuspidal_data(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("cuspidal data: ") + e.what());
  }
  require_keys(doc, {"schema", "version", "entries"}, {"schema", "version", "entries"}, "cuspidal data");
  if (doc["schema"] != "hcverify-cuspidal-unipotent") throw InvalidArgument("cuspidal data: wrong schema name");
  if (!doc["version"].is_number_integer() || doc["version"].get<int>() != 1)
    throw InvalidArgument("cuspidal data: unsupported version");
  if (!doc["entries"].is_array()) throw InvalidArgument("cuspidal data: entries must be an array");
  std::vector<CuspidalEntry> out;
  std::size_t idx = 0;
  for (const auto& e : doc["entries"]) {
    const std::string where = "cuspidal data entry " + std::to_string(idx++);
    require_keys(e, {"type", "rank", "twist", "degree", "provenance"}, {"type", "rank", "twist", "degree", "provenance"},
                 where);
    if (!e["type"].is_string() || !e["rank"].is_number_integer() || !e["twist"].is_string() ||
        !e["provenance"].is_string())
      throw InvalidArgument(where + ": wrong field type");
    CuspidalEntry c;
    c.group.family = roots::parse_family(e["type"].get<std::string>());
    c.group.rank = e["rank"].get<int>();
    if (c.group.rank < 1) throw InvalidArgument(where + ": rank must be positive");
    c.group.twist = parse_twist(e["twist"].get<std::string>());
    c.provenance = e["provenance"].get<std::string>();
    if (c.provenance.empty()) throw InvalidArgument(where + ": empty provenance");
    const auto& d = e["degree"];
    require_keys(d, {"scalar", "xpow", "cyclo"}, {"scalar", "xpow", "cyclo"}, where + " degree");
    c.degree.scalar = parse_rational(d["scalar"], where);
    if (c.degree.scalar <= 0) throw InvalidArgument(where + ": scalar must be positive");
    if (!d["xpow"].is_number_integer() || d["xpow"].get<int>() < 0)
      throw InvalidArgument(where + ": xpow must be a non-negative integer");
    c.degree.xpow = d["xpow"].get<int>();
    if (!d["cyclo"].is_object()) throw InvalidArgument(where + ": cyclo must be an object");
    for (const auto& [k, v] : d["cyclo"].items()) {
      std::size_t used = 0;
      int i = 0;
      try {
        i = std::stoi(k, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != k.size() || i < 1) throw InvalidArgument(where + ": bad cyclotomic index '" + k + "'");
      if (!v.is_number_integer() || v.get<int>() <= 0)
        throw InvalidArgument(where + ": multiplicity must be a positive integer");
      c.degree.cyclo[i] = v.get<int>();
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CuspidalEntry> load_cuspidal_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_cuspidal_data(ss.str());
}

}  // namespace hcv::orderpoly
