#include "hcv/verify.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "hcv/error.hpp"
#include "hcv/hecke.hpp"
#include "hcv/orderpoly.hpp"
#include "hcv/symplectic.hpp"
#include "hcv/tits.hpp"
#include "hcv/torus.hpp"

namespace hcv::verify {

using roots::CartanDatum;
using roots::Family;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Times a block of checks and stamps the elapsed time on the last one.
class Stopwatch {
 public:
  explicit Stopwatch(Report& r) : r_(r), n_(r.checks.size()), t0_(Clock::now()) {}
  ~Stopwatch() {
    if (r_.checks.size() > n_) r_.checks.back().elapsed_ms = ms_since(t0_);
  }

 private:
  Report& r_;
  std::size_t n_;
  Clock::time_point t0_;
};

std::string lambda_text(const std::vector<int>& l) {
  std::string s = "[";
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
  return s + "]";
}

std::string zstr(const mpz_class& z) { return z.get_str(); }
std::string qstr(const mpq_class& z) { return z.get_str(); }

std::int64_t factorial(int n) {
  std::int64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

std::int64_t weyl_order_formula(Family f, int l) {
  switch (f) {
    case Family::A: return factorial(l + 1);
    case Family::B:
    case Family::C: return (std::int64_t{1} << l) * factorial(l);
    case Family::D: return (std::int64_t{1} << (l - 1)) * factorial(l);
    case Family::E6: return 51840;
    case Family::E7: return 2903040;
  }
  return 0;
}

std::int64_t root_count_formula(Family f, int l) {
  switch (f) {
    case Family::A: return static_cast<std::int64_t>(l) * (l + 1);
    case Family::B:
    case Family::C: return 2 * static_cast<std::int64_t>(l) * l;
    case Family::D: return 2 * static_cast<std::int64_t>(l) * (l - 1);
    case Family::E6: return 72;
    case Family::E7: return 126;
  }
  return 0;
}

// Orbit of the simple roots under s_i(b) = b - <b, a_i^vee> a_i, using only
// the Cartan matrix.
std::size_t root_closure(const CartanDatum& d) {
  const int l = d.rank;
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> todo;
  for (int i = 0; i < l; ++i) {
    std::vector<int> e(static_cast<std::size_t>(l), 0);
    e[static_cast<std::size_t>(i)] = 1;
    if (seen.insert(e).second) todo.push_back(e);
  }
  while (!todo.empty()) {
    const auto b = todo.front();
    todo.pop_front();
    for (int i = 0; i < l; ++i) {
      int p = 0;
      for (int j = 0; j < l; ++j) p += b[static_cast<std::size_t>(j)] * d.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      auto c = b;
      c[static_cast<std::size_t>(i)] -= p;
      if (seen.insert(c).second) todo.push_back(c);
    }
  }
  return seen.size();
}

// |W rho| in fundamental weight coordinates; rho is regular, so this is |W|.
std::size_t weyl_closure(const CartanDatum& d) {
  const auto l = static_cast<std::size_t>(d.rank);
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> todo;
  const std::vector<int> rho(l, 1);
  seen.insert(rho);
  todo.push_back(rho);
  while (!todo.empty()) {
    const auto v = todo.front();
    todo.pop_front();
    for (std::size_t i = 0; i < l; ++i) {
      auto w = v;
      for (std::size_t k = 0; k < l; ++k) w[k] -= v[i] * d.cartan[k][i];
      if (seen.insert(w).second) todo.push_back(w);
    }
  }
  return seen.size();
}

struct SympOracle {
  groups::SymplecticModel m;
  groups::FiniteGroup g;
  groups::ConjClasses cls;
  groups::CharacterTable tab;
  groups::FiniteGroup borel;

  SympOracle(int l, int q, const groups::CacheOptions& cache)
      : m(l, q),
        g(groups::symplectic_group(m)),
        cls(groups::conjugacy_classes(g)),
        tab(groups::character_table(g, cls, cache)),
        borel(groups::borel_subgroup(m)) {}
};

std::string group_name(int l, int q) { return (l == 1 ? "SL2(" : "Sp" + std::to_string(2 * l) + "(") + std::to_string(q) + ")"; }

void require_enumerable(int l, int q, bool slow) {
  if (l < 1 || l > 2) throw Unsupported("brute-force oracle only for Sp2 and Sp4");
  if (q < 3 || q % 2 == 0) throw InvalidArgument("q must be an odd prime");
  for (int p = 2; p * p <= q; ++p)
    if (q % p == 0) throw InvalidArgument("q must be prime");
  if (l == 1 && q > 13 && !slow) throw Unsupported("SL2(q) with q > 13 needs --slow");
  if (l == 2 && q > 3 && !slow) throw Unsupported("Sp4(q) with q > 3 needs --slow");
}

// Runs body; Unsupported and CapExceeded become skipped records.
template <class F>
void guarded(Report& r, const std::string& name, F&& body) {
  try {
    body();
  } catch (const Unsupported& e) {
    r.skipped(name, e.what());
  } catch (const CapExceeded& e) {
    r.skipped(name, std::string("cap exceeded: ") + e.what());
  }
}

bool is_prime(int q) {
  if (q < 2) return false;
  for (int p = 2; p * p <= q; ++p)
    if (q % p == 0) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Report

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
    case Status::Reported: return "reported";
  }
  return "?";
}

namespace {

Status parse_status(const std::string& s) {
  if (s == "pass") return Status::Pass;
  if (s == "fail") return Status::Fail;
  if (s == "skipped") return Status::Skipped;
  if (s == "reported") return Status::Reported;
  throw InvalidArgument("unknown status '" + s + "'");
}

}  // namespace

Check& Report::expect(const std::string& name, const json& expected, const json& actual,
                      const std::string& provenance) {
  Check c;
  c.name = name;
  c.expected = expected;
  c.actual = actual;
  c.provenance = provenance;
  c.status = expected == actual ? Status::Pass : Status::Fail;
  checks.push_back(std::move(c));
  return checks.back();
}

Check& Report::reported(const std::string& name, const json& actual, const std::string& provenance,
                        const std::string& note) {
  Check c;
  c.name = name;
  c.status = Status::Reported;
  c.actual = actual;
  c.provenance = provenance;
  c.note = note;
  checks.push_back(std::move(c));
  return checks.back();
}

Check& Report::skipped(const std::string& name, const std::string& reason) {
  Check c;
  c.name = name;
  c.status = Status::Skipped;
  c.provenance = kTrivial;
  c.note = reason;
  checks.push_back(std::move(c));
  return checks.back();
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  notices.insert(notices.end(), other.notices.begin(), other.notices.end());
}

bool Report::ok() const { return count(Status::Fail) == 0; }

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [&](const Check& c) { return c.status == s; }));
}

json to_json(const Report& r, bool timing) {
  json j;
  j["schema"] = kReportSchema;
  j["version"] = kReportVersion;
  j["command"] = {{"name", r.command}, {"params", r.params}};
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e{{"name", c.name},
           {"status", to_string(c.status)},
           {"expected", c.expected},
           {"actual", c.actual},
           {"provenance", c.provenance}};
    if (!c.note.empty()) e["note"] = c.note;
    if (timing) e["elapsed_ms"] = static_cast<std::int64_t>(c.elapsed_ms);
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["notices"] = r.notices;
  j["summary"] = {{"pass", r.count(Status::Pass)},
                  {"fail", r.count(Status::Fail)},
                  {"skipped", r.count(Status::Skipped)},
                  {"reported", r.count(Status::Reported)},
                  {"total", r.checks.size()}};
  if (timing) j["elapsed_ms"] = static_cast<std::int64_t>(r.elapsed_ms);
  return j;
}

std::string to_json_text(const Report& r, bool timing) { return to_json(r, timing).dump(2) + "\n"; }

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string scalar_text(const json& j) {
  if (j.is_null()) return "";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

}  // namespace

std::string to_csv(const Report& r, bool timing) {
  std::ostringstream os;
  os << "name,status,expected,actual,provenance,note";
  if (timing) os << ",elapsed_ms";
  os << "\n";
  for (const auto& c : r.checks) {
    os << csv_field(c.name) << ',' << to_string(c.status) << ',' << csv_field(scalar_text(c.expected)) << ','
       << csv_field(scalar_text(c.actual)) << ',' << csv_field(c.provenance) << ',' << csv_field(c.note);
    if (timing) os << ',' << static_cast<std::int64_t>(c.elapsed_ms);
    os << "\n";
  }
  return os.str();
}

Report from_json(const json& j) {
  if (!j.is_object() || j.value("schema", "") != kReportSchema) throw InvalidArgument("not a report document");
  if (!j.contains("version") || j["version"] != kReportVersion) throw InvalidArgument("unsupported report version");
  for (const char* k : {"command", "checks", "notices", "summary"})
    if (!j.contains(k)) throw InvalidArgument(std::string("report lacks '") + k + "'");
  Report r;
  r.command = j["command"].at("name").get<std::string>();
  r.params = j["command"].at("params");
  for (const auto& e : j["checks"]) {
    Check c;
    c.name = e.at("name").get<std::string>();
    c.status = parse_status(e.at("status").get<std::string>());
    c.expected = e.at("expected");
    c.actual = e.at("actual");
    c.provenance = e.at("provenance").get<std::string>();
    c.note = e.value("note", "");
    c.elapsed_ms = e.value("elapsed_ms", 0.0);
    if (c.status == Status::Fail && (c.expected.is_null() || c.actual.is_null()))
      throw InvalidArgument("fail record '" + c.name + "' lacks expected or actual");
    r.checks.push_back(std::move(c));
  }
  r.notices = j["notices"].get<std::vector<std::string>>();
  r.elapsed_ms = j.value("elapsed_ms", 0.0);
  return r;
}

// ---------------------------------------------------------------------------
// Lockfile

Lockfile::Lockfile(std::filesystem::path path) : path_(std::move(path)) {
  if (!std::filesystem::exists(path_)) return;
  std::ifstream in(path_);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("lockfile " + path_.string() + ": " + e.what());
  }
  if (j.value("schema", "") != "hcverify-lock" || j.value("version", 0) != 1 || !j.contains("constants") ||
      !j["constants"].is_object())
    throw InvalidArgument("lockfile " + path_.string() + ": bad schema");
  for (const auto& [k, v] : j["constants"].items()) {
    if (!v.is_number_integer()) throw InvalidArgument("lockfile " + path_.string() + ": non-integer constant " + k);
    values_[k] = v.get<std::int64_t>();
  }
}

std::optional<std::int64_t> Lockfile::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

bool Lockfile::check_or_freeze(const std::string& key, std::int64_t value) {
  const auto it = values_.find(key);
  if (it != values_.end()) return it->second == value;
  values_[key] = value;
  dirty_ = true;
  return true;
}

void Lockfile::save() const {
  if (path_.empty()) return;
  json j{{"schema", "hcverify-lock"}, {"version", 1}, {"constants", values_}};
  const auto tmp = path_.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path_);
}

// ---------------------------------------------------------------------------
// Roots

Report verify_roots(Family f, int rank) {
  Report r;
  r.command = "roots";
  r.params = {{"type", roots::to_string(f)}, {"rank", rank}};
  const auto t0 = Clock::now();
  const auto datum = CartanDatum::make(f, rank);
  const std::string n = datum.name();
  {
    Stopwatch sw(r);
    const auto rs = roots::build_root_system(datum);
    r.expect(n + ".roots.closure", root_closure(datum), rs->size(), kOracle);
    r.expect(n + ".roots.formula", root_count_formula(f, rank), rs->size(), kTrivial);
    const roots::WeylGroup w(rs);
    r.expect(n + ".weyl.closure", weyl_closure(datum), w.order(), kOracle);
    r.expect(n + ".weyl.formula", weyl_order_formula(f, rank), w.order(), kTrivial);
    std::int64_t deg = 1;
    for (int d : roots::fundamental_degrees(w)) deg *= d;
    r.expect(n + ".weyl.degree_product", w.order(), deg, kExact);
    r.expect(n + ".weyl.longest_length", rs->num_positive(), w.length(w.longest()), kExact);
    std::size_t bad = 0;
    for (int i = 0; i < rank; ++i)
      for (int j = i + 1; j < rank; ++j) {
        const int c = datum.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                      datum.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        const std::size_t m = c == 0 ? 2 : c == 1 ? 3 : c == 2 ? 4 : 6;
        const auto st = w.multiply(w.generator(i), w.generator(j));
        std::size_t x = st, ord = 1;
        while (x != w.identity()) {
          x = w.multiply(x, st);
          ++ord;
        }
        if (ord != m) ++bad;
      }
    for (int i = 0; i < rank; ++i)
      if (w.multiply(w.generator(i), w.generator(i)) != w.identity()) ++bad;
    r.expect(n + ".weyl.braid_relations", 0, bad, kExact);
  }
  r.elapsed_ms = ms_since(t0);
  return r;
}

Report verify_roots_suite() {
  Report r;
  r.command = "roots";
  const auto t0 = Clock::now();
  const std::vector<std::pair<Family, int>> cases{{Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::B, 2},
                                                  {Family::B, 3}, {Family::B, 4}, {Family::C, 2}, {Family::C, 3},
                                                  {Family::C, 4}, {Family::D, 4}};
  for (auto [f, l] : cases) r.append(verify_roots(f, l));
  r.params = {{"suite", "mandatory"}};
  r.elapsed_ms = ms_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// Tits groups

Report verify_tits(Family f, int rank) {
  Report r;
  r.command = "tits";
  r.params = {{"type", roots::to_string(f)}, {"rank", rank}};
  const auto t0 = Clock::now();
  const auto datum = CartanDatum::make(f, rank);
  const std::string n = datum.name();
  guarded(r, n + ".tits", [&] {
    Stopwatch sw(r);
    const tits::ExtendedWeylGroup v(datum);
    const auto w = v.weyl().order();
    r.expect(n + ".tits.order", json(std::to_string((std::size_t{1} << rank) * w)), json(std::to_string(v.order())),
             kOracle);
    const auto h = v.h_subgroup();
    r.expect(n + ".tits.H.order", std::size_t{1} << rank, h.size(), kExact);
    std::size_t bad = 0;
    for (auto x : h) {
      if (v.multiply(x, x) != v.identity() || v.project(x) != v.weyl().identity()) ++bad;
      for (auto y : h)
        if (v.multiply(x, y) != v.multiply(y, x)) ++bad;
    }
    r.expect(n + ".tits.H.elementary_abelian", 0, bad, kExact);
    std::size_t kernel = 0;
    for (std::size_t x = 0; x < v.order(); ++x)
      if (v.project(x) == v.weyl().identity()) ++kernel;
    r.expect(n + ".tits.kernel_is_H", h.size(), kernel, kExact);
  });
  if (f == Family::D && rank >= 3) {
    guarded(r, n + ".tits.twisted", [&] {
      Stopwatch sw(r);
      const auto rep = tits::verify_lemA3(rank);
      const std::string b = "B" + std::to_string(rank - 1);
      r.expect(n + ".tits.twisted_" + b + ".relators", json::array(), rep.failed_relators, kExact);
      r.expect(n + ".tits.twisted_" + b + ".order", rep.expected_order, rep.subgroup_order, kOracle);
      r.expect(n + ".tits.twisted_" + b + ".is_centralizer", true, rep.equals_centralizer, kExact);
    });
  }
  r.elapsed_ms = ms_since(t0);
  return r;
}

Report verify_tits_suite() {
  Report r;
  r.command = "tits";
  const auto t0 = Clock::now();
  for (auto [f, l] : std::vector<std::pair<Family, int>>{
           {Family::A, 1}, {Family::B, 2}, {Family::C, 3}, {Family::D, 3}, {Family::D, 4}})
    r.append(verify_tits(f, l));
  r.params = {{"suite", "mandatory"}};
  r.elapsed_ms = ms_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// Hecke

Report verify_hecke(Family f, int rank, int q, const Options& opt) {
  Report r;
  r.command = "hecke";
  r.params = {{"type", roots::to_string(f)}, {"rank", rank}, {"q", q}};
  const auto t0 = Clock::now();
  if (!is_prime(q) || q == 2) throw InvalidArgument("q must be an odd prime");
  const auto datum = CartanDatum::make(f, rank);
  const std::string base = datum.name() + ".q" + std::to_string(q);
  torus::TorusModel t(datum, q, 1, opt.cache);
  hecke::DecompositionCache cache;
  const mpz_class index = hecke::split_index_p_prime(t.weyl(), q);
  const auto idx_poly = orderpoly::split_index(datum);
  r.expect(base + ".index.polynomial", zstr(index), qstr(idx_poly.eval(q)), kExact);
  for (const auto& o : torus::orbits(t)) {
    const std::string n = base + ".lambda" + lambda_text(o.rep);
    Stopwatch sw(r);
    const auto d = torus::phi_lambda(t, o.rep);
    const hecke::GenericHecke h(t, d);
    const auto& tab = t.subgroup_table(d.w_lambda);
    const auto order = static_cast<std::int64_t>(d.w_lambda.size());

    const auto assoc = hecke::check_associativity(h, q);
    r.expect(n + ".associativity", 0, assoc.failures, kExact).note =
        assoc.full ? "all basis triples" : std::to_string(assoc.random_checked) + " random basis triples";
    r.expect(n + ".dual_basis", 0, hecke::check_dual_basis(h, h.f(q)), kExact);
    r.expect(n + ".g_is_group_algebra", true, hecke::is_group_algebra_at_g(h) && hecke::check_group_idempotents(h, tab),
             kExact);

    const auto g_dec = hecke::decompose(h, tab, h.g());
    std::size_t bad_g = 0;
    for (const auto& b : g_dec.blocks)
      if (b.schur * b.degree != order) ++bad_g;
    r.expect(n + ".schur_at_u1", 0, bad_g, kExact).note = "c_eta(1) = |W(lambda)|/eta(1)";
    r.expect(n + ".g_blocks", tab.table.size(), g_dec.blocks.size(), kExact);

    const auto res = hecke::series_degrees(t, o.rep, &cache);
    std::size_t nonpos = 0, nonint = 0;
    mpz_class sum = 0;
    for (const auto& e : res.degrees) {
      if (e.schur <= 0) ++nonpos;
      const mpq_class deg = mpq_class(res.index_p_prime) / e.schur;
      if (deg.get_den() != 1 || deg.get_num() != e.degree) ++nonint;
      if (e.degree <= 0) ++nonpos;
      sum += e.degree * e.eta_degree;
    }
    r.expect(n + ".schur_positive", 0, nonpos, kExact);
    r.expect(n + ".degrees_integral", 0, nonint, kExact);
    r.expect(n + ".degree_sum", zstr(index), zstr(sum), kExact);

    if (rank == 1 && o.rep == torus::Lambda{0}) {
      const auto fns = hecke::schur_functions(h, tab, 1);
      std::vector<std::string> forms;
      for (const auto& fn : fns) forms.push_back(fn ? fn->to_string() : "none");
      std::sort(forms.begin(), forms.end());
      r.expect(n + ".closed_forms", std::vector<std::string>{"1 + u^-1", "u + 1"}, forms, kTrivial);
      std::vector<std::string> degs;
      for (const auto& e : res.degrees) degs.push_back(zstr(e.degree));
      std::sort(degs.begin(), degs.end(), [](const auto& a, const auto& b) { return mpz_class(a) < mpz_class(b); });
      r.expect(n + ".unipotent_degrees", std::vector<std::string>{"1", std::to_string(q)}, degs, kTrivial);
    }
  }
  r.elapsed_ms = ms_since(t0);
  return r;
}

Report verify_hecke_suite(const Options& opt) {
  Report r;
  r.command = "hecke";
  const auto t0 = Clock::now();
  r.append(verify_hecke(Family::A, 1, 7, opt));
  for (auto [f, l] : std::vector<std::pair<Family, int>>{{Family::B, 2}, {Family::B, 3}, {Family::C, 3}})
    for (int q : {3, 5, 7}) r.append(verify_hecke(f, l, q, opt));
  r.params = {{"suite", "mandatory"}};
  r.elapsed_ms = ms_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// Oracles in Sp_{2l}(q)

Report verify_principal_series(int l, int q, const Options& opt) {
  Report r;
  r.command = "series";
  r.params = {{"rank", l}, {"q", q}};
  const auto t0 = Clock::now();
  const std::string gname = group_name(l, q);
  guarded(r, gname + ".principal_series", [&] {
    require_enumerable(l, q, opt.slow);
    const SympOracle o(l, q, opt.cache);
    torus::TorusModel t(CartanDatum::make(Family::C, l), q, 1, opt.cache);
    hecke::DecompositionCache cache;
    for (std::size_t c = 0; c < t.num_characters(); ++c) {
      Stopwatch sw(r);
      const auto lam = t.decode(c);
      const auto res = hecke::series_degrees(t, lam, &cache);
      std::multiset<std::pair<std::int64_t, std::int64_t>> ours, theirs;
      for (const auto& d : res.degrees) ours.insert({d.degree.get_si(), d.eta_degree});
      const auto ind = torus::induce_principal(o.m, o.g, o.cls, o.borel, lam);
      const auto mult = groups::decompose(o.tab, ind);
      for (std::size_t chi = 0; chi < o.tab.size(); ++chi)
        if (mult[chi] != 0) theirs.insert({o.tab.degrees[chi], mult[chi].get_num().get_si()});
      const auto as_json = [](const auto& s) {
        json a = json::array();
        for (const auto& [deg, m] : s) a.push_back({deg, m});
        return a;
      };
      r.expect(gname + ".lambda" + lambda_text(lam) + ".constituents", as_json(theirs), as_json(ours), kOracle).note =
          "(degree, multiplicity) pairs";
    }
  });
  r.elapsed_ms = ms_since(t0);
  return r;
}

Report verify_mckay(int l, int q, const Options& opt) {
  Report r;
  r.command = "mckay";
  r.params = {{"rank", l}, {"q", q}};
  const auto t0 = Clock::now();
  const std::string gname = group_name(l, q);
  guarded(r, gname + ".mckay", [&] {
    require_enumerable(l, q, opt.slow);
    Stopwatch sw(r);
    const int d = torus::d2(q);
    const SympOracle o(l, q, opt.cache);
    const auto global = groups::count_odd_degree(o.tab);

    torus::TorusModel t(CartanDatum::make(Family::C, l), q, d, opt.cache);
    const auto param = torus::local_count(t, torus::Parity::Odd).odd;

    const auto n = d == 1 ? groups::monomial_subgroup(o.m) : groups::twisted_torus_normalizer(o.m);
    const auto ncl = groups::conjugacy_classes(n);
    const auto ntab = groups::character_table(n, ncl, opt.cache);
    const auto dixon = groups::count_odd_degree(ntab);

    const std::string key = "mckay." + gname;
    r.reported(gname + ".d2", d, kTrivial, "order of q modulo 4");
    r.expect(gname + ".local.parametrisation", global, param, kOracle).note = "pairs (lambda, eta) of odd degree";
    r.expect(gname + ".local.dixon_torus_normalizer", global, dixon, kOracle);

    // The torus normaliser is a Sylow 2-subgroup P here whenever its order is the 2-part of |G|.
    std::size_t g2 = 1, go = o.g.order();
    while (go % 2 == 0) {
      go /= 2;
      g2 *= 2;
    }
    if (n.order() == g2) {
      const auto np = groups::normalizer(o.g, n);
      const auto pcl = groups::conjugacy_classes(np);
      const auto ptab = groups::character_table(np, pcl, opt.cache);
      r.expect(gname + ".local.dixon_sylow_normalizer", global, groups::count_odd_degree(ptab), kOracle).note =
          "|N_G(P)| = " + std::to_string(np.order());
    } else {
      r.skipped(gname + ".local.dixon_sylow_normalizer", "torus normaliser is not a Sylow 2-subgroup");
    }
    if (opt.lock) {
      for (const auto& [k, v] : std::vector<std::pair<std::string, std::size_t>>{
               {key + ".global_odd", global}, {key + ".local_odd", param}}) {
        const auto frozen = opt.lock->get(k);
        const bool match = opt.lock->check_or_freeze(k, static_cast<std::int64_t>(v));
        auto& c = r.expect(k, frozen ? *frozen : static_cast<std::int64_t>(v), static_cast<std::int64_t>(v), kFrozen);
        if (!match) c.status = Status::Fail;
      }
    }
  });
  r.elapsed_ms = ms_since(t0);
  return r;
}

Report verify_odd_series(int l, int q, const Options& opt) {
  Report r;
  r.command = "odd-series";
  r.params = {{"rank", l}, {"q", q}};
  const auto t0 = Clock::now();
  const std::string gname = group_name(l, q);
  guarded(r, gname + ".odd_series", [&] {
    require_enumerable(l, q, opt.slow);
    Stopwatch sw(r);
    const SympOracle o(l, q, opt.cache);
    torus::TorusModel t(CartanDatum::make(Family::C, l), q, 1, opt.cache);
    std::vector<bool> principal(o.tab.size(), false);
    for (std::size_t c = 0; c < t.num_characters(); ++c) {
      const auto ind = torus::induce_principal(o.m, o.g, o.cls, o.borel, t.decode(c));
      const auto mult = groups::decompose(o.tab, ind);
      for (std::size_t chi = 0; chi < o.tab.size(); ++chi)
        if (mult[chi] != 0) principal[chi] = true;
    }
    std::vector<std::size_t> odd_outside;
    std::size_t odd = 0;
    for (std::size_t chi = 0; chi < o.tab.size(); ++chi) {
      if (o.tab.degrees[chi] % 2 == 0) continue;
      ++odd;
      if (!principal[chi]) odd_outside.push_back(chi);
    }
    r.reported(gname + ".odd_count", odd, kOracle);
    const bool exceptional = l % 2 == 1 && q % 4 == 3;
    std::vector<std::int64_t> outside_deg;
    for (auto chi : odd_outside) outside_deg.push_back(o.tab.degrees[chi]);
    if (!exceptional) {
      r.expect(gname + ".odd_outside_principal", json::array(), outside_deg, kOracle);
      return;
    }
    if (l != 1) throw Unsupported("Levi series above T1 x SL2 only checked for l = 1");
    // l = 1: the Levi is G, and its cuspidals of degree (q-1)/2 must be exactly the odd non-principal ones.
    std::vector<std::size_t> half;
    for (auto c : torus::sl2_cuspidals(o.m, o.g, o.cls, o.tab, o.borel))
      if (o.tab.degrees[c] == (q - 1) / 2) half.push_back(c);
    r.expect(gname + ".odd_outside_principal", half, odd_outside, kOracle).note =
        "characters above the cuspidals of degree (q-1)/2";
    r.expect(gname + ".half_cuspidal_count", 2, half.size(), kOracle);
  });
  r.elapsed_ms = ms_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// Parity and the catalogue scan

Report verify_parity(int imax, int qmax, const Options& opt) {
  Report r;
  r.command = "parity";
  r.params = {{"imax", imax}, {"qmax", qmax}};
  const auto t0 = Clock::now();
  {
    Stopwatch sw(r);
    std::size_t cells = 0, bad_odd = 0, bad_two = 0, bad_ge = 0;
    std::string first;
    for (int i = 1; i <= imax; ++i) {
      const bool two_power = i >= 4 && (i & (i - 1)) == 0;
      for (int q = 3; q <= qmax; q += 2) {
        ++cells;
        const auto p = orderpoly::two_adic_profile(i, q);
        const bool odd = p.at_q == 0;
        if (odd != (i > 2 && !two_power)) {
          ++bad_odd;
          if (first.empty()) first = "i=" + std::to_string(i) + " q=" + std::to_string(q);
        }
        if (two_power && p.at_q != 1) ++bad_two;
        if (i >= 2 && p.at_q < *p.at_1) ++bad_ge;
      }
    }
    r.reported("parity.cells", cells, kTrivial);
    r.expect("parity.odd_iff_not_1_2_or_2power", 0, bad_odd, kExact).note = first;
    r.expect("parity.val2_at_2power_is_1", 0, bad_two, kExact);
    r.expect("parity.val2_at_q_ge_val2_at_1", 0, bad_ge, kExact);
  }
  const auto path = opt.data_dir / "cuspidal_unipotent.json";
  if (!std::filesystem::exists(path)) {
    r.notices.push_back("cuspidal data file absent; cuspidal parity checks skipped");
    r.skipped("parity.cuspidal", "no data file");
  } else {
    for (const auto& e : orderpoly::load_cuspidal_data(path.string())) {
      auto f = e.degree;
      const int m = f.multiplicity(1);
      f.cyclo.erase(1);
      const mpq_class a = f.scalar;
      f.scalar = 1;
      f.xpow = 0;
      for (int q : {3, 7, 11}) {
        // Cuspidal characters lie outside the principal series, so their degree must be even at q = 3 mod 4.
        const bool even = orderpoly::cusp_parity_check(a, m, f, q);
        r.expect("parity.cuspidal." + e.group.name() + ".q" + std::to_string(q), true, even, kData).note =
            e.degree.to_string();
      }
    }
  }
  r.elapsed_ms = ms_since(t0);
  return r;
}

Check centralizer_check(const std::string& row, int l, int k, long q) {
  Check c;
  c.name = "centralizers." + row + ".l" + std::to_string(l) + ".k" + std::to_string(k) + ".q" + std::to_string(q);
  orderpoly::CentralizerRow cr;
  try {
    cr = orderpoly::centralizer_row(row, l, k);
  } catch (const InvalidArgument& e) {
    c.status = Status::Skipped;
    c.provenance = kTrivial;
    c.note = e.what();
    return c;
  }
  const auto s = orderpoly::centralizer_scan(cr, q);
  c.expected = s.val2_ambient;
  c.actual = s.val2_centralizer;
  c.provenance = kExact;
  c.note = cr.ambient.name() + " > " + cr.centralizer.name();
  if (q % 4 == 3) {
    c.status = s.contains_sylow2() ? Status::Pass : Status::Fail;
  } else {
    c.status = Status::Reported;
  }
  return c;
}

Report scan_centralizers(int lmax, const std::vector<long>& qs) {
  Report r;
  r.command = "centralizers";
  r.params = {{"lmax", lmax}, {"q", qs}};
  const auto t0 = Clock::now();
  for (const auto& inst : orderpoly::centralizer_instances(lmax))
    for (long q : qs) r.checks.push_back(centralizer_check(inst.row, inst.l, inst.k, q));
  r.elapsed_ms = ms_since(t0);
  return r;
}

// ---------------------------------------------------------------------------

Report run_all(const Options& opt) {
  Report r;
  r.command = "all";
  r.params = {{"slow", opt.slow}};
  const auto t0 = Clock::now();
  r.append(verify_roots_suite());
  r.append(verify_tits_suite());
  r.append(verify_hecke_suite(opt));
  for (auto [l, q] : std::vector<std::pair<int, int>>{{1, 3}, {1, 5}, {1, 7}, {2, 3}}) {
    r.append(verify_principal_series(l, q, opt));
    r.append(verify_mckay(l, q, opt));
  }
  for (auto [l, q] : std::vector<std::pair<int, int>>{{1, 3}, {1, 7}, {2, 3}}) r.append(verify_odd_series(l, q, opt));
  if (opt.slow) {
    r.append(verify_mckay(2, 5, opt));
    r.append(verify_odd_series(2, 5, opt));
  }
  r.append(verify_parity(64, 97, opt));
  r.append(scan_centralizers());
  r.elapsed_ms = ms_since(t0);
  return r;
}

}  // namespace hcv::verify
