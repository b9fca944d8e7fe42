#pragma once

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hcv/groups.hpp"
#include "hcv/rootsystems.hpp"

// Verification commands wiring the modules together, with machine-readable
// reports.  Every command is deterministic given its inputs and the cache.
namespace hcv::verify {

using nlohmann::json;

inline constexpr const char* kReportSchema = "hcverify-report";
inline constexpr int kReportVersion = 1;

enum class Status { Pass, Fail, Skipped, Reported };
std::string to_string(Status s);

// Provenance tags.
inline constexpr const char* kTrivial = "trivial";
inline constexpr const char* kOracle = "derived:oracle";
inline constexpr const char* kExact = "derived:exact";
inline constexpr const char* kFrozen = "derived:lockfile";
inline constexpr const char* kData = "data-file";

struct Check {
  std::string name;
  Status status = Status::Pass;
  json expected;  // null when not applicable
  json actual;
  std::string provenance = kExact;
  std::string note;
  double elapsed_ms = 0;
};

struct Report {
  std::string command;
  json params = json::object();
  std::vector<Check> checks;
  std::vector<std::string> notices;
  double elapsed_ms = 0;

  // Appends a pass/fail check; fail records keep expected and actual.
  Check& expect(const std::string& name, const json& expected, const json& actual, const std::string& provenance);
  Check& reported(const std::string& name, const json& actual, const std::string& provenance, const std::string& note = {});
  Check& skipped(const std::string& name, const std::string& reason);
  void append(const Report& other);

  bool ok() const;  // no failed check
  std::size_t count(Status s) const;
};

// Sorted keys, integers only, one trailing newline.  Without timing the
// output is byte-stable across runs.
json to_json(const Report& r, bool timing = true);
std::string to_json_text(const Report& r, bool timing = true);
std::string to_csv(const Report& r, bool timing = true);
// Parses and validates a schema v1 report.
Report from_json(const json& j);

// Regression constants derived on the first verified run, asserted after.
class Lockfile {
 public:
  Lockfile() = default;
  explicit Lockfile(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }
  std::optional<std::int64_t> get(const std::string& key) const;
  // Stores the value if absent; returns whether it matches the stored one.
  bool check_or_freeze(const std::string& key, std::int64_t value);
  bool dirty() const { return dirty_; }
  void save() const;  // no-op without a path
  const std::map<std::string, std::int64_t>& values() const { return values_; }

 private:
  std::filesystem::path path_;
  std::map<std::string, std::int64_t> values_;
  bool dirty_ = false;
};

struct Options {
  groups::CacheOptions cache;
  bool slow = false;
  Lockfile* lock = nullptr;                // optional
  std::filesystem::path data_dir = HCV_DATA_DIR;
};

// Root system and Weyl group counts against closure and closed-form oracles.
Report verify_roots(roots::Family f, int rank);
Report verify_roots_suite();

// Tits groups: |V| = 2^l |W|, H elementary abelian of order 2^l, and for
// type D the twisted isomorphism with B_{l-1}.
Report verify_tits(roots::Family f, int rank);
Report verify_tits_suite();

// Hecke checks for every W-orbit of split torus characters.
Report verify_hecke(roots::Family f, int rank, int q, const Options& opt = {});
Report verify_hecke_suite(const Options& opt = {});

// Principal-series degrees against Ind_B^G in Sp_{2l}(q), l in {1, 2}.
Report verify_principal_series(int l, int q, const Options& opt = {});

// |Irr_2'(Sp_{2l}(q))| against the local side computed three ways.
Report verify_mckay(int l, int q, const Options& opt = {});

// Odd-degree characters of Sp_{2l}(q) are principal series unless l is odd
// and q = 3 mod 4, where the rest lie above the cuspidals of degree (q-1)/2.
Report verify_odd_series(int l, int q, const Options& opt = {});

// Cyclotomic parity grid for i <= imax and odd q <= qmax, plus the
// cuspidal parity check on the data file entries.
Report verify_parity(int imax = 64, int qmax = 97, const Options& opt = {});

// One check per valid (row, l, k, q); asserted for q = 3 mod 4.
Report scan_centralizers(int lmax = 8, const std::vector<long>& qs = {3, 7, 11, 19});
// A single catalogue entry; invalid parameters give a skipped record.
Check centralizer_check(const std::string& row, int l, int k, long q);

// Mandatory tier of every command.
Report run_all(const Options& opt = {});

}  // namespace hcv::verify
