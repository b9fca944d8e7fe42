// Acceptance runner: `hcv_acceptance [N...]` prints one line per criterion
// and exits nonzero if any requested criterion fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <unistd.h>

#include "hcv/error.hpp"
#include "hcv/verify.hpp"

using namespace hcv;
using verify::Report;
using verify::Status;

namespace {

const std::filesystem::path kLock = HCV_DATA_DIR "/regression.lock.json";

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome judge(const Report& r, double seconds, double limit) {
  Outcome o;
  const auto fails = r.count(Status::Fail);
  const auto skipped = r.count(Status::Skipped);
  o.pass = fails == 0 && skipped == 0 && seconds <= limit;
  o.detail = std::to_string(r.count(Status::Pass)) + " pass, " + std::to_string(fails) + " fail, " +
             std::to_string(skipped) + " skipped, " + std::to_string(static_cast<int>(seconds)) + " s (limit " +
             std::to_string(static_cast<int>(limit)) + " s)";
  if (fails) {
    std::size_t shown = 0;
    for (const auto& c : r.checks)
      if (c.status == Status::Fail) {
        std::cerr << "  fail " << c.name << " expected " << c.expected.dump() << " actual " << c.actual.dump()
                  << (c.note.empty() ? "" : " (" + c.note + ")") << "\n";
        if (++shown == 100) break;
      }
    for (const auto& c : r.checks)
      if (c.status == Status::Fail) {
        o.detail += "; first failure " + c.name;
        break;
      }
  }
  for (const auto& c : r.checks)
    if (c.status == Status::Skipped) std::cerr << "  skipped " << c.name << ": " << c.note << "\n";
  return o;
}

template <class F>
Outcome timed(double limit, F&& run) {
  const auto t0 = std::chrono::steady_clock::now();
  const Report r = run();
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return judge(r, s, limit);
}

Report join(std::initializer_list<Report> parts) {
  Report r;
  for (const auto& p : parts) r.append(p);
  return r;
}

verify::Options options(verify::Lockfile* lock) {
  verify::Options o;
  o.cache = groups::CacheOptions::from_env();
  o.lock = lock;
  return o;
}

Outcome criterion(int n) {
  switch (n) {
    case 1: return timed(10, [] { return verify::verify_roots_suite(); });
    case 2: return timed(60, [] { return verify::verify_tits_suite(); });
    case 3: return timed(300, [] { return verify::verify_hecke_suite(options(nullptr)); });
    case 4:
      return timed(900, [] {
        const auto o = options(nullptr);
        return join({verify::verify_principal_series(1, 3, o), verify::verify_principal_series(1, 5, o),
                     verify::verify_principal_series(1, 7, o), verify::verify_principal_series(2, 3, o)});
      });
    case 5: {
      verify::Lockfile lock(kLock);
      auto out = timed(900, [&] {
        const auto o = options(&lock);
        return join({verify::verify_mckay(1, 3, o), verify::verify_mckay(1, 5, o), verify::verify_mckay(1, 7, o),
                     verify::verify_mckay(2, 3, o)});
      });
      if (out.pass && lock.dirty()) {
        lock.save();
        out.detail += "; froze constants in " + kLock.string();
      }
      return out;
    }
    case 6:
      return timed(900, [] {
        const auto o = options(nullptr);
        return join({verify::verify_odd_series(1, 3, o), verify::verify_odd_series(1, 7, o),
                     verify::verify_odd_series(2, 3, o)});
      });
    case 7: return timed(5, [] { return verify::verify_parity(64, 97, options(nullptr)); });
    case 8: return timed(10, [] { return verify::scan_centralizers(8, {3, 7, 11, 19}); });
    case 9: {
      // Cold cache then warm cache, same lock contents; reports must agree byte for byte without timing.
      const auto dir = std::filesystem::temp_directory_path() / ("hcv_accept_cache_" + std::to_string(::getpid()));
      std::filesystem::remove_all(dir);
      std::filesystem::create_directories(dir);
      verify::Lockfile lock_a(kLock), lock_b(kLock);
      verify::Options a = options(&lock_a), b = options(&lock_b);
      a.cache.dir = b.cache.dir = dir;
      const auto t0 = std::chrono::steady_clock::now();
      const auto first = verify::to_json_text(verify::run_all(a), false);
      const auto second = verify::to_json_text(verify::run_all(b), false);
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::filesystem::remove_all(dir);
      Outcome o;
      o.pass = first == second;
      o.detail = std::to_string(first.size()) + " bytes per report, " + (o.pass ? "identical" : "different") + ", " +
                 std::to_string(static_cast<int>(s)) + " s";
      return o;
    }
    default: throw InvalidArgument("criteria are numbered 1 to 9");
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= 9; ++i) which.push_back(i);
  bool all = true;
  for (int n : which) {
    Outcome o;
    try {
      o = criterion(n);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << ")" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
