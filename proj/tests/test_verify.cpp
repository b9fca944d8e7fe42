#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "hcv/error.hpp"
#include "hcv/orderpoly.hpp"
#include "hcv/verify.hpp"

using namespace hcv;
using verify::Report;
using verify::Status;

TEST_CASE("empty report is schema valid") {
  Report r;
  r.command = "none";
  const auto j = verify::to_json(r);
  CHECK(j["schema"] == verify::kReportSchema);
  CHECK(j["version"] == 1);
  CHECK(j["checks"].empty());
  CHECK(j["summary"]["total"] == 0);
  const auto back = verify::from_json(j);
  CHECK(back.checks.empty());
  CHECK(back.ok());
}

TEST_CASE("fail records carry expected and actual") {
  Report r;
  r.command = "t";
  r.expect("a", 1, 1, verify::kTrivial);
  r.expect("b", 2, 3, verify::kTrivial);
  CHECK_FALSE(r.ok());
  CHECK(r.count(Status::Fail) == 1);
  const auto j = verify::to_json(r, false);
  CHECK(j["checks"][1]["status"] == "fail");
  CHECK(j["checks"][1]["expected"] == 2);
  CHECK(j["checks"][1]["actual"] == 3);
  CHECK_FALSE(j["checks"][1].contains("elapsed_ms"));

  auto broken = j;
  broken["checks"][1]["expected"] = nullptr;
  CHECK_THROWS_AS(verify::from_json(broken), InvalidArgument);
  auto wrong = j;
  wrong["version"] = 2;
  CHECK_THROWS_AS(verify::from_json(wrong), InvalidArgument);
}

TEST_CASE("reports are byte stable without timing") {
  const auto a = verify::to_json_text(verify::verify_roots(roots::Family::B, 3), false);
  const auto b = verify::to_json_text(verify::verify_roots(roots::Family::B, 3), false);
  CHECK(a == b);
  CHECK(a.find("elapsed_ms") == std::string::npos);
  // Keys are sorted.
  CHECK(a.find("\"checks\"") < a.find("\"command\""));
  CHECK(verify::to_json_text(verify::from_json(nlohmann::json::parse(a)), false) == a);
}

TEST_CASE("centralizers scan and CSV export") {
  const auto r = verify::scan_centralizers(6, {3, 5});
  std::size_t tuples = 0;
  for (const auto& inst : orderpoly::centralizer_instances(6)) {
    (void)inst;
    tuples += 2;
  }
  CHECK(r.checks.size() == tuples);
  const auto csv = verify::to_csv(r);
  std::size_t lines = 0;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == tuples + 1);
  // q = 5 is reported only.
  for (const auto& c : r.checks)
    if (c.name.ends_with(".q5")) CHECK(c.status == Status::Reported);

  const auto ok = verify::centralizer_check("B", 2, 1, 3);
  CHECK(ok.status == Status::Pass);
  const auto bad = verify::centralizer_check("B", 4, 3, 3);
  CHECK(bad.status == Status::Skipped);
  CHECK_FALSE(bad.note.empty());
}

TEST_CASE("lockfile freezes then asserts") {
  const auto path = std::filesystem::temp_directory_path() / "hcv_lock_test.json";
  std::filesystem::remove(path);
  {
    verify::Lockfile lock(path);
    CHECK_FALSE(lock.get("x").has_value());
    CHECK(lock.check_or_freeze("x", 4));
    CHECK(lock.dirty());
    lock.save();
  }
  verify::Lockfile again(path);
  CHECK(again.get("x") == 4);
  CHECK(again.check_or_freeze("x", 4));
  CHECK_FALSE(again.check_or_freeze("x", 5));
  CHECK_FALSE(again.dirty());
  std::filesystem::remove(path);
}

TEST_CASE("mckay report against a fresh lock") {
  const auto path = std::filesystem::temp_directory_path() / "hcv_lock_mckay.json";
  std::filesystem::remove(path);
  verify::Lockfile lock(path);
  verify::Options opt;
  opt.lock = &lock;
  const auto r = verify::verify_mckay(1, 3, opt);
  CHECK(r.ok());
  CHECK(lock.get("mckay.SL2(3).global_odd") == 4);
  const auto unsupported = verify::verify_mckay(3, 3, opt);
  CHECK(unsupported.count(Status::Skipped) == 1);
}

TEST_CASE("odd series dichotomy for SL2") {
  for (int q : {3, 5, 7}) {
    const auto r = verify::verify_odd_series(1, q);
    CHECK_MESSAGE(r.ok(), "q = " << q);
  }
}
