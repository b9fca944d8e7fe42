#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "hcv/error.hpp"
#include "hcv/verify.hpp"

using namespace hcv;

namespace {

struct Args {
  std::string command;
  int q = 0;
  std::string type;
  int rank = 0;
  std::string cache;
  std::string format = "json";
  std::string out;
  std::string lock = HCV_DATA_DIR "/regression.lock.json";
  bool slow = false;
  bool no_timing = false;
};

verify::Report dispatch(const Args& a, const verify::Options& opt) {
  const bool has_type = !a.type.empty();
  const auto family = [&] { return roots::parse_family(a.type); };
  const auto need = [&](bool ok, const char* what) {
    if (!ok) throw InvalidArgument(a.command + " needs " + what);
  };
  if (a.command == "roots") {
    if (!has_type) return verify::verify_roots_suite();
    need(a.rank > 0, "--rank with --type");
    return verify::verify_roots(family(), a.rank);
  }
  if (a.command == "tits") {
    if (!has_type) return verify::verify_tits_suite();
    need(a.rank > 0, "--rank with --type");
    return verify::verify_tits(family(), a.rank);
  }
  if (a.command == "hecke") {
    if (!has_type) return verify::verify_hecke_suite(opt);
    need(a.rank > 0 && a.q > 0, "--rank and --q with --type");
    return verify::verify_hecke(family(), a.rank, a.q, opt);
  }
  if (a.command == "series" || a.command == "mckay" || a.command == "odd-series") {
    if (has_type && a.type != "C") throw Unsupported("only the symplectic groups (type C) are enumerable");
    need(a.rank > 0 && a.q > 0, "--rank and --q");
    if (a.command == "series") return verify::verify_principal_series(a.rank, a.q, opt);
    if (a.command == "mckay") return verify::verify_mckay(a.rank, a.q, opt);
    return verify::verify_odd_series(a.rank, a.q, opt);
  }
  if (a.command == "parity") return verify::verify_parity(64, 97, opt);
  if (a.command == "centralizers") {
    const int lmax = a.rank > 0 ? a.rank : 8;
    return a.q > 0 ? verify::scan_centralizers(lmax, {a.q}) : verify::scan_centralizers(lmax);
  }
  if (a.command == "all") return verify::run_all(opt);
  throw InvalidArgument("unknown subcommand " + a.command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hcverify: exact checks on Hecke algebras, torus characters and order polynomials"};
  app.require_subcommand(1);
  Args a;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"roots", "root system and Weyl group counts"},
      {"tits", "extended Weyl groups by coset enumeration"},
      {"hecke", "Hecke algebra structure, Schur elements and series degrees"},
      {"series", "principal-series degrees against induced characters"},
      {"mckay", "odd-degree character counts, global against local"},
      {"odd-series", "odd-degree characters and their Harish-Chandra series"},
      {"parity", "2-adic values of cyclotomic polynomials"},
      {"centralizers", "2-parts of disconnected centraliser orders"},
      {"all", "mandatory tier of every check"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--q", a.q, "field size");
    sub->add_option("--type", a.type, "family: A, B, C, D, E6, E7");
    sub->add_option("--rank", a.rank, "rank (centralizers: largest ambient rank)");
    sub->add_option("--cache", a.cache, "character table cache directory (default $HCVERIFY_CACHE)");
    sub->add_option("--format", a.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", a.out, "report path (default stdout)");
    sub->add_option("--lock", a.lock, "regression lockfile");
    sub->add_flag("--slow", a.slow, "include the slow tier");
    sub->add_flag("--no-timing", a.no_timing, "omit elapsed fields");
    sub->callback([&a, name = name] { a.command = name; });
  }
  CLI11_PARSE(app, argc, argv);

  try {
    verify::Options opt;
    opt.cache = a.cache.empty() ? groups::CacheOptions::from_env() : groups::CacheOptions{a.cache};
    if (!opt.cache.dir.empty()) std::filesystem::create_directories(opt.cache.dir);
    opt.slow = a.slow;
    verify::Lockfile lock(a.lock);
    opt.lock = &lock;

    const auto report = dispatch(a, opt);
    const bool timing = !a.no_timing;
    const std::string text = a.format == "csv" ? verify::to_csv(report, timing) : verify::to_json_text(report, timing);
    if (a.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(a.out);
      if (!out) throw InvalidArgument("cannot write " + a.out);
      out << text;
    }
    if (lock.dirty() && report.ok()) {
      lock.save();
      std::cerr << "hcverify: froze new regression constants in " << lock.path().string() << "\n";
    }
    std::cerr << "hcverify: " << report.count(verify::Status::Pass) << " pass, " << report.count(verify::Status::Fail)
              << " fail, " << report.count(verify::Status::Skipped) << " skipped, "
              << report.count(verify::Status::Reported) << " reported\n";
    return report.ok() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "hcverify: " << e.what() << "\n";
    return 2;
  }
}
