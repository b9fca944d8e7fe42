#include "table_cache.hpp"

#include <algorithm>
#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/binary_from_base64.hpp>
#include <boost/archive/iterators/transform_width.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

// Cache file layout: a JSON header (format tag, descriptor, class
// representatives, degrees) and the table values as a base64 blob of
// little-endian int64 records: field, ncoeffs, coeffs... per entry.
namespace hcv::groups::detail {

namespace {

constexpr const char* kFormat = "hcverify.chartable/v1";

using namespace boost::archive::iterators;
using ToBase64 = base64_from_binary<transform_width<std::string::const_iterator, 6, 8>>;
using FromBase64 = transform_width<binary_from_base64<std::string::const_iterator>, 8, 6>;

std::string encode(const std::string& raw) {
  std::string out(ToBase64(raw.begin()), ToBase64(raw.end()));
  out.append((3 - raw.size() % 3) % 3, '=');
  return out;
}

std::string decode(std::string s) {
  const auto pad = static_cast<std::size_t>(std::count(s.begin(), s.end(), '='));
  std::replace(s.begin(), s.end(), '=', 'A');
  std::string out(FromBase64(s.begin()), FromBase64(s.end()));
  out.erase(out.size() - pad);
  return out;
}

void put(std::string& buf, std::int64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
}

std::int64_t get(const std::string& buf, std::size_t& pos) {
  if (pos + 8 > buf.size()) throw std::runtime_error("truncated cache payload");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
  pos += 8;
  return static_cast<std::int64_t>(v);
}

std::string hex(std::span<const std::uint8_t> b) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (auto x : b) {
    s.push_back(digits[x >> 4]);
    s.push_back(digits[x & 15]);
  }
  return s;
}

std::filesystem::path path_for(const CacheOptions& cache, const FiniteGroup& g) {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(descriptor_hash(g.descriptor())));
  return cache.dir / name;
}

nlohmann::json class_reps(const FiniteGroup& g, const ConjClasses& cls) {
  nlohmann::json reps = nlohmann::json::array();
  for (auto r : cls.reps) reps.push_back(hex(g.element(r)));
  return reps;
}

}  // namespace

std::uint64_t descriptor_hash(const std::string& descriptor) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : descriptor) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::optional<CharacterTable> load_table(const CacheOptions& cache, const FiniteGroup& g, const ConjClasses& cls) {
  if (cache.dir.empty()) return std::nullopt;
  std::ifstream in(path_for(cache, g));
  if (!in) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.at("format") != kFormat || j.at("descriptor") != g.descriptor() || j.at("classes") != class_reps(g, cls))
      return std::nullopt;
    CharacterTable t;
    t.group_order = g.order();
    t.class_sizes = cls.sizes;
    t.inverse_class = cls.inverse_class;
    t.dixon_prime = j.at("dixon_prime").get<std::uint64_t>();
    t.degrees = j.at("degrees").get<std::vector<std::int64_t>>();
    const std::string raw = decode(j.at("values").get<std::string>());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < t.degrees.size(); ++i) {
      ClassFunction row;
      for (std::size_t k = 0; k < cls.size(); ++k) {
        const auto field = static_cast<int>(get(raw, pos));
        const auto n = static_cast<std::size_t>(get(raw, pos));
        std::vector<std::int64_t> c(n);
        for (auto& v : c) v = get(raw, pos);
        row.push_back(cyc::Cyc::from_group_ring(field, c));
      }
      t.rows.push_back(std::move(row));
    }
    if (pos != raw.size()) return std::nullopt;
    return t;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entries are recomputed
  }
}

void store_table(const CacheOptions& cache, const FiniteGroup& g, const ConjClasses& cls, const CharacterTable& t) {
  if (cache.dir.empty()) return;
  std::string raw;
  for (const auto& row : t.rows)
    for (const auto& v : row) {
      put(raw, v.field());
      put(raw, static_cast<std::int64_t>(v.coeffs().size()));
      for (auto c : v.coeffs()) put(raw, c);
    }
  nlohmann::json j;
  j["format"] = kFormat;
  j["descriptor"] = g.descriptor();
  j["classes"] = class_reps(g, cls);
  j["dixon_prime"] = t.dixon_prime;
  j["degrees"] = t.degrees;
  j["values"] = encode(raw);
  std::error_code ec;
  std::filesystem::create_directories(cache.dir, ec);
  const auto target = path_for(cache, g);
  const auto tmp = std::filesystem::path(target.string() + ".tmp");
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, target, ec);
}

}  // namespace hcv::groups::detail
