#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <vector>

namespace hcv::detail {

// Append-only store of fixed-width byte records with an open-addressing
// index.  Records are identified by their insertion position.
class FlatStore {
 public:
  FlatStore() = default;
  explicit FlatStore(std::size_t width) : width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t size() const { return width_ == 0 ? 0 : data_.size() / width_; }

  std::span<const std::uint8_t> operator[](std::size_t i) const {
    return {data_.data() + i * width_, width_};
  }

  std::optional<std::uint32_t> find(std::span<const std::uint8_t> rec) const {
    if (slots_.empty()) return std::nullopt;
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t s = hash(rec) & mask;; s = (s + 1) & mask) {
      const std::uint32_t v = slots_[s];
      if (v == kEmpty) return std::nullopt;
      if (std::memcmp(data_.data() + std::size_t(v) * width_, rec.data(), width_) == 0) return v;
    }
  }

  // Returns (index, inserted).
  std::pair<std::uint32_t, bool> insert(std::span<const std::uint8_t> rec) {
    if ((size() + 1) * 2 > slots_.size()) grow();
    const std::size_t mask = slots_.size() - 1;
    std::size_t s = hash(rec) & mask;
    for (;; s = (s + 1) & mask) {
      const std::uint32_t v = slots_[s];
      if (v == kEmpty) break;
      if (std::memcmp(data_.data() + std::size_t(v) * width_, rec.data(), width_) == 0) return {v, false};
    }
    const auto idx = static_cast<std::uint32_t>(size());
    data_.insert(data_.end(), rec.begin(), rec.end());
    slots_[s] = idx;
    return {idx, true};
  }

  void reserve(std::size_t n) { data_.reserve(n * width_); }

  static std::uint64_t hash(std::span<const std::uint8_t> rec) {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint8_t b : rec) {
      h ^= b;
      h *= 1099511628211ULL;
    }
    return h ^ (h >> 29);
  }

 private:
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  void grow() {
    std::size_t cap = slots_.empty() ? 64 : slots_.size() * 2;
    slots_.assign(cap, kEmpty);
    const std::size_t mask = cap - 1;
    for (std::size_t i = 0; i < size(); ++i) {
      std::size_t s = hash((*this)[i]) & mask;
      while (slots_[s] != kEmpty) s = (s + 1) & mask;
      slots_[s] = static_cast<std::uint32_t>(i);
    }
  }

  std::size_t width_ = 0;
  std::vector<std::uint8_t> data_;
  std::vector<std::uint32_t> slots_;
};

}  // namespace hcv::detail
