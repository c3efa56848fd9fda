#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace semiarc {

/// Fixed-size bitset over point (or line) indices.
class PointMask {
 public:
  PointMask() = default;
  explicit PointMask(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t bits() const noexcept { return bits_; }

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// |this ∩ other|
  std::size_t intersect_count(const PointMask& other) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    }
    return c;
  }

  bool intersects(const PointMask& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & other.words_[i]) return true;
    }
    return false;
  }

  friend bool operator==(const PointMask&, const PointMask&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace semiarc
