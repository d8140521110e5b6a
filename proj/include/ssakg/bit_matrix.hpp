#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ssakg {

// Dense square bit-matrix, row-major, 64 columns per word.
class BitMatrix {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitMatrix() = default;
  explicit BitMatrix(std::size_t size)
      : size_(size), words_per_row_((size + kWordBits - 1) / kWordBits), bits_(size * words_per_row_, 0) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t words_per_row() const noexcept { return words_per_row_; }

  bool test(std::size_t row, std::size_t col) const noexcept {
    return (bits_[row * words_per_row_ + col / kWordBits] >> (col % kWordBits)) & 1U;
  }

  // Returns true when the bit was previously clear.
  bool set(std::size_t row, std::size_t col) noexcept {
    Word& w = bits_[row * words_per_row_ + col / kWordBits];
    const Word mask = Word{1} << (col % kWordBits);
    const bool was_clear = (w & mask) == 0;
    w |= mask;
    return was_clear;
  }

  std::span<const Word> row(std::size_t r) const noexcept {
    return {bits_.data() + r * words_per_row_, words_per_row_};
  }

  std::size_t row_count(std::size_t r) const noexcept {
    std::size_t total = 0;
    for (Word w : row(r)) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  // popcount(row r AND mask)
  std::size_t row_count_masked(std::size_t r, std::span<const Word> mask) const noexcept {
    std::size_t total = 0;
    const auto bits = row(r);
    for (std::size_t i = 0; i < words_per_row_; ++i) total += static_cast<std::size_t>(std::popcount(bits[i] & mask[i]));
    return total;
  }

  std::size_t count() const noexcept {
    std::size_t total = 0;
    for (Word w : bits_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  bool operator==(const BitMatrix&) const = default;

 private:
  std::size_t size_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<Word> bits_;
};

}  // namespace ssakg
