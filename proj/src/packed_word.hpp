#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>

#include "pxca/errors.hpp"
#include "pxca/lattice.hpp"

namespace pxca::detail {

// Reduced word over F_n packed in 64 bits: length in the low 6 bits, then
// fixed-width letter codes (generator g -> 2(g-1), inverse -> 2(g-1)+1).
class PackedCodec {
 public:
  explicit PackedCodec(int rank) {
    int codes = 2 * rank;
    width_ = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(codes - 1))));
    mask_ = (std::uint64_t{1} << width_) - 1;
    max_len_ = std::min(63, (64 - 6) / width_);
  }

  int max_length() const { return max_len_; }
  static int length(std::uint64_t w) { return static_cast<int>(w & 63); }
  static int code_of(int g) { return 2 * (std::abs(g) - 1) + (g < 0 ? 1 : 0); }
  static int generator_of(int code) { return (code & 1) ? -(code / 2 + 1) : code / 2 + 1; }

  int letter(std::uint64_t w, int i) const { return static_cast<int>((w >> (6 + width_ * i)) & mask_); }

  // right multiplication by one letter
  std::uint64_t append(std::uint64_t w, int code) const {
    int len = length(w);
    if (len > 0 && letter(w, len - 1) == (code ^ 1)) {
      w &= ~(mask_ << (6 + width_ * (len - 1)));
      return (w & ~std::uint64_t{63}) | static_cast<std::uint64_t>(len - 1);
    }
    if (len >= max_len_) throw resource_error("free group word longer than the packed limit");
    w |= static_cast<std::uint64_t>(code) << (6 + width_ * len);
    return (w & ~std::uint64_t{63}) | static_cast<std::uint64_t>(len + 1);
  }

  std::uint64_t encode(const Word& word) const {
    std::uint64_t w = 0;
    for (int g : word) w = append(w, code_of(g));
    return w;
  }

  Word decode(std::uint64_t w) const {
    Word out;
    for (int i = 0; i < length(w); ++i) out.push_back(generator_of(letter(w, i)));
    return out;
  }

 private:
  int width_ = 1;
  std::uint64_t mask_ = 1;
  int max_len_ = 58;
};

struct Mix64 {
  std::size_t operator()(std::uint64_t x) const {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};

}  // namespace pxca::detail
