#include "pmt/kernels/bitops.hpp"

#include <arm_neon.h>

#include <bit>

namespace pmt::kernels::neon {

namespace {
inline uint64x2_t load(const Word *p) { return vld1q_u64(p); }
inline bool nonzero(uint64x2_t v) { return (vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1)) != 0; }
}  // namespace

void and_into(Word *dst, const Word *a, const Word *b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vandq_u64(load(a + i), load(b + i)));
  for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_into(Word *dst, const Word *a, const Word *b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vorrq_u64(load(a + i), load(b + i)));
  for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void andnot_into(Word *dst, const Word *a, const Word *b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vbicq_u64(load(a + i), load(b + i)));
  for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

bool is_subset(const Word *a, const Word *b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    if (nonzero(vbicq_u64(load(a + i), load(b + i)))) return false;
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool intersects(const Word *a, const Word *b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    if (nonzero(vandq_u64(load(a + i), load(b + i)))) return true;
  for (; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool equal(const Word *a, const Word *b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    if (nonzero(veorq_u64(load(a + i), load(b + i)))) return false;
  for (; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool any(const Word *a, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    if (nonzero(load(a + i))) return true;
  for (; i < n; ++i)
    if (a[i]) return true;
  return false;
}

std::size_t popcount(const Word *a, std::size_t n) {
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(load(a + i)));
    c += vaddvq_u8(bytes);
  }
  for (; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

extern const BitopsTable kTable{and_into, or_into, andnot_into, is_subset,
                                intersects, equal, any, popcount};

}  // namespace pmt::kernels::neon
