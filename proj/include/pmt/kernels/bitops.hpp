#pragma once

// Word-level bitset kernels. Every lattice element, filter and point set in
// the workbench is a packed bitset, so these loops carry most of the
// arithmetic. A scalar reference implementation always exists; vector
// variants are selected once at startup and must agree with it bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace pmt::kernels {

using Word = std::uint64_t;

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);

struct BitopsTable {
  void (*and_into)(Word *dst, const Word *a, const Word *b, std::size_t n);
  void (*or_into)(Word *dst, const Word *a, const Word *b, std::size_t n);
  void (*andnot_into)(Word *dst, const Word *a, const Word *b, std::size_t n);
  bool (*is_subset)(const Word *a, const Word *b, std::size_t n);
  bool (*intersects)(const Word *a, const Word *b, std::size_t n);
  bool (*equal)(const Word *a, const Word *b, std::size_t n);
  bool (*any)(const Word *a, std::size_t n);
  std::size_t (*popcount)(const Word *a, std::size_t n);
};

namespace scalar {
void and_into(Word *dst, const Word *a, const Word *b, std::size_t n);
void or_into(Word *dst, const Word *a, const Word *b, std::size_t n);
void andnot_into(Word *dst, const Word *a, const Word *b, std::size_t n);
bool is_subset(const Word *a, const Word *b, std::size_t n);
bool intersects(const Word *a, const Word *b, std::size_t n);
bool equal(const Word *a, const Word *b, std::size_t n);
bool any(const Word *a, std::size_t n);
std::size_t popcount(const Word *a, std::size_t n);
}  // namespace scalar

/// Table for a specific backend, or nullptr when it is not compiled in or
/// the running CPU lacks the instructions.
const BitopsTable *table_for(Backend b);

/// Best available backend, unless PMT_FORCE_SCALAR is set in the environment.
Backend detect_backend();

/// Currently active table. Tests may switch backends with set_backend().
const BitopsTable &active();
Backend active_backend();
bool set_backend(Backend b);

}  // namespace pmt::kernels
