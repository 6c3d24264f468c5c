#include "pmt/kernels/bitops.hpp"

#include <atomic>
#include <cstdlib>

namespace pmt::kernels {

#if defined(PMT_HAVE_AVX2_KERNELS)
namespace avx2 {
extern const BitopsTable kTable;
}
#endif
#if defined(PMT_HAVE_NEON_KERNELS)
namespace neon {
extern const BitopsTable kTable;
}
#endif

namespace {

const BitopsTable kScalar{scalar::and_into,   scalar::or_into, scalar::andnot_into,
                          scalar::is_subset,  scalar::intersects, scalar::equal,
                          scalar::any,        scalar::popcount};

std::atomic<const BitopsTable *> g_active{nullptr};
std::atomic<Backend> g_backend{Backend::Scalar};

void ensure_initialised() {
  if (g_active.load(std::memory_order_acquire) != nullptr) return;
  Backend b = detect_backend();
  g_backend.store(b, std::memory_order_relaxed);
  g_active.store(table_for(b), std::memory_order_release);
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

const BitopsTable *table_for(Backend b) {
  switch (b) {
    case Backend::Scalar: return &kScalar;
    case Backend::Avx2:
#if defined(PMT_HAVE_AVX2_KERNELS)
      if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt")) return &avx2::kTable;
#endif
      return nullptr;
    case Backend::Neon:
#if defined(PMT_HAVE_NEON_KERNELS)
      return &neon::kTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Backend detect_backend() {
  if (const char *v = std::getenv("PMT_FORCE_SCALAR"); v != nullptr && *v != '\0' && *v != '0')
    return Backend::Scalar;
  if (table_for(Backend::Avx2)) return Backend::Avx2;
  if (table_for(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

const BitopsTable &active() {
  ensure_initialised();
  return *g_active.load(std::memory_order_acquire);
}

Backend active_backend() {
  ensure_initialised();
  return g_backend.load(std::memory_order_relaxed);
}

bool set_backend(Backend b) {
  const BitopsTable *t = table_for(b);
  if (t == nullptr) return false;
  g_backend.store(b, std::memory_order_relaxed);
  g_active.store(t, std::memory_order_release);
  return true;
}

}  // namespace pmt::kernels
