#include <cstdlib>
#include <string_view>

#include "ddch/kernels.hpp"

namespace ddch::kernels {

#ifdef DDCH_HAVE_AVX2
extern const Table avx2_table;
#endif

namespace {

bool cpu_has_avx2() {
#if defined(DDCH_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table *initial_choice() {
  const Table *best = avx2() ? avx2() : &scalar();
  if (const char *env = std::getenv("DDCH_KERNELS")) {
    const std::string_view want(env);
    if (want == "scalar") return &scalar();
    if (want == "avx2" && avx2()) return avx2();
  }
  return best;
}

const Table *&current() {
  static const Table *t = initial_choice();
  return t;
}

} // namespace

const Table *avx2() {
#ifdef DDCH_HAVE_AVX2
  static const bool ok = cpu_has_avx2();
  return ok ? &avx2_table : nullptr;
#else
  return nullptr;
#endif
}

const Table &active() { return *current(); }

bool select(std::string_view name) {
  if (name == "scalar") {
    current() = &scalar();
    return true;
  }
  if (name == "avx2" && avx2()) {
    current() = avx2();
    return true;
  }
  return false;
}

} // namespace ddch::kernels
