#include "hecke/fp_kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hecke::kernels {

namespace {

Isa detect_isa() {
  if (const char* env = std::getenv("HECKE_ISA")) {
    if (std::string(env) == "scalar") return Isa::scalar;
  }
  return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

Isa& current() {
  static Isa isa = detect_isa();
  return isa;
}

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(HECKE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

Isa active_isa() { return current(); }

void set_isa(Isa isa) {
  if (!isa_supported(isa))
    throw std::invalid_argument("instruction set not supported: " +
                                std::string(isa_name(isa)));
  current() = isa;
}

const KernelTable& table_for(Isa isa) {
#if defined(HECKE_HAVE_AVX2)
  if (isa == Isa::avx2) return detail::avx2_table();
#endif
  (void)isa;
  return detail::scalar_table();
}

void axpy_mod(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c,
              std::uint32_t p, std::size_t len) {
  if (c == 0) return;
  table_for(current()).axpy_mod(y, x, c, p, len);
}

void scale_mod(std::uint32_t* y, std::uint32_t c, std::uint32_t p,
               std::size_t len) {
  if (c == 1) return;
  if (c == 0) {
    std::memset(y, 0, len * sizeof(std::uint32_t));
    return;
  }
  table_for(current()).scale_mod(y, c, p, len);
}

void vec_mat_mod_with(const KernelTable& t, std::uint32_t* out,
                      const std::uint32_t* v, const std::uint32_t* m,
                      std::size_t rows, std::size_t cols, std::uint32_t p) {
  std::memset(out, 0, cols * sizeof(std::uint32_t));
  if (p > 65535) {
    for (std::size_t k = 0; k < rows; ++k)
      if (v[k] != 0) t.axpy_mod(out, m + k * cols, v[k], p, cols);
    return;
  }
  // Delayed reduction: accumulate products in uint32 and fold mod p only
  // when the next batch could overflow.
  const std::uint64_t sq = std::uint64_t(p - 1) * (p - 1);
  const std::uint64_t budget =
      sq == 0 ? std::numeric_limits<std::uint64_t>::max()
              : (std::uint64_t(std::numeric_limits<std::uint32_t>::max()) - p) /
                    sq;
  std::uint64_t pending = 0;
  for (std::size_t k = 0; k < rows; ++k) {
    if (v[k] == 0) continue;
    if (pending == budget) {
      for (std::size_t j = 0; j < cols; ++j) out[j] %= p;
      pending = 0;
    }
    t.acc_scaled(out, m + k * cols, v[k], cols);
    ++pending;
  }
  for (std::size_t j = 0; j < cols; ++j) out[j] %= p;
}

void vec_mat_mod(std::uint32_t* out, const std::uint32_t* v,
                 const std::uint32_t* m, std::size_t rows, std::size_t cols,
                 std::uint32_t p) {
  vec_mat_mod_with(table_for(current()), out, v, m, rows, cols, p);
}

void mat_mul_mod(std::uint32_t* c, const std::uint32_t* a,
                 const std::uint32_t* b, std::size_t n, std::size_t k,
                 std::size_t m, std::uint32_t p) {
  const KernelTable& t = table_for(current());
  for (std::size_t i = 0; i < n; ++i)
    vec_mat_mod_with(t, c + i * m, a + i * k, b, k, m, p);
}

}  // namespace hecke::kernels
