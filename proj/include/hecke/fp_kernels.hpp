#pragma once

// Row kernels for dense linear algebra over prime fields F_p.
//
// Every entry is a residue in [0, p). The scalar versions are the reference;
// the AVX2 versions are selected at runtime when the CPU supports them and
// must agree with the reference bit for bit.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace hecke::kernels {

enum class Isa { scalar, avx2 };

bool isa_supported(Isa isa);
std::string_view isa_name(Isa isa);

/// The instruction set used by the dispatching entry points below.
/// Chosen on first use: AVX2 when available, unless the environment variable
/// HECKE_ISA=scalar is set.
Isa active_isa();

/// Forces an instruction set. Throws std::invalid_argument if unsupported.
void set_isa(Isa isa);

/// y[i] <- (y[i] + c * x[i]) mod p
void axpy_mod(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c,
              std::uint32_t p, std::size_t len);

/// y[i] <- (c * y[i]) mod p
void scale_mod(std::uint32_t* y, std::uint32_t c, std::uint32_t p,
               std::size_t len);

/// out <- v * M mod p, where M is rows x cols, row-major, and v has `rows`
/// entries. `out` must not alias v or M.
void vec_mat_mod(std::uint32_t* out, const std::uint32_t* v,
                 const std::uint32_t* m, std::size_t rows, std::size_t cols,
                 std::uint32_t p);

/// C <- A * B mod p. A is n x k, B is k x m, C is n x m; all row-major.
void mat_mul_mod(std::uint32_t* c, const std::uint32_t* a,
                 const std::uint32_t* b, std::size_t n, std::size_t k,
                 std::size_t m, std::uint32_t p);

/// Per-ISA primitives. Exposed so the equivalence tests can call each
/// variant directly.
struct KernelTable {
  void (*axpy_mod)(std::uint32_t*, const std::uint32_t*, std::uint32_t,
                   std::uint32_t, std::size_t);
  void (*scale_mod)(std::uint32_t*, std::uint32_t, std::uint32_t, std::size_t);
  // acc[i] += c * x[i] with wrap-free uint32 arithmetic (caller bounds it)
  void (*acc_scaled)(std::uint32_t*, const std::uint32_t*, std::uint32_t,
                     std::size_t);
};

const KernelTable& table_for(Isa isa);

namespace detail {
const KernelTable& scalar_table();
#if defined(HECKE_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
}  // namespace detail

void vec_mat_mod_with(const KernelTable& t, std::uint32_t* out,
                      const std::uint32_t* v, const std::uint32_t* m,
                      std::size_t rows, std::size_t cols, std::uint32_t p);

}  // namespace hecke::kernels
