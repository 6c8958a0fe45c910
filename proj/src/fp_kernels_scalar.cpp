#include "hecke/fp_kernels.hpp"

namespace hecke::kernels::detail {

namespace {

void axpy_mod_scalar(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c,
                     std::uint32_t p, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i)
    y[i] = static_cast<std::uint32_t>((y[i] + std::uint64_t(c) * x[i]) % p);
}

void scale_mod_scalar(std::uint32_t* y, std::uint32_t c, std::uint32_t p,
                      std::size_t len) {
  for (std::size_t i = 0; i < len; ++i)
    y[i] = static_cast<std::uint32_t>(std::uint64_t(c) * y[i] % p);
}

void acc_scaled_scalar(std::uint32_t* acc, const std::uint32_t* x,
                       std::uint32_t c, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) acc[i] += c * x[i];
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{axpy_mod_scalar, scale_mod_scalar,
                             acc_scaled_scalar};
  return t;
}

}  // namespace hecke::kernels::detail
