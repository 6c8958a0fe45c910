#include <random>
#include <vector>

#include "doctest.h"
#include "hecke/fp_kernels.hpp"

using namespace hecke::kernels;

namespace {

std::vector<std::uint32_t> random_vec(std::mt19937_64& rng, std::size_t n, std::uint32_t p) {
  std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
  std::vector<std::uint32_t> v(n);
  for (auto& a : v) a = d(rng);
  return v;
}

// textbook reference, independent of both kernel tables
void naive_vec_mat(std::vector<std::uint32_t>& out, const std::vector<std::uint32_t>& v,
                   const std::vector<std::uint32_t>& m, std::size_t rows, std::size_t cols,
                   std::uint32_t p) {
  out.assign(cols, 0);
  for (std::size_t j = 0; j < cols; ++j) {
    unsigned __int128 s = 0;
    for (std::size_t i = 0; i < rows; ++i) s += std::uint64_t(v[i]) * m[i * cols + j];
    out[j] = static_cast<std::uint32_t>(s % p);
  }
}

const std::uint32_t kPrimes[] = {2, 3, 5, 7, 13, 101, 251, 4093, 4099, 65521, 65537, 1000003, 2147483647u};

}  // namespace

TEST_CASE("scalar kernels match naive arithmetic") {
  std::mt19937_64 rng(1);
  const auto& t = table_for(Isa::scalar);
  for (auto p : kPrimes) {
    for (std::size_t len : {0u, 1u, 7u, 8u, 9u, 33u, 100u}) {
      auto y = random_vec(rng, len, p), x = random_vec(rng, len, p);
      std::uint32_t c = random_vec(rng, 1, p)[0];
      auto want = y;
      for (std::size_t i = 0; i < len; ++i) want[i] = (want[i] + std::uint64_t(c) * x[i]) % p;
      t.axpy_mod(y.data(), x.data(), c, p, len);
      CHECK(y == want);
      for (std::size_t i = 0; i < len; ++i) want[i] = std::uint64_t(want[i]) * c % p;
      t.scale_mod(y.data(), c, p, len);
      CHECK(y == want);
    }
  }
}

TEST_CASE("avx2 kernels agree with the scalar reference bit for bit") {
  if (!isa_supported(Isa::avx2)) {
    MESSAGE("avx2 not available; skipping");
    return;
  }
  std::mt19937_64 rng(2);
  const auto& s = table_for(Isa::scalar);
  const auto& a = table_for(Isa::avx2);
  for (auto p : kPrimes) {
    for (int trial = 0; trial < 50; ++trial) {
      std::size_t len = std::uniform_int_distribution<std::size_t>(0, 70)(rng);
      auto y1 = random_vec(rng, len, p), x = random_vec(rng, len, p);
      auto y2 = y1;
      std::uint32_t c = random_vec(rng, 1, p)[0];
      s.axpy_mod(y1.data(), x.data(), c, p, len);
      a.axpy_mod(y2.data(), x.data(), c, p, len);
      REQUIRE(y1 == y2);
      s.scale_mod(y1.data(), c, p, len);
      a.scale_mod(y2.data(), c, p, len);
      REQUIRE(y1 == y2);
      if (p <= 65535) {
        std::uint32_t small = c % 4096;
        auto acc1 = random_vec(rng, len, 1u << 20), acc2 = acc1;
        auto xs = random_vec(rng, len, 4096);
        s.acc_scaled(acc1.data(), xs.data(), small, len);
        a.acc_scaled(acc2.data(), xs.data(), small, len);
        REQUIRE(acc1 == acc2);
      }
    }
    // extreme residues
    std::vector<std::uint32_t> y(37, p - 1), x(37, p - 1), y2 = y;
    s.axpy_mod(y.data(), x.data(), p - 1, p, 37);
    a.axpy_mod(y2.data(), x.data(), p - 1, p, 37);
    CHECK(y == y2);
  }
}

TEST_CASE("vec_mat and mat_mul agree across instruction sets and with naive sums") {
  std::mt19937_64 rng(3);
  for (auto p : kPrimes) {
    for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{1, 1}, {5, 9}, {17, 8}, {64, 33}}) {
      auto v = random_vec(rng, rows, p), m = random_vec(rng, rows * cols, p);
      std::vector<std::uint32_t> want, got(cols);
      naive_vec_mat(want, v, m, rows, cols, p);
      vec_mat_mod_with(table_for(Isa::scalar), got.data(), v.data(), m.data(), rows, cols, p);
      CHECK(got == want);
      if (isa_supported(Isa::avx2)) {
        vec_mat_mod_with(table_for(Isa::avx2), got.data(), v.data(), m.data(), rows, cols, p);
        CHECK(got == want);
      }
    }
    const std::size_t n = 6, k = 11, m = 5;
    auto a = random_vec(rng, n * k, p), b = random_vec(rng, k * m, p);
    std::vector<std::uint32_t> c1(n * m), c2(n * m);
    const Isa saved = active_isa();
    set_isa(Isa::scalar);
    mat_mul_mod(c1.data(), a.data(), b.data(), n, k, m, p);
    if (isa_supported(Isa::avx2)) set_isa(Isa::avx2);
    mat_mul_mod(c2.data(), a.data(), b.data(), n, k, m, p);
    set_isa(saved);
    CHECK(c1 == c2);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::uint32_t> row(a.begin() + i * k, a.begin() + (i + 1) * k), want;
      naive_vec_mat(want, row, b, k, m, p);
      CHECK(std::vector<std::uint32_t>(c1.begin() + i * m, c1.begin() + (i + 1) * m) == want);
    }
  }
}
