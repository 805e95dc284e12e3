#pragma once

#include <cstddef>
#include <cstdint>

#include "compartdb/fp.hpp"

namespace compartdb::kernels {

/// y[i] <- (y[i] + c * x[i]) mod p. The elimination workhorse.
void axpy_mod(std::uint32_t* y, const std::uint32_t* x, std::size_t n,
              std::uint32_t c, const PrimeField& f);

/// y[i] <- (c * y[i]) mod p.
void scale_mod(std::uint32_t* y, std::size_t n, std::uint32_t c,
               const PrimeField& f);

/// sum_i x[i] * y[i] mod p.
std::uint32_t dot_mod(const std::uint32_t* x, const std::uint32_t* y,
                      std::size_t n, const PrimeField& f);

/// Name of the variant the three entry points dispatch to for this field
/// and a large-enough length: "scalar" or "avx2-m31".
const char* active_backend(const PrimeField& f);

namespace detail {

void axpy_mod_scalar(std::uint32_t* y, const std::uint32_t* x, std::size_t n,
                     std::uint32_t c, const PrimeField& f);
void scale_mod_scalar(std::uint32_t* y, std::size_t n, std::uint32_t c,
                      const PrimeField& f);
std::uint32_t dot_mod_scalar(const std::uint32_t* x, const std::uint32_t* y,
                             std::size_t n, const PrimeField& f);

bool avx2_available();

#if defined(__x86_64__) || defined(_M_X64)
// Mersenne-31 variants; valid only when the modulus is 2^31 - 1.
void axpy_mod_avx2_m31(std::uint32_t* y, const std::uint32_t* x, std::size_t n,
                       std::uint32_t c);
void scale_mod_avx2_m31(std::uint32_t* y, std::size_t n, std::uint32_t c);
std::uint32_t dot_mod_avx2_m31(const std::uint32_t* x, const std::uint32_t* y,
                               std::size_t n);
#endif

}  // namespace detail

}  // namespace compartdb::kernels
