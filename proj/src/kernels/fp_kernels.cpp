#include "compartdb/kernels/fp_kernels.hpp"

namespace compartdb::kernels {

namespace detail {

void axpy_mod_scalar(std::uint32_t* y, const std::uint32_t* x, std::size_t n,
                     std::uint32_t c, const PrimeField& f) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = f.reduce64(std::uint64_t(c) * x[i] + y[i]);
  }
}

void scale_mod_scalar(std::uint32_t* y, std::size_t n, std::uint32_t c,
                      const PrimeField& f) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = f.mul(c, y[i]);
  }
}

std::uint32_t dot_mod_scalar(const std::uint32_t* x, const std::uint32_t* y,
                             std::size_t n, const PrimeField& f) {
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    acc = f.reduce64(std::uint64_t(x[i]) * y[i] + acc);
  }
  return acc;
}

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  static const bool have = __builtin_cpu_supports("avx2");
  return have;
#else
  return false;
#endif
}

}  // namespace detail

namespace {

constexpr std::size_t kSimdThreshold = 16;

inline bool use_avx2_m31(const PrimeField& f, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  return f.p() == kMersenne31 && n >= kSimdThreshold && detail::avx2_available();
#else
  (void)f;
  (void)n;
  return false;
#endif
}

}  // namespace

void axpy_mod(std::uint32_t* y, const std::uint32_t* x, std::size_t n,
              std::uint32_t c, const PrimeField& f) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2_m31(f, n)) {
    detail::axpy_mod_avx2_m31(y, x, n, c);
    return;
  }
#endif
  detail::axpy_mod_scalar(y, x, n, c, f);
}

void scale_mod(std::uint32_t* y, std::size_t n, std::uint32_t c,
               const PrimeField& f) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2_m31(f, n)) {
    detail::scale_mod_avx2_m31(y, n, c);
    return;
  }
#endif
  detail::scale_mod_scalar(y, n, c, f);
}

std::uint32_t dot_mod(const std::uint32_t* x, const std::uint32_t* y,
                      std::size_t n, const PrimeField& f) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2_m31(f, n)) {
    return detail::dot_mod_avx2_m31(x, y, n);
  }
#endif
  return detail::dot_mod_scalar(x, y, n, f);
}

const char* active_backend(const PrimeField& f) {
  return use_avx2_m31(f, kSimdThreshold) ? "avx2-m31" : "scalar";
}

}  // namespace compartdb::kernels
