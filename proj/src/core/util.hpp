#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmf {

using cplx = std::complex<double>;

enum class Err : int {
  ok = 0,
  usage = 1,
  consistency = 2,
  parse = 3,
  io = 4,
  unsupported_surface = 5,
  illegal_literal = 6,
  routing = 7,
  cap_exceeded = 8,
  dimension = 9,
  empty_space = 10,
  internal = 11,
};

class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

// Dense row-major complex matrix. Everything in the small-space layer is tiny;
// the simulator uses strided loops instead and never multiplies these.
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<cplx> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  cplx& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const cplx& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  static Mat eye(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

inline Mat matmul(const Mat& x, const Mat& y) {
  if (x.cols != y.rows) fail(Err::internal, "matmul shape mismatch");
  Mat z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      cplx v = x.at(i, k);
      if (v == cplx{}) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
    }
  return z;
}

inline Mat dagger(const Mat& x) {
  Mat z(x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) z.at(j, i) = std::conj(x.at(i, j));
  return z;
}

inline double frob(const Mat& x) {
  double s = 0;
  for (const auto& v : x.a) s += std::norm(v);
  return std::sqrt(s);
}

// ||X - Y|| minimized over a global phase on Y; returns the residual.
inline double frob_up_to_phase(const Mat& x, const Mat& y) {
  cplx tr{};
  for (std::size_t i = 0; i < x.rows && i < y.rows; ++i)
    for (std::size_t j = 0; j < x.cols && j < y.cols; ++j)
      tr += std::conj(y.at(i, j)) * x.at(i, j);
  cplx ph = std::abs(tr) < 1e-14 ? cplx{1.0} : tr / std::abs(tr);
  double s = 0;
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) s += std::norm(x.at(i, j) - ph * y.at(i, j));
  return std::sqrt(s);
}

inline double unitarity_residual(const Mat& u) {
  Mat p = matmul(dagger(u), u);
  for (std::size_t i = 0; i < p.rows; ++i) p.at(i, i) -= 1.0;
  return frob(p);
}

} // namespace tmf
