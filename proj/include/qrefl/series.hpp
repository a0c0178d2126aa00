#pragma once

// Truncated series sum_{j<=J, m<=M} c[j][m] x^j L^m in a small real variable x
// and L = ln x, with complex coefficients. Enough algebra to compose rational
// expressions of low-energy expansions term by term.

#include <array>
#include <complex>
#include <cstddef>

namespace qrefl {

class LogSeries {
 public:
  static constexpr std::size_t kOrder = 6;  // highest power of x kept
  static constexpr std::size_t kLogs = 2;   // highest power of L kept
  using cplx = std::complex<double>;
  using Table = std::array<std::array<cplx, kLogs + 1>, kOrder + 1>;

  LogSeries() = default;
  LogSeries(cplx c) { c_[0][0] = c; }  // NOLINT(google-explicit-constructor)

  static LogSeries monomial(std::size_t j, std::size_t m, cplx c) {
    LogSeries s;
    if (j <= kOrder && m <= kLogs) s.c_[j][m] = c;
    return s;
  }

  cplx coeff(std::size_t j, std::size_t m = 0) const { return c_.at(j).at(m); }

  friend LogSeries operator+(const LogSeries& a, const LogSeries& b) {
    LogSeries s;
    for (std::size_t j = 0; j <= kOrder; ++j)
      for (std::size_t m = 0; m <= kLogs; ++m) s.c_[j][m] = a.c_[j][m] + b.c_[j][m];
    return s;
  }
  friend LogSeries operator-(const LogSeries& a, const LogSeries& b) { return a + b * cplx(-1.0); }

  friend LogSeries operator*(const LogSeries& a, const LogSeries& b) {
    LogSeries s;
    for (std::size_t j1 = 0; j1 <= kOrder; ++j1)
      for (std::size_t m1 = 0; m1 <= kLogs; ++m1) {
        if (a.c_[j1][m1] == cplx{}) continue;
        for (std::size_t j2 = 0; j1 + j2 <= kOrder; ++j2)
          for (std::size_t m2 = 0; m1 + m2 <= kLogs; ++m2) s.c_[j1 + j2][m1 + m2] += a.c_[j1][m1] * b.c_[j2][m2];
      }
    return s;
  }

  // Coefficient-wise conjugate (x and L are real).
  LogSeries conj() const {
    LogSeries s;
    for (std::size_t j = 0; j <= kOrder; ++j)
      for (std::size_t m = 0; m <= kLogs; ++m) s.c_[j][m] = std::conj(c_[j][m]);
    return s;
  }

  // 1/a for a with a nonzero constant term and no x^0 L^m (m > 0) terms.
  LogSeries reciprocal() const {
    const cplx c0 = c_[0][0];
    LogSeries rest = *this;
    rest.c_[0][0] = 0.0;
    rest = rest * cplx(1.0 / c0);
    // 1/(c0 (1 + rest)) = (1/c0) sum (-rest)^n; rest starts at x^1.
    LogSeries sum(1.0), power(1.0);
    for (std::size_t n = 1; n <= kOrder; ++n) {
      power = power * rest * cplx(-1.0);
      sum = sum + power;
    }
    return sum * cplx(1.0 / c0);
  }

  friend LogSeries operator/(const LogSeries& a, const LogSeries& b) { return a * b.reciprocal(); }

 private:
  Table c_{};
};

}  // namespace qrefl
