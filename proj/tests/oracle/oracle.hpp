#pragma once

// Brute-force linear algebra over QQ, kept independent of the library: rank is
// the size of the largest nonvanishing minor, determinants use cofactor expansion.

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<mpq_class>>;

Matrix zeros(std::size_t rows, std::size_t cols);
mpq_class det(const Matrix& m);
std::size_t rank(const Matrix& m, std::size_t cols);

struct Homology {
  std::size_t even = 0;
  std::size_t odd = 0;
};

/// Two-periodic homology of phi0 : K^r0 -> K^r1, phi1 : K^r1 -> K^r0 after
/// evaluation (both composites vanish). Matrices act on column vectors.
Homology two_periodic(const Matrix& phi0, const Matrix& phi1, std::size_t r0, std::size_t r1);

}  // namespace oracle
