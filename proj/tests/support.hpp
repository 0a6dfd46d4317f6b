#pragma once

#include <random>

#include "oracles.hpp"
#include "realbundles/random.hpp"

namespace support {

inline oracle::Matrix plain(const realbundles::IntegerMatrix& m) {
  oracle::Matrix out(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).convert_to<long long>();
  return out;
}

inline realbundles::IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n, int bound) {
  std::uniform_int_distribution<int> e(-bound, bound);
  realbundles::IntegerMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = e(rng);
  return a;
}

}  // namespace support
