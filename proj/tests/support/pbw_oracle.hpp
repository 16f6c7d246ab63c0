#pragma once

// Dimensions of a free graded Lie (super)algebra read off from the
// Poincare-Birkhoff-Witt identity
//   prod_{d odd} (1 + t^d)^{L_d} / prod_{d even} (1 - t^d)^{L_d} = 1 / (1 - sum_g t^{|g|}),
// solved one degree at a time. Shares nothing with the Hall basis code.

#include <vector>

namespace oracle {

inline std::vector<long long> pbw_lie_dims(const std::vector<int>& generator_degrees, int D) {
  std::vector<long long> tensor(D + 1, 0);  // dims of the tensor algebra
  tensor[0] = 1;
  for (int d = 1; d <= D; ++d)
    for (int g : generator_degrees)
      if (g <= d) tensor[d] += tensor[d - g];

  std::vector<long long> lie(D + 1, 0), product(D + 1, 0);
  product[0] = 1;
  for (int d = 1; d <= D; ++d) {
    lie[d] = tensor[d] - product[d];
    // Multiply the running product by this degree's factor.
    std::vector<long long> factor(D + 1, 0);
    long long m = lie[d];
    long long binom = 1;  // C(m, j) for odd d, C(m + j - 1, j) for even d
    for (int j = 0; j * d <= D; ++j) {
      factor[j * d] = binom;
      binom = d % 2 ? binom * (m - j) / (j + 1) : binom * (m + j) / (j + 1);
    }
    std::vector<long long> next(D + 1, 0);
    for (int a = 0; a <= D; ++a)
      for (int b = 0; a + b <= D; ++b) next[a + b] += product[a] * factor[b];
    product = next;
  }
  return lie;
}

}  // namespace oracle
