#pragma once
#include <vector>

#include "plectic/conventions.hpp"

namespace plectic {

// Sign of reordering graded symbols x_{perm[0]} ... x_{perm[k-1]} back to
// x_0 ... x_k.  Each adjacent swap of symbols with degrees p, q contributes
// (-1)^{pq}; with antisym it contributes -(-1)^{pq} (the chi of shuffle sums).
inline int graded_sign(std::vector<int> perm, const std::vector<int>& degrees, bool antisym) {
  int sign = 1;
  for (size_t i = 1; i < perm.size(); ++i)
    for (size_t j = i; j > 0 && perm[j - 1] > perm[j]; --j) {
      int pq = degrees[perm[j - 1]] * degrees[perm[j]];
      int factor = (pq % 2 == 0) ? 1 : -1;
      if (antisym) factor = -factor;
      sign *= factor;
      std::swap(perm[j - 1], perm[j]);
    }
  return sign;
}

// (i, k-i) shuffles of 0..k-1 in one-line form, ordered by the chosen front
// subset, lexicographically.
inline std::vector<std::vector<int>> shuffles(int i, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(i);
  for (int t = 0; t < i; ++t) idx[t] = t;
  while (true) {
    std::vector<int> perm = idx;
    for (int t = 0; t < k; ++t) {
      bool chosen = false;
      for (int c : idx) chosen = chosen || c == t;
      if (!chosen) perm.push_back(t);
    }
    out.push_back(std::move(perm));
    int t = i - 1;
    while (t >= 0 && idx[t] == k - i + t) --t;
    if (t < 0) break;
    ++idx[t];
    for (int u = t + 1; u < i; ++u) idx[u] = idx[u - 1] + 1;
  }
  return out;
}

// One term of the homotopy Jacobi sum at arity k: apply the inner bracket to
// the first `inner_arity` entries of perm, the outer bracket to the result
// followed by the remaining entries, weighted by sign.
struct ShuffleTerm {
  int inner_arity;
  std::vector<int> perm;
  int sign;
};

// All terms of sum_{i+j=k+1} sum_{Sh(i,k-i)} chi(sigma) S(i,j)
//   l_j(l_i(x_{s1},...,x_{si}), x_{s(i+1)},...) = 0
// with S = (-1)^{i(j-1)} (LadaStasheff) or (-1)^{ij} (Alternate).
inline std::vector<ShuffleTerm> homotopy_jacobi_terms(int k, const std::vector<int>& degrees,
                                                      JacobiSign rule) {
  std::vector<ShuffleTerm> out;
  for (int i = 1; i <= k; ++i) {
    int j = k - i + 1;
    int e = (rule == JacobiSign::LadaStasheff) ? i * (j - 1) : i * j;
    int split = (e % 2 == 0) ? 1 : -1;
    for (auto& perm : shuffles(i, k)) {
      int chi = graded_sign(perm, degrees, /*antisym=*/true);
      out.push_back({i, perm, chi * split});
    }
  }
  return out;
}

}  // namespace plectic
