#pragma once

#include <cstddef>

namespace logpix::detail {

// Deterministic pairwise summation over the index range [begin, end).
// The reduction tree depends only on the range length, so results are
// reproducible regardless of caller or thread count; the base case runs
// sequentially in index order (row-major for image planes).
template <class Term>
double pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
  const std::size_t n = end - begin;
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t k = begin; k < end; ++k) s += term(k);
    return s;
  }
  const std::size_t mid = begin + n / 2;
  return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

}  // namespace logpix::detail
