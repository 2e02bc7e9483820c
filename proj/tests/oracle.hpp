#ifndef VOA_TESTS_ORACLE_HPP
#define VOA_TESTS_ORACLE_HPP

// Independent oracles for the test suite. These deliberately share no code
// with the library: vacuum expectations are reduced by moving annihilators
// towards the vacuum (the library normal-orders whole words into a PBW
// basis), partition counts come from the classical recurrence rather than
// enumeration, and the small locality sums are closed forms.

#include <vector>

#include "voa/scalar.hpp"

namespace oracle {

enum class Kind { Heisenberg, Virasoro };

// <Omega| g_{word[0]} ... g_{word[k-1]} |Omega>
voa::Scalar vev(Kind kind, const voa::Scalar& c, std::vector<long> word);

// <g_{-lambda}Omega, g_{-mu}Omega> via adjoints g_k^+ = g_{-k}
voa::Scalar inner(Kind kind, const voa::Scalar& c, const std::vector<int>& lambda,
                  const std::vector<int>& mu);

// number of partitions of n into parts >= min_part (counting recurrence)
long count_partitions(int n, int min_part);

// lexicographically decreasing partitions, generated by successor stepping
std::vector<std::vector<int>> partitions(int n, int min_part);

// coefficient of the identity in sum_j (-1)^j C(N,j) [a_{m+N-j}, a_{n+j}]
// for the Heisenberg generator ([a_p, a_q] = p delta_{p,-q})
voa::Rational alpha_locality_sum(long N, long m, long n);

}  // namespace oracle

#endif
