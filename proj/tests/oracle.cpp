#include "oracle.hpp"

#include <algorithm>
#include <map>

namespace oracle {

using voa::Rational;
using voa::Scalar;

namespace {

long annihilation_floor(Kind kind) { return kind == Kind::Heisenberg ? 0 : -1; }

Scalar vev_rec(Kind kind, const Scalar& c, std::vector<long>& w,
               std::map<std::vector<long>, Scalar>& memo) {
  if (w.empty()) return Scalar(1);
  if (w.back() >= annihilation_floor(kind)) return Scalar(0);
  const bool all_creators =
      std::all_of(w.begin(), w.end(), [&](long x) { return x < annihilation_floor(kind); });
  if (all_creators) return Scalar(0);  // positive level, orthogonal to the vacuum
  const auto it = memo.find(w);
  if (it != memo.end()) return it->second;

  // move the rightmost annihilator one step towards the vacuum
  std::size_t i = w.size();
  for (std::size_t k = w.size(); k-- > 0;) {
    if (w[k] >= annihilation_floor(kind)) {
      i = k;
      break;
    }
  }
  const long a = w[i], b = w[i + 1];
  std::vector<long> swapped = w;
  std::swap(swapped[i], swapped[i + 1]);
  Scalar total = vev_rec(kind, c, swapped, memo);
  if (kind == Kind::Virasoro) {
    std::vector<long> merged(w.begin(), w.begin() + static_cast<long>(i));
    merged.push_back(a + b);
    merged.insert(merged.end(), w.begin() + static_cast<long>(i) + 2, w.end());
    Scalar t = vev_rec(kind, c, merged, memo);
    t *= Scalar(Rational(a - b));
    total += t;
    if (a == -b) {
      std::vector<long> removed(w.begin(), w.begin() + static_cast<long>(i));
      removed.insert(removed.end(), w.begin() + static_cast<long>(i) + 2, w.end());
      Scalar u = vev_rec(kind, c, removed, memo);
      u *= c * Scalar(Rational(a * a * a - a, 12));
      total += u;
    }
  } else if (a == -b) {
    std::vector<long> removed(w.begin(), w.begin() + static_cast<long>(i));
    removed.insert(removed.end(), w.begin() + static_cast<long>(i) + 2, w.end());
    Scalar u = vev_rec(kind, c, removed, memo);
    u *= Scalar(Rational(a));
    total += u;
  }
  memo.emplace(w, total);
  return total;
}

}  // namespace

Scalar vev(Kind kind, const Scalar& c, std::vector<long> word) {
  std::map<std::vector<long>, Scalar> memo;
  return vev_rec(kind, c, word, memo);
}

Scalar inner(Kind kind, const Scalar& c, const std::vector<int>& lambda,
             const std::vector<int>& mu) {
  std::vector<long> word;
  for (auto it = lambda.rbegin(); it != lambda.rend(); ++it) word.push_back(*it);
  for (const int p : mu) word.push_back(-p);
  return vev(kind, c, std::move(word));
}

long count_partitions(int n, int min_part) {
  if (n < 0) return 0;
  // p(n, k) = p(n-k, k) + p(n, k+1)
  std::vector<std::vector<long>> memo(static_cast<std::size_t>(n) + 1,
                                      std::vector<long>(static_cast<std::size_t>(n) + 2, -1));
  auto rec = [&](auto&& self, int rest, int k) -> long {
    if (rest == 0) return 1;
    if (k > rest) return 0;
    long& slot = memo[static_cast<std::size_t>(rest)][static_cast<std::size_t>(k)];
    if (slot >= 0) return slot;
    slot = self(self, rest - k, k) + self(self, rest, k + 1);
    return slot;
  };
  return rec(rec, n, min_part);
}

std::vector<std::vector<int>> partitions(int n, int min_part) {
  // build parts smallest-first (ascending), then flip and sort; the library
  // enumerates largest-first, so agreement is a two-sided check
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest, int smallest) -> void {
    if (rest == 0) {
      std::vector<int> p(cur.rbegin(), cur.rend());
      out.push_back(std::move(p));
      return;
    }
    for (int s = smallest; 2 * s <= rest; ++s) {
      cur.push_back(s);
      self(self, rest - s, s);
      cur.pop_back();
    }
    if (rest >= smallest) {
      cur.push_back(rest);
      std::vector<int> p(cur.rbegin(), cur.rend());
      out.push_back(std::move(p));
      cur.pop_back();
    }
  };
  if (n == 0) {
    out.push_back({});
    return out;
  }
  rec(rec, n, min_part);
  std::sort(out.begin(), out.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a > b; });
  return out;
}

Rational alpha_locality_sum(long N, long m, long n) {
  if (m + n + N != 0) return Rational(0);
  Rational total(0);
  Rational binom(1);
  for (long j = 0; j <= N; ++j) {
    Rational term = binom * Rational(m + N - j);
    if (j % 2) term = -term;
    total += term;
    binom *= Rational(N - j, j + 1);
  }
  return total;
}

}  // namespace oracle
