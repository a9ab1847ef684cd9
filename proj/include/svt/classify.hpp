#pragma once

#include <numeric>
#include <optional>

#include "svt/coords.hpp"

namespace svt {

// Expected dimension of sigma_s: min{N, s*dim(X) + s - 1}.
inline long long expected_secant_dim(const FactorProfile& pr, long long s) {
  if (s < 1) throw std::invalid_argument("expected_secant_dim: s must be >= 1");
  const long long n_amb = static_cast<long long>(ambient_dim(pr));
  const long long dim_x = pr.dim_x();
  return std::min(n_amb, s * (dim_x + 1) - 1);
}

// Dimension of the rank <= s locus of generic (a+1) x (b+1) matrices; equals
// dim sigma_s of the two-factor Segre P^a x P^b.
inline long long two_factor_secant_dim(long long a, long long b, long long s) {
  if (a < 1 || b < 1 || s < 1)
    throw std::invalid_argument("two_factor_secant_dim: arguments must be >= 1");
  if (s >= std::min(a, b) + 1) return (a + 1) * (b + 1) - 1;
  return s * (a + b + 2 - s) - 1;
}

// Smallest s for which every generic (s-1)-plane of P^N is s-secant to the
// Segre of the n_list factors: N - sum(n_i) + 1.
inline long long critical_s(const std::vector<int>& n_list) {
  if (n_list.empty()) throw std::invalid_argument("critical_s: empty factor list");
  std::uint64_t prod = 1;
  long long sum = 0;
  for (int n : n_list) {
    if (n < 1) throw std::invalid_argument("critical_s: factor dimensions must be >= 1");
    prod = detail::checked_mul(prod, static_cast<std::uint64_t>(n + 1));
    sum += n;
  }
  const long long n_amb = static_cast<long long>(prod) - 1;
  return n_amb - sum + 1;
}

// Case split for sigma_s of the unbalanced Segre (n_list factors) x P^n.
// Case 1: expected dimension, X != Y. Case 2: boundary, X = Y, expected.
// Case 3: X = Y, defective with closed-form defect s^2 - s*critical.
// Case 4: fills the ambient space.
struct UnbalancedReport {
  int case_number = 0;  // 1..4; 0 when s < 2
  bool hypothesis_ok = false;
  bool equals_two_factor = false;
  long long closed_form_dim = -1;
  std::optional<long long> closed_form_defect;
  long long definitional_defect = 0;
  bool ambient_bound = false;  // the ambient cap on the expected dimension makes the two defect values differ
};

inline UnbalancedReport unbalanced_classify(const std::vector<int>& n_list, int n, long long s) {
  UnbalancedReport rep;
  const long long crit = critical_s(n_list);
  std::uint64_t prod = 1;
  for (int v : n_list) prod = detail::checked_mul(prod, static_cast<std::uint64_t>(v + 1));
  const long long n_grouped = static_cast<long long>(prod) - 1;  // N of the grouped head
  rep.hypothesis_ok = n >= crit;
  if (s < 2) return rep;

  FactorProfile x;
  for (int v : n_list) x.factors.push_back(Factor{v, 1});
  x.factors.push_back(Factor{n, 1});
  const long long expected = expected_secant_dim(x, s);
  const long long sum_ni = n_grouped - (crit - 1);  // sum of n_list

  if (s <= n_grouped - sum_ni) {
    rep.case_number = 1;
    rep.closed_form_dim = expected;
  } else if (s == crit) {
    rep.case_number = 2;
    rep.equals_two_factor = true;
    rep.closed_form_dim = two_factor_secant_dim(n_grouped, n, s);
  } else if (s <= std::min<long long>(n, n_grouped)) {
    rep.case_number = 3;
    rep.equals_two_factor = true;
    rep.closed_form_dim = std::min(two_factor_secant_dim(n_grouped, n, s), expected);
    rep.closed_form_defect = s * s - s * crit;
  } else {
    rep.case_number = 4;
    rep.equals_two_factor = true;
    rep.closed_form_dim = two_factor_secant_dim(n_grouped, n, s);
  }
  rep.definitional_defect = expected - rep.closed_form_dim;
  rep.ambient_bound =
      rep.closed_form_defect.has_value() && *rep.closed_form_defect != rep.definitional_defect;
  return rep;
}

// Degree of sigma_s of the Segre of P^a x P^b for s <= min(a,b), by the
// Herzog-Trung product of binomial ratios; exact integer arithmetic with an
// integrality assertion.
inline std::uint64_t giambelli_degree(int a, int b, int s) {
  if (a > b) std::swap(a, b);
  if (s < 1 || s > a) throw std::invalid_argument("giambelli_degree: need 1 <= s <= min(a,b)");
  unsigned __int128 num = 1, den = 1;
  auto gcd128 = [](unsigned __int128 x, unsigned __int128 y) {
    while (y) {
      const unsigned __int128 t = x % y;
      x = y;
      y = t;
    }
    return x;
  };
  for (int i = 0; i <= a - s; ++i) {
    unsigned __int128 nf = binomial(static_cast<std::uint64_t>(b + 1 + i), static_cast<std::uint64_t>(s));
    unsigned __int128 df = binomial(static_cast<std::uint64_t>(s + i), static_cast<std::uint64_t>(s));
    const unsigned __int128 g1 = gcd128(nf, den);
    nf /= g1;
    den /= g1;
    const unsigned __int128 g2 = gcd128(df, num);
    df /= g2;
    num /= g2;
    if (num > (static_cast<unsigned __int128>(1) << 120) / (nf ? nf : 1))
      throw std::overflow_error("giambelli_degree: intermediate overflow");
    num *= nf;
    den *= df;
    const unsigned __int128 g = gcd128(num, den);
    num /= g;
    den /= g;
  }
  if (den != 1) throw std::logic_error("giambelli_degree: product is not an integer");
  if (num > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("giambelli_degree: result exceeds 64 bits");
  return static_cast<std::uint64_t>(num);
}

// Trichotomy for P^1 x P^m x P^n (m <= n). Reports both the printed defect
// s^2 - s(m+2) and the general unbalanced-case value s^2 - s(m+1); the two
// disagree and the definitional defect adjudicates.
struct LineProductReport {
  int branch = 0;  // 1: n == m, 2: n == m+1, 3: n > m+1
  bool expected_dim = false;
  bool defective = false;
  bool fills = false;
  std::optional<long long> printed_defect;
  std::optional<long long> unbalanced_defect;
  std::optional<long long> definitional_defect;
  bool printed_mismatch = false;
};

inline LineProductReport classify_line_product(int m, int n, long long s) {
  if (m < 1 || n < m) throw std::invalid_argument("classify_line_product: need 1 <= m <= n");
  if (s < 2) throw std::invalid_argument("classify_line_product: s must be >= 2");
  LineProductReport rep;
  rep.branch = n == m ? 1 : (n == m + 1 ? 2 : 3);
  FactorProfile x{{Factor{1, 1}, Factor{m, 1}, Factor{n, 1}}};
  const long long expected = expected_secant_dim(x, s);
  const long long cap = std::min<long long>(2 * m + 1, n);
  if (rep.branch != 3) {
    rep.expected_dim = true;
    rep.defective = false;
    rep.fills = expected == static_cast<long long>(ambient_dim(x));
    rep.definitional_defect = 0;
    return rep;
  }
  if (s <= m + 1) {
    rep.expected_dim = true;
  } else if (s <= cap) {
    rep.defective = true;
    rep.printed_defect = s * s - s * (m + 2);
    rep.unbalanced_defect = s * s - s * (m + 1);
    // grouping (P^1 x P^m) x P^n; hypothesis n >= m+1 holds in this branch
    const long long actual = std::min(two_factor_secant_dim(2 * m + 1, n, s), expected);
    rep.definitional_defect = expected - actual;
    rep.printed_mismatch = *rep.printed_defect != *rep.definitional_defect;
  } else {
    rep.fills = true;
    rep.definitional_defect = 0;
  }
  return rep;
}

// Expected dimension of the Grassmann secant variety Sec_{k,s-1} of an
// n-dimensional variety in P^N.
inline long long grassmann_expected_dim(long long n, long long n_amb, long long k, long long s) {
  if (k < 0 || k > s - 1 || s - 1 > n_amb - 1)
    throw std::invalid_argument("grassmann_expected_dim: need 0 <= k <= s-1 <= N-1");
  return std::min(s * n + (k + 1) * (s - k - 1), (k + 1) * (n_amb - k));
}

// Grassmann defectivity of X_n = Segre of P^1 x P^n for k = m, after the
// reduction to the (s-1)-defectivity of P^1 x P^n x P^m.
struct GrassmannReport {
  int k = 0;
  long long s = 0;
  std::optional<long long> expected_dim;  // defined only when k <= s-1
  bool defective = false;
  std::optional<long long> printed_defect;  // s^2 - s(m+2)
  std::optional<long long> unbalanced_defect;    // s^2 - s(m+1)
  std::vector<std::string> flags;
};

inline GrassmannReport grassmann_classify(int m, int n, long long s) {
  if (m < 1 || n < 1) throw std::invalid_argument("grassmann_classify: need m, n >= 1");
  GrassmannReport rep;
  rep.k = m;
  rep.s = s;
  if (m <= s - 1 && s - 1 <= 2LL * n) rep.expected_dim = grassmann_expected_dim(n + 1, 2LL * n + 1, m, s);
  rep.defective = n > m + 1 && s >= m + 2 && s <= std::min<long long>(2 * m + 1, n);
  if (rep.defective) {
    rep.printed_defect = s * s - s * (m + 2);
    rep.unbalanced_defect = s * s - s * (m + 1);
    if (*rep.printed_defect != *rep.unbalanced_defect) rep.flags.push_back("printed-defect-mismatch");
  }
  return rep;
}

// Defectivity window for P^1 x P^m embedded by bidegree (2k, 2): the square
// Kronecker determinant forces defectivity for s0 <= s <= km+k+m.
inline std::pair<long long, long long> sv_defect_range(int k, int m) {
  if (k < 1 || m < 1) throw std::invalid_argument("sv_defect_range: need k, m >= 1");
  const long long s0 = static_cast<long long>(k) * m + k + (m + 2) / 2;  // km + k + ceil((m+1)/2)
  const long long s_max = static_cast<long long>(k) * m + k + m;
  return {s0, s_max};
}

// Per-s record combining the expected dimension, the oracle value when
// present, and the unbalanced-case annotations.
struct SecantReport {
  long long s = 0;
  long long ambient = 0;
  long long expected_dim = 0;
  std::optional<long long> oracle_dim;
  std::optional<long long> defect;
  int unbalanced_case = 0;  // 0 = not applicable
  std::optional<long long> closed_form_defect;
  std::optional<long long> printed_defect_form;
  std::vector<std::string> flags;
};

}  // namespace svt
