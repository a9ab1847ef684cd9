#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace svt {

// Exponent vector of one factor: length n+1, entries sum to the factor degree.
using Exponent = std::vector<int>;

// One factor P^n embedded by degree-d forms.
struct Factor {
  int n = 0;
  int d = 1;
  friend bool operator==(const Factor&, const Factor&) = default;
};

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("64-bit overflow in product");
  return r;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("64-bit overflow in sum");
  return r;
}

}  // namespace detail

// Checked binomial coefficient. Each step multiplies by (n-k+i)/i with the
// gcd split off first, so overflow is reported only when the result itself
// does not fit 64 bits.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t g = std::gcd(n - k + i, i);
    r = detail::checked_mul(r / (i / g), (n - k + i) / g);
  }
  return r;
}

// All exponent vectors of length n+1 summing to d, in lexicographic order
// with variable 0 heaviest: (d,0,...,0) first, (0,...,0,d) last.
// This order is fixed; row/column and coordinate orders everywhere derive from it.
inline std::vector<Exponent> enumerate_monomials(int n, int d) {
  if (n < 0 || d < 0) throw std::invalid_argument("enumerate_monomials: negative argument");
  std::vector<Exponent> out;
  out.reserve(static_cast<std::size_t>(binomial(static_cast<std::uint64_t>(n + d), static_cast<std::uint64_t>(n))));
  Exponent cur(static_cast<std::size_t>(n) + 1, 0);
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == n) {
      cur[static_cast<std::size_t>(pos)] = rem;
      out.push_back(cur);
      return;
    }
    for (int e = rem; e >= 0; --e) {
      cur[static_cast<std::size_t>(pos)] = e;
      self(self, pos + 1, rem - e);
    }
  };
  rec(rec, 0, d);
  return out;
}

// Ordered list of (n_i, d_i) defining a Segre-Veronese embedding.
struct FactorProfile {
  std::vector<Factor> factors;

  void validate() const {
    constexpr int kMax = 1000000;
    if (factors.empty()) throw std::invalid_argument("profile: no factors");
    for (const auto& f : factors) {
      if (f.n < 1 || f.n > kMax)
        throw std::invalid_argument("profile: factor dimension out of range");
      if (f.d < 1 || f.d > kMax) throw std::invalid_argument("profile: factor degree out of range");
    }
  }

  // dim X = sum of the n_i
  int dim_x() const {
    int s = 0;
    for (const auto& f : factors) s += f.n;
    return s;
  }

  bool is_segre() const {
    return std::all_of(factors.begin(), factors.end(), [](const Factor& f) { return f.d == 1; });
  }

  friend bool operator==(const FactorProfile&, const FactorProfile&) = default;
};

// N+1 = prod C(n_i+d_i, n_i), with overflow detection.
inline std::uint64_t coord_count(const FactorProfile& pr) {
  pr.validate();
  std::uint64_t c = 1;
  for (const auto& f : pr.factors)
    c = detail::checked_mul(c, binomial(static_cast<std::uint64_t>(f.n + f.d), static_cast<std::uint64_t>(f.n)));
  return c;
}

inline std::uint64_t ambient_dim(const FactorProfile& pr) { return coord_count(pr) - 1; }

using CoordIndex = std::uint64_t;

// Cached per-factor monomial bases and the mixed-radix linearization,
// first factor most significant.
class CoordTables {
 public:
  explicit CoordTables(const FactorProfile& pr) : profile_(pr) {
    pr.validate();
    bases_.reserve(pr.factors.size());
    for (const auto& f : pr.factors) bases_.push_back(enumerate_monomials(f.n, f.d));
    positions_.resize(bases_.size());
    for (std::size_t i = 0; i < bases_.size(); ++i)
      for (std::size_t j = 0; j < bases_[i].size(); ++j) positions_[i].emplace(bases_[i][j], j);
    total_ = coord_count(pr);
  }

  const FactorProfile& profile() const { return profile_; }
  std::size_t factor_count() const { return bases_.size(); }
  const std::vector<Exponent>& basis(std::size_t factor) const { return bases_.at(factor); }
  std::uint64_t total() const { return total_; }

  std::uint64_t basis_index(std::size_t factor, const Exponent& e) const {
    auto it = positions_.at(factor).find(e);
    if (it == positions_.at(factor).end())
      throw std::invalid_argument("coord_index: exponent does not match factor degree/dimension");
    return it->second;
  }

  CoordIndex index_of(const std::vector<Exponent>& tuple) const {
    if (tuple.size() != bases_.size())
      throw std::invalid_argument("coord_index: wrong number of factor exponents");
    CoordIndex idx = 0;
    for (std::size_t i = 0; i < bases_.size(); ++i)
      idx = idx * bases_[i].size() + basis_index(i, tuple[i]);
    return idx;
  }

  std::vector<Exponent> monomials_of(CoordIndex idx) const {
    if (idx >= total_) throw std::out_of_range("coord_monomials: index out of range");
    std::vector<Exponent> tuple(bases_.size());
    for (std::size_t i = bases_.size(); i-- > 0;) {
      const std::uint64_t m = bases_[i].size();
      tuple[i] = bases_[i][static_cast<std::size_t>(idx % m)];
      idx /= m;
    }
    return tuple;
  }

 private:
  FactorProfile profile_;
  std::vector<std::vector<Exponent>> bases_;
  std::vector<std::map<Exponent, std::uint64_t>> positions_;
  std::uint64_t total_ = 0;
};

inline CoordIndex coord_index(const FactorProfile& pr, const std::vector<Exponent>& tuple) {
  return CoordTables(pr).index_of(tuple);
}

inline std::vector<Exponent> coord_monomials(const FactorProfile& pr, CoordIndex idx) {
  return CoordTables(pr).monomials_of(idx);
}

// Profile text syntax: P(n1,d1)xP(n2,d2)x..., with P(n) short for P(n,1)
// and an integer repetition suffix, e.g. "P(1)x5" = five P(1) factors.
inline FactorProfile parse_profile(std::string_view text) {
  FactorProfile pr;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("profile '" + std::string(text) + "': " + why);
  };
  auto read_int = [&]() -> int {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected an integer");
    return std::stoi(std::string(text.substr(start, pos - start)));
  };
  while (pos < text.size()) {
    if (text[pos] == 'P') {
      ++pos;
      if (pos >= text.size() || text[pos] != '(') fail("expected '(' after P");
      ++pos;
      Factor f;
      f.n = read_int();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        f.d = read_int();
      }
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
      pr.factors.push_back(f);
    } else if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
      if (pr.factors.empty()) fail("repetition count before any factor");
      int count = read_int();
      if (count < 1) fail("repetition count must be >= 1");
      Factor f = pr.factors.back();
      for (int i = 1; i < count; ++i) pr.factors.push_back(f);
    } else {
      fail("unexpected character");
    }
    if (pos < text.size()) {
      if (text[pos] != 'x') fail("expected 'x' between factors");
      ++pos;
    }
  }
  pr.validate();
  return pr;
}

inline std::string format_profile(const FactorProfile& pr) {
  std::string out;
  for (std::size_t i = 0; i < pr.factors.size(); ++i) {
    if (i) out += 'x';
    out += "P(" + std::to_string(pr.factors[i].n);
    if (pr.factors[i].d != 1) out += "," + std::to_string(pr.factors[i].d);
    out += ")";
  }
  return out;
}

}  // namespace svt
