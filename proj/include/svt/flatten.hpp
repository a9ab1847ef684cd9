#pragma once

#include <functional>
#include <span>

#include "svt/poly.hpp"

namespace svt {

// Per-factor row-side degrees 0 <= a_i <= d_i; the column side gets d_i - a_i.
// For a Segre factor (d_i = 1), a_i picks which side of the partition the
// factor joins.
struct Split {
  std::vector<int> a;
  friend bool operator==(const Split&, const Split&) = default;
};

inline void validate_split(const FactorProfile& pr, const Split& sp, bool allow_degenerate) {
  if (sp.a.size() != pr.factors.size())
    throw std::invalid_argument("split: wrong number of entries");
  for (std::size_t i = 0; i < sp.a.size(); ++i)
    if (sp.a[i] < 0 || sp.a[i] > pr.factors[i].d)
      throw std::invalid_argument("split: entry out of range [0, d_i]");
  if (!allow_degenerate) {
    bool all_zero = true, all_full = true;
    for (std::size_t i = 0; i < sp.a.size(); ++i) {
      if (sp.a[i] != 0) all_zero = false;
      if (sp.a[i] != pr.factors[i].d) all_full = false;
    }
    if (all_zero || all_full) throw std::invalid_argument("split: degenerate (one side empty)");
  }
}

// A flattening of the coordinate tensor: rows indexed by the degree-a_i
// monomial tuples, columns by the complementary degree tuples, entries the
// ambient coordinate of the product monomial. Coincides with the Kronecker
// product of the per-factor catalecticants under the fixed index order.
class Flattening {
 public:
  Flattening(const FactorProfile& pr, Split sp, bool allow_degenerate = false)
      : tables_(pr), split_(std::move(sp)) {
    validate_split(pr, split_, allow_degenerate);
    const std::size_t t = pr.factors.size();
    std::vector<std::vector<Exponent>> row_bases(t), col_bases(t);
    for (std::size_t i = 0; i < t; ++i) {
      row_bases[i] = enumerate_monomials(pr.factors[i].n, split_.a[i]);
      col_bases[i] = enumerate_monomials(pr.factors[i].n, pr.factors[i].d - split_.a[i]);
    }
    rows_ = cartesian(row_bases);
    cols_ = cartesian(col_bases);
    entries_.resize(rows_.size() * cols_.size());
    std::vector<Exponent> prod(t);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (std::size_t c = 0; c < cols_.size(); ++c) {
        for (std::size_t i = 0; i < t; ++i) {
          prod[i] = rows_[r][i];
          for (std::size_t j = 0; j < prod[i].size(); ++j) prod[i][j] += cols_[c][i][j];
        }
        entries_[r * cols_.size() + c] = tables_.index_of(prod);
      }
  }

  const FactorProfile& profile() const { return tables_.profile(); }
  const CoordTables& tables() const { return tables_; }
  const Split& split() const { return split_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_.size(); }
  CoordIndex entry(std::size_t r, std::size_t c) const { return entries_.at(r * cols_.size() + c); }
  const std::vector<std::vector<Exponent>>& row_monomials() const { return rows_; }
  const std::vector<std::vector<Exponent>>& col_monomials() const { return cols_; }

 private:
  static std::vector<std::vector<Exponent>> cartesian(const std::vector<std::vector<Exponent>>& bases) {
    std::vector<std::vector<Exponent>> out;
    std::size_t total = 1;
    for (const auto& b : bases) total *= b.size();
    out.reserve(total);
    std::vector<std::size_t> idx(bases.size(), 0);
    for (std::size_t k = 0; k < total; ++k) {
      std::vector<Exponent> tuple(bases.size());
      for (std::size_t i = 0; i < bases.size(); ++i) tuple[i] = bases[i][idx[i]];
      out.push_back(std::move(tuple));
      for (std::size_t i = bases.size(); i-- > 0;) {
        if (++idx[i] < bases[i].size()) break;
        idx[i] = 0;
      }
    }
    return out;
  }

  CoordTables tables_;
  Split split_;
  std::vector<std::vector<Exponent>> rows_, cols_;
  std::vector<CoordIndex> entries_;
};

inline Flattening build_flattening(const FactorProfile& pr, const Split& sp,
                                   bool allow_degenerate = false) {
  return Flattening(pr, sp, allow_degenerate);
}

// Single-factor catalecticant: degree-a monomials against degree-(d-a)
// monomials. Degenerate splits (a = 0 or a = d) are allowed here.
inline Flattening factor_catalecticant(int n, int d, int a) {
  if (a < 0 || a > d) throw std::invalid_argument("factor_catalecticant: a out of range");
  FactorProfile pr{{Factor{n, d}}};
  return Flattening(pr, Split{{a}}, /*allow_degenerate=*/true);
}

struct SplitInfo {
  Split split;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

// All proper splits, deduplicated under the simultaneous transpose
// a_i <-> d_i - a_i. The representative with rows <= cols is kept (ties by
// lexicographically smaller split vector), so the reported shape census is
// oriented. Factors with equal (n, d) still give distinct splits.
inline std::vector<SplitInfo> enumerate_splits(const FactorProfile& pr) {
  pr.validate();
  const std::size_t t = pr.factors.size();
  auto shape = [&](const std::vector<int>& a, bool row_side) {
    std::size_t m = 1;
    for (std::size_t i = 0; i < t; ++i) {
      const int deg = row_side ? a[i] : pr.factors[i].d - a[i];
      m *= static_cast<std::size_t>(binomial(static_cast<std::uint64_t>(pr.factors[i].n + deg),
                                             static_cast<std::uint64_t>(pr.factors[i].n)));
    }
    return m;
  };
  std::vector<SplitInfo> out;
  std::vector<int> a(t, 0);
  for (;;) {
    bool all_zero = true, all_full = true;
    for (std::size_t i = 0; i < t; ++i) {
      if (a[i] != 0) all_zero = false;
      if (a[i] != pr.factors[i].d) all_full = false;
    }
    if (!all_zero && !all_full) {
      std::vector<int> comp(t);
      for (std::size_t i = 0; i < t; ++i) comp[i] = pr.factors[i].d - a[i];
      const std::size_t rows = shape(a, true), cols = shape(a, false);
      const bool canonical = rows < cols || (rows == cols && a <= comp);
      if (canonical) out.push_back(SplitInfo{Split{a}, rows, cols});
    }
    std::size_t i = t;
    bool done = true;
    while (i-- > 0) {
      if (++a[i] <= pr.factors[i].d) {
        done = false;
        break;
      }
      a[i] = 0;
    }
    if (done) return out;
  }
}

namespace detail {

inline int permutation_parity(const std::vector<std::size_t>& perm) {
  int inv = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

// k-subsets of [0, m) in colexicographic order.
inline std::vector<std::size_t> first_subset(std::size_t k) {
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  return s;
}

inline bool next_subset_colex(std::vector<std::size_t>& s, std::size_t m) {
  const std::size_t k = s.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t limit = (i + 1 < k) ? s[i + 1] : m;
    if (s[i] + 1 < limit) {
      ++s[i];
      for (std::size_t j = 0; j < i; ++j) s[j] = j;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Signed expansion of the k x k minor on the given row/column index sets.
// Like terms are collected, so repeated matrix entries can produce
// coefficients beyond +-1. The result is homogeneous of degree k.
inline SparsePoly minor_poly(const Flattening& f, std::span<const std::size_t> rows,
                             std::span<const std::size_t> cols) {
  const std::size_t k = rows.size();
  if (k == 0 || k != cols.size()) throw std::invalid_argument("minor_poly: row/column size mismatch");
  if (k > 10) throw std::invalid_argument("minor_poly: symbolic expansion limited to 10x10 minors");
  for (auto r : rows)
    if (r >= f.rows()) throw std::out_of_range("minor_poly: row index out of range");
  for (auto c : cols)
    if (c >= f.cols()) throw std::out_of_range("minor_poly: column index out of range");

  SparsePoly poly(static_cast<int>(k));
  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = i;
  do {
    SparsePoly::Term term(k);
    for (std::size_t i = 0; i < k; ++i) term[i] = f.entry(rows[i], cols[perm[i]]);
    poly.add_term(std::move(term), detail::permutation_parity(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return poly;
}

using MinorSink = std::function<void(const std::vector<std::size_t>& rows,
                                     const std::vector<std::size_t>& cols, const SparsePoly&)>;

// Streams k x k minors, row subsets in colexicographic order and column
// subsets in colexicographic order within each row subset. At most `cap`
// minors are materialized; the return value is always the exact total
// C(rows, k) * C(cols, k).
inline std::uint64_t emit_minors(const Flattening& f, int k, std::uint64_t cap, const MinorSink& sink) {
  if (k < 1 || static_cast<std::size_t>(k) > std::min(f.rows(), f.cols()))
    throw std::invalid_argument("emit_minors: minor size exceeds matrix dimensions");
  const std::uint64_t total =
      detail::checked_mul(binomial(f.rows(), static_cast<std::uint64_t>(k)),
                          binomial(f.cols(), static_cast<std::uint64_t>(k)));
  std::uint64_t emitted = 0;
  auto rs = detail::first_subset(static_cast<std::size_t>(k));
  do {
    auto cs = detail::first_subset(static_cast<std::size_t>(k));
    do {
      if (emitted >= cap) return total;
      sink(rs, cs, minor_poly(f, rs, cs));
      ++emitted;
    } while (detail::next_subset_colex(cs, f.cols()));
  } while (detail::next_subset_colex(rs, f.rows()));
  return total;
}

}  // namespace svt
