#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "svt/flatten.hpp"

namespace svt {

// Prime modulus and master seed for all randomized checks. Trials are rerun
// under derived independent streams and combined by max/and reductions.
struct FieldConfig {
  std::uint64_t p = 2147483647ULL;  // 2^31 - 1
  std::uint64_t seed = 0;
  int trials = 3;
};

namespace fp {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  a += b;
  if (a >= p) a -= p;
  return a;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

inline std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) r = mul(r, base, p);
    base = mul(base, base, p);
    exp >>= 1;
  }
  return r;
}

inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  if (a == 0) throw std::domain_error("inverse of zero");
  return pow(a, p - 2, p);
}

inline std::uint64_t from_signed(long long v, std::uint64_t p) {
  long long m = v % static_cast<long long>(p);
  if (m < 0) m += static_cast<long long>(p);
  return static_cast<std::uint64_t>(m);
}

}  // namespace fp

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = fp::pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = fp::mul(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

inline void validate_field(const FieldConfig& cfg) {
  if (!is_prime(cfg.p)) throw std::invalid_argument("field modulus is not prime");
  if (cfg.p <= 1000000) throw std::invalid_argument("field modulus must exceed 10^6");
}

// splitmix64 stream; value-derived, never shared, identical across platforms.
struct RngStream {
  std::uint64_t state = 0;

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // unbiased value in [0, bound)
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RngStream::below: zero bound");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  std::uint64_t nonzero_below(std::uint64_t bound) {
    for (;;) {
      const std::uint64_t r = below(bound);
      if (r != 0) return r;
    }
  }
};

// Stream derived from (master seed, purpose tag, trial index).
inline RngStream derive_stream(const FieldConfig& cfg, std::string_view purpose, std::uint64_t trial) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : purpose) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  RngStream s{cfg.seed ^ h};
  s.next();
  s.state ^= trial * 0xd6e8feb86659fd93ULL + 0xa5a5a5a5a5a5a5a5ULL;
  s.next();
  return s;
}

// Dense row-major matrix over F_p.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), v_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t& at(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::uint64_t> v_;
};

// Exact rank over F_p by Gaussian elimination; deterministic pivot choice.
inline std::size_t rank_mod_p(FpMatrix m, const FieldConfig& cfg) {
  validate_field(cfg);
  const std::uint64_t p = cfg.p;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m.at(pivot, col) % p == 0) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(rank, c), m.at(pivot, c));
    const std::uint64_t pi = fp::inv(m.at(rank, col) % p, p);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      const std::uint64_t f = fp::mul(m.at(r, col) % p, pi, p);
      if (f == 0) continue;
      for (std::size_t c = col; c < m.cols(); ++c)
        m.at(r, c) = fp::sub(m.at(r, c) % p, fp::mul(f, m.at(rank, c) % p, p), p);
    }
    ++rank;
  }
  return rank;
}

// A monomial parametrization: per-factor affine parameter counts and, for each
// ambient coordinate, one exponent vector per factor. The full Segre-Veronese
// map lists every coordinate in coord_index order; the Del Pezzo surfaces use
// sub-lists.
struct MonomialMap {
  std::vector<int> param_counts;
  std::vector<std::vector<Exponent>> coords;
  std::vector<int> factor_degrees;

  std::size_t param_total() const {
    std::size_t t = 0;
    for (int c : param_counts) t += static_cast<std::size_t>(c);
    return t;
  }
};

inline MonomialMap monomial_map(const FactorProfile& pr) {
  CoordTables tables(pr);
  MonomialMap map;
  for (const auto& f : pr.factors) {
    map.param_counts.push_back(f.n + 1);
    map.factor_degrees.push_back(f.d);
  }
  map.coords.reserve(static_cast<std::size_t>(tables.total()));
  for (CoordIndex i = 0; i < tables.total(); ++i) map.coords.push_back(tables.monomials_of(i));
  return map;
}

// An affine parameter point per factor together with its image in the
// ambient affine cone.
struct ConePoint {
  std::vector<std::vector<std::uint64_t>> params;
  std::vector<std::uint64_t> image;
};

inline std::uint64_t eval_monomial(const Exponent& e, std::span<const std::uint64_t> x,
                                   std::uint64_t p) {
  std::uint64_t v = 1;
  for (std::size_t j = 0; j < e.size(); ++j)
    if (e[j] != 0) v = fp::mul(v, fp::pow(x[j], static_cast<std::uint64_t>(e[j]), p), p);
  return v;
}

inline std::vector<std::uint64_t> eval_map(const MonomialMap& map,
                                           const std::vector<std::vector<std::uint64_t>>& params,
                                           std::uint64_t p) {
  std::vector<std::uint64_t> image(map.coords.size());
  for (std::size_t k = 0; k < map.coords.size(); ++k) {
    std::uint64_t v = 1;
    for (std::size_t f = 0; f < map.coords[k].size(); ++f)
      v = fp::mul(v, eval_monomial(map.coords[k][f], params[f], p), p);
    image[k] = v;
  }
  return image;
}

inline ConePoint sample_cone_point(const MonomialMap& map, const FieldConfig& cfg, RngStream& rng) {
  validate_field(cfg);
  for (int attempt = 0; attempt < 16; ++attempt) {
    ConePoint pt;
    pt.params.resize(map.param_counts.size());
    for (std::size_t f = 0; f < map.param_counts.size(); ++f) {
      auto& v = pt.params[f];
      v.resize(static_cast<std::size_t>(map.param_counts[f]));
      bool nonzero = false;
      for (auto& x : v) {
        x = rng.below(cfg.p);
        if (x != 0) nonzero = true;
      }
      if (!nonzero) v[0] = rng.nonzero_below(cfg.p);
    }
    pt.image = eval_map(map, pt.params, cfg.p);
    if (std::any_of(pt.image.begin(), pt.image.end(), [](std::uint64_t x) { return x != 0; }))
      return pt;
  }
  throw std::runtime_error("sample_cone_point: zero image after 16 attempts");
}

inline ConePoint sample_cone_point(const FactorProfile& pr, const FieldConfig& cfg, RngStream& rng) {
  return sample_cone_point(monomial_map(pr), cfg, rng);
}

// Rows indexed by (factor, parameter), columns by ambient coordinate; entry
// (f,j),k holds d(coordinate k)/d(parameter j of factor f) at the point.
// The row space is the affine tangent space to the cone.
inline FpMatrix jacobian_rows(const MonomialMap& map, const ConePoint& pt, std::uint64_t p) {
  FpMatrix jac(map.param_total(), map.coords.size());
  std::size_t row = 0;
  for (std::size_t f = 0; f < map.param_counts.size(); ++f) {
    for (int j = 0; j < map.param_counts[f]; ++j, ++row) {
      for (std::size_t k = 0; k < map.coords.size(); ++k) {
        const Exponent& e = map.coords[k][f];
        const int ej = e[static_cast<std::size_t>(j)];
        if (ej == 0) continue;
        // derivative of the factor-f monomial times the other factors
        std::uint64_t v = static_cast<std::uint64_t>(ej) % p;
        for (std::size_t jj = 0; jj < e.size(); ++jj) {
          const int exp = static_cast<int>(jj) == j ? e[jj] - 1 : e[jj];
          if (exp != 0) v = fp::mul(v, fp::pow(pt.params[f][jj], static_cast<std::uint64_t>(exp), p), p);
        }
        for (std::size_t g = 0; g < map.coords[k].size(); ++g)
          if (g != f) v = fp::mul(v, eval_monomial(map.coords[k][g], pt.params[g], p), p);
        jac.at(row, k) = v;
      }
    }
  }
  return jac;
}

inline FpMatrix jacobian_rows(const FactorProfile& pr, const ConePoint& pt, const FieldConfig& cfg) {
  return jacobian_rows(monomial_map(pr), pt, cfg.p);
}

// Exact evaluation of a SparsePoly at an ambient vector, coefficients
// reduced mod p.
inline std::uint64_t eval_poly(const SparsePoly& poly, std::span<const std::uint64_t> point,
                               std::uint64_t p) {
  std::uint64_t acc = 0;
  for (const auto& [term, coeff] : poly.terms()) {
    std::uint64_t v = fp::from_signed(coeff, p);
    for (CoordIndex idx : term) {
      if (idx >= point.size()) throw std::out_of_range("eval_poly: coordinate index out of range");
      v = fp::mul(v, point[static_cast<std::size_t>(idx)] % p, p);
    }
    acc = fp::add(acc, v, p);
  }
  return acc;
}

// Entry-wise specialization of a flattening at an ambient vector.
inline FpMatrix evaluate_flattening(const Flattening& f, std::span<const std::uint64_t> point,
                                    std::uint64_t p) {
  FpMatrix m(f.rows(), f.cols());
  for (std::size_t r = 0; r < f.rows(); ++r)
    for (std::size_t c = 0; c < f.cols(); ++c) {
      const CoordIndex idx = f.entry(r, c);
      if (idx >= point.size()) throw std::out_of_range("evaluate_flattening: index out of range");
      m.at(r, c) = point[static_cast<std::size_t>(idx)] % p;
    }
  return m;
}

}  // namespace svt
