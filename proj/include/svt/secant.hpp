#pragma once

#include <optional>

#include "svt/classify.hpp"
#include "svt/numeric.hpp"

namespace svt {

// s cone points, nonzero mixing coefficients, and the combined ambient vector.
struct SecantSample {
  std::vector<ConePoint> points;
  std::vector<std::uint64_t> lambda;
  std::vector<std::uint64_t> image;
};

struct DimEstimate {
  int s = 0;
  std::size_t affine_rank = 0;
  long long projective_dim = -1;
  int trials = 0;
};

inline SecantSample sample_secant_point(const MonomialMap& map, int s, const FieldConfig& cfg,
                                        RngStream& rng) {
  if (s < 1) throw std::invalid_argument("sample_secant_point: s must be >= 1");
  for (int attempt = 0; attempt < 16; ++attempt) {
    SecantSample sample;
    sample.image.assign(map.coords.size(), 0);
    for (int i = 0; i < s; ++i) {
      ConePoint pt = sample_cone_point(map, cfg, rng);
      const std::uint64_t lam = rng.nonzero_below(cfg.p);
      for (std::size_t k = 0; k < sample.image.size(); ++k)
        sample.image[k] = fp::add(sample.image[k], fp::mul(lam, pt.image[k], cfg.p), cfg.p);
      sample.points.push_back(std::move(pt));
      sample.lambda.push_back(lam);
    }
    if (std::any_of(sample.image.begin(), sample.image.end(),
                    [](std::uint64_t x) { return x != 0; }))
      return sample;
  }
  throw std::runtime_error("sample_secant_point: zero image after 16 attempts");
}

inline SecantSample sample_secant_point(const FactorProfile& pr, int s, const FieldConfig& cfg,
                                        RngStream& rng) {
  return sample_secant_point(monomial_map(pr), s, cfg, rng);
}

// Randomized Terracini oracle: stacks the Jacobians of s independently
// sampled cone points and reads the projective dimension off the rank.
// Rank drops are one-sided, so the result is maximized over trials; it is an
// unconditional lower bound and a high-probability exact value.
inline DimEstimate terracini_dim(const MonomialMap& map, int s, const FieldConfig& cfg) {
  if (s < 1) throw std::invalid_argument("terracini_dim: s must be >= 1");
  if (cfg.trials < 1) throw std::invalid_argument("terracini_dim: trials must be >= 1");
  validate_field(cfg);
  const std::size_t block = map.param_total();
  DimEstimate est{s, 0, -1, cfg.trials};
  for (int trial = 0; trial < cfg.trials; ++trial) {
    RngStream rng = derive_stream(cfg, "terracini:s=" + std::to_string(s), static_cast<std::uint64_t>(trial));
    FpMatrix stacked(block * static_cast<std::size_t>(s), map.coords.size());
    for (int i = 0; i < s; ++i) {
      const ConePoint pt = sample_cone_point(map, cfg, rng);
      const FpMatrix jac = jacobian_rows(map, pt, cfg.p);
      for (std::size_t r = 0; r < block; ++r)
        for (std::size_t c = 0; c < map.coords.size(); ++c)
          stacked.at(static_cast<std::size_t>(i) * block + r, c) = jac.at(r, c);
    }
    est.affine_rank = std::max(est.affine_rank, rank_mod_p(stacked, cfg));
  }
  est.projective_dim = static_cast<long long>(est.affine_rank) - 1;
  return est;
}

inline DimEstimate terracini_dim(const FactorProfile& pr, int s, const FieldConfig& cfg) {
  return terracini_dim(monomial_map(pr), s, cfg);
}

struct RankBoundReport {
  bool ok = false;
  std::size_t max_rank = 0;
  bool constrained = true;  // false when s >= min(matrix dims): no constraint
};

// Checks rank(F at secant samples) <= s over all trials.
inline RankBoundReport verify_rank_bound(const Flattening& f, int s, const FieldConfig& cfg) {
  validate_field(cfg);
  const MonomialMap map = monomial_map(f.profile());
  RankBoundReport rep;
  rep.constrained = static_cast<std::size_t>(s) < std::min(f.rows(), f.cols());
  for (int trial = 0; trial < cfg.trials; ++trial) {
    RngStream rng = derive_stream(cfg, "rank-bound:s=" + std::to_string(s), static_cast<std::uint64_t>(trial));
    const SecantSample sample = sample_secant_point(map, s, cfg, rng);
    const FpMatrix m = evaluate_flattening(f, sample.image, cfg.p);
    rep.max_rank = std::max(rep.max_rank, rank_mod_p(m, cfg));
  }
  rep.ok = rep.max_rank <= static_cast<std::size_t>(s);
  return rep;
}

inline RankBoundReport verify_rank_bound(const FactorProfile& pr, const Split& sp, int s,
                                         const FieldConfig& cfg) {
  return verify_rank_bound(build_flattening(pr, sp), s, cfg);
}

// True iff every polynomial evaluates to zero at every secant sample across
// all trials.
inline bool verify_vanishing(const std::vector<SparsePoly>& polys, const MonomialMap& map, int s,
                             const FieldConfig& cfg) {
  validate_field(cfg);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    RngStream rng = derive_stream(cfg, "vanishing:s=" + std::to_string(s), static_cast<std::uint64_t>(trial));
    const SecantSample sample = sample_secant_point(map, s, cfg, rng);
    for (const auto& poly : polys)
      if (eval_poly(poly, sample.image, cfg.p) != 0) return false;
  }
  return true;
}

inline bool verify_vanishing(const std::vector<SparsePoly>& polys, const FactorProfile& pr, int s,
                             const FieldConfig& cfg) {
  return verify_vanishing(polys, monomial_map(pr), s, cfg);
}

// High-probability dimension of the span: rank of the evaluation matrix of
// the polynomials at 2*|polys| random ambient points (always a lower bound).
inline std::size_t independent_count(const std::vector<SparsePoly>& polys, const FactorProfile& pr,
                                     const FieldConfig& cfg) {
  if (polys.empty()) return 0;
  validate_field(cfg);
  const int degree = polys.front().degree();
  for (const auto& poly : polys)
    if (poly.degree() != degree)
      throw std::invalid_argument("independent_count: polynomials of mixed degrees");
  const std::uint64_t n_coords = coord_count(pr);
  const std::size_t n_points = 2 * polys.size();
  std::size_t best = 0;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    RngStream rng = derive_stream(cfg, "independent", static_cast<std::uint64_t>(trial));
    FpMatrix m(polys.size(), n_points);
    for (std::size_t j = 0; j < n_points; ++j) {
      std::vector<std::uint64_t> point(static_cast<std::size_t>(n_coords));
      for (auto& x : point) x = rng.below(cfg.p);
      for (std::size_t i = 0; i < polys.size(); ++i) m.at(i, j) = eval_poly(polys[i], point, cfg.p);
    }
    best = std::max(best, rank_mod_p(m, cfg));
  }
  return best;
}

// Confirms dim sigma_s(X) against the closed form for the two-factor grouping
// Y; X regrouped as P^N x P^n per the unbalanced construction.
inline bool equal_secants_check(const FactorProfile& x, const FactorProfile& y, int s,
                                const FieldConfig& cfg) {
  x.validate();
  y.validate();
  if (y.factors.size() != 2 || !y.is_segre())
    throw std::invalid_argument("equal_secants_check: Y must be a two-factor Segre profile");
  if (!x.is_segre() || x.factors.size() < 2)
    throw std::invalid_argument("equal_secants_check: X must be a Segre profile with >= 2 factors");
  std::uint64_t head = 1;
  for (std::size_t i = 0; i + 1 < x.factors.size(); ++i)
    head = detail::checked_mul(head, static_cast<std::uint64_t>(x.factors[i].n + 1));
  const long long a = static_cast<long long>(head) - 1;
  const long long b = x.factors.back().n;
  const long long ya = y.factors[0].n, yb = y.factors[1].n;
  if (!((ya == a && yb == b) || (ya == b && yb == a)))
    throw std::invalid_argument("equal_secants_check: Y is not the two-factor grouping of X");
  const DimEstimate est = terracini_dim(x, s, cfg);
  return est.projective_dim == two_factor_secant_dim(a, b, s);
}

}  // namespace svt
