#pragma once

#include "svt/secant.hpp"

namespace svt {

enum class Surface { S9, S8, S7, S6, D8 };

inline Surface surface_from_name(std::string_view name) {
  if (name == "S9") return Surface::S9;
  if (name == "S8") return Surface::S8;
  if (name == "S7") return Surface::S7;
  if (name == "S6") return Surface::S6;
  if (name == "D8") return Surface::D8;
  throw std::invalid_argument("unknown surface '" + std::string(name) + "'");
}

inline const char* surface_name(Surface s) {
  switch (s) {
    case Surface::S9: return "S9";
    case Surface::S8: return "S8";
    case Surface::S7: return "S7";
    case Surface::S6: return "S6";
    case Surface::D8: return "D8";
  }
  return "?";
}

// A Del Pezzo surface given by a monomial parametrization together with the
// matrix whose minors cut out the surface and its secants. For S9..S6 the
// matrix is the 3x6 cubic catalecticant with trailing/fourth/first columns
// deleted in that order; for D8 it is the 4x4 bidegree-(1,1)|(1,1) flattening.
struct SurfaceSpec {
  std::string name;
  FactorProfile param_profile;
  MonomialMap map;  // coordinates of the embedding, in ambient order
  std::size_t mat_rows = 0, mat_cols = 0;
  std::vector<std::size_t> mat;           // row-major indices into map.coords
  std::vector<int> deleted_columns;       // 1-based positions in the printed base matrix

  std::size_t entry(std::size_t r, std::size_t c) const { return mat.at(r * mat_cols + c); }
  long long ambient() const { return static_cast<long long>(map.coords.size()) - 1; }
};

inline SurfaceSpec build_surface(Surface which) {
  SurfaceSpec spec;
  spec.name = surface_name(which);

  const bool is_d8 = which == Surface::D8;
  spec.param_profile = is_d8 ? FactorProfile{{Factor{1, 2}, Factor{1, 2}}}
                             : FactorProfile{{Factor{2, 3}}};
  const MonomialMap full = monomial_map(spec.param_profile);
  const Flattening base = is_d8 ? build_flattening(spec.param_profile, Split{{1, 1}})
                                : factor_catalecticant(2, 3, 1);

  // columns of the 3x6 catalecticant to erase, 1-based in printed order
  std::vector<int> deletions;
  switch (which) {
    case Surface::S8: deletions = {6}; break;
    case Surface::S7: deletions = {6, 4}; break;
    case Surface::S6: deletions = {6, 4, 1}; break;
    default: break;
  }
  spec.deleted_columns = deletions;

  std::vector<bool> col_kept(base.cols(), true);
  for (int c : deletions) col_kept[static_cast<std::size_t>(c - 1)] = false;

  // coordinates that survive: those not supported only on deleted columns
  std::vector<bool> coord_kept(full.coords.size(), true);
  for (std::size_t r = 0; r < base.rows(); ++r)
    for (std::size_t c = 0; c < base.cols(); ++c)
      if (!col_kept[c]) coord_kept[base.entry(r, c)] = false;
  for (std::size_t r = 0; r < base.rows(); ++r)
    for (std::size_t c = 0; c < base.cols(); ++c)
      if (col_kept[c]) coord_kept[base.entry(r, c)] = true;

  std::vector<std::size_t> remap(full.coords.size(), static_cast<std::size_t>(-1));
  spec.map.param_counts = full.param_counts;
  spec.map.factor_degrees = full.factor_degrees;
  for (std::size_t i = 0; i < full.coords.size(); ++i) {
    if (!coord_kept[i]) continue;
    remap[i] = spec.map.coords.size();
    spec.map.coords.push_back(full.coords[i]);
  }

  spec.mat_rows = base.rows();
  spec.mat_cols = 0;
  for (std::size_t c = 0; c < base.cols(); ++c)
    if (col_kept[c]) ++spec.mat_cols;
  spec.mat.reserve(spec.mat_rows * spec.mat_cols);
  for (std::size_t r = 0; r < base.rows(); ++r)
    for (std::size_t c = 0; c < base.cols(); ++c)
      if (col_kept[c]) spec.mat.push_back(remap[base.entry(r, c)]);
  return spec;
}

namespace detail {

// Polynomial in the parameter variables (all factors concatenated), used only
// for the exact symbolic checks; coefficients are exact integers.
using ParamPoly = std::map<std::vector<int>, long long>;

inline std::vector<int> flat_exponents(const MonomialMap& map, std::size_t coord) {
  std::vector<int> e;
  for (const auto& part : map.coords[coord]) e.insert(e.end(), part.begin(), part.end());
  return e;
}

inline void add_product_term(ParamPoly& poly, const std::vector<std::vector<int>>& factors, int sign) {
  std::vector<int> e(factors.front().size(), 0);
  for (const auto& f : factors)
    for (std::size_t j = 0; j < e.size(); ++j) e[j] += f[j];
  auto [it, inserted] = poly.emplace(std::move(e), sign);
  if (!inserted) {
    it->second += sign;
    if (it->second == 0) poly.erase(it);
  }
}

}  // namespace detail

// Substitutes every matrix entry by its parametrization monomial and expands
// each k x k minor over the integers; true iff all collapse identically to 0.
inline bool symbolic_minor_vanishing(const SurfaceSpec& spec, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > std::min(spec.mat_rows, spec.mat_cols))
    throw std::invalid_argument("symbolic_minor_vanishing: minor size out of range");
  std::vector<std::vector<int>> subst(spec.map.coords.size());
  for (std::size_t i = 0; i < subst.size(); ++i) subst[i] = detail::flat_exponents(spec.map, i);

  auto rs = detail::first_subset(static_cast<std::size_t>(k));
  do {
    auto cs = detail::first_subset(static_cast<std::size_t>(k));
    do {
      detail::ParamPoly poly;
      std::vector<std::size_t> perm(static_cast<std::size_t>(k));
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
      do {
        std::vector<std::vector<int>> factors;
        factors.reserve(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i)
          factors.push_back(subst[spec.entry(rs[i], cs[perm[i]])]);
        detail::add_product_term(poly, factors, detail::permutation_parity(perm));
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (!poly.empty()) return false;
    } while (detail::next_subset_colex(cs, spec.mat_cols));
  } while (detail::next_subset_colex(rs, spec.mat_rows));
  return true;
}

// k x k minors of the surface matrix, as polynomials in the surface's own
// ambient coordinates.
inline std::vector<SparsePoly> surface_minor_polys(const SurfaceSpec& spec, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > std::min(spec.mat_rows, spec.mat_cols))
    throw std::invalid_argument("surface_minor_polys: minor size out of range");
  std::vector<SparsePoly> out;
  auto rs = detail::first_subset(static_cast<std::size_t>(k));
  do {
    auto cs = detail::first_subset(static_cast<std::size_t>(k));
    do {
      SparsePoly poly(k);
      std::vector<std::size_t> perm(static_cast<std::size_t>(k));
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
      do {
        SparsePoly::Term term(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < perm.size(); ++i)
          term[i] = static_cast<CoordIndex>(spec.entry(rs[i], cs[perm[i]]));
        poly.add_term(std::move(term), detail::permutation_parity(perm));
      } while (std::next_permutation(perm.begin(), perm.end()));
      out.push_back(std::move(poly));
    } while (detail::next_subset_colex(cs, spec.mat_cols));
  } while (detail::next_subset_colex(rs, spec.mat_rows));
  return out;
}

struct SurfaceSecantReport {
  std::string surface;
  int s = 0;
  long long ambient = 0;
  long long expected_dim = 0;
  long long oracle_dim = -1;
  bool minors_checked = false;  // false when the matrix has no (s+1)-minors
  bool minors_vanish = false;
  std::size_t max_rank = 0;
};

// Numeric (s+1)x(s+1) minor vanishing at secant samples of the surface, plus
// the Terracini dimension of sigma_s.
inline SurfaceSecantReport secant_checks(const SurfaceSpec& spec, int s, const FieldConfig& cfg) {
  if (s < 1) throw std::invalid_argument("secant_checks: s must be >= 1");
  validate_field(cfg);
  SurfaceSecantReport rep;
  rep.surface = spec.name;
  rep.s = s;
  rep.ambient = spec.ambient();
  const long long dim_x = spec.param_profile.dim_x();
  rep.expected_dim = std::min<long long>(rep.ambient, static_cast<long long>(s) * (dim_x + 1) - 1);
  rep.oracle_dim = terracini_dim(spec.map, s, cfg).projective_dim;

  const std::size_t k = static_cast<std::size_t>(s) + 1;
  rep.minors_checked = k <= std::min(spec.mat_rows, spec.mat_cols);
  if (!rep.minors_checked) return rep;

  rep.minors_vanish = true;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    RngStream rng = derive_stream(cfg, "delpezzo:" + spec.name + ":s=" + std::to_string(s),
                                  static_cast<std::uint64_t>(trial));
    const SecantSample sample = sample_secant_point(spec.map, s, cfg, rng);
    FpMatrix m(spec.mat_rows, spec.mat_cols);
    for (std::size_t r = 0; r < spec.mat_rows; ++r)
      for (std::size_t c = 0; c < spec.mat_cols; ++c) m.at(r, c) = sample.image[spec.entry(r, c)];
    const std::size_t rank = rank_mod_p(m, cfg);
    rep.max_rank = std::max(rep.max_rank, rank);
    if (rank > static_cast<std::size_t>(s)) rep.minors_vanish = false;
  }
  return rep;
}

inline SurfaceSecantReport secant_checks(Surface which, int s, const FieldConfig& cfg) {
  return secant_checks(build_surface(which), s, cfg);
}

struct DegreeRow {
  std::string variety;
  std::uint64_t degree = 0;
  bool reported_only = false;  // value quoted, no generic-height derivation
};

// Degrees of the sigma_2's: Giambelli where the determinantal ideal has
// generic height. The D8 ideal does not (its matrix is 4x4), so that degree
// is recorded as reported-only rather than derived.
inline std::vector<DegreeRow> delpezzo_degrees() {
  return {
      {"sigma_2(S9)", giambelli_degree(2, 5, 2), false},
      {"sigma_2(S8)", giambelli_degree(2, 4, 2), false},
      {"sigma_2(S7)", giambelli_degree(2, 3, 2), false},
      {"sigma_2(S6)", giambelli_degree(2, 2, 2), false},
      {"sigma_2(D8)", 10, true},
  };
}

}  // namespace svt
