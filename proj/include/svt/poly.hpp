#pragma once

#include <cstdlib>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "svt/coords.hpp"

namespace svt {

// Homogeneous polynomial in the ambient coordinates with exact integer
// coefficients. A term is a sorted multiset of coordinate indices; terms with
// zero coefficient are never stored.
class SparsePoly {
 public:
  using Term = std::vector<CoordIndex>;
  using TermMap = std::map<Term, long long>;

  SparsePoly() = default;
  explicit SparsePoly(int degree) : degree_(degree) {
    if (degree < 0) throw std::invalid_argument("SparsePoly: negative degree");
  }

  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  void add_term(Term t, long long coeff) {
    if (static_cast<int>(t.size()) != degree_)
      throw std::invalid_argument("SparsePoly: term degree mismatch");
    if (coeff == 0) return;
    std::sort(t.begin(), t.end());
    auto [it, inserted] = terms_.emplace(std::move(t), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

 private:
  TermMap terms_;
  int degree_ = 0;
};

namespace detail {

inline std::string var_to_string(CoordIndex idx, const CoordTables& tables) {
  std::string out = "y[";
  const auto tuple = tables.monomials_of(idx);
  for (std::size_t f = 0; f < tuple.size(); ++f) {
    if (f) out += ';';
    for (std::size_t j = 0; j < tuple[f].size(); ++j) {
      if (j) out += ',';
      out += std::to_string(tuple[f][j]);
    }
  }
  out += ']';
  return out;
}

}  // namespace detail

// One-line text form, e.g. `y[3,0;0,1]*y[1,2;1,0] - y[2,1;0,1]*y[2,1;1,0]`.
// Terms appear in the canonical map order; a unit coefficient is omitted and
// the leading term carries its sign in the coefficient.
inline std::string poly_to_string(const SparsePoly& poly, const CoordTables& tables) {
  if (poly.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [term, coeff] : poly.terms()) {
    long long mag = coeff;
    if (first) {
      if (coeff < 0) {
        out += std::to_string(coeff) + "*";
        mag = 1;  // sign already emitted with the coefficient
      }
    } else {
      out += coeff < 0 ? " - " : " + ";
      mag = coeff < 0 ? -coeff : coeff;
    }
    if (!first && mag != 1) out += std::to_string(mag) + "*";
    if (first && coeff > 1) out += std::to_string(coeff) + "*";
    for (std::size_t i = 0; i < term.size(); ++i) {
      if (i) out += '*';
      out += detail::var_to_string(term[i], tables);
    }
    first = false;
  }
  return out;
}

inline std::string poly_to_string(const SparsePoly& poly, const FactorProfile& pr) {
  return poly_to_string(poly, CoordTables(pr));
}

inline SparsePoly poly_from_string(std::string_view text, const CoordTables& tables) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("polynomial '" + std::string(text) + "': " + why);
  };
  if (text == "0") return SparsePoly();

  struct RawTerm {
    long long coeff;
    std::vector<CoordIndex> vars;
  };
  std::vector<RawTerm> raw;

  std::size_t pos = 0;
  int sign = 1;
  while (pos < text.size()) {
    RawTerm t{sign, {}};
    // optional integer coefficient followed by '*'
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos > start && pos < text.size() && text[pos] == '*') {
      t.coeff = sign * std::stoll(std::string(text.substr(start, pos - start)));
      ++pos;
    } else {
      pos = start;
    }
    // vars separated by '*'
    for (;;) {
      if (pos + 1 >= text.size() || text[pos] != 'y' || text[pos + 1] != '[') fail("expected a variable");
      pos += 2;
      std::vector<Exponent> tuple(1);
      while (pos < text.size() && text[pos] != ']') {
        if (text[pos] == ';') {
          tuple.emplace_back();
          ++pos;
          continue;
        }
        if (text[pos] == ',') {
          ++pos;
          continue;
        }
        std::size_t s0 = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == s0) fail("expected an exponent");
        tuple.back().push_back(std::stoi(std::string(text.substr(s0, pos - s0))));
      }
      if (pos >= text.size()) fail("unterminated variable");
      ++pos;  // ']'
      t.vars.push_back(tables.index_of(tuple));
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    raw.push_back(std::move(t));
    if (pos == text.size()) break;
    if (pos + 3 > text.size() || text[pos] != ' ' || (text[pos + 1] != '+' && text[pos + 1] != '-') ||
        text[pos + 2] != ' ')
      fail("expected ' + ' or ' - ' between terms");
    sign = text[pos + 1] == '-' ? -1 : 1;
    pos += 3;
  }

  if (raw.empty()) fail("no terms");
  const int degree = static_cast<int>(raw.front().vars.size());
  SparsePoly poly(degree);
  for (auto& t : raw) poly.add_term(std::move(t.vars), t.coeff);
  return poly;
}

inline SparsePoly poly_from_string(std::string_view text, const FactorProfile& pr) {
  return poly_from_string(text, CoordTables(pr));
}

}  // namespace svt
