#pragma once

#include <sstream>

#include <json.hpp>

#include "svt/delpezzo.hpp"

namespace svt {

using json = nlohmann::ordered_json;

// Full per-s report: expected dimension, Terracini oracle, definitional
// defect, and the unbalanced-case annotations with discrepancy flags. The
// oracle is never silently overridden by a closed form; disagreements are
// flagged.
inline SecantReport analyze_secant(const FactorProfile& pr, int s, const FieldConfig& cfg) {
  pr.validate();
  SecantReport rep;
  rep.s = s;
  rep.ambient = static_cast<long long>(ambient_dim(pr));
  rep.expected_dim = expected_secant_dim(pr, s);
  const DimEstimate est = terracini_dim(pr, s, cfg);
  rep.oracle_dim = est.projective_dim;
  rep.defect = rep.expected_dim - *rep.oracle_dim;

  if (pr.is_segre() && pr.factors.size() >= 3 && s >= 2) {
    std::size_t big = 0;
    for (std::size_t i = 1; i < pr.factors.size(); ++i)
      if (pr.factors[i].n >= pr.factors[big].n) big = i;
    std::vector<int> n_list;
    for (std::size_t i = 0; i < pr.factors.size(); ++i)
      if (i != big) n_list.push_back(pr.factors[i].n);
    const UnbalancedReport unb = unbalanced_classify(n_list, pr.factors[big].n, s);
    rep.unbalanced_case = unb.case_number;
    rep.closed_form_defect = unb.closed_form_defect;
    if (!unb.hypothesis_ok) {
      rep.flags.push_back("unbalanced-hypothesis-violated");
    } else {
      if (unb.ambient_bound) rep.flags.push_back("ambient-bound");
      if (unb.closed_form_dim != *rep.oracle_dim) rep.flags.push_back("formula-oracle-mismatch");
    }

    if (pr.factors.size() == 3) {
      std::vector<int> dims{pr.factors[0].n, pr.factors[1].n, pr.factors[2].n};
      std::sort(dims.begin(), dims.end());
      if (dims[0] == 1) {
        const LineProductReport cor = classify_line_product(dims[1], dims[2], s);
        if (cor.defective) {
          rep.printed_defect_form = cor.printed_defect;
          if (cor.printed_mismatch) rep.flags.push_back("printed-defect-mismatch");
        }
      }
    }
  }
  return rep;
}

inline bool has_discrepancy(const SecantReport& rep) {
  for (const auto& f : rep.flags)
    if (f == "formula-oracle-mismatch" || f == "printed-defect-mismatch") return true;
  return false;
}

inline json to_json(const SecantReport& rep) {
  json j;
  j["s"] = rep.s;
  j["ambient"] = rep.ambient;
  j["expected_dim"] = rep.expected_dim;
  j["oracle_dim"] = rep.oracle_dim ? json(*rep.oracle_dim) : json(nullptr);
  j["defect"] = rep.defect ? json(*rep.defect) : json(nullptr);
  j["unbalanced_case"] = rep.unbalanced_case;
  j["closed_form_defect"] = rep.closed_form_defect ? json(*rep.closed_form_defect) : json(nullptr);
  j["printed_defect_form"] =
      rep.printed_defect_form ? json(*rep.printed_defect_form) : json(nullptr);
  j["flags"] = rep.flags;
  return j;
}

inline SecantReport secant_report_from_json(const json& j) {
  SecantReport rep;
  rep.s = j.at("s").get<long long>();
  rep.ambient = j.at("ambient").get<long long>();
  rep.expected_dim = j.at("expected_dim").get<long long>();
  if (!j.at("oracle_dim").is_null()) rep.oracle_dim = j.at("oracle_dim").get<long long>();
  if (!j.at("defect").is_null()) rep.defect = j.at("defect").get<long long>();
  rep.unbalanced_case = j.at("unbalanced_case").get<int>();
  if (!j.at("closed_form_defect").is_null())
    rep.closed_form_defect = j.at("closed_form_defect").get<long long>();
  if (!j.at("printed_defect_form").is_null())
    rep.printed_defect_form = j.at("printed_defect_form").get<long long>();
  rep.flags = j.at("flags").get<std::vector<std::string>>();
  return rep;
}

namespace detail {

inline std::string opt_str(const std::optional<long long>& v) {
  return v ? std::to_string(*v) : std::string("-");
}

inline std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline void pad_columns(std::vector<std::vector<std::string>>& table, std::ostringstream& os) {
  if (table.empty()) return;
  std::vector<std::size_t> width(table.front().size(), 0);
  for (const auto& row : table)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << "  ";
      os << row[i];
      if (i + 1 < row.size())
        for (std::size_t k = row[i].size(); k < width[i]; ++k) os << ' ';
    }
    os << '\n';
  }
}

}  // namespace detail

inline std::string secant_reports_text(const FactorProfile& pr,
                                       const std::vector<SecantReport>& reps) {
  std::ostringstream os;
  os << "profile " << format_profile(pr) << "  N=" << ambient_dim(pr) << "  dim=" << pr.dim_x()
     << '\n';
  std::vector<std::vector<std::string>> table;
  table.push_back({"s", "expected", "oracle", "defect", "case", "closed-defect", "flags"});
  for (const auto& r : reps) {
    table.push_back({std::to_string(r.s), std::to_string(r.expected_dim), detail::opt_str(r.oracle_dim),
                     detail::opt_str(r.defect), r.unbalanced_case ? std::to_string(r.unbalanced_case) : "-",
                     detail::opt_str(r.closed_form_defect),
                     r.flags.empty() ? "-" : detail::join(r.flags, ",")});
  }
  detail::pad_columns(table, os);
  return os.str();
}

inline std::string secant_reports_csv(const std::vector<SecantReport>& reps) {
  std::ostringstream os;
  os << "s,ambient,expected_dim,oracle_dim,defect,unbalanced_case,closed_form_defect,"
        "printed_defect_form,flags\n";
  for (const auto& r : reps) {
    os << r.s << ',' << r.ambient << ',' << r.expected_dim << ',' << detail::opt_str(r.oracle_dim)
       << ',' << detail::opt_str(r.defect) << ',' << r.unbalanced_case << ','
       << detail::opt_str(r.closed_form_defect) << ',' << detail::opt_str(r.printed_defect_form)
       << ',' << detail::join(r.flags, ";") << '\n';
  }
  return os.str();
}

inline json run_envelope(const char* command, const FieldConfig& cfg) {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  j["prime"] = cfg.p;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  return j;
}

// ---- Del Pezzo suite ----

struct DelPezzoReport {
  struct Row {
    std::string surface;
    long long ambient = 0;
    std::size_t mat_rows = 0, mat_cols = 0;
    bool sym_2x2 = false;
    SurfaceSecantReport s2;
    SurfaceSecantReport s3;
  };
  std::vector<Row> rows;
  std::vector<DegreeRow> degrees;
  std::vector<std::string> notes;
};

inline DelPezzoReport delpezzo_report(const FieldConfig& cfg) {
  DelPezzoReport rep;
  for (Surface which : {Surface::S9, Surface::S8, Surface::S7, Surface::S6, Surface::D8}) {
    const SurfaceSpec spec = build_surface(which);
    DelPezzoReport::Row row;
    row.surface = spec.name;
    row.ambient = spec.ambient();
    row.mat_rows = spec.mat_rows;
    row.mat_cols = spec.mat_cols;
    row.sym_2x2 = symbolic_minor_vanishing(spec, 2);
    row.s2 = secant_checks(spec, 2, cfg);
    row.s3 = secant_checks(spec, 3, cfg);
    rep.rows.push_back(std::move(row));
  }
  rep.degrees = delpezzo_degrees();
  rep.notes = {
      "S5: sigma_2 fills P^5; ideal of S5 reported as three quadrics (not computed here)",
      "S4: sigma_2 fills P^4; ideal of S4 reported as two quadrics (not computed here)",
      "S3: sigma_2 fills P^3; S3 is the determinant of a 3x3 matrix of linear forms (not computed here)",
  };
  return rep;
}

inline json to_json(const SurfaceSecantReport& r) {
  json j;
  j["s"] = r.s;
  j["expected_dim"] = r.expected_dim;
  j["oracle_dim"] = r.oracle_dim;
  j["minors_checked"] = r.minors_checked;
  j["minors_vanish"] = r.minors_checked ? json(r.minors_vanish) : json(nullptr);
  j["max_rank"] = r.minors_checked ? json(r.max_rank) : json(nullptr);
  return j;
}

inline json to_json(const DelPezzoReport& rep) {
  json j;
  j["surfaces"] = json::array();
  for (const auto& row : rep.rows) {
    json r;
    r["surface"] = row.surface;
    r["ambient"] = row.ambient;
    r["matrix"] = std::to_string(row.mat_rows) + "x" + std::to_string(row.mat_cols);
    r["symbolic_2x2_vanish"] = row.sym_2x2;
    r["sigma_2"] = to_json(row.s2);
    r["sigma_3"] = to_json(row.s3);
    j["surfaces"].push_back(std::move(r));
  }
  j["degrees"] = json::array();
  for (const auto& d : rep.degrees) {
    json r;
    r["variety"] = d.variety;
    r["degree"] = d.degree;
    r["reported_only"] = d.reported_only;
    j["degrees"].push_back(std::move(r));
  }
  j["notes"] = rep.notes;
  return j;
}

inline DelPezzoReport delpezzo_report_from_json(const json& j) {
  DelPezzoReport rep;
  auto surface_secant = [](const json& r, const std::string& surface, long long ambient) {
    SurfaceSecantReport s;
    s.surface = surface;
    s.ambient = ambient;
    s.s = r.at("s").get<int>();
    s.expected_dim = r.at("expected_dim").get<long long>();
    s.oracle_dim = r.at("oracle_dim").get<long long>();
    s.minors_checked = r.at("minors_checked").get<bool>();
    if (!r.at("minors_vanish").is_null()) s.minors_vanish = r.at("minors_vanish").get<bool>();
    if (!r.at("max_rank").is_null()) s.max_rank = r.at("max_rank").get<std::size_t>();
    return s;
  };
  for (const auto& r : j.at("surfaces")) {
    DelPezzoReport::Row row;
    row.surface = r.at("surface").get<std::string>();
    row.ambient = r.at("ambient").get<long long>();
    const std::string shape = r.at("matrix").get<std::string>();
    const auto x = shape.find('x');
    row.mat_rows = std::stoul(shape.substr(0, x));
    row.mat_cols = std::stoul(shape.substr(x + 1));
    row.sym_2x2 = r.at("symbolic_2x2_vanish").get<bool>();
    row.s2 = surface_secant(r.at("sigma_2"), row.surface, row.ambient);
    row.s3 = surface_secant(r.at("sigma_3"), row.surface, row.ambient);
    rep.rows.push_back(std::move(row));
  }
  for (const auto& d : j.at("degrees")) {
    DegreeRow row;
    row.variety = d.at("variety").get<std::string>();
    row.degree = d.at("degree").get<std::uint64_t>();
    row.reported_only = d.at("reported_only").get<bool>();
    rep.degrees.push_back(std::move(row));
  }
  rep.notes = j.at("notes").get<std::vector<std::string>>();
  return rep;
}

inline std::string delpezzo_text(const DelPezzoReport& rep) {
  std::ostringstream os;
  std::vector<std::vector<std::string>> table;
  table.push_back({"surface", "ambient", "matrix", "sym2x2", "s2:vanish", "s2:dim(exp)", "s3:vanish",
                   "s3:dim(exp)"});
  auto vanish_str = [](const SurfaceSecantReport& r) {
    return !r.minors_checked ? std::string("n/a") : (r.minors_vanish ? std::string("yes") : std::string("NO"));
  };
  auto dim_str = [](const SurfaceSecantReport& r) {
    return std::to_string(r.oracle_dim) + " (" + std::to_string(r.expected_dim) + ")";
  };
  for (const auto& row : rep.rows) {
    table.push_back({row.surface, std::to_string(row.ambient),
                     std::to_string(row.mat_rows) + "x" + std::to_string(row.mat_cols),
                     row.sym_2x2 ? "yes" : "NO", vanish_str(row.s2), dim_str(row.s2),
                     vanish_str(row.s3), dim_str(row.s3)});
  }
  detail::pad_columns(table, os);
  os << '\n';
  std::vector<std::vector<std::string>> dtable;
  dtable.push_back({"variety", "degree", "provenance"});
  for (const auto& d : rep.degrees)
    dtable.push_back({d.variety, std::to_string(d.degree), d.reported_only ? "reported-only" : "giambelli"});
  detail::pad_columns(dtable, os);
  os << '\n';
  for (const auto& n : rep.notes) os << "note: " << n << '\n';
  return os.str();
}

inline std::string delpezzo_csv(const DelPezzoReport& rep) {
  std::ostringstream os;
  os << "kind,name,ambient,matrix,symbolic_2x2,s2_vanish,s2_oracle,s2_expected,s3_vanish,"
        "s3_oracle,s3_expected,degree,provenance\n";
  auto vanish_str = [](const SurfaceSecantReport& r) {
    return !r.minors_checked ? std::string("n/a") : (r.minors_vanish ? std::string("yes") : std::string("no"));
  };
  for (const auto& row : rep.rows) {
    os << "surface," << row.surface << ',' << row.ambient << ',' << row.mat_rows << 'x' << row.mat_cols
       << ',' << (row.sym_2x2 ? "yes" : "no") << ',' << vanish_str(row.s2) << ',' << row.s2.oracle_dim
       << ',' << row.s2.expected_dim << ',' << vanish_str(row.s3) << ',' << row.s3.oracle_dim << ','
       << row.s3.expected_dim << ",,\n";
  }
  for (const auto& d : rep.degrees)
    os << "degree," << d.variety << ",,,,,,,,,," << d.degree << ','
       << (d.reported_only ? "reported-only" : "giambelli") << '\n';
  return os.str();
}

}  // namespace svt
