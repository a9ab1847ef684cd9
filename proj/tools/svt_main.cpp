// svt: flattenings, minor equations, and secant-dimension reports for
// Segre-Veronese varieties.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "svt/report.hpp"

namespace {

struct Common {
  std::string profile;
  std::string srange = "1";
  std::string split;
  std::string format = "text";
  std::string out;
  std::uint64_t prime = 2147483647ULL;
  std::uint64_t seed = 0;
  int trials = 3;
  std::uint64_t cap = 1000;
  bool allow_degenerate = false;
};

void add_common(CLI::App* cmd, Common& opt, bool with_profile = true) {
  if (with_profile)
    cmd->add_option("-p,--profile", opt.profile, "profile, e.g. P(1)xP(1)xP(5) or P(2,2)xP(2,2)");
  cmd->add_option("--prime", opt.prime, "prime modulus (default 2147483647)");
  cmd->add_option("--seed", opt.seed, "master seed (default 0)");
  cmd->add_option("--trials", opt.trials, "independent trials (default 3)");
  cmd->add_option("--cap", opt.cap, "max minors to materialize (default 1000)");
  cmd->add_option("--format", opt.format, "output format: text, json, csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("-o,--out", opt.out, "output path (default stdout)");
}

svt::FieldConfig field_config(const Common& opt) {
  svt::FieldConfig cfg{opt.prime, opt.seed, opt.trials};
  svt::validate_field(cfg);
  if (cfg.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  return cfg;
}

std::pair<int, int> parse_srange(const std::string& text) {
  const auto dots = text.find("..");
  int lo = 0, hi = 0;
  if (dots == std::string::npos) {
    lo = hi = std::stoi(text);
  } else {
    lo = std::stoi(text.substr(0, dots));
    hi = std::stoi(text.substr(dots + 2));
  }
  if (lo < 1 || hi < lo) throw std::invalid_argument("bad secant range '" + text + "'");
  return {lo, hi};
}

svt::Split parse_split(const std::string& text, std::size_t factor_count) {
  svt::Split sp;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (part.empty()) throw std::invalid_argument("bad split '" + text + "'");
    sp.a.push_back(std::stoi(part));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (sp.a.size() != factor_count)
    throw std::invalid_argument("split has " + std::to_string(sp.a.size()) + " entries, profile has " +
                                std::to_string(factor_count) + " factors");
  return sp;
}

std::string split_to_string(const svt::Split& sp) {
  std::string out;
  for (std::size_t i = 0; i < sp.a.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sp.a[i]);
  }
  return out;
}

void write_out(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
  f << text;
}

int cmd_analyze(const Common& opt) {
  const svt::FactorProfile pr = svt::parse_profile(opt.profile);
  const svt::FieldConfig cfg = field_config(opt);
  const auto [lo, hi] = parse_srange(opt.srange);
  std::vector<svt::SecantReport> reports;
  bool discrepancy = false;
  for (int s = lo; s <= hi; ++s) {
    reports.push_back(svt::analyze_secant(pr, s, cfg));
    discrepancy = discrepancy || svt::has_discrepancy(reports.back());
  }
  if (opt.format == "json") {
    svt::json j = svt::run_envelope("analyze", cfg);
    j["profile"] = svt::format_profile(pr);
    j["reports"] = svt::json::array();
    for (const auto& r : reports) j["reports"].push_back(svt::to_json(r));
    write_out(j.dump(2) + "\n", opt.out);
  } else if (opt.format == "csv") {
    write_out(svt::secant_reports_csv(reports), opt.out);
  } else {
    write_out(svt::secant_reports_text(pr, reports), opt.out);
  }
  return discrepancy ? 2 : 0;
}

int cmd_flatten(const Common& opt) {
  const svt::FactorProfile pr = svt::parse_profile(opt.profile);
  if (!opt.split.empty()) {
    const svt::Split sp = parse_split(opt.split, pr.factors.size());
    const svt::Flattening f = svt::build_flattening(pr, sp, opt.allow_degenerate);
    if (opt.format == "json") {
      svt::json j;
      j["schema"] = 1;
      j["command"] = "flatten";
      j["profile"] = svt::format_profile(pr);
      j["split"] = split_to_string(sp);
      j["rows"] = f.rows();
      j["cols"] = f.cols();
      j["entries"] = svt::json::array();
      for (std::size_t r = 0; r < f.rows(); ++r) {
        svt::json row = svt::json::array();
        for (std::size_t c = 0; c < f.cols(); ++c)
          row.push_back(svt::detail::var_to_string(f.entry(r, c), f.tables()));
        j["entries"].push_back(std::move(row));
      }
      write_out(j.dump(2) + "\n", opt.out);
    } else {
      std::ostringstream os;
      os << "profile " << svt::format_profile(pr) << "  split " << split_to_string(sp) << "  shape "
         << f.rows() << "x" << f.cols() << '\n';
      std::vector<std::vector<std::string>> table;
      for (std::size_t r = 0; r < f.rows(); ++r) {
        std::vector<std::string> row;
        for (std::size_t c = 0; c < f.cols(); ++c)
          row.push_back(svt::detail::var_to_string(f.entry(r, c), f.tables()));
        table.push_back(std::move(row));
      }
      svt::detail::pad_columns(table, os);
      write_out(os.str(), opt.out);
    }
    return 0;
  }

  // split census
  auto splits = svt::enumerate_splits(pr);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> shape_counts;
  for (const auto& s : splits) ++shape_counts[{s.rows, s.cols}];
  if (opt.format == "json") {
    svt::json j;
    j["schema"] = 1;
    j["command"] = "flatten";
    j["profile"] = svt::format_profile(pr);
    j["split_count"] = splits.size();
    j["shapes"] = svt::json::array();
    for (const auto& [shape, count] : shape_counts) {
      svt::json row;
      row["rows"] = shape.first;
      row["cols"] = shape.second;
      row["count"] = count;
      j["shapes"].push_back(std::move(row));
    }
    j["splits"] = svt::json::array();
    for (const auto& s : splits) {
      svt::json row;
      row["split"] = split_to_string(s.split);
      row["rows"] = s.rows;
      row["cols"] = s.cols;
      j["splits"].push_back(std::move(row));
    }
    write_out(j.dump(2) + "\n", opt.out);
  } else {
    std::ostringstream os;
    os << "profile " << svt::format_profile(pr) << "  proper splits up to transpose: " << splits.size()
       << '\n';
    for (const auto& [shape, count] : shape_counts)
      os << "  " << count << " of " << shape.first << "x" << shape.second << '\n';
    for (const auto& s : splits)
      os << "  split " << split_to_string(s.split) << "  shape " << s.rows << "x" << s.cols << '\n';
    write_out(os.str(), opt.out);
  }
  return 0;
}

int cmd_equations(const Common& opt) {
  const svt::FactorProfile pr = svt::parse_profile(opt.profile);
  if (opt.split.empty()) throw std::invalid_argument("equations: --split is required");
  const svt::Split sp = parse_split(opt.split, pr.factors.size());
  const auto [lo, hi] = parse_srange(opt.srange);
  if (lo != hi) throw std::invalid_argument("equations: a single s is required");
  const svt::Flattening f = svt::build_flattening(pr, sp);
  const int k = lo + 1;

  std::vector<std::string> lines;
  const std::uint64_t total = svt::emit_minors(
      f, k, opt.cap, [&](const std::vector<std::size_t>&, const std::vector<std::size_t>&,
                         const svt::SparsePoly& poly) {
        lines.push_back(svt::poly_to_string(poly, f.tables()));
      });
  std::ostringstream os;
  os << "# profile=" << svt::format_profile(pr) << " split=" << split_to_string(sp) << " s=" << lo
     << " k=" << k << " total=" << total << " emitted=" << lines.size()
     << " truncated=" << (lines.size() < total ? 1 : 0) << '\n';
  for (const auto& l : lines) os << l << '\n';
  write_out(os.str(), opt.out);
  return 0;
}

int cmd_verify(const Common& opt, const std::string& equations_path) {
  const svt::FieldConfig cfg = field_config(opt);
  const auto [lo, hi] = parse_srange(opt.srange);
  if (lo != hi) throw std::invalid_argument("verify: a single s is required");
  const int s = lo;
  std::ostringstream os;
  bool all_ok = true;

  if (!equations_path.empty()) {
    std::ifstream in(equations_path);
    if (!in) throw std::runtime_error("cannot open equations file '" + equations_path + "'");
    std::string line;
    std::string profile_str = opt.profile;
    std::vector<std::string> poly_lines;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line[0] == '#') {
        const auto pos = line.find("profile=");
        if (pos != std::string::npos) {
          const auto end = line.find(' ', pos);
          profile_str = line.substr(pos + 8, end == std::string::npos ? std::string::npos : end - pos - 8);
        }
        continue;
      }
      poly_lines.push_back(line);
    }
    if (profile_str.empty())
      throw std::invalid_argument("verify: no profile (neither -p nor a file header)");
    const svt::FactorProfile pr = svt::parse_profile(profile_str);
    const svt::CoordTables tables(pr);
    std::vector<svt::SparsePoly> polys;
    polys.reserve(poly_lines.size());
    for (const auto& l : poly_lines) polys.push_back(svt::poly_from_string(l, tables));

    const bool vanish = svt::verify_vanishing(polys, pr, s, cfg);
    all_ok = vanish;
    os << "vanishing on sigma_" << s << " samples: " << (vanish ? "yes" : "NO") << "  (" << polys.size()
       << " polynomials)\n";
    bool uniform = !polys.empty();
    for (const auto& p : polys)
      if (p.degree() != polys.front().degree()) uniform = false;
    if (uniform) {
      os << "independent count: " << svt::independent_count(polys, pr, cfg) << " of " << polys.size()
         << '\n';
    } else {
      os << "independent count: skipped (mixed degrees)\n";
    }
  } else if (!opt.split.empty()) {
    const svt::FactorProfile pr = svt::parse_profile(opt.profile);
    const svt::Split sp = parse_split(opt.split, pr.factors.size());
    const auto rep = svt::verify_rank_bound(pr, sp, s, cfg);
    all_ok = rep.ok;
    os << "rank bound on sigma_" << s << " samples: " << (rep.ok ? "holds" : "VIOLATED")
       << "  max rank " << rep.max_rank << " <= " << s;
    if (!rep.constrained) os << "  [no constraint: s >= matrix size]";
    os << '\n';
  } else {
    throw std::invalid_argument("verify: need --equations FILE or --split");
  }
  write_out(os.str(), opt.out);
  return all_ok ? 0 : 2;
}

int cmd_degree(int a, int b, int s, const Common& opt) {
  const std::uint64_t deg = svt::giambelli_degree(a, b, s);
  if (opt.format == "json") {
    svt::json j;
    j["schema"] = 1;
    j["command"] = "degree";
    j["a"] = a;
    j["b"] = b;
    j["s"] = s;
    j["degree"] = deg;
    write_out(j.dump(2) + "\n", opt.out);
  } else {
    write_out(std::to_string(deg) + "\n", opt.out);
  }
  return 0;
}

int cmd_delpezzo(const Common& opt) {
  const svt::FieldConfig cfg = field_config(opt);
  const svt::DelPezzoReport rep = svt::delpezzo_report(cfg);
  if (opt.format == "json") {
    svt::json j = svt::run_envelope("delpezzo", cfg);
    j.update(svt::to_json(rep));
    write_out(j.dump(2) + "\n", opt.out);
  } else if (opt.format == "csv") {
    write_out(svt::delpezzo_csv(rep), opt.out);
  } else {
    write_out(svt::delpezzo_text(rep), opt.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) try {
  CLI::App app{"secant varieties of Segre-Veronese varieties: flattenings, minors, dimensions"};
  app.require_subcommand(1);

  Common a_opt, f_opt, e_opt, v_opt, d_opt, dp_opt;
  std::string equations_path;
  int deg_a = 0, deg_b = 0, deg_s = 0;

  auto* analyze = app.add_subcommand("analyze", "expected/oracle dimensions, defects, case labels");
  add_common(analyze, a_opt);
  analyze->add_option("-s,--secant", a_opt.srange, "secant index or range a..b");

  auto* flatten = app.add_subcommand("flatten", "print a flattening matrix or the split census");
  add_common(flatten, f_opt);
  flatten->add_option("--split", f_opt.split, "per-factor row degrees, e.g. 1,1,0");
  flatten->add_flag("--allow-degenerate", f_opt.allow_degenerate,
                    "permit splits with an empty side");

  auto* equations = app.add_subcommand("equations", "emit (s+1)-minor equations for sigma_s");
  add_common(equations, e_opt);
  equations->add_option("-s,--secant", e_opt.srange, "secant index");
  equations->add_option("--split", e_opt.split, "per-factor row degrees");

  auto* verify = app.add_subcommand("verify", "check vanishing/rank bounds at secant samples");
  add_common(verify, v_opt);
  verify->add_option("-s,--secant", v_opt.srange, "secant index");
  verify->add_option("--split", v_opt.split, "per-factor row degrees");
  verify->add_option("--equations", equations_path, "polynomial file produced by `equations`");

  auto* degree = app.add_subcommand("degree", "Giambelli degree of sigma_s of P^a x P^b");
  add_common(degree, d_opt, /*with_profile=*/false);
  degree->add_option("a", deg_a, "first factor dimension")->required();
  degree->add_option("b", deg_b, "second factor dimension")->required();
  degree->add_option("s", deg_s, "secant index")->required();

  auto* delpezzo = app.add_subcommand("delpezzo", "Del Pezzo surface suite");
  add_common(delpezzo, dp_opt, /*with_profile=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the message or help text
    return code == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(a_opt);
    if (flatten->parsed()) return cmd_flatten(f_opt);
    if (equations->parsed()) return cmd_equations(e_opt);
    if (verify->parsed()) return cmd_verify(v_opt, equations_path);
    if (degree->parsed()) return cmd_degree(deg_a, deg_b, deg_s, d_opt);
    if (delpezzo->parsed()) return cmd_delpezzo(dp_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
} catch (const std::exception& e) {
  std::cerr << "error: " << e.what() << '\n';
  return 1;
}
