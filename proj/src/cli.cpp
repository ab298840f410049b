#include "upb/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "upb/basis.hpp"
#include "upb/catalog.hpp"
#include "upb/coarse.hpp"
#include "upb/gme.hpp"
#include "upb/jsonio.hpp"
#include "upb/ppt_state.hpp"
#include "upb/reproduce.hpp"
#include "upb/uom.hpp"

namespace upb {
namespace cli {

namespace {

double parse_angle_token(const std::string& tok) {
  if (tok == "pi") return M_PI;
  const auto fail = [&tok]() {
    throw std::invalid_argument("bad angle token '" + tok +
                                "'; use a decimal, pi, or pi/N");
  };
  if (tok.rfind("pi/", 0) == 0) {
    const std::string den = tok.substr(3);
    std::size_t pos = 0;
    double d = 0.0;
    try {
      d = std::stod(den, &pos);
    } catch (const std::exception&) {
      fail();
    }
    if (pos != den.size() || d == 0.0) fail();
    return M_PI / d;
  }
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    fail();
  }
  if (pos != tok.size()) fail();
  return v;
}

void validate_angles(const AngleAssignment& a) {
  for (double th : {a.alpha, a.beta, a.gamma, a.delta})
    if (!(th > 0.0 && th < M_PI / 2))
      throw std::invalid_argument(
          "angles must lie strictly inside (0, pi/2)");
}

AngleAssignment parse_angles(const std::string& csv) {
  std::vector<std::string> toks;
  std::string cur;
  for (char ch : csv) {
    if (ch == ',') {
      toks.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  toks.push_back(cur);
  if (toks.size() != 4)
    throw std::invalid_argument(
        "--angles needs four comma-separated values (alpha,beta,gamma,"
        "delta)");
  AngleAssignment a{parse_angle_token(toks[0]), parse_angle_token(toks[1]),
                    parse_angle_token(toks[2]), parse_angle_token(toks[3])};
  validate_angles(a);
  return a;
}

AngleAssignment pick_angles(const std::string& flag,
                            const std::optional<AngleAssignment>& binding,
                            const AngleAssignment& fallback) {
  if (!flag.empty()) return parse_angles(flag);
  if (binding) {
    validate_angles(*binding);
    return *binding;
  }
  return fallback;
}

// A basis from --in (symbolic or numeric document) or --builtin. A symbolic
// matrix that exists but fails orthogonality at the chosen angles is a
// negative verdict, not a usage error, so that case surfaces as exit 1.
ProductBasis resolve_basis(const std::string& in_path,
                           const std::string& builtin_name,
                           const std::string& angles_flag,
                           const AngleAssignment& fallback, bool& ortho_fail,
                           std::string& fail_message) {
  ortho_fail = false;
  SymbolicUOM uom;
  bool symbolic = false;
  if (!builtin_name.empty()) {
    uom = builtin(builtin_name).uom;
    symbolic = true;
  } else {
    const nlohmann::json doc = load_json_file(in_path);
    if (doc.is_object() && doc.contains("rows")) {
      uom = uom_from_json(doc);
      symbolic = true;
    } else if (doc.is_object() && doc.contains("vectors")) {
      return basis_from_json(doc);
    } else {
      throw std::invalid_argument(
          "input must contain 'rows' (symbolic matrix) or 'vectors' "
          "(numeric basis)");
    }
  }
  const AngleAssignment angles =
      pick_angles(angles_flag, uom.binding, fallback);
  try {
    return instantiate(uom, angles);
  } catch (const std::invalid_argument& e) {
    ortho_fail = true;
    fail_message = e.what();
    return ProductBasis{};
  }
}

void print_witness_text(std::ostream& out, const ProductVector& w) {
  out << "witness components:\n";
  for (std::size_t p = 0; p < w.components.size(); ++p) {
    out << "  [" << p << "]";
    for (Eigen::Index i = 0; i < w.components[p].size(); ++i) {
      const cxd z = w.components[p](i);
      out << "  " << std::setprecision(10) << z.real();
      if (z.imag() != 0.0) out << (z.imag() > 0 ? "+" : "") << z.imag() << "i";
    }
    out << "\n";
  }
}

nlohmann::json witness_json(const ProductVector& w) {
  nlohmann::json j = nlohmann::json::array();
  for (const Vec& comp : w.components) {
    nlohmann::json c = nlohmann::json::array();
    for (Eigen::Index i = 0; i < comp.size(); ++i)
      c.push_back({comp(i).real(), comp(i).imag()});
    j.push_back(std::move(c));
  }
  return j;
}

void emit(std::ostream& out, const std::string& out_path,
          const nlohmann::json& j) {
  if (out_path.empty())
    out << j.dump(2) << "\n";
  else
    write_json_file(out_path, j);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"unextendible product bases, coarse grainings, and the "
               "rank-seven family state",
               "upb"};
  app.require_subcommand(1);

  std::string in_path, builtin_name, angles_flag, cut, out_path, table_path;
  std::string equiv_a, equiv_b, upb_source = "size9-11th", rho_path;
  bool json_flag = false, list_flag = false, verify_flag = false;
  bool all_flag = false, timings_flag = false;
  long budget = 1000000;
  int restarts = 64;
  std::uint64_t seed = 0;
  double tol_ppt = 1e-10, tol_gme = 1e-12;

  CLI::App* c_check =
      app.add_subcommand("check", "orthogonality and unextendibility of a "
                                  "product basis");
  c_check->add_option("--in", in_path, "basis or symbolic-matrix JSON file");
  c_check->add_option("--builtin", builtin_name, "bundled entry name");
  c_check->add_option("--angles", angles_flag,
                      "alpha,beta,gamma,delta (decimals, pi, or pi/N)");
  c_check->add_flag("--json", json_flag, "JSON output");

  CLI::App* c_coarse = app.add_subcommand(
      "coarse", "verdicts across coarse grainings of a product basis");
  c_coarse->add_option("--in", in_path, "basis or symbolic-matrix JSON file");
  c_coarse->add_option("--builtin", builtin_name, "bundled entry name");
  c_coarse->add_option("--angles", angles_flag,
                       "alpha,beta,gamma,delta (decimals, pi, or pi/N)");
  c_coarse->add_option("--cut", cut, "single partition, e.g. AB|C|D");
  c_coarse->add_flag("--json", json_flag, "JSON output");

  CLI::App* c_equiv = app.add_subcommand(
      "equiv", "search for a transformation chain between two matrices");
  c_equiv->add_option("a", equiv_a, "first symbolic-matrix JSON file")
      ->required();
  c_equiv->add_option("b", equiv_b, "second symbolic-matrix JSON file")
      ->required();
  c_equiv->add_option("--budget", budget, "search node budget");
  c_equiv->add_flag("--json", json_flag, "JSON output");

  CLI::App* c_catalog =
      app.add_subcommand("catalog", "bundled entries and external tables");
  c_catalog->add_flag("--list", list_flag, "list bundled entries");
  c_catalog->add_option("--load", table_path, "external table JSON file");
  c_catalog->add_flag("--verify", verify_flag,
                      "run the unextendibility search on each loaded entry");
  c_catalog->add_flag("--json", json_flag, "JSON output");

  CLI::App* c_rho = app.add_subcommand(
      "rho", "complement state of a product basis as a JSON document");
  c_rho->add_option("--upb", upb_source,
                    "bundled entry name or basis/matrix JSON file");
  c_rho->add_option("--angles", angles_flag,
                    "alpha,beta,gamma,delta (default pi/4 each)");
  c_rho->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* c_ppt = app.add_subcommand(
      "ppt", "partial-transpose check of a state document");
  c_ppt->add_option("--rho", rho_path, "state JSON file")->required();
  c_ppt->add_option("--cut", cut, "bipartition, e.g. AB|CD")->required();
  c_ppt->add_option("--tol", tol_ppt, "eigenvalue tolerance");
  c_ppt->add_flag("--json", json_flag, "JSON output");

  CLI::App* c_gme = app.add_subcommand(
      "gme", "see-saw maximization of the product overlap");
  c_gme->add_option("--rho", rho_path, "state JSON file")->required();
  c_gme->add_option("--cut", cut, "partition (default A|B|C|D)");
  c_gme->add_option("--restarts", restarts, "random restarts");
  c_gme->add_option("--seed", seed, "random seed");
  c_gme->add_option("--tol", tol_gme, "convergence tolerance");
  c_gme->add_flag("--json", json_flag, "JSON output");

  CLI::App* c_repro =
      app.add_subcommand("reproduce", "run the full claim suite");
  c_repro->add_flag("--all", all_flag, "run every claim");
  c_repro->add_option("--table", table_path,
                      "external size-9 table used by the counting claim");
  c_repro->add_flag("--json", json_flag, "JSON output");
  c_repro->add_flag("--timings", timings_flag,
                    "include per-claim runtimes in JSON output");
  c_repro->add_option("--out", out_path, "output file (default stdout)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (app.got_subcommand(c_check) || app.got_subcommand(c_coarse)) {
      if (in_path.empty() == builtin_name.empty())
        throw std::invalid_argument(
            "give exactly one of --in or --builtin");
      bool ortho_fail = false;
      std::string fail_message;
      const ProductBasis basis =
          resolve_basis(in_path, builtin_name, angles_flag, generic_angles(),
                        ortho_fail, fail_message);
      if (!ortho_fail) {
        const OrthogonalityReport rep = check_pairwise_orthogonality(basis);
        if (!rep.orthogonal) {
          ortho_fail = true;
          std::ostringstream os;
          os << "members " << rep.worst_i << " and " << rep.worst_j
             << " are not orthogonal (overlap " << rep.max_overlap << ")";
          fail_message = os.str();
        }
      }
      if (ortho_fail) {
        if (json_flag)
          out << nlohmann::json{{"orthogonal", false},
                                {"error", fail_message}}
                     .dump(2)
              << "\n";
        else
          out << "not orthogonal: " << fail_message << "\n";
        return 1;
      }

      if (app.got_subcommand(c_check)) {
        const ExtendibilityVerdict v = check_unextendible(basis);
        if (json_flag) {
          nlohmann::json j;
          j["orthogonal"] = true;
          j["unextendible"] = v.unextendible;
          if (v.witness) j["witness"] = witness_json(*v.witness);
          out << j.dump(2) << "\n";
        } else {
          out << (v.unextendible ? "unextendible" : "extendible") << "\n";
          if (v.witness) print_witness_text(out, *v.witness);
        }
        return v.unextendible ? 0 : 1;
      }

      // coarse
      if (!cut.empty()) {
        const CoarsePartition partition = parse_partition(cut, basis.layout);
        const ProductBasis merged = coarse_grain(basis, partition);
        ExtendibilityVerdict v;
        if (auto quick = small_system_shortcut(merged))
          v = *quick;
        else
          v = check_unextendible(merged);
        if (json_flag) {
          nlohmann::json j;
          j["partition"] = partition.str();
          j["unextendible"] = v.unextendible;
          if (v.witness) j["witness"] = witness_json(*v.witness);
          out << j.dump(2) << "\n";
        } else {
          out << partition.str() << ": "
              << (v.unextendible ? "unextendible" : "extendible") << "\n";
          if (v.witness) print_witness_text(out, *v.witness);
        }
        return v.unextendible ? 0 : 1;
      }
      const GrainingReport report = classify_upb_across_grainings(basis);
      if (json_flag) {
        out << graining_report_to_json(report).dump(2) << "\n";
      } else {
        for (const PartitionVerdict& v : report.verdicts)
          out << std::left << std::setw(10) << v.partition.str()
              << (v.unextendible ? "unextendible" : "extendible")
              << (v.via_shortcut ? " (small-system rule)" : "") << "\n";
        out << "2x2x4 graining keeps it a UPB: "
            << (report.in_u224 ? "yes" : "no") << "\n";
        out << "4x4 graining keeps it a UPB: "
            << (report.in_u44 ? "yes" : "no") << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_equiv)) {
      const SymbolicUOM a = uom_from_json(load_json_file(equiv_a));
      const SymbolicUOM b = uom_from_json(load_json_file(equiv_b));
      const auto steps = equivalent(a, b, budget);
      if (!steps) {
        if (json_flag)
          out << nlohmann::json{{"found", false}}.dump(2) << "\n";
        else
          out << "no chain found within budget\n";
        return 1;
      }
      if (json_flag) {
        nlohmann::json j;
        j["found"] = true;
        nlohmann::json list = nlohmann::json::array();
        for (const TransformStep& s : *steps) list.push_back(step_str(s));
        j["steps"] = std::move(list);
        out << j.dump(2) << "\n";
      } else {
        if (steps->empty()) out << "matrices are identical\n";
        for (const TransformStep& s : *steps) out << step_str(s) << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_catalog)) {
      if (list_flag == !table_path.empty())
        throw std::invalid_argument("give exactly one of --list or --load");
      if (list_flag) {
        if (json_flag) {
          nlohmann::json j = nlohmann::json::array();
          for (const std::string& name : builtin_names()) {
            const CatalogEntry e = builtin(name);
            j.push_back({{"name", e.name},
                         {"size", e.size},
                         {"parties", e.uom.width()},
                         {"provenance", e.provenance}});
          }
          out << j.dump(2) << "\n";
        } else {
          for (const std::string& name : builtin_names()) {
            const CatalogEntry e = builtin(name);
            out << std::left << std::setw(12) << e.name << e.size
                << " members, " << e.uom.width() << " parties\n";
          }
        }
        return 0;
      }
      const std::vector<CatalogEntry> entries =
          load_table(table_path, verify_flag);
      if (json_flag) {
        nlohmann::json j = nlohmann::json::array();
        for (const CatalogEntry& e : entries)
          j.push_back({{"name", e.name},
                       {"size", e.size},
                       {"parties", e.uom.width()},
                       {"provenance", e.provenance}});
        out << j.dump(2) << "\n";
      } else {
        out << "loaded " << entries.size() << " entries"
            << (verify_flag ? " (unextendibility verified)" : "") << "\n";
        for (const CatalogEntry& e : entries)
          out << "  " << e.name << ": " << e.size << " members\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_rho)) {
      const AngleAssignment fallback = {M_PI / 4, M_PI / 4, M_PI / 4,
                                        M_PI / 4};
      DensityMatrix rho;
      const std::vector<std::string> names = builtin_names();
      const bool is_builtin =
          std::find(names.begin(), names.end(), upb_source) != names.end();
      if (upb_source == "size9-11th") {
        const AngleAssignment angles =
            angles_flag.empty() ? fallback : parse_angles(angles_flag);
        rho = build_rho_family(angles);
      } else if (is_builtin) {
        const CatalogEntry e = builtin(upb_source);
        const AngleAssignment angles =
            pick_angles(angles_flag, e.uom.binding, fallback);
        rho = build_rho(instantiate(e.uom, angles));
      } else {
        bool ortho_fail = false;
        std::string fail_message;
        const ProductBasis basis =
            resolve_basis(upb_source, "", angles_flag, fallback, ortho_fail,
                          fail_message);
        if (ortho_fail) {
          err << "error: " << fail_message << "\n";
          return 1;
        }
        rho = build_rho(basis);
      }
      emit(out, out_path, rho_to_json(rho));
      return 0;
    }

    if (app.got_subcommand(c_ppt)) {
      const DensityMatrix rho = rho_from_json(load_json_file(rho_path));
      const CoarsePartition partition = parse_partition(cut, rho.layout);
      const PptReport rep = is_ppt(rho, partition, tol_ppt);
      if (json_flag)
        out << nlohmann::json{{"cut", partition.str()},
                              {"ppt", rep.ppt},
                              {"min_eigenvalue", rep.min_eigenvalue}}
                   .dump(2)
            << "\n";
      else
        out << partition.str() << ": "
            << (rep.ppt ? "PPT" : "not PPT") << " (min eigenvalue "
            << std::setprecision(10) << rep.min_eigenvalue << ")\n";
      return rep.ppt ? 0 : 1;
    }

    if (app.got_subcommand(c_gme)) {
      const DensityMatrix rho = rho_from_json(load_json_file(rho_path));
      const std::string cut_str = cut.empty() ? "A|B|C|D" : cut;
      const CoarsePartition partition =
          parse_partition(cut_str, rho.layout);
      const GmeResult res =
          seesaw_maximize(rho, partition, restarts, 500, tol_gme, seed);
      if (json_flag) {
        out << gme_result_to_json(res).dump(2) << "\n";
      } else {
        out << "max overlap " << std::setprecision(12) << res.max_overlap
            << "\nG " << res.G << " ebits\nrestarts " << res.restarts_used
            << ", sweeps " << res.converged_iterations << "\n";
      }
      return 0;
    }

    // reproduce
    if (!all_flag)
      throw std::invalid_argument("reproduce needs --all");
    const std::optional<std::string> table =
        table_path.empty() ? std::nullopt
                           : std::optional<std::string>(table_path);
    const ReproductionReport report = run_reproduction(table);
    if (json_flag)
      emit(out, out_path, report_to_json(report, timings_flag));
    else if (out_path.empty())
      out << report_text(report);
    else {
      std::ofstream f(out_path);
      if (!f.good())
        throw std::runtime_error("cannot write file '" + out_path + "'");
      f << report_text(report);
    }
    return report.all_pass ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cli
}  // namespace upb
