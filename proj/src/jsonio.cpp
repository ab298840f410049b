#include "upb/jsonio.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace upb {

namespace {

using nlohmann::json;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

json complex_pair(const cxd& z) { return json::array({z.real(), z.imag()}); }

cxd pair_to_complex(const json& j, const std::string& where) {
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
          where + ": amplitude must be a [re, im] pair");
  return cxd(j[0].get<double>(), j[1].get<double>());
}

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_pair(v(i)));
  return out;
}

Vec vec_from_json(const json& j, int expect_dim, const std::string& where) {
  require(j.is_array(), where + ": expected an array of amplitudes");
  if (expect_dim >= 0)
    require(static_cast<int>(j.size()) == expect_dim,
            where + ": expected " + std::to_string(expect_dim) +
                " amplitudes, got " + std::to_string(j.size()));
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) =
        pair_to_complex(j[i], where + ", amplitude " + std::to_string(i));
  return v;
}

double number_field(const json& j, const std::string& key,
                    const std::string& where) {
  require(j.contains(key) && j[key].is_number(),
          where + ": missing numeric field '" + key + "'");
  return j[key].get<double>();
}

}  // namespace

json uom_to_json(const SymbolicUOM& uom) {
  json rows = json::array();
  for (const std::vector<Symbol>& row : uom.rows) {
    json r = json::array();
    for (const Symbol& s : row) r.push_back(symbol_str(s));
    rows.push_back(std::move(r));
  }
  json j;
  j["rows"] = std::move(rows);
  if (uom.binding) {
    j["angles"] = {{"alpha", uom.binding->alpha},
                   {"beta", uom.binding->beta},
                   {"gamma", uom.binding->gamma},
                   {"delta", uom.binding->delta}};
  }
  return j;
}

SymbolicUOM uom_from_json(const json& j) {
  require(j.is_object(), "UOM document must be a JSON object");
  require(j.contains("rows") && j["rows"].is_array() && !j["rows"].empty(),
          "UOM document needs a nonempty 'rows' array");
  SymbolicUOM uom;
  std::size_t width = 0;
  for (std::size_t r = 0; r < j["rows"].size(); ++r) {
    const json& jrow = j["rows"][r];
    require(jrow.is_array() && !jrow.empty(),
            "row " + std::to_string(r) + ": expected a nonempty array");
    if (r == 0)
      width = jrow.size();
    else
      require(jrow.size() == width,
              "row " + std::to_string(r) + ": expected " +
                  std::to_string(width) + " symbols, got " +
                  std::to_string(jrow.size()));
    std::vector<Symbol> row;
    for (std::size_t c = 0; c < jrow.size(); ++c) {
      require(jrow[c].is_string(), "row " + std::to_string(r) + ", column " +
                                       std::to_string(c) +
                                       ": symbol must be a string");
      try {
        row.push_back(parse_symbol(jrow[c].get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("row " + std::to_string(r) + ", column " +
                                    std::to_string(c) + ": " + e.what());
      }
    }
    uom.rows.push_back(std::move(row));
  }
  if (j.contains("angles")) {
    const json& ja = j["angles"];
    require(ja.is_object(), "'angles' must be an object");
    AngleAssignment a;
    a.alpha = number_field(ja, "alpha", "'angles'");
    a.beta = number_field(ja, "beta", "'angles'");
    a.gamma = number_field(ja, "gamma", "'angles'");
    a.delta = number_field(ja, "delta", "'angles'");
    uom.binding = a;
  }
  return uom;
}

json basis_to_json(const ProductBasis& basis) {
  json j;
  j["layout"] = basis.layout.dims;
  j["labels"] = basis.layout.labels;
  json vectors = json::array();
  for (const ProductVector& m : basis.members) {
    json member = json::array();
    for (const Vec& comp : m.components) member.push_back(vec_to_json(comp));
    vectors.push_back(std::move(member));
  }
  j["vectors"] = std::move(vectors);
  return j;
}

ProductBasis basis_from_json(const json& j) {
  require(j.is_object(), "basis document must be a JSON object");
  require(j.contains("layout") && j["layout"].is_array() &&
              !j["layout"].empty(),
          "basis document needs a nonempty 'layout' array");
  std::vector<int> dims;
  for (std::size_t p = 0; p < j["layout"].size(); ++p) {
    const json& d = j["layout"][p];
    require(d.is_number_integer() && d.get<int>() >= 1,
            "layout entry " + std::to_string(p) +
                ": dimensions must be integers >= 1");
    dims.push_back(d.get<int>());
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    require(j["labels"].is_array() && j["labels"].size() == dims.size(),
            "'labels' must list one name per party");
    for (std::size_t p = 0; p < j["labels"].size(); ++p) {
      require(j["labels"][p].is_string(),
              "label " + std::to_string(p) + ": must be a string");
      labels.push_back(j["labels"][p].get<std::string>());
    }
  } else {
    for (std::size_t p = 0; p < dims.size(); ++p)
      labels.push_back(std::string(1, static_cast<char>('A' + p)));
  }

  require(j.contains("vectors") && j["vectors"].is_array() &&
              !j["vectors"].empty(),
          "basis document needs a nonempty 'vectors' array");
  ProductBasis basis;
  basis.layout = make_layout(dims, labels);
  for (std::size_t m = 0; m < j["vectors"].size(); ++m) {
    const json& jm = j["vectors"][m];
    const std::string where = "member " + std::to_string(m);
    require(jm.is_array() && jm.size() == dims.size(),
            where + ": expected one component per party");
    std::vector<Vec> comps;
    for (std::size_t p = 0; p < dims.size(); ++p)
      comps.push_back(vec_from_json(
          jm[p], dims[p], where + ", party " + std::to_string(p)));
    try {
      basis.members.push_back(make_product_vector(comps));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }
  return basis;
}

json rho_to_json(const DensityMatrix& rho) {
  json j;
  j["dim"] = rho.layout.total_dim();
  j["layout"] = rho.layout.dims;
  j["labels"] = rho.layout.labels;
  j["source"] = rho.source;
  json entries = json::array();
  for (Eigen::Index r = 0; r < rho.op.rows(); ++r)
    for (Eigen::Index c = 0; c < rho.op.cols(); ++c)
      entries.push_back(complex_pair(rho.op(r, c)));
  j["entries"] = std::move(entries);
  return j;
}

DensityMatrix rho_from_json(const json& j) {
  require(j.is_object(), "state document must be a JSON object");
  require(j.contains("layout") && j["layout"].is_array() &&
              !j["layout"].empty(),
          "state document needs a nonempty 'layout' array");
  std::vector<int> dims;
  for (std::size_t p = 0; p < j["layout"].size(); ++p) {
    const json& d = j["layout"][p];
    require(d.is_number_integer() && d.get<int>() >= 1,
            "layout entry " + std::to_string(p) +
                ": dimensions must be integers >= 1");
    dims.push_back(d.get<int>());
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    require(j["labels"].is_array() && j["labels"].size() == dims.size(),
            "'labels' must list one name per party");
    for (std::size_t p = 0; p < j["labels"].size(); ++p) {
      require(j["labels"][p].is_string(),
              "label " + std::to_string(p) + ": must be a string");
      labels.push_back(j["labels"][p].get<std::string>());
    }
  } else {
    for (std::size_t p = 0; p < dims.size(); ++p)
      labels.push_back(std::string(1, static_cast<char>('A' + p)));
  }

  DensityMatrix rho;
  rho.layout = make_layout(dims, labels);
  const long n = rho.layout.total_dim();
  if (j.contains("dim"))
    require(j["dim"].is_number_integer() && j["dim"].get<long>() == n,
            "'dim' does not match the layout product");
  require(j.contains("entries") && j["entries"].is_array(),
          "state document needs an 'entries' array");
  require(static_cast<long>(j["entries"].size()) == n * n,
          "'entries' must hold " + std::to_string(n * n) +
              " row-major amplitude pairs");
  rho.op = Mat(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c)
      rho.op(r, c) = pair_to_complex(
          j["entries"][static_cast<std::size_t>(r * n + c)],
          "entry (" + std::to_string(r) + "," + std::to_string(c) + ")");
  rho.source = j.contains("source") && j["source"].is_string()
                   ? j["source"].get<std::string>()
                   : "loaded";

  const double herm = (rho.op - rho.op.adjoint()).cwiseAbs().maxCoeff();
  require(herm <= 1e-12, "matrix is not Hermitian (deviation " +
                             std::to_string(herm) + ")");
  const double tr_err = std::abs(rho.op.trace() - cxd(1.0, 0.0));
  require(tr_err <= 1e-10, "matrix trace differs from 1 by " +
                               std::to_string(tr_err));
  const Eigensystem es = hermitian_eigensystem(rho.op);
  require(es.values.back() >= -1e-10,
          "matrix is not positive semidefinite (min eigenvalue " +
              std::to_string(es.values.back()) + ")");
  return rho;
}

json graining_report_to_json(const GrainingReport& report) {
  json parts = json::array();
  for (const PartitionVerdict& v : report.verdicts) {
    json p;
    p["partition"] = v.partition.str();
    p["dims"] = v.merged_layout.dims;
    p["unextendible"] = v.unextendible;
    p["via_shortcut"] = v.via_shortcut;
    if (v.witness) {
      json w = json::array();
      for (const Vec& comp : v.witness->components)
        w.push_back(vec_to_json(comp));
      p["witness"] = std::move(w);
    }
    parts.push_back(std::move(p));
  }
  json j;
  j["partitions"] = std::move(parts);
  j["in_u224"] = report.in_u224;
  j["in_u44"] = report.in_u44;
  return j;
}

json gme_result_to_json(const GmeResult& result) {
  json j;
  j["max_overlap"] = result.max_overlap;
  j["G_ebits"] = result.G;
  json argmax = json::array();
  for (const Vec& comp : result.argmax.components)
    argmax.push_back(vec_to_json(comp));
  j["argmax"] = std::move(argmax);
  j["layout"] = result.layout.dims;
  j["labels"] = result.layout.labels;
  j["restarts_used"] = result.restarts_used;
  j["converged_iterations"] = result.converged_iterations;
  return j;
}

json count_report_to_json(const CountReport& report) {
  json j;
  j["count_224"] = report.count_224;
  j["count_44"] = report.count_44;
  json wit = json::array();
  for (const PartitionWitness& w : report.witnessing)
    wit.push_back({{"entry", w.entry}, {"partition", w.partition}});
  j["witnessing"] = std::move(wit);
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("cannot parse '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out.good()) throw std::runtime_error("cannot write file '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace upb
