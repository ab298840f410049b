#include "upb/catalog.hpp"

#include <sstream>
#include <stdexcept>

#include "upb/basis.hpp"
#include "upb/coarse.hpp"
#include "upb/jsonio.hpp"

namespace upb {

namespace {

SymbolicUOM from_rows(const std::vector<std::string>& lines) {
  SymbolicUOM uom;
  for (const std::string& line : lines) {
    std::istringstream is(line);
    std::vector<Symbol> row;
    std::string tok;
    while (is >> tok) row.push_back(parse_symbol(tok));
    uom.rows.push_back(std::move(row));
  }
  return uom;
}

CatalogEntry bundled(const std::string& name,
                     const std::vector<std::string>& lines) {
  CatalogEntry e;
  e.name = name;
  e.uom = from_rows(lines);
  e.size = e.uom.size();
  e.provenance = "bundled-paper";
  return e;
}

}  // namespace

AngleAssignment generic_angles() { return {0.3, 0.7, 1.1, 0.4}; }

std::vector<std::string> builtin_names() {
  return {"size6", "size7", "threequbit", "size9-11th"};
}

CatalogEntry builtin(const std::string& name) {
  if (name == "size6")
    return bundled(name, {
                             "0  0  0  0",
                             "0  a  a  1",
                             "1  0  b  a",
                             "1  a  b' b",
                             "a  1  a' b'",
                             "a' a' 1  a'",
                         });
  if (name == "size7")
    return bundled(name, {
                             "0  0  0  0",
                             "0  a  a  1",
                             "0  a' 1  a",
                             "1  0  0  b",
                             "1  a' a  b'",
                             "a  a  1  0",
                             "a' 1  a' a'",
                         });
  if (name == "threequbit")
    return bundled(name, {
                             "0  0  0",
                             "1  a  a'",
                             "a' 1  a",
                             "a  a' 1",
                         });
  if (name == "size9-11th")
    return bundled(name, {
                             "0  0  1  a",
                             "0  1  a  0",
                             "0  a  0  1",
                             "1  1  0  a",
                             "1  a  1  0",
                             "1  0  a  1",
                             "a  0  0  0",
                             "a  1  1  1",
                             "a' a' a' a'",
                         });
  std::ostringstream os;
  os << "unknown catalog entry '" << name << "'; available:";
  for (const std::string& n : builtin_names()) os << " " << n;
  throw std::invalid_argument(os.str());
}

std::vector<CatalogEntry> load_table(const std::string& path,
                                     bool verify_unextendible) {
  const nlohmann::json doc = load_json_file(path);
  if (!doc.is_array() || doc.empty())
    throw std::invalid_argument(
        "table must be a nonempty JSON array of symbolic matrices");
  std::vector<CatalogEntry> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string ctx = "table entry " + std::to_string(i + 1);
    CatalogEntry e;
    e.name = "table-" + std::to_string(i + 1);
    e.provenance = "external-table";
    try {
      e.uom = uom_from_json(doc[i]);
    } catch (const std::invalid_argument& err) {
      throw std::invalid_argument(ctx + ": " + err.what());
    }
    e.size = e.uom.size();
    const AngleAssignment angles =
        e.uom.binding ? *e.uom.binding : generic_angles();
    ProductBasis basis;
    try {
      basis = instantiate(e.uom, angles);
    } catch (const std::invalid_argument& err) {
      throw std::runtime_error(ctx + ": " + err.what());
    }
    if (verify_unextendible && !check_unextendible(basis).unextendible)
      throw std::runtime_error(ctx + ": instantiated set is extendible");
    out.push_back(std::move(e));
  }
  return out;
}

CountReport reproduce_counts(const std::vector<CatalogEntry>& entries) {
  CountReport report;
  for (const CatalogEntry& e : entries) {
    if (e.uom.width() != 4)
      throw std::invalid_argument("entry " + e.name +
                                  ": counts are defined for four-party "
                                  "matrices only");
    const AngleAssignment angles =
        e.uom.binding ? *e.uom.binding : generic_angles();
    const ProductBasis basis = instantiate(e.uom, angles);
    const GrainingReport gr = classify_upb_across_grainings(basis);
    for (const PartitionVerdict& v : gr.verdicts) {
      if (!v.unextendible) continue;
      if (v.partition.blocks.size() == 3) {
        ++report.count_224;
        report.witnessing.push_back({e.name, v.partition.str()});
      } else if (v.partition.blocks.size() == 2 &&
                 v.partition.blocks[0].size() == 2) {
        ++report.count_44;
        report.witnessing.push_back({e.name, v.partition.str()});
      }
    }
  }
  return report;
}

std::vector<std::vector<ChainLink>> transformation_chains() {
  std::vector<std::vector<ChainLink>> chains;

  {
    std::vector<ChainLink> chain;
    chain.push_back({from_rows({
                         "0  0  0  0",
                         "0  1  a  a",
                         "0  a  1  a'",
                         "1  1  1  0",
                         "1  a  0  a",
                         "1  0  a  a'",
                         "a  0  1  a",
                         "a  1  0  a'",
                         "a' a' a' 1",
                     }),
                     {TransformStep::swap_pair(2, '0'),
                      TransformStep::relabel(3, 'a')}});
    chain.push_back({from_rows({
                         "0  0  1  a",
                         "0  1  a  0",
                         "0  a  0  1",
                         "1  1  0  a",
                         "1  a  1  0",
                         "1  0  a  1",
                         "a  0  0  0",
                         "a  1  1  1",
                         "a' a' a' a'",
                     }),
                     {TransformStep::column_permutation({0, 2, 3, 1})}});
    chain.push_back({from_rows({
                         "0  1  a  0",
                         "0  a  0  1",
                         "0  0  1  a",
                         "1  0  a  1",
                         "1  1  0  a",
                         "1  a  1  0",
                         "a  0  0  0",
                         "a  1  1  1",
                         "a' a' a' a'",
                     }),
                     {TransformStep::row_permutation(
                         {2, 0, 1, 4, 5, 3, 6, 7, 8})}});
    chain.push_back({from_rows({
                         "0  0  1  a",
                         "0  1  a  0",
                         "0  a  0  1",
                         "1  1  0  a",
                         "1  a  1  0",
                         "1  0  a  1",
                         "a  0  0  0",
                         "a  1  1  1",
                         "a' a' a' a'",
                     }),
                     {}});
    chains.push_back(std::move(chain));
  }

  {
    std::vector<ChainLink> chain;
    chain.push_back({builtin("size9-11th").uom,
                     {TransformStep::column_permutation({2, 3, 0, 1})}});
    chain.push_back({from_rows({
                         "1  a  0  0",
                         "a  0  0  1",
                         "0  1  0  a",
                         "0  a  1  1",
                         "1  0  1  a",
                         "a  1  1  0",
                         "0  0  a  0",
                         "1  1  a  1",
                         "a' a' a' a'",
                     }),
                     {TransformStep::row_permutation(
                         {6, 2, 3, 4, 0, 7, 1, 5, 8})}});
    chain.push_back({from_rows({
                         "0  0  a  0",
                         "0  1  0  a",
                         "0  a  1  1",
                         "1  0  1  a",
                         "1  a  0  0",
                         "1  1  a  1",
                         "a  0  0  1",
                         "a  1  1  0",
                         "a' a' a' a'",
                     }),
                     {TransformStep::column_permutation({0, 1, 3, 2})}});
    chain.push_back({from_rows({
                         "0  0  0  a",
                         "0  1  a  0",
                         "0  a  1  1",
                         "1  0  a  1",
                         "1  a  0  0",
                         "1  1  1  a",
                         "a  0  1  0",
                         "a  1  0  1",
                         "a' a' a' a'",
                     }),
                     {TransformStep::swap_pair(2, '0')}});
    chain.push_back({from_rows({
                         "0  0  1  a",
                         "0  1  a  0",
                         "0  a  0  1",
                         "1  0  a  1",
                         "1  a  1  0",
                         "1  1  0  a",
                         "a  0  0  0",
                         "a  1  1  1",
                         "a' a' a' a'",
                     }),
                     {TransformStep::row_permutation(
                         {0, 1, 2, 5, 4, 3, 6, 7, 8})}});
    chain.push_back({builtin("size9-11th").uom, {}});
    chains.push_back(std::move(chain));
  }

  return chains;
}

}  // namespace upb
