#pragma once

#include <string>

#include "json.hpp"
#include "upb/basis.hpp"
#include "upb/catalog.hpp"
#include "upb/coarse.hpp"
#include "upb/gme.hpp"
#include "upb/ppt_state.hpp"
#include "upb/uom.hpp"

namespace upb {

// Readers validate shape and normalize amplitudes; all failures throw
// std::invalid_argument with enough context to locate the offending field.

nlohmann::json uom_to_json(const SymbolicUOM& uom);
SymbolicUOM uom_from_json(const nlohmann::json& j);

nlohmann::json basis_to_json(const ProductBasis& basis);
ProductBasis basis_from_json(const nlohmann::json& j);

nlohmann::json rho_to_json(const DensityMatrix& rho);
DensityMatrix rho_from_json(const nlohmann::json& j);

nlohmann::json graining_report_to_json(const GrainingReport& report);
nlohmann::json gme_result_to_json(const GmeResult& result);
nlohmann::json count_report_to_json(const CountReport& report);

nlohmann::json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace upb
