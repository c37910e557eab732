#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "gaussbm/bm_inequality.hpp"
#include "gaussbm/spectrum.hpp"
#include "gaussbm/torsion.hpp"
#include "json.hpp"

namespace gaussbm {

/// Decimal with 17 significant digits ("nan"/"inf" for non-finite values).
std::string format_number(double x);

/// Header `n,R,value,err[,extras...]`, one row per grid point, '\n' endings.
void write_csv(std::ostream& out, const SweepTable& table);
void write_csv(std::ostream& out, const std::vector<ReproRow>& rows);

nlohmann::json to_json(const NumResult& r);
nlohmann::json to_json(const EigenResult& r);
nlohmann::json to_json(const AuxQuantities& q);
nlohmann::json to_json(const BmReport& r);
nlohmann::json to_json(const ReproRow& row);
nlohmann::json to_json(const SweepTable& table);

std::string direction_name(Direction d);

}  // namespace gaussbm
