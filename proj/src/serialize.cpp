#include "gaussbm/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace gaussbm {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const SweepTable& table) {
  out << "n,R,value,err";
  for (const auto& name : table.extra_columns) out << ',' << name;
  out << '\n';
  for (const auto& row : table.rows) {
    out << row.n << ',' << format_number(row.R) << ',' << format_number(row.value)
        << ',' << format_number(row.err);
    for (double x : row.extras) out << ',' << format_number(x);
    out << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<ReproRow>& rows) {
  out << "name,computed,reference,discrepancy,tolerance,status\n";
  for (const auto& row : rows) {
    out << row.name << ',' << format_number(row.computed) << ','
        << format_number(row.reference) << ',' << format_number(row.discrepancy)
        << ',' << format_number(row.tolerance) << ',' << (row.ok ? "ok" : "fail")
        << '\n';
  }
}

std::string direction_name(Direction d) {
  return d == Direction::Convexity ? "convex" : "concave";
}

nlohmann::json to_json(const NumResult& r) {
  return {{"value", r.value}, {"err", r.err}};
}

nlohmann::json to_json(const EigenResult& r) {
  return {{"lambda", r.lambda},
          {"residual", r.residual},
          {"bracket_lo", r.bracket.first},
          {"bracket_hi", r.bracket.second}};
}

nlohmann::json to_json(const AuxQuantities& q) {
  return {{"I", q.I},       {"I_prime", q.I_prime}, {"h", q.h},
          {"h_prime", q.h_prime}, {"p", q.p},     {"p_prime", q.p_prime},
          {"J", q.J},       {"J_err", q.J_err},     {"v", q.v},
          {"v_prime", q.v_prime}};
}

nlohmann::json to_json(const BmReport& r) {
  nlohmann::json j = {{"t", r.t},
                      {"value0", r.value0},
                      {"value1", r.value1},
                      {"value_t", r.value_t},
                      {"transform", r.transform.name()},
                      {"direction", direction_name(r.direction)},
                      {"lhs", r.lhs},
                      {"rhs", r.rhs},
                      {"deficit", r.deficit},
                      {"err", r.err}};
  if (r.transform.kind() == Transform::Kind::Power) j["exponent"] = r.transform.exponent();
  return j;
}

nlohmann::json to_json(const ReproRow& row) {
  nlohmann::json j = {{"name", row.name},
                      {"description", row.description},
                      {"computed", row.computed},
                      {"reference", row.reference},
                      {"discrepancy", row.discrepancy},
                      {"tolerance", row.tolerance},
                      {"relative", row.relative},
                      {"ok", row.ok}};
  if (!row.error.empty()) j["error"] = row.error;
  return j;
}

nlohmann::json to_json(const SweepTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json j = {{"n", row.n}, {"R", row.R}, {"value", row.value}, {"err", row.err}};
    for (std::size_t i = 0; i < row.extras.size(); ++i) {
      j[table.extra_columns[i]] = row.extras[i];
    }
    if (!row.error.empty()) j["error"] = row.error;
    rows.push_back(std::move(j));
  }
  return rows;
}

}  // namespace gaussbm
