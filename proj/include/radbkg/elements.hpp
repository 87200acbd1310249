#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace radbkg {

// Z, molar mass (g/mol), mean excitation energy I (eV). Used for the Landau
// parameters of the deposit model; the stopping tables themselves come from
// the data files.
struct ElementData {
  int z;
  double a;
  double i_ev;
};

inline ElementData element_data(std::string_view symbol) {
  struct Row {
    std::string_view sym;
    ElementData d;
  };
  static constexpr Row rows[] = {
      {"H", {1, 1.008, 19.2}},        {"C", {6, 12.011, 78.0}},
      {"N", {7, 14.007, 82.0}},       {"O", {8, 15.999, 95.0}},
      {"Na", {11, 22.98977, 149.0}},  {"Mg", {12, 24.305, 156.0}},
      {"Al", {13, 26.9815385, 166.0}}, {"Si", {14, 28.0855, 173.0}},
      {"K", {19, 39.0983, 190.0}},    {"Ca", {20, 40.078, 191.0}},
      {"Fe", {26, 55.845, 286.0}},    {"Ga", {31, 69.723, 334.0}},
      {"As", {33, 74.9216, 347.0}},
  };
  for (const auto& r : rows)
    if (r.sym == symbol) return r.d;
  throw std::invalid_argument("unknown element '" + std::string(symbol) + "'");
}

}  // namespace radbkg
