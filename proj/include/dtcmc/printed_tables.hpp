#pragma once

#include <array>
#include <string>
#include <vector>

#include "dtcmc/converter.hpp"

namespace dtcmc {

// Reference tables as published, kept verbatim (typos included) so that the
// generated tables can be audited against them.

// One row of the published configuration table. Voltage entries are "0",
// "U_xy" or "-U_xy" with U_xy = v_x - v_y; current entries are "0", "i_x" or
// "-i_x" where x names the OUTPUT phase current i_X.
struct PrintedTable2Row {
  int no;
  std::string letters;
  std::array<int, 9> switches;  // S_aA S_bA S_cA S_aB S_bB S_cB S_aC S_bC S_cC
  std::array<std::string, 3> line_voltages;   // U_AB U_BC U_CA
  std::array<std::string, 3> input_currents;  // i_a i_b i_c
};

const std::array<PrintedTable2Row, 27>& printed_table2();

// Published fixed-frequency switching table, rows V1..V6, V0, V7 and columns
// input sectors I..VI. Each cell is "xyz, xyz".
struct PrintedTable3Row {
  VsiVector vector;
  std::array<std::string, 6> cells;
};

const std::array<PrintedTable3Row, 8>& printed_table3();

struct Table2Finding {
  int row;
  std::string field;  // "letters", "line_voltages", "input_currents", "duplicate_letters"
  std::string printed;
  std::string generated;
};

struct Table2Concordance {
  std::vector<Table2Finding> findings;
  // Rows whose every column agrees with the port equations.
  std::vector<int> consistent_rows;
};

/// Checks every published row against v_o = M v_i and i_i = M^T i_o. The
/// switch columns identify the configuration; letters, voltages and currents
/// are then compared with the generated values.
Table2Concordance check_table2();

}  // namespace dtcmc
