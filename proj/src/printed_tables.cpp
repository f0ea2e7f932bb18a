#include "dtcmc/printed_tables.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace dtcmc {

const std::array<PrintedTable2Row, 27>& printed_table2() {
  static const std::array<PrintedTable2Row, 27> rows{{
      {1, "aaa", {1, 0, 0, 1, 0, 0, 1, 0, 0}, {"0", "0", "0"}, {"0", "0", "0"}},
      {2, "bbb", {0, 1, 0, 0, 1, 0, 0, 1, 0}, {"0", "0", "0"}, {"0", "0", "0"}},
      {3, "ccc", {0, 0, 1, 0, 0, 1, 0, 0, 1}, {"0", "0", "0"}, {"0", "0", "0"}},
      {4, "acc", {1, 0, 0, 0, 0, 1, 0, 0, 1}, {"-U_ca", "0", "U_ca"}, {"i_a", "0", "-i_a"}},
      {5, "bcc", {0, 1, 0, 0, 0, 1, 0, 0, 1}, {"U_bc", "0", "-U_bc"}, {"0", "i_a", "-i_a"}},
      {6, "baa", {0, 1, 0, 1, 0, 0, 1, 0, 0}, {"-U_ab", "0", "U_ab"}, {"-i_a", "i_a", "0"}},
      {7, "caa", {0, 0, 1, 1, 0, 0, 1, 0, 0}, {"U_ca", "0", "-U_ca"}, {"-i_a", "0", "i_a"}},
      {8, "cbb", {0, 0, 1, 0, 1, 0, 0, 1, 0}, {"-U_bc", "0", "U_bc"}, {"0", "-i_a", "i_a"}},
      {9, "abb", {1, 0, 0, 0, 1, 0, 0, 1, 0}, {"U_ab", "0", "-U_ab"}, {"i_a", "-i_a", "0"}},
      {10, "cac", {0, 0, 1, 1, 0, 0, 0, 0, 1}, {"U_ca", "-U_ca", "0"}, {"i_b", "0", "-i_b"}},
      {11, "cbc", {0, 0, 1, 0, 1, 0, 0, 0, 1}, {"-U_bc", "U_bc", "0"}, {"0", "i_b", "-i_b"}},
      {12, "aba", {1, 0, 0, 0, 1, 0, 1, 0, 0}, {"U_ab", "-U_ab", "0"}, {"-i_b", "i_b", "0"}},
      {13, "aca", {1, 0, 0, 0, 0, 1, 1, 0, 0}, {"-U_ca", "U_ca", "0"}, {"-i_b", "0", "i_b"}},
      {14, "bcb", {0, 1, 0, 0, 0, 1, 0, 1, 0}, {"U_bc", "-U_bc", "0"}, {"0", "-i_b", "i_b"}},
      {15, "bab", {0, 1, 0, 1, 0, 0, 0, 1, 0}, {"-U_ab", "U_ab", "0"}, {"i_b", "-i_b", "0"}},
      {16, "cac", {0, 0, 1, 0, 0, 1, 1, 0, 0}, {"U_ca", "-U_ca", "0"}, {"i_c", "0", "-i_c"}},
      {17, "cbc", {0, 0, 1, 0, 0, 1, 0, 1, 0}, {"-U_bc", "U_bc", "0"}, {"i_c", "0", "-i_c"}},
      {18, "aab", {1, 0, 0, 1, 0, 0, 0, 1, 0}, {"0", "U_ab", "-U_ab"}, {"-i_c", "i_c", "0"}},
      {19, "aac", {1, 0, 0, 1, 0, 0, 0, 0, 1}, {"0", "-U_ca", "U_ca"}, {"-i_c", "0", "i_c"}},
      {20, "bbc", {0, 1, 0, 0, 1, 0, 0, 0, 1}, {"0", "U_bc", "-U_bc"}, {"0", "-i_c", "i_c"}},
      {21, "bba", {0, 1, 0, 0, 1, 0, 1, 0, 0}, {"0", "-U_ab", "U_ab"}, {"i_c", "-i_c", "0"}},
      {22, "abc", {1, 0, 0, 0, 1, 0, 0, 0, 1}, {"U_ab", "U_bc", "U_ca"}, {"i_a", "i_b", "i_c"}},
      {23, "acb", {1, 0, 0, 0, 0, 1, 0, 1, 0}, {"-U_ca", "-U_bc", "-U_ab"}, {"i_a", "i_c", "i_b"}},
      {24, "bac", {0, 1, 0, 1, 0, 0, 0, 0, 1}, {"-U_ab", "-U_ca", "-U_bc"}, {"i_b", "i_a", "i_c"}},
      {25, "bca", {0, 1, 0, 0, 0, 1, 1, 0, 0}, {"U_bc", "U_ca", "U_ab"}, {"i_b", "i_c", "i_a"}},
      {26, "cab", {0, 0, 1, 1, 0, 0, 0, 1, 0}, {"U_ca", "U_ab", "U_bc"}, {"i_c", "i_a", "i_b"}},
      {27, "cba", {0, 0, 1, 0, 1, 0, 1, 0, 0}, {"-U_bc", "-U_ab", "-U_ca"}, {"i_c", "i_b", "i_a"}},
  }};
  return rows;
}

const std::array<PrintedTable3Row, 8>& printed_table3() {
  using enum VsiVector;
  static const std::array<PrintedTable3Row, 8> rows{{
      {V1, {"abb, acc", "acc, bcc", "bcc, baa", "baa, caa", "caa, cbb", "cbb, abb"}},
      {V2, {"aab, aac", "aac, bbc", "bbc, bba", "bba, cca", "cca, ccb", "ccb, aab"}},
      {V3, {"bab, cac", "cac, cbc", "cbc, aba", "aba, aca", "aca, ccb", "ccb, bab"}},
      {V4, {"baa, caa", "caa, cbb", "cbb, abb", "abb, acc", "acc, bcc", "bcc, baa"}},
      {V5, {"bba, cca", "cca, ccb", "ccb, aab", "aab, aac", "aac, bbc", "bbc, bba"}},
      {V6, {"aba, aca", "aca, cbc", "ccb, bab", "bab, cac", "cac, cbc", "cbc, aba"}},
      {V0, {"bbb, ccc", "ccc, ccc", "ccc, aaa", "aaa, aaa", "aaa, bbb", "bbb, bbb"}},
      {V7, {"aaa, aaa", "aaa, bbb", "bbb, bbb", "bbb, ccc", "ccc, ccc", "ccc, aaa"}},
  }};
  return rows;
}

namespace {

// Evaluates "0", "U_xy", "-U_xy" against input voltages.
double eval_voltage(const std::string& expr, const Three& v_i) {
  if (expr == "0") return 0.0;
  const bool neg = expr.front() == '-';
  const std::string body = neg ? expr.substr(1) : expr;
  if (body.size() != 4 || body.compare(0, 2, "U_") != 0) throw std::logic_error("bad voltage entry " + expr);
  const double u = v_i[body[2] - 'a'] - v_i[body[3] - 'a'];
  return neg ? -u : u;
}

// Evaluates "0", "i_x", "-i_x" where x indexes the output current.
double eval_current(const std::string& expr, const Three& i_o) {
  if (expr == "0") return 0.0;
  const bool neg = expr.front() == '-';
  const std::string body = neg ? expr.substr(1) : expr;
  if (body.size() != 3 || body.compare(0, 2, "i_") != 0) throw std::logic_error("bad current entry " + expr);
  const double i = i_o[body[2] - 'a'];
  return neg ? -i : i;
}

std::string join3(const std::array<std::string, 3>& s) { return s[0] + " " + s[1] + " " + s[2]; }

// v_x - v_y written with the published base set U_ab, U_bc, U_ca.
std::string line_symbol(int x, int y) {
  if (x == y) return "0";
  if ((y - x + 3) % 3 == 1) return std::string("U_") + phase_letter(x) + phase_letter(y);
  return std::string("-U_") + phase_letter(y) + phase_letter(x);
}

// Input current j as a single output current, using i_A + i_B + i_C = 0.
std::string current_symbol(const DmcConfiguration& cfg, int j) {
  std::vector<int> outs;
  for (int k = 0; k < 3; ++k) {
    if (cfg.input_of(k) == j) outs.push_back(k);
  }
  if (outs.empty() || outs.size() == 3) return "0";
  if (outs.size() == 1) return std::string("i_") + phase_letter(outs[0]);
  return std::string("-i_") + phase_letter(3 - outs[0] - outs[1]);
}

}  // namespace

Table2Concordance check_table2() {
  // Generic, non-symmetric probe values. Output currents are balanced
  // because the published current columns assume i_A + i_B + i_C = 0.
  const Three v_i{311.0, -97.0, -214.0};
  const Three i_o{7.25, -2.5, -4.75};

  Table2Concordance report;
  std::map<std::string, int> first_row_with_letters;
  for (const auto& row : printed_table2()) {
    std::array<int, 3> asg{};
    for (int k = 0; k < 3; ++k) {
      int hits = 0;
      for (int j = 0; j < 3; ++j) {
        if (row.switches[3 * k + j] == 1) {
          asg[k] = j;
          ++hits;
        }
      }
      if (hits != 1) throw std::logic_error("published switch row is not one-hot");
    }
    const std::string name{phase_letter(asg[0]), phase_letter(asg[1]), phase_letter(asg[2])};
    const auto cfg = DmcConfiguration::from_name(name);
    bool consistent = true;

    auto [it, inserted] = first_row_with_letters.emplace(row.letters, row.no);
    if (!inserted) {
      report.findings.push_back({row.no, "duplicate_letters", row.letters,
                                 "same letters as row " + std::to_string(it->second)});
    }
    if (row.letters != name) {
      report.findings.push_back({row.no, "letters", row.letters, name});
      consistent = false;
    }

    const Three v_o = apply_voltages(cfg, v_i);
    const Three gen_u{v_o[0] - v_o[1], v_o[1] - v_o[2], v_o[2] - v_o[0]};
    bool v_ok = true;
    const auto& a = cfg.assignment();
    const std::array<std::string, 3> gen_u_s{line_symbol(a[0], a[1]), line_symbol(a[1], a[2]),
                                             line_symbol(a[2], a[0])};
    for (int k = 0; k < 3; ++k) {
      if (std::abs(eval_voltage(row.line_voltages[k], v_i) - gen_u[k]) > 1e-9) v_ok = false;
    }
    if (!v_ok) {
      report.findings.push_back({row.no, "line_voltages", join3(row.line_voltages), join3(gen_u_s)});
      consistent = false;
    }

    const Three gen_i = apply_currents(cfg, i_o);
    bool i_ok = true;
    for (int k = 0; k < 3; ++k) {
      if (std::abs(eval_current(row.input_currents[k], i_o) - gen_i[k]) > 1e-9) i_ok = false;
    }
    if (!i_ok) {
      report.findings.push_back({row.no, "input_currents", join3(row.input_currents),
                                 join3({current_symbol(cfg, 0), current_symbol(cfg, 1),
                                        current_symbol(cfg, 2)})});
      consistent = false;
    }
    if (consistent) report.consistent_rows.push_back(row.no);
  }
  return report;
}

}  // namespace dtcmc
