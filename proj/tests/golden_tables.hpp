#pragma once

// Golden correction-coefficient tables for the regression tests, as exact
// fractions. The library derives these; the tests compare entry by entry
// with zero tolerance.
//
// Two entries of the published tables are corrected here because the printed
// fractions contradict the residual-order criteria the coefficients are
// defined by (the violating coefficient is provably nonzero): the k=5, l=3
// subdiffusion entry is -1/720 (printed +1/720) and the k=5, l=1
// diffusion-wave entry ends in -107/720 (printed -107/240). Both corrected
// values make the residual vanish exactly and only they do.

#include <string>
#include <vector>

namespace golden {

struct ATable {
  int k;
  std::vector<std::string> a;
};

struct BTable {
  int k;
  std::vector<std::vector<std::string>> rows;  // rows indexed by ell = 1..k-2
};

inline const std::vector<ATable>& a_table() {
  static const std::vector<ATable> t = {
      {2, {"1/2"}},
      {3, {"11/12", "-5/12"}},
      {4, {"31/24", "-7/6", "3/8"}},
      {5, {"1181/720", "-177/80", "341/240", "-251/720"}},
      {6, {"2837/1440", "-2543/720", "17/5", "-1201/720", "95/288"}},
  };
  return t;
}

inline const std::vector<BTable>& b_subdiffusion_table() {
  static const std::vector<BTable> t = {
      {3, {{"1/12", "0"}}},
      {4, {{"1/6", "-1/12", "0"}, {"0", "0", "0"}}},
      {5,
       {{"59/240", "-29/120", "19/240", "0"},
        {"1/240", "-1/240", "0", "0"},
        {"-1/720", "0", "0", "0"}}},
      {6,
       {{"77/240", "-7/15", "73/240", "-3/40", "0"},
        {"1/96", "-1/60", "1/160", "0", "0"},
        {"-1/360", "1/720", "0", "0", "0"},
        {"0", "0", "0", "0", "0"}}},
  };
  return t;
}

inline const std::vector<BTable>& b_diffusion_wave_table() {
  static const std::vector<BTable> t = {
      {3, {{"1/12", "-1/12"}}},
      {4, {{"5/24", "-1/3", "1/8"}, {"0", "0", "0"}}},
      {5,
       {{"257/720", "-187/240", "137/240", "-107/720"},
        {"1/240", "-1/120", "1/240", "0"},
        {"-1/720", "1/720", "0", "0"}}},
      {6,
       {{"749/1440", "-1031/720", "31/20", "-577/720", "47/288"},
        {"1/80", "-1/30", "7/240", "-1/120", "0"},
        {"-1/288", "1/180", "-1/480", "0", "0"},
        {"0", "0", "0", "0", "0"}}},
  };
  return t;
}

}  // namespace golden
