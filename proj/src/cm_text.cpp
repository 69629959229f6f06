#include "ebreak/cm_text.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ebreak/errors.hpp"

namespace ebreak {

TwoModeCM parse_cm_text(std::istream& in) {
  Mat4 v;
  int row = 0;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (row == 4) throw DomainError("more than four rows in CM text");
    std::istringstream fields(line);
    for (int col = 0; col < 4; ++col) {
      if (!(fields >> v(row, col))) throw DomainError("row " + std::to_string(row + 1) + " needs four numbers");
    }
    std::string extra;
    if (fields >> extra) throw DomainError("row " + std::to_string(row + 1) + " has trailing data");
    ++row;
  }
  if (row != 4) throw DomainError("CM text needs four rows");
  return TwoModeCM::from_matrix(v);
}

TwoModeCM parse_cm_text(const std::string& text) {
  std::istringstream in(text);
  return parse_cm_text(in);
}

TwoModeCM read_cm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return parse_cm_text(in);
}

std::string format_cm_text(const TwoModeCM& cm) {
  const Mat4 v = cm.matrix();
  std::string out;
  char buf[32];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", v(r, c));
      out += buf;
      out += c == 3 ? '\n' : ' ';
    }
  }
  return out;
}

}  // namespace ebreak
