#include "lmtest/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "lmtest/errors.hpp"

namespace lmtest {

namespace {

bool parse_two(const std::string& line, double& a, double& b) {
  std::string normalized = line;
  for (char& c : normalized)
    if (c == ',' || c == ';' || c == '\t') c = ' ';
  std::istringstream row(normalized);
  if (!(row >> a >> b)) return false;
  std::string trailing;
  if (row >> trailing) return false;
  return true;
}

}  // namespace

BivariatePair read_pair_csv(std::istream& in) {
  std::vector<double> c1, c2;
  std::string line;
  bool first_content = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    double a = 0.0, b = 0.0;
    if (!parse_two(line, a, b)) {
      if (first_content) {
        first_content = false;  // single header line tolerated
        continue;
      }
      throw invalid_input("csv: malformed row at line " +
                          std::to_string(lineno));
    }
    first_content = false;
    c1.push_back(a);
    c2.push_back(b);
  }
  if (c1.size() < 2) throw invalid_input("csv: fewer than 2 data rows");
  return {TimeSeries(std::move(c1)), TimeSeries(std::move(c2))};
}

BivariatePair read_pair_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("csv: cannot open " + path);
  return read_pair_csv(in);
}

void write_pair_csv(std::ostream& out, const BivariatePair& pair,
                    const std::string& header_comment) {
  if (!header_comment.empty()) {
    std::istringstream lines(header_comment);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << '\n';
  }
  out.precision(17);
  for (std::size_t t = 0; t < pair.size(); ++t)
    out << pair.x1[t] << ',' << pair.x2[t] << '\n';
}

}  // namespace lmtest
