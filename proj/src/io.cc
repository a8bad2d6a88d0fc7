#include "qconvex/io.h"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qconvex/errors.h"

namespace qconvex {
namespace {

using nlohmann::json;

std::complex<double> ParseEntry(const json& e, const std::string& where) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw InvalidInput(where + ": expected a number or an [re, im] pair");
}

int ParseCount(const json& doc, const char* key) {
  const json& value = doc.at(key);
  if (!value.is_number_integer()) {
    throw InvalidInput(std::string("\"") + key + "\" must be an integer");
  }
  return value.get<int>();
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double ParseCsvDouble(const std::string& cell, int row) {
  try {
    std::size_t used = 0;
    const double value = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return value;
  } catch (const std::exception&) {
    throw InvalidInput("CSV row " + std::to_string(row) +
                       ": cannot parse number '" + cell + "'");
  }
}

}  // namespace

QuadraticMap ParseInstance(const json& doc, const Tolerances& tol,
                           std::vector<std::string>* warnings) {
  if (!doc.is_object()) throw InvalidInput("instance must be a JSON object");
  QuadraticMap raw;
  if (doc.contains("field")) {
    const json& f = doc["field"];
    if (f == "real") {
      raw.field = Field::kReal;
    } else if (f == "complex") {
      raw.field = Field::kComplex;
    } else {
      throw InvalidInput("\"field\" must be \"real\" or \"complex\"");
    }
  }
  if (!doc.contains("A") || !doc["A"].is_array()) {
    throw InvalidInput("\"A\" must be an array of matrices");
  }
  if (!doc.contains("v") || !doc["v"].is_array()) {
    throw InvalidInput("\"v\" must be an array of vectors");
  }
  const json& As = doc["A"];
  const json& vs = doc["v"];
  if (As.size() != vs.size()) {
    throw InvalidInput("\"A\" and \"v\" have different lengths");
  }
  const int m = static_cast<int>(vs.size());
  if (doc.contains("m") && ParseCount(doc, "m") != m) {
    throw InvalidInput("\"m\" does not match the number of matrices");
  }
  if (m == 0) throw InvalidInput("instance needs at least one component");
  const int n = vs[0].is_array() ? static_cast<int>(vs[0].size()) : -1;
  if (n <= 0) throw InvalidInput("v[0] must be a non-empty array");
  if (doc.contains("n") && ParseCount(doc, "n") != n) {
    throw InvalidInput("\"n\" does not match the vector length");
  }

  for (int i = 0; i < m; ++i) {
    const std::string vi = "v[" + std::to_string(i) + "]";
    const std::string ai = "A[" + std::to_string(i) + "]";
    if (!vs[i].is_array() || static_cast<int>(vs[i].size()) != n) {
      throw InvalidInput(vi + " must have length " + std::to_string(n));
    }
    if (!As[i].is_array() || static_cast<int>(As[i].size()) != n) {
      throw InvalidInput(ai + " must have " + std::to_string(n) + " rows");
    }
    Eigen::VectorXcd v(n);
    Eigen::MatrixXcd a(n, n);
    for (int r = 0; r < n; ++r) {
      v(r) = ParseEntry(vs[i][r], vi + "[" + std::to_string(r) + "]");
      const json& row = As[i][r];
      const std::string where = ai + "[" + std::to_string(r) + "]";
      if (!row.is_array() || static_cast<int>(row.size()) != n) {
        throw InvalidInput(where + " must have length " + std::to_string(n));
      }
      for (int col = 0; col < n; ++col) {
        a(r, col) = ParseEntry(row[col], where + "[" + std::to_string(col) + "]");
      }
    }
    raw.A.push_back(std::move(a));
    raw.v.push_back(std::move(v));
  }
  return ValidateAndSymmetrize(std::move(raw), tol, warnings);
}

QuadraticMap ParseInstanceText(const std::string& text, const Tolerances& tol,
                               std::vector<std::string>* warnings) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput("malformed JSON at byte " + std::to_string(e.byte) +
                       ": " + e.what());
  }
  return ParseInstance(doc, tol, warnings);
}

QuadraticMap LoadInstance(const std::string& path, const Tolerances& tol,
                          std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open input file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseInstanceText(buffer.str(), tol, warnings);
}

json InstanceToJson(const QuadraticMap& map) {
  const bool cplx = map.field == Field::kComplex;
  auto entry = [cplx](std::complex<double> z) -> json {
    if (cplx) return json::array({z.real(), z.imag()});
    return z.real();
  };
  json A = json::array();
  json v = json::array();
  for (int i = 0; i < map.m(); ++i) {
    json mat = json::array();
    json vec = json::array();
    for (int r = 0; r < map.n(); ++r) {
      json row = json::array();
      for (int c = 0; c < map.n(); ++c) row.push_back(entry(map.A[i](r, c)));
      mat.push_back(std::move(row));
      vec.push_back(entry(map.v[i](r)));
    }
    A.push_back(std::move(mat));
    v.push_back(std::move(vec));
  }
  return json{{"field", FieldName(map.field)},
              {"n", map.n()},
              {"m", map.m()},
              {"A", std::move(A)},
              {"v", std::move(v)}};
}

std::string FormatDouble(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void WriteBoundaryCsv(const BoundarySample& sample, Field field,
                      std::ostream& out) {
  if (sample.entries.empty()) throw InvalidInput("empty boundary sample");
  const BoundaryEntry& first = sample.entries.front();
  const int m = static_cast<int>(first.c.size());
  const int n = static_cast<int>(first.x.size());
  const bool cplx = field == Field::kComplex;

  for (int i = 1; i <= m; ++i) out << 'c' << i << ',';
  for (int k = 1; k <= n; ++k) {
    if (cplx) {
      out << 'x' << k << "_re,x" << k << "_im,";
    } else {
      out << 'x' << k << ',';
    }
  }
  for (int i = 1; i <= m; ++i) out << 'y' << i << ',';
  out << "lambda,hard_case\n";

  for (const BoundaryEntry& e : sample.entries) {
    for (int i = 0; i < m; ++i) out << FormatDouble(e.c(i)) << ',';
    for (int k = 0; k < n; ++k) {
      out << FormatDouble(e.x(k).real()) << ',';
      if (cplx) out << FormatDouble(e.x(k).imag()) << ',';
    }
    for (int i = 0; i < m; ++i) out << FormatDouble(e.y(i)) << ',';
    out << FormatDouble(e.lambda) << ',' << (e.hard_case ? 1 : 0) << '\n';
  }
}

CsvBoundary ReadBoundaryCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("CSV is empty");
  const std::vector<std::string> header = SplitCsvLine(line);
  int m = 0;
  int n = 0;
  bool cplx = false;
  for (const std::string& h : header) {
    if (h.empty()) continue;
    if (h[0] == 'c') ++m;
    if (h[0] == 'x') {
      ++n;
      if (h.find("_im") != std::string::npos) cplx = true;
    }
  }
  if (cplx) n /= 2;
  const int width = m + (cplx ? 2 * n : n) + m + 2;
  if (m == 0 || n == 0 || static_cast<int>(header.size()) != width ||
      header[width - 2] != "lambda" || header[width - 1] != "hard_case") {
    throw InvalidInput("CSV header is not a boundary sample header");
  }

  CsvBoundary result;
  result.field = cplx ? Field::kComplex : Field::kReal;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const std::vector<std::string> cells = SplitCsvLine(line);
    if (static_cast<int>(cells.size()) != width) {
      throw InvalidInput("CSV row " + std::to_string(row) + " has " +
                         std::to_string(cells.size()) + " cells, expected " +
                         std::to_string(width));
    }
    BoundaryEntry e;
    e.c.resize(m);
    e.x.resize(n);
    e.y.resize(m);
    int col = 0;
    for (int i = 0; i < m; ++i) e.c(i) = ParseCsvDouble(cells[col++], row);
    for (int k = 0; k < n; ++k) {
      const double re = ParseCsvDouble(cells[col++], row);
      const double im = cplx ? ParseCsvDouble(cells[col++], row) : 0.0;
      e.x(k) = {re, im};
    }
    for (int i = 0; i < m; ++i) e.y(i) = ParseCsvDouble(cells[col++], row);
    e.lambda = ParseCsvDouble(cells[col++], row);
    e.hard_case = cells[col] == "1";
    e.support_value = e.c.dot(e.y);
    result.sample.entries.push_back(std::move(e));
  }
  if (!result.sample.entries.empty()) {
    result.sample.eps = result.sample.entries.front().x.norm();
  }
  return result;
}

}  // namespace qconvex
