#ifndef QCONVEX_IO_H_
#define QCONVEX_IO_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qconvex/model.h"
#include "qconvex/tolerances.h"
#include "qconvex/verify.h"

namespace qconvex {

// Instance schema:
//   {"field": "real" | "complex", "n": int, "m": int,
//    "A": [m matrices, row-major nested arrays], "v": [m vectors]}
// Complex entries are [re, im] pairs; plain numbers are accepted as real
// entries in either field. "field" defaults to "real"; "n" and "m" are
// optional but must match the arrays when present. The result has passed
// ValidateAndSymmetrize. Throws InvalidInput.
QuadraticMap ParseInstance(const nlohmann::json& doc, const Tolerances& tol = {},
                           std::vector<std::string>* warnings = nullptr);

// Parses JSON text; syntax errors become InvalidInput carrying the byte
// position reported by the parser.
QuadraticMap ParseInstanceText(const std::string& text,
                               const Tolerances& tol = {},
                               std::vector<std::string>* warnings = nullptr);
QuadraticMap LoadInstance(const std::string& path, const Tolerances& tol = {},
                          std::vector<std::string>* warnings = nullptr);

nlohmann::json InstanceToJson(const QuadraticMap& map);

// 17 significant digits ("%.17g"); reads back to the same double.
std::string FormatDouble(double value);

// CSV with header c1..cm, x1..xn (x1_re, x1_im, ... for the complex field),
// y1..ym, lambda, hard_case.
void WriteBoundaryCsv(const BoundarySample& sample, Field field,
                      std::ostream& out);

// Reads the format written by WriteBoundaryCsv. The field and the sizes are
// taken from the header; eps is recovered as |x| of the first row.
struct CsvBoundary {
  Field field = Field::kReal;
  BoundarySample sample;
};
CsvBoundary ReadBoundaryCsv(std::istream& in);

}  // namespace qconvex

#endif  // QCONVEX_IO_H_
