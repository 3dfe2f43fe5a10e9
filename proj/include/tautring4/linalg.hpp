#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tautring4/rational.hpp"

namespace tautring4 {

using QVec = std::map<int, Q>;                  // sparse rational vector, column -> value
using ZRow = std::vector<std::pair<int, Z>>;    // sparse integer row sorted by column

// Primitive integer multiple of v with positive leading entry.
ZRow to_primitive(const QVec& v);

// Incremental row echelon form over Q kept as primitive integer rows
// (fraction-free updates). Pivot = leading column, so the normal form of a
// vector eliminates low columns first.
class Echelon {
 public:
  bool insert(const QVec& v);          // true when v was independent
  QVec reduce(const QVec& v) const;    // normal form modulo the span
  bool in_span(const QVec& v) const { return reduce(v).empty(); }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::map<int, ZRow>& rows() const { return rows_; }
  std::vector<int> pivots() const;

 private:
  std::map<int, ZRow> rows_;
};

class RationalMatrix {
 public:
  RationalMatrix(int rows = 0, int cols = 0) : nr_(rows), nc_(cols), data_(rows) {}

  int rows() const { return nr_; }
  int cols() const { return nc_; }
  void set(int r, int c, const Q& x);
  Q get(int r, int c) const;
  const QVec& row(int r) const { return data_.at(r); }
  void append_row(const QVec& v);
  RationalMatrix transpose() const;
  RationalMatrix block(const std::vector<int>& rows, const std::vector<int>& cols) const;
  bool is_zero() const;

  int rank() const;
  std::vector<QVec> kernel() const;              // right null space basis
  std::optional<QVec> solve(const QVec& b) const;  // some x with M x = b
  QVec apply(const QVec& x) const;               // M x

  void dump(std::ostream& os) const;             // (row, col, "p/q") triplets

 private:
  int nr_, nc_;
  std::vector<QVec> data_;
};

// Row-reduced echelon form of the given rows, fraction-free with content
// removal; among candidate pivot rows the one of smallest bit-length wins.
// Returns rows in pivot order, each with its pivot column.
std::vector<std::pair<int, ZRow>> rref(std::vector<QVec> rows);

}  // namespace tautring4
