// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FHSTEP_MPS_HPP
#define FHSTEP_MPS_HPP

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fhstep/linalg.hpp"

namespace fhstep {

enum class RowKind { objective, less_equal, greater_equal, equal };

// Faithful in-memory image of an MPS file, before standard-form conversion.
struct RawLp {
  struct Row {
    std::string name;
    RowKind kind;
  };
  struct Bound {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
  };

  std::string name;
  std::vector<Row> rows;            // includes the objective row
  std::vector<std::string> columns;
  std::vector<Triplet> entries;     // (row index, column index, value); duplicates summed on use
  std::vector<double> rhs;          // per row, 0 when unspecified
  std::vector<std::optional<double>> ranges;  // per row
  std::vector<Bound> bounds;        // per column, default [0, +inf)

  Index objective_row = -1;
  std::vector<std::string> warnings;

  Index num_constraint_rows() const { return static_cast<Index>(rows.size()) - 1; }
};

// Mapping from one original variable to its standard-form columns.
struct VariableMap {
  Index plus_col = -1;    // x' (or x+) column
  Index minus_col = -1;   // x- column when the variable was split
  double shift = 0.0;     // x = x' - x- + shift
  Index upper_row = -1;   // appended row x' + slack = upper - shift, when bounded above
};

// min c'x  s.t.  Ax = b, x >= 0  (paper standard form), plus enough metadata
// to map standard-form points back to the original variables.
struct StandardLp {
  SparseMatrix a;
  Vector b;
  Vector c;
  double objective_offset = 0.0;

  std::vector<VariableMap> var_map;      // per original column
  std::vector<Index> row_slack_col;      // per original constraint row, -1 for equalities
  std::vector<std::string> warnings;

  Index rows() const { return a.rows(); }
  Index cols() const { return a.cols(); }
};

// Parse free-format (whitespace-delimited) MPS; fixed-format Netlib files
// tokenize identically. Integer marker sections are rejected.
RawLp parse_mps(std::istream& in);
RawLp parse_mps_string(const std::string& text);
RawLp parse_mps_file(const std::string& path);

StandardLp to_standard_form(const RawLp& raw);

// x for the original columns recovered from a standard-form point.
Vector map_to_original(const StandardLp& lp, const RawLp& raw, const Vector& x_std);

// Lift a feasible original point into standard-form coordinates (slacks filled in).
Vector map_to_standard(const StandardLp& lp, const RawLp& raw, const Vector& x_orig);

// Activity of every original constraint row at an original-space point.
Vector row_activities(const RawLp& raw, const Vector& x_orig);

double original_objective(const RawLp& raw, const Vector& x_orig);

}  // namespace fhstep

#endif  // FHSTEP_MPS_HPP
