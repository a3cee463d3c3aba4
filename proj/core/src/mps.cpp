// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fhstep/mps.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "fhstep/log.hpp"

namespace fhstep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

double parse_value(const std::string& tok) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("mps: malformed numeric value '" + tok + "'");
  }
  if (pos != tok.size()) throw std::runtime_error("mps: malformed numeric value '" + tok + "'");
  return v;
}

enum class Section { none, name, rows, columns, rhs, ranges, bounds, endata };

}  // namespace

RawLp parse_mps(std::istream& in) {
  RawLp lp;
  Section section = Section::none;
  bool saw_endata = false;

  std::unordered_map<std::string, Index> row_index;
  std::unordered_map<std::string, Index> col_index;
  std::unordered_set<std::string> ignored_obj_rows;  // extra N rows (Netlib convention)
  std::vector<bool> explicit_lower;

  auto require_row = [&](const std::string& name) -> Index {
    auto it = row_index.find(name);
    if (it == row_index.end()) {
      if (ignored_obj_rows.count(name)) return -1;
      throw std::runtime_error("mps: reference to undeclared row '" + name + "'");
    }
    return it->second;
  };
  auto get_col = [&](const std::string& name) -> Index {
    auto it = col_index.find(name);
    if (it != col_index.end()) return it->second;
    Index idx = static_cast<Index>(lp.columns.size());
    col_index.emplace(name, idx);
    lp.columns.push_back(name);
    lp.bounds.push_back({});
    explicit_lower.push_back(false);
    return idx;
  };

  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '*') continue;  // comment

    const bool is_header = line[0] != ' ' && line[0] != '\t';
    auto toks = tokenize(line);
    if (toks.empty()) continue;

    if (is_header) {
      const std::string& kw = toks[0];
      if (kw == "NAME") {
        section = Section::name;
        if (toks.size() > 1) lp.name = toks[1];
      } else if (kw == "ROWS") {
        section = Section::rows;
      } else if (kw == "COLUMNS") {
        if (lp.rows.empty()) throw std::runtime_error("mps: column entry before ROWS section");
        section = Section::columns;
      } else if (kw == "RHS") {
        section = Section::rhs;
      } else if (kw == "RANGES") {
        section = Section::ranges;
      } else if (kw == "BOUNDS") {
        section = Section::bounds;
      } else if (kw == "ENDATA") {
        saw_endata = true;
        break;
      } else {
        throw std::runtime_error("mps: unknown section name '" + kw + "'");
      }
      continue;
    }

    switch (section) {
      case Section::rows: {
        if (toks.size() != 2) throw std::runtime_error("mps: malformed ROWS line '" + line + "'");
        const std::string& kind = toks[0];
        const std::string& name = toks[1];
        if (row_index.count(name) || ignored_obj_rows.count(name))
          throw std::runtime_error("mps: duplicate row '" + name + "'");
        RowKind rk;
        if (kind == "N") {
          if (lp.objective_row >= 0) {
            lp.warnings.push_back("extra objective row '" + name + "' ignored");
            ignored_obj_rows.insert(name);
            continue;
          }
          rk = RowKind::objective;
        } else if (kind == "L") {
          rk = RowKind::less_equal;
        } else if (kind == "G") {
          rk = RowKind::greater_equal;
        } else if (kind == "E") {
          rk = RowKind::equal;
        } else {
          throw std::runtime_error("mps: unknown row kind '" + kind + "'");
        }
        Index idx = static_cast<Index>(lp.rows.size());
        row_index.emplace(name, idx);
        lp.rows.push_back({name, rk});
        if (rk == RowKind::objective) lp.objective_row = idx;
        break;
      }
      case Section::columns: {
        if (line.find("'MARKER'") != std::string::npos)
          throw std::runtime_error("mps: integer variables unsupported (MARKER section)");
        if (toks.size() < 3 || toks.size() % 2 == 0)
          throw std::runtime_error("mps: malformed COLUMNS line '" + line + "'");
        Index col = get_col(toks[0]);
        for (std::size_t i = 1; i + 1 < toks.size(); i += 2) {
          Index row = require_row(toks[i]);
          if (row < 0) continue;  // entry on an ignored extra objective row
          lp.entries.push_back({row, col, parse_value(toks[i + 1])});
        }
        break;
      }
      case Section::rhs:
      case Section::ranges: {
        // first token is the set name unless it is itself a row name and the
        // remaining tokens pair up
        std::size_t start = 1;
        if ((row_index.count(toks[0]) || ignored_obj_rows.count(toks[0])) && toks.size() % 2 == 0)
          start = 0;
        if ((toks.size() - start) % 2 != 0 || toks.size() - start == 0)
          throw std::runtime_error("mps: malformed RHS/RANGES line '" + line + "'");
        for (std::size_t i = start; i + 1 < toks.size(); i += 2) {
          Index row = require_row(toks[i]);
          if (row < 0) continue;
          double v = parse_value(toks[i + 1]);
          if (section == Section::rhs) {
            if (lp.rhs.size() < lp.rows.size()) lp.rhs.resize(lp.rows.size(), 0.0);
            lp.rhs[static_cast<std::size_t>(row)] += v;
          } else {
            if (row == lp.objective_row) throw std::runtime_error("mps: RANGES entry on objective row");
            if (lp.ranges.size() < lp.rows.size()) lp.ranges.resize(lp.rows.size());
            lp.ranges[static_cast<std::size_t>(row)] = v;
          }
        }
        break;
      }
      case Section::bounds: {
        if (toks.size() < 2) throw std::runtime_error("mps: malformed BOUNDS line '" + line + "'");
        const std::string& type = toks[0];
        const bool needs_value = (type == "LO" || type == "UP" || type == "FX");
        const bool is_free_kind = (type == "FR" || type == "MI" || type == "PL");
        if (!needs_value && !is_free_kind) {
          if (type == "BV" || type == "LI" || type == "UI")
            throw std::runtime_error("mps: integer variables unsupported (bound type " + type + ")");
          throw std::runtime_error("mps: unknown bound type '" + type + "'");
        }
        // layout: TYPE [SETNAME] COL [VALUE]; the set name may be omitted
        std::size_t expected = needs_value ? 4 : 3;
        std::size_t col_tok = 2;
        if (toks.size() == expected - 1) {
          col_tok = 1;  // set name omitted
        } else if (toks.size() != expected) {
          if (is_free_kind && toks.size() == 4) {
            col_tok = 2;  // tolerated trailing value on FR/MI/PL
          } else {
            throw std::runtime_error("mps: malformed BOUNDS line '" + line + "'");
          }
        }
        auto it = col_index.find(toks[col_tok]);
        if (it == col_index.end())
          throw std::runtime_error("mps: bound on undeclared column '" + toks[col_tok] + "'");
        Index col = it->second;
        RawLp::Bound& b = lp.bounds[static_cast<std::size_t>(col)];
        if (type == "LO") {
          b.lower = parse_value(toks[col_tok + 1]);
          explicit_lower[static_cast<std::size_t>(col)] = true;
        } else if (type == "UP") {
          b.upper = parse_value(toks[col_tok + 1]);
          if (b.upper < 0.0 && !explicit_lower[static_cast<std::size_t>(col)]) {
            // classic MPS rule: negative upper bound without an explicit lower
            // bound frees the lower bound
            b.lower = -kInf;
            lp.warnings.push_back("negative UP bound on '" + toks[col_tok] + "' frees its lower bound");
          }
        } else if (type == "FX") {
          b.lower = b.upper = parse_value(toks[col_tok + 1]);
          explicit_lower[static_cast<std::size_t>(col)] = true;
        } else if (type == "FR") {
          b.lower = -kInf;
          b.upper = kInf;
        } else if (type == "MI") {
          b.lower = -kInf;
        } else if (type == "PL") {
          b.upper = kInf;
        }
        break;
      }
      case Section::name:
      case Section::none:
      case Section::endata:
        throw std::runtime_error("mps: data line outside any section: '" + line + "'");
    }
  }

  if (!saw_endata) lp.warnings.push_back("missing ENDATA");
  if (lp.objective_row < 0) throw std::runtime_error("mps: no objective (N) row");
  lp.rhs.resize(lp.rows.size(), 0.0);
  lp.ranges.resize(lp.rows.size());
  for (const auto& w : lp.warnings) FHSTEP_LOG_WARN("mps: %s", w.c_str());
  return lp;
}

RawLp parse_mps_string(const std::string& text) {
  std::istringstream ss(text);
  return parse_mps(ss);
}

RawLp parse_mps_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("mps: cannot open '" + path + "'");
  return parse_mps(f);
}

namespace {

// [lo, hi] interval a ranged row constrains its activity to (classic MPS table)
std::pair<double, double> range_interval(RowKind kind, double h, double r) {
  switch (kind) {
    case RowKind::less_equal:
      return {h - std::abs(r), h};
    case RowKind::greater_equal:
      return {h, h + std::abs(r)};
    case RowKind::equal:
      if (r > 0.0) return {h, h + r};
      if (r < 0.0) return {h + r, h};
      return {h, h};
    case RowKind::objective:
      break;
  }
  throw std::logic_error("range_interval: objective row");
}

}  // namespace

StandardLp to_standard_form(const RawLp& raw) {
  const Index n_orig = static_cast<Index>(raw.columns.size());
  const Index n_rows = static_cast<Index>(raw.rows.size());

  StandardLp out;
  out.warnings = raw.warnings;

  // per-variable treatment
  struct VarPlan {
    bool split = false;
    double shift = 0.0;
    double upper_cap = kInf;  // cap on the standard variable, finite => upper row
  };
  std::vector<VarPlan> plan(static_cast<std::size_t>(n_orig));
  out.var_map.resize(static_cast<std::size_t>(n_orig));
  for (Index j = 0; j < n_orig; ++j) {
    const auto& b = raw.bounds[static_cast<std::size_t>(j)];
    if (b.lower > b.upper)
      throw std::runtime_error("to_standard_form: infeasible bound pair on '" +
                               raw.columns[static_cast<std::size_t>(j)] + "'");
    VarPlan& p = plan[static_cast<std::size_t>(j)];
    if (std::isinf(b.lower)) {
      p.split = true;
      p.shift = 0.0;
      if (std::isfinite(b.upper)) p.upper_cap = b.upper;
    } else {
      p.shift = b.lower;
      if (std::isfinite(b.upper)) p.upper_cap = b.upper - b.lower;
    }
  }

  // per-row treatment: slack sign and effective rhs
  struct RowPlan {
    double base_rhs = 0.0;
    double slack_coef = 0.0;  // 0 for equality rows
    double slack_cap = kInf;  // ranged rows bound their slack
  };
  std::vector<RowPlan> rplan;
  rplan.reserve(static_cast<std::size_t>(n_rows));
  for (Index i = 0; i < n_rows; ++i) {
    RowPlan rp;
    if (i == raw.objective_row) {
      rplan.push_back(rp);
      continue;
    }
    const RowKind kind = raw.rows[static_cast<std::size_t>(i)].kind;
    const double h = raw.rhs[static_cast<std::size_t>(i)];
    const auto& rng = raw.ranges[static_cast<std::size_t>(i)];
    if (rng.has_value()) {
      auto [lo, hi] = range_interval(kind, h, *rng);
      if (lo == hi) {
        rp.base_rhs = lo;  // degenerate range: plain equality
      } else {
        rp.base_rhs = hi;
        rp.slack_coef = 1.0;
        rp.slack_cap = hi - lo;
      }
    } else {
      rp.base_rhs = h;
      if (kind == RowKind::less_equal) rp.slack_coef = 1.0;
      if (kind == RowKind::greater_equal) rp.slack_coef = -1.0;
    }
    rplan.push_back(rp);
  }

  // standard row ordering: original constraint rows first, then upper-bound rows
  std::vector<Index> row_of_orig(static_cast<std::size_t>(n_rows), -1);
  Index next_row = 0;
  for (Index i = 0; i < n_rows; ++i)
    if (i != raw.objective_row) row_of_orig[static_cast<std::size_t>(i)] = next_row++;
  const Index n_con = next_row;

  // column ordering: plus columns, minus columns, row slacks, upper-row slacks
  Index next_col = 0;
  for (Index j = 0; j < n_orig; ++j) out.var_map[static_cast<std::size_t>(j)].plus_col = next_col++;
  for (Index j = 0; j < n_orig; ++j)
    if (plan[static_cast<std::size_t>(j)].split) out.var_map[static_cast<std::size_t>(j)].minus_col = next_col++;
  out.row_slack_col.assign(static_cast<std::size_t>(n_con), -1);
  for (Index i = 0; i < n_rows; ++i) {
    if (i == raw.objective_row) continue;
    if (rplan[static_cast<std::size_t>(i)].slack_coef != 0.0)
      out.row_slack_col[static_cast<std::size_t>(row_of_orig[static_cast<std::size_t>(i)])] = next_col++;
  }

  struct UpperRow {
    Index row;
    Index plus_col;
    Index minus_col;
    Index slack_col;
    double cap;
  };
  std::vector<UpperRow> upper_rows;
  for (Index j = 0; j < n_orig; ++j) {
    const VarPlan& p = plan[static_cast<std::size_t>(j)];
    if (std::isfinite(p.upper_cap)) {
      VariableMap& vm = out.var_map[static_cast<std::size_t>(j)];
      vm.upper_row = next_row;
      upper_rows.push_back({next_row++, vm.plus_col, vm.minus_col, next_col++, p.upper_cap});
    }
  }
  for (Index i = 0; i < n_rows; ++i) {
    if (i == raw.objective_row) continue;
    const RowPlan& rp = rplan[static_cast<std::size_t>(i)];
    if (std::isfinite(rp.slack_cap)) {
      const Index s = out.row_slack_col[static_cast<std::size_t>(row_of_orig[static_cast<std::size_t>(i)])];
      upper_rows.push_back({next_row++, s, -1, next_col++, rp.slack_cap});
    }
  }

  const Index m_std = next_row;
  const Index n_std = next_col;

  // assemble A, b, c
  std::vector<Triplet> trips;
  trips.reserve(raw.entries.size() * 2 + upper_rows.size() * 3 + static_cast<std::size_t>(n_con));
  Vector b = Vector::Zero(m_std);
  Vector c = Vector::Zero(n_std);
  double offset = -raw.rhs[static_cast<std::size_t>(raw.objective_row)];  // MPS objective constant

  for (Index i = 0; i < n_rows; ++i) {
    if (i == raw.objective_row) continue;
    b[row_of_orig[static_cast<std::size_t>(i)]] = rplan[static_cast<std::size_t>(i)].base_rhs;
  }

  for (const Triplet& e : raw.entries) {
    const VariableMap& vm = out.var_map[static_cast<std::size_t>(e.col)];
    const double shift = plan[static_cast<std::size_t>(e.col)].shift;
    if (e.row == raw.objective_row) {
      c[vm.plus_col] += e.value;
      if (vm.minus_col >= 0) c[vm.minus_col] -= e.value;
      offset += e.value * shift;
    } else {
      const Index r = row_of_orig[static_cast<std::size_t>(e.row)];
      trips.push_back({r, vm.plus_col, e.value});
      if (vm.minus_col >= 0) trips.push_back({r, vm.minus_col, -e.value});
      b[r] -= e.value * shift;
    }
  }

  for (Index i = 0; i < n_rows; ++i) {
    if (i == raw.objective_row) continue;
    const RowPlan& rp = rplan[static_cast<std::size_t>(i)];
    if (rp.slack_coef != 0.0) {
      const Index r = row_of_orig[static_cast<std::size_t>(i)];
      trips.push_back({r, out.row_slack_col[static_cast<std::size_t>(r)], rp.slack_coef});
    }
  }

  for (const UpperRow& ur : upper_rows) {
    trips.push_back({ur.row, ur.plus_col, 1.0});
    if (ur.minus_col >= 0) trips.push_back({ur.row, ur.minus_col, -1.0});
    trips.push_back({ur.row, ur.slack_col, 1.0});
    b[ur.row] = ur.cap;
  }

  out.a = SparseMatrix::from_triplets(m_std, n_std, trips);
  out.b = std::move(b);
  out.c = std::move(c);
  out.objective_offset = offset;
  if (!out.b.allFinite() || !out.c.allFinite())
    throw std::runtime_error("to_standard_form: non-finite b or c");
  return out;
}

Vector map_to_original(const StandardLp& lp, const RawLp& raw, const Vector& x_std) {
  if (x_std.size() != lp.cols()) throw std::invalid_argument("map_to_original: size mismatch");
  Vector x(static_cast<Index>(raw.columns.size()));
  for (std::size_t j = 0; j < raw.columns.size(); ++j) {
    const VariableMap& vm = lp.var_map[j];
    double v = x_std[vm.plus_col] + vm.shift;
    if (vm.minus_col >= 0) v -= x_std[vm.minus_col];
    x[static_cast<Index>(j)] = v;
  }
  return x;
}

Vector map_to_standard(const StandardLp& lp, const RawLp& raw, const Vector& x_orig) {
  if (x_orig.size() != static_cast<Index>(raw.columns.size()))
    throw std::invalid_argument("map_to_standard: size mismatch");
  Vector x = Vector::Zero(lp.cols());
  for (std::size_t j = 0; j < raw.columns.size(); ++j) {
    const VariableMap& vm = lp.var_map[j];
    const double v = x_orig[static_cast<Index>(j)] - vm.shift;
    if (vm.minus_col >= 0) {
      x[vm.plus_col] = std::max(v, 0.0);
      x[vm.minus_col] = std::max(-v, 0.0);
    } else {
      x[vm.plus_col] = v;
    }
  }
  // fill slacks row by row: each row's slack has the highest column index in
  // that row and never appears in an earlier row, so a forward sweep settles
  // every slack from the row residual
  const auto offs = lp.a.row_offsets();
  const auto cols = lp.a.col_indices();
  const auto vals = lp.a.values();
  const Index n_con = static_cast<Index>(lp.row_slack_col.size());
  for (Index r = 0; r < lp.rows(); ++r) {
    Index s = -1;
    if (r < n_con) {
      s = lp.row_slack_col[static_cast<std::size_t>(r)];
      if (s < 0) continue;  // equality row, no slack
    } else {
      s = cols[static_cast<std::size_t>(offs[r + 1] - 1)];  // upper row: slack appended last
    }
    double coef = 0.0;
    double activity = 0.0;
    for (Index k = offs[r]; k < offs[r + 1]; ++k) {
      const Index cidx = cols[static_cast<std::size_t>(k)];
      if (cidx == s) {
        coef = vals[static_cast<std::size_t>(k)];
      } else {
        activity += vals[static_cast<std::size_t>(k)] * x[cidx];
      }
    }
    x[s] = (lp.b[r] - activity) / coef;
  }
  return x;
}

Vector row_activities(const RawLp& raw, const Vector& x_orig) {
  Vector act = Vector::Zero(raw.num_constraint_rows());
  std::vector<Index> row_of(static_cast<std::size_t>(raw.rows.size()), -1);
  Index next = 0;
  for (std::size_t i = 0; i < raw.rows.size(); ++i)
    if (static_cast<Index>(i) != raw.objective_row) row_of[i] = next++;
  for (const Triplet& e : raw.entries) {
    if (e.row == raw.objective_row) continue;
    act[row_of[static_cast<std::size_t>(e.row)]] += e.value * x_orig[e.col];
  }
  return act;
}

double original_objective(const RawLp& raw, const Vector& x_orig) {
  double obj = -raw.rhs[static_cast<std::size_t>(raw.objective_row)];
  for (const Triplet& e : raw.entries)
    if (e.row == raw.objective_row) obj += e.value * x_orig[e.col];
  return obj;
}

}  // namespace fhstep
