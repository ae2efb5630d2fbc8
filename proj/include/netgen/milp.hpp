#pragma once

// Solver-agnostic mixed-integer linear program: variables, linear rows,
// objective, and CPLEX-LP text export.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace netgen {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using VarId = std::size_t;
using RowId = std::size_t;

enum class VarKind { binary, continuous };
enum class Sense { le, eq, ge };
enum class ObjSense { minimize, maximize };

struct Term {
  VarId var;
  double coef;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Variable {
  std::string name;
  VarKind kind = VarKind::continuous;
  double lower = 0.0;
  double upper = 0.0;
  int branch_priority = 0;  // higher = branch earlier
};

struct LinearConstraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::le;
  double rhs = 0.0;
};

struct Objective {
  ObjSense sense = ObjSense::minimize;
  std::vector<Term> terms;
  double constant = 0.0;
};

class MilpModel {
 public:
  VarId add_variable(std::string name, VarKind kind, double lower, double upper,
                     int branch_priority = 0) {
    if (name.empty()) throw Error("variable name must not be empty");
    if (index_.count(name)) throw Error("duplicate variable name: " + name);
    if (std::isnan(lower) || std::isnan(upper) || lower > upper)
      throw Error("inverted bounds for variable " + name);
    if (kind == VarKind::binary) {
      if ((lower != 0.0 && lower != 1.0) || (upper != 0.0 && upper != 1.0))
        throw Error("binary variable " + name + " needs bounds in {0,1}");
    }
    const VarId id = vars_.size();
    index_.emplace(name, id);
    vars_.push_back(Variable{std::move(name), kind, lower, upper, branch_priority});
    return id;
  }

  RowId add_linear_constraint(std::string name, std::vector<Term> terms, Sense sense,
                              double rhs) {
    auto merged = merge_terms(std::move(terms));
    rows_.push_back(LinearConstraint{std::move(name), std::move(merged), sense, rhs});
    return rows_.size() - 1;
  }

  void set_objective(ObjSense sense, std::vector<Term> terms, double constant = 0.0) {
    objective_ = Objective{sense, merge_terms(std::move(terms)), constant};
  }

  // Bound edits are used by presolve-style fixing (e.g. slacks removed).
  void set_bounds(VarId v, double lower, double upper) {
    check_var(v);
    if (lower > upper) throw Error("inverted bounds for variable " + vars_[v].name);
    vars_[v].lower = lower;
    vars_[v].upper = upper;
  }

  [[nodiscard]] const std::vector<Variable>& variables() const { return vars_; }
  [[nodiscard]] const std::vector<LinearConstraint>& constraints() const { return rows_; }
  [[nodiscard]] const Objective& objective() const { return objective_; }
  [[nodiscard]] const Variable& variable(VarId v) const { return vars_.at(v); }
  [[nodiscard]] std::size_t num_variables() const { return vars_.size(); }
  [[nodiscard]] std::size_t num_constraints() const { return rows_.size(); }

  [[nodiscard]] std::optional<VarId> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] VarId id_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error("unknown variable: " + name);
    return it->second;
  }

  // Activity of a row under a full assignment.
  [[nodiscard]] static double activity(const LinearConstraint& row,
                                       const std::vector<double>& x) {
    double s = 0.0;
    for (const auto& t : row.terms) s += t.coef * x[t.var];
    return s;
  }

  [[nodiscard]] double objective_value(const std::vector<double>& x) const {
    double s = objective_.constant;
    for (const auto& t : objective_.terms) s += t.coef * x[t.var];
    return s;
  }

  // Largest violation of any row or bound, and the name of the worst offender.
  [[nodiscard]] std::pair<double, std::string> max_violation(
      const std::vector<double>& x) const {
    double worst = 0.0;
    std::string who;
    for (VarId v = 0; v < vars_.size(); ++v) {
      double viol = std::max(vars_[v].lower - x[v], x[v] - vars_[v].upper);
      if (viol > worst) {
        worst = viol;
        who = vars_[v].name;
      }
    }
    for (const auto& r : rows_) {
      const double a = activity(r, x);
      double viol = 0.0;
      switch (r.sense) {
        case Sense::le: viol = a - r.rhs; break;
        case Sense::ge: viol = r.rhs - a; break;
        case Sense::eq: viol = std::abs(a - r.rhs); break;
      }
      if (viol > worst) {
        worst = viol;
        who = r.name;
      }
    }
    return {worst, who};
  }

 private:
  void check_var(VarId v) const {
    if (v >= vars_.size()) throw Error("unknown variable id " + std::to_string(v));
  }

  std::vector<Term> merge_terms(std::vector<Term> terms) const {
    std::vector<Term> out;
    out.reserve(terms.size());
    for (const auto& t : terms) {
      check_var(t.var);
      auto it = std::find_if(out.begin(), out.end(),
                             [&](const Term& o) { return o.var == t.var; });
      if (it == out.end())
        out.push_back(t);
      else
        it->coef += t.coef;
    }
    std::erase_if(out, [](const Term& t) { return t.coef == 0.0; });
    return out;
  }

  std::vector<Variable> vars_;
  std::vector<LinearConstraint> rows_;
  Objective objective_;
  std::unordered_map<std::string, VarId> index_;
};

namespace detail {

inline std::string fmt_num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

inline void append_terms(std::string& line, std::ostringstream& out,
                         const std::vector<Term>& terms, const MilpModel& m) {
  bool first = true;
  for (const auto& t : terms) {
    std::string piece;
    const double a = std::abs(t.coef);
    const char* sign = t.coef < 0 ? "- " : (first ? "" : "+ ");
    piece += sign;
    if (a != 1.0) piece += fmt_num(a) + " ";
    piece += m.variable(t.var).name;
    // Keep physical lines short; LP readers cap line length.
    if (line.size() + piece.size() + 1 > 250) {
      out << line << "\n";
      line = "   ";
    }
    line += " " + piece;
    first = false;
  }
  if (first) line += " 0";
}

}  // namespace detail

// CPLEX-LP dialect. Byte-deterministic for a given model.
inline std::string write_lp_format(const MilpModel& m) {
  std::ostringstream out;
  const auto& obj = m.objective();
  out << "\\ generated by netgen\n";
  out << (obj.sense == ObjSense::minimize ? "Minimize\n" : "Maximize\n");
  {
    std::string line = " obj:";
    auto terms = obj.terms;
    detail::append_terms(line, out, terms, m);
    if (obj.constant != 0.0) {
      line += obj.constant < 0 ? " - " : " + ";
      line += detail::fmt_num(std::abs(obj.constant));
    }
    out << line << "\n";
  }
  out << "Subject To\n";
  std::size_t idx = 0;
  for (const auto& r : m.constraints()) {
    std::string name = r.name.empty() ? "c" + std::to_string(idx) : r.name;
    std::string line = " " + name + ":";
    detail::append_terms(line, out, r.terms, m);
    const char* op = r.sense == Sense::le ? " <= " : (r.sense == Sense::ge ? " >= " : " = ");
    line += op + detail::fmt_num(r.rhs);
    out << line << "\n";
    ++idx;
  }
  out << "Bounds\n";
  for (const auto& v : m.variables()) {
    if (v.kind == VarKind::binary && v.lower == 0.0 && v.upper == 1.0) continue;
    if (v.lower == v.upper) {
      out << " " << v.name << " = " << detail::fmt_num(v.lower) << "\n";
      continue;
    }
    std::string lo = std::isinf(v.lower) ? "-inf" : detail::fmt_num(v.lower);
    std::string hi = std::isinf(v.upper) ? "+inf" : detail::fmt_num(v.upper);
    out << " " << lo << " <= " << v.name << " <= " << hi << "\n";
  }
  bool any_bin = false;
  for (const auto& v : m.variables()) {
    if (v.kind != VarKind::binary) continue;
    if (!any_bin) out << "Binaries\n";
    any_bin = true;
    out << " " << v.name << "\n";
  }
  out << "End\n";
  return out.str();
}

// "name value" per line; '#' starts a comment. Unknown names are an error.
inline std::vector<std::pair<std::string, double>> parse_solution_text(const std::string& text) {
  std::vector<std::pair<std::string, double>> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;
    double value = 0.0;
    if (!(ls >> value))
      throw Error("solution line " + std::to_string(lineno) + ": missing value for " + name);
    out.emplace_back(name, value);
  }
  return out;
}

inline std::string format_solution_text(const MilpModel& m, const std::vector<double>& x) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (VarId v = 0; v < m.num_variables(); ++v) out << m.variable(v).name << " " << x[v] << "\n";
  return out.str();
}

}  // namespace netgen
