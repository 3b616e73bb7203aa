#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <unordered_set>

#include "mesc/milp/model.hpp"

namespace mesc::milp {

namespace detail {

inline std::string lp_number(double v) {
  if (v == std::rint(v) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline bool lp_name_ok(const std::string& name) {
  if (name.empty()) return false;
  char first = name[0];
  if (std::isdigit(static_cast<unsigned char>(first)) || first == '.') return false;
  for (char c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
          c == '(' || c == ')' || c == '#')) {
      return false;
    }
  }
  return true;
}

inline void lp_append_term(std::string& line, std::string& out, double coef,
                           const std::string& name, bool first) {
  std::string term;
  if (coef >= 0.0) {
    term = first ? "" : "+ ";
  } else {
    term = "- ";
    coef = -coef;
  }
  term += lp_number(coef) + " " + name + " ";
  if (line.size() + term.size() > 200) {
    out += line;
    out += "\n";
    line = "   ";
  }
  line += term;
}

}  // namespace detail

// Writes the model in the industry-standard LP text layout
// (Minimize / Subject To / Bounds / Binaries / End). Variable names must be
// unique and well formed; the export refuses duplicate names up front.
inline std::string lp_format_text(const MilpModel& model) {
  std::unordered_set<std::string> seen;
  std::vector<std::string> names(model.num_variables());
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    std::string name = model.variable(static_cast<VarId>(j)).name;
    if (name.empty()) name = "x" + std::to_string(j);
    if (!detail::lp_name_ok(name)) {
      throw ModelError("lp export: variable name '" + name + "' is not LP-format safe");
    }
    if (!seen.insert(name).second) {
      throw ModelError("lp export: duplicate variable name '" + name + "'");
    }
    names[j] = std::move(name);
  }

  std::string out;
  out.reserve(model.num_constraints() * 64 + model.num_variables() * 32);
  out += "\\ generated by mesc\n";
  out += "Minimize\n";
  {
    std::string line = " obj: ";
    bool first = true;
    const auto& obj = model.objective();
    for (std::size_t j = 0; j < obj.size(); ++j) {
      if (obj[j] == 0.0) continue;
      detail::lp_append_term(line, out, obj[j], names[j], first);
      first = false;
    }
    if (first) line += "0 " + (names.empty() ? std::string("x0") : names[0]) + " ";
    out += line;
    out += "\n";
  }

  out += "Subject To\n";
  long row_idx = 0;
  for (const auto& con : model.constraints()) {
    std::string rname = con.name.empty() ? "c" + std::to_string(row_idx) : con.name;
    if (!detail::lp_name_ok(rname)) rname = "c" + std::to_string(row_idx);
    std::string line = " " + rname + ": ";
    bool first = true;
    for (const auto& [id, coef] : con.terms) {
      if (coef == 0.0) continue;
      detail::lp_append_term(line, out, coef, names[id], first);
      first = false;
    }
    if (first) line += "0 " + names[con.terms.empty() ? 0 : con.terms[0].first] + " ";
    switch (con.sense) {
      case Sense::LessEqual: line += "<= "; break;
      case Sense::Equal: line += "= "; break;
      case Sense::GreaterEqual: line += ">= "; break;
    }
    line += detail::lp_number(con.rhs);
    out += line;
    out += "\n";
    ++row_idx;
  }

  out += "Bounds\n";
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    const Variable& v = model.variable(static_cast<VarId>(j));
    out += " ";
    if (!std::isfinite(v.lower) && !std::isfinite(v.upper)) {
      out += names[j] + " free";
    } else {
      if (std::isfinite(v.lower)) out += detail::lp_number(v.lower) + " <= ";
      else out += "-inf <= ";
      out += names[j];
      if (std::isfinite(v.upper)) out += " <= " + detail::lp_number(v.upper);
    }
    out += "\n";
  }

  bool any_binary = false;
  for (const auto& v : model.variables()) any_binary |= (v.kind == VarKind::Binary);
  if (any_binary) {
    out += "Binaries\n";
    for (std::size_t j = 0; j < model.num_variables(); ++j) {
      if (model.variable(static_cast<VarId>(j)).kind == VarKind::Binary) {
        out += " " + names[j] + "\n";
      }
    }
  }
  out += "End\n";
  return out;
}

inline void export_lp_text(const MilpModel& model, const std::string& path) {
  std::string text = lp_format_text(model);
  std::ofstream file(path);
  if (!file) throw IoError("lp export: cannot open '" + path + "' for writing");
  file << text;
  if (!file.good()) throw IoError("lp export: write to '" + path + "' failed");
}

}  // namespace mesc::milp
