#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace p1n {

/// One verified identity: a residual measured against a tolerance, plus a
/// short description of where the worst value occurred.
struct CheckItem {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string detail;
};

/// Outcome of one verification sweep.  Items keep deterministic construction
/// order (sorted index order), so serialized reports are reproducible.
struct Report {
  std::string module;
  std::string check;
  std::vector<CheckItem> items;

  CheckItem& add(std::string name, double residual, double tol, std::string detail = {});
  bool passed() const;
  double max_residual() const;
};

/// JSON form: {module, check, pass, max_residual, items:[{pair, point, residual, tol, pass}]}.
nlohmann::json report_json(const Report& r);

/// Aligned human-readable table, one row per item.
void print_report(std::ostream& os, const Report& r);

}  // namespace p1n
