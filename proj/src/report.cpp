#include <p1n/report.hpp>

#include <algorithm>
#include <iomanip>
#include <ostream>

namespace p1n {

CheckItem& Report::add(std::string name, double residual, double tol, std::string detail) {
  CheckItem item;
  item.name = std::move(name);
  item.residual = residual;
  item.tol = tol;
  item.pass = residual <= tol;
  item.detail = std::move(detail);
  items.push_back(std::move(item));
  return items.back();
}

bool Report::passed() const {
  for (const auto& item : items)
    if (!item.pass) return false;
  return true;
}

double Report::max_residual() const {
  double r = 0.0;
  for (const auto& item : items) r = std::max(r, item.residual);
  return r;
}

nlohmann::json report_json(const Report& r) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& item : r.items) {
    items.push_back({{"pair", item.name},
                     {"point", item.detail},
                     {"residual", item.residual},
                     {"tol", item.tol},
                     {"pass", item.pass}});
  }
  return {{"module", r.module},
          {"check", r.check},
          {"pass", r.passed()},
          {"max_residual", r.max_residual()},
          {"items", std::move(items)}};
}

void print_report(std::ostream& os, const Report& r) {
  os << r.module << "/" << r.check << ": " << (r.passed() ? "PASS" : "FAIL") << " ("
     << r.items.size() << " checks, max residual " << std::scientific << std::setprecision(3)
     << r.max_residual() << ")\n";
  std::size_t width = 4;
  for (const auto& item : r.items) width = std::max(width, item.name.size());
  for (const auto& item : r.items) {
    os << "  " << std::left << std::setw(static_cast<int>(width)) << item.name << "  "
       << std::scientific << std::setprecision(3) << item.residual << "  <= " << std::setprecision(1)
       << item.tol << "  " << (item.pass ? "PASS" : "FAIL");
    if (!item.detail.empty()) os << "  " << item.detail;
    os << "\n";
  }
}

}  // namespace p1n
