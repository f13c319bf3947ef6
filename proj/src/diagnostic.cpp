#include "iff/diagnostic.hpp"

#include <algorithm>
#include <tuple>

namespace iff {

std::string_view severity_text(Severity s) {
  switch (s) {
    case Severity::error: return "error";
    case Severity::warning: return "warning";
    case Severity::info: return "info";
  }
  return "error";
}

std::string format_text(const Diagnostic& d) {
  std::string out(severity_text(d.severity));
  out += ' ' + d.code + ' ' + d.file + ':' + std::to_string(d.line) + ':' + std::to_string(d.column);
  out += " [" + d.namespace_name + "] " + d.message;
  return out;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_sexp(const Diagnostic& d) {
  std::string ns = d.namespace_name.empty() ? "-" : d.namespace_name;
  return "(diagnostic " + std::string(severity_text(d.severity)) + ' ' + d.code + " (site " + quote(d.file) + ' ' +
         std::to_string(d.line) + ' ' + std::to_string(d.column) + ' ' + ns + ") " + quote(d.message) + ')';
}

void sort_diagnostics(std::vector<Diagnostic>& ds) {
  std::stable_sort(ds.begin(), ds.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.file, a.line, a.column, a.code, a.message) <
           std::tie(b.file, b.line, b.column, b.code, b.message);
  });
}

std::size_t count_severity(const std::vector<Diagnostic>& ds, Severity s) {
  return static_cast<std::size_t>(
      std::count_if(ds.begin(), ds.end(), [s](const Diagnostic& d) { return d.severity == s; }));
}

}  // namespace iff
