#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace iff {

enum class Severity { error, warning, info };

std::string_view severity_text(Severity s);

struct Diagnostic {
  std::string code;
  Severity severity = Severity::error;
  std::string file;
  int line = 0;
  int column = 0;
  std::string namespace_name;
  std::string message;
};

/// `SEVERITY CODE file:line:col [namespace] message`
std::string format_text(const Diagnostic& d);

/// `(diagnostic SEVERITY CODE (site "file" line col NAMESPACE) "message")`
std::string format_sexp(const Diagnostic& d);

/// Orders by (file, line, column, code), then by message for stability.
void sort_diagnostics(std::vector<Diagnostic>& ds);

std::size_t count_severity(const std::vector<Diagnostic>& ds, Severity s);

/// Double-quoted string with `\"` and `\\` escapes.
std::string quote(std::string_view s);

}  // namespace iff
