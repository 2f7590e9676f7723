#include <cstdio>

#include "quasieig/cli.hpp"
#include "report.hpp"

namespace qe::cli {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out + "\"";
}

std::string number_or_null(const std::optional<double>& x) {
  return x ? format_number(*x) : "null";
}

std::string vector_or_null(const std::optional<Vector>& v) {
  if (!v) return "null";
  std::string out = "[";
  for (std::size_t i = 0; i < v->size(); ++i) {
    if (i) out += ", ";
    out += format_number((*v)[i]);
  }
  return out + "]";
}

std::string report_json(const TheoremReport& t) {
  return "{\"name\": " + quoted(t.name) + ", \"applicable\": " + (t.applicable ? "true" : "false") +
         ", \"holds\": " + (t.holds ? "true" : "false") + ", \"lhs\": " + format_number(t.lhs) +
         ", \"rhs\": " + format_number(t.rhs) + ", \"slack\": " + format_number(t.slack) +
         ", \"tolerance\": " + format_number(t.tolerance) + ", \"details\": " + quoted(t.details) +
         "}";
}

std::string human_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

std::string to_json(const Report& r) {
  std::string out = "{";
  out += "\"subcommand\": " + quoted(r.subcommand);
  out += ", \"input_digest\": " + quoted(r.input_digest);
  out += ", \"lambda_upper\": " + number_or_null(r.lambda_upper);
  out += ", \"lambda_lower\": " + number_or_null(r.lambda_lower);
  out += ", \"u_right\": " + vector_or_null(r.u_right);
  out += ", \"v_left\": " + vector_or_null(r.v_left);
  out += ", \"flags\": {";
  for (std::size_t i = 0; i < r.flags.size(); ++i) {
    if (i) out += ", ";
    out += quoted(r.flags[i].first) + ": " + (r.flags[i].second ? "true" : "false");
  }
  out += "}, \"values\": {";
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (i) out += ", ";
    out += quoted(r.values[i].first) + ": " + format_number(r.values[i].second);
  }
  out += "}, \"theorem_reports\": [";
  for (std::size_t i = 0; i < r.theorem_reports.size(); ++i) {
    if (i) out += ", ";
    out += report_json(r.theorem_reports[i]);
  }
  out += "], \"tol\": " + format_number(r.tol);
  out += ", \"seed\": " + std::to_string(r.seed);
  return out + "}\n";
}

std::string to_human(const Report& r) {
  std::string out = r.subcommand + " (input " + r.input_digest + ")\n";
  auto vec = [](const Vector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + human_number(v[i]);
    return s + ")";
  };
  if (r.lambda_upper) out += "  upper quasi-eigenvalue  " + human_number(*r.lambda_upper) + "\n";
  if (r.lambda_lower) out += "  lower quasi-eigenvalue  " + human_number(*r.lambda_lower) + "\n";
  if (r.u_right) out += "  right quasi-eigenvector " + vec(*r.u_right) + "\n";
  if (r.v_left) out += "  left quasi-eigenvector  " + vec(*r.v_left) + "\n";
  for (const auto& [name, on] : r.flags) out += "  " + name + ": " + (on ? "yes" : "no") + "\n";
  for (const auto& [name, x] : r.values) out += "  " + name + " = " + human_number(x) + "\n";
  for (const auto& t : r.theorem_reports) {
    const char* status = !t.applicable ? "n/a " : t.holds ? "ok  " : "FAIL";
    out += "  [" + std::string(status) + "] " + t.name;
    if (t.applicable) out += "  slack " + human_number(t.slack);
    out += "\n      " + t.details + "\n";
  }
  return out;
}

}  // namespace qe::cli
