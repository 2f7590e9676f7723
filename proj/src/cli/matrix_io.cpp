#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "quasieig/cli.hpp"
#include "quasieig/matcore.hpp"

namespace qe::cli {

namespace {

struct Location {
  std::size_t line = 1;
  std::size_t column = 1;
};

Location locate(std::string_view text, std::size_t offset) {
  Location loc;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

[[noreturn]] void parse_fail(std::string_view source, Location at, const std::string& what) {
  throw Error(ErrorKind::ParseError, std::string(source) + ":" + std::to_string(at.line) + ":" +
                                         std::to_string(at.column) + ": " + what);
}

Matrix build(std::size_t n, std::size_t rows, const std::vector<std::vector<double>>& data) {
  if (n == 0) throw Error(ErrorKind::NonSquare, "dimension must be positive");
  if (rows != n) {
    throw Error(ErrorKind::NonSquare,
                "n = " + std::to_string(n) + " but " + std::to_string(rows) + " rows given");
  }
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : data) {
    if (row.size() != n) {
      throw Error(ErrorKind::NonSquare, "row of length " + std::to_string(row.size()) +
                                            " in a " + std::to_string(n) + "x" +
                                            std::to_string(n) + " matrix");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return Matrix(n, n, std::move(flat));
}

Matrix parse_json(std::string_view text, std::string_view source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(source, locate(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
  } catch (const nlohmann::json::out_of_range& e) {
    // Number literals beyond the double range.
    throw Error(ErrorKind::NonFinite, std::string(source) + ": " + e.what());
  }
  const Location top{1, 1};
  if (!doc.is_object()) parse_fail(source, top, "expected an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    parse_fail(source, top, "missing integer field \"n\"");
  if (!doc.contains("rows") || !doc["rows"].is_array())
    parse_fail(source, top, "missing array field \"rows\"");
  const auto n_signed = doc["n"].get<long long>();
  if (n_signed <= 0) throw Error(ErrorKind::NonSquare, "dimension must be positive");

  std::vector<std::vector<double>> data;
  std::size_t width = 0;
  for (const auto& row : doc["rows"]) {
    if (!row.is_array()) parse_fail(source, top, "row " + std::to_string(data.size()) + " is not an array");
    std::vector<double> values;
    for (const auto& x : row) {
      if (!x.is_number()) {
        parse_fail(source, top, "non-numeric entry in row " + std::to_string(data.size()));
      }
      values.push_back(x.get<double>());
    }
    if (!data.empty() && values.size() != width) {
      parse_fail(source, top, "row " + std::to_string(data.size()) + " has " +
                                  std::to_string(values.size()) + " entries, expected " +
                                  std::to_string(width));
    }
    width = values.size();
    data.push_back(std::move(values));
  }
  return build(static_cast<std::size_t>(n_signed), data.size(), data);
}

struct Token {
  std::string_view text;
  std::size_t offset;
};

Matrix parse_text(std::string_view text, std::string_view source) {
  // Tokens grouped by line; blank lines are skipped.
  std::vector<std::vector<Token>> lines;
  std::vector<Token> current;
  std::size_t i = 0;
  while (i <= text.size()) {
    if (i == text.size() || text[i] == '\n') {
      if (!current.empty()) lines.push_back(std::move(current));
      current.clear();
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    current.push_back({text.substr(start, i - start), start});
  }
  if (lines.empty()) parse_fail(source, {1, 1}, "empty input");

  const auto& head = lines.front();
  if (head.size() != 1) parse_fail(source, locate(text, head[0].offset), "first line must hold n alone");
  long long n_signed = 0;
  {
    const auto tok = head[0];
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), n_signed);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size())
      parse_fail(source, locate(text, tok.offset), "expected an integer dimension");
  }
  if (n_signed <= 0) throw Error(ErrorKind::NonSquare, "dimension must be positive");

  std::vector<std::vector<double>> data;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    std::vector<double> row;
    for (const auto& tok : lines[l]) {
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), x);
      if (ptr != tok.text.data() + tok.text.size() ||
          (ec != std::errc() && ec != std::errc::result_out_of_range)) {
        parse_fail(source, locate(text, tok.offset), "not a number: '" + std::string(tok.text) + "'");
      }
      if (ec == std::errc::result_out_of_range || !std::isfinite(x)) {
        const Location at = locate(text, tok.offset);
        throw Error(ErrorKind::NonFinite, std::string(source) + ":" + std::to_string(at.line) +
                                              ":" + std::to_string(at.column) +
                                              ": non-finite entry '" + std::string(tok.text) + "'");
      }
      row.push_back(x);
    }
    data.push_back(std::move(row));
  }
  return build(static_cast<std::size_t>(n_signed), data.size(), data);
}

}  // namespace

Matrix parse_matrix(std::string_view text, std::string_view source) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '{' ? parse_json(text, source) : parse_text(text, source);
  }
  parse_fail(source, {1, 1}, "empty input");
}

Matrix parse_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str(), path.string());
}

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  // "-0" would read back as the integer 0.
  if (x == 0.0 && std::signbit(x)) return "-0.0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string matrix_to_json(const Matrix& m) {
  std::string out = "{\"n\": " + std::to_string(m.rows()) + ", \"rows\": [";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += format_number(m(i, j));
    }
    out += "]";
  }
  return out + "]}";
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

Cone resolve_cone(const std::string& spec, std::size_t n) {
  if (spec == "orthant") return Cone::orthant(n);
  std::uint64_t seed = 0;
  auto [ptr, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), seed);
  if (ec == std::errc() && ptr == spec.data() + spec.size()) {
    return Cone::rotated(random_orthogonal(n, seed));
  }
  if (!std::filesystem::exists(spec)) {
    throw Error(ErrorKind::InvalidArgument,
                "cone must be 'orthant', an integer seed or a matrix file: " + spec);
  }
  Matrix u = parse_matrix_file(spec);
  if (u.n() != n) {
    throw Error(ErrorKind::DimensionMismatch, "cone matrix is " + std::to_string(u.n()) +
                                                  "x" + std::to_string(u.n()) + ", expected " +
                                                  std::to_string(n));
  }
  return Cone::rotated(std::move(u));
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConvergenceFailure:
    case ErrorKind::NumericalBreakdown:
    case ErrorKind::DegeneratePairing:
    case ErrorKind::DegenerateBasis:
      return kExitNumerical;
    case ErrorKind::NotInterior:
    case ErrorKind::NotNormal:
    case ErrorKind::UnsupportedDimension:
    case ErrorKind::NotInCone:
      return kExitNotApplicable;
    case ErrorKind::DimensionMismatch:
    case ErrorKind::NonFinite:
    case ErrorKind::NonSquare:
    case ErrorKind::ParseError:
    case ErrorKind::NotOrthogonal:
    case ErrorKind::InvalidArgument:
      return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qe::cli
