#include "boussinesq/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <locale>
#include <map>
#include <sstream>
#include <stdexcept>

#include "boussinesq/errors.hpp"

namespace boussinesq {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double x = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ConfigError("malformed number '" + s + "'");
  return x;
}

// "# tag k=v k=v ..." into a map.
std::map<std::string, std::string> parse_tagged(const std::string& line, std::string_view tag) {
  const std::string prefix = "# " + std::string(tag) + " ";
  if (line.rfind(prefix, 0) != 0) throw ConfigError("expected '" + prefix + "...' line");
  std::map<std::string, std::string> kv;
  for (const auto& item : split(line.substr(prefix.size()), ' ')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("malformed header item '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

const std::string& need(const std::map<std::string, std::string>& kv, const std::string& k) {
  const auto it = kv.find(k);
  if (it == kv.end()) throw ConfigError("diagnostics header lacks '" + k + "'");
  return it->second;
}

std::string expect_line(std::istream& is, const char* what) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError(std::string("diagnostics file truncated: no ") + what);
  return line;
}

}  // namespace

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << x;
  return os.str();
}

void write_diagnostics(std::ostream& os, const RunMetadata& m,
                       std::span<const DiagnosticRecord> records) {
  const auto& p = m.params;
  const auto& c = m.constants;
  os << kDiagnosticsSchema << '\n';
  os << "# params kappa=" << format_number(p.kappa) << " nu=" << format_number(p.nu)
     << " delta=" << format_number(p.delta) << " buoyancy=" << (p.buoyancy_on ? 1 : 0)
     << " n=" << m.n << " L=" << format_number(m.length) << " T=" << format_number(m.horizon)
     << " dt=" << format_number(m.dt)
     << " require_delta_condition=" << (m.require_delta_condition ? 1 : 0)
     << " residual_budget=" << format_number(m.residual_budget) << '\n';
  os << "# constants C_GN=" << format_number(c.gn) << " A1=" << format_number(c.a1)
     << " A2=" << format_number(c.a2) << " delta=" << format_number(c.delta)
     << " samples=" << c.samples << " seed=" << c.seed << '\n';
  const auto& cols = diagnostic_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& r : records) {
    const auto row = to_row(r);
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

DiagnosticsFile read_diagnostics(std::istream& is) {
  DiagnosticsFile f;
  std::string line = expect_line(is, "schema line");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kDiagnosticsSchema) throw ConfigError("not a diagnostics v1 file");

  const auto params = parse_tagged(expect_line(is, "params line"), "params");
  auto& m = f.meta;
  m.params.kappa = to_double(need(params, "kappa"));
  m.params.nu = to_double(need(params, "nu"));
  m.params.delta = to_double(need(params, "delta"));
  m.params.buoyancy_on = need(params, "buoyancy") == "1";
  m.n = static_cast<int>(to_double(need(params, "n")));
  m.length = to_double(need(params, "L"));
  m.horizon = to_double(need(params, "T"));
  m.dt = to_double(need(params, "dt"));
  m.require_delta_condition = need(params, "require_delta_condition") == "1";
  m.residual_budget = to_double(need(params, "residual_budget"));

  const auto consts = parse_tagged(expect_line(is, "constants line"), "constants");
  m.constants.gn = to_double(need(consts, "C_GN"));
  m.constants.a1 = to_double(need(consts, "A1"));
  m.constants.a2 = to_double(need(consts, "A2"));
  m.constants.delta = to_double(need(consts, "delta"));
  m.constants.samples = static_cast<int>(to_double(need(consts, "samples")));
  m.constants.seed = static_cast<std::uint64_t>(to_double(need(consts, "seed")));

  const auto header = split(expect_line(is, "column header"), ',');
  const auto& cols = diagnostic_columns();
  if (header.size() != cols.size()) throw ConfigError("diagnostics column count mismatch");
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (header[i] != cols[i]) throw ConfigError("unexpected column '" + header[i] + "'");

  std::vector<double> row;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    row.clear();
    for (const auto& cell : split(line, ',')) row.push_back(to_double(cell));
    if (row.size() != cols.size()) throw ConfigError("diagnostics row has wrong width");
    f.records.push_back(from_row(row));
  }
  return f;
}

DiagnosticsFile read_diagnostics(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read " + file.string());
  return read_diagnostics(in);
}

void write_checks(std::ostream& os, std::span<const InequalityReport> reports) {
  os << kChecksSchema << '\n';
  os << "check_id,lhs,rhs,margin,tolerance,pass,enforced,constants_used\n";
  for (const auto& r : reports) {
    os << r.check_id << ',' << format_number(r.lhs) << ',' << format_number(r.rhs) << ','
       << format_number(r.margin()) << ',' << format_number(r.tolerance) << ','
       << (r.pass ? "true" : "false") << ',' << (r.enforced ? "true" : "false") << ','
       << r.constants_used << '\n';
  }
}

std::vector<InequalityReport> read_checks(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kChecksSchema) throw ConfigError("not a checks v1 file");
  if (!std::getline(is, line)) throw ConfigError("checks file lacks a header");
  std::vector<InequalityReport> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != 8) throw ConfigError("checks row has wrong width");
    InequalityReport r;
    r.check_id = cells[0];
    r.lhs = to_double(cells[1]);
    r.rhs = to_double(cells[2]);
    r.tolerance = to_double(cells[4]);
    r.pass = cells[5] == "true";
    r.enforced = cells[6] == "true";
    r.constants_used = cells[7];
    out.push_back(std::move(r));
  }
  return out;
}

void write_summary(std::ostream& os, std::span<const InequalityReport> reports) {
  std::size_t width = 8;
  for (const auto& r : reports) width = std::max(width, r.check_id.size());
  for (const auto& r : reports) {
    os << r.check_id << std::string(width + 2 - r.check_id.size(), ' ') << "margin "
       << format_number(r.margin()) << "  " << (r.pass ? "pass" : "FAIL");
    if (!r.enforced) os << " (not enforced)";
    os << '\n';
  }
}

void write_file(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + file.string());
}

}  // namespace boussinesq
