#include "surromix/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace surromix::csv {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

double parse_double(const std::string& s, const std::string& path, int line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    std::ostringstream os;
    os << path << ":" << line << ": not a number: '" << s << "'";
    throw Error(Errc::parse_error, os.str());
  }
}

std::int64_t parse_int(const std::string& s, const std::string& path,
                       int line) {
  std::int64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    std::ostringstream os;
    os << path << ":" << line << ": not an integer: '" << s << "'";
    throw Error(Errc::parse_error, os.str());
  }
  return v;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open file: " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Errc::io_error, "cannot open file for writing: " + path);
  }
  return out;
}

}  // namespace

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<scaling::LossPoint> read_loss_table(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  int lineno = 0;
  std::vector<scaling::LossPoint> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1) {
      if (line != "n,loss") {
        throw Error(Errc::parse_error,
                    path + ": expected header 'n,loss', got '" + line + "'");
      }
      continue;
    }
    const auto fields = split(line);
    if (fields.size() != 2) {
      std::ostringstream os;
      os << path << ":" << lineno << ": expected 2 fields, got "
         << fields.size();
      throw Error(Errc::parse_error, os.str());
    }
    out.push_back({parse_int(fields[0], path, lineno),
                   parse_double(fields[1], path, lineno)});
  }
  return out;
}

void write_loss_table(const std::string& path,
                      const std::vector<scaling::LossPoint>& points) {
  std::ofstream out = open_out(path);
  out << "n,loss\n";
  for (const auto& p : points) {
    out << p.n << "," << fmt17(p.loss) << "\n";
  }
  if (!out) throw Error(Errc::io_error, "failed writing file: " + path);
}

void write_results(const std::string& path,
                   const std::vector<sim::ResultRow>& rows) {
  std::ofstream out = open_out(path);
  out << "n,m,alpha,risk_mean,risk_se,replicates\n";
  for (const auto& r : rows) {
    out << r.n << "," << r.m << "," << fmt17(r.alpha) << ","
        << fmt17(r.risk_mean) << "," << fmt17(r.risk_se) << "," << r.replicates
        << "\n";
  }
  if (!out) throw Error(Errc::io_error, "failed writing file: " + path);
}

std::vector<sim::ResultRow> read_results(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  int lineno = 0;
  std::vector<sim::ResultRow> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1) {
      if (line != "n,m,alpha,risk_mean,risk_se,replicates") {
        throw Error(Errc::parse_error, path + ": unexpected header");
      }
      continue;
    }
    const auto fields = split(line);
    if (fields.size() != 6) {
      std::ostringstream os;
      os << path << ":" << lineno << ": expected 6 fields, got "
         << fields.size();
      throw Error(Errc::parse_error, os.str());
    }
    sim::ResultRow r;
    r.n = parse_int(fields[0], path, lineno);
    r.m = parse_int(fields[1], path, lineno);
    r.alpha = parse_double(fields[2], path, lineno);
    r.risk_mean = parse_double(fields[3], path, lineno);
    r.risk_se = parse_double(fields[4], path, lineno);
    r.replicates = static_cast<int>(parse_int(fields[5], path, lineno));
    out.push_back(r);
  }
  return out;
}

void write_curve(const std::string& path, const std::string& value_header,
                 const std::vector<std::pair<double, double>>& points,
                 const std::optional<std::string>& comment) {
  std::ofstream out = open_out(path);
  out << "alpha," << value_header << "\n";
  for (const auto& [a, v] : points) {
    out << fmt17(a) << "," << fmt17(v) << "\n";
  }
  if (comment) out << "# " << *comment << "\n";
  if (!out) throw Error(Errc::io_error, "failed writing file: " + path);
}

}  // namespace surromix::csv
