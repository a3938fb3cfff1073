#ifndef SURROMIX_CSV_HPP
#define SURROMIX_CSV_HPP

#include <optional>
#include <string>
#include <vector>

#include "surromix/scaling.hpp"
#include "surromix/sim.hpp"

// CSV input/output. All floating-point values are written with 17
// significant digits, so parsing them back reproduces the in-memory doubles
// exactly.

namespace surromix::csv {

// Formats a double with "%.17g".
std::string fmt17(double v);

// Loss tables: header "n,loss", one measured point per row.
std::vector<scaling::LossPoint> read_loss_table(const std::string& path);
void write_loss_table(const std::string& path,
                      const std::vector<scaling::LossPoint>& points);

// Experiment results: header "n,m,alpha,risk_mean,risk_se,replicates".
void write_results(const std::string& path,
                   const std::vector<sim::ResultRow>& rows);
std::vector<sim::ResultRow> read_results(const std::string& path);

// Two-column curve ("alpha,<value_header>") with an optional trailing
// comment line.
void write_curve(const std::string& path, const std::string& value_header,
                 const std::vector<std::pair<double, double>>& points,
                 const std::optional<std::string>& comment);

}  // namespace surromix::csv

#endif
