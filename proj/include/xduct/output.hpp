#pragma once

#include <ostream>
#include <string>

#include "json.hpp"
#include "xduct/experiments.hpp"

namespace xduct::output {

/// Shortest locale-independent form with 17 significant digits.
std::string format_double(double x);

/// Columns: <axis>,eta_const,S_const,eta_pd1,S_pd1,eta_pd2,S_pd2,lb_pd2,comm_resid.
/// comm_resid is the largest residual of the three protocols at that row.
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

nlohmann::json to_json(const NoiseReport& r);
nlohmann::json to_json(const TransferSolution& sol);
nlohmann::json to_json(const StabilityReport& s);
nlohmann::json to_json(const SweepResult& sweep);  // crossings only

}  // namespace xduct::output
