#pragma once

#include "vrspam/solvers.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace vrspam::io {

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// Header: stage,grad_evals,elapsed_ms,objective,test_auc,update_variance,
/// dist_sq_to_ref. Optional columns are left empty when absent. elapsed_ms
/// is written as 0 unless with_timing, keeping equal runs byte-identical.
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace,
                     bool with_timing);

/// Inverse of write_trace_csv. Throws ParseError on malformed rows.
std::vector<TraceRecord> read_trace_csv(std::istream& in);

struct Model {
  Vector weights;
  nlohmann::json metadata;
};

void save_model(const std::string& path, const Vector& weights,
                const nlohmann::json& metadata);
Model load_model(const std::string& path);

}  // namespace vrspam::io
