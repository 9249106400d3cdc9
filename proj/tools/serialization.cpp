#include "serialization.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace vrspam::io {

namespace {

const char* const kHeader =
    "stage,grad_evals,elapsed_ms,objective,test_auc,update_variance,dist_sq_to_ref";

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

template <typename T>
T parse_number(std::string_view field, std::size_t lineno) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError("bad trace field '" + std::string(field) + "'", lineno);
  return value;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace,
                     bool with_timing) {
  out << kHeader << '\n';
  for (const TraceRecord& rec : trace) {
    out << rec.stage << ',' << rec.grad_evals << ','
        << format_double(with_timing ? rec.elapsed_ms : 0.0) << ','
        << format_double(rec.objective) << ',';
    if (rec.test_auc) out << format_double(*rec.test_auc);
    out << ',' << format_double(rec.update_variance) << ',';
    if (rec.dist_sq_to_ref) out << format_double(*rec.dist_sq_to_ref);
    out << '\n';
  }
}

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line) || line != kHeader)
    throw ParseError("missing or unexpected trace header", 1);
  ++lineno;

  std::vector<TraceRecord> trace;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 7) throw ParseError("expected 7 trace fields", lineno);

    TraceRecord rec;
    rec.stage = parse_number<std::size_t>(fields[0], lineno);
    rec.grad_evals = parse_number<std::uint64_t>(fields[1], lineno);
    rec.elapsed_ms = parse_number<double>(fields[2], lineno);
    rec.objective = parse_number<double>(fields[3], lineno);
    if (!fields[4].empty()) rec.test_auc = parse_number<double>(fields[4], lineno);
    rec.update_variance = parse_number<double>(fields[5], lineno);
    if (!fields[6].empty()) rec.dist_sq_to_ref = parse_number<double>(fields[6], lineno);
    trace.push_back(rec);
  }
  return trace;
}

void save_model(const std::string& path, const Vector& weights,
                const nlohmann::json& metadata) {
  nlohmann::json j;
  j["dimension"] = weights.size();
  j["weights"] = std::vector<double>(weights.data(), weights.data() + weights.size());
  j["metadata"] = metadata;

  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file '" + path + "'");
  out << j.dump(2) << '\n';
}

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file '" + path + "'");

  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad model JSON: ") + e.what(), 1);
  }
  if (!j.contains("dimension") || !j.contains("weights"))
    throw ParseError("model JSON needs 'dimension' and 'weights'", 1);

  const auto values = j["weights"].get<std::vector<double>>();
  if (values.size() != j["dimension"].get<std::size_t>())
    throw ParseError("model dimension does not match the weight count", 1);

  Model model;
  model.weights = Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
  model.metadata = j.value("metadata", nlohmann::json::object());
  return model;
}

}  // namespace vrspam::io
