#include "vrspam/dataio.hpp"

#include "vrspam/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string_view>
#include <system_error>

namespace vrspam {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view next_token(std::string_view line, std::size_t& pos) {
  while (pos < line.size() && is_space(line[pos])) ++pos;
  const std::size_t start = pos;
  while (pos < line.size() && !is_space(line[pos])) ++pos;
  return line.substr(start, pos - start);
}

// from_chars does not accept the conventional leading '+'.
std::string_view drop_plus(std::string_view tok) {
  if (tok.size() > 1 && tok.front() == '+') tok.remove_prefix(1);
  return tok;
}

long long parse_label(std::string_view tok, std::size_t lineno) {
  const std::string_view body = drop_plus(tok);
  long long value = 0;
  const char* first = body.data();
  const char* last = body.data() + body.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError("non-integer label '" + std::string(tok) + "'", lineno);
  return value;
}

Feature parse_feature(std::string_view tok, std::size_t lineno) {
  const std::size_t colon = tok.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == tok.size())
    throw ParseError("malformed feature token '" + std::string(tok) + "'", lineno);

  Feature f;
  {
    const char* first = tok.data();
    const char* last = tok.data() + colon;
    auto [ptr, ec] = std::from_chars(first, last, f.index);
    if (ec != std::errc() || ptr != last || f.index <= 0)
      throw ParseError("bad feature index in '" + std::string(tok) + "'", lineno);
  }
  {
    const std::string_view body = drop_plus(tok.substr(colon + 1));
    const char* first = body.data();
    const char* last = body.data() + body.size();
    auto [ptr, ec] = std::from_chars(first, last, f.value);
    if (ec != std::errc() || ptr != last)
      throw ParseError("bad feature value in '" + std::string(tok) + "'", lineno);
  }
  return f;
}

void format_double(std::ostream& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.write(buf, ptr - buf);
}

}  // namespace

std::vector<RawRecord> parse_libsvm(std::istream& in) {
  std::vector<RawRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    std::size_t pos = 0;
    const std::string_view label_tok = next_token(view, pos);
    if (label_tok.empty()) continue;

    RawRecord rec;
    rec.label = parse_label(label_tok, lineno);
    std::int32_t prev_index = 0;
    for (;;) {
      const std::string_view tok = next_token(view, pos);
      if (tok.empty()) break;
      Feature f = parse_feature(tok, lineno);
      if (f.index <= prev_index)
        throw ParseError("non-ascending feature index " + std::to_string(f.index), lineno);
      prev_index = f.index;
      rec.features.push_back(f);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<RawRecord> parse_libsvm(const std::string& text) {
  std::istringstream in(text);
  return parse_libsvm(in);
}

std::vector<RawRecord> parse_libsvm_file(const std::string& path) {
  if (path == "-") return parse_libsvm(std::cin);
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_libsvm(in);
}

void write_libsvm(const Dataset& data, std::ostream& out) {
  for (const Sample& s : data.samples) {
    out << s.label;
    for (const Feature& f : s.features) {
      out << ' ' << f.index << ':';
      format_double(out, f.value);
    }
    out << '\n';
  }
}

Dataset binarize_labels(const std::vector<RawRecord>& records) {
  bool already_binary = true;
  for (const RawRecord& r : records) {
    if (r.label != 1 && r.label != -1) {
      already_binary = false;
      break;
    }
  }

  Dataset data;
  data.samples.reserve(records.size());
  for (const RawRecord& r : records) {
    Sample s;
    s.features = r.features;
    if (already_binary)
      s.label = static_cast<int>(r.label);
    else
      s.label = (r.label % 2 == 0) ? 1 : -1;
    for (const Feature& f : s.features) data.dimension = std::max(data.dimension, f.index);
    data.samples.push_back(std::move(s));
  }
  return data;
}

std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction,
                                  std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ConfigError("train fraction must be in (0, 1)");
  if (data.empty()) throw DataError("cannot split an empty dataset");

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order);

  const auto n_train =
      static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(data.size())));

  Dataset train, test;
  train.dimension = data.dimension;
  test.dimension = data.dimension;
  train.samples.reserve(n_train);
  test.samples.reserve(data.size() - n_train);
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_train ? train : test).samples.push_back(data.samples[order[i]]);
  }
  return {std::move(train), std::move(test)};
}

Dataset scale(const Dataset& data, double factor) {
  Dataset out = data;
  for (Sample& s : out.samples)
    for (Feature& f : s.features) f.value *= factor;
  return out;
}

Dataset normalize(const Dataset& data) {
  double max_sq = 0.0;
  for (const Sample& s : data.samples) max_sq = std::max(max_sq, s.squared_norm());
  if (max_sq == 0.0) throw DataError("cannot normalize an all-zero dataset");
  const double max_norm = std::sqrt(max_sq);

  Dataset out = data;
  for (Sample& s : out.samples)
    for (Feature& f : s.features) f.value /= max_norm;
  return out;
}

DatasetStats compute_stats(const Dataset& data) {
  if (data.empty()) throw DataError("cannot compute stats of an empty dataset");

  const Eigen::Index d = data.dimension;
  Vector sum_pos = Vector::Zero(d);
  Vector sum_neg = Vector::Zero(d);
  std::size_t n_pos = 0, n_neg = 0;
  double max_sq = 0.0;

  for (const Sample& s : data.samples) {
    Vector& sum = (s.label > 0) ? sum_pos : sum_neg;
    (s.label > 0 ? n_pos : n_neg) += 1;
    for (const Feature& f : s.features) sum[f.index - 1] += f.value;
    max_sq = std::max(max_sq, s.squared_norm());
  }

  if (n_pos == 0 || n_neg == 0)
    throw DataError("single-class dataset: p(1-p) = 0, surrogate degenerate");

  DatasetStats stats;
  stats.n_pos = n_pos;
  stats.n_neg = n_neg;
  stats.positive_fraction =
      static_cast<double>(n_pos) / static_cast<double>(n_pos + n_neg);
  stats.mean_pos = sum_pos / static_cast<double>(n_pos);
  stats.mean_neg = sum_neg / static_cast<double>(n_neg);
  stats.max_norm = std::sqrt(max_sq);
  return stats;
}

}  // namespace vrspam
