#pragma once

#include "vrspam/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace vrspam {

/// One parsed line before label binarization.
struct RawRecord {
  long long label = 0;
  std::vector<Feature> features;
};

/// Parses sparse `label idx:val idx:val ...` text. Indices must be strictly
/// positive and strictly increasing within a line; labels must be integers.
/// Blank lines are skipped. Throws ParseError with a 1-based line number.
std::vector<RawRecord> parse_libsvm(std::istream& in);
std::vector<RawRecord> parse_libsvm(const std::string& text);

/// Same, reading from a file ("-" means stdin). Throws IoError if the file
/// cannot be opened.
std::vector<RawRecord> parse_libsvm_file(const std::string& path);

/// Writes samples in the same sparse format with round-trip float precision.
void write_libsvm(const Dataset& data, std::ostream& out);

/// Maps raw labels to {+1, -1}: pass-through when every label is already
/// +1 or -1, otherwise even -> +1 and odd -> -1. Dimension becomes the
/// largest feature index seen (0 for an empty set).
Dataset binarize_labels(const std::vector<RawRecord>& records);

/// Seeded shuffle split. Train gets the first floor(train_fraction * n)
/// samples of the permutation; both halves keep the parent dimension.
std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction,
                                  std::uint64_t seed);

/// Divides every feature value by the largest sample norm, so the rescaled
/// max norm is 1. Throws DataError when all samples are zero.
Dataset normalize(const Dataset& data);

/// Multiplies every feature value by `factor`. Used to map a held-out set
/// through the same rescaling as its training set.
Dataset scale(const Dataset& data, double factor);

/// Class prior, class-conditional means, max sample norm. Throws DataError
/// on empty or single-class data.
DatasetStats compute_stats(const Dataset& data);

}  // namespace vrspam
