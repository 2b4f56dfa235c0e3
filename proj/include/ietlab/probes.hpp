#pragma once

// Empirical probes. Birkhoff sums run in double precision and never feed a
// verdict; recurrence gaps are measured on an exactly computed coding.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ietlab/coding.hpp"

namespace ietlab {

struct BirkhoffOptions {
  int starts = 10;
  long iterations = 1'000'000;
  int word_length = 1;
  std::uint64_t seed = 1;
  /// Overrides the random starting points when non-empty.
  std::vector<double> start_points;
};

struct FrequencyReport {
  std::vector<std::string> words;              // language words of the given length
  std::vector<double> start_points;
  std::vector<std::vector<double>> frequencies;  // [start][word], each sums to 1
  std::vector<long> rejected;                  // windows outside the language (rounding)
  double dispersion = 0;                       // max pairwise L-infinity distance
  long iterations = 0;
  int word_length = 1;
  std::uint64_t seed = 0;

  /// Words seen with positive frequency from the given start.
  std::vector<std::string> support(std::size_t start) const;
};

FrequencyReport birkhoff_frequencies(const CodedSystem& sys, const BirkhoffOptions& options = {});

std::string to_csv(const FrequencyReport& r);

struct RecurrenceRow {
  int n = 0;
  long max_gap = 0;        // largest distance between consecutive occurrences of one word
  double ratio = 0;        // max_gap / n
  std::string worst_word;
  std::vector<std::string> not_recurring;  // language words seen at most once
};

struct RecurrenceReport {
  long window = 0;
  std::vector<RecurrenceRow> rows;
  /// max ratio over the rows; an empirical stand-in for the constant K.
  double estimate() const;
};

/// Scans the coding of the orbit of 0 over `window` steps.
RecurrenceReport linear_recurrence_estimate(const CodedSystem& sys, int n_max, long window);

std::string to_csv(const RecurrenceReport& r);

}  // namespace ietlab
