#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ags/alignment.hpp"
#include "ags/corpus.hpp"
#include "ags/distance.hpp"
#include "ags/etymology.hpp"

namespace ags {

enum class MissingDialectPolicy { UseDelta, Exclude };
enum class SentenceAggregation { HarmonicK, Mean };

struct AgsConfig {
  double t = 0.5;
  double s = 20.0;
  int k = 2;
  double missing_dialect_delta = 1.0;
  MissingDialectPolicy missing_policy = MissingDialectPolicy::UseDelta;
  bool include_self_dialect = false;
  double epsilon = 1e-4;
  SentenceAggregation sentence_agg = SentenceAggregation::HarmonicK;

  // Throws ArgumentError when a field is out of range.
  void validate() const;
};

// Logistic soft threshold 1 / (1 + exp(-s (t - d))).
double smooth(double d, const AgsConfig& cfg);

struct WordAgs {
  std::string word;
  DialectId dialect;
  std::map<DialectId, double> deltas;  // dialects that entered the mean
  double ags = 0.0;
};

// Mean of smoothed per-dialect minimum distances over the universe (minus the
// word's own dialect unless include_self_dialect). When no dialect contributes
// the score is smooth(missing_dialect_delta).
WordAgs word_ags(const AggregatedAlignments& agg, const std::vector<DialectId>& universe, const EtymologyModel& model,
                 const AgsConfig& cfg, const IndelConfig& costs = {});
// Throws LookupError when the word has no aggregation entry.
WordAgs word_ags(const WordKey& word, const AlignmentIndex& index, const std::vector<DialectId>& universe,
                 const EtymologyModel& model, const AgsConfig& cfg, const IndelConfig& costs = {});

// Harmonic mean of the min(k, n) lowest scores (each clamped to >= epsilon),
// or the arithmetic mean of all scores in Mean mode.
double sentence_ags(std::span<const double> scores, const AgsConfig& cfg);
double harmonic_k_lowest(std::span<const double> scores, int k, double epsilon);

double multilabel_sentence_ags(const MultiLabelSentence& item);

double lookup_baseline(const std::string& word, const std::map<std::string, double>& table, double fallback = 0.5);

double rmse(std::span<const double> predicted, std::span<const double> gold);

}  // namespace ags
