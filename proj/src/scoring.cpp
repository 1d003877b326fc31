#include "ags/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ags {

void AgsConfig::validate() const {
  if (!(t > 0.0 && t < 1.0)) throw ArgumentError("t must lie in (0, 1)");
  if (!(s > 0.0)) throw ArgumentError("s must be positive");
  if (k < 1) throw ArgumentError("k must be at least 1");
  if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be positive");
  if (!(missing_dialect_delta >= 0.0 && missing_dialect_delta <= 1.0)) {
    throw ArgumentError("missing_dialect_delta must lie in [0, 1]");
  }
}

double smooth(double d, const AgsConfig& cfg) { return 1.0 / (1.0 + std::exp(-cfg.s * (cfg.t - d))); }

WordAgs word_ags(const AggregatedAlignments& agg, const std::vector<DialectId>& universe, const EtymologyModel& model,
                 const AgsConfig& cfg, const IndelConfig& costs) {
  WordAgs out{agg.key.surface, agg.key.dialect, {}, 0.0};
  const SymbolSeq word = split_graphemes(agg.key.surface);
  double sum = 0.0;
  for (const auto& e : universe) {
    if (e == agg.key.dialect && !cfg.include_self_dialect) continue;
    std::optional<double> best;
    if (const auto it = agg.counterparts.find(e); it != agg.counterparts.end()) {
      for (const auto& [cp, n] : it->second) {
        if (!cp) continue;
        const double d = normalized_distance(word, agg.key.dialect, split_graphemes(*cp), e, model, costs);
        if (!best || d < *best) best = d;
      }
    }
    if (e == agg.key.dialect && !best) best = normalized_distance(word, e, word, e, model, costs);
    if (!best) {
      if (cfg.missing_policy == MissingDialectPolicy::Exclude) continue;
      best = cfg.missing_dialect_delta;
    }
    out.deltas[e] = *best;
    sum += smooth(*best, cfg);
  }
  out.ags = out.deltas.empty() ? smooth(cfg.missing_dialect_delta, cfg) : sum / static_cast<double>(out.deltas.size());
  return out;
}

WordAgs word_ags(const WordKey& word, const AlignmentIndex& index, const std::vector<DialectId>& universe,
                 const EtymologyModel& model, const AgsConfig& cfg, const IndelConfig& costs) {
  const auto it = index.find(word);
  if (it == index.end()) throw LookupError("no aligned occurrences of '" + word.surface + "' (" + word.dialect.code() + ")");
  return word_ags(it->second, universe, model, cfg, costs);
}

double harmonic_k_lowest(std::span<const double> scores, int k, double epsilon) {
  if (scores.empty()) throw ArgumentError("sentence_ags: empty score list");
  if (k < 1) throw ArgumentError("sentence_ags: k must be at least 1");
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t used = std::min<std::size_t>(static_cast<std::size_t>(k), sorted.size());
  double inv = 0.0;
  for (std::size_t i = 0; i < used; ++i) inv += 1.0 / std::max(sorted[i], epsilon);
  return static_cast<double>(used) / inv;
}

double sentence_ags(std::span<const double> scores, const AgsConfig& cfg) {
  if (scores.empty()) throw ArgumentError("sentence_ags: empty score list");
  if (cfg.sentence_agg == SentenceAggregation::Mean) {
    return std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
  }
  return harmonic_k_lowest(scores, cfg.k, cfg.epsilon);
}

double multilabel_sentence_ags(const MultiLabelSentence& item) {
  const auto n_valid = static_cast<int>(item.valid_dialects.size());
  if (item.total_dialects < 1 || n_valid < 1 || n_valid > item.total_dialects) {
    throw ArgumentError("multi-label sentence needs 1 <= |valid| <= n");
  }
  return static_cast<double>(n_valid) / static_cast<double>(item.total_dialects);
}

double lookup_baseline(const std::string& word, const std::map<std::string, double>& table, double fallback) {
  const auto it = table.find(word);
  return it == table.end() ? fallback : it->second;
}

double rmse(std::span<const double> predicted, std::span<const double> gold) {
  if (predicted.size() != gold.size()) throw ArgumentError("rmse: length mismatch");
  if (predicted.empty()) throw ArgumentError("rmse: no items");
  double sq = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) sq += (predicted[i] - gold[i]) * (predicted[i] - gold[i]);
  return std::sqrt(sq / static_cast<double>(predicted.size()));
}

}  // namespace ags
