#pragma once

#include <Eigen/Core>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ags/edit_dp.hpp"
#include "ags/etymology.hpp"

#include "json.hpp"

namespace ags {

enum class Normalization { MaxLength, AlignmentLength };

struct IndelConfig {
  double insertion = 1.0;
  double deletion = 1.0;
  Normalization normalization = Normalization::MaxLength;
};

struct EditOperation {
  EditOp op;
  std::optional<Symbol> x;
  std::optional<Symbol> y;
  double cost = 0.0;
  std::optional<EtymologyPath> best_etymology;
};

struct DistanceResult {
  double raw = 0.0;
  double normalized = 0.0;
  std::vector<EditOperation> ops;
};

struct WordInDialect {
  std::string word;
  DialectId dialect;
};

// Levenshtein distance with etymology-aware substitution costs. Ties in the
// edit script prefer substitution, then deletion, then insertion.
DistanceResult distance(std::string_view x, const DialectId& dx, std::string_view y, const DialectId& dy,
                        const EtymologyModel& model, const IndelConfig& costs = {});

// Cost-only variant for batch use; same value as distance(...).normalized.
double normalized_distance(const SymbolSeq& x, const DialectId& dx, const SymbolSeq& y, const DialectId& dy,
                           const EtymologyModel& model, const IndelConfig& costs = {});

Eigen::MatrixXd distance_matrix(std::span<const WordInDialect> words, const EtymologyModel& model,
                                const IndelConfig& costs = {});

// One debug record: both words, distances, and the edit script with best etymologies.
nlohmann::ordered_json edit_script_json(const WordInDialect& x, const WordInDialect& y, const DistanceResult& result);

std::string_view op_name(EditOp op);

}  // namespace ags
