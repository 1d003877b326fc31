#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "ags/corpus.hpp"
#include "ags/g2p.hpp"
#include "ags/types.hpp"

namespace ags {

enum class TableKind { PhGivenEt, PhGivenOr, EtGivenPh, EtymSpelling };

std::string_view table_name(TableKind kind);

using Distribution = std::map<Symbol, double>;

// Conditioning side of a table row. `second` is the phoneme for
// EtymSpelling rows and empty otherwise.
struct ConditionKey {
  Symbol given;
  Symbol second;
  DialectId dialect;

  auto operator<=>(const ConditionKey&) const = default;
  bool operator==(const ConditionKey&) const = default;
};

// Outcome symbol under which EtymSpelling rows store P(et = or | or, ph, d).
inline constexpr std::string_view kEtymOutcome = "etym";

class ProbTable {
 public:
  ProbTable() = default;
  ProbTable(TableKind kind, double alpha) : kind_(kind), alpha_(alpha) {}

  TableKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }

  void set(ConditionKey key, Distribution dist) { rows_[std::move(key)] = std::move(dist); }
  void set_etym(const Symbol& grapheme, const Symbol& phoneme, const DialectId& dialect, double p);

  const Distribution* find(const ConditionKey& key) const;
  // Row for the dialect, else the pooled row, else nullptr.
  const Distribution* lookup(const Symbol& given, const DialectId& dialect, const Symbol& second = {}) const;
  std::optional<double> etym_probability(const Symbol& grapheme, const Symbol& phoneme, const DialectId& dialect) const;

  const std::map<ConditionKey, Distribution>& rows() const noexcept { return rows_; }
  bool operator==(const ProbTable&) const = default;

 private:
  TableKind kind_ = TableKind::PhGivenEt;
  double alpha_ = 0.0;
  std::map<ConditionKey, Distribution> rows_;
};

struct EstimationSupport {
  std::vector<Symbol> phonemes;       // CAPHI inventory
  std::vector<Symbol> coda_alphabet;  // graphemes seen in CODA spellings
  double alpha = 0.1;
};

// Add-alpha relative frequencies with a pooled all-dialect row per
// conditioning symbol. Gap events are not substitutions and are skipped.
ProbTable estimate_ph_given_et(const G2PCountTable& lexicon_counts, const EstimationSupport& support);
ProbTable estimate_ph_given_or(const G2PCountTable& lexicon_counts, const G2PCountTable& raw_counts,
                               const EstimationSupport& support);
ProbTable estimate_et_given_ph(const G2PCountTable& lexicon_counts, const EstimationSupport& support);

struct EtymTally {
  std::int64_t total = 0;
  std::int64_t flagged = 0;

  bool operator==(const EtymTally&) const = default;
};

struct EtymSpellingEstimate {
  ProbTable table;
  // Pooled over dialects, keyed by (grapheme, phoneme).
  std::map<std::pair<Symbol, Symbol>, EtymTally> tallies;
};

// A grapheme position of a CODA word is etymological when, across the
// dialect entries sharing that spelling, it is realized both by a phoneme the
// inventory maps to it by default and by one it does not.
EtymSpellingEstimate detect_etymological_spellings(const std::vector<LexiconEntry>& lexicon,
                                                   const CaphiInventory& inventory, double alpha,
                                                   const G2PCosts& costs = {});

std::vector<Symbol> coda_alphabet(const std::vector<LexiconEntry>& lexicon);

struct CharContext {
  Symbol grapheme;
  DialectId dialect;
};

struct EtymologyPath {
  Symbol x_et;
  Symbol x_ph;
  Symbol y_et;
  Symbol y_ph;

  bool operator==(const EtymologyPath&) const = default;
};

struct SubstitutionCost {
  CharContext x;
  CharContext y;
  double cost = 1.0;
  std::optional<EtymologyPath> best_etymology;
};

struct ModelOptions {
  double alpha = 0.1;
  G2PCosts g2p;
};

class EtymologyModel {
 public:
  struct Tables {
    ProbTable ph_given_et{TableKind::PhGivenEt, 0.0};
    ProbTable ph_given_or{TableKind::PhGivenOr, 0.0};
    ProbTable et_given_ph{TableKind::EtGivenPh, 0.0};
    ProbTable etym_spelling{TableKind::EtymSpelling, 0.0};

    bool operator==(const Tables&) const = default;
  };

  // `extra_graphemes` are orthographic symbols seen only in raw spellings; they
  // can carry posterior mass through the etymological-spelling branch.
  EtymologyModel(Tables tables, std::vector<Symbol> phonemes, std::vector<Symbol> coda_alphabet,
                 std::vector<Symbol> extra_graphemes = {}, std::vector<DialectId> dialects = {});

  static EtymologyModel build(const std::vector<LexiconEntry>& lexicon, const CaphiInventory& inventory,
                              const std::vector<RawSpelling>& raw = {}, const ModelOptions& options = {});

  const Tables& tables() const noexcept { return tables_; }
  const std::vector<Symbol>& phonemes() const noexcept { return phonemes_; }
  const std::vector<Symbol>& coda_alphabet() const noexcept { return coda_alphabet_; }
  // coda alphabet followed by the extra graphemes; posterior vectors index this.
  const std::vector<Symbol>& alphabet() const noexcept { return alphabet_; }
  const std::vector<DialectId>& dialects() const noexcept { return dialects_; }

  // -1 when the grapheme is unknown.
  Eigen::Index grapheme_index(const Symbol& grapheme) const;

  // P(et | or, d) over alphabet(). Unknown graphemes get a uniform
  // distribution over the coda alphabet.
  Eigen::VectorXd posterior(const Symbol& grapheme, const DialectId& dialect) const;
  Distribution posterior_distribution(const Symbol& grapheme, const DialectId& dialect) const;

  // 1 - sum_c P(x_et = c | x) P(y_et = c | y), clamped to [0,1].
  double cost(const Symbol& x, const DialectId& dx, const Symbol& y, const DialectId& dy) const;
  SubstitutionCost substitution_cost(const CharContext& x, const CharContext& y) const;
  // |x| by |y| substitution costs for two words.
  Eigen::MatrixXd cost_matrix(const SymbolSeq& x, const DialectId& dx, const SymbolSeq& y, const DialectId& dy) const;

  void save(const std::filesystem::path& dir) const;
  static EtymologyModel load(const std::filesystem::path& dir);

  bool operator==(const EtymologyModel& other) const {
    return tables_ == other.tables_ && phonemes_ == other.phonemes_ && coda_alphabet_ == other.coda_alphabet_ &&
           alphabet_ == other.alphabet_ && dialects_ == other.dialects_;
  }

 private:
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  std::size_t dialect_slot(const DialectId& dialect) const;
  const DialectId& slot_dialect(std::size_t slot) const;
  Eigen::VectorXd compute_posterior(const Symbol& grapheme, const DialectId& dialect) const;
  Eigen::VectorXd uniform_posterior() const;
  Eigen::VectorXd resolved_posterior(const Symbol& grapheme, Eigen::Index index, std::size_t slot) const;
  Symbol best_phoneme(const Symbol& grapheme, const DialectId& dialect, const Symbol& etymology) const;

  Tables tables_;
  std::vector<Symbol> phonemes_;
  std::vector<Symbol> coda_alphabet_;
  std::vector<Symbol> alphabet_;
  std::map<Symbol, Eigen::Index> index_;
  std::vector<DialectId> dialects_;  // sorted; slot dialects_.size() is pooled

  // Per dialect slot: row = orthographic grapheme, column = etymology.
  std::vector<RowMajor> posteriors_;
  // Per (slot_x, slot_y): substitution costs between known graphemes.
  std::vector<Eigen::MatrixXd> pair_costs_;
};

// Dot product in index order; shared by every cost path so that cost(x, y)
// and cost(y, x) are bitwise equal.
double shared_etymology(const Eigen::Ref<const Eigen::VectorXd>& px, const Eigen::Ref<const Eigen::VectorXd>& py);

}  // namespace ags
