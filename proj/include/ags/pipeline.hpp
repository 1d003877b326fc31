#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ags/alignment.hpp"
#include "ags/corpus.hpp"
#include "ags/etymology.hpp"
#include "ags/scoring.hpp"

#include "json.hpp"

namespace ags {

enum class AlignerMode { Builtin, Import };

struct PipelineConfig {
  AgsConfig ags;
  double alpha = 0.1;
  IndelConfig indel;
  AlignerParams aligner;
  AlignerMode aligner_mode = AlignerMode::Builtin;
  G2PCosts g2p;
  NormalizeOptions normalize;
  unsigned threads = 1;

  nlohmann::ordered_json to_json() const;
};

// `key = value` lines, `#` comments. Recognized keys: t, s, k, alpha,
// indel_cost, missing_dialect_delta, missing_policy, include_self_dialect,
// epsilon, sentence_agg, aligner.lambda, aligner.theta, aligner.mode,
// normalization, vowels, fold_alef_ya, threads.
PipelineConfig parse_config(std::istream& in, std::string_view source);
PipelineConfig load_config(const std::filesystem::path& path);
void apply_config_entry(PipelineConfig& cfg, const std::string& key, const std::string& value);

std::string sha256_file(const std::filesystem::path& path);

// Config snapshot, input digests, stage timings, output paths.
class RunManifest {
 public:
  explicit RunManifest(std::string command) : command_(std::move(command)) {}
  void set_config(const PipelineConfig& cfg) { config_ = cfg.to_json(); }
  void add_input(const std::string& role, const std::filesystem::path& path);
  void add_output(const std::string& role, const std::filesystem::path& path);
  void add_timing(const std::string& stage, double seconds);
  void set(const std::string& key, nlohmann::ordered_json value) { extra_[key] = std::move(value); }
  void write(const std::filesystem::path& path) const;

 private:
  std::string command_;
  nlohmann::ordered_json config_;
  nlohmann::ordered_json inputs_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json outputs_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json timings_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json extra_ = nlohmann::ordered_json::object();
};

// ---- build-tables ---------------------------------------------------------

struct BuildTablesResult {
  EtymologyModel model;
  std::size_t lexicon_entries = 0;
  std::size_t raw_spellings = 0;
  std::map<std::pair<Symbol, Symbol>, EtymTally> tallies;
};

BuildTablesResult build_tables(const std::filesystem::path& lexicon, const std::filesystem::path& caphi,
                               const std::optional<std::filesystem::path>& raw_pairs, const PipelineConfig& cfg,
                               const std::filesystem::path& out_dir);

// ---- align / annotate -----------------------------------------------------

struct CorpusAlignment {
  std::vector<AlignmentSet> sets;
  std::map<DialectId, std::vector<std::vector<PharaohLink>>> links;  // builtin only
  std::size_t skipped_buckets = 0;
};

CorpusAlignment align_corpus(const ParallelCorpus& corpus, const EtymologyModel& model, const PipelineConfig& cfg,
                             const std::optional<std::filesystem::path>& alignments_dir);

struct AnnotateOptions {
  std::filesystem::path out;  // JSON lines
  std::optional<std::filesystem::path> alignments_dir;
  std::optional<std::filesystem::path> dump_alignments;    // aggregated TSV
  std::optional<std::filesystem::path> dump_edit_scripts;  // JSON lines
  std::optional<std::filesystem::path> word_table;         // word<TAB>dialect<TAB>ags
  bool with_deltas = false;
};

struct AnnotateSummary {
  std::size_t buckets = 0;
  std::size_t skipped_buckets = 0;
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::size_t words = 0;
};

AnnotateSummary annotate(const std::filesystem::path& corpus_path, const std::filesystem::path& model_dir,
                         const PipelineConfig& cfg, const AnnotateOptions& options);

// ---- score-sentence / evaluate -------------------------------------------

struct SentenceScore {
  std::string id;
  double ags = 0.0;
};

// Groups `sentence_id<TAB>token_index<TAB>pred` rows by sentence id.
std::vector<SentenceScore> score_token_predictions(std::istream& in, std::string_view source, const AgsConfig& cfg);
// Lexicon-lookup baseline over multi-label texts; surfaces found under several
// dialects use the mean of their scores.
std::vector<SentenceScore> score_lookup_baseline(const std::vector<MultiLabelSentence>& items,
                                                 const std::map<std::string, double>& table, const AgsConfig& cfg,
                                                 double fallback = 0.5);
std::map<std::string, double> load_word_table(const std::filesystem::path& path);

void write_sentence_scores(std::ostream& out, const std::vector<SentenceScore>& scores);
std::vector<SentenceScore> read_sentence_scores(std::istream& in, std::string_view source);

struct EvaluationResult {
  double rmse = 0.0;
  std::vector<std::pair<std::string, double>> residuals;  // prediction - gold
};

// Predictions and gold must list the same ids in the same order.
EvaluationResult evaluate(const std::vector<SentenceScore>& predictions, const std::vector<MultiLabelSentence>& gold);

// ---- stats ----------------------------------------------------------------

struct DialectStats {
  std::size_t words = 0;
  std::size_t specific = 0;  // [0, 0.1)
  std::size_t moderate = 0;  // [0.1, 0.5)
  std::size_t general = 0;   // [0.5, 1]
  std::size_t sentences = 0;
  double mean_chars = 0.0;
  double mean_words = 0.0;

  double pct_specific() const { return words ? 100.0 * static_cast<double>(specific) / static_cast<double>(words) : 0.0; }
  double pct_moderate() const { return words ? 100.0 * static_cast<double>(moderate) / static_cast<double>(words) : 0.0; }
  double pct_general() const { return words ? 100.0 * static_cast<double>(general) / static_cast<double>(words) : 0.0; }
};

std::map<DialectId, DialectStats> corpus_stats(std::istream& annotated_jsonl, std::string_view source);
void write_stats_report(std::ostream& out, const std::map<DialectId, DialectStats>& stats);
nlohmann::ordered_json stats_json(const std::map<DialectId, DialectStats>& stats);

}  // namespace ags
