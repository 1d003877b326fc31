// ags: command-line driver for the generality-scoring pipeline.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ags/pipeline.hpp"

namespace {

constexpr int kRuntimeFailure = 1;
constexpr int kUsageError = 2;

ags::PipelineConfig config_from(const std::string& path) {
  return path.empty() ? ags::PipelineConfig{} : ags::load_config(path);
}

std::optional<std::filesystem::path> maybe_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::filesystem::path(s);
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ags::Error("cannot write " + path.string());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arabic generality scoring over a dialect-parallel corpus"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ags 1.0.0");

  std::string config_path;
  std::string out;

  // build-tables
  auto* build = app.add_subcommand("build-tables", "Estimate the etymology model from a lexicon");
  std::string lexicon, caphi, raw;
  build->add_option("--lexicon", lexicon, "concept<TAB>dialect<TAB>coda<TAB>caphi")->required()->check(CLI::ExistingFile);
  build->add_option("--caphi-table", caphi, "phoneme<TAB>grapheme<TAB>is_default")->required()->check(CLI::ExistingFile);
  build->add_option("--raw", raw, "dialect<TAB>raw<TAB>coda[<TAB>caphi]")->check(CLI::ExistingFile);
  build->add_option("--config", config_path)->check(CLI::ExistingFile);
  build->add_option("--out", out, "model directory")->required();

  // align
  auto* align = app.add_subcommand("align", "Run the built-in aligner and write Pharaoh files");
  std::string corpus, model_dir;
  align->add_option("--corpus", corpus, "sentence_id<TAB>dialect<TAB>text")->required()->check(CLI::ExistingFile);
  align->add_option("--model", model_dir)->required()->check(CLI::ExistingDirectory);
  align->add_option("--config", config_path)->check(CLI::ExistingFile);
  align->add_option("--out", out, "directory for <dialect>.align files")->required();

  // annotate
  auto* annotate = app.add_subcommand("annotate", "Score every token of the corpus");
  std::string alignments, dump_alignments, dump_edits, word_table;
  bool with_deltas = false;
  annotate->add_option("--corpus", corpus)->required()->check(CLI::ExistingFile);
  annotate->add_option("--model", model_dir)->required()->check(CLI::ExistingDirectory);
  annotate->add_option("--alignments", alignments, "import <dialect>.align files from here")
      ->check(CLI::ExistingDirectory);
  annotate->add_option("--dump-alignments", dump_alignments, "aggregated counterpart TSV");
  annotate->add_option("--dump-edit-scripts", dump_edits, "edit scripts as JSON lines");
  annotate->add_option("--word-table", word_table, "word<TAB>dialect<TAB>ags");
  annotate->add_flag("--with-deltas", with_deltas, "include per-dialect distances");
  annotate->add_option("--config", config_path)->check(CLI::ExistingFile);
  annotate->add_option("--out", out, "annotated JSON lines")->required();

  // score-sentence
  auto* score = app.add_subcommand("score-sentence", "Aggregate token scores into sentence scores");
  std::string predictions, multilabel;
  double fallback = 0.5;
  auto* pred_opt = score->add_option("--predictions", predictions, "sentence_id<TAB>token_index<TAB>pred")
                       ->check(CLI::ExistingFile);
  auto* ml_opt = score->add_option("--multilabel", multilabel, "texts scored by word-table lookup")
                     ->check(CLI::ExistingFile);
  score->add_option("--word-table", word_table, "table written by annotate --word-table")->check(CLI::ExistingFile);
  score->add_option("--fallback", fallback, "score for words missing from the table")->check(CLI::Range(0.0, 1.0));
  pred_opt->excludes(ml_opt);
  score->add_option("--config", config_path)->check(CLI::ExistingFile);
  score->add_option("--out", out, "id<TAB>ags")->required();

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "RMSE of sentence scores against multi-label gold");
  std::string gold;
  eval->add_option("--predictions", predictions, "id<TAB>ags")->required()->check(CLI::ExistingFile);
  eval->add_option("--gold", gold, "multi-label file")->required()->check(CLI::ExistingFile);
  eval->add_option("--config", config_path)->check(CLI::ExistingFile);
  eval->add_option("--out", out, "per-sentence residuals")->required();

  // stats
  auto* stats = app.add_subcommand("stats", "Per-dialect score bins and sentence lengths");
  std::string annotated, json_out;
  stats->add_option("--annotated", annotated)->required()->check(CLI::ExistingFile);
  stats->add_option("--json", json_out, "also write the report as JSON");
  stats->add_option("--config", config_path)->check(CLI::ExistingFile);
  stats->add_option("--out", out, "TSV report")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    const auto cfg = config_from(config_path);

    if (*build) {
      const auto result = ags::build_tables(lexicon, caphi, maybe_path(raw), cfg, out);
      const auto& tables = result.model.tables();
      std::cout << "lexicon entries: " << result.lexicon_entries << "\n"
                << "raw spellings: " << result.raw_spellings << "\n"
                << "ph_given_et rows: " << tables.ph_given_et.rows().size() << "\n"
                << "ph_given_or rows: " << tables.ph_given_or.rows().size() << "\n"
                << "et_given_ph rows: " << tables.et_given_ph.rows().size() << "\n"
                << "etym_spelling rows: " << tables.etym_spelling.rows().size() << "\n";
    } else if (*align) {
      ags::CorpusLoadOptions opts;
      opts.normalize = cfg.normalize;
      const auto c = ags::load_parallel_corpus(corpus, opts);
      const auto model = ags::EtymologyModel::load(model_dir);
      const auto result = ags::align_corpus(c, model, cfg, std::nullopt);
      ags::write_alignment_files(out, c, result.links);
      std::cout << "aligned buckets: " << result.sets.size() << "\nskipped buckets: " << result.skipped_buckets << "\n";
    } else if (*annotate) {
      if (cfg.aligner_mode == ags::AlignerMode::Import && alignments.empty()) {
        std::cerr << "annotate: aligner.mode = import requires --alignments\n";
        return kUsageError;
      }
      ags::AnnotateOptions opts;
      opts.out = out;
      opts.alignments_dir = maybe_path(alignments);
      opts.dump_alignments = maybe_path(dump_alignments);
      opts.dump_edit_scripts = maybe_path(dump_edits);
      opts.word_table = maybe_path(word_table);
      opts.with_deltas = with_deltas;
      const auto s = ags::annotate(corpus, model_dir, cfg, opts);
      std::cout << "sentences: " << s.sentences << "\ntokens: " << s.tokens << "\nunique words: " << s.words
                << "\nskipped buckets: " << s.skipped_buckets << "\n";
    } else if (*score) {
      std::vector<ags::SentenceScore> scores;
      if (!predictions.empty()) {
        std::ifstream in(predictions, std::ios::binary);
        scores = ags::score_token_predictions(in, predictions, cfg.ags);
      } else if (!multilabel.empty() && !word_table.empty()) {
        scores = ags::score_lookup_baseline(ags::load_multilabel(multilabel), ags::load_word_table(word_table), cfg.ags,
                                            fallback);
      } else {
        std::cerr << "score-sentence: give --predictions, or --multilabel with --word-table\n";
        return kUsageError;
      }
      auto o = open_out(out);
      ags::write_sentence_scores(o, scores);
      std::cout << "sentences: " << scores.size() << "\n";
    } else if (*eval) {
      std::ifstream in(predictions, std::ios::binary);
      const auto preds = ags::read_sentence_scores(in, predictions);
      const auto result = ags::evaluate(preds, ags::load_multilabel(gold));
      auto o = open_out(out);
      o << "id\tresidual\n";
      for (const auto& [id, r] : result.residuals) o << id << '\t' << ags::format_double(r) << '\n';
      std::cout << "RMSE " << std::fixed << std::setprecision(4) << result.rmse << "\n";
    } else if (*stats) {
      std::ifstream in(annotated, std::ios::binary);
      const auto report = ags::corpus_stats(in, annotated);
      auto o = open_out(out);
      ags::write_stats_report(o, report);
      if (!json_out.empty()) {
        auto j = open_out(json_out);
        j << ags::stats_json(report).dump(2) << '\n';
      }
      ags::write_stats_report(std::cout, report);
    }
  } catch (const ags::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return 0;
}
