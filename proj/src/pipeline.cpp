#include "ags/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace ags {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ArgumentError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

double parse_number(const std::string& key, const std::string& v) {
  try {
    return parse_double(v);
  } catch (const ArgumentError&) {
    throw ArgumentError("config key '" + key + "': expected a number, got '" + v + "'");
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

// Runs fn(i) for i in [0, n) on up to `threads` workers; fn writes to its own slot.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::filesystem::path manifest_path_for(const std::filesystem::path& out) {
  return std::filesystem::path(out.string() + ".manifest.json");
}

}  // namespace

// ---------------------------------------------------------------------------

nlohmann::ordered_json PipelineConfig::to_json() const {
  nlohmann::ordered_json j;
  j["t"] = ags.t;
  j["s"] = ags.s;
  j["k"] = ags.k;
  j["alpha"] = alpha;
  j["indel_cost"] = indel.insertion;
  j["normalization"] = indel.normalization == Normalization::MaxLength ? "max_length" : "alignment_length";
  j["missing_dialect_delta"] = ags.missing_dialect_delta;
  j["missing_policy"] = ags.missing_policy == MissingDialectPolicy::UseDelta ? "delta" : "exclude";
  j["include_self_dialect"] = ags.include_self_dialect;
  j["epsilon"] = ags.epsilon;
  j["sentence_agg"] = ags.sentence_agg == SentenceAggregation::HarmonicK ? "harmonic-k" : "mean";
  j["aligner"] = {{"lambda", aligner.lambda},
                  {"theta", aligner.theta},
                  {"mode", aligner_mode == AlignerMode::Builtin ? "builtin" : "import"}};
  return j;
}

void apply_config_entry(PipelineConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "t") {
    cfg.ags.t = parse_number(key, value);
  } else if (key == "s") {
    cfg.ags.s = parse_number(key, value);
  } else if (key == "k") {
    const double k = parse_number(key, value);
    if (k != static_cast<int>(k)) throw ArgumentError("config key 'k': expected an integer");
    cfg.ags.k = static_cast<int>(k);
  } else if (key == "alpha") {
    cfg.alpha = parse_number(key, value);
    if (cfg.alpha < 0.0) throw ArgumentError("config key 'alpha' must be non-negative");
  } else if (key == "indel_cost") {
    cfg.indel.insertion = cfg.indel.deletion = parse_number(key, value);
  } else if (key == "normalization") {
    if (value == "max_length") {
      cfg.indel.normalization = Normalization::MaxLength;
    } else if (value == "alignment_length") {
      cfg.indel.normalization = Normalization::AlignmentLength;
    } else {
      throw ArgumentError("config key 'normalization': expected max_length|alignment_length");
    }
  } else if (key == "missing_dialect_delta") {
    cfg.ags.missing_dialect_delta = parse_number(key, value);
  } else if (key == "missing_policy") {
    if (value == "delta") {
      cfg.ags.missing_policy = MissingDialectPolicy::UseDelta;
    } else if (value == "exclude") {
      cfg.ags.missing_policy = MissingDialectPolicy::Exclude;
    } else {
      throw ArgumentError("config key 'missing_policy': expected delta|exclude");
    }
  } else if (key == "include_self_dialect") {
    cfg.ags.include_self_dialect = parse_bool(key, value);
  } else if (key == "epsilon") {
    cfg.ags.epsilon = parse_number(key, value);
  } else if (key == "sentence_agg") {
    if (value == "harmonic-k") {
      cfg.ags.sentence_agg = SentenceAggregation::HarmonicK;
    } else if (value == "mean") {
      cfg.ags.sentence_agg = SentenceAggregation::Mean;
    } else {
      throw ArgumentError("config key 'sentence_agg': expected harmonic-k|mean");
    }
  } else if (key == "aligner.lambda") {
    cfg.aligner.lambda = parse_number(key, value);
  } else if (key == "aligner.theta") {
    cfg.aligner.theta = parse_number(key, value);
  } else if (key == "aligner.mode") {
    if (value == "builtin") {
      cfg.aligner_mode = AlignerMode::Builtin;
    } else if (value == "import") {
      cfg.aligner_mode = AlignerMode::Import;
    } else {
      throw ArgumentError("config key 'aligner.mode': expected builtin|import");
    }
  } else if (key == "vowels") {
    cfg.g2p.vowels.clear();
    for (const auto& v : split_fields(value, ',')) {
      const auto sym = trim(v);
      if (!sym.empty()) cfg.g2p.vowels.insert(sym);
    }
  } else if (key == "fold_alef_ya") {
    cfg.normalize.fold_alef_ya = parse_bool(key, value);
  } else if (key == "threads") {
    const double n = parse_number(key, value);
    if (n < 1 || n != static_cast<unsigned>(n)) throw ArgumentError("config key 'threads': expected a positive integer");
    cfg.threads = static_cast<unsigned>(n);
  } else {
    throw ArgumentError("unknown config key '" + key + "'");
  }
  cfg.aligner.costs = cfg.indel;
}

PipelineConfig parse_config(std::istream& in, std::string_view source) {
  PipelineConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, "expected key = value");
    try {
      apply_config_entry(cfg, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    } catch (const ArgumentError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  cfg.ags.validate();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_config(in, path.string());
}

std::string sha256_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256 unavailable");
  }
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

void RunManifest::add_input(const std::string& role, const std::filesystem::path& path) {
  inputs_.push_back({{"role", role}, {"path", path.string()}, {"sha256", sha256_file(path)}});
}

void RunManifest::add_output(const std::string& role, const std::filesystem::path& path) {
  outputs_[role] = path.string();
}

void RunManifest::add_timing(const std::string& stage, double seconds) { timings_[stage] = seconds; }

void RunManifest::write(const std::filesystem::path& path) const {
  nlohmann::ordered_json j;
  j["command"] = command_;
  j["config"] = config_;
  j["inputs"] = inputs_;
  j["outputs"] = outputs_;
  j["timings_seconds"] = timings_;
  for (const auto& [k, v] : extra_.items()) j[k] = v;
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

BuildTablesResult build_tables(const std::filesystem::path& lexicon_path, const std::filesystem::path& caphi_path,
                               const std::optional<std::filesystem::path>& raw_pairs, const PipelineConfig& cfg,
                               const std::filesystem::path& out_dir) {
  Stopwatch clock;
  RunManifest manifest("build-tables");
  manifest.set_config(cfg);

  const auto inventory = load_caphi_table(caphi_path);
  const auto lexicon = load_lexicon(lexicon_path, inventory);
  std::vector<RawSpelling> raw;
  if (raw_pairs) raw = load_raw_spellings(*raw_pairs, lexicon, inventory);
  manifest.add_timing("load", clock.lap());

  ModelOptions options{cfg.alpha, cfg.g2p};
  auto model = EtymologyModel::build(lexicon, inventory, raw, options);
  auto etym = detect_etymological_spellings(lexicon, inventory, cfg.alpha, cfg.g2p);
  manifest.add_timing("estimate", clock.lap());

  model.save(out_dir);
  {
    auto out = open_output(out_dir / "lexicon_counts.tsv");
    write_counts_tsv(out, collect_g2p_counts(lexicon, inventory, cfg.g2p));
  }
  {
    auto out = open_output(out_dir / "raw_counts.tsv");
    write_counts_tsv(out, collect_raw_counts(raw, inventory, cfg.g2p));
  }
  {
    auto out = open_output(out_dir / "etym_report.tsv");
    out << "etymology\tphoneme\tcount\tetym\n";
    for (const auto& [key, t] : etym.tallies) out << key.first << '\t' << key.second << '\t' << t.total << '\t' << t.flagged << '\n';
  }
  manifest.add_timing("write", clock.lap());

  manifest.add_input("lexicon", lexicon_path);
  manifest.add_input("caphi_table", caphi_path);
  if (raw_pairs) manifest.add_input("raw_spellings", *raw_pairs);
  manifest.add_output("model_manifest", out_dir / "manifest.json");
  manifest.add_output("lexicon_counts", out_dir / "lexicon_counts.tsv");
  manifest.add_output("raw_counts", out_dir / "raw_counts.tsv");
  manifest.add_output("etym_report", out_dir / "etym_report.tsv");
  manifest.write(out_dir / "run_manifest.json");

  return {std::move(model), lexicon.size(), raw.size(), std::move(etym.tallies)};
}

// ---------------------------------------------------------------------------

CorpusAlignment align_corpus(const ParallelCorpus& corpus, const EtymologyModel& model, const PipelineConfig& cfg,
                             const std::optional<std::filesystem::path>& alignments_dir) {
  CorpusAlignment out;
  std::vector<const ParallelBucket*> alignable;
  for (const auto& b : corpus.buckets) {
    if (b.alignable()) {
      alignable.push_back(&b);
    } else {
      ++out.skipped_buckets;
    }
  }
  if (out.skipped_buckets) {
    warn_once(std::to_string(out.skipped_buckets) + " bucket(s) without an MSA sentence skipped by alignment");
  }

  if (alignments_dir) {
    out.sets = read_alignment_files(*alignments_dir, corpus);
    return out;
  }

  std::vector<std::map<DialectId, std::vector<PharaohLink>>> per_bucket(alignable.size());
  parallel_for(alignable.size(), cfg.threads, [&](std::size_t i) {
    const ParallelBucket& bucket = *alignable[i];
    const Sentence& msa = *bucket.find(DialectId::anchor());
    for (const auto& [d, sentence] : bucket.sentences) {
      if (d != DialectId::anchor()) per_bucket[i][d] = builtin_links(msa, sentence, model, cfg.aligner);
    }
  });

  for (const auto& d : corpus.dialects) {
    if (d != DialectId::anchor()) out.links[d].resize(alignable.size());
  }
  out.sets.reserve(alignable.size());
  for (std::size_t i = 0; i < alignable.size(); ++i) {
    std::map<DialectId, std::string> lines;
    for (const auto& [d, links] : per_bucket[i]) {
      out.links[d][i] = links;
      lines[d] = format_pharaoh_line(links);
    }
    out.sets.push_back(import_alignments(*alignable[i], lines, corpus.dialects));
  }
  return out;
}

AnnotateSummary annotate(const std::filesystem::path& corpus_path, const std::filesystem::path& model_dir,
                         const PipelineConfig& cfg, const AnnotateOptions& options) {
  cfg.ags.validate();
  Stopwatch clock;
  RunManifest manifest("annotate");
  manifest.set_config(cfg);

  CorpusLoadOptions load_options;
  load_options.normalize = cfg.normalize;
  const auto corpus = load_parallel_corpus(corpus_path, load_options);
  const auto model = EtymologyModel::load(model_dir);
  manifest.add_timing("load", clock.lap());

  std::optional<std::filesystem::path> import_dir = options.alignments_dir;
  if (cfg.aligner_mode == AlignerMode::Import && !import_dir) {
    throw ArgumentError("aligner.mode = import needs an alignments directory");
  }
  const auto alignment = align_corpus(corpus, model, cfg, import_dir);
  manifest.add_timing("align", clock.lap());

  const AlignmentIndex index = aggregate(alignment.sets);
  manifest.add_timing("aggregate", clock.lap());

  std::set<WordKey> unique;
  for (const auto& b : corpus.buckets) {
    for (const auto& [d, sentence] : b.sentences) {
      for (const auto& tok : sentence.tokens) unique.insert({tok.surface, d});
    }
  }
  const std::vector<WordKey> keys(unique.begin(), unique.end());
  std::vector<WordAgs> scores(keys.size());
  parallel_for(keys.size(), cfg.threads, [&](std::size_t i) {
    const auto it = index.find(keys[i]);
    const AggregatedAlignments empty{keys[i], {}};
    scores[i] = word_ags(it == index.end() ? empty : it->second, corpus.dialects, model, cfg.ags, cfg.indel);
  });
  std::map<WordKey, const WordAgs*> by_key;
  for (std::size_t i = 0; i < keys.size(); ++i) by_key[keys[i]] = &scores[i];
  manifest.add_timing("score_words", clock.lap());

  AnnotateSummary summary;
  summary.buckets = corpus.buckets.size();
  summary.skipped_buckets = alignment.skipped_buckets;
  summary.words = keys.size();

  const auto config_echo = cfg.to_json();
  {
    auto out = open_output(options.out);
    for (const auto& b : corpus.buckets) {
      for (const auto& [d, sentence] : b.sentences) {
        nlohmann::ordered_json rec;
        rec["sentence_id"] = sentence.sentence_id;
        rec["dialect"] = d.code();
        rec["text"] = sentence.raw_text;
        auto tokens = nlohmann::ordered_json::array();
        auto ags_values = nlohmann::ordered_json::array();
        auto deltas = nlohmann::ordered_json::array();
        std::vector<double> values;
        for (const auto& tok : sentence.tokens) {
          const WordAgs& w = *by_key.at({tok.surface, d});
          tokens.push_back(tok.surface);
          ags_values.push_back(w.ags);
          values.push_back(w.ags);
          if (options.with_deltas) {
            nlohmann::ordered_json dj = nlohmann::ordered_json::object();
            for (const auto& [e, delta] : w.deltas) dj[e.code()] = delta;
            deltas.push_back(std::move(dj));
          }
        }
        rec["tokens"] = std::move(tokens);
        rec["ags"] = std::move(ags_values);
        if (options.with_deltas) rec["deltas"] = std::move(deltas);
        rec["sentence_ags"] = values.empty() ? nlohmann::ordered_json(nullptr)
                                             : nlohmann::ordered_json(sentence_ags(values, cfg.ags));
        rec["config"] = config_echo;
        out << rec.dump() << '\n';
        ++summary.sentences;
        summary.tokens += sentence.tokens.size();
      }
    }
  }
  manifest.add_output("annotated", options.out);

  if (options.dump_alignments) {
    auto out = open_output(*options.dump_alignments);
    write_aggregated_tsv(out, index);
    manifest.add_output("aggregated_alignments", *options.dump_alignments);
  }
  if (options.word_table) {
    auto out = open_output(*options.word_table);
    for (const auto& w : scores) out << w.word << '\t' << w.dialect.code() << '\t' << format_double(w.ags) << '\n';
    manifest.add_output("word_table", *options.word_table);
  }
  if (options.dump_edit_scripts) {
    auto out = open_output(*options.dump_edit_scripts);
    for (const auto& [key, agg] : index) {
      for (const auto& [e, bag] : agg.counterparts) {
        for (const auto& [cp, n] : bag) {
          if (!cp) continue;
          const auto result = distance(key.surface, key.dialect, *cp, e, model, cfg.indel);
          out << edit_script_json({key.surface, key.dialect}, {*cp, e}, result).dump() << '\n';
        }
      }
    }
    manifest.add_output("edit_scripts", *options.dump_edit_scripts);
  }
  manifest.add_timing("write", clock.lap());

  manifest.add_input("corpus", corpus_path);
  manifest.add_input("model_manifest", model_dir / "manifest.json");
  for (const auto kind : {TableKind::PhGivenEt, TableKind::PhGivenOr, TableKind::EtGivenPh, TableKind::EtymSpelling}) {
    manifest.add_input(std::string(table_name(kind)), model_dir / (std::string(table_name(kind)) + ".tsv"));
  }
  if (import_dir) {
    for (const auto& d : corpus.dialects) {
      const auto p = *import_dir / (d.code() + ".align");
      if (std::filesystem::exists(p)) manifest.add_input("alignment_" + d.code(), p);
    }
  }
  manifest.set("skipped_buckets", alignment.skipped_buckets);
  manifest.set("buckets", summary.buckets);
  manifest.set("sentences", summary.sentences);
  manifest.set("tokens", summary.tokens);
  manifest.set("unique_words", summary.words);
  manifest.write(manifest_path_for(options.out));
  return summary;
}

// ---------------------------------------------------------------------------

std::vector<SentenceScore> score_token_predictions(std::istream& in, std::string_view source, const AgsConfig& cfg) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_fields(line, '\t');
    if (f.size() != 3) throw ParseError(source, line_no, "expected sentence_id<TAB>token_index<TAB>pred");
    double pred = 0.0;
    try {
      pred = parse_double(f[2]);
    } catch (const ArgumentError& e) {
      throw ParseError(source, line_no, e.what());
    }
    auto [it, inserted] = values.try_emplace(f[0]);
    if (inserted) order.push_back(f[0]);
    it->second.push_back(std::clamp(pred, 0.0, 1.0));
  }
  std::vector<SentenceScore> out;
  for (const auto& id : order) out.push_back({id, sentence_ags(values.at(id), cfg)});
  return out;
}

std::map<std::string, double> load_word_table(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::map<std::string, std::pair<double, int>> sums;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_fields(line, '\t');
    if (f.size() != 3) throw ParseError(path.string(), line_no, "expected word<TAB>dialect<TAB>ags");
    double v = 0.0;
    try {
      v = parse_double(f[2]);
    } catch (const ArgumentError& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
    auto& s = sums[normalize_text(f[0])];
    s.first += v;
    ++s.second;
  }
  std::map<std::string, double> table;
  for (const auto& [w, s] : sums) table[w] = s.first / s.second;
  return table;
}

std::vector<SentenceScore> score_lookup_baseline(const std::vector<MultiLabelSentence>& items,
                                                 const std::map<std::string, double>& table, const AgsConfig& cfg,
                                                 double fallback) {
  std::vector<SentenceScore> out;
  for (const auto& item : items) {
    std::vector<double> values;
    for (const auto& tok : tokenize(item.text)) values.push_back(lookup_baseline(tok.surface, table, fallback));
    out.push_back({item.id, values.empty() ? fallback : sentence_ags(values, cfg)});
  }
  return out;
}

void write_sentence_scores(std::ostream& out, const std::vector<SentenceScore>& scores) {
  for (const auto& s : scores) out << s.id << '\t' << format_double(s.ags) << '\n';
}

std::vector<SentenceScore> read_sentence_scores(std::istream& in, std::string_view source) {
  std::vector<SentenceScore> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_fields(line, '\t');
    if (f.size() != 2) throw ParseError(source, line_no, "expected id<TAB>ags");
    try {
      out.push_back({f[0], parse_double(f[1])});
    } catch (const ArgumentError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return out;
}

EvaluationResult evaluate(const std::vector<SentenceScore>& predictions, const std::vector<MultiLabelSentence>& gold) {
  if (predictions.size() != gold.size()) {
    throw ValidationError("record count mismatch: " + std::to_string(predictions.size()) + " predictions vs " +
                          std::to_string(gold.size()) + " gold items");
  }
  if (gold.empty()) throw ValidationError("no records to evaluate");
  EvaluationResult out;
  std::vector<double> pred;
  std::vector<double> ref;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (predictions[i].id != gold[i].id) {
      throw ValidationError("id mismatch at record " + std::to_string(i + 1) + ": prediction '" + predictions[i].id +
                            "' vs gold '" + gold[i].id + "'");
    }
    pred.push_back(predictions[i].ags);
    ref.push_back(multilabel_sentence_ags(gold[i]));
    out.residuals.emplace_back(gold[i].id, pred.back() - ref.back());
  }
  out.rmse = rmse(pred, ref);
  return out;
}

// ---------------------------------------------------------------------------

std::map<DialectId, DialectStats> corpus_stats(std::istream& in, std::string_view source) {
  struct Acc {
    DialectStats s;
    std::size_t chars = 0;
    std::size_t words = 0;
  };
  std::map<DialectId, Acc> acc;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
    auto& a = acc[DialectId{rec.at("dialect").get<std::string>()}];
    const auto text = rec.value("text", std::string{});
    a.chars += codepoint_count(text);
    a.words += split_words(text).size();
    ++a.s.sentences;
    for (const auto& v : rec.at("ags")) {
      const double g = v.get<double>();
      ++a.s.words;
      if (g < 0.1) {
        ++a.s.specific;
      } else if (g < 0.5) {
        ++a.s.moderate;
      } else {
        ++a.s.general;
      }
    }
  }
  std::map<DialectId, DialectStats> out;
  for (auto& [d, a] : acc) {
    a.s.mean_chars = a.s.sentences ? static_cast<double>(a.chars) / static_cast<double>(a.s.sentences) : 0.0;
    a.s.mean_words = a.s.sentences ? static_cast<double>(a.words) / static_cast<double>(a.s.sentences) : 0.0;
    out[d] = a.s;
  }
  return out;
}

void write_stats_report(std::ostream& out, const std::map<DialectId, DialectStats>& stats) {
  out << "dialect\twords\tspecific%\tmoderate%\tgeneral%\tsentences\tmean_chars\tmean_words\n";
  out << std::fixed;
  for (const auto& [d, s] : stats) {
    out << d.code() << '\t' << s.words << '\t' << std::setprecision(1) << s.pct_specific() << '\t' << s.pct_moderate()
        << '\t' << s.pct_general() << '\t' << s.sentences << '\t' << s.mean_chars << '\t' << s.mean_words << '\n';
  }
}

nlohmann::ordered_json stats_json(const std::map<DialectId, DialectStats>& stats) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [d, s] : stats) {
    j[d.code()] = {{"words", s.words},
                   {"specific_pct", s.pct_specific()},
                   {"moderate_pct", s.pct_moderate()},
                   {"general_pct", s.pct_general()},
                   {"sentences", s.sentences},
                   {"mean_chars", s.mean_chars},
                   {"mean_words", s.mean_words}};
  }
  return j;
}

}  // namespace ags
