#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ags/corpus.hpp"
#include "ags/distance.hpp"
#include "ags/etymology.hpp"

namespace ags {

struct AlignedToken {
  std::size_t index = 0;
  std::string surface;

  auto operator<=>(const AlignedToken&) const = default;
};

// One MSA token and its counterparts; every dialect of the corpus universe is
// present, nullopt meaning no linked token.
using AlignmentGroup = std::map<DialectId, std::optional<AlignedToken>>;

struct AlignmentSet {
  std::string sentence_id;
  std::vector<AlignmentGroup> groups;  // one per MSA token, in token order

  bool operator==(const AlignmentSet&) const = default;
};

struct PharaohLink {
  std::size_t source = 0;  // MSA token
  std::size_t target = 0;  // dialect token

  auto operator<=>(const PharaohLink&) const = default;
};

std::vector<PharaohLink> parse_pharaoh_line(std::string_view line, std::string_view source = "<pharaoh>",
                                            std::size_t line_no = 0);
std::string format_pharaoh_line(const std::vector<PharaohLink>& links);

// Joins per-dialect MSA links into groups. When a dialect links several of its
// tokens to one MSA token the lowest dialect index is kept.
AlignmentSet import_alignments(const ParallelBucket& bucket, const std::map<DialectId, std::string>& lines,
                               const std::vector<DialectId>& universe);

struct AlignerParams {
  double lambda = 0.7;  // weight of orthographic similarity vs position
  double theta = 0.5;   // minimum link score
  IndelConfig costs;
};

// score(i, j) = lambda * (1 - dist(msa_i, dialect_j)) + (1 - lambda) * (1 - |i/n - j/m|)
Eigen::MatrixXd alignment_scores(const Sentence& msa, const Sentence& dialect, const EtymologyModel& model,
                                 const AlignerParams& params);
// One-to-one greedy extraction by descending score; ties by smaller (i, j).
std::vector<PharaohLink> greedy_links(const Eigen::MatrixXd& scores, double theta);

std::vector<PharaohLink> builtin_links(const Sentence& msa, const Sentence& dialect, const EtymologyModel& model,
                                       const AlignerParams& params);
AlignmentSet builtin_align(const ParallelBucket& bucket, const EtymologyModel& model, const AlignerParams& params,
                           const std::vector<DialectId>& universe);

struct WordKey {
  std::string surface;
  DialectId dialect;

  auto operator<=>(const WordKey&) const = default;
};

// nullopt is the NONE counterpart.
using Counterpart = std::optional<std::string>;

struct AggregatedAlignments {
  WordKey key;
  std::map<DialectId, std::map<Counterpart, std::int64_t>> counterparts;

  bool operator==(const AggregatedAlignments&) const = default;
};

using AlignmentIndex = std::map<WordKey, AggregatedAlignments>;

// Counts, per sentence, each distinct counterpart of a word once; a dialect
// with no linked counterpart in that sentence adds one NONE.
AlignmentIndex aggregate(const std::vector<AlignmentSet>& corpus_alignments);
void merge_into(AlignmentIndex& into, const AlignmentIndex& from);

// `word<TAB>dialect<TAB>counterpart_dialect<TAB>counterpart_or_NONE<TAB>freq`
void write_aggregated_tsv(std::ostream& out, const AlignmentIndex& index);

// `<dir>/<dialect>.align`: line k holds the links of the k-th bucket that
// contains the MSA anchor, empty when the dialect is absent.
void write_alignment_files(const std::filesystem::path& dir, const ParallelCorpus& corpus,
                           const std::map<DialectId, std::vector<std::vector<PharaohLink>>>& links);
std::vector<AlignmentSet> read_alignment_files(const std::filesystem::path& dir, const ParallelCorpus& corpus);

}  // namespace ags
