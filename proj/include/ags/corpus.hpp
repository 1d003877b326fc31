#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ags/types.hpp"

namespace ags {

struct NormalizeOptions {
  // Folds Alef variants to bare Alef and Alef Maqsura to Ya. Off by default
  // because CODA spellings keep these distinctions.
  bool fold_alef_ya = false;
};

// NFC, then optional orthographic folding.
std::string normalize_text(std::string_view text, const NormalizeOptions& options = {});

struct Token {
  std::string surface;
  std::size_t index = 0;

  bool operator==(const Token&) const = default;
};

// Whitespace split, then leading/trailing punctuation detached one code point
// per token. Deterministic and idempotent on its own output.
std::vector<Token> tokenize(std::string_view raw_text, const NormalizeOptions& options = {});

struct Sentence {
  std::string sentence_id;
  DialectId dialect;
  std::string raw_text;
  std::vector<Token> tokens;

  bool operator==(const Sentence&) const = default;
};

struct ParallelBucket {
  std::string sentence_id;
  std::map<DialectId, Sentence> sentences;

  const Sentence* find(const DialectId& dialect) const;
  bool alignable() const { return find(DialectId::anchor()) != nullptr; }

  bool operator==(const ParallelBucket&) const = default;
};

struct CorpusLoadOptions {
  std::optional<std::set<DialectId>> dialect_whitelist;
  NormalizeOptions normalize;
};

struct ParallelCorpus {
  std::vector<ParallelBucket> buckets;  // first-appearance order of sentence ids
  std::vector<DialectId> dialects;      // sorted

  bool operator==(const ParallelCorpus&) const = default;
};

ParallelCorpus parse_parallel_corpus(std::istream& in, std::string_view source, const CorpusLoadOptions& options = {});
ParallelCorpus load_parallel_corpus(const std::filesystem::path& path, const CorpusLoadOptions& options = {});
void write_parallel_corpus(std::ostream& out, const ParallelCorpus& corpus);

struct CaphiTableRow {
  Symbol phoneme;
  Symbol grapheme;
  bool is_default = false;
};

class CaphiInventory {
 public:
  CaphiInventory() = default;
  // Validates that every phoneme has exactly one default grapheme and that
  // (phoneme, grapheme) pairs are unique.
  static CaphiInventory from_rows(std::vector<CaphiTableRow> rows, std::string_view source = "<inventory>");

  bool has_phoneme(const Symbol& phoneme) const { return default_grapheme_.contains(phoneme); }
  bool has_grapheme(const Symbol& grapheme) const { return compatible_.contains(grapheme); }
  bool compatible(const Symbol& grapheme, const Symbol& phoneme) const;

  const Symbol& default_grapheme(const Symbol& phoneme) const;
  // Phonemes listed against the grapheme, sorted.
  std::span<const Symbol> compatible_phonemes(const Symbol& grapheme) const;
  // Phonemes whose default grapheme is this grapheme.
  std::vector<Symbol> default_phonemes(const Symbol& grapheme) const;

  const std::vector<Symbol>& phonemes() const noexcept { return phonemes_; }
  const std::vector<CaphiTableRow>& rows() const noexcept { return rows_; }

 private:
  std::vector<CaphiTableRow> rows_;
  std::vector<Symbol> phonemes_;
  std::map<Symbol, Symbol> default_grapheme_;
  std::map<Symbol, std::vector<Symbol>> compatible_;
};

CaphiInventory parse_caphi_table(std::istream& in, std::string_view source);
CaphiInventory load_caphi_table(const std::filesystem::path& path);

struct LexiconEntry {
  std::string concept_id;
  DialectId dialect;
  SymbolSeq coda;   // graphemes
  SymbolSeq caphi;  // phonemes

  bool operator==(const LexiconEntry&) const = default;
};

std::vector<LexiconEntry> parse_lexicon(std::istream& in, std::string_view source, const CaphiInventory& inventory);
std::vector<LexiconEntry> load_lexicon(const std::filesystem::path& path, const CaphiInventory& inventory);

// Unnormalized spelling paired with its CODA form and the CAPHI transcription
// carried over from the lexicon.
struct RawSpelling {
  DialectId dialect;
  SymbolSeq raw;
  SymbolSeq coda;
  SymbolSeq caphi;
};

// `dialect<TAB>raw<TAB>coda[<TAB>caphi]`. Rows without a caphi column take the
// transcription of a lexicon entry with the same dialect and CODA form (then any
// dialect); rows with no transcription available are dropped with a warning.
std::vector<RawSpelling> load_raw_spellings(const std::filesystem::path& path, const std::vector<LexiconEntry>& lexicon,
                                            const CaphiInventory& inventory);

struct MultiLabelSentence {
  std::string id;
  std::string text;
  std::set<DialectId> valid_dialects;
  int total_dialects = 0;
};

// `text<TAB>codes<TAB>n`, or `id<TAB>text<TAB>codes<TAB>n`. Without an id
// column the 1-based data row number is used.
std::vector<MultiLabelSentence> parse_multilabel(std::istream& in, std::string_view source);
std::vector<MultiLabelSentence> load_multilabel(const std::filesystem::path& path);

}  // namespace ags
