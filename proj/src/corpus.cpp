#include "ags/corpus.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

namespace ags {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

void fold_orthography(std::string& text) {
  static const std::pair<std::string_view, std::string_view> kFolds[] = {
      {"أ", "ا"}, {"إ", "ا"}, {"آ", "ا"}, {"ٱ", "ا"}, {"ى", "ي"}};
  for (const auto& [from, to] : kFolds) {
    std::size_t pos = 0;
    while ((pos = text.find(from, pos)) != std::string::npos) {
      text.replace(pos, from.size(), to);
      pos += to.size();
    }
  }
}

}  // namespace

std::string normalize_text(std::string_view text, const NormalizeOptions& options) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  const auto source = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  const icu::UnicodeString normalized = nfc->normalize(source, status);
  if (U_FAILURE(status)) throw ArgumentError("normalization failed");
  std::string out;
  normalized.toUTF8String(out);
  if (options.fold_alef_ya) fold_orthography(out);
  return out;
}

std::vector<Token> tokenize(std::string_view raw_text, const NormalizeOptions& options) {
  const std::string text = normalize_text(raw_text, options);

  struct CodePoint {
    std::string_view bytes;
    UChar32 value;
  };
  std::vector<CodePoint> cps;
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  for (int32_t i = 0; i < length;) {
    const int32_t start = i;
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    if (c < 0) throw ArgumentError("invalid UTF-8 in input text");
    cps.push_back({std::string_view(text).substr(start, i - start), c});
  }

  std::vector<Token> tokens;
  auto emit = [&](std::string surface) { tokens.push_back({std::move(surface), tokens.size()}); };

  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && u_isUWhiteSpace(cps[i].value)) ++i;
    std::size_t end = i;
    while (end < cps.size() && !u_isUWhiteSpace(cps[end].value)) ++end;
    if (end == i) break;

    std::size_t lo = i;
    std::size_t hi = end;
    while (lo < hi && u_ispunct(cps[lo].value)) emit(std::string(cps[lo++].bytes));
    std::size_t trail = hi;
    while (trail > lo && u_ispunct(cps[trail - 1].value)) --trail;
    if (trail > lo) {
      std::string core;
      for (std::size_t k = lo; k < trail; ++k) core += cps[k].bytes;
      emit(std::move(core));
    }
    for (std::size_t k = trail; k < hi; ++k) emit(std::string(cps[k].bytes));
    i = end;
  }
  return tokens;
}

const Sentence* ParallelBucket::find(const DialectId& dialect) const {
  const auto it = sentences.find(dialect);
  return it == sentences.end() ? nullptr : &it->second;
}

ParallelCorpus parse_parallel_corpus(std::istream& in, std::string_view source, const CorpusLoadOptions& options) {
  ParallelCorpus corpus;
  std::unordered_map<std::string, std::size_t> bucket_of;
  std::set<DialectId> dialects;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_fields(line, '\t');
    if (fields.size() != 3) {
      throw ParseError(source, line_no, "expected 3 tab-separated columns, found " + std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) throw ParseError(source, line_no, "empty sentence id or dialect");
    DialectId dialect{fields[1]};
    if (options.dialect_whitelist && !options.dialect_whitelist->contains(dialect)) {
      throw ValidationError(source, line_no, "unknown dialect code '" + dialect.code() + "'");
    }
    auto [it, inserted] = bucket_of.try_emplace(fields[0], corpus.buckets.size());
    if (inserted) corpus.buckets.push_back({fields[0], {}});
    auto& bucket = corpus.buckets[it->second];
    if (bucket.sentences.contains(dialect)) {
      throw ValidationError(source, line_no, "duplicate (sentence_id, dialect) = (" + fields[0] + ", " + dialect.code() + ")");
    }
    Sentence sentence;
    sentence.sentence_id = fields[0];
    sentence.dialect = dialect;
    sentence.raw_text = normalize_text(fields[2], options.normalize);
    sentence.tokens = tokenize(sentence.raw_text, options.normalize);
    bucket.sentences.emplace(dialect, std::move(sentence));
    dialects.insert(dialect);
  }
  corpus.dialects.assign(dialects.begin(), dialects.end());
  return corpus;
}

ParallelCorpus load_parallel_corpus(const std::filesystem::path& path, const CorpusLoadOptions& options) {
  auto in = open_input(path);
  return parse_parallel_corpus(in, path.string(), options);
}

void write_parallel_corpus(std::ostream& out, const ParallelCorpus& corpus) {
  for (const auto& bucket : corpus.buckets) {
    for (const auto& [dialect, sentence] : bucket.sentences) {
      out << bucket.sentence_id << '\t' << dialect.code() << '\t' << sentence.raw_text << '\n';
    }
  }
}

// ---------------------------------------------------------------------------

CaphiInventory CaphiInventory::from_rows(std::vector<CaphiTableRow> rows, std::string_view source) {
  CaphiInventory inv;
  std::set<std::pair<Symbol, Symbol>> seen;
  std::map<Symbol, int> defaults;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.phoneme.empty() || row.grapheme.empty()) throw ValidationError(source, i + 1, "empty phoneme or grapheme");
    if (is_gap(row.phoneme) || is_gap(row.grapheme)) throw ValidationError(source, i + 1, "reserved gap symbol");
    if (split_graphemes(row.grapheme).size() != 1) {
      throw ValidationError(source, i + 1, "grapheme '" + row.grapheme + "' is not a single code point");
    }
    if (!seen.emplace(row.phoneme, row.grapheme).second) {
      throw ValidationError(source, i + 1, "duplicate mapping " + row.phoneme + " -> " + row.grapheme);
    }
    defaults.try_emplace(row.phoneme, 0);
    if (row.is_default) {
      if (++defaults[row.phoneme] > 1) {
        throw ValidationError(source, i + 1, "phoneme '" + row.phoneme + "' has multiple default graphemes");
      }
      inv.default_grapheme_[row.phoneme] = row.grapheme;
    }
    inv.compatible_[row.grapheme].push_back(row.phoneme);
  }
  for (const auto& [phoneme, n] : defaults) {
    if (n == 0) throw ValidationError(std::string(source) + ": phoneme '" + phoneme + "' has no default grapheme");
    inv.phonemes_.push_back(phoneme);
  }
  for (auto& [g, phs] : inv.compatible_) std::sort(phs.begin(), phs.end());
  inv.rows_ = std::move(rows);
  return inv;
}

bool CaphiInventory::compatible(const Symbol& grapheme, const Symbol& phoneme) const {
  const auto it = compatible_.find(grapheme);
  return it != compatible_.end() && std::binary_search(it->second.begin(), it->second.end(), phoneme);
}

const Symbol& CaphiInventory::default_grapheme(const Symbol& phoneme) const {
  const auto it = default_grapheme_.find(phoneme);
  if (it == default_grapheme_.end()) throw LookupError("unknown phoneme '" + phoneme + "'");
  return it->second;
}

std::span<const Symbol> CaphiInventory::compatible_phonemes(const Symbol& grapheme) const {
  const auto it = compatible_.find(grapheme);
  if (it == compatible_.end()) return {};
  return it->second;
}

std::vector<Symbol> CaphiInventory::default_phonemes(const Symbol& grapheme) const {
  std::vector<Symbol> out;
  for (const auto& [ph, g] : default_grapheme_) {
    if (g == grapheme) out.push_back(ph);
  }
  return out;
}

CaphiInventory parse_caphi_table(std::istream& in, std::string_view source) {
  std::vector<CaphiTableRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line, '\t');
    if (fields.size() != 3) throw ParseError(source, line_no, "expected phoneme<TAB>grapheme<TAB>is_default");
    if (fields[2] != "0" && fields[2] != "1") throw ParseError(source, line_no, "is_default must be 0 or 1");
    rows.push_back({fields[0], normalize_text(fields[1]), fields[2] == "1"});
  }
  return CaphiInventory::from_rows(std::move(rows), source);
}

CaphiInventory load_caphi_table(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_caphi_table(in, path.string());
}

// ---------------------------------------------------------------------------

namespace {

SymbolSeq parse_caphi_field(std::string_view field, const CaphiInventory& inventory, std::string_view source,
                            std::size_t line_no) {
  SymbolSeq caphi = split_words(field);
  if (caphi.empty()) throw ValidationError(source, line_no, "empty CAPHI transcription");
  for (const auto& ph : caphi) {
    if (!inventory.has_phoneme(ph)) throw ValidationError(source, line_no, "unknown CAPHI phoneme '" + ph + "'");
  }
  return caphi;
}

}  // namespace

std::vector<LexiconEntry> parse_lexicon(std::istream& in, std::string_view source, const CaphiInventory& inventory) {
  std::vector<LexiconEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line, '\t');
    if (fields.size() != 4) throw ParseError(source, line_no, "expected concept_id<TAB>dialect<TAB>coda<TAB>caphi");
    if (fields[1].empty()) throw ParseError(source, line_no, "empty dialect");
    LexiconEntry entry;
    entry.concept_id = fields[0];
    entry.dialect = DialectId{fields[1]};
    entry.coda = split_graphemes(normalize_text(fields[2]));
    if (entry.coda.empty()) throw ValidationError(source, line_no, "empty CODA spelling");
    entry.caphi = parse_caphi_field(fields[3], inventory, source, line_no);
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<LexiconEntry> load_lexicon(const std::filesystem::path& path, const CaphiInventory& inventory) {
  auto in = open_input(path);
  return parse_lexicon(in, path.string(), inventory);
}

std::vector<RawSpelling> load_raw_spellings(const std::filesystem::path& path, const std::vector<LexiconEntry>& lexicon,
                                            const CaphiInventory& inventory) {
  std::map<std::pair<DialectId, SymbolSeq>, const LexiconEntry*> by_dialect;
  std::map<SymbolSeq, const LexiconEntry*> by_coda;
  for (const auto& e : lexicon) {
    by_dialect.try_emplace({e.dialect, e.coda}, &e);
    by_coda.try_emplace(e.coda, &e);
  }

  auto in = open_input(path);
  const std::string source = path.string();
  std::vector<RawSpelling> out;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line, '\t');
    if (fields.size() != 3 && fields.size() != 4) {
      throw ParseError(source, line_no, "expected dialect<TAB>raw<TAB>coda[<TAB>caphi]");
    }
    RawSpelling row;
    row.dialect = DialectId{fields[0]};
    row.raw = split_graphemes(normalize_text(fields[1]));
    row.coda = split_graphemes(normalize_text(fields[2]));
    if (row.raw.empty() || row.coda.empty()) throw ValidationError(source, line_no, "empty spelling");
    if (fields.size() == 4) {
      row.caphi = parse_caphi_field(fields[3], inventory, source, line_no);
    } else if (const auto it = by_dialect.find({row.dialect, row.coda}); it != by_dialect.end()) {
      row.caphi = it->second->caphi;
    } else if (const auto jt = by_coda.find(row.coda); jt != by_coda.end()) {
      row.caphi = jt->second->caphi;
    } else {
      warn_once(source + ":" + std::to_string(line_no) + ": no CAPHI transcription for '" + join(row.coda) + "', row dropped");
      continue;
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<MultiLabelSentence> parse_multilabel(std::istream& in, std::string_view source) {
  std::vector<MultiLabelSentence> out;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_fields(line, '\t');
    MultiLabelSentence item;
    if (fields.size() == 4) {
      item.id = fields[0];
      fields.erase(fields.begin());
    } else if (fields.size() == 3) {
      item.id = std::to_string(out.size() + 1);
    } else {
      throw ParseError(source, line_no, "expected [id<TAB>]text<TAB>dialects<TAB>n");
    }
    item.text = fields[0];
    for (const auto& code : split_fields(fields[1], ',')) {
      if (!code.empty()) item.valid_dialects.insert(DialectId{code});
    }
    try {
      std::size_t used = 0;
      item.total_dialects = std::stoi(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(source, line_no, "dialect count is not an integer");
    }
    const auto n_valid = static_cast<int>(item.valid_dialects.size());
    if (item.total_dialects < 1 || n_valid < 1 || n_valid > item.total_dialects) {
      throw ValidationError(source, line_no, "need 1 <= |valid dialects| <= n");
    }
    out.push_back(std::move(item));
  }
  return out;
}

std::vector<MultiLabelSentence> load_multilabel(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_multilabel(in, path.string());
}

}  // namespace ags
