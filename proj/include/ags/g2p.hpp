#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "ags/corpus.hpp"
#include "ags/types.hpp"

namespace ags {

// Either side may be kGap, never both.
struct G2PPair {
  Symbol grapheme;
  Symbol phoneme;

  bool operator==(const G2PPair&) const = default;
};

struct G2PAlignment {
  const LexiconEntry* entry = nullptr;
  std::vector<G2PPair> pairs;
  double cost = 0.0;
};

// Short-vowel phonemes shipped with the default inventory.
std::set<Symbol> default_vowel_phonemes();

struct G2PCosts {
  double compatible = 0.0;
  double substitution = 1.0;
  double deletion = 1.0;   // grapheme with no phoneme
  double insertion = 1.0;  // phoneme with no grapheme
  double vowel_insertion = 0.5;
  std::set<Symbol> vowels = default_vowel_phonemes();
};

// Grapheme/phoneme alignment under the inventory-guided cost scheme. Ties
// prefer substitution, then insertion, then deletion.
G2PAlignment align_g2p(const SymbolSeq& coda, const SymbolSeq& caphi, const CaphiInventory& inventory,
                       const G2PCosts& costs = {});
G2PAlignment align_entry(const LexiconEntry& entry, const CaphiInventory& inventory, const G2PCosts& costs = {});

// Joint (grapheme, phoneme) counts per dialect, gap events included.
class G2PCountTable {
 public:
  using Key = std::tuple<DialectId, Symbol, Symbol>;  // dialect, grapheme, phoneme

  void add(const DialectId& dialect, const Symbol& grapheme, const Symbol& phoneme, std::int64_t n = 1);
  void add(const DialectId& dialect, const G2PAlignment& alignment);
  void merge(const G2PCountTable& other);

  std::int64_t count(const DialectId& dialect, const Symbol& grapheme, const Symbol& phoneme) const;
  std::int64_t pooled(const Symbol& grapheme, const Symbol& phoneme) const;
  std::int64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return cells_.empty(); }

  const std::map<Key, std::int64_t>& cells() const noexcept { return cells_; }
  std::map<std::pair<Symbol, Symbol>, std::int64_t> pooled_cells() const;

  bool operator==(const G2PCountTable&) const = default;

 private:
  std::map<Key, std::int64_t> cells_;
  std::int64_t total_ = 0;
};

G2PCountTable collect_g2p_counts(const std::vector<LexiconEntry>& lexicon, const CaphiInventory& inventory,
                                 const G2PCosts& costs = {});
G2PCountTable collect_raw_counts(const std::vector<RawSpelling>& raw, const CaphiInventory& inventory,
                                 const G2PCosts& costs = {});

// `dialect<TAB>grapheme<TAB>phoneme<TAB>count`, gaps written as `<GAP>`.
void write_counts_tsv(std::ostream& out, const G2PCountTable& table);
G2PCountTable read_counts_tsv(std::istream& in, std::string_view source);

}  // namespace ags
