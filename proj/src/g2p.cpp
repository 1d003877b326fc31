#include "ags/g2p.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "ags/edit_dp.hpp"

namespace ags {

std::set<Symbol> default_vowel_phonemes() {
  return {"a", "e", "i", "o", "u", "aa", "ee", "ii", "oo", "uu", "a.", "aa.", "@"};
}

G2PAlignment align_g2p(const SymbolSeq& coda, const SymbolSeq& caphi, const CaphiInventory& inventory,
                       const G2PCosts& costs) {
  if (coda.empty() || caphi.empty()) throw ArgumentError("align_g2p: empty grapheme or phoneme sequence");

  auto sub = [&](Eigen::Index i, Eigen::Index j) {
    return inventory.compatible(coda[i], caphi[j]) ? costs.compatible : costs.substitution;
  };
  auto del = [&](Eigen::Index) { return costs.deletion; };
  auto ins = [&](Eigen::Index j) { return costs.vowels.contains(caphi[j]) ? costs.vowel_insertion : costs.insertion; };

  const auto path = min_edit_path<double>(static_cast<Eigen::Index>(coda.size()), static_cast<Eigen::Index>(caphi.size()),
                                          sub, del, ins, TieOrder{EditOp::Substitute, EditOp::Insert, EditOp::Delete});
  G2PAlignment out;
  out.cost = path.cost;
  out.pairs.reserve(path.steps.size());
  for (const auto& step : path.steps) {
    switch (step.op) {
      case EditOp::Substitute:
        out.pairs.push_back({coda[step.source], caphi[step.target]});
        break;
      case EditOp::Delete:
        out.pairs.push_back({coda[step.source], Symbol(kGap)});
        break;
      case EditOp::Insert:
        out.pairs.push_back({Symbol(kGap), caphi[step.target]});
        break;
    }
  }
  return out;
}

G2PAlignment align_entry(const LexiconEntry& entry, const CaphiInventory& inventory, const G2PCosts& costs) {
  auto alignment = align_g2p(entry.coda, entry.caphi, inventory, costs);
  alignment.entry = &entry;
  return alignment;
}

void G2PCountTable::add(const DialectId& dialect, const Symbol& grapheme, const Symbol& phoneme, std::int64_t n) {
  if (n == 0) return;
  cells_[{dialect, grapheme, phoneme}] += n;
  total_ += n;
}

void G2PCountTable::add(const DialectId& dialect, const G2PAlignment& alignment) {
  for (const auto& pair : alignment.pairs) add(dialect, pair.grapheme, pair.phoneme);
}

void G2PCountTable::merge(const G2PCountTable& other) {
  for (const auto& [key, n] : other.cells_) {
    cells_[key] += n;
    total_ += n;
  }
}

std::int64_t G2PCountTable::count(const DialectId& dialect, const Symbol& grapheme, const Symbol& phoneme) const {
  const auto it = cells_.find({dialect, grapheme, phoneme});
  return it == cells_.end() ? 0 : it->second;
}

std::int64_t G2PCountTable::pooled(const Symbol& grapheme, const Symbol& phoneme) const {
  std::int64_t n = 0;
  for (const auto& [key, c] : cells_) {
    if (std::get<1>(key) == grapheme && std::get<2>(key) == phoneme) n += c;
  }
  return n;
}

std::map<std::pair<Symbol, Symbol>, std::int64_t> G2PCountTable::pooled_cells() const {
  std::map<std::pair<Symbol, Symbol>, std::int64_t> out;
  for (const auto& [key, c] : cells_) out[{std::get<1>(key), std::get<2>(key)}] += c;
  return out;
}

G2PCountTable collect_g2p_counts(const std::vector<LexiconEntry>& lexicon, const CaphiInventory& inventory,
                                 const G2PCosts& costs) {
  G2PCountTable table;
  for (const auto& entry : lexicon) table.add(entry.dialect, align_entry(entry, inventory, costs));
  return table;
}

G2PCountTable collect_raw_counts(const std::vector<RawSpelling>& raw, const CaphiInventory& inventory,
                                 const G2PCosts& costs) {
  G2PCountTable table;
  for (const auto& row : raw) table.add(row.dialect, align_g2p(row.raw, row.caphi, inventory, costs));
  return table;
}

void write_counts_tsv(std::ostream& out, const G2PCountTable& table) {
  for (const auto& [key, n] : table.cells()) {
    const auto& [dialect, grapheme, phoneme] = key;
    out << dialect.code() << '\t' << grapheme << '\t' << phoneme << '\t' << n << '\n';
  }
}

G2PCountTable read_counts_tsv(std::istream& in, std::string_view source) {
  G2PCountTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line, '\t');
    if (fields.size() != 4) throw ParseError(source, line_no, "expected dialect<TAB>grapheme<TAB>phoneme<TAB>count");
    std::int64_t n = 0;
    try {
      n = std::stoll(fields[3]);
    } catch (const std::exception&) {
      throw ParseError(source, line_no, "count is not an integer");
    }
    table.add(DialectId{fields[0]}, fields[1], fields[2], n);
  }
  return table;
}

}  // namespace ags
