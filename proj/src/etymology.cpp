#include "ags/etymology.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "json.hpp"

namespace ags {

std::string_view table_name(TableKind kind) {
  switch (kind) {
    case TableKind::PhGivenEt:
      return "ph_given_et";
    case TableKind::PhGivenOr:
      return "ph_given_or";
    case TableKind::EtGivenPh:
      return "et_given_ph";
    case TableKind::EtymSpelling:
      return "etym_spelling";
  }
  return "unknown";
}

void ProbTable::set_etym(const Symbol& grapheme, const Symbol& phoneme, const DialectId& dialect, double p) {
  rows_[{grapheme, phoneme, dialect}] = Distribution{{Symbol(kEtymOutcome), p}};
}

const Distribution* ProbTable::find(const ConditionKey& key) const {
  const auto it = rows_.find(key);
  return it == rows_.end() ? nullptr : &it->second;
}

const Distribution* ProbTable::lookup(const Symbol& given, const DialectId& dialect, const Symbol& second) const {
  if (const auto* row = find({given, second, dialect})) return row;
  return find({given, second, DialectId::pooled()});
}

std::optional<double> ProbTable::etym_probability(const Symbol& grapheme, const Symbol& phoneme,
                                                  const DialectId& dialect) const {
  const auto* row = lookup(grapheme, dialect, phoneme);
  if (!row) return std::nullopt;
  const auto it = row->find(Symbol(kEtymOutcome));
  return it == row->end() ? 0.0 : it->second;
}

// ---------------------------------------------------------------------------

namespace {

// (given, dialect) -> outcome -> count
using CountRows = std::map<std::pair<Symbol, DialectId>, std::map<Symbol, std::int64_t>>;

ProbTable table_from_counts(TableKind kind, const CountRows& rows, const std::vector<Symbol>& support, double alpha) {
  if (alpha < 0.0) throw ArgumentError("smoothing constant must be non-negative");
  CountRows all = rows;
  for (const auto& [key, outcomes] : rows) {
    auto& pooled = all[{key.first, DialectId::pooled()}];
    for (const auto& [sym, n] : outcomes) pooled[sym] += n;
  }

  ProbTable table(kind, alpha);
  for (const auto& [key, outcomes] : all) {
    std::set<Symbol> outcome_set(support.begin(), support.end());
    std::int64_t total = 0;
    for (const auto& [sym, n] : outcomes) {
      outcome_set.insert(sym);
      total += n;
    }
    if (total == 0) continue;
    const double denom = static_cast<double>(total) + alpha * static_cast<double>(outcome_set.size());
    Distribution dist;
    for (const auto& sym : outcome_set) {
      const auto it = outcomes.find(sym);
      const double c = it == outcomes.end() ? 0.0 : static_cast<double>(it->second);
      const double p = (c + alpha) / denom;
      if (p > 0.0) dist.emplace(sym, p);
    }
    table.set({key.first, {}, key.second}, std::move(dist));
  }
  return table;
}

// Orientation: grapheme -> phoneme outcomes, or phoneme -> grapheme outcomes.
void accumulate(const G2PCountTable& counts, bool given_grapheme, CountRows& rows) {
  for (const auto& [key, n] : counts.cells()) {
    const auto& [dialect, grapheme, phoneme] = key;
    if (is_gap(grapheme) || is_gap(phoneme)) continue;
    if (given_grapheme) {
      rows[{grapheme, dialect}][phoneme] += n;
    } else {
      rows[{phoneme, dialect}][grapheme] += n;
    }
  }
}

}  // namespace

ProbTable estimate_ph_given_et(const G2PCountTable& lexicon_counts, const EstimationSupport& support) {
  CountRows rows;
  accumulate(lexicon_counts, true, rows);
  if (rows.empty()) throw Error("estimate_ph_given_et: no training data");
  return table_from_counts(TableKind::PhGivenEt, rows, support.phonemes, support.alpha);
}

ProbTable estimate_ph_given_or(const G2PCountTable& lexicon_counts, const G2PCountTable& raw_counts,
                               const EstimationSupport& support) {
  CountRows rows;
  accumulate(lexicon_counts, true, rows);
  accumulate(raw_counts, true, rows);
  if (rows.empty()) throw Error("estimate_ph_given_or: no training data");
  return table_from_counts(TableKind::PhGivenOr, rows, support.phonemes, support.alpha);
}

ProbTable estimate_et_given_ph(const G2PCountTable& lexicon_counts, const EstimationSupport& support) {
  CountRows rows;
  accumulate(lexicon_counts, false, rows);
  if (rows.empty()) throw Error("estimate_et_given_ph: no training data");
  return table_from_counts(TableKind::EtGivenPh, rows, support.coda_alphabet, support.alpha);
}

EtymSpellingEstimate detect_etymological_spellings(const std::vector<LexiconEntry>& lexicon,
                                                   const CaphiInventory& inventory, double alpha,
                                                   const G2PCosts& costs) {
  if (alpha < 0.0) throw ArgumentError("smoothing constant must be non-negative");

  std::map<SymbolSeq, std::vector<const LexiconEntry*>> groups;
  for (const auto& entry : lexicon) groups[entry.coda].push_back(&entry);

  std::map<std::tuple<Symbol, Symbol, DialectId>, EtymTally> tallies;
  for (const auto& [coda, entries] : groups) {
    // Per entry: the (position, phoneme) events of its alignment.
    std::vector<std::vector<std::pair<std::size_t, Symbol>>> events(entries.size());
    std::vector<std::set<Symbol>> realized(coda.size());
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const auto alignment = align_entry(*entries[e], inventory, costs);
      std::size_t pos = 0;
      for (const auto& pair : alignment.pairs) {
        if (is_gap(pair.grapheme)) continue;
        if (!is_gap(pair.phoneme)) {
          events[e].emplace_back(pos, pair.phoneme);
          realized[pos].insert(pair.phoneme);
        }
        ++pos;
      }
    }

    std::vector<bool> etymological(coda.size(), false);
    for (std::size_t pos = 0; pos < coda.size(); ++pos) {
      const auto defaults = inventory.default_phonemes(coda[pos]);
      bool has_default = false;
      bool has_other = false;
      for (const auto& ph : realized[pos]) {
        (std::find(defaults.begin(), defaults.end(), ph) != defaults.end() ? has_default : has_other) = true;
      }
      etymological[pos] = has_default && has_other;
    }

    for (std::size_t e = 0; e < entries.size(); ++e) {
      for (const auto& [pos, ph] : events[e]) {
        auto& t = tallies[{coda[pos], ph, entries[e]->dialect}];
        ++t.total;
        if (etymological[pos]) ++t.flagged;
      }
    }
  }

  EtymSpellingEstimate out;
  out.table = ProbTable(TableKind::EtymSpelling, alpha);
  std::map<std::pair<Symbol, Symbol>, EtymTally> pooled;
  for (const auto& [key, t] : tallies) {
    const auto& [g, ph, d] = key;
    auto& p = pooled[{g, ph}];
    p.total += t.total;
    p.flagged += t.flagged;
  }
  auto smoothed = [alpha](const EtymTally& t) {
    return (static_cast<double>(t.flagged) + alpha) / (static_cast<double>(t.total) + 2.0 * alpha);
  };
  for (const auto& [key, t] : tallies) {
    const auto& [g, ph, d] = key;
    out.table.set_etym(g, ph, d, smoothed(t));
  }
  for (const auto& [key, t] : pooled) out.table.set_etym(key.first, key.second, DialectId::pooled(), smoothed(t));
  out.tallies = std::move(pooled);
  return out;
}

std::vector<Symbol> coda_alphabet(const std::vector<LexiconEntry>& lexicon) {
  std::set<Symbol> symbols;
  for (const auto& entry : lexicon) symbols.insert(entry.coda.begin(), entry.coda.end());
  return {symbols.begin(), symbols.end()};
}

// ---------------------------------------------------------------------------

double shared_etymology(const Eigen::Ref<const Eigen::VectorXd>& px, const Eigen::Ref<const Eigen::VectorXd>& py) {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < px.size(); ++k) sum += px[k] * py[k];
  return sum;
}

namespace {

double clamp_cost(double shared) { return std::clamp(1.0 - shared, 0.0, 1.0); }

}  // namespace

EtymologyModel::EtymologyModel(Tables tables, std::vector<Symbol> phonemes, std::vector<Symbol> coda_alphabet,
                               std::vector<Symbol> extra_graphemes, std::vector<DialectId> dialects)
    : tables_(std::move(tables)), phonemes_(std::move(phonemes)), coda_alphabet_(std::move(coda_alphabet)) {
  std::sort(coda_alphabet_.begin(), coda_alphabet_.end());
  coda_alphabet_.erase(std::unique(coda_alphabet_.begin(), coda_alphabet_.end()), coda_alphabet_.end());
  if (coda_alphabet_.empty()) throw ArgumentError("etymology model needs a non-empty CODA alphabet");
  alphabet_ = coda_alphabet_;
  std::sort(extra_graphemes.begin(), extra_graphemes.end());
  for (auto& g : extra_graphemes) {
    if (!std::binary_search(coda_alphabet_.begin(), coda_alphabet_.end(), g) &&
        (alphabet_.size() == coda_alphabet_.size() || alphabet_.back() != g)) {
      alphabet_.push_back(std::move(g));
    }
  }
  for (std::size_t i = 0; i < alphabet_.size(); ++i) index_[alphabet_[i]] = static_cast<Eigen::Index>(i);

  std::set<DialectId> ds(dialects.begin(), dialects.end());
  for (const auto* table : {&tables_.ph_given_et, &tables_.ph_given_or, &tables_.et_given_ph, &tables_.etym_spelling}) {
    for (const auto& [key, dist] : table->rows()) {
      if (!key.dialect.is_pooled()) ds.insert(key.dialect);
    }
  }
  dialects_.assign(ds.begin(), ds.end());

  const auto n = static_cast<Eigen::Index>(alphabet_.size());
  const std::size_t slots = dialects_.size() + 1;
  posteriors_.assign(slots, RowMajor::Zero(n, n));
  for (std::size_t s = 0; s < slots; ++s) {
    for (Eigen::Index g = 0; g < n; ++g) posteriors_[s].row(g) = compute_posterior(alphabet_[g], slot_dialect(s)).transpose();
  }

  pair_costs_.resize(slots * slots);
  for (std::size_t sx = 0; sx < slots; ++sx) {
    for (std::size_t sy = 0; sy < slots; ++sy) {
      auto& m = pair_costs_[sx * slots + sy];
      m.resize(n, n);
      for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
          m(a, b) = clamp_cost(shared_etymology(posteriors_[sx].row(a).transpose(), posteriors_[sy].row(b).transpose()));
        }
      }
    }
  }
}

EtymologyModel EtymologyModel::build(const std::vector<LexiconEntry>& lexicon, const CaphiInventory& inventory,
                                     const std::vector<RawSpelling>& raw, const ModelOptions& options) {
  if (lexicon.empty()) throw Error("cannot build etymology model: no training data");
  const auto lexicon_counts = collect_g2p_counts(lexicon, inventory, options.g2p);
  const auto raw_counts = collect_raw_counts(raw, inventory, options.g2p);

  EstimationSupport support{inventory.phonemes(), ags::coda_alphabet(lexicon), options.alpha};
  Tables tables;
  tables.ph_given_et = estimate_ph_given_et(lexicon_counts, support);
  tables.ph_given_or = estimate_ph_given_or(lexicon_counts, raw_counts, support);
  tables.et_given_ph = estimate_et_given_ph(lexicon_counts, support);
  tables.etym_spelling = detect_etymological_spellings(lexicon, inventory, options.alpha, options.g2p).table;

  std::set<Symbol> extra;
  std::set<DialectId> dialects;
  for (const auto& e : lexicon) dialects.insert(e.dialect);
  for (const auto& r : raw) {
    extra.insert(r.raw.begin(), r.raw.end());
    dialects.insert(r.dialect);
  }
  return EtymologyModel(std::move(tables), support.phonemes, support.coda_alphabet, {extra.begin(), extra.end()},
                        {dialects.begin(), dialects.end()});
}

Eigen::Index EtymologyModel::grapheme_index(const Symbol& grapheme) const {
  const auto it = index_.find(grapheme);
  return it == index_.end() ? -1 : it->second;
}

std::size_t EtymologyModel::dialect_slot(const DialectId& dialect) const {
  const auto it = std::lower_bound(dialects_.begin(), dialects_.end(), dialect);
  if (it != dialects_.end() && *it == dialect) return static_cast<std::size_t>(it - dialects_.begin());
  return dialects_.size();
}

const DialectId& EtymologyModel::slot_dialect(std::size_t slot) const {
  return slot < dialects_.size() ? dialects_[slot] : DialectId::pooled();
}

Eigen::VectorXd EtymologyModel::uniform_posterior() const {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(alphabet_.size()));
  p.head(static_cast<Eigen::Index>(coda_alphabet_.size())).setConstant(1.0 / static_cast<double>(coda_alphabet_.size()));
  return p;
}

Eigen::VectorXd EtymologyModel::compute_posterior(const Symbol& grapheme, const DialectId& dialect) const {
  const Distribution* phonemes = tables_.ph_given_or.lookup(grapheme, dialect);
  if (!phonemes) {
    warn_once("grapheme '" + grapheme + "' has no P(ph|or,d) row; using a uniform etymology posterior");
    return uniform_posterior();
  }
  const Eigen::VectorXd uniform = uniform_posterior();
  const Eigen::Index self = grapheme_index(grapheme);
  Eigen::VectorXd post = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(alphabet_.size()));
  for (const auto& [ph, weight] : *phonemes) {
    if (weight == 0.0) continue;
    const double etym = tables_.etym_spelling.etym_probability(grapheme, ph, dialect).value_or(0.5);
    if (etym > 0.0) {
      if (self >= 0) {
        post[self] += weight * etym;
      } else {
        post += weight * etym * uniform;
      }
    }
    if (etym < 1.0) {
      const Distribution* origins = tables_.et_given_ph.lookup(ph, dialect);
      if (!origins) {
        post += weight * (1.0 - etym) * uniform;
        continue;
      }
      for (const auto& [et, p] : *origins) {
        const Eigen::Index k = grapheme_index(et);
        if (k >= 0) post[k] += weight * (1.0 - etym) * p;
      }
    }
  }
  return post;
}

Eigen::VectorXd EtymologyModel::resolved_posterior(const Symbol& grapheme, Eigen::Index index, std::size_t slot) const {
  if (index >= 0) return posteriors_[slot].row(index).transpose();
  warn_once("grapheme '" + grapheme + "' unknown to the etymology model; using a uniform etymology posterior");
  return uniform_posterior();
}

Eigen::VectorXd EtymologyModel::posterior(const Symbol& grapheme, const DialectId& dialect) const {
  return resolved_posterior(grapheme, grapheme_index(grapheme), dialect_slot(dialect));
}

Distribution EtymologyModel::posterior_distribution(const Symbol& grapheme, const DialectId& dialect) const {
  const Eigen::VectorXd p = posterior(grapheme, dialect);
  Distribution out;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (p[k] > 0.0) out.emplace(alphabet_[k], p[k]);
  }
  return out;
}

double EtymologyModel::cost(const Symbol& x, const DialectId& dx, const Symbol& y, const DialectId& dy) const {
  const Eigen::Index ix = grapheme_index(x);
  const Eigen::Index iy = grapheme_index(y);
  const std::size_t sx = dialect_slot(dx);
  const std::size_t sy = dialect_slot(dy);
  if (ix >= 0 && iy >= 0) return pair_costs_[sx * (dialects_.size() + 1) + sy](ix, iy);
  return clamp_cost(shared_etymology(resolved_posterior(x, ix, sx), resolved_posterior(y, iy, sy)));
}

Eigen::MatrixXd EtymologyModel::cost_matrix(const SymbolSeq& x, const DialectId& dx, const SymbolSeq& y,
                                            const DialectId& dy) const {
  const std::size_t sx = dialect_slot(dx);
  const std::size_t sy = dialect_slot(dy);
  const auto& known = pair_costs_[sx * (dialects_.size() + 1) + sy];
  std::vector<Eigen::Index> xi(x.size());
  std::vector<Eigen::Index> yi(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) xi[i] = grapheme_index(x[i]);
  for (std::size_t j = 0; j < y.size(); ++j) yi[j] = grapheme_index(y[j]);

  Eigen::MatrixXd out(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      const auto r = static_cast<Eigen::Index>(i);
      const auto c = static_cast<Eigen::Index>(j);
      if (xi[i] >= 0 && yi[j] >= 0) {
        out(r, c) = known(xi[i], yi[j]);
      } else {
        out(r, c) = clamp_cost(shared_etymology(resolved_posterior(x[i], xi[i], sx), resolved_posterior(y[j], yi[j], sy)));
      }
    }
  }
  return out;
}

Symbol EtymologyModel::best_phoneme(const Symbol& grapheme, const DialectId& dialect, const Symbol& etymology) const {
  const Distribution* phonemes = tables_.ph_given_or.lookup(grapheme, dialect);
  if (!phonemes) return {};
  Symbol best;
  double best_mass = 0.0;
  for (const auto& [ph, weight] : *phonemes) {
    const double etym = tables_.etym_spelling.etym_probability(grapheme, ph, dialect).value_or(0.5);
    double via_origin = 0.0;
    if (const Distribution* origins = tables_.et_given_ph.lookup(ph, dialect)) {
      if (const auto it = origins->find(etymology); it != origins->end()) via_origin = it->second;
    } else {
      via_origin = 1.0 / static_cast<double>(coda_alphabet_.size());
    }
    const double mass = weight * ((etymology == grapheme ? etym : 0.0) + (1.0 - etym) * via_origin);
    if (mass > best_mass) {
      best_mass = mass;
      best = ph;
    }
  }
  return best;
}

SubstitutionCost EtymologyModel::substitution_cost(const CharContext& x, const CharContext& y) const {
  SubstitutionCost out{x, y, cost(x.grapheme, x.dialect, y.grapheme, y.dialect), std::nullopt};
  const Eigen::VectorXd px = posterior(x.grapheme, x.dialect);
  const Eigen::VectorXd py = posterior(y.grapheme, y.dialect);
  Eigen::Index best = -1;
  double best_term = 0.0;
  for (Eigen::Index k = 0; k < px.size(); ++k) {
    const double term = px[k] * py[k];
    if (term > best_term) {
      best_term = term;
      best = k;
    }
  }
  if (best >= 0) {
    const Symbol& c = alphabet_[best];
    out.best_etymology = EtymologyPath{c, best_phoneme(x.grapheme, x.dialect, c), c, best_phoneme(y.grapheme, y.dialect, c)};
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::string_view kManifestName = "manifest.json";

std::string table_file(TableKind kind) { return std::string(table_name(kind)) + ".tsv"; }

void write_table(const std::filesystem::path& path, const ProbTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& [key, dist] : table.rows()) {
    for (const auto& [sym, p] : dist) {
      out << key.given << '\t';
      if (table.kind() == TableKind::EtymSpelling) out << key.second << '\t';
      out << key.dialect.code() << '\t' << sym << '\t' << format_double(p) << '\n';
    }
  }
}

ProbTable read_table(const std::filesystem::path& path, TableKind kind, double alpha) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  const std::size_t columns = kind == TableKind::EtymSpelling ? 5 : 4;
  std::map<ConditionKey, Distribution> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_fields(line, '\t');
    if (f.size() != columns) throw ParseError(path.string(), line_no, "wrong column count");
    ConditionKey key;
    key.given = f[0];
    std::size_t c = 1;
    if (kind == TableKind::EtymSpelling) key.second = f[c++];
    key.dialect = DialectId{f[c++]};
    double p = 0.0;
    try {
      p = parse_double(f[c + 1]);
    } catch (const ArgumentError& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
    rows[key][f[c]] = p;
  }
  ProbTable table(kind, alpha);
  for (auto& [key, dist] : rows) table.set(key, std::move(dist));
  return table;
}

}  // namespace

void EtymologyModel::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json manifest;
  manifest["format"] = "ags-etymology-model";
  manifest["version"] = 1;
  manifest["alpha"] = tables_.ph_given_et.alpha();
  std::vector<std::string> dialects;
  for (const auto& d : dialects_) dialects.push_back(d.code());
  manifest["dialects"] = dialects;
  manifest["phonemes"] = phonemes_;
  manifest["coda_alphabet"] = coda_alphabet_;
  manifest["extra_graphemes"] = std::vector<Symbol>(alphabet_.begin() + static_cast<std::ptrdiff_t>(coda_alphabet_.size()),
                                                    alphabet_.end());
  nlohmann::ordered_json files;
  for (const auto* t : {&tables_.ph_given_et, &tables_.ph_given_or, &tables_.et_given_ph, &tables_.etym_spelling}) {
    files[std::string(table_name(t->kind()))] = table_file(t->kind());
    write_table(dir / table_file(t->kind()), *t);
  }
  manifest["tables"] = files;
  std::ofstream out(dir / kManifestName, std::ios::binary);
  if (!out) throw Error("cannot write " + (dir / kManifestName).string());
  out << manifest.dump(2) << '\n';
}

EtymologyModel EtymologyModel::load(const std::filesystem::path& dir) {
  std::ifstream in(dir / kManifestName, std::ios::binary);
  if (!in) throw Error("cannot open " + (dir / kManifestName).string());
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError((dir / kManifestName).string(), 0, e.what());
  }
  if (manifest.value("format", "") != "ags-etymology-model") throw Error("not an etymology model: " + dir.string());
  const double alpha = manifest.at("alpha").get<double>();
  Tables tables;
  tables.ph_given_et = read_table(dir / table_file(TableKind::PhGivenEt), TableKind::PhGivenEt, alpha);
  tables.ph_given_or = read_table(dir / table_file(TableKind::PhGivenOr), TableKind::PhGivenOr, alpha);
  tables.et_given_ph = read_table(dir / table_file(TableKind::EtGivenPh), TableKind::EtGivenPh, alpha);
  tables.etym_spelling = read_table(dir / table_file(TableKind::EtymSpelling), TableKind::EtymSpelling, alpha);
  std::vector<DialectId> dialects;
  for (const auto& code : manifest.at("dialects")) dialects.emplace_back(code.get<std::string>());
  return EtymologyModel(std::move(tables), manifest.at("phonemes").get<std::vector<Symbol>>(),
                        manifest.at("coda_alphabet").get<std::vector<Symbol>>(),
                        manifest.at("extra_graphemes").get<std::vector<Symbol>>(), std::move(dialects));
}

}  // namespace ags
