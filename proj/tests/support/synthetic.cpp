#include "synthetic.hpp"

#include <fstream>
#include <map>
#include <random>
#include <stdexcept>

namespace ags::synthetic {

namespace {

struct Letter {
  const char* grapheme;
  const char* phoneme;
};

// Graphemes with their MSA realization.
const std::vector<Letter>& letters() {
  static const std::vector<Letter> v = {
      {"ب", "b"}, {"ت", "t"}, {"د", "d"}, {"ر", "r"},  {"س", "s"}, {"ش", "sh"},
      {"ف", "f"}, {"ك", "k"}, {"ل", "l"}, {"م", "m"},  {"ن", "n"}, {"ه", "h"},
      {"و", "w"}, {"ي", "y"}, {"ح", "H"}, {"ع", "3"},  {"ق", "q"}, {"ج", "j"},
  };
  return v;
}

const std::map<std::string, std::map<std::string, std::string>>& shifts() {
  // dialect -> grapheme -> phoneme, where it differs from MSA
  static const std::map<std::string, std::map<std::string, std::string>> v = {
      {"BEI", {{"ق", "2"}}},
      {"CAI", {{"ق", "2"}, {"ج", "g"}}},
      {"DOH", {{"ق", "g"}, {"ج", "y"}}},
  };
  return v;
}

const std::map<std::string, std::map<std::string, std::string>>& raw_spellings() {
  // dialect -> CODA grapheme -> phonetic spelling
  static const std::map<std::string, std::map<std::string, std::string>> v = {
      {"BEI", {{"ق", "أ"}}},
      {"CAI", {{"ق", "أ"}}},
      {"DOH", {{"ق", "ك"}, {"ج", "ي"}}},
  };
  return v;
}

std::string vowel_for(const std::string& dialect) {
  if (dialect == "MSA") return "a";
  if (dialect == "CAI") return "e";
  return "i";
}

using Word = std::vector<std::string>;

std::string join(const Word& w) {
  std::string s;
  for (const auto& g : w) s += g;
  return s;
}

std::string caphi_of(const Word& w, const std::string& dialect) {
  const auto shift = shifts().find(dialect);
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::string ph;
    for (const auto& l : letters()) {
      if (w[i] == l.grapheme) ph = l.phoneme;
    }
    if (shift != shifts().end()) {
      if (const auto it = shift->second.find(w[i]); it != shift->second.end()) ph = it->second;
    }
    if (!out.empty()) out += ' ';
    out += ph;
    if (i + 1 < w.size()) out += ' ' + vowel_for(dialect);
  }
  return out;
}

std::string raw_of(const Word& w, const std::string& dialect) {
  const auto table = raw_spellings().find(dialect);
  if (table == raw_spellings().end()) return {};
  std::string out;
  bool changed = false;
  for (const auto& g : w) {
    if (const auto it = table->second.find(g); it != table->second.end()) {
      out += it->second;
      changed = true;
    } else {
      out += g;
    }
  }
  return changed ? out : std::string{};
}

}  // namespace

const std::vector<std::string>& dialect_codes() {
  static const std::vector<std::string> v = {"MSA", "BEI", "CAI", "DOH", "RAB", "TUN"};
  return v;
}

Files generate(const std::filesystem::path& dir, const std::filesystem::path& caphi_table, const Options& options) {
  std::filesystem::create_directories(dir);
  Files files{dir / "caphi.tsv", dir / "lexicon.tsv", dir / "raw.tsv", dir / "corpus.tsv"};
  std::filesystem::copy_file(caphi_table, files.caphi, std::filesystem::copy_options::overwrite_existing);

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> letter(0, letters().size() - 1);
  std::uniform_int_distribution<int> word_len(3, 5);

  auto random_word = [&] {
    Word w(static_cast<std::size_t>(word_len(rng)));
    for (auto& g : w) g = letters()[letter(rng)].grapheme;
    return w;
  };

  // forms[concept][dialect]
  std::vector<std::map<std::string, Word>> forms(options.concepts);
  for (auto& concept_forms : forms) {
    const Word msa = random_word();
    const double generality = unit(rng);
    concept_forms["MSA"] = msa;
    for (const auto& d : dialect_codes()) {
      if (d == "MSA") continue;
      if (unit(rng) < generality) {
        Word w = msa;
        if (unit(rng) < 0.2) w.insert(w.begin(), "ب");
        if (w.size() > 3 && unit(rng) < 0.2) w.pop_back();
        concept_forms[d] = w;
      } else {
        concept_forms[d] = random_word();
      }
    }
  }

  {
    std::ofstream lex(files.lexicon, std::ios::binary);
    std::ofstream raw(files.raw, std::ios::binary);
    for (std::size_t c = 0; c < forms.size(); ++c) {
      for (const auto& [d, w] : forms[c]) {
        lex << "c" << c << '\t' << d << '\t' << join(w) << '\t' << caphi_of(w, d) << '\n';
        if (const auto r = raw_of(w, d); !r.empty()) raw << d << '\t' << r << '\t' << join(w) << '\n';
      }
    }
  }

  std::uniform_int_distribution<std::size_t> pick_concept(0, options.concepts - 1);
  std::uniform_int_distribution<int> sentence_len(6, 10);
  std::ofstream corpus(files.corpus, std::ios::binary);
  for (std::size_t b = 0; b < options.buckets; ++b) {
    std::vector<std::size_t> concepts(static_cast<std::size_t>(sentence_len(rng)));
    for (auto& c : concepts) c = pick_concept(rng);
    const std::string id = "syn" + std::to_string(b + 1);
    for (const auto& d : dialect_codes()) {
      std::string text;
      for (std::size_t i = 0; i < concepts.size(); ++i) {
        if (d != "MSA" && unit(rng) < 0.3 && !(i + 1 == concepts.size() && text.empty())) continue;
        const Word& w = forms[concepts[i]].at(d);
        std::string surface = join(w);
        if (const auto r = raw_of(w, d); !r.empty() && unit(rng) < 0.4) surface = r;
        if (!text.empty()) text += ' ';
        text += surface;
      }
      if (unit(rng) < 0.3) text += '.';
      corpus << id << '\t' << d << '\t' << text << '\n';
    }
  }
  if (!corpus) throw std::runtime_error("cannot write " + files.corpus.string());
  return files;
}

}  // namespace ags::synthetic
