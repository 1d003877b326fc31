#include "ags/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <tuple>

namespace ags {

std::vector<PharaohLink> parse_pharaoh_line(std::string_view line, std::string_view source, std::size_t line_no) {
  std::vector<PharaohLink> links;
  for (const auto& tok : split_words(line)) {
    const auto dash = tok.find('-');
    auto parse_index = [&](std::string_view digits) {
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError(source, line_no, "malformed alignment link '" + tok + "'");
      }
      return static_cast<std::size_t>(std::stoull(std::string(digits)));
    };
    if (dash == std::string::npos) throw ParseError(source, line_no, "malformed alignment link '" + tok + "'");
    const std::string_view view(tok);
    links.push_back({parse_index(view.substr(0, dash)), parse_index(view.substr(dash + 1))});
  }
  return links;
}

std::string format_pharaoh_line(const std::vector<PharaohLink>& links) {
  std::string out;
  for (const auto& l : links) {
    if (!out.empty()) out += ' ';
    out += std::to_string(l.source) + "-" + std::to_string(l.target);
  }
  return out;
}

namespace {

AlignmentSet groups_from_links(const ParallelBucket& bucket, const std::map<DialectId, std::vector<PharaohLink>>& links,
                               const std::vector<DialectId>& universe) {
  const Sentence* msa = bucket.find(DialectId::anchor());
  if (!msa) throw ArgumentError("bucket '" + bucket.sentence_id + "' has no MSA anchor");

  AlignmentSet set;
  set.sentence_id = bucket.sentence_id;
  set.groups.resize(msa->tokens.size());
  for (std::size_t i = 0; i < msa->tokens.size(); ++i) {
    auto& group = set.groups[i];
    for (const auto& d : universe) group[d] = std::nullopt;
    group[DialectId::anchor()] = AlignedToken{i, msa->tokens[i].surface};
  }
  for (const auto& [dialect, dialect_links] : links) {
    const Sentence* target = bucket.find(dialect);
    for (const auto& link : dialect_links) {
      if (link.source >= msa->tokens.size() || !target || link.target >= target->tokens.size()) {
        throw ValidationError("sentence '" + bucket.sentence_id + "', dialect " + dialect.code() + ": link " +
                              std::to_string(link.source) + "-" + std::to_string(link.target) + " out of range");
      }
      auto& slot = set.groups[link.source][dialect];
      if (!slot || link.target < slot->index) slot = AlignedToken{link.target, target->tokens[link.target].surface};
    }
  }
  return set;
}

}  // namespace

AlignmentSet import_alignments(const ParallelBucket& bucket, const std::map<DialectId, std::string>& lines,
                               const std::vector<DialectId>& universe) {
  std::map<DialectId, std::vector<PharaohLink>> links;
  for (const auto& [dialect, line] : lines) {
    if (dialect == DialectId::anchor()) continue;
    links[dialect] = parse_pharaoh_line(line, "sentence " + bucket.sentence_id + " (" + dialect.code() + ")");
  }
  return groups_from_links(bucket, links, universe);
}

Eigen::MatrixXd alignment_scores(const Sentence& msa, const Sentence& dialect, const EtymologyModel& model,
                                 const AlignerParams& params) {
  const auto n = static_cast<Eigen::Index>(msa.tokens.size());
  const auto m = static_cast<Eigen::Index>(dialect.tokens.size());
  std::vector<SymbolSeq> xs;
  std::vector<SymbolSeq> ys;
  for (const auto& t : msa.tokens) xs.push_back(split_graphemes(t.surface));
  for (const auto& t : dialect.tokens) ys.push_back(split_graphemes(t.surface));

  Eigen::MatrixXd scores(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double d = normalized_distance(xs[static_cast<std::size_t>(i)], msa.dialect, ys[static_cast<std::size_t>(j)],
                                           dialect.dialect, model, params.costs);
      const double position = 1.0 - std::abs(static_cast<double>(i) / static_cast<double>(n) -
                                             static_cast<double>(j) / static_cast<double>(m));
      scores(i, j) = params.lambda * (1.0 - d) + (1.0 - params.lambda) * position;
    }
  }
  return scores;
}

std::vector<PharaohLink> greedy_links(const Eigen::MatrixXd& scores, double theta) {
  std::vector<std::tuple<double, Eigen::Index, Eigen::Index>> cells;
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    for (Eigen::Index j = 0; j < scores.cols(); ++j) {
      if (scores(i, j) >= theta) cells.emplace_back(scores(i, j), i, j);
    }
  }
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
    return std::get<2>(a) < std::get<2>(b);
  });
  std::vector<bool> row_used(static_cast<std::size_t>(scores.rows()), false);
  std::vector<bool> col_used(static_cast<std::size_t>(scores.cols()), false);
  std::vector<PharaohLink> links;
  for (const auto& [score, i, j] : cells) {
    const auto r = static_cast<std::size_t>(i);
    const auto c = static_cast<std::size_t>(j);
    if (row_used[r] || col_used[c]) continue;
    row_used[r] = col_used[c] = true;
    links.push_back({r, c});
  }
  std::sort(links.begin(), links.end());
  return links;
}

std::vector<PharaohLink> builtin_links(const Sentence& msa, const Sentence& dialect, const EtymologyModel& model,
                                       const AlignerParams& params) {
  if (msa.tokens.empty() || dialect.tokens.empty()) return {};
  return greedy_links(alignment_scores(msa, dialect, model, params), params.theta);
}

AlignmentSet builtin_align(const ParallelBucket& bucket, const EtymologyModel& model, const AlignerParams& params,
                           const std::vector<DialectId>& universe) {
  const Sentence* msa = bucket.find(DialectId::anchor());
  if (!msa) throw ArgumentError("bucket '" + bucket.sentence_id + "' has no MSA anchor");
  std::map<DialectId, std::vector<PharaohLink>> links;
  for (const auto& [dialect, sentence] : bucket.sentences) {
    if (dialect == DialectId::anchor()) continue;
    links[dialect] = builtin_links(*msa, sentence, model, params);
  }
  return groups_from_links(bucket, links, universe);
}

// ---------------------------------------------------------------------------

AlignmentIndex aggregate(const std::vector<AlignmentSet>& corpus_alignments) {
  AlignmentIndex index;
  for (const auto& set : corpus_alignments) {
    std::map<WordKey, std::map<DialectId, std::set<std::string>>> linked;
    for (const auto& group : set.groups) {
      for (const auto& [d, member] : group) {
        if (!member) continue;
        auto& entry = linked[{member->surface, d}];
        for (const auto& [e, other] : group) {
          if (e == d) continue;
          auto& targets = entry[e];
          if (other) targets.insert(other->surface);
        }
      }
    }
    for (const auto& [key, by_dialect] : linked) {
      auto& agg = index[key];
      agg.key = key;
      for (const auto& [e, surfaces] : by_dialect) {
        auto& bag = agg.counterparts[e];
        if (surfaces.empty()) {
          ++bag[std::nullopt];
        } else {
          for (const auto& s : surfaces) ++bag[s];
        }
      }
    }
  }
  return index;
}

void merge_into(AlignmentIndex& into, const AlignmentIndex& from) {
  for (const auto& [key, agg] : from) {
    auto& target = into[key];
    target.key = key;
    for (const auto& [e, bag] : agg.counterparts) {
      for (const auto& [cp, n] : bag) target.counterparts[e][cp] += n;
    }
  }
}

void write_aggregated_tsv(std::ostream& out, const AlignmentIndex& index) {
  for (const auto& [key, agg] : index) {
    for (const auto& [e, bag] : agg.counterparts) {
      for (const auto& [cp, n] : bag) {
        out << key.surface << '\t' << key.dialect.code() << '\t' << e.code() << '\t' << (cp ? *cp : "NONE") << '\t' << n
            << '\n';
      }
    }
  }
}

void write_alignment_files(const std::filesystem::path& dir, const ParallelCorpus& corpus,
                           const std::map<DialectId, std::vector<std::vector<PharaohLink>>>& links) {
  std::filesystem::create_directories(dir);
  std::size_t alignable = 0;
  for (const auto& b : corpus.buckets) alignable += b.alignable() ? 1 : 0;
  for (const auto& d : corpus.dialects) {
    if (d == DialectId::anchor()) continue;
    const auto path = dir / (d.code() + ".align");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    const auto it = links.find(d);
    for (std::size_t k = 0; k < alignable; ++k) {
      if (it != links.end() && k < it->second.size()) out << format_pharaoh_line(it->second[k]);
      out << '\n';
    }
  }
}

std::vector<AlignmentSet> read_alignment_files(const std::filesystem::path& dir, const ParallelCorpus& corpus) {
  std::map<DialectId, std::vector<std::string>> lines;
  for (const auto& d : corpus.dialects) {
    if (d == DialectId::anchor()) continue;
    const auto path = dir / (d.code() + ".align");
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      warn_once("no alignment file for dialect " + d.code() + " in " + dir.string() + "; treating it as unaligned");
      continue;
    }
    auto& v = lines[d];
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      v.push_back(line);
    }
  }

  std::vector<AlignmentSet> sets;
  std::size_t k = 0;
  for (const auto& bucket : corpus.buckets) {
    if (!bucket.alignable()) continue;
    std::map<DialectId, std::vector<PharaohLink>> links;
    for (const auto& [d, v] : lines) {
      const auto path = (dir / (d.code() + ".align")).string();
      if (k >= v.size()) throw ValidationError(path + ": fewer lines than alignable sentences");
      links[d] = parse_pharaoh_line(v[k], path, k + 1);
    }
    sets.push_back(groups_from_links(bucket, links, corpus.dialects));
    ++k;
  }
  for (const auto& [d, v] : lines) {
    const bool trailing_only = std::all_of(v.begin() + static_cast<std::ptrdiff_t>(std::min(k, v.size())), v.end(),
                                           [](const std::string& s) { return s.empty(); });
    if (!trailing_only) throw ValidationError((dir / (d.code() + ".align")).string() + ": more lines than alignable sentences");
  }
  return sets;
}

}  // namespace ags
