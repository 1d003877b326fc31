#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"

#include "ags/alignment.hpp"
#include "oracles.hpp"

using namespace ags;

namespace {

const std::filesystem::path kData = AGS_TEST_DATA;
const DialectId kMSA("MSA");
const DialectId kBEI("BEI");
const DialectId kCAI("CAI");

ParallelCorpus corpus_of(const std::string& text) {
  std::istringstream in(text);
  return parse_parallel_corpus(in, "corpus");
}

std::optional<std::string> member(const AlignmentGroup& g, const DialectId& d) {
  const auto& slot = g.at(d);
  if (!slot) return std::nullopt;
  return slot->surface;
}

std::map<std::tuple<std::string, std::string, std::string, std::string>, std::int64_t> flatten(const AlignmentIndex& index) {
  std::map<std::tuple<std::string, std::string, std::string, std::string>, std::int64_t> out;
  for (const auto& [key, agg] : index) {
    for (const auto& [e, bag] : agg.counterparts) {
      for (const auto& [cp, n] : bag) out[{key.surface, key.dialect.code(), e.code(), cp.value_or("NONE")}] = n;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("Pharaoh lines") {
  const auto links = parse_pharaoh_line("0-0 2-1  1-3");
  REQUIRE(links.size() == 3);
  CHECK(links[1] == PharaohLink{2, 1});
  CHECK(format_pharaoh_line(links) == "0-0 2-1 1-3");
  CHECK(parse_pharaoh_line("").empty());
  CHECK_THROWS_AS(parse_pharaoh_line("0-"), ParseError);
  CHECK_THROWS_AS(parse_pharaoh_line("a-1"), ParseError);
  CHECK_THROWS_AS(parse_pharaoh_line("01"), ParseError);
}

TEST_CASE("import joins dialect links through the MSA token") {
  const auto c = corpus_of("s1\tMSA\tأريد\ns1\tBEI\tبدي\ns1\tCAI\tأنا عايز\n");
  const auto set = import_alignments(c.buckets[0], {{kBEI, "0-0"}, {kCAI, "0-1"}}, c.dialects);
  REQUIRE(set.groups.size() == 1);
  CHECK(member(set.groups[0], kMSA) == "أريد");
  CHECK(member(set.groups[0], kBEI) == "بدي");
  CHECK(set.groups[0].at(kCAI)->index == 1);
}

TEST_CASE("six-way group from one MSA word") {
  const auto c = corpus_of(
      "s\tMSA\tإنها\ns\tCAI\tهو\ns\tBEI\tهوي\ns\tDOH\tموجود\ns\tRAB\tكاين\ns\tTUN\tموجود\n");
  std::map<DialectId, std::string> lines;
  for (const auto& d : c.dialects) lines[d] = "0-0";
  const auto set = import_alignments(c.buckets[0], lines, c.dialects);
  REQUIRE(set.groups.size() == 1);
  CHECK(set.groups[0].size() == 6);
  for (const auto& [d, slot] : set.groups[0]) CHECK(slot.has_value());
}

TEST_CASE("import validation") {
  const auto c = corpus_of("s9\tMSA\tا ب ت ث\ns9\tBEI\tا\n");
  try {
    import_alignments(c.buckets[0], {{kBEI, "9-0"}}, c.dialects);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("s9") != std::string::npos);
  }
  CHECK_THROWS_AS(import_alignments(c.buckets[0], {{kBEI, "0-5"}}, c.dialects), ValidationError);
  CHECK_THROWS_AS(import_alignments(c.buckets[0], {{kBEI, "0_0"}}, c.dialects), ParseError);
  // a linked dialect with no sentence in the bucket
  CHECK_THROWS_AS(import_alignments(c.buckets[0], {{kCAI, "0-0"}}, {kBEI, kCAI, kMSA}), ValidationError);
}

TEST_CASE("one dialect token may serve several MSA tokens") {
  const auto c = corpus_of("s\tMSA\tفي اخر\ns\tBEI\tبأخر\n");
  const auto set = import_alignments(c.buckets[0], {{kBEI, "0-0 1-0"}}, c.dialects);
  CHECK(member(set.groups[0], kBEI) == "بأخر");
  CHECK(member(set.groups[1], kBEI) == "بأخر");

  // two dialect tokens on one MSA token keep the earlier one
  const auto d = corpus_of("s\tMSA\tاخر\ns\tBEI\tب اخر\n");
  const auto e = import_alignments(d.buckets[0], {{kBEI, "0-1 0-0"}}, d.dialects);
  CHECK(e.groups[0].at(kBEI)->index == 0);
}

TEST_CASE("built-in aligner") {
  const std::vector<Symbol> alphabet = {"ا", "ب", "ت", "ث", "ج", "ح", "خ", "د", "ر", "ف", "ي", "أ"};
  const auto id = oracle::identity_model(alphabet);

  SUBCASE("identical sentences align to the identity") {
    const auto c = corpus_of("s\tMSA\tاب تث جح خد\ns\tBEI\tاب تث جح خد\n");
    for (const double lambda : {0.7, 1.0}) {
      AlignerParams p;
      p.lambda = lambda;
      const auto set = builtin_align(c.buckets[0], id, p, c.dialects);
      REQUIRE(set.groups.size() == 4);
      for (std::size_t i = 0; i < 4; ++i) CHECK(set.groups[i].at(kBEI)->index == i);
    }
  }
  SUBCASE("one-to-one keeps the best single link") {
    const auto c = corpus_of("s\tMSA\tفي اخر\ns\tBEI\tبأخر\n");
    const auto links = builtin_links(*c.buckets[0].find(kMSA), *c.buckets[0].find(kBEI), id, AlignerParams{});
    REQUIRE(links.size() == 1);
    CHECK(links[0] == PharaohLink{1, 0});
  }
  SUBCASE("empty dialect sentence leaves every slot empty") {
    const auto c = corpus_of("s\tMSA\tاب تث\ns\tBEI\t\n");
    const auto set = builtin_align(c.buckets[0], id, AlignerParams{}, c.dialects);
    for (const auto& g : set.groups) CHECK_FALSE(g.at(kBEI).has_value());
  }
  SUBCASE("bucket without MSA") {
    const auto c = corpus_of("s\tBEI\tاب\n");
    CHECK_THROWS_AS(builtin_align(c.buckets[0], id, AlignerParams{}, c.dialects), ArgumentError);
  }
}

TEST_CASE("greedy link extraction") {
  Eigen::MatrixXd s(2, 2);
  s << 0.9, 0.9, 0.9, 0.4;
  CHECK(greedy_links(s, 0.5) == std::vector<PharaohLink>{{0, 0}});
  s << 0.9, 0.8, 0.85, 0.6;
  CHECK(greedy_links(s, 0.5) == std::vector<PharaohLink>{{0, 0}, {1, 1}});
  CHECK(greedy_links(s, 0.95).empty());
}

TEST_CASE("aggregation of the أردت fixture") {
  const auto c = load_parallel_corpus(kData / "ardat" / "corpus.tsv");
  const auto sets = read_alignment_files(kData / "ardat" / "align", c);
  CHECK(sets.size() == 7);
  const auto index = aggregate(sets);
  const auto& agg = index.at({"أردت", kMSA});

  std::map<std::pair<std::string, std::string>, std::int64_t> expected;
  std::ifstream in(kData / "ardat" / "expected.tsv");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_fields(line, '\t');
    expected[{f[0], f[1]}] = std::stoll(f[2]);
  }
  std::map<std::pair<std::string, std::string>, std::int64_t> got;
  for (const auto& [e, bag] : agg.counterparts) {
    for (const auto& [cp, n] : bag) got[{e.code(), cp.value_or("NONE")}] = n;
  }
  CHECK(got == expected);
  CHECK(agg.counterparts.at(kBEI).at(std::string("بدك")) == 4);

  std::ostringstream dump;
  write_aggregated_tsv(dump, index);
  CHECK(dump.str().find("أردت\tMSA\tTUN\tNONE\t1\n") != std::string::npos);
}

TEST_CASE("aggregation basics") {
  const auto c = corpus_of("s1\tMSA\tا\ns1\tBEI\tب\ns1\tCAI\tت\ns2\tMSA\tا\ns2\tBEI\tب\n");
  std::vector<AlignmentSet> sets;
  sets.push_back(import_alignments(c.buckets[0], {{kBEI, "0-0"}, {kCAI, "0-0"}}, c.dialects));
  const auto one = aggregate(sets);
  CHECK(one.at({"ب", kBEI}).counterparts.at(kMSA).at(std::string("ا")) == 1);
  CHECK(one.at({"ب", kBEI}).counterparts.at(kCAI).at(std::string("ت")) == 1);

  sets.push_back(import_alignments(c.buckets[1], {{kBEI, "0-0"}}, c.dialects));
  const auto two = aggregate(sets);
  CHECK(two.at({"ا", kMSA}).counterparts.at(kBEI).at(std::string("ب")) == 2);
  CHECK(two.at({"ا", kMSA}).counterparts.at(kCAI).at(std::nullopt) == 1);
  CHECK(two.at({"ا", kMSA}).counterparts.at(kCAI).at(std::string("ت")) == 1);

  // an MSA word nobody links to still gets all-NONE entries
  const auto lone = aggregate({import_alignments(c.buckets[1], {{kBEI, ""}}, c.dialects)});
  const auto& a = lone.at({"ا", kMSA});
  CHECK(a.counterparts.at(kBEI).at(std::nullopt) == 1);
  CHECK(a.counterparts.at(kCAI).at(std::nullopt) == 1);
}

TEST_CASE("mutual alignment symmetry and order independence") {
  std::mt19937_64 rng(17);
  const std::vector<Symbol> alphabet = {"ا", "ب", "ت"};
  const std::vector<DialectId> ds = {kBEI, kCAI, kMSA};
  std::vector<AlignmentSet> sets;
  for (int b = 0; b < 60; ++b) {
    std::string text;
    const std::string id = "s" + std::to_string(b);
    std::map<DialectId, std::string> lines;
    std::size_t n_msa = 0;
    for (const auto& d : ds) {
      std::uniform_int_distribution<int> len(1, 4);
      const int n = len(rng);
      std::string s;
      for (int i = 0; i < n; ++i) s += (i ? " " : "") + join(oracle::random_word(rng, alphabet, 1, 2));
      text += id + "\t" + d.code() + "\t" + s + "\n";
      if (d == kMSA) n_msa = static_cast<std::size_t>(n);
    }
    const auto c = corpus_of(text);
    for (const auto& d : {kBEI, kCAI}) {
      const auto m = c.buckets[0].find(d)->tokens.size();
      std::string line;
      for (std::size_t i = 0; i < n_msa; ++i) {
        if (rng() % 3 == 0) continue;
        line += (line.empty() ? "" : " ") + std::to_string(i) + "-" + std::to_string(rng() % m);
      }
      lines[d] = line;
    }
    sets.push_back(import_alignments(c.buckets[0], lines, c.dialects));
  }

  const auto index = aggregate(sets);
  for (const auto& [key, agg] : index) {
    for (const auto& [e, bag] : agg.counterparts) {
      for (const auto& [cp, n] : bag) {
        if (!cp) continue;
        const auto& back = index.at({*cp, e}).counterparts.at(key.dialect);
        CHECK(back.at(key.surface) == n);
      }
    }
  }

  auto shuffled = sets;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  CHECK(flatten(aggregate(shuffled)) == flatten(index));

  AlignmentIndex merged = aggregate({sets.begin(), sets.begin() + 30});
  merge_into(merged, aggregate({sets.begin() + 30, sets.end()}));
  CHECK(flatten(merged) == flatten(index));
}

TEST_CASE("alignment files") {
  const auto dir = std::filesystem::temp_directory_path() / "ags_test_align_io";
  std::filesystem::remove_all(dir);
  const auto c = corpus_of("s1\tMSA\tا ب\ns1\tBEI\tب ا\nx\tBEI\tت\ns2\tMSA\tت\ns2\tCAI\tت\n");
  std::map<DialectId, std::vector<std::vector<PharaohLink>>> links;
  links[kBEI] = {{{0, 1}, {1, 0}}, {}};
  links[kCAI] = {{}, {{0, 0}}};
  write_alignment_files(dir, c, links);
  const auto sets = read_alignment_files(dir, c);
  REQUIRE(sets.size() == 2);
  CHECK(sets[0].groups[0].at(kBEI)->surface == "ا");
  CHECK(sets[1].groups[0].at(kCAI)->surface == "ت");
  CHECK_FALSE(sets[1].groups[0].at(kBEI).has_value());

  {
    std::ofstream short_file(dir / "BEI.align");
    short_file << "0-1\n";
  }
  CHECK_THROWS_AS(read_alignment_files(dir, c), ValidationError);
  {
    std::ofstream long_file(dir / "BEI.align");
    long_file << "0-1\n\n0-0\n";
  }
  CHECK_THROWS_AS(read_alignment_files(dir, c), ValidationError);

  std::filesystem::remove(dir / "BEI.align");
  const auto partial = read_alignment_files(dir, c);
  CHECK_FALSE(partial[0].groups[0].at(kBEI).has_value());
  std::filesystem::remove_all(dir);
}
