#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"

#include "ags/etymology.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace ags;

namespace {

const std::filesystem::path kData = AGS_TEST_DATA;
const DialectId kBEI("BEI");
const DialectId kDOH("DOH");
const DialectId kCAI("CAI");

const CaphiInventory& inventory() {
  static const CaphiInventory inv = load_caphi_table(kData / "caphi.tsv");
  return inv;
}

std::vector<LexiconEntry> jld() { return load_lexicon(kData / "jld_lexicon.tsv", inventory()); }

std::vector<LexiconEntry> lexicon_from(const std::string& text) {
  std::istringstream in(text);
  return parse_lexicon(in, "lex", inventory());
}

EstimationSupport support_for(const std::vector<LexiconEntry>& lex, double alpha) {
  return {inventory().phonemes(), coda_alphabet(lex), alpha};
}

double row_sum(const Distribution& d) {
  double s = 0.0;
  for (const auto& [k, v] : d) s += v;
  return s;
}

// P(/2/|أ,BEI)=1, never an etymological spelling, and /2/ comes from ق 80% of the time.
EtymologyModel toy_model() {
  EtymologyModel::Tables t;
  t.ph_given_or.set({"أ", {}, kBEI}, {{"2", 1.0}});
  t.ph_given_or.set({"ق", {}, kDOH}, {{"g", 1.0}});
  t.etym_spelling.set_etym("أ", "2", kBEI, 0.0);
  t.etym_spelling.set_etym("ق", "g", kDOH, 1.0);
  t.et_given_ph.set({"2", {}, kBEI}, {{"ق", 0.8}, {"أ", 0.2}});
  t.et_given_ph.set({"g", {}, kDOH}, {{"ق", 1.0}});
  return EtymologyModel(std::move(t), {"2", "g"}, {"أ", "ق"});
}

}  // namespace

TEST_CASE("phoneme given etymology") {
  const auto lex = jld();
  const auto counts = collect_g2p_counts(lex, inventory());
  const auto t0 = estimate_ph_given_et(counts, support_for(lex, 0.0));
  CHECK(t0.lookup("ج", kCAI)->at("g") == 1.0);
  const auto* pooled = t0.lookup("ج", DialectId::pooled());
  REQUIRE(pooled);
  CHECK(pooled->at("j") == doctest::Approx(0.4));
  CHECK(pooled->at("dj") == doctest::Approx(0.2));
  CHECK_FALSE(pooled->contains(std::string(kGap)));

  // a dialect with no ج row falls back to the pooled row
  CHECK(t0.lookup("ج", DialectId("TUN")) == pooled);

  const auto t1 = estimate_ph_given_et(counts, support_for(lex, 0.1));
  const auto& cai = *t1.lookup("ج", kCAI);
  const double n_ph = static_cast<double>(inventory().phonemes().size());
  CHECK(cai.at("g") == doctest::Approx((1.0 + 0.1) / (1.0 + 0.1 * n_ph)));
  CHECK(cai.at("j") == doctest::Approx(0.1 / (1.0 + 0.1 * n_ph)));
  CHECK(row_sum(cai) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cai.size() == inventory().phonemes().size());

  const auto single = lexicon_from("c1\tMSA\tب\tb\n");
  const auto st = estimate_ph_given_et(collect_g2p_counts(single, inventory()), support_for(single, 0.0));
  CHECK(*st.lookup("ب", DialectId("MSA")) == Distribution{{"b", 1.0}});

  CHECK_THROWS_WITH(estimate_ph_given_et(G2PCountTable{}, support_for(lex, 0.1)), doctest::Contains("no training data"));
}

TEST_CASE("phoneme given orthography") {
  const auto lex = lexicon_from("c1\tBEI\tقلب\tq a l b\nc2\tDOH\tقلب\tg a l b\n");
  const auto counts = collect_g2p_counts(lex, inventory());

  SUBCASE("phonetic raw spellings add counts") {
    const std::vector<RawSpelling> raw = {{kBEI, split_graphemes("ألب"), split_graphemes("قلب"), split_words("2 a l b")}};
    const auto rc = collect_raw_counts(raw, inventory());
    CHECK(rc.count(kBEI, "أ", "2") == 1);
    const auto t = estimate_ph_given_or(counts, rc, support_for(lex, 0.0));
    CHECK(t.lookup("أ", kBEI)->at("2") == 1.0);
    CHECK(t.lookup("ق", kBEI)->at("q") == 1.0);
  }
  SUBCASE("without raw data the table is the lexicon table") {
    const auto a = estimate_ph_given_or(counts, G2PCountTable{}, support_for(lex, 0.1));
    const auto b = estimate_ph_given_et(counts, support_for(lex, 0.1));
    CHECK(a.rows() == b.rows());
  }
  SUBCASE("two observations split evenly") {
    G2PCountTable raw;
    raw.add(kBEI, "أ", "2");
    raw.add(kBEI, "أ", "a");
    const auto t = estimate_ph_given_or(G2PCountTable{}, raw, support_for(lex, 0.0));
    CHECK(t.lookup("أ", kBEI)->at("2") == 0.5);
    CHECK(t.lookup("أ", kBEI)->at("a") == 0.5);
  }
  CHECK_THROWS_WITH(estimate_ph_given_or(G2PCountTable{}, G2PCountTable{}, support_for(lex, 0.1)),
                    doctest::Contains("no training data"));
}

TEST_CASE("etymological spelling heuristic on the fixture") {
  const auto est = detect_etymological_spellings(jld(), inventory(), 0.0);
  using K = std::pair<Symbol, Symbol>;
  CHECK(est.tallies.at(K{"ج", "dj"}) == EtymTally{1, 1});
  CHECK(est.tallies.at(K{"ج", "g"}) == EtymTally{1, 1});
  CHECK(est.tallies.at(K{"ج", "j"}) == EtymTally{2, 2});
  CHECK(est.tallies.at(K{"ج", "y"}) == EtymTally{1, 1});
  CHECK(est.tallies.at(K{"ل", "l"}) == EtymTally{5, 0});
  CHECK(est.tallies.at(K{"د", "d"}) == EtymTally{5, 0});

  CHECK(*est.table.etym_probability("ل", "l", kCAI) == 0.0);
  CHECK(*est.table.etym_probability("ج", "g", kCAI) == 1.0);
  CHECK(*est.table.etym_probability("ج", "j", DialectId::pooled()) == 1.0);

  const auto smoothed = detect_etymological_spellings(jld(), inventory(), 0.1);
  const double p = *smoothed.table.etym_probability("ل", "l", DialectId::pooled());
  CHECK(p == doctest::Approx(0.1 / 5.2));

  CHECK(detect_etymological_spellings({}, inventory(), 0.1).table.rows().empty());
}

TEST_CASE("heuristic never lowers a flag probability when a mixed group is added") {
  const auto base = lexicon_from(
      "a\tBEI\tقلب\tq a l b\n"
      "a\tDOH\tقلب\tq a l b\n"
      "b\tBEI\tقرد\tq i r d\n");
  auto grown = base;
  for (const auto& e : lexicon_from("c\tBEI\tقمر\t2 a m a r\nc\tDOH\tقمر\tq a m a r\n")) grown.push_back(e);

  const auto before = detect_etymological_spellings(base, inventory(), 0.0);
  const auto after = detect_etymological_spellings(grown, inventory(), 0.0);
  for (const auto& [key, dist] : before.table.rows()) {
    const auto p_after = after.table.etym_probability(key.given, key.second, key.dialect);
    REQUIRE(p_after);
    CHECK(*p_after >= dist.at(std::string(kEtymOutcome)));
  }
  CHECK(*after.table.etym_probability("ق", "q", DialectId::pooled()) >
        *before.table.etym_probability("ق", "q", DialectId::pooled()));
}

TEST_CASE("etymology given phoneme") {
  const auto lex = jld();
  const auto counts = collect_g2p_counts(lex, inventory());
  const auto t = estimate_et_given_ph(counts, support_for(lex, 0.0));
  CHECK(t.lookup("j", DialectId::pooled())->at("ج") == 1.0);
  CHECK(t.lookup("l", DialectId::pooled())->at("ل") == 1.0);
  // /j/ never occurs in CAI; the pooled row answers
  CHECK(t.lookup("j", kCAI) == t.lookup("j", DialectId::pooled()));

  const auto s = estimate_et_given_ph(counts, support_for(lex, 1.0));
  const auto& row = *s.lookup("l", DialectId::pooled());
  CHECK(row.size() == 3);
  CHECK(row.at("ل") == doctest::Approx(6.0 / 8.0));
  CHECK_THROWS(estimate_et_given_ph(G2PCountTable{}, support_for(lex, 0.1)));
}

TEST_CASE("posterior over etymologies") {
  const auto m = toy_model();
  const auto post = m.posterior_distribution("أ", kBEI);
  CHECK(post.at("ق") == doctest::Approx(0.8));
  CHECK(post.at("أ") == doctest::Approx(0.2));

  SUBCASE("indicator branch only") {
    EtymologyModel::Tables t;
    t.ph_given_or.set({"أ", {}, kBEI}, {{"2", 0.3}, {"a", 0.7}});
    t.etym_spelling.set_etym("أ", "2", kBEI, 1.0);
    t.etym_spelling.set_etym("أ", "a", kBEI, 1.0);
    t.et_given_ph.set({"2", {}, kBEI}, {{"ق", 1.0}});
    const EtymologyModel im(std::move(t), {"2", "a"}, {"أ", "ق"});
    CHECK(im.posterior_distribution("أ", kBEI) == Distribution{{"أ", 1.0}});
  }
  SUBCASE("phoneme branch only") {
    EtymologyModel::Tables t;
    t.ph_given_or.set({"أ", {}, kBEI}, {{"2", 1.0}});
    t.etym_spelling.set_etym("أ", "2", kBEI, 0.0);
    t.et_given_ph.set({"2", {}, kBEI}, {{"ق", 1.0}});
    const EtymologyModel pm(std::move(t), {"2"}, {"أ", "ق"});
    CHECK(pm.posterior_distribution("أ", kBEI) == Distribution{{"ق", 1.0}});
  }
  SUBCASE("unknown grapheme is uniform over the CODA alphabet") {
    const auto before = warning_count();
    const auto u = m.posterior_distribution("ز", kBEI);
    CHECK(u.at("أ") == 0.5);
    CHECK(u.at("ق") == 0.5);
    CHECK(warning_count() == before + 1);
  }
}

TEST_CASE("substitution cost") {
  const auto m = toy_model();
  const auto sc = m.substitution_cost({"أ", kBEI}, {"ق", kDOH});
  CHECK(sc.cost == doctest::Approx(0.2));
  REQUIRE(sc.best_etymology);
  CHECK(sc.best_etymology->x_et == "ق");
  CHECK(sc.best_etymology->y_et == "ق");
  CHECK(sc.best_etymology->x_ph == "2");
  CHECK(sc.best_etymology->y_ph == "g");
  CHECK(m.cost("ق", kDOH, "أ", kBEI) == m.cost("أ", kBEI, "ق", kDOH));

  const auto id = oracle::identity_model({"ا", "ب"});
  CHECK(id.cost("ا", kBEI, "ا", kDOH) == 0.0);
  CHECK(id.cost("ا", kBEI, "ب", kDOH) == 1.0);
  CHECK_FALSE(id.substitution_cost({"ا", kBEI}, {"ب", kBEI}).best_etymology);

  const auto cm = m.cost_matrix(split_graphemes("أق"), kBEI, split_graphemes("ق"), kDOH);
  CHECK(cm.rows() == 2);
  CHECK(cm.cols() == 1);
  CHECK(cm(0, 0) == doctest::Approx(0.2));
}

TEST_CASE("self cost equals one minus the squared posterior mass") {
  std::mt19937_64 rng(11);
  const std::vector<Symbol> gs = {"ا", "ب", "ت", "ث"};
  const std::vector<DialectId> ds = {kBEI, kCAI};
  const auto m = oracle::random_model(rng, gs, {"a", "b", "t"}, ds);
  for (const auto& g : gs) {
    for (const auto& d : ds) {
      const auto p = m.posterior(g, d);
      CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(m.cost(g, d, g, d) == doctest::Approx(1.0 - p.squaredNorm()).epsilon(1e-12));
    }
  }
}

TEST_CASE("injective spellings give point-mass posteriors") {
  const auto lex = lexicon_from("a\tBEI\tبلد\tb a l a d\nb\tCAI\tدرب\td a r a b\nc\tCAI\tلبن\tl a b a n\n");
  ModelOptions opts;
  opts.alpha = 0.0;
  const auto m = EtymologyModel::build(lex, inventory(), {}, opts);
  for (const auto& g : m.coda_alphabet()) {
    for (const auto& d : {kBEI, kCAI}) {
      const auto post = m.posterior_distribution(g, d);
      CHECK(post.at(g) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("estimated rows are normalized for every alpha") {
  const auto dir = std::filesystem::temp_directory_path() / "ags_test_etym_syn";
  synthetic::Options so;
  so.buckets = 10;
  const auto files = synthetic::generate(dir, kData / "caphi.tsv", so);
  const auto lex = load_lexicon(files.lexicon, inventory());
  const auto raw = load_raw_spellings(files.raw, lex, inventory());
  for (const double alpha : {0.0, 0.1, 1.0}) {
    CAPTURE(alpha);
    ModelOptions opts;
    opts.alpha = alpha;
    const auto m = EtymologyModel::build(lex, inventory(), raw, opts);
    for (const auto* t : {&m.tables().ph_given_et, &m.tables().ph_given_or, &m.tables().et_given_ph}) {
      for (const auto& [key, dist] : t->rows()) {
        CHECK(std::abs(row_sum(dist) - 1.0) <= 1e-9);
        for (const auto& [s, p] : dist) CHECK((p >= 0.0 && p <= 1.0));
      }
    }
    for (const auto& [key, dist] : m.tables().etym_spelling.rows()) {
      const double p = dist.at(std::string(kEtymOutcome));
      CHECK((p >= 0.0 && p <= 1.0));
    }
    for (const auto& g : m.alphabet()) {
      for (const auto& d : m.dialects()) CHECK(std::abs(m.posterior(g, d).sum() - 1.0) <= 1e-9);
    }
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("model files reload bit-exactly") {
  const auto dir = std::filesystem::temp_directory_path() / "ags_test_model_io";
  std::filesystem::remove_all(dir);
  const std::vector<RawSpelling> raw = {{kBEI, split_graphemes("ألد"), split_graphemes("جلد"), split_words("2 i l d")}};
  const auto m = EtymologyModel::build(jld(), inventory(), raw);
  m.save(dir);
  for (const char* f : {"manifest.json", "ph_given_et.tsv", "ph_given_or.tsv", "et_given_ph.tsv", "etym_spelling.tsv"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
  const auto back = EtymologyModel::load(dir);
  CHECK(back == m);
  CHECK(back.alphabet() == m.alphabet());
  for (const auto& g : m.alphabet()) {
    for (const auto& d : m.dialects()) CHECK(back.posterior(g, d) == m.posterior(g, d));
  }
  CHECK(back.cost("أ", kBEI, "ج", kCAI) == m.cost("أ", kBEI, "ج", kCAI));
  std::filesystem::remove_all(dir);
  CHECK_THROWS(EtymologyModel::load(dir));
}
