#pragma once

// Deterministic six-dialect corpus with a matching lexicon and raw spellings.
// MSA sentences are longer than the dialect ones; each concept has its own
// chance of being shared as a cognate across dialects.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ags::synthetic {

struct Options {
  std::size_t buckets = 2000;
  std::size_t concepts = 400;
  std::uint64_t seed = 20240611;
};

struct Files {
  std::filesystem::path caphi;
  std::filesystem::path lexicon;
  std::filesystem::path raw;
  std::filesystem::path corpus;
};

const std::vector<std::string>& dialect_codes();

// Writes lexicon.tsv, raw.tsv and corpus.tsv into `dir` and copies the
// inventory next to them.
Files generate(const std::filesystem::path& dir, const std::filesystem::path& caphi_table, const Options& options = {});

}  // namespace ags::synthetic
