#pragma once

// Slow reference implementations used to check the production code paths.

#include <functional>
#include <random>
#include <vector>

#include "ags/corpus.hpp"
#include "ags/etymology.hpp"
#include "ags/g2p.hpp"

namespace ags::oracle {

using CellCost = std::function<double(int, int)>;
using GapCost = std::function<double(int)>;

// Minimum over every monotone edit path, enumerated one path at a time. Path
// costs are accumulated front to back.
double brute_edit_cost(int n, int m, const CellCost& sub, const GapCost& del, const GapCost& ins);

// Textbook unit-cost Levenshtein over symbol sequences.
int levenshtein(const SymbolSeq& a, const SymbolSeq& b);

// Cheapest grapheme/phoneme alignment by enumerating all of them.
double brute_g2p_cost(const SymbolSeq& coda, const SymbolSeq& caphi, const CaphiInventory& inventory,
                      const G2PCosts& costs = {});

// Random distribution over `support` (Dirichlet-like, strictly positive).
Distribution random_distribution(std::mt19937_64& rng, const std::vector<Symbol>& support);

// A model with random tables over the given alphabet, phonemes and dialects.
// Rows exist for every dialect plus the pooled slot.
EtymologyModel random_model(std::mt19937_64& rng, const std::vector<Symbol>& graphemes,
                            const std::vector<Symbol>& phonemes, const std::vector<DialectId>& dialects);

// Every grapheme is an etymological spelling of itself with probability 1, so
// posteriors are point masses on the orthographic symbol.
EtymologyModel identity_model(const std::vector<Symbol>& graphemes, const std::vector<DialectId>& dialects = {});

SymbolSeq random_word(std::mt19937_64& rng, const std::vector<Symbol>& alphabet, int min_len, int max_len);

}  // namespace ags::oracle
