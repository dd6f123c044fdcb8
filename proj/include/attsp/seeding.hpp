#pragma once

#include <Eigen/Core>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "attsp/corpus.hpp"

namespace attsp {

struct SeedLexicon {
  std::set<std::string> empathy_terms;
  std::set<std::string> threat_terms;
};

// Parses a seed file with "[empathy]" and "[threat]" sections, one term per
// line. Phrases are normalized through the tokenizer into n-gram form.
SeedLexicon load_seed_lexicon(const std::string& path);

struct SeedScore {
  double empathy = 0.0;
  double threat = 0.0;
};

// Sums the row's TF-IDF cells over the seed terms present in the vocabulary.
SeedScore score_seeds(const DocumentTermMatrix& dtm, int row,
                      const SeedLexicon& lexicon);

std::vector<SeedScore> score_all_seeds(const DocumentTermMatrix& dtm,
                                       const SeedLexicon& lexicon);

struct SupervisionMatrix {
  std::vector<std::string> rows;
  Eigen::MatrixXd values;  // user x 2, binary, no all-zero row
};

// Threshold applied to each attitude independently; rows passing neither
// test stay unconstrained (1,1).
SupervisionMatrix build_supervision(const std::vector<std::string>& users,
                                    const std::vector<SeedScore>& scores,
                                    double threshold = 0.25);

}  // namespace attsp
