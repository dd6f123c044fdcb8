#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "attsp/corpus.hpp"

namespace attsp {

struct SyntheticSpec {
  int users_per_attitude = 100;
  int posts_per_user = 10;
  int planted_vocab_size = 30;   // group-specific generic words
  int noise_vocab_size = 40;     // shared vocabulary
  double seed_user_fraction = 0.2;   // fraction of users that employ seed terms
  double noise_rate = 0.2;           // probability a word comes from the shared pool
  double intra_group_preference = 0.8;
  int retweets_per_user = 3;
  int mentions_per_user = 3;
  int months = 6;
  std::uint64_t rng_seed = 7;
};

struct SyntheticCorpus {
  std::vector<RawPost> posts;
  std::map<std::string, std::string> labels;  // author_id -> empathy|threat
};

// Two user populations with disjoint planted vocabularies plus shared noise
// words; a fraction of each population uses that side's seed hashtag, and
// category-bearing words (social vs money) are planted at a 3:1 frequency
// ratio between the groups.
SyntheticCorpus generate_synthetic(const SyntheticSpec& spec);

void save_labels_csv(const std::map<std::string, std::string>& labels,
                     const std::string& path);
std::map<std::string, std::string> load_labels_csv(const std::string& path);

// Seed hashtags the generator plants, matching the default seed lexicon.
extern const char* kEmpathySeedHashtag;
extern const char* kThreatSeedHashtag;

}  // namespace attsp
