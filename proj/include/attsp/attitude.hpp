#pragma once

#include <string>
#include <vector>

#include "attsp/corpus.hpp"
#include "attsp/factorizer.hpp"

namespace attsp {

struct AttitudeScore {
  double empathy = 0.0;
  double threat = 0.0;
};

enum class AttitudeGroup { empathy, threat };

inline double tendency(const AttitudeScore& s) { return s.empathy - s.threat; }
inline double polarity(const AttitudeScore& s) { return s.empathy + s.threat; }

// Column 0 of U/T is empathy, column 1 threat, fixed by the supervision
// matrix layout.
AttitudeScore user_score(const FactorModel& model, const std::string& user);
AttitudeScore term_score(const FactorModel& model, const std::string& term);

struct TweetScoringOptions {
  bool distinct_terms_only = false;  // default: sum over occurrences
};

// Sum of term tendencies/polarities over the tweet's in-vocabulary terms,
// extracted with the same pipeline as the corpus.
double tweet_tendency(const RawPost& post, const FactorModel& model,
                      const StopwordSet& stopwords,
                      const TweetScoringOptions& opts = {});
double tweet_polarity(const RawPost& post, const FactorModel& model,
                      const StopwordSet& stopwords,
                      const TweetScoringOptions& opts = {});

struct ScoredTweet {
  std::string post_id;
  std::string author_id;
  UnixTime timestamp = 0;
  double tendency = 0.0;
  double polarity = 0.0;
  AttitudeGroup group = AttitudeGroup::empathy;
  std::string month;
};

ScoredTweet score_tweet(const RawPost& post, const FactorModel& model,
                        const StopwordSet& stopwords,
                        const TweetScoringOptions& opts = {});

std::vector<ScoredTweet> score_tweets(const std::vector<RawPost>& posts,
                                      const FactorModel& model,
                                      const StopwordSet& stopwords,
                                      const TweetScoringOptions& opts = {});

struct TweetPartition {
  std::vector<ScoredTweet> empathy;
  std::vector<ScoredTweet> threat;
};

// tendency >= 0 goes to empathy, the rest to threat.
TweetPartition group_tweets(const std::vector<ScoredTweet>& scored);

void save_scored_csv(const std::vector<ScoredTweet>& scored,
                     const std::string& path);
std::vector<ScoredTweet> load_scored_csv(const std::string& path);

}  // namespace attsp
