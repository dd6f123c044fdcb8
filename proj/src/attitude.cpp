#include "attsp/attitude.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "attsp/errors.hpp"
#include "attsp/io_util.hpp"

namespace attsp {

namespace {

AttitudeScore score_at(const Eigen::MatrixXd& M, Eigen::Index row) {
  return {M(row, 0), M(row, 1)};
}

std::unordered_map<std::string, int> term_index(const FactorModel& model) {
  std::unordered_map<std::string, int> idx;
  idx.reserve(model.terms.size());
  for (std::size_t i = 0; i < model.terms.size(); ++i) {
    idx.emplace(model.terms[i], static_cast<int>(i));
  }
  return idx;
}

// (tendency, polarity) of one post against a prebuilt term index.
std::pair<double, double> score_post(
    const RawPost& post, const FactorModel& model,
    const std::unordered_map<std::string, int>& idx,
    const StopwordSet& stopwords, const TweetScoringOptions& opts) {
  auto terms = extract_terms(tokenize(post.text, stopwords));
  if (opts.distinct_terms_only) {
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  }
  double tend = 0.0, pol = 0.0;
  for (const auto& term : terms) {
    auto it = idx.find(term);
    if (it == idx.end()) continue;
    const double e = model.term_attitudes(0, it->second);
    const double t = model.term_attitudes(1, it->second);
    tend += e - t;
    pol += e + t;
  }
  return {tend, pol};
}

}  // namespace

AttitudeScore user_score(const FactorModel& model, const std::string& user) {
  auto it = std::find(model.users.begin(), model.users.end(), user);
  if (it == model.users.end()) throw UnknownTerm("unknown user: " + user);
  return score_at(model.user_attitudes, it - model.users.begin());
}

AttitudeScore term_score(const FactorModel& model, const std::string& term) {
  auto it = std::find(model.terms.begin(), model.terms.end(), term);
  if (it == model.terms.end()) throw UnknownTerm("unknown term: " + term);
  const Eigen::Index col = it - model.terms.begin();
  return {model.term_attitudes(0, col), model.term_attitudes(1, col)};
}

double tweet_tendency(const RawPost& post, const FactorModel& model,
                      const StopwordSet& stopwords,
                      const TweetScoringOptions& opts) {
  return score_post(post, model, term_index(model), stopwords, opts).first;
}

double tweet_polarity(const RawPost& post, const FactorModel& model,
                      const StopwordSet& stopwords,
                      const TweetScoringOptions& opts) {
  return score_post(post, model, term_index(model), stopwords, opts).second;
}

ScoredTweet score_tweet(const RawPost& post, const FactorModel& model,
                        const StopwordSet& stopwords,
                        const TweetScoringOptions& opts) {
  auto idx = term_index(model);
  auto [tend, pol] = score_post(post, model, idx, stopwords, opts);
  return {post.id,
          post.author_id,
          post.timestamp,
          tend,
          pol,
          tend >= 0 ? AttitudeGroup::empathy : AttitudeGroup::threat,
          month_bucket(post.timestamp)};
}

std::vector<ScoredTweet> score_tweets(const std::vector<RawPost>& posts,
                                      const FactorModel& model,
                                      const StopwordSet& stopwords,
                                      const TweetScoringOptions& opts) {
  const auto idx = term_index(model);
  std::vector<ScoredTweet> out;
  out.reserve(posts.size());
  for (const auto& p : posts) {
    auto [tend, pol] = score_post(p, model, idx, stopwords, opts);
    out.push_back({p.id, p.author_id, p.timestamp, tend, pol,
                   tend >= 0 ? AttitudeGroup::empathy : AttitudeGroup::threat,
                   month_bucket(p.timestamp)});
  }
  return out;
}

TweetPartition group_tweets(const std::vector<ScoredTweet>& scored) {
  TweetPartition part;
  for (const auto& s : scored) {
    (s.tendency >= 0 ? part.empathy : part.threat).push_back(s);
  }
  return part;
}

void save_scored_csv(const std::vector<ScoredTweet>& scored,
                     const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back(
      {"post_id", "author_id", "timestamp", "tendency", "polarity", "group"});
  for (const auto& s : scored) {
    rows.push_back({s.post_id, s.author_id, format_iso8601(s.timestamp),
                    format_double(s.tendency), format_double(s.polarity),
                    s.group == AttitudeGroup::empathy ? "empathy" : "threat"});
  }
  write_csv(rows, path);
}

std::vector<ScoredTweet> load_scored_csv(const std::string& path) {
  auto rows = read_csv(path);
  std::vector<ScoredTweet> scored;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() < 6) throw ParseError("scored csv row " + std::to_string(i) +
                                       ": expected 6 fields");
    ScoredTweet s;
    s.post_id = r[0];
    s.author_id = r[1];
    s.timestamp = parse_iso8601(r[2]);
    s.tendency = std::stod(r[3]);
    s.polarity = std::stod(r[4]);
    s.group = r[5] == "threat" ? AttitudeGroup::threat : AttitudeGroup::empathy;
    s.month = month_bucket(s.timestamp);
    scored.push_back(std::move(s));
  }
  return scored;
}

}  // namespace attsp
