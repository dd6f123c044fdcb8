#include "attsp/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include "attsp/attitude.hpp"
#include "attsp/io_util.hpp"
#include "attsp/lexicon.hpp"
#include "attsp/network.hpp"
#include "attsp/trends.hpp"
#include "json.hpp"

namespace attsp {

namespace fs = std::filesystem;

PipelineConfig load_pipeline_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StageFailure(Stage::config, "cannot open config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw StageFailure(Stage::config, std::string("config: ") + e.what());
  }
  PipelineConfig c;
  c.corpus_path = j.value("corpus", "");
  c.stopwords_path = j.value("stopwords", "");
  c.seed_lexicon_path = j.value("seeds", "");
  c.category_lexicon_path = j.value("category_lexicon", "");
  c.output_dir = j.value("output_dir", c.output_dir);
  c.min_df = j.value("min_df", c.min_df);
  c.seed_threshold = j.value("seed_threshold", c.seed_threshold);
  c.include_retweet_text =
      j.value("include_retweet_text", c.include_retweet_text);
  c.lowess_fraction = j.value("lowess_fraction", c.lowess_fraction);
  c.lowess_robust_iterations =
      j.value("lowess_robust_iterations", c.lowess_robust_iterations);
  if (j.contains("factorization")) {
    const auto& f = j["factorization"];
    c.factorization.k = f.value("k", c.factorization.k);
    c.factorization.max_iterations =
        f.value("max_iterations", c.factorization.max_iterations);
    c.factorization.relative_tolerance =
        f.value("relative_tolerance", c.factorization.relative_tolerance);
    c.factorization.epsilon = f.value("epsilon", c.factorization.epsilon);
    c.factorization.rng_seed = f.value("rng_seed", c.factorization.rng_seed);
    c.factorization.init = f.value("init", std::string("random_uniform")) ==
                                   "nndsvd"
                               ? FactorInit::nndsvd
                               : FactorInit::random_uniform;
  }
  return c;
}

namespace {

nlohmann::json config_echo(const PipelineConfig& c) {
  return {
      {"corpus", c.corpus_path},
      {"stopwords", c.stopwords_path},
      {"seeds", c.seed_lexicon_path},
      {"category_lexicon", c.category_lexicon_path},
      {"output_dir", c.output_dir},
      {"min_df", c.min_df},
      {"seed_threshold", c.seed_threshold},
      {"include_retweet_text", c.include_retweet_text},
      {"lowess_fraction", c.lowess_fraction},
      {"lowess_robust_iterations", c.lowess_robust_iterations},
      {"factorization",
       {{"k", c.factorization.k},
        {"max_iterations", c.factorization.max_iterations},
        {"relative_tolerance", c.factorization.relative_tolerance},
        {"epsilon", c.factorization.epsilon},
        {"rng_seed", c.factorization.rng_seed},
        {"init", c.factorization.init == FactorInit::nndsvd
                     ? "nndsvd"
                     : "random_uniform"}}},
  };
}

void save_term_associations(const FactorModel& model,
                            const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"term", "empathy", "threat", "tendency", "polarity"});
  for (std::size_t j = 0; j < model.terms.size(); ++j) {
    const double e = model.term_attitudes(0, static_cast<Eigen::Index>(j));
    const double t = model.term_attitudes(1, static_cast<Eigen::Index>(j));
    rows.push_back({model.terms[j], format_double(e), format_double(t),
                    format_double(e - t), format_double(e + t)});
  }
  write_csv(rows, path);
}

}  // namespace

void export_trend_csv(const std::vector<ScoredTweet>& scored,
                      bool use_polarity, double fraction, int robust,
                      const std::string& path) {
  std::vector<const ScoredTweet*> ordered;
  for (const auto& s : scored) ordered.push_back(&s);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const ScoredTweet* a, const ScoredTweet* b) {
                     return a->timestamp < b->timestamp;
                   });
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"t_iso", "raw_y", "smoothed_y", "series"});
  if (ordered.size() < 2) {
    write_csv(rows, path);
    return;
  }
  const UnixTime epoch = ordered.front()->timestamp;
  std::vector<TimeSeriesPoint> pts(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    RawPost key;  // jitter only needs id + timestamp
    key.id = ordered[i]->post_id;
    key.timestamp = ordered[i]->timestamp;
    pts[i] = {jittered_days(key, epoch),
              use_polarity ? ordered[i]->polarity : ordered[i]->tendency};
  }
  std::sort(pts.begin(), pts.end(),
            [](const TimeSeriesPoint& a, const TimeSeriesPoint& b) {
              return a.t < b.t;
            });
  auto smooth = lowess(pts, fraction, robust);
  const char* series = use_polarity ? "polarity" : "tendency";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const UnixTime t =
        epoch + static_cast<UnixTime>(pts[i].t * 86400.0 + 0.5);
    rows.push_back({format_iso8601(t), format_double(pts[i].y),
                    format_double(smooth[i].y), series});
  }
  write_csv(rows, path);
}

namespace {

nlohmann::json network_report(const InteractionGraph& full,
                              const InteractionGraph& scc) {
  nlohmann::json j;
  j["nodes"] = full.nodes.size();
  j["edges"] = full.edges.size();
  j["scc_nodes"] = scc.nodes.size();
  j["scc_edges"] = scc.edges.size();
  auto coeff = [&](NodeAttribute a) -> nlohmann::json {
    try {
      auto r = assortativity(scc, a);
      return {{"coefficient", r.coefficient}, {"n_edges", r.n_edges}};
    } catch (const Error& e) {
      return {{"undefined", e.what()}};
    }
  };
  j["assortativity"] = {{"empathy", coeff(NodeAttribute::empathy)},
                        {"threat", coeff(NodeAttribute::threat)},
                        {"tendency", coeff(NodeAttribute::tendency)}};
  return j;
}

}  // namespace

void run_pipeline(const PipelineConfig& config) {
  fs::create_directories(config.output_dir);
  const fs::path out(config.output_dir);

  StopwordSet stopwords;
  std::vector<RawPost> posts;
  SeedLexicon seeds;
  CategoryLexicon lexicon;
  try {
    stopwords = config.stopwords_path.empty()
                    ? StopwordSet{}
                    : load_stopwords(config.stopwords_path);
    posts = load_corpus_jsonl(config.corpus_path);
    seeds = load_seed_lexicon(config.seed_lexicon_path);
    lexicon = load_lexicon(config.category_lexicon_path);
  } catch (const Error& e) {
    throw StageFailure(Stage::ingest, std::string("ingest: ") + e.what());
  }

  DocumentTermMatrix dtm;
  try {
    auto docs = build_user_documents(posts, stopwords,
                                     {config.include_retweet_text});
    std::map<std::string, TermCounts> counts;
    for (const auto& [user, tokens] : docs) {
      counts[user] = count_terms(tokens);
    }
    dtm = build_matrix(counts, config.min_df);
  } catch (const Error& e) {
    throw StageFailure(Stage::matrix, std::string("matrix: ") + e.what());
  }

  SupervisionMatrix sup;
  try {
    auto scores = score_all_seeds(dtm, seeds);
    sup = build_supervision(dtm.rows, scores, config.seed_threshold);
  } catch (const Error& e) {
    throw StageFailure(Stage::seeding, std::string("seeding: ") + e.what());
  }

  FactorModel model;
  try {
    model = fit(dtm, sup, config.factorization);
    save_model_json(model, config.factorization, (out / "model.json").string());
  } catch (const Error& e) {
    throw StageFailure(Stage::fit, std::string("fit: ") + e.what());
  }

  std::vector<ScoredTweet> scored;
  try {
    scored = score_tweets(posts, model, stopwords);
    save_scored_csv(scored, (out / "scored_tweets.csv").string());
    save_term_associations(model, (out / "term_associations.csv").string());
  } catch (const Error& e) {
    throw StageFailure(Stage::score, std::string("score: ") + e.what());
  }

  try {
    auto assoc = monthly_group_zscores(scored, posts, lexicon, stopwords);
    save_associations_csv(assoc, (out / "monthly_zscores.csv").string());
  } catch (const Error& e) {
    throw StageFailure(Stage::liwc, std::string("liwc: ") + e.what());
  }

  try {
    auto mention = build_mention_graph(posts);
    auto retweet = build_retweet_graph(posts);
    attach_attitudes(mention, model);
    attach_attitudes(retweet, model);
    nlohmann::json metrics;
    for (auto* g : {&mention, &retweet}) {
      const char* name = g->kind == GraphKind::mention ? "mention" : "retweet";
      if (g->nodes.empty()) {
        metrics[name] = {{"nodes", 0}, {"edges", 0}};
        continue;
      }
      auto scc = largest_scc(*g);
      metrics[name] = network_report(*g, scc);
      save_edge_list_csv(scc,
                         (out / (std::string(name) + "_edges.csv")).string());
    }
    std::ofstream m(out / "network_metrics.json");
    m << metrics.dump(2) << '\n';
  } catch (const Error& e) {
    throw StageFailure(Stage::network, std::string("network: ") + e.what());
  }

  try {
    auto weeks = weekly_volume(posts);
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"week_start", "count"});
    for (const auto& w : weeks) {
      rows.push_back({format_iso_date(w.week_start), std::to_string(w.count)});
    }
    write_csv(rows, (out / "weekly_volume.csv").string());
    export_trend_csv(scored, false, config.lowess_fraction,
                   config.lowess_robust_iterations,
                   (out / "tendency_trend.csv").string());
    export_trend_csv(scored, true, config.lowess_fraction,
                   config.lowess_robust_iterations,
                   (out / "polarity_trend.csv").string());
  } catch (const Error& e) {
    throw StageFailure(Stage::trends, std::string("trends: ") + e.what());
  }

  try {
    nlohmann::json manifest;
    manifest["config"] = config_echo(config);
    nlohmann::json hashes;
    const char* artifacts[] = {
        "model.json",          "scored_tweets.csv",    "term_associations.csv",
        "monthly_zscores.csv", "network_metrics.json", "weekly_volume.csv",
        "tendency_trend.csv",  "polarity_trend.csv"};
    for (const char* name : artifacts) {
      hashes[name] = hash_file((out / name).string());
    }
    for (const char* name : {"mention_edges.csv", "retweet_edges.csv"}) {
      if (fs::exists(out / name)) hashes[name] = hash_file((out / name).string());
    }
    manifest["hashes"] = hashes;
    std::ofstream m(out / "manifest.json");
    m << manifest.dump(2) << '\n';
  } catch (const Error& e) {
    throw StageFailure(Stage::report, std::string("report: ") + e.what());
  }
}

}  // namespace attsp
