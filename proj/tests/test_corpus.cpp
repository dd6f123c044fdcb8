#include "attsp/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "attsp/errors.hpp"
#include "doctest.h"

using namespace attsp;

TEST_CASE("tokenize folds case and accents, keeps hashtags atomic") {
  StopwordSet stop{"a"};
  auto toks = tokenize("Bienvenidos a Chile #ChileTeRecibe", stop);
  REQUIRE(toks.size() == 4);
  CHECK(toks[0] == Token{"bienvenidos", TokenKind::word, false});
  CHECK(toks[1] == Token{"a", TokenKind::word, true});
  CHECK(toks[2] == Token{"chile", TokenKind::word, false});
  CHECK(toks[3] == Token{"#chileterecibe", TokenKind::hashtag, false});
}

TEST_CASE("tokenize on empty text") {
  CHECK(tokenize("", {}).empty());
}

TEST_CASE("case and accent folding is idempotent across variants") {
  auto toks = tokenize("Haití HAITÍ haiti", {});
  REQUIRE(toks.size() == 3);
  for (const auto& t : toks) {
    CHECK(t.surface == "haiti");
    CHECK(t.kind == TokenKind::word);
  }
}

TEST_CASE("mentions and urls are atomic tokens") {
  auto toks = tokenize("cc @OIMchile mira https://t.co/Abc123, ya!", {});
  REQUIRE(toks.size() == 5);
  CHECK(toks[1] == Token{"@oimchile", TokenKind::mention, false});
  CHECK(toks[3] == Token{"https://t.co/abc123", TokenKind::url, false});
  CHECK(toks[4].surface == "ya");
}

TEST_CASE("tokenization is idempotent on its own surfaces") {
  StopwordSet stop{"de", "la"};
  auto toks = tokenize("Señora de la casa #Antofagasta @pepe año", stop);
  for (const auto& t : toks) {
    auto again = tokenize(t.surface, stop);
    REQUIRE(again.size() == 1);
    CHECK(again[0] == t);
  }
}

namespace {

RawPost post(std::string id, std::string author, UnixTime ts,
             std::string text) {
  RawPost p;
  p.id = std::move(id);
  p.author_id = std::move(author);
  p.timestamp = ts;
  p.text = std::move(text);
  return p;
}

}  // namespace

TEST_CASE("build_user_documents concatenates per author in time order") {
  std::vector<RawPost> posts = {
      post("2", "A", 200, "segundo tuit"),
      post("3", "B", 300, "otro usuario"),
      post("1", "A", 100, "primer tuit"),
  };
  auto docs = build_user_documents(posts, {});
  REQUIRE(docs.size() == 2);
  REQUIRE(docs.at("A").size() == 4);
  CHECK(docs.at("A")[0].surface == "primer");
  CHECK(docs.at("A")[2].surface == "segundo");
}

TEST_CASE("author with only empty posts keeps an empty document") {
  auto docs = build_user_documents({post("1", "A", 0, "")}, {});
  REQUIRE(docs.count("A") == 1);
  CHECK(docs.at("A").empty());
}

TEST_CASE("document token counts equal the sum of per-post counts") {
  std::mt19937 rng(11);
  std::vector<RawPost> posts;
  std::map<std::string, std::size_t> expected;
  int id = 0;
  for (int u = 0; u < 10; ++u) {
    std::string user = "user" + std::to_string(u);
    for (int p = 0; p < 5; ++p) {
      const int words = static_cast<int>(rng() % 7);
      std::string text;
      for (int w = 0; w < words; ++w) text += "palabra" + std::to_string(w) + " ";
      expected[user] += tokenize(text, {}).size();
      posts.push_back(post(std::to_string(id++), user,
                           static_cast<UnixTime>(rng() % 1000), text));
    }
  }
  auto docs = build_user_documents(posts, {});
  REQUIRE(docs.size() == 10);
  for (const auto& [user, toks] : docs) CHECK(toks.size() == expected[user]);
}

TEST_CASE("retweet text can be excluded from the retweeter's document") {
  RawPost rt = post("1", "A", 0, "contenido republicado");
  rt.kind = PostKind::retweet;
  rt.retweeted_author_id = "B";
  auto with = build_user_documents({rt}, {}, {true});
  auto without = build_user_documents({rt}, {}, {false});
  CHECK(with.at("A").size() == 2);
  CHECK(without.at("A").empty());
}

TEST_CASE("extract_terms emits n-grams with stopwords kept inside") {
  StopwordSet stop{"a"};
  auto toks = tokenize("bienvenidos a chile", stop);
  auto terms = extract_terms(toks);
  std::multiset<std::string> set(terms.begin(), terms.end());
  CHECK(set.count("bienvenidos") == 1);
  CHECK(set.count("chile") == 1);
  CHECK(set.count("a") == 0);  // stopword unigram dropped
  CHECK(set.count("bienvenidos a") == 1);
  CHECK(set.count("a chile") == 1);
  CHECK(set.count("bienvenidos a chile") == 1);
  CHECK(terms.size() == 5);
}

TEST_CASE("single word token yields exactly one unigram") {
  auto terms = extract_terms(tokenize("hola", {}));
  REQUIRE(terms.size() == 1);
  CHECK(terms[0] == "hola");
}

TEST_CASE("n-gram count for w words without stopwords") {
  for (int w = 4; w <= 12; ++w) {
    std::string text;
    for (int i = 0; i < w; ++i) text += "w" + std::to_string(i) + " ";
    auto terms = extract_terms(tokenize(text, {}));
    CHECK(static_cast<int>(terms.size()) == w + (w - 1) + (w - 2) + (w - 3));
  }
}

TEST_CASE("hashtags pass through extract_terms without joining n-grams") {
  auto terms = extract_terms(tokenize("uno #tag dos", {}));
  std::multiset<std::string> set(terms.begin(), terms.end());
  CHECK(set.count("#tag") == 1);
  CHECK(set.count("uno dos") == 1);  // word stream skips the hashtag
  CHECK(set.count("uno #tag") == 0);
}

TEST_CASE("build_matrix single document, idf cancels under normalization") {
  std::map<std::string, TermCounts> docs;
  docs["u"] = {{"x", 2.0}, {"y", 1.0}};
  auto dtm = build_matrix(docs, 1);
  REQUIRE(dtm.vocab.size() == 2);
  const int cx = *dtm.vocab.lookup("x");
  const int cy = *dtm.vocab.lookup("y");
  const double vx = dtm.values.coeff(0, cx);
  const double vy = dtm.values.coeff(0, cy);
  CHECK(vx / vy == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::sqrt(vx * vx + vy * vy) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("terms below min_df are dropped") {
  std::map<std::string, TermCounts> docs;
  docs["a"] = {{"comun", 1.0}, {"raro", 1.0}};
  docs["b"] = {{"comun", 2.0}};
  auto dtm = build_matrix(docs, 2);
  CHECK(dtm.vocab.lookup("comun").has_value());
  CHECK(!dtm.vocab.lookup("raro").has_value());
}

TEST_CASE("build_matrix throws when the vocabulary ends up empty") {
  std::map<std::string, TermCounts> docs;
  docs["a"] = {{"solo", 1.0}};
  CHECK_THROWS_AS(build_matrix(docs, 2), AllDocumentsEmpty);
}

TEST_CASE("5-document corpus matches the brute-force TF-IDF oracle") {
  std::map<std::string, TermCounts> docs;
  docs["d1"] = {{"t1", 3.0}, {"t2", 1.0}};
  docs["d2"] = {{"t1", 1.0}, {"t3", 2.0}};
  docs["d3"] = {{"t2", 4.0}, {"t3", 1.0}, {"t4", 1.0}};
  docs["d4"] = {{"t4", 2.0}};
  docs["d5"] = {{"t1", 1.0}, {"t2", 1.0}, {"t3", 1.0}, {"t4", 1.0}};
  auto dtm = build_matrix(docs, 1);

  // independent dense recomputation
  const double N = 5.0;
  std::map<std::string, int> df;
  for (const auto& [doc, counts] : docs)
    for (const auto& [term, c] : counts) df[term] += 1;
  int row = 0;
  for (const auto& [doc, counts] : docs) {
    std::map<std::string, double> weights;
    double norm = 0;
    for (const auto& [term, c] : counts) {
      const double w = c * (std::log((1.0 + N) / (1.0 + df[term])) + 1.0);
      weights[term] = w;
      norm += w * w;
    }
    norm = std::sqrt(norm);
    for (const auto& [term, w] : weights) {
      const double got = dtm.values.coeff(row, *dtm.vocab.lookup(term));
      CHECK(std::abs(got - w / norm) < 1e-12);
    }
    ++row;
  }
}

TEST_CASE("matrix rows are non-negative with unit or zero L2 norm") {
  std::mt19937 rng(3);
  std::map<std::string, TermCounts> docs;
  for (int d = 0; d < 20; ++d) {
    TermCounts c;
    for (int t = 0; t < 15; ++t) {
      if (rng() % 3 == 0) c["term" + std::to_string(rng() % 25)] += 1.0;
    }
    docs["doc" + std::to_string(d)] = c;
  }
  auto dtm = build_matrix(docs, 1);
  for (int i = 0; i < dtm.values.rows(); ++i) {
    double norm2 = 0;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
             dtm.values, i);
         it; ++it) {
      CHECK(it.value() >= 0.0);
      norm2 += it.value() * it.value();
    }
    if (norm2 > 0) CHECK(std::sqrt(norm2) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("shuffling posts across users leaves the matrix unchanged") {
  std::vector<RawPost> posts = {
      post("1", "A", 100, "hola chile lindo"),
      post("2", "B", 150, "frontera norte control"),
      post("3", "A", 200, "chile recibe gente"),
      post("4", "C", 50, "trabajo digno para todos"),
  };
  auto counts_of = [](const std::vector<RawPost>& ps) {
    auto docs = build_user_documents(ps, {});
    std::map<std::string, TermCounts> counts;
    for (const auto& [u, toks] : docs) counts[u] = count_terms(toks);
    return counts;
  };
  auto a = build_matrix(counts_of(posts), 1);
  std::swap(posts[1], posts[3]);  // reorder across users, within-user order kept
  auto b = build_matrix(counts_of(posts), 1);
  REQUIRE(a.rows == b.rows);
  REQUIRE(a.vocab.terms == b.vocab.terms);
  CHECK((Eigen::MatrixXd(a.values) - Eigen::MatrixXd(b.values)).norm() == 0.0);
}

TEST_CASE("jsonl corpus round-trips") {
  std::vector<RawPost> posts = {post("1", "A", 1483228800, "hola #chile")};
  posts[0].mentioned_author_ids = {"B"};
  const std::string path = "test_corpus_roundtrip.jsonl";
  save_corpus_jsonl(posts, path);
  auto loaded = load_corpus_jsonl(path);
  REQUIRE(loaded.size() == 1);
  CHECK(loaded[0].id == "1");
  CHECK(loaded[0].timestamp == 1483228800);
  CHECK(loaded[0].mentioned_author_ids == std::vector<std::string>{"B"});
  std::remove(path.c_str());
}

TEST_CASE("retweet posts require retweeted_author_id") {
  const std::string path = "test_corpus_bad.jsonl";
  {
    std::ofstream out(path);
    out << R"({"id":"1","author_id":"A","timestamp":"2017-01-01T00:00:00Z","text":"x","kind":"retweet"})"
        << '\n';
  }
  CHECK_THROWS_AS(load_corpus_jsonl(path), ParseError);
  std::remove(path.c_str());
}
