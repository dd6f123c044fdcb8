#include "attsp/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "attsp/errors.hpp"
#include "attsp/io_util.hpp"

namespace attsp {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ls(line);
  while (std::getline(ls, field, '\t')) {
    if (!field.empty()) fields.push_back(field);
  }
  return fields;
}

}  // namespace

std::vector<int> CategoryLexicon::match_word(const std::string& word) const {
  std::set<int> cats;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string& pat = entries[e].pattern;
    bool hit;
    if (!pat.empty() && pat.back() == '*') {
      hit = word.size() >= pat.size() - 1 &&
            word.compare(0, pat.size() - 1, pat, 0, pat.size() - 1) == 0;
    } else {
      hit = word == pat;
    }
    if (hit) {
      cats.insert(closed_entry_categories[e].begin(),
                  closed_entry_categories[e].end());
    }
  }
  return {cats.begin(), cats.end()};
}

bool CategoryLexicon::word_in_category(const std::string& word,
                                       int category_id) const {
  auto cats = match_word(word);
  return std::find(cats.begin(), cats.end(), category_id) != cats.end();
}

std::optional<int> CategoryLexicon::id_of(const std::string& name) const {
  for (const auto& [id, n] : categories) {
    if (n == name) return id;
  }
  return std::nullopt;
}

CategoryLexicon load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open lexicon: " + path);
  CategoryLexicon lex;
  std::string line;
  int lineno = 0;
  int delims = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '%') {
      ++delims;
      continue;
    }
    auto fields = split_tabs(line);
    if (delims == 1) {
      if (fields.size() < 2)
        throw ParseError("lexicon line " + std::to_string(lineno) +
                         ": expected id<TAB>name[<TAB>parent]");
      int id;
      try {
        id = std::stoi(fields[0]);
      } catch (...) {
        throw ParseError("lexicon line " + std::to_string(lineno) +
                         ": bad category id");
      }
      lex.categories[id] = fields[1];
      if (fields.size() >= 3) {
        lex.parent[id] = std::stoi(fields[2]);
      } else {
        lex.parent[id] = std::nullopt;
      }
    } else if (delims >= 2) {
      if (fields.size() < 2)
        throw ParseError("lexicon line " + std::to_string(lineno) +
                         ": expected pattern<TAB>id...");
      CategoryLexicon::Entry entry;
      entry.pattern = fold_text(fields[0]);
      for (std::size_t i = 1; i < fields.size(); ++i) {
        int id;
        try {
          id = std::stoi(fields[i]);
        } catch (...) {
          throw ParseError("lexicon line " + std::to_string(lineno) +
                           ": bad category id");
        }
        if (!lex.categories.count(id))
          throw ParseError("lexicon line " + std::to_string(lineno) +
                           ": unknown category " + std::to_string(id));
        entry.category_ids.push_back(id);
      }
      lex.entries.push_back(std::move(entry));
    } else {
      throw ParseError("lexicon line " + std::to_string(lineno) +
                       ": content before the first % delimiter");
    }
  }
  // validate parents and reject cycles
  for (const auto& [id, par] : lex.parent) {
    if (par && !lex.categories.count(*par))
      throw ParseError("category " + std::to_string(id) +
                       " references unknown parent " + std::to_string(*par));
    std::set<int> seen{id};
    auto cur = par;
    while (cur) {
      if (!seen.insert(*cur).second)
        throw CycleError("category hierarchy cycle through " +
                         std::to_string(*cur));
      cur = lex.parent.at(*cur);
    }
  }
  // hierarchy closure per entry
  lex.closed_entry_categories.reserve(lex.entries.size());
  for (const auto& entry : lex.entries) {
    std::set<int> closed;
    for (int id : entry.category_ids) {
      std::optional<int> cur = id;
      while (cur) {
        closed.insert(*cur);
        cur = lex.parent.at(*cur);
      }
    }
    lex.closed_entry_categories.emplace_back(closed.begin(), closed.end());
  }
  return lex;
}

double tweet_category_fraction(const std::vector<Token>& tokens,
                               int category_id, const CategoryLexicon& lex) {
  if (!lex.categories.count(category_id))
    throw UnknownCategory("unknown category id " + std::to_string(category_id));
  int words = 0, hits = 0;
  for (const auto& tok : tokens) {
    if (tok.kind != TokenKind::word) continue;
    ++words;
    if (lex.word_in_category(tok.surface, category_id)) ++hits;
  }
  return words == 0 ? 0.0 : static_cast<double>(hits) / words;
}

std::optional<double> zscore(const std::vector<double>& group_fractions,
                             const std::vector<double>& all_fractions) {
  if (all_fractions.empty())
    throw Error("zscore requires a non-empty population");
  if (group_fractions.empty()) throw EmptyGroup("zscore group is empty");
  double mu = 0.0;
  for (double f : all_fractions) mu += f;
  mu /= static_cast<double>(all_fractions.size());
  double var = 0.0;
  for (double f : all_fractions) var += (f - mu) * (f - mu);
  var /= static_cast<double>(all_fractions.size());  // population variance
  if (var == 0.0) return std::nullopt;
  double p = 0.0;
  for (double f : group_fractions) p += f;
  p /= static_cast<double>(group_fractions.size());
  return (p - mu) / std::sqrt(var);
}

std::vector<CategoryAssociation> monthly_group_zscores(
    const std::vector<ScoredTweet>& scored, const std::vector<RawPost>& posts,
    const CategoryLexicon& lex, const StopwordSet& stopwords) {
  std::unordered_map<std::string, const RawPost*> by_id;
  for (const auto& p : posts) by_id[p.id] = &p;

  // per-tweet fraction per category, one tokenization pass per tweet
  struct TweetFractions {
    const ScoredTweet* tweet;
    std::unordered_map<int, double> fraction;  // only nonzero categories
  };
  std::map<std::string, std::vector<TweetFractions>> by_month;
  for (const auto& s : scored) {
    auto it = by_id.find(s.post_id);
    if (it == by_id.end()) continue;
    auto tokens = tokenize(it->second->text, stopwords);
    int words = 0;
    std::unordered_map<int, int> hits;
    for (const auto& tok : tokens) {
      if (tok.kind != TokenKind::word) continue;
      ++words;
      for (int cat : lex.match_word(tok.surface)) hits[cat] += 1;
    }
    TweetFractions tf;
    tf.tweet = &s;
    if (words > 0) {
      for (const auto& [cat, h] : hits) {
        tf.fraction[cat] = static_cast<double>(h) / words;
      }
    }
    by_month[s.month].push_back(std::move(tf));
  }

  std::vector<CategoryAssociation> out;
  for (const auto& [month, tweets] : by_month) {
    for (const auto& [cat, name] : lex.categories) {
      std::vector<double> all, emp, thr;
      all.reserve(tweets.size());
      for (const auto& tf : tweets) {
        auto it = tf.fraction.find(cat);
        const double f = it == tf.fraction.end() ? 0.0 : it->second;
        all.push_back(f);
        (tf.tweet->group == AttitudeGroup::empathy ? emp : thr).push_back(f);
      }
      for (auto group : {AttitudeGroup::empathy, AttitudeGroup::threat}) {
        const auto& gf = group == AttitudeGroup::empathy ? emp : thr;
        if (gf.empty()) continue;
        auto z = zscore(gf, all);
        if (!z) continue;  // zero variance month, undefined by contract
        out.push_back({cat, name, group, month, *z,
                       static_cast<int>(gf.size())});
      }
    }
  }
  return out;
}

void save_associations_csv(const std::vector<CategoryAssociation>& rows,
                           const std::string& path) {
  std::vector<std::vector<std::string>> csv;
  csv.push_back({"category_id", "category", "group", "month", "z", "n_tweets"});
  for (const auto& r : rows) {
    csv.push_back({std::to_string(r.category_id), r.category_name,
                   r.group == AttitudeGroup::empathy ? "empathy" : "threat",
                   r.month, format_double(r.z), std::to_string(r.n_tweets)});
  }
  write_csv(csv, path);
}

}  // namespace attsp
