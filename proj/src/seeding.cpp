#include "attsp/seeding.hpp"

#include <fstream>

#include "attsp/errors.hpp"

namespace attsp {

namespace {

// Normalize a raw seed line the same way the corpus pipeline would, so
// exact-term matching against the vocabulary works. A phrase becomes a
// space-joined word n-gram; hashtags/mentions/URLs pass through atomically.
std::string normalize_seed(const std::string& raw) {
  auto toks = tokenize(raw, {});
  if (toks.empty()) return {};
  if (toks.size() == 1) return toks[0].surface;
  std::string out;
  for (const auto& t : toks) {
    if (!out.empty()) out += ' ';
    out += t.surface;
  }
  return out;
}

}  // namespace

SeedLexicon load_seed_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open seed lexicon: " + path);
  SeedLexicon lex;
  std::set<std::string>* section = nullptr;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty() || line[0] == ';') continue;
    if (line == "[empathy]") {
      section = &lex.empathy_terms;
      continue;
    }
    if (line == "[threat]") {
      section = &lex.threat_terms;
      continue;
    }
    if (!section) {
      throw ParseError("seed lexicon line " + std::to_string(lineno) +
                       ": term before any section header");
    }
    std::string term = normalize_seed(line);
    if (!term.empty()) section->insert(term);
  }
  for (const auto& t : lex.empathy_terms) {
    if (lex.threat_terms.count(t)) {
      throw ParseError("seed term in both sections: " + t);
    }
  }
  return lex;
}

SeedScore score_seeds(const DocumentTermMatrix& dtm, int row,
                      const SeedLexicon& lexicon) {
  SeedScore s;
  for (const auto& term : lexicon.empathy_terms) {
    if (auto col = dtm.vocab.lookup(term)) {
      s.empathy += dtm.values.coeff(row, *col);
    }
  }
  for (const auto& term : lexicon.threat_terms) {
    if (auto col = dtm.vocab.lookup(term)) {
      s.threat += dtm.values.coeff(row, *col);
    }
  }
  return s;
}

std::vector<SeedScore> score_all_seeds(const DocumentTermMatrix& dtm,
                                       const SeedLexicon& lexicon) {
  std::vector<SeedScore> scores(dtm.rows.size());
  for (std::size_t i = 0; i < dtm.rows.size(); ++i) {
    scores[i] = score_seeds(dtm, static_cast<int>(i), lexicon);
  }
  return scores;
}

SupervisionMatrix build_supervision(const std::vector<std::string>& users,
                                    const std::vector<SeedScore>& scores,
                                    double threshold) {
  if (threshold <= 0) throw Error("supervision threshold must be > 0");
  if (users.size() != scores.size())
    throw DimensionMismatch("users/scores size mismatch");
  SupervisionMatrix sup;
  sup.rows = users;
  sup.values.resize(static_cast<Eigen::Index>(scores.size()), 2);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool e = scores[i].empathy >= threshold;
    const bool t = scores[i].threat >= threshold;
    if (e == t) {
      sup.values(static_cast<Eigen::Index>(i), 0) = 1.0;
      sup.values(static_cast<Eigen::Index>(i), 1) = 1.0;
    } else {
      sup.values(static_cast<Eigen::Index>(i), 0) = e ? 1.0 : 0.0;
      sup.values(static_cast<Eigen::Index>(i), 1) = t ? 1.0 : 0.0;
    }
  }
  return sup;
}

}  // namespace attsp
