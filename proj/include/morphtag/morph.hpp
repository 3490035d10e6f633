#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "morphtag/common.hpp"
#include "morphtag/corpus.hpp"

namespace morphtag {

// ---------------------------------------------------------------------------
// Toy lexicon analyser
// ---------------------------------------------------------------------------

/// Deterministic lexicon analyser: exact surface lookup with an optional
/// suffix-rule guesser fallback. Stands in for a full rule-based analyser in
/// tests and demos.
///
/// File format (UTF-8, one rule per line, '#' comments):
///   surface<TAB>tag1<TAB>tag2...           lexicon entry
///   SUFFIX -xyz<TAB>tag1<TAB>tag2...       guesser rule
/// Tags use the usual "CAT=Val|..." form ("_" for the empty analysis).
class LexiconAnalyzer {
 public:
  LexiconAnalyzer() = default;

  static LexiconAnalyzer from_text(const std::string& text, bool case_fold = false) {
    LexiconAnalyzer a;
    a.case_fold_ = case_fold;
    std::size_t line_no = 0;
    for (const std::string& raw : split(text, '\n')) {
      ++line_no;
      std::string line = raw;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      try {
        if (line.rfind("SUFFIX ", 0) == 0) {
          std::vector<std::string> cols = split(line.substr(7), '\t');
          if (cols.size() < 2 || cols[0].size() < 2 || cols[0][0] != '-')
            throw DataError("malformed guesser rule");
          std::string suffix = cols[0].substr(1);
          if (case_fold) suffix = ascii_lower(suffix);
          a.guesser_.emplace_back(suffix, parse_tags(cols, 1));
        } else {
          std::vector<std::string> cols = split(line, '\t');
          if (cols.size() < 2 || cols[0].empty()) throw DataError("malformed lexicon entry");
          std::string surface = case_fold ? ascii_lower(cols[0]) : cols[0];
          auto [it, fresh] = a.entries_.emplace(surface, parse_tags(cols, 1));
          if (!fresh) throw DataError("duplicate lexicon entry '" + cols[0] + "'");
        }
      } catch (const DataError& e) {
        throw DataError("lexicon line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    return a;
  }

  static LexiconAnalyzer load(const std::string& path, bool case_fold = false) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open lexicon file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_text(text, case_fold);
  }

  /// Exact lexicon match first; otherwise the longest matching guesser
  /// suffix (ties broken by rule order); otherwise an empty set.
  AnalysisSet analyze(const std::string& surface) const {
    std::string key = case_fold_ ? ascii_lower(surface) : surface;
    auto it = entries_.find(key);
    if (it != entries_.end()) return AnalysisSet{it->second, "lexicon"};
    const std::vector<MorphLabel>* best = nullptr;
    std::size_t best_len = 0;
    for (const auto& [suffix, labels] : guesser_) {
      if (suffix.size() > key.size()) continue;
      if (key.compare(key.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
      if (!best || suffix.size() > best_len) {
        best = &labels;
        best_len = suffix.size();
      }
    }
    if (best) return AnalysisSet{*best, "guesser"};
    return AnalysisSet{{}, "none"};
  }

  std::size_t entry_count() const { return entries_.size(); }
  std::size_t rule_count() const { return guesser_.size(); }
  bool case_fold() const { return case_fold_; }

 private:
  static std::vector<MorphLabel> parse_tags(const std::vector<std::string>& cols, std::size_t from) {
    std::vector<MorphLabel> labels;
    for (std::size_t i = from; i < cols.size(); ++i) {
      MorphLabel label = decompose_tag(cols[i]);
      if (std::find(labels.begin(), labels.end(), label) != labels.end())
        throw DataError("duplicate analysis '" + cols[i] + "'");
      labels.push_back(std::move(label));
    }
    if (labels.empty()) throw DataError("entry with no analyses");
    return labels;
  }

  std::unordered_map<std::string, std::vector<MorphLabel>> entries_;
  std::vector<std::pair<std::string, std::vector<MorphLabel>>> guesser_;  // file order
  bool case_fold_ = false;
};

/// Returns a copy of the corpus with every token's candidate set produced by
/// the analyser. Gold labels are untouched.
inline Corpus attach_analyses(const Corpus& c, const LexiconAnalyzer& a) {
  Corpus out = c;
  for (auto& sent : out.sentences)
    for (auto& tok : sent.tokens) tok.candidates = a.analyze(tok.surface);
  return out;
}

// ---------------------------------------------------------------------------
// Ambiguity statistics and baseline resolvers
// ---------------------------------------------------------------------------

/// Candidate-set statistics, all as percentages. A field is disengaged when
/// its denominator is zero (e.g. no ambiguous tokens).
struct AmbiguityReport {
  std::optional<double> pct_ambiguous;             // tokens with >= 2 candidates
  std::optional<double> recall_in_list_ambiguous;  // gold among candidates, ambiguous tokens
  std::optional<double> accuracy_unambiguous;      // single candidate equals gold
  std::optional<double> pct_no_analysis;           // tokens with 0 candidates
};

inline AmbiguityReport ambiguity_stats(const Corpus& c) {
  std::size_t total = 0, ambiguous = 0, ambiguous_with_gold = 0;
  std::size_t single = 0, single_correct = 0, empty = 0;
  for (const auto& sent : c.sentences) {
    for (const auto& tok : sent.tokens) {
      if (!tok.candidates)
        throw DataError("ambiguity_stats: token '" + tok.surface + "' has no candidate set");
      ++total;
      std::size_t m = tok.candidates->analyses.size();
      if (m == 0) {
        ++empty;
      } else if (m == 1) {
        ++single;
        if (tok.candidates->analyses[0] == tok.gold) ++single_correct;
      } else {
        ++ambiguous;
        if (tok.candidates->contains(tok.gold)) ++ambiguous_with_gold;
      }
    }
  }
  AmbiguityReport r;
  if (total > 0) {
    r.pct_ambiguous = 100.0 * ambiguous / total;
    r.pct_no_analysis = 100.0 * empty / total;
  }
  if (ambiguous > 0) r.recall_in_list_ambiguous = 100.0 * ambiguous_with_gold / ambiguous;
  if (single > 0) r.accuracy_unambiguous = 100.0 * single_correct / single;
  return r;
}

/// Full-tag accuracy of always picking the first candidate. Tokens with an
/// empty candidate set count as wrong.
inline double resolve_first(const Corpus& c) {
  std::size_t total = 0, correct = 0;
  for (const auto& sent : c.sentences) {
    for (const auto& tok : sent.tokens) {
      if (!tok.candidates)
        throw DataError("resolve_first: token '" + tok.surface + "' has no candidate set");
      ++total;
      if (!tok.candidates->analyses.empty() && tok.candidates->analyses.front() == tok.gold)
        ++correct;
    }
  }
  return total == 0 ? 0.0 : 100.0 * correct / total;
}

/// Mean full-tag accuracy over `trials` random resolutions (uniform pick per
/// token; empty sets wrong). Deterministic for a fixed seed.
inline double resolve_random(const Corpus& c, std::uint64_t seed, std::size_t trials) {
  if (trials < 1) throw DataError("resolve_random: trials must be >= 1");
  Rng rng(seed);
  double acc_sum = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t total = 0, correct = 0;
    for (const auto& sent : c.sentences) {
      for (const auto& tok : sent.tokens) {
        if (!tok.candidates)
          throw DataError("resolve_random: token '" + tok.surface + "' has no candidate set");
        ++total;
        const auto& cands = tok.candidates->analyses;
        if (cands.empty()) continue;
        std::size_t pick = cands.size() == 1 ? 0 : rng.below(cands.size());
        if (cands[pick] == tok.gold) ++correct;
      }
    }
    acc_sum += total == 0 ? 0.0 : 100.0 * correct / total;
  }
  return acc_sum / trials;
}

/// Aligned "key: value" rendering; disengaged fields print as "n/a".
inline std::string format_ambiguity_report(const AmbiguityReport& r) {
  auto fmt = [](const std::optional<double>& v) { return v ? fixed(*v, 2) : std::string("n/a"); };
  std::string out;
  out += "pct_ambiguous:            " + fmt(r.pct_ambiguous) + "\n";
  out += "recall_in_list_ambiguous: " + fmt(r.recall_in_list_ambiguous) + "\n";
  out += "accuracy_unambiguous:     " + fmt(r.accuracy_unambiguous) + "\n";
  out += "pct_no_analysis:          " + fmt(r.pct_no_analysis) + "\n";
  return out;
}

}  // namespace morphtag
