#pragma once

// Shared helpers for the test suites: small corpora, random label
// generators, and brute-force oracles kept independent of the library
// implementation paths they check.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "morphtag/common.hpp"
#include "morphtag/corpus.hpp"

namespace testutil {

using morphtag::Corpus;
using morphtag::MorphLabel;
using morphtag::Rng;
using morphtag::Sentence;
using morphtag::Token;

inline MorphLabel label(std::vector<std::pair<std::string, std::string>> pairs) {
  return MorphLabel::from_pairs(std::move(pairs));
}

inline Token token(std::string surface, MorphLabel gold) {
  return Token{std::move(surface), std::move(gold), std::nullopt};
}

inline Sentence sentence(std::string id, std::vector<Token> tokens) {
  return Sentence{std::move(id), {}, std::move(tokens)};
}

inline Corpus corpus(std::string name, std::vector<Sentence> sentences) {
  return Corpus{std::move(name), std::move(sentences)};
}

// Random canonical label over a small finite alphabet.
inline MorphLabel random_label(Rng& rng) {
  static const std::vector<std::string> cats = {"POS", "Case", "Number", "Tense", "Degree"};
  static const std::vector<std::string> vals = {"A", "B", "C", "D", "E", "F"};
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& c : cats)
    if (rng.bernoulli(0.5)) pairs.emplace_back(c, vals[rng.below(vals.size())]);
  return MorphLabel::from_pairs(std::move(pairs));
}

// A corpus of `n_sentences` sentences whose tokens have word-determined tags
// drawn from a tiny closed vocabulary: word w<i> always carries tag
// tagset[i % tagset.size()].
inline Corpus word_determined_corpus(std::size_t n_sentences, std::size_t n_words,
                                     const std::vector<MorphLabel>& tagset, Rng& rng,
                                     std::size_t min_len = 5, std::size_t max_len = 9) {
  Corpus c{"synthetic", {}};
  for (std::size_t s = 0; s < n_sentences; ++s) {
    Sentence sent;
    sent.id = "s" + std::to_string(s + 1);
    std::size_t len = min_len + rng.below(max_len - min_len + 1);
    for (std::size_t i = 0; i < len; ++i) {
      std::size_t w = rng.below(n_words);
      sent.tokens.push_back(token("w" + std::to_string(w), tagset[w % tagset.size()]));
    }
    c.sentences.push_back(std::move(sent));
  }
  return c;
}

}  // namespace testutil
