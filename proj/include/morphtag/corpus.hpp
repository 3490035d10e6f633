#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "morphtag/common.hpp"

namespace morphtag {

// ---------------------------------------------------------------------------
// Morphological labels
// ---------------------------------------------------------------------------

/// A full morphological tag and its decomposition into category-value pairs.
/// Pairs are kept in canonical order: POS first, remaining categories in
/// ascending lexicographic order. `full_tag` is the canonical serialization
/// "CAT=Val|CAT=Val..."; the empty label serializes as "_".
struct MorphLabel {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string full_tag = "_";

  bool empty() const { return pairs.empty(); }

  std::optional<std::string> value_of(const std::string& category) const {
    for (const auto& [c, v] : pairs)
      if (c == category) return v;
    return std::nullopt;
  }

  bool operator==(const MorphLabel& o) const { return full_tag == o.full_tag; }
  bool operator!=(const MorphLabel& o) const { return !(*this == o); }
  bool operator<(const MorphLabel& o) const { return full_tag < o.full_tag; }

  /// Canonicalizes (reorders) and validates the given pairs.
  static MorphLabel from_pairs(std::vector<std::pair<std::string, std::string>> pairs) {
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
      bool ap = a.first == "POS", bp = b.first == "POS";
      if (ap != bp) return ap;
      return a.first < b.first;
    });
    for (std::size_t i = 1; i < pairs.size(); ++i)
      if (pairs[i].first == pairs[i - 1].first)
        throw DataError("duplicate category '" + pairs[i].first + "' in morphological label");
    MorphLabel label;
    if (!pairs.empty()) {
      std::vector<std::string> parts;
      parts.reserve(pairs.size());
      for (const auto& [c, v] : pairs) parts.push_back(c + "=" + v);
      label.full_tag = join(parts, "|");
    }
    label.pairs = std::move(pairs);
    return label;
  }
};

/// Parses "CAT=Val|..." (pairs in any order) or "_" into a canonical label.
inline MorphLabel decompose_tag(const std::string& tag_string) {
  if (tag_string == "_") return MorphLabel{};
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const std::string& part : split(tag_string, '|')) {
    std::size_t eq = part.find('=');
    if (eq == std::string::npos)
      throw DataError("missing '=' in category-value pair '" + part + "'");
    pairs.emplace_back(part.substr(0, eq), part.substr(eq + 1));
  }
  return MorphLabel::from_pairs(std::move(pairs));
}

// ---------------------------------------------------------------------------
// Analyser candidates
// ---------------------------------------------------------------------------

/// The candidate analyses a morphological analyser produced for one token,
/// in the analyser's emission order. May be empty.
struct AnalysisSet {
  std::vector<MorphLabel> analyses;
  std::string source;

  bool contains(const MorphLabel& label) const {
    return std::find(analyses.begin(), analyses.end(), label) != analyses.end();
  }
  bool operator==(const AnalysisSet& o) const { return analyses == o.analyses; }
};

// ---------------------------------------------------------------------------
// Corpus containers
// ---------------------------------------------------------------------------

struct Token {
  std::string surface;
  MorphLabel gold;
  std::optional<AnalysisSet> candidates;
};

struct Sentence {
  std::string id;
  std::vector<std::string> comments;  // raw "#..." lines, in order
  std::vector<Token> tokens;
};

struct Corpus {
  std::string name;
  std::vector<Sentence> sentences;

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.tokens.size();
    return n;
  }
};

struct CorpusStats {
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::size_t types = 0;  // distinct surface forms, case-sensitive
  std::size_t tags = 0;   // distinct gold full tags
};

inline CorpusStats corpus_stats(const Corpus& c) {
  CorpusStats st;
  std::unordered_set<std::string> types, tags;
  st.sentences = c.sentences.size();
  for (const auto& s : c.sentences)
    for (const auto& t : s.tokens) {
      ++st.tokens;
      types.insert(t.surface);
      tags.insert(t.gold.full_tag);
    }
  st.types = types.size();
  st.tags = tags.size();
  return st;
}

// ---------------------------------------------------------------------------
// CoNLL-U parsing and serialization
// ---------------------------------------------------------------------------

namespace detail {

// Candidate sets ride in the MISC column as "MA=<a1>;<a2>;..." where each
// analysis is its full tag with '|' replaced by ',' (MISC items are
// '|'-separated). "_" stands for the empty analysis, a bare "MA=" for an
// empty candidate list.
inline std::string encode_candidates(const AnalysisSet& set) {
  std::vector<std::string> parts;
  parts.reserve(set.analyses.size());
  for (const auto& a : set.analyses) {
    std::string t = a.full_tag;
    std::replace(t.begin(), t.end(), '|', ',');
    parts.push_back(t);
  }
  return "MA=" + join(parts, ";");
}

inline AnalysisSet decode_candidates(const std::string& value) {
  AnalysisSet set;
  set.source = "misc";
  if (value.empty()) return set;
  for (const std::string& part : split(value, ';')) {
    std::string t = part;
    std::replace(t.begin(), t.end(), ',', '|');
    MorphLabel a = decompose_tag(t);
    if (set.contains(a)) throw DataError("duplicate candidate analysis '" + t + "'");
    set.analyses.push_back(std::move(a));
  }
  return set;
}

}  // namespace detail

/// Parses CoNLL-U text (10 tab-separated columns, blank-line sentence
/// separators, '#' comments). Multiword-token ranges and empty nodes are
/// skipped. UPOS becomes the POS category, FEATS the remaining pairs.
/// Candidate analyses are picked up from MISC "MA=..." items when present.
inline Corpus parse_conllu(const std::string& text, const std::string& name = "") {
  Corpus corpus;
  corpus.name = name;

  Sentence current;
  std::size_t line_no = 0;
  auto flush = [&]() {
    if (!current.tokens.empty()) {
      if (current.id.empty()) current.id = "s" + std::to_string(corpus.sentences.size() + 1);
      corpus.sentences.push_back(std::move(current));
    }
    current = Sentence{};
  };

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    bool last = end == text.size();
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    if (line.empty()) {
      flush();
      if (last) break;
      continue;
    }
    if (line[0] == '#') {
      current.comments.push_back(line);
      const std::string key = "# sent_id = ";
      if (line.rfind(key, 0) == 0) current.id = line.substr(key.size());
      if (last) break;
      continue;
    }

    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 10)
      throw DataError("line " + std::to_string(line_no) + ": expected 10 columns, got " +
                      std::to_string(cols.size()));
    const std::string& id = cols[0];
    if (id.find('-') != std::string::npos || id.find('.') != std::string::npos) {
      if (last) break;
      continue;  // multiword range or empty node
    }

    Token tok;
    tok.surface = cols[1];
    if (tok.surface.empty())
      throw DataError("line " + std::to_string(line_no) + ": empty FORM");

    std::vector<std::pair<std::string, std::string>> pairs;
    if (cols[3] != "_") pairs.emplace_back("POS", cols[3]);
    if (cols[5] != "_") {
      for (const std::string& part : split(cols[5], '|')) {
        std::size_t eq = part.find('=');
        if (eq == std::string::npos)
          throw DataError("line " + std::to_string(line_no) + ": malformed FEATS pair '" + part + "'");
        pairs.emplace_back(part.substr(0, eq), part.substr(eq + 1));
      }
    }
    try {
      tok.gold = MorphLabel::from_pairs(std::move(pairs));
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }

    if (cols[9] != "_") {
      for (const std::string& item : split(cols[9], '|')) {
        if (item.rfind("MA=", 0) == 0) {
          try {
            tok.candidates = detail::decode_candidates(item.substr(3));
          } catch (const DataError& e) {
            throw DataError("line " + std::to_string(line_no) + ": " + e.what());
          }
          break;
        }
      }
    }

    current.tokens.push_back(std::move(tok));
    if (last) break;
  }
  flush();
  return corpus;
}

/// Serializes a corpus back to CoNLL-U (LF line endings, "_" for empty
/// fields). The POS pair goes to UPOS, the remaining pairs to FEATS;
/// candidate sets, when attached, are written to MISC.
inline std::string serialize_conllu(const Corpus& corpus) {
  std::string out;
  for (const auto& sent : corpus.sentences) {
    for (const auto& c : sent.comments) {
      out += c;
      out += '\n';
    }
    std::size_t idx = 0;
    for (const auto& tok : sent.tokens) {
      std::string upos = "_", feats = "_";
      std::vector<std::string> featparts;
      for (const auto& [cat, val] : tok.gold.pairs) {
        if (cat == "POS")
          upos = val;
        else
          featparts.push_back(cat + "=" + val);
      }
      if (!featparts.empty()) feats = join(featparts, "|");
      std::string misc = tok.candidates ? detail::encode_candidates(*tok.candidates) : "_";
      out += std::to_string(++idx) + "\t" + tok.surface + "\t_\t" + upos + "\t_\t" + feats +
             "\t_\t_\t_\t" + misc + "\n";
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Splitting
// ---------------------------------------------------------------------------

/// Sentence-wise split after a seeded shuffle. Sizes are floor(n*r1),
/// floor(n*r2) and the remainder; the output multiset equals the input.
inline std::tuple<Corpus, Corpus, Corpus> split_corpus(const Corpus& c, double r1, double r2,
                                                       double r3, std::uint64_t seed) {
  if (r1 < 0 || r2 < 0 || r3 < 0 || std::abs(r1 + r2 + r3 - 1.0) > 1e-9)
    throw DataError("split ratios must be non-negative and sum to 1");
  std::vector<std::size_t> order(c.sentences.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);

  std::size_t n = order.size();
  std::size_t n1 = static_cast<std::size_t>(std::floor(n * r1));
  std::size_t n2 = static_cast<std::size_t>(std::floor(n * r2));
  Corpus a{c.name + ".train", {}}, b{c.name + ".dev", {}}, d{c.name + ".test", {}};
  for (std::size_t i = 0; i < n; ++i) {
    const Sentence& s = c.sentences[order[i]];
    if (i < n1)
      a.sentences.push_back(s);
    else if (i < n1 + n2)
      b.sentences.push_back(s);
    else
      d.sentences.push_back(s);
  }
  return {std::move(a), std::move(b), std::move(d)};
}

// ---------------------------------------------------------------------------
// Vocabularies
// ---------------------------------------------------------------------------

/// Dense string<->index bijection with optional reserved entries at the
/// lowest indices and per-item frequency counts. Frozen vocabs reject
/// insertion of new items.
class Vocab {
 public:
  Vocab() = default;
  explicit Vocab(std::vector<std::string> reserved) {
    for (auto& r : reserved) {
      index_.emplace(r, items_.size());
      items_.push_back(std::move(r));
      counts_.push_back(0);
    }
    reserved_ = items_.size();
  }

  /// Inserts (or bumps the count of) an item; returns its index.
  std::size_t add(const std::string& item) {
    auto it = index_.find(item);
    if (it != index_.end()) {
      ++counts_[it->second];
      return it->second;
    }
    if (frozen_) throw Error("insertion into frozen vocab: '" + item + "'");
    std::size_t idx = items_.size();
    index_.emplace(item, idx);
    items_.push_back(item);
    counts_.push_back(1);
    return idx;
  }

  std::optional<std::size_t> find(const std::string& item) const {
    auto it = index_.find(item);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& item(std::size_t idx) const { return items_.at(idx); }
  std::uint64_t count(const std::string& item) const {
    auto it = index_.find(item);
    return it == index_.end() ? 0 : counts_[it->second];
  }
  std::uint64_t count_at(std::size_t idx) const { return counts_.at(idx); }
  void set_count_at(std::size_t idx, std::uint64_t n) { counts_.at(idx) = n; }

  std::size_t size() const { return items_.size(); }
  std::size_t reserved() const { return reserved_; }
  bool frozen() const { return frozen_; }
  void freeze() { frozen_ = true; }
  const std::vector<std::string>& items() const { return items_; }

 private:
  std::vector<std::string> items_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::uint64_t> counts_;
  std::size_t reserved_ = 0;
  bool frozen_ = false;
};

// Reserved-index conventions.
inline constexpr std::size_t kUnkIndex = 0;  // word, char and analysis vocabs
inline constexpr std::size_t kPadIndex = 1;  // char vocab
inline constexpr std::size_t kBosIndex = 0;  // catval vocab
inline constexpr std::size_t kEosIndex = 1;  // catval vocab

inline const std::string kUnkItem = "<unk>";
inline const std::string kPadItem = "<pad>";
inline const std::string kBosItem = "<bos>";
inline const std::string kEosItem = "<eos>";

struct Vocabs {
  Vocab words;       // reserved: <unk>
  Vocab chars;       // reserved: <unk>, <pad>
  Vocab tags;        // all training full tags
  Vocab catvals;     // reserved: <bos>, <eos>; gold "CAT=Val" pairs
  Vocab categories;  // pre-fixed order: POS first, rest lexicographic
};

/// Builds all vocabularies from a training corpus and freezes them. The
/// category vocab fixes the category order used by category-based
/// augmentation and Seq target serialization; it covers gold labels and,
/// when candidates are attached, the analyser's categories as well.
inline Vocabs build_vocabs(const Corpus& train) {
  if (train.sentences.empty()) throw DataError("cannot build vocabularies from an empty corpus");

  Vocabs v;
  v.words = Vocab({kUnkItem});
  v.chars = Vocab({kUnkItem, kPadItem});
  v.catvals = Vocab({kBosItem, kEosItem});

  std::set<std::string> categories;
  for (const auto& sent : train.sentences) {
    for (const auto& tok : sent.tokens) {
      v.words.add(tok.surface);
      for (const std::string& ch : utf8_chars(tok.surface)) v.chars.add(ch);
      v.tags.add(tok.gold.full_tag);
      for (const auto& [cat, val] : tok.gold.pairs) {
        v.catvals.add(cat + "=" + val);
        categories.insert(cat);
      }
      if (tok.candidates)
        for (const auto& a : tok.candidates->analyses)
          for (const auto& [cat, val] : a.pairs) categories.insert(cat);
    }
  }
  if (categories.count("POS")) v.categories.add("POS");
  for (const auto& cat : categories)
    if (cat != "POS") v.categories.add(cat);

  v.words.freeze();
  v.chars.freeze();
  v.tags.freeze();
  v.catvals.freeze();
  v.categories.freeze();
  return v;
}

}  // namespace morphtag
