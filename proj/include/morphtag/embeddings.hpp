#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "morphtag/common.hpp"
#include "morphtag/corpus.hpp"
#include "morphtag/numcore.hpp"

namespace morphtag {

/// Pre-trained word vectors loaded from the textual format
/// "<count> <dim>\ntoken v1 ... v_dim\n...". Stored keys keep the file's
/// case; the vectors are expected to be uncased, so queries should be
/// lowercased by the caller.
struct EmbeddingTable {
  std::size_t dim = 0;
  std::unordered_map<std::string, std::vector<double>> vectors;
  std::size_t duplicate_lines = 0;  // kept-first duplicates, for warnings

  const std::vector<double>* find_lower(const std::string& query) const {
    auto it = vectors.find(ascii_lower(query));
    return it == vectors.end() ? nullptr : &it->second;
  }
};

inline EmbeddingTable parse_pretrained(const std::string& text) {
  EmbeddingTable table;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw DataError("pretrained vectors: empty file");
  std::size_t count = 0;
  {
    std::istringstream head(line);
    if (!(head >> count >> table.dim) || table.dim == 0)
      throw DataError("pretrained vectors: malformed header line");
    std::string extra;
    if (head >> extra) throw DataError("pretrained vectors: malformed header line");
  }
  std::size_t line_no = 1, entries = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string token;
    ls >> token;
    std::vector<double> vec(table.dim);
    for (std::size_t k = 0; k < table.dim; ++k)
      if (!(ls >> vec[k]))
        throw DataError("pretrained vectors line " + std::to_string(line_no) +
                        ": expected " + std::to_string(table.dim) + " values");
    double trailing;
    if (ls >> trailing)
      throw DataError("pretrained vectors line " + std::to_string(line_no) +
                      ": expected " + std::to_string(table.dim) + " values");
    ++entries;
    if (!table.vectors.emplace(token, std::move(vec)).second) ++table.duplicate_lines;
  }
  if (entries != count)
    throw DataError("pretrained vectors: header declares " + std::to_string(count) +
                    " entries, file has " + std::to_string(entries));
  return table;
}

inline EmbeddingTable load_pretrained(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open pretrained vectors '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_pretrained(text);
}

/// Builds the |V| x dim word-embedding matrix: every row starts Xavier
/// random (bound sqrt(3/dim)), then rows whose lowercased word appears in
/// the pre-trained table are overwritten. All rows, the UNK row included,
/// stay trainable. Returns the matrix and the pre-trained coverage count.
inline std::pair<Tensor, std::size_t> init_word_embeddings(const Vocab& words,
                                                           const EmbeddingTable* pretrained,
                                                           std::size_t word_dim, Rng& rng) {
  if (pretrained && pretrained->dim != word_dim)
    throw DataError("pretrained vector dimension " + std::to_string(pretrained->dim) +
                    " does not match word embedding dimension " + std::to_string(word_dim));
  Tensor emb = Tensor::zeros({words.size(), word_dim});
  double a = std::sqrt(3.0 / static_cast<double>(word_dim));
  for (double& v : emb.data) v = rng.uniform(-a, a);
  std::size_t covered = 0;
  if (pretrained) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i == kUnkIndex) continue;
      if (const std::vector<double>* vec = pretrained->find_lower(words.item(i))) {
        std::copy(vec->begin(), vec->end(), emb.data.begin() + i * word_dim);
        ++covered;
      }
    }
  }
  return {std::move(emb), covered};
}

}  // namespace morphtag
