// Copyright 2026 The itemidx Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ITEMIDX_TOKENIZATION_H_
#define ITEMIDX_TOKENIZATION_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace itemidx {

using TokenId = std::uint32_t;

enum class TokenKind { kBase, kExtra };

struct Token {
  TokenKind kind = TokenKind::kBase;
  TokenId id = 0;
  // Piece for base tokens, label (without brackets) for extra tokens.
  std::string text;

  // Extra tokens render as "<label>", base tokens as the bare piece.
  std::string Render() const;
};

// Base subword pieces plus extra (out-of-vocabulary) tokens. Ids are dense
// and assigned in registration order; both kinds share one id space.
class TokenRegistry {
 public:
  // Idempotent. Throws std::invalid_argument on an empty label or one that
  // contains whitespace or angle brackets.
  const Token& RegisterExtra(std::string_view label);
  // Idempotent. Throws std::invalid_argument for an empty piece, a piece
  // starting with '<', or one containing whitespace.
  const Token& RegisterBase(std::string_view piece);

  // Parses a rendered token: "<label>" is extra, anything else base.
  const Token& RegisterRendered(std::string_view rendered);

  const Token& token(TokenId id) const { return tokens_.at(id); }
  const Token* FindExtra(std::string_view label) const;
  const Token* FindBase(std::string_view piece) const;
  std::size_t size() const { return tokens_.size(); }

  // Extra tokens in id order.
  std::vector<Token> extras() const;

  std::string Render(TokenId id) const { return token(id).Render(); }
  std::string Render(const std::vector<TokenId>& ids,
                     std::string_view sep = " ") const;

 private:
  std::vector<Token> tokens_;
  std::map<std::string, TokenId, std::less<>> base_;
  std::map<std::string, TokenId, std::less<>> extras_;
};

// Unigram piece table: piece -> log-probability.
class SegmenterModel {
 public:
  SegmenterModel() = default;
  explicit SegmenterModel(std::map<std::string, double, std::less<>> pieces);

  const std::map<std::string, double, std::less<>>& pieces() const {
    return pieces_;
  }
  const double* Score(std::string_view piece) const;
  bool Contains(std::string_view piece) const {
    return Score(piece) != nullptr;
  }
  std::size_t size() const { return pieces_.size(); }
  std::size_t max_piece_bytes() const { return max_piece_bytes_; }

 private:
  std::map<std::string, double, std::less<>> pieces_;
  std::size_t max_piece_bytes_ = 0;
};

// TSV `piece<TAB>score`. Duplicate pieces: the last score wins and a
// warning goes to stderr. Throws ParseError on a non-numeric score.
SegmenterModel LoadUnigramModel(const std::filesystem::path& path);
SegmenterModel ParseUnigramModel(std::string_view text);

// Maximum-score segmentation (Viterbi over the piece lattice). Among equal
// scores the segmentation whose first differing piece is longer wins.
// Cuts only at UTF-8 character boundaries. Throws CoverageError with the
// byte offset of the furthest reachable position when no segmentation
// exists, std::invalid_argument on empty text.
std::vector<std::string> Segment(const SegmenterModel& model,
                                 std::string_view text);

// Repeated longest-prefix match, ignoring scores.
std::vector<std::string> SegmentGreedy(const SegmenterModel& model,
                                       std::string_view text);

double SegmentationScore(const SegmenterModel& model,
                         const std::vector<std::string>& pieces);

// SentencePiece-style whitespace escaping: a leading U+2581 and every space
// replaced by U+2581. Used for free-text inputs such as titles.
std::string EscapeWhitespace(std::string_view text);

}  // namespace itemidx

#endif  // ITEMIDX_TOKENIZATION_H_
