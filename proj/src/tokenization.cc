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

#include "itemidx/tokenization.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "itemidx/error.h"

namespace itemidx {
namespace {

bool HasWhitespace(std::string_view s) {
  return s.find_first_of(" \t\r\n") != std::string_view::npos;
}

bool IsContinuationByte(char c) {
  return (static_cast<unsigned char>(c) & 0xC0) == 0x80;
}

constexpr std::string_view kSpaceMarker = "\xE2\x96\x81";  // U+2581

}  // namespace

std::string Token::Render() const {
  return kind == TokenKind::kExtra ? "<" + text + ">" : text;
}

const Token& TokenRegistry::RegisterExtra(std::string_view label) {
  if (label.empty()) throw std::invalid_argument("empty extra-token label");
  if (auto it = extras_.find(label); it != extras_.end()) {
    return tokens_[it->second];
  }
  if (HasWhitespace(label) ||
      label.find_first_of("<>") != std::string_view::npos) {
    throw std::invalid_argument("invalid extra-token label \"" +
                                std::string(label) + "\"");
  }
  const auto id = static_cast<TokenId>(tokens_.size());
  tokens_.push_back({TokenKind::kExtra, id, std::string(label)});
  extras_.emplace(std::string(label), id);
  return tokens_.back();
}

const Token& TokenRegistry::RegisterBase(std::string_view piece) {
  if (auto it = base_.find(piece); it != base_.end()) {
    return tokens_[it->second];
  }
  if (piece.empty() || piece.front() == '<' || HasWhitespace(piece)) {
    throw std::invalid_argument("invalid base piece \"" + std::string(piece) +
                                "\"");
  }
  const auto id = static_cast<TokenId>(tokens_.size());
  tokens_.push_back({TokenKind::kBase, id, std::string(piece)});
  base_.emplace(std::string(piece), id);
  return tokens_.back();
}

const Token& TokenRegistry::RegisterRendered(std::string_view rendered) {
  if (rendered.size() >= 3 && rendered.front() == '<' &&
      rendered.back() == '>') {
    return RegisterExtra(rendered.substr(1, rendered.size() - 2));
  }
  return RegisterBase(rendered);
}

const Token* TokenRegistry::FindExtra(std::string_view label) const {
  auto it = extras_.find(label);
  return it == extras_.end() ? nullptr : &tokens_[it->second];
}

const Token* TokenRegistry::FindBase(std::string_view piece) const {
  auto it = base_.find(piece);
  return it == base_.end() ? nullptr : &tokens_[it->second];
}

std::vector<Token> TokenRegistry::extras() const {
  std::vector<Token> out;
  for (const Token& t : tokens_) {
    if (t.kind == TokenKind::kExtra) out.push_back(t);
  }
  return out;
}

std::string TokenRegistry::Render(const std::vector<TokenId>& ids,
                                  std::string_view sep) const {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += sep;
    out += Render(ids[i]);
  }
  return out;
}

SegmenterModel::SegmenterModel(std::map<std::string, double, std::less<>> pieces)
    : pieces_(std::move(pieces)) {
  for (const auto& [piece, score] : pieces_) {
    if (piece.empty()) throw std::invalid_argument("empty piece in model");
    if (!std::isfinite(score)) {
      throw std::invalid_argument("non-finite score for piece " + piece);
    }
    max_piece_bytes_ = std::max(max_piece_bytes_, piece.size());
  }
}

const double* SegmenterModel::Score(std::string_view piece) const {
  auto it = pieces_.find(piece);
  return it == pieces_.end() ? nullptr : &it->second;
}

SegmenterModel ParseUnigramModel(std::string_view text) {
  std::map<std::string, double, std::less<>> pieces;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const std::size_t tab = line.rfind('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw ParseError("expected piece<TAB>score", line_no);
    }
    std::string_view piece = line.substr(0, tab);
    std::string_view score_text = line.substr(tab + 1);
    double score = 0.0;
    auto [ptr, ec] = std::from_chars(
        score_text.data(), score_text.data() + score_text.size(), score);
    if (ec != std::errc() || ptr != score_text.data() + score_text.size() ||
        !std::isfinite(score)) {
      throw ParseError("non-numeric score \"" + std::string(score_text) + "\"",
                       line_no);
    }
    auto [it, inserted] = pieces.insert_or_assign(std::string(piece), score);
    if (!inserted) {
      std::cerr << "warning: line " << line_no << ": duplicate piece \""
                << piece << "\", keeping last score\n";
    }
  }
  return SegmenterModel(std::move(pieces));
}

SegmenterModel LoadUnigramModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseUnigramModel(buffer.str());
}

std::vector<std::string> Segment(const SegmenterModel& model,
                                 std::string_view text) {
  if (text.empty()) throw std::invalid_argument("cannot segment empty text");
  const std::size_t n = text.size();
  constexpr double kNone = -std::numeric_limits<double>::infinity();

  // best[i]: best score of text[i..n); next[i]: end of the first piece.
  // Solving over suffixes lets the longest-first scan implement the
  // first-differing-piece tie rule directly.
  std::vector<double> best(n + 1, kNone);
  std::vector<std::size_t> next(n + 1, 0);
  best[n] = 0.0;
  const std::size_t max_len = model.max_piece_bytes();
  for (std::size_t i = n; i-- > 0;) {
    if (IsContinuationByte(text[i])) continue;
    const std::size_t longest = std::min(max_len, n - i);
    for (std::size_t len = longest; len >= 1; --len) {
      const std::size_t j = i + len;
      if (best[j] == kNone) continue;
      if (j < n && IsContinuationByte(text[j])) continue;
      const double* score = model.Score(text.substr(i, len));
      if (!score) continue;
      const double total = *score + best[j];
      if (total > best[i]) {
        best[i] = total;
        next[i] = j;
      }
    }
  }

  if (best[0] == kNone) {
    // Report the furthest position reachable from the start.
    std::vector<bool> reach(n + 1, false);
    reach[0] = true;
    std::size_t furthest = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i]) continue;
      furthest = i;
      for (std::size_t len = 1; len <= std::min(max_len, n - i); ++len) {
        if (model.Contains(text.substr(i, len))) reach[i + len] = true;
      }
    }
    throw CoverageError(std::string(text), furthest);
  }

  std::vector<std::string> pieces;
  for (std::size_t i = 0; i < n; i = next[i]) {
    pieces.emplace_back(text.substr(i, next[i] - i));
  }
  return pieces;
}

std::vector<std::string> SegmentGreedy(const SegmenterModel& model,
                                       std::string_view text) {
  if (text.empty()) throw std::invalid_argument("cannot segment empty text");
  std::vector<std::string> pieces;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t len = std::min(model.max_piece_bytes(), text.size() - i);
    for (; len >= 1; --len) {
      if (model.Contains(text.substr(i, len))) break;
    }
    if (len == 0) throw CoverageError(std::string(text), i);
    pieces.emplace_back(text.substr(i, len));
    i += len;
  }
  return pieces;
}

double SegmentationScore(const SegmenterModel& model,
                         const std::vector<std::string>& pieces) {
  double total = 0.0;
  for (const std::string& p : pieces) {
    const double* score = model.Score(p);
    if (!score) throw std::invalid_argument("unknown piece " + p);
    total += *score;
  }
  return total;
}

std::string EscapeWhitespace(std::string_view text) {
  std::string out(kSpaceMarker);
  for (char c : text) {
    if (c == ' ') {
      out += kSpaceMarker;
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace itemidx
