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

#ifndef ITEMIDX_IO_H_
#define ITEMIDX_IO_H_

#include <filesystem>
#include <iosfwd>
#include <memory>

#include "itemidx/corpus.h"
#include "itemidx/indexing.h"
#include "json.hpp"

namespace itemidx {

nlohmann::json CorpusToJson(const Corpus& corpus);
Corpus CorpusFromJson(const nlohmann::json& archive);

nlohmann::json SplitToJson(const SplitCorpus& split);
SplitCorpus SplitFromJson(const nlohmann::json& archive);

// `item<TAB>tok1 tok2 ...`, one line per item in assignment order.
void WriteIdMap(const IndexAssignment& assignment, std::ostream& out);
// Parses an ID map into a fresh registry; scheme is kUnknown. Throws
// ParseError on malformed lines. Duplicate IDs load as-is so they can be
// verified; a repeated item is a parse error.
IndexAssignment ReadIdMap(std::istream& in);
IndexAssignment LoadIdMap(const std::filesystem::path& path);

// "#init=random" followed by one rendered extra token per line, in
// registration order.
void WriteVocabAdditions(const TokenRegistry& registry, std::ostream& out);

}  // namespace itemidx

#endif  // ITEMIDX_IO_H_
