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

#include "itemidx/io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include "itemidx/error.h"

namespace itemidx {

using nlohmann::json;

json CorpusToJson(const Corpus& corpus) {
  json archive;
  archive["users"] = corpus.users();
  archive["items"] = corpus.items();
  json sequences = json::object();
  for (const std::string& user : corpus.users()) {
    json events = json::array();
    for (const Event& e : corpus.sequence(user)) {
      events.push_back(json::array({e.item, e.timestamp}));
    }
    sequences[user] = std::move(events);
  }
  archive["sequences"] = std::move(sequences);
  json metadata = json::object();
  for (const auto& [item, meta] : corpus.metadata()) {
    json row;
    row["title"] = meta.title ? json(*meta.title) : json(nullptr);
    row["categories"] = meta.category_paths;
    metadata[item] = std::move(row);
  }
  archive["metadata"] = std::move(metadata);
  return archive;
}

Corpus CorpusFromJson(const json& archive) {
  try {
    std::map<std::string, std::vector<Event>, std::less<>> sequences;
    for (const auto& [user, events] : archive.at("sequences").items()) {
      auto& seq = sequences[user];
      for (const auto& e : events) {
        seq.push_back({e.at(0).get<std::string>(), e.at(1).get<std::int64_t>()});
      }
    }
    Corpus corpus = Corpus::FromParts(
        archive.at("users").get<std::vector<std::string>>(),
        std::move(sequences), archive.at("items").get<std::vector<std::string>>());
    std::map<std::string, ItemMeta, std::less<>> metadata;
    if (archive.contains("metadata")) {
      for (const auto& [item, row] : archive.at("metadata").items()) {
        ItemMeta meta;
        if (row.contains("title") && !row["title"].is_null()) {
          meta.title = row["title"].get<std::string>();
        }
        if (row.contains("categories")) {
          meta.category_paths =
              row["categories"].get<std::vector<std::vector<std::string>>>();
        }
        metadata[item] = std::move(meta);
      }
    }
    corpus.SetMetadata(std::move(metadata));
    return corpus;
  } catch (const json::exception& e) {
    throw ParseError(std::string("corpus archive: ") + e.what(), 0);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("corpus archive: ") + e.what(), 0);
  }
}

json SplitToJson(const SplitCorpus& split) {
  json archive;
  archive["users"] = split.users;
  json train = json::object();
  for (const auto& [user, items] : split.train) train[user] = items;
  archive["train"] = std::move(train);
  json validation = json::object();
  for (const auto& [user, item] : split.validation_target) {
    validation[user] = item;
  }
  archive["validation_target"] = std::move(validation);
  json test = json::object();
  for (const auto& [user, item] : split.test_target) test[user] = item;
  archive["test_target"] = std::move(test);
  return archive;
}

SplitCorpus SplitFromJson(const json& archive) {
  try {
    SplitCorpus split;
    split.users = archive.at("users").get<std::vector<std::string>>();
    for (const auto& [user, items] : archive.at("train").items()) {
      split.train[user] = items.get<std::vector<std::string>>();
    }
    for (const auto& [user, item] : archive.at("validation_target").items()) {
      split.validation_target[user] = item.get<std::string>();
    }
    for (const auto& [user, item] : archive.at("test_target").items()) {
      split.test_target[user] = item.get<std::string>();
    }
    return split;
  } catch (const json::exception& e) {
    throw ParseError(std::string("split archive: ") + e.what(), 0);
  }
}

void WriteIdMap(const IndexAssignment& assignment, std::ostream& out) {
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    out << assignment.items[i] << '\t' << assignment.Render(i) << '\n';
  }
}

IndexAssignment ReadIdMap(std::istream& in) {
  IndexAssignment assignment;
  assignment.registry = std::make_shared<TokenRegistry>();
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError("expected item<TAB>tokens", line_no);
    }
    std::string item = line.substr(0, tab);
    if (!seen.insert(item).second) {
      throw ParseError("item " + item + " listed twice", line_no);
    }
    std::vector<TokenId> id;
    std::string_view rest(line);
    rest.remove_prefix(tab + 1);
    while (!rest.empty()) {
      const std::size_t space = rest.find(' ');
      std::string_view tok = rest.substr(0, space);
      if (tok.empty()) throw ParseError("empty token", line_no);
      try {
        id.push_back(assignment.registry->RegisterRendered(tok).id);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no);
      }
      if (space == std::string_view::npos) break;
      rest.remove_prefix(space + 1);
    }
    if (id.empty()) throw ParseError("item " + item + " has no tokens", line_no);
    assignment.items.push_back(std::move(item));
    assignment.ids.push_back(std::move(id));
  }
  return assignment;
}

IndexAssignment LoadIdMap(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return ReadIdMap(in);
}

void WriteVocabAdditions(const TokenRegistry& registry, std::ostream& out) {
  out << "#init=random\n";
  for (const Token& t : registry.extras()) out << t.Render() << '\n';
}

}  // namespace itemidx
