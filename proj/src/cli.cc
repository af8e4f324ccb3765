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

#include "itemidx/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "itemidx/analysis.h"
#include "itemidx/corpus.h"
#include "itemidx/error.h"
#include "itemidx/indexing.h"
#include "itemidx/io.h"
#include "itemidx/tokenization.h"
#include "itemidx/trie.h"
#include "json.hpp"

namespace itemidx {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::string_view kCorpusFile = "corpus.json";
constexpr std::string_view kSplitFile = "split.json";
// Printed by `trie` when the prefix is itself a complete ID. Cannot clash
// with a token: extra labels are non-empty and base pieces never start
// with '<'.
constexpr std::string_view kEndOfId = "<>";

// Bad flag values; reported with exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json ReadJson(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

Corpus ReadCorpus(const fs::path& dir) {
  return CorpusFromJson(ReadJson(dir / kCorpusFile));
}

// Fully qualified parameter names and the namespace a bare name maps to.
const std::map<std::string, std::string>& KnownParams() {
  static const std::map<std::string, std::string> known = {
      {"ordering", "sid.ordering"}, {"N", "cid.N"},
      {"k", "cid.k"},               {"mode", "semid.mode"},
      {"variant", "hid.variant"},   {"order", "hid.order"},
  };
  return known;
}

std::map<std::string, std::string> ParseParams(
    const std::vector<std::string>& raw) {
  std::map<std::string, std::string> params;
  for (const std::string& arg : raw) {
    std::stringstream parts(arg);
    std::string kv;
    while (std::getline(parts, kv, ',')) {
      if (kv.empty()) continue;
      const std::size_t eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw UsageError("parameter \"" + kv + "\" is not KEY=VAL");
      }
      std::string key = kv.substr(0, eq);
      const std::string value = kv.substr(eq + 1);
      const auto& known = KnownParams();
      if (auto it = known.find(key); it != known.end()) {
        key = it->second;
      } else if (std::none_of(known.begin(), known.end(),
                              [&](const auto& p) { return p.second == key; })) {
        throw UsageError("unknown parameter \"" + key + "\"");
      }
      params[key] = value;
    }
  }
  return params;
}

int ParseInt(const std::map<std::string, std::string>& params,
             const std::string& key, int fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    std::size_t used = 0;
    const int value = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return value;
  } catch (const std::exception&) {
    throw UsageError("parameter " + key + " needs an integer, got \"" +
                     it->second + "\"");
  }
}

std::string Param(const std::map<std::string, std::string>& params,
                  const std::string& key, const std::string& fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

template <typename Fn>
auto AsUsage(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

struct IndexRequest {
  fs::path corpus_dir;
  std::string scheme;
  std::vector<std::string> params;
  std::uint64_t seed = 0;
  std::string tokenizer;
  fs::path out;
  std::string vocab_out;
  std::string tree_out;
};

class Indexer {
 public:
  explicit Indexer(const IndexRequest& request)
      : request_(request),
        params_(ParseParams(request.params)),
        corpus_(ReadCorpus(request.corpus_dir)),
        split_(LeaveOneOutSplit(corpus_)),
        registry_(std::make_shared<TokenRegistry>()) {}

  IndexAssignment Run() {
    const Scheme scheme = AsUsage([&] { return ParseScheme(request_.scheme); });
    if (scheme != Scheme::kHid) return Build(scheme);

    const std::string variant_name = Param(params_, "hid.variant", "");
    if (variant_name.empty()) throw UsageError("hid needs hid.variant");
    const HidVariant variant =
        AsUsage([&] { return ParseHidVariant(variant_name); });
    const HidOrder order = AsUsage([&] {
      return ParseHidOrder(Param(params_, "hid.order", "semid-first"));
    });
    std::vector<IndexAssignment> parts;
    switch (variant) {
      case HidVariant::kSidIid:
        parts.push_back(Build(Scheme::kSid));
        parts.push_back(Build(Scheme::kIid));
        break;
      case HidVariant::kCidIid:
        parts.push_back(Build(Scheme::kCid));
        parts.push_back(Build(Scheme::kIid));
        break;
      case HidVariant::kSemIdIid:
        parts.push_back(Build(Scheme::kSemId));
        parts.push_back(Build(Scheme::kIid));
        break;
      case HidVariant::kSemIdCid:
        parts.push_back(Build(Scheme::kSemId));
        parts.push_back(Build(Scheme::kCid));
        break;
    }
    return ComposeHid(variant, parts, order);
  }

  const TokenRegistry& registry() const { return *registry_; }
  const Corpus& corpus() const { return corpus_; }

 private:
  const SegmenterModel& Model() {
    if (!model_) {
      if (request_.tokenizer.empty()) {
        throw UsageError("scheme " + request_.scheme + " needs --tokenizer");
      }
      model_ = LoadUnigramModel(request_.tokenizer);
    }
    return *model_;
  }

  IndexAssignment Build(Scheme scheme) {
    switch (scheme) {
      case Scheme::kRid:
        return IndexRid(corpus_.items(), request_.seed, Model(), registry_);
      case Scheme::kTid:
        return IndexTid(corpus_, Model(), registry_);
      case Scheme::kIid:
        return IndexIid(corpus_.items(), registry_);
      case Scheme::kSid: {
        const UserOrdering ordering = AsUsage([&] {
          return ParseOrdering(Param(params_, "sid.ordering", "TSO"),
                               request_.seed);
        });
        return IndexSid(corpus_, split_, ordering, Model(), registry_);
      }
      case Scheme::kCid: {
        const int n = ParseInt(params_, "cid.N", 4);
        const int k = ParseInt(params_, "cid.k", 20);
        const CooccurrenceGraph graph = BuildCooccurrenceGraph(corpus_, split_);
        return IndexCid(graph, n, k, request_.seed, registry_);
      }
      case Scheme::kSemId: {
        const SemIdMode mode = AsUsage(
            [&] { return ParseSemIdMode(Param(params_, "semid.mode", "tree")); });
        return IndexSemId(corpus_, mode, registry_);
      }
      case Scheme::kHid:
      case Scheme::kUnknown:
        break;
    }
    throw UsageError("unsupported scheme");
  }

  const IndexRequest& request_;
  std::map<std::string, std::string> params_;
  Corpus corpus_;
  SplitCorpus split_;
  std::shared_ptr<TokenRegistry> registry_;
  std::optional<SegmenterModel> model_;
};

int RunIndex(const IndexRequest& request, std::ostream& out) {
  Indexer indexer(request);
  const IndexAssignment assignment = indexer.Run();

  std::ostringstream map_text;
  WriteIdMap(assignment, map_text);
  WriteText(request.out, map_text.str());

  std::ostringstream vocab_text;
  WriteVocabAdditions(indexer.registry(), vocab_text);
  const fs::path vocab_path = request.vocab_out.empty()
                                  ? fs::path(request.out.string() + ".vocab")
                                  : fs::path(request.vocab_out);
  WriteText(vocab_path, vocab_text.str());

  if (!request.tree_out.empty()) {
    if (!assignment.tree) {
      throw UsageError("--tree-out needs a tree-based scheme (cid, semid)");
    }
    WriteText(request.tree_out,
              ClusterTreeToJson(*assignment.tree, indexer.corpus().items(),
                                indexer.registry())
                      .dump(2) +
                  "\n");
  }
  out << "indexed " << assignment.size() << " items with "
      << SchemeName(assignment.scheme) << " -> " << request.out.string()
      << "\n";
  return kExitOk;
}

json ReportToJson(const VerificationReport& report,
                  const IndexAssignment& assignment) {
  json j;
  j["unique"] = report.unique;
  j["prefix_free"] = report.prefix_free;
  json collisions = json::array();
  for (const auto& group : report.collisions) {
    json names = json::array();
    for (std::size_t i : group) names.push_back(assignment.items[i]);
    collisions.push_back(std::move(names));
  }
  j["collisions"] = std::move(collisions);
  j["prefix_pairs"] = report.prefix_pairs.size();
  return j;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Item ID construction and analysis for generative recommenders",
               "itemidx"};
  app.require_subcommand(1);

  std::string interactions_path, meta_path;
  fs::path ingest_out;
  auto* ingest = app.add_subcommand("ingest", "Load interactions + metadata");
  ingest->add_option("--interactions", interactions_path,
                     "TSV user<TAB>item<TAB>timestamp")
      ->required();
  ingest->add_option("--meta", meta_path, "JSON-lines item metadata");
  ingest->add_option("--out", ingest_out, "Output directory")->required();

  fs::path split_dir;
  auto* split_cmd = app.add_subcommand("split", "Leave-one-out split");
  split_cmd->add_option("--corpus", split_dir, "Corpus directory")->required();

  IndexRequest request;
  auto* index = app.add_subcommand("index", "Build an item ID map");
  index->add_option("--corpus", request.corpus_dir, "Corpus directory")
      ->required();
  index->add_option("--scheme", request.scheme,
                    "rid|tid|iid|sid|cid|semid|hid")
      ->required();
  index->add_option("--params", request.params,
                    "KEY=VAL[,KEY=VAL...]: sid.ordering, cid.N, cid.k, "
                    "semid.mode, hid.variant, hid.order");
  index->add_option("--seed", request.seed, "Run seed");
  index->add_option("--tokenizer", request.tokenizer,
                    "Unigram piece table (TSV piece<TAB>score)");
  index->add_option("--out", request.out, "ID map TSV")->required();
  index->add_option("--vocab-out", request.vocab_out,
                    "Vocabulary additions (default: <out>.vocab)");
  index->add_option("--tree-out", request.tree_out,
                    "Cluster/category tree JSON (cid, semid)");

  std::string stats_map, stats_scheme = "unknown";
  fs::path stats_corpus;
  bool stats_graph = false;
  auto* stats = app.add_subcommand("stats", "ID map metrics as JSON");
  stats->add_option("--map", stats_map, "ID map TSV")->required();
  stats->add_flag("--graph", stats_graph,
                  "Correlate shared prefixes with co-occurrence (needs "
                  "--corpus)");
  stats->add_option("--corpus", stats_corpus, "Corpus directory");
  stats->add_option("--scheme", stats_scheme, "Scheme label for the report");

  std::string verify_map;
  auto* verify = app.add_subcommand("verify", "Check uniqueness");
  verify->add_option("--map", verify_map, "ID map TSV")->required();

  std::string trie_map, trie_prefix;
  auto* trie = app.add_subcommand("trie", "Allowed next tokens for a prefix");
  trie->add_option("--map", trie_map, "ID map TSV")->required();
  trie->add_option("--prefix", trie_prefix, "Space-separated tokens");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*ingest) {
      Corpus corpus = LoadInteractions(interactions_path);
      if (!meta_path.empty()) corpus.SetMetadata(LoadMetadata(meta_path));
      WriteText(ingest_out / kCorpusFile, CorpusToJson(corpus).dump() + "\n");
      out << "users " << corpus.users().size() << "\nitems "
          << corpus.items().size() << "\ninteractions "
          << corpus.interaction_count() << "\n";
      return kExitOk;
    }
    if (*split_cmd) {
      const SplitCorpus split = LeaveOneOutSplit(ReadCorpus(split_dir));
      WriteText(split_dir / kSplitFile, SplitToJson(split).dump() + "\n");
      out << "users " << split.users.size() << "\nevaluated "
          << split.test_target.size() << "\n";
      return kExitOk;
    }
    if (*index) return RunIndex(request, out);
    if (*stats) {
      const IndexAssignment assignment = LoadIdMap(stats_map);
      json report;
      report["scheme"] = stats_scheme;
      report["items"] = assignment.size();
      report["avg_len"] =
          assignment.size() ? json(AvgIdLength(assignment)) : json(nullptr);
      report["rho"] = nullptr;
      if (stats_graph) {
        if (stats_corpus.empty()) throw UsageError("--graph needs --corpus");
        const Corpus corpus = ReadCorpus(stats_corpus);
        const CooccurrenceGraph graph =
            BuildCooccurrenceGraph(corpus, LeaveOneOutSplit(corpus));
        const Correlation rho = OverlapCooccurrenceCorrelation(assignment, graph);
        report["rho"] = rho.rho;
        report["rho_status"] = CorrelationStatusName(rho.status);
        report["rho_pairs"] = rho.pairs;
      }
      json histogram = json::object();
      for (const auto& [size, count] : PrefixGroupHistogram(assignment)) {
        histogram[std::to_string(size)] = count;
      }
      report["histogram"] = std::move(histogram);
      out << report.dump(2) << "\n";
      return kExitOk;
    }
    if (*verify) {
      const IndexAssignment assignment = LoadIdMap(verify_map);
      const VerificationReport report = VerifyAssignment(assignment);
      out << ReportToJson(report, assignment).dump(2) << "\n";
      return report.unique ? kExitOk : kExitFailure;
    }
    if (*trie) {
      IndexAssignment assignment = LoadIdMap(trie_map);
      const PrefixTrie prefix_trie = BuildTrie(assignment);
      std::vector<TokenId> prefix;
      std::istringstream tokens(trie_prefix);
      std::string tok;
      bool unknown = false;
      while (tokens >> tok) {
        const TokenRegistry& registry = *assignment.registry;
        const Token* t =
            tok.size() >= 3 && tok.front() == '<' && tok.back() == '>'
                ? registry.FindExtra(std::string_view(tok).substr(
                      1, tok.size() - 2))
                : registry.FindBase(tok);
        if (!t) {
          unknown = true;
          break;
        }
        prefix.push_back(t->id);
      }
      if (unknown) return kExitOk;  // no ID starts this way
      const PrefixTrie::Next next = prefix_trie.AllowedNext(prefix);
      std::vector<std::string> rendered;
      for (TokenId t : next.tokens) {
        rendered.push_back(assignment.registry->Render(t));
      }
      std::sort(rendered.begin(), rendered.end());
      if (next.end_of_id) out << kEndOfId << "\n";
      for (const std::string& r : rendered) out << r << "\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConstraintError& e) {
    err << "constraint violated: " << e.what() << "\n";
    return kExitConstraint;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace itemidx
