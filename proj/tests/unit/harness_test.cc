// Copyright 2026 The Xfer Authors.
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "xfer/common/error.h"
#include "xfer/harness/datasets.h"
#include "xfer/harness/latency.h"
#include "xfer/harness/metrics.h"
#include "xfer/harness/report.h"
#include "xfer/harness/split.h"
#include "xfer/harness/synthetic.h"
#include "xfer/parse_repr/bracketed.h"
#include "xfer/parse_repr/codec.h"
#include "xfer/parse_repr/random_tree.h"

namespace xfer::harness {
namespace {

using parse_repr::ParseTree;

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("xfer_harness_" + name)).string();
}

std::string WriteTemp(const std::string& name, const std::string& text) {
  const std::string path = TempPath(name);
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

// Expects a FormatError whose message names `path:line`.
template <typename Fn>
void ExpectFormatErrorAt(Fn fn, const std::string& location) {
  try {
    fn();
    FAIL() << "expected a format error at " << location;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormatError);
    EXPECT_NE(std::string(e.what()).find(location + ":"), std::string::npos) << e.what();
  }
}

TEST(ConllTest, LoadsBlankLineSeparatedSentences) {
  const std::string path = WriteTemp("three.conll",
                                     "fly\tO\nto\tO\nparis\tB-city\n\n"
                                     "# intent = play\nplay\tO\nadele\tB-artist\n\n\n"
                                     "hi\tO\n");
  const auto data = LoadConll(path);
  ASSERT_EQ(data.size(), 3u);
  EXPECT_EQ(data[0].tokens, (std::vector<std::string>{"fly", "to", "paris"}));
  EXPECT_EQ(data[0].labels, (std::vector<std::string>{"O", "O", "B-city"}));
  EXPECT_EQ(data[1].intent, "play");
  EXPECT_EQ(data[2].tokens, (std::vector<std::string>{"hi"}));
}

TEST(ConllTest, SaveLoadRoundTrips) {
  const std::vector<TaggedSequence> data = {
      {{"a", "b"}, {"B-x", "I-x"}, "intent"}, {{"c"}, {"O"}, ""}};
  const std::string path = TempPath("roundtrip.conll");
  SaveConll(data, path);
  EXPECT_EQ(LoadConll(path), data);
}

TEST(ConllTest, ReportsLineOfBadRecord) {
  const std::string missing_tab = WriteTemp("bad1.conll", "a\tO\nb O\n");
  ExpectFormatErrorAt([&] { LoadConll(missing_tab); }, missing_tab + ":2");
  const std::string bad_label = WriteTemp("bad2.conll", "a\tO\n\nb\tX-y\n");
  ExpectFormatErrorAt([&] { LoadConll(bad_label); }, bad_label + ":3");
  EXPECT_THROW(LoadConll(TempPath("does_not_exist.conll")), Error);
}

TEST(ParseJsonlTest, RoundTripsThroughCodec) {
  Rng rng(3);
  std::vector<ParseTree> trees;
  for (int i = 0; i < 20; ++i) trees.push_back(parse_repr::RandomTree(rng));
  const std::string path = TempPath("trees.jsonl");
  SaveParseJsonl(trees, path);
  const auto loaded = LoadParseJsonl(path);
  EXPECT_EQ(loaded, trees);
  for (const ParseTree& tree : loaded) {
    EXPECT_EQ(parse_repr::DecodeFlat(parse_repr::EncodeFlat(tree), tree.tokens), tree);
  }
}

TEST(ParseJsonlTest, ReportsLineOfBadRecord) {
  const std::string path = WriteTemp(
      "bad.jsonl",
      "{\"tokens\":[\"a\"],\"parse\":\"[IN:X a ]\"}\n\n{\"tokens\":[\"a\"],\"parse\":\"[IN:X a\"}\n");
  ExpectFormatErrorAt([&] { LoadParseJsonl(path); }, path + ":3");
  const std::string syntax = WriteTemp("syntax.jsonl", "{\"tokens\":[\"a\"\n");
  ExpectFormatErrorAt([&] { LoadParseJsonl(syntax); }, syntax + ":1");
}

TEST(DictAndCorpusTest, LoadLines) {
  const std::string dict = WriteTemp("dict.tsv", "remind\trecordar\nalarm\talarma\n");
  EXPECT_EQ(LoadDictTsv(dict).size(), 2u);
  const std::string bad_dict = WriteTemp("bad_dict.tsv", "remind\trecordar\nalarm\n");
  ExpectFormatErrorAt([&] { LoadDictTsv(bad_dict); }, bad_dict + ":2");
  const std::string corpus = WriteTemp("corpus.txt", "  first line \n\nsecond\n");
  EXPECT_EQ(LoadCorpusLines(corpus), (std::vector<std::string>{"first line", "second"}));
  EXPECT_EQ(ParseDatasetFormat("parse-jsonl"), DatasetFormat::kParseJsonl);
  EXPECT_EQ(DatasetFormatName(DatasetFormat::kCorpusLines), "corpus-lines");
  EXPECT_THROW(ParseDatasetFormat("csv"), Error);
}

std::vector<int> Range(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

TEST(SplitTest, FractionAndCountSizes) {
  SplitSpec spec;
  spec.fraction = 0.10;
  const auto split = FewShotSplit(Range(1000), spec);
  EXPECT_EQ(split.train.size(), 100u);
  EXPECT_EQ(split.remainder.size(), 900u);
  spec.fraction = 0.01;
  EXPECT_EQ(spec.TrainCount(3617), 36);
  spec.count = 5;
  EXPECT_EQ(FewShotSplit(Range(10), spec).train.size(), 5u);
  spec.count = 11;
  EXPECT_THROW(FewShotSplit(Range(10), spec), Error);
  SplitSpec zero;
  zero.mode = SplitMode::kZeroShot;
  zero.fraction = 0.5;
  EXPECT_TRUE(FewShotSplit(Range(10), zero).train.empty());
  SplitSpec bad;
  bad.fraction = 1.5;
  EXPECT_THROW(bad.Validate(), Error);
}

TEST(SplitTest, DeterministicDisjointAndExhaustive) {
  SplitSpec spec;
  spec.fraction = 0.3;
  spec.seed = 42;
  const auto a = FewShotSplit(Range(200), spec);
  const auto b = FewShotSplit(Range(200), spec);
  EXPECT_EQ(a.train, b.train);
  std::set<int> all(a.train.begin(), a.train.end());
  for (int x : a.remainder) EXPECT_TRUE(all.insert(x).second);
  EXPECT_EQ(all.size(), 200u);
  spec.seed = 43;
  EXPECT_NE(FewShotSplit(Range(200), spec).train, a.train);
}

TEST(SplitTest, UpsampleAndMix) {
  const std::vector<TaggedSequence> target = {{{"a"}, {"B-x"}, ""}, {{"b", "c"}, {"O", "O"}, "i"}};
  EXPECT_EQ(Upsample(target, 1), target);
  const auto up = Upsample(target, 100);
  ASSERT_EQ(up.size(), 200u);
  for (size_t i = 0; i < up.size(); ++i) EXPECT_EQ(up[i], target[i / 100]);
  const std::vector<TaggedSequence> source = {{{"s"}, {"O"}, ""}};
  const auto mix = MixForJointTraining(source, target, 3);
  ASSERT_EQ(mix.size(), 7u);
  EXPECT_EQ(mix[0], source[0]);
  EXPECT_EQ(mix[6], target[1]);
  EXPECT_THROW(Upsample(target, 0), Error);
}

TEST(BioF1Test, PerfectAndEmptyPredictions) {
  const std::vector<std::vector<std::string>> gold = {{"B-x", "I-x", "O"}, {"O", "B-y"}};
  const BioScores perfect = BioF1(gold, gold);
  EXPECT_DOUBLE_EQ(perfect.f1, 100.0);
  EXPECT_DOUBLE_EQ(perfect.precision, 100.0);
  const std::vector<std::vector<std::string>> one = {{"B-x", "O"}};
  const std::vector<std::vector<std::string>> none = {{"O", "O"}};
  const BioScores empty = BioF1(one, none);
  EXPECT_EQ(empty.precision, 0.0);
  EXPECT_EQ(empty.recall, 0.0);
  EXPECT_EQ(empty.f1, 0.0);
  const std::vector<std::vector<std::string>> shorter = {{"O"}};
  EXPECT_THROW(BioF1(one, shorter), Error);
}

// Independent oracle: spans read off with an explicit state machine, then
// compared as sets of (begin, end, type) tuples.
std::set<std::tuple<int, int, std::string>> OracleSpans(const std::vector<std::string>& labels) {
  std::set<std::tuple<int, int, std::string>> spans;
  int begin = -1;
  std::string type;
  auto close = [&](int end) {
    if (begin >= 0) spans.insert({begin, end, type});
    begin = -1;
  };
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    const std::string& label = labels[i];
    if (label == "O") {
      close(i - 1);
    } else if (label[0] == 'B' || begin < 0 || label.substr(2) != type) {
      close(i - 1);
      begin = i;
      type = label.substr(2);
    }
  }
  close(static_cast<int>(labels.size()) - 1);
  return spans;
}

TEST(BioF1Test, MatchesSpanSetOracle) {
  Rng rng(9);
  const std::vector<std::string> alphabet = {"O", "B-a", "I-a", "B-b", "I-b"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::vector<std::string>> gold;
    std::vector<std::vector<std::string>> pred;
    int g_total = 0, p_total = 0, hits = 0;
    for (int s = 0; s < 3; ++s) {
      const int n = 1 + static_cast<int>(rng.Below(7));
      std::vector<std::string> g, p;
      for (int i = 0; i < n; ++i) {
        g.push_back(alphabet[rng.Below(alphabet.size())]);
        p.push_back(rng.Bernoulli(0.6) ? g.back() : alphabet[rng.Below(alphabet.size())]);
      }
      const auto gs = OracleSpans(g);
      const auto ps = OracleSpans(p);
      g_total += static_cast<int>(gs.size());
      p_total += static_cast<int>(ps.size());
      for (const auto& span : ps) hits += gs.count(span) ? 1 : 0;
      gold.push_back(g);
      pred.push_back(p);
    }
    const BioScores scores = BioF1(gold, pred);
    EXPECT_EQ(scores.gold_spans, g_total);
    EXPECT_EQ(scores.predicted_spans, p_total);
    EXPECT_EQ(scores.correct_spans, hits);
    const double precision = p_total == 0 ? 0.0 : 100.0 * hits / p_total;
    const double recall = g_total == 0 ? 0.0 : 100.0 * hits / g_total;
    const double f1 =
        precision + recall == 0.0 ? 0.0 : 2 * precision * recall / (precision + recall);
    EXPECT_NEAR(scores.f1, f1, 1e-9);
  }
}

TEST(ExactMatchTest, IdenticalAndCoarseOnly) {
  const ParseTree a = parse_repr::ParseBracketed("[IN:CREATE_CALL call [IN:GET_CONTACT Grandma ] ]");
  const ParseTree b = parse_repr::ParseBracketed("[IN:CREATE_REMINDER call [IN:GET_CONTACT Grandma ] ]");
  EXPECT_TRUE(ExactMatch(a, a));
  EXPECT_FALSE(ExactMatch(a, b));
  const std::vector<ParseTree> gold = {a, a};
  const std::vector<ParseTree> pred = {a, b};
  EXPECT_DOUBLE_EQ(ExactMatchAccuracy(gold, pred), 0.5);
}

TEST(ExactMatchTest, EqualsFlatComparisonOnRandomTrees) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    parse_repr::RandomTreeOptions options;
    options.max_tokens = 4;
    options.vocabulary = 1;  // equal token sequences are common
    const ParseTree a = parse_repr::RandomTree(rng, options);
    const ParseTree b = parse_repr::RandomTree(rng, options);
    const bool flat_equal = a.tokens == b.tokens &&
                            parse_repr::EncodeFlat(a) == parse_repr::EncodeFlat(b);
    EXPECT_EQ(ExactMatch(a, b), flat_equal);
    EXPECT_EQ(ExactMatch(a, b), a == b);
  }
}

TEST(NestedSplitTest, FlatVersusNested) {
  const std::vector<ParseTree> trees = {
      parse_repr::ParseBracketed("[IN:PLAY_MUSIC play [SL:ARTIST adele ] ]"),
      parse_repr::ParseBracketed("[IN:CREATE_CALL call [IN:GET_CONTACT Grandma ] ]"),
      parse_repr::ParseBracketed("[IN:GET_WEATHER weather ]")};
  const NestedSplit split = SplitByNesting(trees);
  EXPECT_EQ(split.nested, (std::vector<size_t>{1}));
  EXPECT_EQ(split.non_nested, (std::vector<size_t>{0, 2}));

  Rng rng(12);
  std::vector<ParseTree> random;
  for (int i = 0; i < 200; ++i) random.push_back(parse_repr::RandomTree(rng));
  const NestedSplit all = SplitByNesting(random);
  std::set<size_t> seen(all.nested.begin(), all.nested.end());
  for (size_t i : all.non_nested) EXPECT_TRUE(seen.insert(i).second);
  EXPECT_EQ(seen.size(), random.size());
}

TEST(LatencyTest, OneDecoderPassPerBucket) {
  const auto trees = MakeParserToy(10, 1);
  x2parser::X2Config config;
  config.encoder.ort.filter_dim = 16;
  config.slot_encoder.hidden_dim = 16;
  const x2parser::X2Parser parser = x2parser::X2Parser::Build(config, trees);
  LatencyOptions options;
  options.repeats = 3;
  options.warmup = 1;
  const auto rows = BenchLatency(parser, options);
  ASSERT_EQ(rows.size(), 4u);
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].length, kLatencyBuckets[i]);
    EXPECT_EQ(rows[i].encoder_passes, 1);
    EXPECT_EQ(rows[i].decoder_passes, 1);
    EXPECT_GT(rows[i].median_ms, 0.0);
  }
  EXPECT_DOUBLE_EQ(Median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_DOUBLE_EQ(Median({4.0, 1.0}), 2.5);
}

TEST(ReportTest, JsonRoundTripsAndIsStable) {
  const std::vector<ParseTree> gold = {
      parse_repr::ParseBracketed("[IN:PLAY_MUSIC play [SL:ARTIST adele ] ]"),
      parse_repr::ParseBracketed("[IN:CREATE_CALL call [IN:GET_CONTACT Grandma ] ]")};
  EvalReport report = ParseReport(gold, gold);
  EXPECT_DOUBLE_EQ(*report.exact_match, 100.0);
  report = ParseReport(gold, std::vector<ParseTree>{gold[0], parse_repr::ParseBracketed(
                                                                "[IN:CREATE_CALL call Grandma ]")});
  EXPECT_DOUBLE_EQ(*report.exact_match, 50.0);
  EXPECT_DOUBLE_EQ(*report.nested_exact_match, 0.0);
  EXPECT_DOUBLE_EQ(*report.non_nested_exact_match, 100.0);
  report.latency = {{5, 0.25, 1, 1}, {40, 1.0 / 3.0, 1, 1}};
  report.bio = BioScores{50.0, 100.0 / 3.0, 40.0, 3, 2, 1};
  const std::string json = ReportToJson(report);
  EXPECT_EQ(ReportFromJson(json), report);
  EXPECT_EQ(ReportToJson(ReportFromJson(json)), json);
  const std::string text = ReportToText(report);
  EXPECT_NE(text.find("exact_match"), std::string::npos);
  EXPECT_NE(text.find("decoder_passes"), std::string::npos);
  EXPECT_THROW(ReportFromJson("{\"examples\": 1}"), Error);
  EXPECT_THROW(ReportFromJson("not json"), Error);
}

TEST(ReportTest, TaggingReportPerfectScore) {
  const std::vector<TaggedSequence> gold = {{{"a", "b"}, {"B-x", "O"}, ""}};
  const EvalReport report = TaggingReport(gold, gold);
  ASSERT_TRUE(report.bio.has_value());
  EXPECT_DOUBLE_EQ(report.bio->f1, 100.0);
  EXPECT_FALSE(report.exact_match.has_value());
}

}  // namespace
}  // namespace xfer::harness
