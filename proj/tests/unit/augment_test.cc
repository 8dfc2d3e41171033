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

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "xfer/augment/corpus.h"
#include "xfer/augment/masking.h"
#include "xfer/augment/shuffle.h"
#include "xfer/common/error.h"
#include "xfer/common/strings.h"

namespace xfer::augment {
namespace {

using harness::LabeledSpan;
using harness::TaggedSequence;

// ---------------------------------------------------------------- shuffle

TEST(ShuffleTest, ZeroBoundIsIdentity) {
  Rng rng(1);
  for (int n = 0; n < 12; ++n) {
    std::vector<int> perm = SampleBoundedPermutation(n, 0, rng);
    for (int i = 0; i < n; ++i) EXPECT_EQ(perm[i], i);
  }
}

TEST(ShuffleTest, ThreeTokensBoundOne) {
  std::set<std::vector<int>> seen;
  Rng rng(2);
  for (int i = 0; i < 500; ++i) seen.insert(SampleBoundedPermutation(3, 1, rng));
  std::set<std::vector<int>> expected{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}};
  EXPECT_EQ(seen, expected);
}

TEST(ShuffleTest, EmittedPermutationsAreAdmissible) {
  Rng rng(3);
  for (int n = 1; n <= 6; ++n) {
    for (std::optional<int> k : {std::optional<int>(0), std::optional<int>(1),
                                 std::optional<int>(2), std::optional<int>()}) {
      auto all = AdmissiblePermutations(n, k);
      std::set<std::vector<int>> admissible(all.begin(), all.end());
      for (int draw = 0; draw < 200; ++draw) {
        EXPECT_TRUE(admissible.count(SampleBoundedPermutation(n, k, rng)));
      }
    }
  }
}

TEST(ShuffleTest, UnboundedCoversAllPermutations) {
  Rng rng(4);
  std::set<std::vector<int>> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(SampleBoundedPermutation(3, std::nullopt, rng));
  EXPECT_EQ(seen.size(), 6u);
}

TEST(ShuffleTest, LongSequencesRespectBound) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> perm = SampleBoundedPermutation(25, 2, rng);
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 25; ++i) {
      ASSERT_EQ(sorted[i], i);
      ASSERT_LE(std::abs(perm[i] - i), 2);
    }
  }
}

TEST(ShuffleTest, EntitiesStayContiguousAndOrdered) {
  Rng rng(6);
  std::vector<LabeledSpan> entities{{1, 3, "LOC"}, {5, 6, "DATE"}};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> order = ShufflePermutation(8, std::nullopt, entities, rng);
    auto at = [&](int token) {
      return static_cast<int>(std::find(order.begin(), order.end(), token) - order.begin());
    };
    EXPECT_EQ(at(2), at(1) + 1);
    EXPECT_EQ(at(3), at(2) + 1);
    EXPECT_EQ(at(6), at(5) + 1);
  }
}

TEST(ShuffleTest, UnitBoundCountsEntitiesAsOneUnit) {
  // Units: [0] [1..3] [4]; k = 1 over units.
  Rng rng(7);
  std::vector<LabeledSpan> entities{{1, 3, "LOC"}};
  std::set<std::vector<int>> seen;
  for (int trial = 0; trial < 300; ++trial) seen.insert(ShufflePermutation(5, 1, entities, rng));
  std::set<std::vector<int>> expected{
      {0, 1, 2, 3, 4}, {1, 2, 3, 0, 4}, {0, 4, 1, 2, 3}};
  EXPECT_EQ(seen, expected);
}

TEST(ShuffleTest, ParseBound) {
  EXPECT_EQ(ParseShuffleBound("2"), 2);
  EXPECT_EQ(ParseShuffleBound("inf"), std::nullopt);
  EXPECT_THROW(ParseShuffleBound("-1"), Error);
  EXPECT_THROW(ParseShuffleBound("two"), Error);
}

TaggedSequence Sample() {
  return {{"fly", "to", "new", "york", "on", "monday"},
          {"O", "O", "B-LOC", "I-LOC", "O", "B-DATE"},
          "BOOK"};
}

TEST(NoisyTestsetTest, ZeroBoundLeavesDataUnchanged) {
  std::vector<TaggedSequence> data{Sample(), Sample()};
  EXPECT_EQ(MakeNoisyTestset(data, 0, 9), data);
}

TEST(NoisyTestsetTest, LabelsFollowTokens) {
  std::vector<TaggedSequence> data(50, Sample());
  auto noisy = MakeNoisyTestset(data, 2, 10);
  bool any_changed = false;
  for (const auto& s : noisy) {
    any_changed |= s.tokens != Sample().tokens;
    auto spans = harness::ExtractSpans(s.labels);
    ASSERT_EQ(spans.size(), 2u);
    for (const auto& span : spans) {
      std::vector<std::string> words(s.tokens.begin() + span.begin, s.tokens.begin() + span.end + 1);
      if (span.type == "LOC") EXPECT_EQ(Join(words, " "), "new york");
      if (span.type == "DATE") EXPECT_EQ(Join(words, " "), "monday");
    }
    EXPECT_TRUE(harness::IsStrictBio(s.labels));
  }
  EXPECT_TRUE(any_changed);
  EXPECT_EQ(MakeNoisyTestset(data, 2, 10), noisy);
}

TEST(NoisyTestsetTest, ShuffledCopiesCount) {
  auto copies = ShuffledCopies(Sample(), std::nullopt, 10, 3);
  EXPECT_EQ(copies.size(), 10u);
}

// ---------------------------------------------------------------- masking

TEST(MaskingTest, Counts) {
  EXPECT_EQ(MaskedCount(20, 0.15), 3);
  EXPECT_EQ(MaskedCount(12, 0.15), 2);
  EXPECT_EQ(MaskedCount(7, 0.15), 1);
  EXPECT_EQ(MaskedCount(6, 0.15), 0);
  EXPECT_EQ(MaskedCount(10, 0.15), 2);  // 1.5 rounds half up
  EXPECT_EQ(MaskedCount(20, 0.0), 0);
  EXPECT_TRUE(TokenMask(30, 0.0, 1).positions.empty());
  EXPECT_EQ(TokenMask(20, 0.15, 1).size(), 3u);
}

TEST(MaskingTest, ActionPartitionIsEightyTenTen) {
  std::map<MaskAction, int> counts;
  int total = 0;
  for (uint64_t seed = 0; seed < 10000; ++seed) {
    for (MaskAction a : TokenMask(20, 0.15, seed).actions) {
      ++counts[a];
      ++total;
    }
  }
  EXPECT_NEAR(counts[MaskAction::kMask] / double(total), 0.8, 0.02);
  EXPECT_NEAR(counts[MaskAction::kRandom] / double(total), 0.1, 0.02);
  EXPECT_NEAR(counts[MaskAction::kKeep] / double(total), 0.1, 0.02);
}

MaskPlan PlanOf(std::vector<int> positions) {
  MaskPlan plan;
  plan.positions = std::move(positions);
  plan.actions.assign(plan.positions.size(), MaskAction::kMask);
  return plan;
}

TEST(SpanMaskTest, WesternMusicExample) {
  // Possessive "'s" is its own token, as in the masked example sentence.
  std::vector<std::string> tokens = SplitWhitespace(
      "Western music 's effect would continue to grow within the country 's sphere");
  MaskPlan before = PlanOf({5, 11});
  MaskPlan moved = SpanMoves(before, static_cast<int>(tokens.size()));
  EXPECT_EQ(moved.positions, (std::vector<int>{10, 11}));
  EXPECT_EQ(Join(ApplyMaskPlan(tokens, before, {}, 0), " "),
            "Western music 's effect would [MASK] to grow within the country [MASK] sphere");
  EXPECT_EQ(Join(ApplyMaskPlan(tokens, moved, {}, 0), " "),
            "Western music 's effect would continue to grow within the [MASK] [MASK] sphere");
}

TEST(SpanMaskTest, LeftAttachTieBreak) {
  EXPECT_EQ(SpanMoves(PlanOf({2, 7, 8}), 12).positions, (std::vector<int>{6, 7, 8}));
  // Equidistant between runs {0,1} and {8,9}: attaches to the lower run.
  EXPECT_EQ(SpanMoves(PlanOf({2, 3, 7, 11, 12}), 14).positions,
            (std::vector<int>{1, 2, 3, 11, 12}));
  // Run at the sentence start has no left neighbour: attach on its right.
  EXPECT_EQ(SpanMoves(PlanOf({0, 1, 6}), 10).positions, (std::vector<int>{0, 1, 2}));
}

TEST(SpanMaskTest, ContiguousAndSingletonPlansUnchanged) {
  EXPECT_EQ(SpanMoves(PlanOf({3, 4, 5}), 12), PlanOf({3, 4, 5}));
  EXPECT_EQ(SpanMoves(PlanOf({3}), 12), PlanOf({3}));
  EXPECT_EQ(SpanMoves(PlanOf({0}), 1), PlanOf({0}));
}

TEST(SpanMaskTest, PreservesCountOnRandomPlans) {
  for (uint64_t seed = 0; seed < 10000; ++seed) {
    const int n = 1 + static_cast<int>(seed % 60);
    MaskPlan base = TokenMask(n, 0.15, seed);
    MaskPlan moved = SpanMoves(base, n);
    ASSERT_EQ(moved.size(), base.size());
    std::set<int> unique(moved.positions.begin(), moved.positions.end());
    ASSERT_EQ(unique.size(), moved.size());
    for (int p : moved.positions) ASSERT_TRUE(p >= 0 && p < n);
    if (moved.size() >= 2) {
      for (size_t i = 0; i < moved.size(); ++i) {
        const int p = moved.positions[i];
        ASSERT_TRUE(unique.count(p - 1) || unique.count(p + 1)) << "isolated " << p;
      }
    }
  }
}

TEST(SpanMaskTest, Deterministic) {
  EXPECT_EQ(SpanMask(40, 0.15, 77), SpanMask(40, 0.15, 77));
}

TEST(MaskPlanJsonTest, RoundTrip) {
  std::vector<std::string> tokens{"a", "b", "c", "d", "e", "f", "g", "h"};
  MaskPlan plan = TokenMask(8, 0.5, 3);
  std::vector<std::string> back_tokens;
  EXPECT_EQ(MaskPlanFromJson(MaskPlanToJson(tokens, plan), &back_tokens), plan);
  EXPECT_EQ(back_tokens, tokens);
}

// ---------------------------------------------------------------- corpus

TEST(CorpusTest, EntityLevelNeedsEntities) {
  CorpusSpec spec{.level = CorpusLevel::kEntity};
  EXPECT_THROW(SelectCorpus({"a b"}, spec), Error);
}

TEST(CorpusTest, Selection) {
  std::vector<std::string> sentences{"The Beatles played in New York",
                                     "nothing to see here",
                                     "New York is big",
                                     "the beatles and the rolling stones"};
  CorpusSpec spec{.level = CorpusLevel::kEntity,
                  .entities = {"the beatles", "new york", "the rolling stones"},
                  .min_entities = 2};
  SelectionResult entity = SelectCorpus(sentences, spec);
  EXPECT_EQ(entity.sentences,
            (std::vector<std::string>{sentences[0], sentences[3]}));
  EXPECT_DOUBLE_EQ(entity.ratio, 0.5);
  spec.level = CorpusLevel::kTask;
  EXPECT_EQ(SelectCorpus(sentences, spec).sentences.size(), 3u);
  spec.level = CorpusLevel::kDomain;
  EXPECT_EQ(SelectCorpus(sentences, spec).sentences, sentences);
}

TEST(CorpusTest, IntegrationMultiplicity) {
  std::vector<std::string> entity{"e1", "e2", "e3"}, task{"t1", "t2"};
  auto merged = IntegrateCorpora(entity, task, 2, 5);
  EXPECT_EQ(merged.size(), entity.size() + 2 * task.size());
  EXPECT_EQ(std::count(merged.begin(), merged.end(), "t1"), 2);
  EXPECT_EQ(std::count(merged.begin(), merged.end(), "e2"), 1);
  auto plain = IntegrateCorpora(entity, task, 1, 5);
  std::multiset<std::string> a(plain.begin(), plain.end()), b{"e1", "e2", "e3", "t1", "t2"};
  EXPECT_EQ(a, b);
  EXPECT_THROW(IntegrateCorpora(entity, task, 0, 5), Error);
}

}  // namespace
}  // namespace xfer::augment
