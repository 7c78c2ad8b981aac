/*
Copyright 2026 The Stereo SELD Toolkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/


#include "sseld/metrics.h"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "sseld/hungarian.h"

namespace sseld {
namespace {

Detection At(double az, double dist = 1.0, std::optional<bool> onscreen = std::nullopt) {
  return Detection{az, dist, onscreen, 0};
}

std::vector<Detection> Dets(std::initializer_list<double> azimuths) {
  std::vector<Detection> out;
  for (double az : azimuths) out.push_back(At(az));
  return out;
}

LabelSet Single(double az, double dist, std::optional<bool> onscreen = std::nullopt,
                int class_id = 0, int frame = 0) {
  LabelSet set;
  set.Add(frame, class_id, At(az, dist, onscreen));
  return set;
}

using Pairs = std::vector<std::pair<size_t, size_t>>;

TEST(MatchFrame, Examples) {
  EXPECT_EQ(MatchFrame(Dets({10.0}), Dets({12.0})), (Pairs{{0, 0}}));
  EXPECT_EQ(MatchFrame(Dets({-80.0, 30.0}), Dets({28.0, -79.0})), (Pairs{{0, 1}, {1, 0}}));
  EXPECT_TRUE(MatchFrame({}, Dets({40.0})).empty());
  EXPECT_TRUE(MatchFrame(Dets({40.0}), {}).empty());
}

TEST(MatchFrame, TiedCostsPairInAzimuthOrder) {
  // Both pairings cost 40; the non-crossing one is chosen.
  EXPECT_EQ(MatchFrame(Dets({0.0, 10.0}), Dets({30.0, 20.0})), (Pairs{{0, 1}, {1, 0}}));
  EXPECT_EQ(MatchFrame(Dets({10.0, 0.0}), Dets({20.0, 30.0})), (Pairs{{0, 1}, {1, 0}}));
}

TEST(MatchFrame, UnequalSides) {
  EXPECT_EQ(MatchFrame(Dets({0.0, 50.0, -60.0}), Dets({-55.0})), (Pairs{{2, 0}}));
  EXPECT_EQ(MatchFrame(Dets({45.0}), Dets({-10.0, 40.0, 80.0})), (Pairs{{0, 1}}));
}

TEST(MinCostAssignment, AgreesWithExhaustiveSearch) {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> az(-90.0, 90.0);
  std::uniform_int_distribution<int> count(0, 5);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> p(count(gen)), r(count(gen));
    for (auto& v : p) v = az(gen);
    for (auto& v : r) v = az(gen);
    std::vector<Detection> pd, rd;
    for (double v : p) pd.push_back(At(v));
    for (double v : r) rd.push_back(At(v));
    const auto pairs = MatchFrame(pd, rd);
    const auto best = oracle::ExhaustiveMatch(p, r);
    ASSERT_EQ(pairs.size(), std::min(p.size(), r.size()));
    double cost = 0.0;
    for (const auto& [i, j] : pairs) cost += std::abs(p[i] - r[j]);
    ASSERT_NEAR(cost, best.cost, 1e-9);
    ASSERT_EQ(pairs, oracle::CanonicalMatch(p, r));
  }
}

TEST(MinCostAssignment, NonSquareGeneralCosts) {
  const std::vector<std::vector<double>> cost = {{4, 1, 3}, {2, 0, 5}};
  EXPECT_EQ(MinCostAssignment(cost), (Pairs{{0, 1}, {1, 0}}));
  const std::vector<std::vector<float>> tall = {{3}, {1}, {2}};
  EXPECT_EQ(MinCostAssignment(tall), (Pairs{{1, 0}}));
  EXPECT_TRUE(MinCostAssignment(std::vector<std::vector<double>>{}).empty());
}

TEST(Score, PerfectDetector) {
  LabelSet refs;
  refs.Add(0, 1, At(10.0, 2.0, true));
  refs.Add(0, 1, At(-40.0, 3.0, false));
  refs.Add(4, 12, At(89.0, 1.0, false));
  MetricsConfig cfg;
  cfg.require_onscreen_match = true;
  const auto report = Score(refs, refs, cfg);
  EXPECT_EQ(report.f_macro, 1.0);
  EXPECT_EQ(report.f_onoff_macro, 1.0);
  EXPECT_EQ(report.doae_cd_deg, 0.0);
  EXPECT_EQ(report.rde_cd, 0.0);
  EXPECT_EQ(report.onscreen_accuracy, 1.0);
  EXPECT_EQ(report.matched_pairs, 3);
}

TEST(Score, WithinGatesIsTruePositive) {
  const auto report = Score(Single(15.0, 3.0), Single(0.0, 2.0));
  EXPECT_EQ(report.per_class[0], (ClassCounts{1, 0, 0}));
  EXPECT_EQ(report.f_macro, 1.0);
  EXPECT_EQ(report.doae_cd_deg, 15.0);
  EXPECT_EQ(report.rde_cd, 0.5);
  EXPECT_FALSE(report.onscreen_accuracy);
  EXPECT_FALSE(report.f_onoff_macro);
}

TEST(Score, FailedGateCountsFalsePositiveAndNegative) {
  const auto preds = Single(25.0, 2.0);
  const auto refs = Single(0.0, 2.0);
  const auto report = Score(preds, refs);
  EXPECT_EQ(report.per_class[0], (ClassCounts{0, 1, 1}));
  EXPECT_EQ(report.f_macro, 0.0);
  EXPECT_EQ(report.doae_cd_deg, 25.0);
  const auto check = oracle::BruteForceScore(preds.ToRecords(), refs.ToRecords(), 20, 1, false, 13);
  EXPECT_EQ(check.per_class[0].fp, 1);
  EXPECT_EQ(check.per_class[0].fn, 1);
  EXPECT_EQ(check.doae, 25.0);
}

TEST(Score, GateBoundariesInclusive) {
  EXPECT_EQ(Score(Single(20.0, 4.0), Single(0.0, 2.0)).f_macro, 1.0);
  EXPECT_EQ(Score(Single(0.0, 4.0001), Single(0.0, 2.0)).f_macro, 0.0);
  EXPECT_EQ(Score(Single(20.000001, 2.0), Single(0.0, 2.0)).f_macro, 0.0);
}

TEST(Score, WrongClassIsUnmatched) {
  const auto report = Score(Single(0.0, 1.0, std::nullopt, 3), Single(0.0, 1.0, std::nullopt, 4));
  EXPECT_EQ(report.matched_pairs, 0);
  EXPECT_FALSE(report.doae_cd_deg);
  EXPECT_EQ(report.per_class[3], (ClassCounts{0, 1, 0}));
  EXPECT_EQ(report.per_class[4], (ClassCounts{0, 0, 1}));
  EXPECT_EQ(report.f_macro, 0.0);
}

TEST(Score, MacroSkipsInactiveClasses) {
  LabelSet refs, preds;
  refs.Add(0, 2, At(0.0));
  preds.Add(0, 2, At(1.0));
  refs.Add(1, 5, At(0.0));
  const auto report = Score(preds, refs);
  EXPECT_EQ(report.f_macro, 0.5);
  EXPECT_FALSE(Score(LabelSet{}, LabelSet{}).f_macro);
}

TEST(Score, OnscreenGate) {
  MetricsConfig cfg;
  cfg.require_onscreen_match = true;
  const auto report = Score(Single(5.0, 1.0, false), Single(0.0, 1.0, true), cfg);
  EXPECT_EQ(report.f_macro, 1.0);
  EXPECT_EQ(report.f_onoff_macro, 0.0);
  EXPECT_EQ(report.onscreen_accuracy, 0.0);
  EXPECT_EQ(report.ranking_f(), 0.0);
  try {
    Score(Single(5.0, 1.0), Single(0.0, 1.0, true), cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfiguration);
  }
}

class ScoreProperties : public ::testing::TestWithParam<int> {};

TEST_P(ScoreProperties, Hold) {
  std::mt19937_64 gen(GetParam());
  const auto ref_records = oracle::RandomStereoRecords(gen, 50, 13, 3, 0.15);
  const auto pred_records = oracle::PerturbRecords(gen, ref_records, 50, 13, 3);
  const auto refs = LabelSet::FromRecords(ref_records);
  const auto preds = LabelSet::FromRecords(pred_records);

  const auto self = Score(refs, refs);
  EXPECT_EQ(self.f_macro, 1.0);
  EXPECT_EQ(self.doae_cd_deg, 0.0);
  EXPECT_EQ(self.rde_cd, 0.0);
  EXPECT_EQ(self.onscreen_accuracy, 1.0);

  const auto base = Score(preds, refs);

  // One spurious prediction can only lower or keep each class F.
  for (int c = 0; c < 13; ++c) {
    auto extra = preds;
    const int frame = 51 + c;
    extra.Add(frame, c, At(0.0));
    const auto more = Score(extra, refs);
    EXPECT_LE(more.per_class[c].F(), base.per_class[c].F());
  }

  // Flags do not matter without the onscreen gate.
  auto flipped = pred_records;
  for (auto& r : flipped) r.onscreen = !*r.onscreen;
  const auto flipped_report = Score(LabelSet::FromRecords(flipped), refs);
  EXPECT_EQ(flipped_report.f_macro, base.f_macro);
  EXPECT_EQ(flipped_report.doae_cd_deg, base.doae_cd_deg);
  EXPECT_EQ(flipped_report.rde_cd, base.rde_cd);

  // Relative distance error is unit-free.
  for (double scale : {0.01, 3.0, 100.0}) {
    auto sp = pred_records, sr = ref_records;
    for (auto& r : sp) r.distance *= scale;
    for (auto& r : sr) r.distance *= scale;
    const auto scaled = Score(LabelSet::FromRecords(sp), LabelSet::FromRecords(sr));
    EXPECT_EQ(scaled.f_macro, base.f_macro);
    EXPECT_NEAR(*scaled.rde_cd, *base.rde_cd, 1e-12);
  }

  // Brute-force agreement, including the onscreen-gated score.
  MetricsConfig cfg;
  cfg.require_onscreen_match = true;
  const auto gated = Score(preds, refs, cfg);
  const auto check = oracle::BruteForceScore(pred_records, ref_records, 20.0, 1.0, true, 13);
  EXPECT_EQ(gated.f_macro, check.f);
  EXPECT_EQ(gated.f_onoff_macro, check.f_onoff);
  EXPECT_EQ(gated.doae_cd_deg, check.doae);
  EXPECT_EQ(gated.rde_cd, check.rde);
  EXPECT_EQ(gated.onscreen_accuracy, check.accuracy);
  EXPECT_EQ(gated.matched_pairs, check.matched);
}

INSTANTIATE_TEST_SUITE_P(Seeds, ScoreProperties, ::testing::Range(1, 21));

TEST(LabelSet, Validation) {
  LabelSet set;
  EXPECT_THROW(set.Add(0, 13, At(0.0)), Error);
  EXPECT_THROW(set.Add(-1, 0, At(0.0)), Error);
  EXPECT_THROW(set.Add(0, 0, At(91.0)), Error);
  EXPECT_THROW(set.Add(0, 0, At(0.0, -1.0)), Error);
  set.Add(0, 0, At(0.0));
  set.Add(0, 0, At(1.0));
  set.Add(0, 0, At(2.0));
  EXPECT_THROW(set.Add(0, 0, At(3.0)), Error);
  EXPECT_EQ(set.num_detections(), 3u);
  EXPECT_EQ(set.frame_span(), 1);
}

TEST(LabelSet, RecordsRoundTrip) {
  std::mt19937_64 gen(5);
  const auto records = oracle::RandomStereoRecords(gen, 20, 13, 3, 0.3);
  const auto set = LabelSet::FromRecords(records);
  EXPECT_EQ(LabelSet::FromRecords(set.ToRecords()), set);
  LabelSet shifted;
  shifted.Append(set, 100);
  EXPECT_EQ(shifted.num_detections(), set.num_detections());
  EXPECT_EQ(shifted.entries().begin()->first.frame, set.entries().begin()->first.frame + 100);
}

TEST(DecodeMultiAccdoa, Examples) {
  std::vector<AccdoaFrame> frames(1, AccdoaFrame(0, 3, 13));
  frames[0].at(0, 0) = {1.0, 0.0, 2.0, 0.9};
  frames[0].at(0, 1) = {0.0, 0.3, 2.0, 0.9};
  frames[0].at(1, 2) = {-0.6, 0.6, 1.5, 0.1};
  const auto set = DecodeMultiAccdoa(frames);
  ASSERT_NE(set.Find(0, 0), nullptr);
  EXPECT_EQ(set.Find(0, 0)->at(0).azimuth_deg, 0.0);
  EXPECT_EQ(set.Find(0, 0)->at(0).onscreen, true);
  EXPECT_EQ(set.Find(0, 0)->at(0).distance, 2.0);
  EXPECT_EQ(set.Find(0, 1), nullptr);
  ASSERT_NE(set.Find(0, 2), nullptr);
  const double expected = FoldFrontBack(std::atan2(0.6, -0.6) * 180.0 / std::acos(-1.0));
  EXPECT_NEAR(set.Find(0, 2)->at(0).azimuth_deg, expected, 1e-12);
  EXPECT_NEAR(set.Find(0, 2)->at(0).azimuth_deg, 45.0, 1e-12);
  EXPECT_EQ(set.Find(0, 2)->at(0).onscreen, false);
  EXPECT_EQ(set.num_detections(), 2u);
}

TEST(DecodeMultiAccdoa, MergesNearDuplicates) {
  std::vector<AccdoaFrame> frames(1, AccdoaFrame(7, 3, 13));
  frames[0].at(0, 4) = {0.7, 0.0, 1.0, 0.0};
  frames[0].at(1, 4) = {0.98, 0.17, 3.0, 0.0};   // ~10 deg away, stronger
  frames[0].at(2, 4) = {0.0, -0.9, 2.0, 0.0};    // -90 deg, distinct
  const auto set = DecodeMultiAccdoa(frames);
  const auto* list = set.Find(7, 4);
  ASSERT_NE(list, nullptr);
  ASSERT_EQ(list->size(), 2u);
  EXPECT_EQ(list->at(0).track_id, 1);
  EXPECT_EQ(list->at(0).distance, 3.0);
  EXPECT_EQ(list->at(1).azimuth_deg, -90.0);
}

TEST(DecodeMultiAccdoa, Errors) {
  std::vector<AccdoaFrame> frames(2, AccdoaFrame(0, 3, 13));
  frames[1].frame = 17;
  frames[1].at(2, 5).y = std::nan("");
  try {
    DecodeMultiAccdoa(frames);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDecode);
    EXPECT_NE(std::string(e.what()).find("17"), std::string::npos);
  }
  AccdoaDecodeOptions options;
  options.activity_threshold = 1.0;
  EXPECT_THROW(DecodeMultiAccdoa({}, options), Error);
}

TEST(DecodeMultiAccdoa, EncodeRoundTrip) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LabelSet labels;
  for (int f = 0; f < 50; ++f) {
    for (int c = 0; c < 13; ++c) {
      if (unit(gen) > 0.2) continue;
      // Same-class detections spaced beyond the merge distance.
      const int n = 1 + static_cast<int>(unit(gen) * 3);
      const double base = -90.0 + 20.0 * unit(gen);
      for (int k = 0; k < n; ++k) {
        labels.Add(f, c, Detection{base + 60.0 * k + 10.0 * unit(gen), 0.5 + 3.0 * unit(gen),
                                   unit(gen) < 0.5, k});
      }
    }
  }
  const auto decoded = DecodeMultiAccdoa(EncodeMultiAccdoa(labels, 50));
  ASSERT_EQ(decoded.entries().size(), labels.entries().size());
  for (const auto& [key, list] : labels.entries()) {
    const auto* got = decoded.Find(key.frame, key.class_id);
    ASSERT_NE(got, nullptr);
    ASSERT_EQ(got->size(), list.size());
    for (size_t i = 0; i < list.size(); ++i) {
      EXPECT_LT(std::abs(got->at(i).azimuth_deg - list[i].azimuth_deg), 0.01);
      EXPECT_EQ(got->at(i).distance, list[i].distance);
      EXPECT_EQ(got->at(i).onscreen, list[i].onscreen);
      EXPECT_EQ(got->at(i).track_id, list[i].track_id);
    }
  }
  EXPECT_THROW(EncodeMultiAccdoa(labels, 10), Error);
}

TEST(ClassMeanDistance, Examples) {
  LabelSet train;
  train.Add(0, 3, At(0.0, 1.0));
  train.Add(1, 3, At(0.0, 3.0));
  const auto means = ClassMeanDistance(train);
  ASSERT_EQ(means.size(), 13u);
  EXPECT_EQ(means[3], 2.0);
  EXPECT_FALSE(means[0]);
}

TEST(ClassMeanDistance, MatchesStreamingAccumulation) {
  std::mt19937_64 gen(9);
  const auto records = oracle::RandomStereoRecords(gen, 200, 13, 3, 0.2);
  const auto means = ClassMeanDistance(LabelSet::FromRecords(records));
  std::vector<double> running(13, 0.0);
  std::vector<int> seen(13, 0);
  for (const auto& r : records) {
    ++seen[r.class_id];
    running[r.class_id] += (r.distance - running[r.class_id]) / seen[r.class_id];
  }
  for (int c = 0; c < 13; ++c) {
    ASSERT_EQ(means[c].has_value(), seen[c] > 0);
    if (seen[c]) {
      EXPECT_NEAR(*means[c], running[c], 1e-12 * running[c]);
    }
  }
}

TEST(ApplyDistanceBias, Substitutes) {
  std::vector<std::optional<double>> means(13);
  means[3] = 2.0;
  const auto out = ApplyDistanceBias(Single(12.0, 7.0, true, 3), means);
  ASSERT_NE(out.Find(0, 3), nullptr);
  EXPECT_EQ(out.Find(0, 3)->at(0), At(12.0, 2.0, true));
  EXPECT_TRUE(ApplyDistanceBias(LabelSet{}, means).empty());
  try {
    ApplyDistanceBias(Single(0.0, 1.0, std::nullopt, 9), means);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("9"), std::string::npos);
  }
}

TEST(ApplyDistanceBias, PerfectDetectorKeepsF) {
  std::mt19937_64 gen(10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LabelSet refs;
  for (int f = 0; f < 100; ++f) {
    for (int c = 0; c < 13; ++c) {
      if (unit(gen) < 0.3) refs.Add(f, c, At(-90.0 + 180.0 * unit(gen), (c + 1) * (0.8 + 0.4 * unit(gen))));
    }
  }
  const auto means = ClassMeanDistance(refs);
  const auto biased = ApplyDistanceBias(refs, means);
  EXPECT_EQ(Score(biased, refs).f_macro, 1.0);
  EXPECT_GT(*Score(biased, refs).rde_cd, 0.0);
}

TEST(Report, SerializeParseRoundTrip) {
  std::mt19937_64 gen(11);
  const auto refs = oracle::RandomStereoRecords(gen, 50, 13, 3, 0.2);
  const auto preds = oracle::PerturbRecords(gen, refs, 50, 13, 3);
  MetricsConfig cfg;
  cfg.require_onscreen_match = true;
  const auto report = Score(LabelSet::FromRecords(preds), LabelSet::FromRecords(refs), cfg);
  const auto back = ParseReport(SerializeReport(report));
  EXPECT_EQ(back.f_macro, report.f_macro);
  EXPECT_EQ(back.f_onoff_macro, report.f_onoff_macro);
  EXPECT_EQ(back.doae_cd_deg, report.doae_cd_deg);
  EXPECT_EQ(back.rde_cd, report.rde_cd);
  EXPECT_EQ(back.onscreen_accuracy, report.onscreen_accuracy);
  EXPECT_EQ(back.per_class, report.per_class);
  EXPECT_EQ(back.per_class_onoff, report.per_class_onoff);
  EXPECT_EQ(back.matched_pairs, report.matched_pairs);

  const auto empty = ParseReport(SerializeReport(Score(LabelSet{}, LabelSet{})));
  EXPECT_FALSE(empty.f_macro);
  EXPECT_FALSE(empty.doae_cd_deg);
  EXPECT_THROW(ParseReport("doae_cd_deg = 3\n"), Error);
  EXPECT_THROW(ParseReport("f_macro = high\n"), Error);
  EXPECT_NE(FormatReportTable(report).find("Macro F20/1"), std::string::npos);
}

TEST(RankSystems, OrdersByLocalizationDependentF) {
  MetricsReport a, b, c, d;
  a.f_macro = 0.30;
  a.doae_cd_deg = 5.0;
  b.f_macro = 0.40;
  b.doae_cd_deg = 40.0;
  b.rde_cd = 0.9;
  d.f_macro = 0.30;
  const auto ranked = RankSystems({{"a", a}, {"b", b}, {"c", c}, {"d", d}});
  ASSERT_EQ(ranked.size(), 4u);
  EXPECT_EQ(ranked[0].name, "b");
  EXPECT_EQ(ranked[1].name, "a");
  EXPECT_EQ(ranked[2].name, "d");
  EXPECT_EQ(ranked[3].name, "c");

  // The audiovisual variant decides when present.
  a.f_onoff_macro = 0.25;
  b.f_onoff_macro = 0.20;
  EXPECT_EQ(RankSystems({{"a", a}, {"b", b}})[0].name, "a");
}

}  // namespace
}  // namespace sseld
