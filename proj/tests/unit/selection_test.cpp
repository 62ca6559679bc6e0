/* Copyright 2026 The skelimg Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "skelimg/errors.hpp"
#include "skelimg/selection.hpp"

namespace skelimg {
namespace {

struct Expected {
  const char* name;
  std::size_t total;
  std::size_t face;
  std::size_t pose;
  std::size_t hands;
};

class BuiltinManifestTest : public ::testing::TestWithParam<Expected> {};

TEST_P(BuiltinManifestTest, CountsPerPart) {
  const Expected e = GetParam();
  const SelectionManifest m = LoadManifest(e.name);
  EXPECT_EQ(m.ids.size(), e.total);
  EXPECT_EQ(m.expected_count, e.total);
  EXPECT_EQ(m.CountPart(BodyPart::kFace), e.face);
  EXPECT_EQ(m.CountPart(BodyPart::kPose), e.pose);
  EXPECT_EQ(m.CountPart(BodyPart::kLeftHand) + m.CountPart(BodyPart::kRightHand), e.hands);
  EXPECT_EQ(std::set<LandmarkId>(m.ids.begin(), m.ids.end()).size(), m.ids.size());
}

INSTANTIATE_TEST_SUITE_P(Strategies, BuiltinManifestTest,
                         ::testing::Values(Expected{"all", 543, 468, 33, 42},
                                           Expected{"laines", 68, 20, 6, 42},
                                           Expected{"arcanjo", 75, 0, 33, 42},
                                           Expected{"asl-1st", 118, 76, 0, 42},
                                           Expected{"asl-2nd", 80, 32, 6, 42}));

TEST(SelectionTest, ArcanjoIsAllPoseThenAllHands) {
  const SelectionManifest m = LoadManifest("ARCANJO");
  for (int i = 0; i < 33; ++i) EXPECT_EQ(m.ids[i], (LandmarkId{BodyPart::kPose, i}));
  for (int i = 0; i < 21; ++i) {
    EXPECT_EQ(m.ids[33 + i], (LandmarkId{BodyPart::kLeftHand, i}));
    EXPECT_EQ(m.ids[54 + i], (LandmarkId{BodyPart::kRightHand, i}));
  }
}

TEST(SelectionTest, UnknownNameListsBuiltins) {
  try {
    LoadManifest("openpose");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("asl-2nd"), std::string::npos);
  }
}

TEST(SelectionTest, ParseRejectsDuplicatesAndCountMismatch) {
  EXPECT_THROW(ParseManifest(R"({"name":"d","expected_count":2,
      "ids":[{"part":"pose","index":1},{"part":"pose","index":1}]})"),
               ValidationError);
  EXPECT_THROW(ParseManifest(R"({"name":"c","expected_count":3,
      "ids":[{"part":"pose","index":1},{"part":"pose","index":2}]})"),
               ValidationError);
  EXPECT_THROW(ParseManifest(R"({"name":"r","expected_count":1,
      "ids":[{"part":"left_hand","index":21}]})"),
               ValidationError);
  EXPECT_THROW(ParseManifest("{not json"), SchemaError);
}

TEST(SelectionTest, ManifestJsonRoundTrip) {
  const SelectionManifest m = LoadManifest("asl-1st");
  const SelectionManifest back = ParseManifest(ManifestToJson(m));
  EXPECT_EQ(back.ids, m.ids);
  EXPECT_EQ(back.name, m.name);
}

TEST(SelectionTest, LoadsManifestFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "skelimg_custom_manifest.json";
  std::ofstream(path) << R"({"name":"wrists","expected_count":2,
      "ids":[{"part":"right_hand","index":0},{"part":"left_hand","index":0}]})";
  const SelectionManifest m = LoadManifest(path.string());
  EXPECT_EQ(m.ids.size(), 2u);
  std::filesystem::remove(path);
}

TEST(SelectionTest, AllIsIdentity) {
  std::mt19937_64 rng(5);
  LandmarkSequence seq = oracle::RandomSequence(rng, CanonicalLayout(), 4, 0.2);
  seq.video_id = "clip";
  EXPECT_EQ(ApplySelection(seq, LoadManifest("all")), seq);
}

TEST(SelectionTest, RandomProjectionMatchesInput) {
  std::mt19937_64 rng(6);
  const LandmarkSequence seq = oracle::RandomSequence(rng, CanonicalLayout(), 6, 0.3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> slots(543);
    std::iota(slots.begin(), slots.end(), 0);
    std::shuffle(slots.begin(), slots.end(), rng);
    SelectionManifest m;
    m.name = "random";
    for (int i = 0; i < 10; ++i) m.ids.push_back(FromCanonicalSlot(slots[i]));
    m.expected_count = 10;
    const LandmarkSequence out = ApplySelection(seq, m);
    ASSERT_EQ(out.landmark_count(), 10u);
    for (std::size_t t = 0; t < 6; ++t) {
      for (std::size_t k = 0; k < 10; ++k) {
        const std::size_t src = static_cast<std::size_t>(slots[k]);
        ASSERT_EQ(out.present(t, k), seq.present(t, src));
        if (seq.present(t, src)) {
          EXPECT_EQ(out.x(t, k), seq.x(t, src));
          EXPECT_EQ(out.y(t, k), seq.y(t, src));
        }
      }
    }
    EXPECT_EQ(ApplySelection(out, m), out);
  }
}

TEST(SelectionTest, ArcanjoOutputHasNoFace) {
  const LandmarkSequence out = ApplySelection(LandmarkSequence::Canonical(2), LoadManifest("arcanjo"));
  for (const LandmarkId& id : out.layout()) EXPECT_NE(id.part, BodyPart::kFace);
}

TEST(SelectionTest, AbsentIdIsAnError) {
  const LandmarkSequence seq({{BodyPart::kPose, 0}}, 1);
  EXPECT_THROW(ApplySelection(seq, LoadManifest("arcanjo")), ValidationError);
}

}  // namespace
}  // namespace skelimg
