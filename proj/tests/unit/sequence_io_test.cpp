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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "skelimg/errors.hpp"
#include "skelimg/landmark.hpp"
#include "skelimg/sequence_io.hpp"

namespace skelimg {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("skelimg_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string Row(std::size_t frame, const LandmarkSequence& seq) {
  std::string csv = FormatSequence(seq);
  std::istringstream in(csv);
  std::string line;
  for (std::size_t i = 0; i <= frame + 1; ++i) std::getline(in, line);
  return line;
}

LandmarkSequence Parse(const std::string& text, ReadOptions opts = {}) {
  std::istringstream in(text);
  return ParseSequence(in, opts);
}

TEST(LandmarkTest, CanonicalLayoutOrderAndSize) {
  const auto& layout = CanonicalLayout();
  ASSERT_EQ(layout.size(), 543u);
  EXPECT_EQ(ColumnStem(layout[0]), "face_0");
  EXPECT_EQ(ColumnStem(layout[468]), "pose_0");
  EXPECT_EQ(ColumnStem(layout[501]), "left_hand_0");
  EXPECT_EQ(ColumnStem(layout[542]), "right_hand_20");
  for (int slot = 0; slot < 543; ++slot) EXPECT_EQ(CanonicalSlot(FromCanonicalSlot(slot)), slot);
}

TEST(LandmarkTest, HeaderHas1087Columns) {
  const std::string header = CsvHeader(CanonicalLayout());
  EXPECT_EQ(std::count(header.begin(), header.end(), ',') + 1, 1087);
  EXPECT_EQ(header.rfind("frame,face_0_x,face_0_y,face_1_x", 0), 0u);
  EXPECT_TRUE(header.ends_with("right_hand_20_x,right_hand_20_y"));
}

TEST(LandmarkTest, SetRejectsOutOfRangeAndDuplicateLayoutIds) {
  LandmarkSequence seq = LandmarkSequence::Canonical(2);
  EXPECT_THROW(seq.Set(0, 0, {1.2, 0.5}), RangeError);
  EXPECT_THROW(LandmarkSequence({{BodyPart::kPose, 1}, {BodyPart::kPose, 1}}, 1), ValidationError);
}

TEST(SequenceIoTest, MissingFace10InRowOne) {
  LandmarkSequence seq = LandmarkSequence::Canonical(3);
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t l = 0; l < 543; ++l) seq.Set(t, l, {0.25, 0.75});
  }
  seq.SetMissing(1, 10);
  const LandmarkSequence back = Parse(FormatSequence(seq));
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t l = 0; l < 543; ++l) {
      EXPECT_EQ(back.present(t, l), !(t == 1 && l == 10)) << t << "," << l;
    }
  }
}

TEST(SequenceIoTest, EmptySequenceIsHeaderOnly) {
  const std::string csv = FormatSequence(LandmarkSequence::Canonical(0));
  EXPECT_EQ(csv, CsvHeader(CanonicalLayout()) + "\n");
  EXPECT_EQ(Parse(csv).frame_count(), 0u);
}

TEST(SequenceIoTest, OneMissingLandmarkGivesTwoEmptyCells) {
  LandmarkSequence seq({{BodyPart::kPose, 0}, {BodyPart::kPose, 1}}, 1);
  seq.Set(0, 0, {0.5, 0.5});
  const std::string row = Row(0, seq);
  EXPECT_EQ(row, "0,0.500000,0.500000,,");
}

TEST(SequenceIoTest, RoundTripRandomSequences) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const LandmarkSequence seq = oracle::RandomSequence(rng, CanonicalLayout(), 1 + i % 7, 0.1);
    const LandmarkSequence back = Parse(FormatSequence(seq));
    EXPECT_TRUE(back.ApproxEquals(seq, 5e-7));
    EXPECT_EQ(FormatSequence(back), FormatSequence(seq));
  }
}

TEST(SequenceIoTest, HeaderErrorNamesColumn) {
  std::string header = CsvHeader(CanonicalLayout());
  header.replace(header.find("face_1_x"), 8, "face_9_x");
  try {
    Parse(header + "\n");
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("column 3"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("face_1_x"), std::string::npos) << e.what();
  }
}

TEST(SequenceIoTest, NonIncreasingFramesAreOrderingErrors) {
  LandmarkSequence seq = LandmarkSequence::Canonical(2);
  std::string csv = FormatSequence(seq);
  const auto second_row = csv.find("\n1,");
  csv.replace(second_row + 1, 1, "0");
  EXPECT_THROW(Parse(csv), OrderingError);
}

TEST(SequenceIoTest, HalfMissingCellIsSchemaError) {
  LandmarkSequence seq({{BodyPart::kPose, 0}}, 1);
  EXPECT_THROW(Parse(CsvHeader(seq.layout()) + "\n0,0.5,\n", {.require_canonical = false}),
               SchemaError);
}

TEST(SequenceIoTest, OutOfRangeClampedWithinTolerance) {
  LandmarkSequence seq({{BodyPart::kPose, 0}}, 1);
  const std::string header = CsvHeader(seq.layout()) + "\n";
  ReadOptions opts{.require_canonical = false};
  const LandmarkSequence clamped = Parse(header + "0,-0.2,1.3\n", opts);
  EXPECT_EQ(clamped.x(0, 0), 0.0);
  EXPECT_EQ(clamped.y(0, 0), 1.0);
  EXPECT_THROW(Parse(header + "0,1.6,0.5\n", opts), RangeError);
  opts.out_of_range = OutOfRangePolicy::kReject;
  EXPECT_THROW(Parse(header + "0,-0.2,0.5\n", opts), RangeError);
}

TEST(SequenceIoTest, NonCanonicalRejectedByDefault) {
  LandmarkSequence seq({{BodyPart::kPose, 0}}, 1);
  EXPECT_THROW(Parse(CsvHeader(seq.layout()) + "\n0,0.5,0.5\n"), SchemaError);
}

TEST(CutRepetitionsTest, ThreeEqualCuts) {
  std::mt19937_64 rng(2);
  LandmarkSequence seq = oracle::RandomSequence(rng, {{BodyPart::kPose, 0}}, 30, 0.0);
  seq.video_id = "v";
  seq.signer_id = "s1";
  seq.label = "hello";
  const std::vector<CutRange> cuts = {{0, 10, 1}, {10, 20, 2}, {20, 30, 3}};
  const auto parts = CutRepetitions(seq, cuts);
  ASSERT_EQ(parts.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(parts[i].frame_count(), 10u);
    EXPECT_EQ(parts[i].signer_id, "s1");
    EXPECT_EQ(parts[i].label, "hello");
    EXPECT_EQ(parts[i].video_id, "v_r" + std::to_string(i + 1));
    EXPECT_EQ(parts[i].x(0, 0), seq.x(10 * i, 0));
  }
}

TEST(CutRepetitionsTest, SingleFullCutIsIdentity) {
  std::mt19937_64 rng(3);
  LandmarkSequence seq = oracle::RandomSequence(rng, {{BodyPart::kPose, 0}}, 30, 0.2);
  const std::vector<CutRange> cuts = {{0, 30, 0}};
  LandmarkSequence part = CutRepetitions(seq, cuts).at(0);
  part.video_id = seq.video_id;
  EXPECT_EQ(part, seq);
}

TEST(CutRepetitionsTest, RejectsOverlapAndOutOfRange) {
  const LandmarkSequence seq({{BodyPart::kPose, 0}}, 30);
  const std::vector<CutRange> overlap = {{0, 12, 1}, {10, 20, 2}};
  const std::vector<CutRange> beyond = {{25, 31, 1}};
  EXPECT_THROW(CutRepetitions(seq, overlap), ValidationError);
  EXPECT_THROW(CutRepetitions(seq, beyond), ValidationError);
}

TEST(CutRepetitionsTest, GeneratedCutsPreserveFrameTotals) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int reps = std::uniform_int_distribution<int>(8, 16)(rng);
    std::vector<CutRange> cuts;
    std::size_t frame = 0;
    std::size_t kept = 0;
    for (int r = 0; r < reps; ++r) {
      frame += std::uniform_int_distribution<std::size_t>(0, 3)(rng);
      const std::size_t len = std::uniform_int_distribution<std::size_t>(5, 20)(rng);
      cuts.push_back({frame, frame + len, r});
      kept += len;
      frame += len;
    }
    const LandmarkSequence seq({{BodyPart::kRightHand, 0}}, frame + 2);
    const auto parts = CutRepetitions(seq, cuts);
    ASSERT_EQ(parts.size(), static_cast<std::size_t>(reps));
    std::size_t total = 0;
    for (const auto& p : parts) total += p.frame_count();
    EXPECT_EQ(total, kept);
  }
}

TEST(DatasetManifestTest, SaveLoadAndCuts) {
  TempDir dir;
  LandmarkSequence seq = LandmarkSequence::Canonical(20);
  fs::create_directories(dir.path() / "clips");
  WriteSequence(seq, dir.path() / "clips" / "a.csv");
  DatasetManifest m;
  m.entries.push_back({"a", "s1", "yes", dir.path() / "clips" / "a.csv"});
  m.cut_points.push_back({"a", 0, 8, 1});
  m.cut_points.push_back({"a", 8, 20, 2});
  SaveDatasetManifest(m, dir.path() / "manifest.json");

  const DatasetManifest back = LoadDatasetManifest(dir.path() / "manifest.json");
  ASSERT_EQ(back.entries.size(), 1u);
  EXPECT_EQ(fs::weakly_canonical(back.entries[0].path),
            fs::weakly_canonical(dir.path() / "clips" / "a.csv"));
  const auto parts = LoadEntry(back, back.entries[0]);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[1].video_id, "a_r2");
  EXPECT_EQ(parts[1].frame_count(), 12u);
  EXPECT_EQ(parts[1].label, "yes");
}

TEST(DatasetManifestTest, MissingFileIsIoError) {
  TempDir dir;
  std::ofstream(dir.path() / "m.json")
      << R"({"entries":[{"video_id":"x","signer_id":"s","label":"l","path":"nope.csv"}]})";
  EXPECT_THROW(LoadDatasetManifest(dir.path() / "m.json"), IoError);
}

}  // namespace
}  // namespace skelimg
