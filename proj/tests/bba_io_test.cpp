#include "dsmt/bba_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "gtest/gtest.h"

using namespace dsmt;

TEST(ParseBba, DsmFile) {
  const auto loaded =
      parse_bba(R"({"n":2,"model":"dsm","masses":[{"expr":"t1","mass":0.6},{"expr":"t1|t2","mass":0.4}]})");
  EXPECT_EQ(Model::dsm, loaded.model);
  const auto& m = std::get<GeneralizedBBA>(loaded.bba);
  EXPECT_EQ(2u, m.size());
  EXPECT_DOUBLE_EQ(0.6, m.mass(atom_mask(1, Frame(2))));
  EXPECT_DOUBLE_EQ(0.4, m.mass(VennMask::all_ones(Frame(2))));
  EXPECT_TRUE(loaded.warnings.empty());
}

TEST(ParseBba, MassDeficitIsNamed) {
  try {
    parse_bba(R"({"n":2,"model":"dsm","masses":[{"expr":"t1","mass":0.5},{"expr":"t2","mass":0.4}]})");
    FAIL();
  } catch (const MassError& e) {
    EXPECT_NE(std::string(e.what()).find("deficit 0.1"), std::string::npos) << e.what();
  }
}

TEST(ParseBba, DstModelRejectsIntersections) {
  EXPECT_THROW(parse_bba(R"({"n":2,"model":"dst","masses":[{"expr":"t1&t2","mass":1.0}]})"), MassError);
  EXPECT_THROW(parse_bba(R"({"n":3,"model":"dst","masses":[{"expr":"t1|t2&t3","mass":1.0}]})"), MassError);
  const auto ok = parse_bba(R"({"n":3,"model":"dst","masses":[{"expr":"t1|t3","mass":0.5},{"expr":"t2","mass":0.5}]})");
  const auto& m = std::get<ClassicalBBA>(ok.bba);
  EXPECT_DOUBLE_EQ(0.5, m.mass(0b101));
  EXPECT_DOUBLE_EQ(0.5, m.mass(0b010));
}

TEST(ParseBba, DuplicatesMergeWithWarning) {
  const auto loaded = parse_bba(
      R"j({"n":2,"model":"dsm","masses":[{"expr":"t1","mass":0.3},{"expr":"t1&(t1|t2)","mass":0.3},{"expr":"t2","mass":0.4}]})j");
  const auto& m = std::get<GeneralizedBBA>(loaded.bba);
  EXPECT_EQ(2u, m.size());
  EXPECT_DOUBLE_EQ(0.6, m.mass(atom_mask(1, Frame(2))));
  ASSERT_EQ(1u, loaded.warnings.size());
  EXPECT_NE(loaded.warnings[0].find("merged"), std::string::npos);
}

TEST(ParseBba, Malformed) {
  EXPECT_THROW(parse_bba("{not json"), FormatError);
  EXPECT_THROW(parse_bba(R"({"model":"dsm","masses":[]})"), FormatError);
  EXPECT_THROW(parse_bba(R"({"n":2,"model":"tbm","masses":[]})"), FormatError);
  EXPECT_THROW(parse_bba(R"({"n":2,"model":"dsm","masses":[{"expr":"t1"}]})"), FormatError);
  EXPECT_THROW(parse_bba(R"({"n":2,"model":"dsm"})"), FormatError);
  EXPECT_THROW(parse_bba(R"({"n":20,"model":"dsm","masses":[]})"), FormatError);
}

TEST(ParseBba, ExpressionErrorsKeepOffset) {
  try {
    parse_bba(R"({"n":2,"model":"dsm","masses":[{"expr":"t1|t3","mass":1.0}]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(ParseError::Kind::atom_out_of_range, e.kind());
    EXPECT_EQ(3u, e.offset());
    EXPECT_NE(std::string(e.what()).find("masses[0]"), std::string::npos);
  }
}

TEST(ParseBba, EmptySetAndRangeChecks) {
  EXPECT_THROW(parse_bba(R"({"n":2,"model":"dsm","masses":[{"expr":"0","mass":0.2},{"expr":"t1","mass":0.8}]})"),
               MassError);
  EXPECT_THROW(parse_bba(R"({"n":2,"model":"dsm","masses":[{"expr":"t1","mass":-0.2},{"expr":"t2","mass":1.2}]})"),
               MassError);
  const auto zero =
      parse_bba(R"({"n":2,"model":"dsm","masses":[{"expr":"t1","mass":0},{"expr":"t2","mass":1}]})");
  EXPECT_EQ(1u, std::get<GeneralizedBBA>(zero.bba).size());
  EXPECT_EQ(1u, zero.warnings.size());
}

TEST(ParseBba, ExpectedFrame) {
  EXPECT_THROW(parse_bba(R"({"n":2,"model":"dsm","masses":[{"expr":"t1","mass":1}]})", Frame(3)), FrameMismatch);
}

TEST(LoadBba, ReadsFilesAndReportsPath) {
  const auto dir = std::filesystem::temp_directory_path() / "dsmt_bba_io_test";
  std::filesystem::create_directories(dir);
  const auto good = dir / "good.json";
  std::ofstream(good) << R"({"n":2,"model":"dsm","masses":[{"expr":"t1","mass":0.6},{"expr":"t1|t2","mass":0.4}]})";
  EXPECT_EQ(2u, std::get<GeneralizedBBA>(load_bba(good.string()).bba).size());
  EXPECT_THROW(load_bba((dir / "missing.json").string()), FormatError);
  const auto bad = dir / "bad.json";
  std::ofstream(bad) << R"({"n":2,"model":"dsm","masses":[{"expr":"t1","mass":0.9}]})";
  try {
    load_bba(bad.string());
    FAIL();
  } catch (const MassError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.json"), std::string::npos);
  }
}

TEST(ToGeneralized, AtomUnions) {
  const ClassicalBBA m(Frame(3), {{0b101, 0.5}, {0b010, 0.5}});
  const auto g = to_generalized(m);
  EXPECT_DOUBLE_EQ(0.5, g.mass(atom_mask(1, Frame(3)) | atom_mask(3, Frame(3))));
  EXPECT_DOUBLE_EQ(0.5, g.mass(atom_mask(2, Frame(3))));
  EXPECT_EQ(std::optional<AtomSet>(0b101), as_atom_union(atom_mask(1, Frame(3)) | atom_mask(3, Frame(3))));
  EXPECT_FALSE(as_atom_union(atom_mask(1, Frame(3)) & atom_mask(3, Frame(3))).has_value());
}

TEST(BeliefsReport, Examples) {
  const Frame f(2);
  const GeneralizedBBA m(f, {{VennMask::from_bits(f, "001"), 0.42},
                             {VennMask::from_bits(f, "101"), 0.18},
                             {VennMask::from_bits(f, "011"), 0.28},
                             {VennMask::from_bits(f, "111"), 0.12}});
  const auto rows = beliefs_report(m, {"t1", "t1|t2", "0"});
  ASSERT_EQ(3u, rows.size());
  EXPECT_NEAR(0.60, rows[0].bel, 1e-12);
  EXPECT_NEAR(1.00, rows[0].pl, 1e-12);
  EXPECT_NEAR(1.00, rows[1].bel, 1e-12);
  EXPECT_NEAR(1.00, rows[1].pl, 1e-12);
  EXPECT_DOUBLE_EQ(0.0, rows[2].bel);
  EXPECT_DOUBLE_EQ(0.0, rows[2].pl);

  const auto all = beliefs_report(m, {});
  ASSERT_EQ(5u, all.size());
  for (const auto& r : all) EXPECT_LE(r.bel, r.pl + 1e-12);
  EXPECT_EQ("t1&t2", all[1].expr);
}

TEST(BeliefsReport, AllRefusedBeyondFour) {
  const Frame f(5);
  const GeneralizedBBA m(f, {{VennMask::all_ones(f), 1.0}});
  EXPECT_THROW(beliefs_report(m, {}), CapacityError);
  EXPECT_EQ(1u, beliefs_report(m, {"t5"}).size());
}

TEST(DstBeliefsReport, Examples) {
  const ClassicalBBA m(Frame(2), {{0b01, 0.5}, {0b11, 0.5}});
  const auto rows = dst_beliefs_report(m, {"t1", "t2"});
  EXPECT_DOUBLE_EQ(0.5, rows[0].bel);
  EXPECT_DOUBLE_EQ(1.0, rows[0].pl);
  EXPECT_DOUBLE_EQ(0.0, rows[1].bel);
  EXPECT_DOUBLE_EQ(0.5, rows[1].pl);
  EXPECT_THROW(dst_beliefs_report(m, {"t1&t2"}), DomainError);
  EXPECT_EQ(4u, dst_beliefs_report(m, {}).size());
}
