#include <gtest/gtest.h>

#include "indmorse/theorems/predictions.hpp"
#include "indmorse/theorems/reports.hpp"
#include "indmorse/theorems/verify.hpp"

using namespace indmorse;

TEST(Predictions, Cycles) {
  EXPECT_EQ(predict_ind_cycle(6), Prediction::wedge(1, 2));
  EXPECT_EQ(predict_ind_cycle(5), Prediction::wedge(1, 1));
  EXPECT_EQ(predict_ind_cycle(3), Prediction::wedge(0, 2));
  EXPECT_EQ(predict_ind_cycle(7), Prediction::wedge(1, 1));
  EXPECT_THROW(predict_ind_cycle(2), parameter_error);
}

TEST(Predictions, Sg2) {
  EXPECT_EQ(predict_ind_sg2(2), Prediction::wedge(1, 2));
  EXPECT_EQ(predict_ind_sg2(3), Prediction::wedge(1, 1));
  EXPECT_EQ(predict_ind_sg2(4), Prediction::wedge(2, 3));
  EXPECT_EQ(predict_ind_sg2(5), Prediction::wedge(2, 11));
  EXPECT_EQ(predict_ind_sg2(8), Prediction::wedge(2, 69));
  EXPECT_THROW(predict_ind_sg2(1), parameter_error);
  for (int k = 3; k <= 64; ++k) {
    EXPECT_TRUE(sg2_formula_identity(k)) << k;
    EXPECT_EQ(sg2_sphere_formula(k), sg2_critical_formula(k)) << k;
  }
}

TEST(Predictions, EGraphs) {
  EXPECT_EQ(predict_ind_e(5), Prediction::wedge(3, 3));
  EXPECT_EQ(predict_ind_e(8), Prediction::wedge(3, 2));
  EXPECT_EQ(predict_ind_e(4), Prediction::wedge(2, 1));
  EXPECT_EQ(predict_ind_e(3), Prediction::wedge(2, 1));
  EXPECT_EQ(predict_ind_e(6), Prediction::wedge(2, 1));
  EXPECT_EQ(predict_ind_e(7), Prediction::wedge(4, 1));
  EXPECT_EQ(predict_ind_e(9), Prediction::wedge(5, 3));
  EXPECT_EQ(predict_ind_e(10), Prediction::wedge(4, 1));
  for (int n = 3; n <= 1000; ++n) EXPECT_EQ(e_cases(n).size(), 1U) << n;
  EXPECT_FALSE(predict(Family::e, 2).has_value());
}

TEST(Predictions, LaddersAndPaths) {
  EXPECT_EQ(predict_ind_el(0), Prediction::wedge(0, 1));
  EXPECT_EQ(predict_ind_el(5), Prediction::wedge(2, 1));
  EXPECT_TRUE(predict_ind_el(6).contractible());
  EXPECT_TRUE(predict_ind_path(4).contractible());
  EXPECT_EQ(predict_ind_path(8), Prediction::wedge(2, 1));
  EXPECT_EQ(predict_ind_path(9), Prediction::wedge(2, 1));
  EXPECT_EQ(Prediction::wedge(3, 3).describe(), "3xS^3");
  EXPECT_EQ(Prediction::contractible_space().describe(), "contractible");
}

TEST(Predictions, MorseCounts) {
  EXPECT_EQ(predict_morse_counts(Family::el, 5), (MorsePrediction{{{3, 1}}}));
  EXPECT_EQ(predict_morse_counts(Family::el, 6), MorsePrediction{});
  EXPECT_EQ(predict_morse_counts(Family::path, 8), (MorsePrediction{{{3, 1}}}));
  EXPECT_EQ(predict_morse_counts(Family::cycle, 9), (MorsePrediction{{{3, 2}}}));
  EXPECT_EQ(predict_morse_counts(Family::sg2, 6), (MorsePrediction{{{3, 24}}}));
  EXPECT_EQ(predict_morse_counts(Family::sg2, 3), (MorsePrediction{{{2, 1}}}));
  EXPECT_EQ(predict_morse_counts(Family::e, 5), (MorsePrediction{{{4, 3}}}));
  EXPECT_EQ(predict_morse_counts(Family::e, 10), (MorsePrediction{{{5, 1}}}));
  EXPECT_THROW(predict_morse_counts(Family::sg2, 2), parameter_error);
  // Critical sizes sit one above the sphere dimension.
  for (int n = 3; n <= 12; ++n) {
    const auto m = predict_morse_counts(Family::e, n);
    const auto p = predict_ind_e(n);
    ASSERT_EQ(m.cells.size(), 1U);
    EXPECT_EQ(m.cells[0].size - 1, p.spheres[0].dim) << n;
    EXPECT_EQ(m.cells[0].count, p.spheres[0].count) << n;
  }
}

TEST(Verify, SmallSweeps) {
  for (const auto& r : verify_family(Family::cycle, 3, 9)) {
    EXPECT_EQ(r.verdict(), Verdict::match) << report_block(r);
    EXPECT_TRUE(r.find("homology.prediction"));
    EXPECT_TRUE(r.find("morse.prediction"));
  }
  for (const auto& r : verify_family(Family::sg2, 2, 4)) EXPECT_EQ(r.verdict(), Verdict::match) << report_block(r);
  const auto e = verify_instance(Family::e, 2);
  EXPECT_FALSE(e.prediction);
  EXPECT_EQ(e.construction, "search");
  EXPECT_EQ(e.verdict(), Verdict::match);
}

TEST(Verify, ChannelsAndBudgets) {
  VerifyOptions opt;
  opt.homology = false;
  const auto r = verify_instance(Family::e, 5, opt);
  EXPECT_FALSE(r.homology);
  EXPECT_TRUE(r.morse);
  EXPECT_EQ(r.verdict(), Verdict::match);
  opt.face_budget = 100;
  const auto b = verify_instance(Family::e, 5, opt);
  EXPECT_TRUE(b.budget_exhausted);
  EXPECT_EQ(b.verdict(), Verdict::skipped);
  EXPECT_THROW(verify_family(Family::cycle, 5, 4), parameter_error);
}

TEST(Verify, MismatchDominates) {
  VerificationReport r;
  r.checks.push_back({"a", Verdict::match, ""});
  r.checks.push_back({"b", Verdict::mismatch, ""});
  EXPECT_EQ(r.verdict(), Verdict::mismatch);
  r.checks.pop_back();
  EXPECT_EQ(r.verdict(), Verdict::match);
  r.checks.clear();
  EXPECT_EQ(r.verdict(), Verdict::skipped);
}

TEST(Reports, DeterministicAndComplete) {
  const auto a = verify_family(Family::e, 3, 5);
  const auto b = verify_family(Family::e, 3, 5);
  EXPECT_EQ(reports_json(a), reports_json(b));
  EXPECT_EQ(report_blocks(a), report_blocks(b));
  const auto block = report_block(a[0]);
  EXPECT_NE(block.find("instance=e(n=3)\n"), std::string::npos);
  EXPECT_NE(block.find("betti=-1:0,0:0,1:0,2:1"), std::string::npos);
  EXPECT_NE(block.find("verdict=match\n"), std::string::npos);
  const auto json = nlohmann::json::parse(reports_json(a));
  EXPECT_EQ(json.size(), 3U);
  EXPECT_EQ(json[2]["prediction"][0]["count"], 3);
  EXPECT_NE(summary_table(a).find("3xS^3"), std::string::npos);
}
