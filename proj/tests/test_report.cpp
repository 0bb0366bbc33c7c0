#include <doctest.h>

#include <sstream>

#include "bandit/report.hpp"

using namespace bandit;

namespace {

AggregateCurve curve(std::string name, std::vector<double> mean) {
  AggregateCurve c;
  c.policy = std::move(name);
  c.runs = 3;
  for (std::size_t j = 0; j < mean.size(); ++j) c.checkpoint_t.push_back(10 * (j + 1));
  c.mean_regret = mean;
  c.stderr_regret.assign(mean.size(), 0.5);
  return c;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("number formatting is fixed at 9 significant digits") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(570.0) == "570");
  CHECK(format_number(1.0 / 3.0) == "0.333333333");
  CHECK(format_number(123456789012.0) == "1.23456789e+11");
  CHECK(format_number(972.6048) == "972.6048");
  CHECK(format_number(1.2171612389e-5) == "1.21716124e-05");
}

TEST_CASE("curves csv keeps policy order then checkpoints") {
  std::vector<AggregateCurve> cs = {curve("b", {1.0, 2.0}), curve("a", {0.5, 0.75})};
  std::ostringstream out;
  write_curves_csv(out, cs);
  CHECK(out.str() ==
        "policy,run_count,checkpoint_t,mean_regret,stderr_regret\n"
        "b,3,10,1,0.5\n"
        "b,3,20,2,0.5\n"
        "a,3,10,0.5,0.5\n"
        "a,3,20,0.75,0.5\n");
}

TEST_CASE("summary csv sorts by final regret, stable on ties") {
  std::vector<AggregateCurve> cs = {curve("x", {5.0}), curve("y", {1.0}), curve("z", {5.0})};
  std::ostringstream out;
  write_summary_csv(out, cs);
  CHECK(out.str() ==
        "policy,final_mean_regret,final_stderr\n"
        "y,1,0.5\n"
        "x,5,0.5\n"
        "z,5,0.5\n");
}

TEST_CASE("bounds csv header") {
  std::vector<BoundRow> rows = {{"ucb1", "K ln(T) / gap", 1.5, "sqrt(K T ln T)", 2.0}};
  std::ostringstream out;
  write_bounds_csv(out, rows);
  CHECK(out.str() ==
        "algorithm,gap_dependent_form,gap_dependent,gap_independent_form,gap_independent\n"
        "ucb1,K ln(T) / gap,1.5,sqrt(K T ln T),2\n");
}

}  // TEST_SUITE
