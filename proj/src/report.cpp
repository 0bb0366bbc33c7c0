#include "bandit/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>

namespace bandit {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // also folds -0
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 9);
  return std::string(buf.data(), ptr);
}

void write_curves_csv(std::ostream& out, std::span<const AggregateCurve> curves) {
  out << "policy,run_count,checkpoint_t,mean_regret,stderr_regret\n";
  for (const AggregateCurve& c : curves) {
    for (std::size_t j = 0; j < c.checkpoint_t.size(); ++j) {
      out << c.policy << ',' << c.runs << ',' << c.checkpoint_t[j] << ','
          << format_number(c.mean_regret[j]) << ',' << format_number(c.stderr_regret[j])
          << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, std::span<const AggregateCurve> curves) {
  std::vector<std::size_t> order(curves.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return curves[a].final_mean() < curves[b].final_mean();
  });
  out << "policy,final_mean_regret,final_stderr\n";
  for (std::size_t i : order) {
    out << curves[i].policy << ',' << format_number(curves[i].final_mean()) << ','
        << format_number(curves[i].final_stderr()) << '\n';
  }
}

void write_bounds_csv(std::ostream& out, std::span<const BoundRow> rows) {
  out << "algorithm,gap_dependent_form,gap_dependent,gap_independent_form,gap_independent\n";
  for (const BoundRow& r : rows) {
    out << r.algorithm << ',' << r.gap_dependent_form << ',' << format_number(r.gap_dependent)
        << ',' << r.gap_independent_form << ',' << format_number(r.gap_independent) << '\n';
  }
}

void write_lemma_report(std::ostream& out, const Lemma1Report& l1, const Lemma2Report& l2,
                        const Lemma6Report& l6) {
  out << "Lemma 1: " << l1.violations << " violations over " << l1.points
      << " (K, T, m) points, " << l1.skipped << " out-of-regime (K, T) skipped, max ratio "
      << format_number(l1.max_ratio) << " at K=" << l1.worst.num_arms
      << " T=" << l1.worst.horizon << " m=" << l1.worst_m << " (limit 1.5)\n";
  out << "Lemma 2: " << l2.violations << " violations over " << l2.points
      << " (K, T, gap) points, " << l2.out_of_regime
      << " out-of-regime, max confidence/(gap/4) " << format_number(l2.max_ratio) << '\n';
  out << "Lemma 6: " << l6.violations << " failures with precondition met, " << l6.equalities
      << " equality cases, " << l6.cases.size() << " cases\n";
  out << "  c1,c2,variance,lhs_coefficient,rhs_coefficient,precondition,result\n";
  for (const Lemma6Case& c : l6.cases) {
    const char* result = c.equality ? "equality" : (c.holds ? "holds" : "FAILS");
    out << "  " << format_number(c.c1) << ',' << format_number(c.c2) << ','
        << format_number(c.variance) << ',' << format_number(c.lhs_coefficient) << ','
        << format_number(c.rhs_coefficient) << ',' << (c.precondition ? "met" : "not met")
        << ',' << result << '\n';
  }
}

}  // namespace bandit
