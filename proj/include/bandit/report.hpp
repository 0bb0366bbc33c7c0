#pragma once

// CSV and plain-text writers. Numbers use '.' as decimal separator, no digit
// grouping, and the shortest of fixed/scientific with 9 significant digits,
// so identical inputs give identical bytes on every platform.

#include <ostream>
#include <span>
#include <string>

#include "bandit/bounds.hpp"
#include "bandit/simulator.hpp"

namespace bandit {

std::string format_number(double value);

// policy,run_count,checkpoint_t,mean_regret,stderr_regret
// Rows grouped by policy in the given order, then by checkpoint.
void write_curves_csv(std::ostream& out, std::span<const AggregateCurve> curves);

// policy,final_mean_regret,final_stderr
// Rows by ascending final mean regret; ties keep the given order.
void write_summary_csv(std::ostream& out, std::span<const AggregateCurve> curves);

// algorithm,gap_dependent_form,gap_dependent,gap_independent_form,gap_independent
void write_bounds_csv(std::ostream& out, std::span<const BoundRow> rows);

// Plain-text lemma report; one "Lemma N: ..." summary line per lemma, then
// the Lemma 6 cases.
void write_lemma_report(std::ostream& out, const Lemma1Report& l1, const Lemma2Report& l2,
                        const Lemma6Report& l6);

}  // namespace bandit
