#pragma once

#include <string>

#include "lords/dgp.hpp"
#include "lords/mc.hpp"

namespace lords {

enum class Table1Format { markdown, csv, json };

Table1Format table1_format_from_string(const std::string& s);
std::string file_extension(Table1Format format);

// Six-row results table: approach, what it does, the estimand it implies, the
// simulated ground-truth value, and the replication median with a 95%
// simulation interval. Human and machine formats round identically to one
// decimal so csv and json carry the same numbers.
std::string emit_table1(const SummaryTable& summary, const GroundTruth& truth,
                        Table1Format format);

}  // namespace lords
