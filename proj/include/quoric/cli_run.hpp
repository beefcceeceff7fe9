#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace quoric::cli {

// One batch job.  Seed and tolerance have fixed defaults so identical configs
// reproduce byte-identical reports.
struct JobConfig {
  std::string command;        // validate | enumerate | rigidity | cech | reps
  std::string input_path;
  std::string output_path;    // empty: stream only
  std::string format = "text";  // text | json-like
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  std::uint64_t max_candidates = 10'000'000;
};

// Runs the job, writes the report to out (and to output_path when set), and
// returns the exit status: 0 success/valid, 1 invalid or obstruction found
// (still a correct run), 2 input error, 3 size-guard refusal.
int run(const JobConfig& cfg, std::ostream& out);

}  // namespace quoric::cli
