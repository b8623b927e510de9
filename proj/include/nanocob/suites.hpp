#pragma once

#include "nanocob/explorer.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace nanocob {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> messages;  // first few failures, then notes
  double seconds = 0;
  bool passed() const { return failures == 0; }
};

// Sample sizes; the defaults are the acceptance sizes.
struct SuiteSizes {
  std::size_t surgery = 500;
  std::size_t genus_rank_max_length = 10;
  std::size_t moves = 1000;
  std::size_t shifts = 300;
  std::size_t triangle = 100;
  std::size_t subadditivity = 100;
  std::size_t sandwich = 100;
  std::size_t bridge_words = 200;
  int s_bound = 2;
};

SuiteResult surgery_suite(Rng& rng, std::size_t count);
SuiteResult genus_rank_suite(std::size_t max_length);
// Random words paired with H1/H2/H3/surgery moves in either direction;
// gamma, u and the sign-battery genera must agree on both sides.
SuiteResult move_invariance_suite(Rng& rng, std::size_t count);
// Circular shifts: gamma up to conjugacy, u, genera, and the pairing of the
// shifted word is the 2-shift of p(w) at its first letter.
SuiteResult shift_suite(Rng& rng, std::size_t count);
SuiteResult triangle_suite(Rng& rng, std::size_t count);
SuiteResult subadditivity_suite(Rng& rng, std::size_t count);
SuiteResult sandwich_suite(Rng& rng, std::size_t count, int s_bound);
SuiteResult bridge_suite(Rng& rng, std::size_t words, int s_bound);

const std::vector<std::string>& suite_names();
// name is one of suite_names() or "all". Each suite gets its own generator
// seeded from seed and its name, so suites are reproducible in isolation.
std::vector<SuiteResult> run_suites(const std::string& name, std::uint64_t seed, const SuiteSizes& sizes = {});

}  // namespace nanocob
