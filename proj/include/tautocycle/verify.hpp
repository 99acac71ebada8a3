#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tautocycle/structure.hpp"

namespace tc {

struct CheckResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

constexpr int kPaperChecks = 12;

// root: repository directory, used by the scope check to find the README
CheckResult run_paper_check(int id, unsigned seed, const std::string& root);
std::vector<CheckResult> run_paper_suite(unsigned seed, const std::string& root,
                                         const std::function<void(const CheckResult&)>& each = {});
std::string format_check(const CheckResult& r);

// seeded members of the standard families, moved by a random change of
// x, y, z, kept only when t is a non-zero-divisor
struct SeededIdeal {
  std::string label;
  MacaulayData m;
  GradedIdeal ideal;
};
std::vector<SeededIdeal> seeded_u_ideals(int count, unsigned seed);

}  // namespace tc
