#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgw/group.hpp"
#include "pgw/multiplier.hpp"

namespace pgw {

// checked:    the inequality is a theorem for this input; suites assert it
// info:       evaluated and recorded, but not asserted (e.g. the group is
//             not powerful, so the powerful-only bounds may fail)
// constraint: the multiplier is unknown; the record carries the bound values
// skipped:    required inputs are missing
enum class CheckStatus { checked, info, constraint, skipped };

const char* to_string(CheckStatus s);

// All order comparisons are on integer p-exponents; no floating point is
// involved in any holds/attained decision.
struct BoundCheck {
  std::string name;
  std::optional<long long> lhs;
  std::optional<long long> rhs;
  std::optional<bool> holds;
  std::optional<bool> attained;
  CheckStatus status = CheckStatus::skipped;
  std::string note;
};

struct GroupFacts {
  std::string group_id;
  uint64_t p = 2;
  int c = 1;
  GroupInvariants inv;
  std::optional<AbelianPGroup> multiplier;        // M^(c), when known
  std::optional<AbelianPGroup> schur_multiplier;  // M^(1), when known
  std::optional<long long> gamma_cplus1_order_exp;
  std::optional<long long> derived_order_exp;
  const GroupTable* table = nullptr;  // enables the commutator-condition check
};

struct BoundReport {
  std::string group_id;
  uint64_t p = 2;
  int c = 1;
  GroupInvariants inv;
  std::optional<AbelianPGroup> multiplier;
  std::vector<BoundCheck> checks;
  std::vector<std::string> context;  // known results reported but not checked
};

BoundCheck check_generator_bound(long long d_m, int d_g, int c, bool powerful);
BoundCheck check_exponent_bound(int e_m, int e_g, bool powerful);
BoundCheck check_order_bound(std::optional<long long> order_exp_m, int d, int e, int c,
                             bool powerful, std::optional<long long> sandwich_upper);
std::vector<BoundCheck> check_lubotzky_mann_basics(const GroupInvariants& inv,
                                                   std::optional<long long> schur_order_exp,
                                                   bool powerful);
BoundCheck check_sandwich_bound(std::optional<long long> order_exp_m, long long gamma_order_exp,
                                int d, int n, int c);
BoundCheck check_rank_class_bound(std::optional<long long> d_m, int d, std::optional<int> r, int t,
                                  int c);
std::vector<BoundCheck> check_jones_bounds(std::optional<long long> schur_order_exp,
                                           std::optional<long long> derived_order_exp, int n,
                                           std::optional<int> k);
BoundCheck check_ellis_exponent(std::optional<int> e_mc, int e, int cl);
BoundCheck check_ellis_commutator_condition(const GroupTable& g);

// Every applicable check exactly once, in a fixed order; non-applicable
// checks appear with an explicit skipped status.
BoundReport full_report(const GroupFacts& facts);

}  // namespace pgw
