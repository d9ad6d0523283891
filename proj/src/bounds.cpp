#include "pgw/bounds.hpp"

#include <algorithm>

namespace pgw {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::checked: return "checked";
    case CheckStatus::info: return "info";
    case CheckStatus::constraint: return "constraint";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

namespace {

BoundCheck simple_le(std::string name, long long lhs, long long rhs, bool powerful,
                     std::string note = "") {
  BoundCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.holds = lhs <= rhs;
  c.attained = lhs == rhs;
  c.status = powerful ? CheckStatus::checked : CheckStatus::info;
  c.note = std::move(note);
  if (!powerful && !c.note.empty()) c.note += "; ";
  if (!powerful) c.note += "non-powerful: bound not asserted";
  return c;
}

BoundCheck skipped(std::string name, std::string note) {
  BoundCheck c;
  c.name = std::move(name);
  c.status = CheckStatus::skipped;
  c.note = std::move(note);
  return c;
}

}  // namespace

BoundCheck check_generator_bound(long long d_m, int d_g, int c, bool powerful) {
  const long long rhs = witt_chi_ll(static_cast<uint64_t>(d_g), static_cast<uint64_t>(c) + 1);
  return simple_le("generator_bound", d_m, rhs, powerful);
}

BoundCheck check_exponent_bound(int e_m, int e_g, bool powerful) {
  BoundCheck c = simple_le("exponent_bound", e_m, e_g, powerful);
  std::string prefix = "p-exponents; holds iff exp(M) divides exp(G)";
  c.note = c.note.empty() ? prefix : prefix + "; " + c.note;
  return c;
}

BoundCheck check_order_bound(std::optional<long long> order_exp_m, int d, int e, int c,
                             bool powerful, std::optional<long long> sandwich_upper) {
  const long long chi = witt_chi_ll(static_cast<uint64_t>(d), static_cast<uint64_t>(c) + 1);
  const long long rhs = chi * e;
  std::string note;
  if (sandwich_upper && rhs < *sandwich_upper)
    note = "improves the sandwich upper bound " + std::to_string(*sandwich_upper);
  if (!order_exp_m) {
    BoundCheck bc;
    bc.name = "order_bound";
    bc.rhs = rhs;
    bc.status = CheckStatus::constraint;
    bc.note = note.empty() ? "multiplier unknown; bound recorded" : note;
    return bc;
  }
  BoundCheck bc = simple_le("order_bound", *order_exp_m, rhs, powerful, note);
  return bc;
}

std::vector<BoundCheck> check_lubotzky_mann_basics(const GroupInvariants& inv,
                                                   std::optional<long long> schur_order_exp,
                                                   bool powerful) {
  std::vector<BoundCheck> out;
  out.push_back(simple_le("class_le_exponent", inv.cl, inv.e, powerful));

  {
    // l(G) <= log2(e) + 1, decided exactly as 2^(l-1) <= e
    BoundCheck c;
    c.name = "derived_length_log_bound";
    const long long lhs = inv.dl <= 0 ? 0 : (1ll << (inv.dl - 1));
    c.lhs = lhs;
    c.rhs = inv.e;
    c.holds = lhs <= inv.e;
    c.attained = lhs == inv.e;
    c.status = powerful ? CheckStatus::checked : CheckStatus::info;
    c.note = "2^(dl-1) <= e";
    if (!powerful) c.note += "; non-powerful: bound not asserted";
    out.push_back(std::move(c));
  }

  out.push_back(
      simple_le("order_le_de", inv.order_exp, static_cast<long long>(inv.d) * inv.e, powerful));

  if (schur_order_exp) {
    const long long rhs = static_cast<long long>(inv.d) * (inv.d - 1) / 2 * inv.e;
    out.push_back(simple_le("schur_order_bound", *schur_order_exp, rhs, powerful));
  } else {
    out.push_back(skipped("schur_order_bound", "Schur multiplier unknown"));
  }
  return out;
}

BoundCheck check_sandwich_bound(std::optional<long long> order_exp_m, long long gamma_order_exp,
                                int d, int n, int c) {
  const long long lo = witt_chi_ll(static_cast<uint64_t>(d), static_cast<uint64_t>(c) + 1);
  const long long hi = witt_chi_ll(static_cast<uint64_t>(n), static_cast<uint64_t>(c) + 1);
  BoundCheck bc;
  bc.name = "sandwich_order";
  bc.lhs = lo;
  bc.rhs = hi;
  if (!order_exp_m) {
    bc.status = CheckStatus::constraint;
    bc.note = "multiplier unknown; with |gamma_{c+1}| = p^" + std::to_string(gamma_order_exp) +
              ", |M| is constrained to p^[" + std::to_string(std::max(0ll, lo - gamma_order_exp)) +
              ", " + std::to_string(hi - gamma_order_exp) + "]";
    return bc;
  }
  const long long mid = *order_exp_m + gamma_order_exp;
  bc.status = CheckStatus::checked;
  bc.holds = lo <= mid && mid <= hi;
  bc.attained = mid == lo || mid == hi;
  bc.note = "|M||gamma_{c+1}| = p^" + std::to_string(mid);
  return bc;
}

BoundCheck check_rank_class_bound(std::optional<long long> d_m, int d, std::optional<int> r, int t,
                                  int c) {
  if (!d_m) return skipped("rank_class_bound", "multiplier unknown");
  if (!r) return skipped("rank_class_bound", "special rank unavailable at this order");
  long long rc = 1;
  for (int i = 0; i < c + 1; ++i) rc *= *r;
  const long long extra = rc * (t - 1);
  const long long chi = witt_chi_ll(static_cast<uint64_t>(d), static_cast<uint64_t>(c) + 1);
  BoundCheck bc;
  bc.name = "rank_class_bound";
  bc.lhs = *d_m;
  bc.rhs = chi + extra;
  bc.holds = *d_m <= chi + extra;
  bc.attained = *d_m == chi + extra;
  bc.status = CheckStatus::checked;
  bc.note = extra > 0 ? "generator_bound is strictly sharper for powerful groups"
                      : "coincides with generator_bound (class 1)";
  return bc;
}

std::vector<BoundCheck> check_jones_bounds(std::optional<long long> schur_order_exp,
                                           std::optional<long long> derived_order_exp, int n,
                                           std::optional<int> k) {
  std::vector<BoundCheck> out;
  if (!schur_order_exp) {
    out.push_back(skipped("jones_center_bound", "Schur multiplier unknown"));
    out.push_back(skipped("jones_product_bound", "Schur multiplier unknown"));
    return out;
  }
  if (k) {
    const long long rhs = static_cast<long long>(n - *k) * (n + *k - 1) / 2;
    BoundCheck bc;
    bc.name = "jones_center_bound";
    bc.lhs = *schur_order_exp;
    bc.rhs = rhs;
    bc.holds = *schur_order_exp <= rhs;
    bc.attained = *schur_order_exp == rhs;
    bc.status = CheckStatus::checked;
    bc.note = "(n-k)(n+k-1)/2 with center exponent p^k";
    out.push_back(std::move(bc));
  } else {
    out.push_back(skipped("jones_center_bound", "center exponent unavailable"));
  }
  if (derived_order_exp) {
    const long long rhs = static_cast<long long>(n) * (n - 1) / 2;
    BoundCheck bc;
    bc.name = "jones_product_bound";
    bc.lhs = *schur_order_exp + *derived_order_exp;
    bc.rhs = rhs;
    bc.holds = bc.lhs <= bc.rhs;
    bc.attained = bc.lhs == bc.rhs;
    bc.status = CheckStatus::checked;
    bc.note = "|G'||M(G)| <= p^(n(n-1)/2)";
    out.push_back(std::move(bc));
  } else {
    out.push_back(skipped("jones_product_bound", "derived subgroup order unavailable"));
  }
  return out;
}

BoundCheck check_ellis_exponent(std::optional<int> e_mc, int e, int cl) {
  if (cl < 2) return skipped("ellis_exponent_bound", "requires class >= 2");
  if (!e_mc) return skipped("ellis_exponent_bound", "multiplier unknown");
  const long long rhs = static_cast<long long>(e) * ((cl + 1) / 2);
  BoundCheck bc;
  bc.name = "ellis_exponent_bound";
  bc.lhs = *e_mc;
  bc.rhs = rhs;
  bc.holds = *e_mc <= rhs;
  bc.attained = *e_mc == rhs;
  bc.status = CheckStatus::checked;
  bc.note = rhs == e ? "e*ceil(cl/2); matches the exponent_bound value here"
                     : "e*ceil(cl/2); exponent_bound gives " + std::to_string(e);
  return bc;
}

BoundCheck check_ellis_commutator_condition(const GroupTable& g) {
  const int e = exponent_exp(g);
  BoundCheck bc;
  bc.name = "ellis_commutator_condition";
  long long violations = 0;
  std::string first_violation;
  for (int i = 1; i <= e; ++i) {
    SubgroupSet lhs = commutator_subgroup(
        g, commutator_subgroup(g, agemo(g, static_cast<unsigned>(i - 1)), full_subgroup(g)),
        full_subgroup(g));
    SubgroupSet rhs = agemo(g, static_cast<unsigned>(i));
    if (!subgroup_subset(lhs, rhs)) {
      ++violations;
      if (first_violation.empty()) first_violation = "fails at i=" + std::to_string(i);
    }
  }
  bc.lhs = violations;
  bc.rhs = 0;
  bc.holds = violations == 0;
  bc.attained = violations == 0;
  bc.status = is_powerful(g) ? CheckStatus::checked : CheckStatus::info;
  bc.note = violations == 0 ? "[[G^{p^(i-1)},G],G] <= G^{p^i} for 1 <= i <= e" : first_violation;
  return bc;
}

BoundReport full_report(const GroupFacts& facts) {
  BoundReport rep;
  rep.group_id = facts.group_id;
  rep.p = facts.p;
  rep.c = facts.c;
  rep.inv = facts.inv;
  rep.multiplier = facts.multiplier;

  const bool powerful = facts.inv.powerful;
  const auto& m = facts.multiplier;

  if (m) {
    rep.checks.push_back(check_generator_bound(m->d(), facts.inv.d, facts.c, powerful));
    rep.checks.push_back(check_exponent_bound(m->exponent_exp(), facts.inv.e, powerful));
  } else {
    BoundCheck g;
    g.name = "generator_bound";
    g.status = CheckStatus::skipped;
    g.rhs = witt_chi_ll(static_cast<uint64_t>(facts.inv.d), static_cast<uint64_t>(facts.c) + 1);
    g.note = "multiplier unknown; bound recorded";
    rep.checks.push_back(std::move(g));
    rep.checks.push_back([&] {
      BoundCheck c;
      c.name = "exponent_bound";
      c.status = CheckStatus::skipped;
      c.rhs = facts.inv.e;
      c.note = "multiplier unknown; bound recorded";
      return c;
    }());
  }

  std::optional<long long> sandwich_upper;
  if (facts.gamma_cplus1_order_exp) {
    sandwich_upper = witt_chi_ll(static_cast<uint64_t>(facts.inv.order_exp),
                                 static_cast<uint64_t>(facts.c) + 1);
  }
  rep.checks.push_back(check_order_bound(m ? std::optional<long long>(m->order_exp()) : std::nullopt,
                                         facts.inv.d, facts.inv.e, facts.c, powerful,
                                         sandwich_upper));

  std::optional<long long> schur_exp;
  if (facts.schur_multiplier) schur_exp = facts.schur_multiplier->order_exp();
  for (auto& c : check_lubotzky_mann_basics(facts.inv, schur_exp, powerful))
    rep.checks.push_back(std::move(c));

  if (facts.gamma_cplus1_order_exp) {
    rep.checks.push_back(check_sandwich_bound(
        m ? std::optional<long long>(m->order_exp()) : std::nullopt, *facts.gamma_cplus1_order_exp,
        facts.inv.d, facts.inv.order_exp, facts.c));
  } else {
    BoundCheck bc;
    bc.name = "sandwich_order";
    bc.status = CheckStatus::skipped;
    bc.note = "gamma_{c+1} order unavailable";
    rep.checks.push_back(std::move(bc));
  }

  rep.checks.push_back(check_rank_class_bound(
      m ? std::optional<long long>(m->d()) : std::nullopt, facts.inv.d, facts.inv.sr, facts.inv.cl,
      facts.c));

  for (auto& c : check_jones_bounds(schur_exp, facts.derived_order_exp, facts.inv.order_exp,
                                    facts.inv.center_exp))
    rep.checks.push_back(std::move(c));

  rep.checks.push_back(check_ellis_exponent(
      m ? std::optional<int>(m->exponent_exp()) : std::nullopt, facts.inv.e, facts.inv.cl));

  if (facts.table) {
    rep.checks.push_back(check_ellis_commutator_condition(*facts.table));
  } else if (facts.inv.cl <= 1) {
    BoundCheck bc;
    bc.name = "ellis_commutator_condition";
    bc.lhs = 0;
    bc.rhs = 0;
    bc.holds = true;
    bc.attained = true;
    bc.status = CheckStatus::checked;
    bc.note = "abelian: all commutators are trivial";
    rep.checks.push_back(std::move(bc));
  } else {
    BoundCheck bc;
    bc.name = "ellis_commutator_condition";
    bc.status = CheckStatus::skipped;
    bc.note = "no element realization available";
    rep.checks.push_back(std::move(bc));
  }

  rep.context = {
      "moravec_exponent_4: context, not checked",
      "kayvanfar_sanati_class_3_4_5: context, not checked",
      "divisibility_for_class_below_p: context, not checked",
  };
  return rep;
}

}  // namespace pgw
