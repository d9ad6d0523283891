#include "pgw/report.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>

#include "pgw/freenilpotent.hpp"

namespace pgw {

namespace {

std::optional<AbelianPGroup> family_multiplier(const FamilySpec& spec, int c,
                                               const Catalog& catalog) {
  switch (spec.kind) {
    case FamilyKind::abelian:
      return abelian_multiplier(AbelianPGroup::make(spec.p, spec.alphas), c);
    case FamilyKind::pst:
      return pst_multiplier(spec.p, spec.d, spec.s, spec.t, c);
    case FamilyKind::sd16:
    case FamilyKind::mod27: {
      auto entry = catalog.find(to_string(spec.kind), c);
      if (entry) return entry->multiplier;
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

}  // namespace

AnalysisResult run_analysis(const FamilySpec& spec, int c, const Catalog& catalog,
                            size_t closure_cap) {
  require(c >= 1, errc::invalid_parameters, "need c >= 1");
  AnalysisResult out{build_family(spec, closure_cap), {}};

  GroupFacts facts;
  facts.group_id = spec.id();
  facts.p = out.family.table ? out.family.table->p() : spec.p;
  facts.c = c;
  facts.inv = out.family.inv;
  facts.multiplier = family_multiplier(spec, c, catalog);
  facts.schur_multiplier = family_multiplier(spec, 1, catalog);
  facts.gamma_cplus1_order_exp = out.family.gamma_order_exp(c + 1);
  facts.derived_order_exp = out.family.derived_order_exp();
  facts.table = out.family.table ? &*out.family.table : nullptr;
  out.report = full_report(facts);
  return out;
}

namespace {

nlohmann::ordered_json json_opt(const std::optional<long long>& v) {
  if (v) return *v;
  return nullptr;
}

nlohmann::ordered_json json_opt_bool(const std::optional<bool>& v) {
  if (v) return *v;
  return nullptr;
}

nlohmann::ordered_json family_json(const BuiltFamily& fam) {
  nlohmann::ordered_json f;
  f["kind"] = to_string(fam.spec.kind);
  f["id"] = fam.spec.id();
  switch (fam.spec.kind) {
    case FamilyKind::abelian:
      f["p"] = fam.spec.p;
      f["alphas"] = fam.spec.alphas;
      break;
    case FamilyKind::lm_example:
      f["p"] = fam.spec.p;
      f["l"] = fam.spec.l;
      break;
    case FamilyKind::pst:
      f["p"] = fam.spec.p;
      f["d"] = fam.spec.d;
      f["s"] = fam.spec.s;
      f["t"] = fam.spec.t;
      break;
    case FamilyKind::custom_matrix:
      f["modulus"] = fam.spec.modulus;
      f["generators"] = fam.spec.generator_rows.size();
      break;
    default: break;
  }
  f["realized"] = fam.table.has_value();
  f["validated"] = fam.validations;
  return f;
}

}  // namespace

nlohmann::ordered_json analysis_json(const AnalysisResult& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = "1";
  j["family"] = family_json(r.family);
  j["p"] = r.report.p;
  j["c"] = r.report.c;

  nlohmann::ordered_json inv;
  inv["order_exp"] = r.report.inv.order_exp;
  inv["d"] = r.report.inv.d;
  inv["e"] = r.report.inv.e;
  inv["cl"] = r.report.inv.cl;
  inv["dl"] = r.report.inv.dl;
  inv["center_exp"] =
      r.report.inv.center_exp ? nlohmann::ordered_json(*r.report.inv.center_exp) : nullptr;
  inv["sr"] = r.report.inv.sr ? nlohmann::ordered_json(*r.report.inv.sr) : nullptr;
  inv["powerful"] = r.report.inv.powerful;
  j["invariants"] = inv;

  if (r.report.multiplier) {
    nlohmann::ordered_json m;
    m["p"] = r.report.multiplier->p;
    m["alphas"] = r.report.multiplier->alphas;
    j["multiplier"] = m;
  } else {
    j["multiplier"] = nullptr;
  }

  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.report.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["lhs"] = json_opt(c.lhs);
    jc["rhs"] = json_opt(c.rhs);
    jc["holds"] = json_opt_bool(c.holds);
    jc["attained"] = json_opt_bool(c.attained);
    jc["status"] = to_string(c.status);
    jc["note"] = c.note;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  j["context"] = r.report.context;
  return j;
}

bool analysis_ok(const AnalysisResult& r) {
  for (const auto& c : r.report.checks)
    if (c.status == CheckStatus::checked && c.holds && !*c.holds) return false;
  return true;
}

std::string analysis_text(const AnalysisResult& r) {
  std::ostringstream os;
  os << "group: " << r.report.group_id << "   (p=" << r.report.p << ", c=" << r.report.c << ")\n";
  os << "validated: ";
  if (r.family.validations.empty())
    os << "(symbolic family, no element realization)";
  else
    for (size_t i = 0; i < r.family.validations.size(); ++i)
      os << (i ? ", " : "") << r.family.validations[i];
  os << "\n";
  const auto& inv = r.report.inv;
  os << "invariants: |G|=p^" << inv.order_exp << "  d=" << inv.d << "  e=" << inv.e
     << "  cl=" << inv.cl << "  dl=" << inv.dl << "  center_exp=";
  if (inv.center_exp)
    os << *inv.center_exp;
  else
    os << "-";
  os << "  sr=";
  if (inv.sr)
    os << *inv.sr;
  else
    os << "-";
  os << "  powerful=" << (inv.powerful ? "yes" : "no") << "\n";
  if (r.report.multiplier) {
    os << "multiplier: p=" << r.report.multiplier->p << " alphas=[";
    for (size_t i = 0; i < r.report.multiplier->alphas.size(); ++i)
      os << (i ? "," : "") << r.report.multiplier->alphas[i];
    os << "]\n";
  } else {
    os << "multiplier: unknown\n";
  }
  os << "checks:\n";
  for (const auto& c : r.report.checks) {
    os << "  " << c.name << ": ";
    if (c.lhs)
      os << *c.lhs;
    else
      os << "-";
    os << " <= ";
    if (c.rhs)
      os << *c.rhs;
    else
      os << "-";
    os << "  holds=";
    if (c.holds)
      os << (*c.holds ? "yes" : "NO");
    else
      os << "-";
    os << " attained=";
    if (c.attained)
      os << (*c.attained ? "yes" : "no");
    else
      os << "-";
    os << " [" << to_string(c.status) << "]";
    if (!c.note.empty()) os << "  " << c.note;
    os << "\n";
  }
  os << "context:\n";
  for (const auto& s : r.report.context) os << "  " << s << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// suites

namespace {

struct FleetMember {
  std::string name;
  FamilySpec spec;
  BuiltFamily fam;
};

std::vector<FleetMember> build_fleet() {
  std::vector<FleetMember> fleet;
  auto add = [&fleet](FamilySpec spec) {
    BuiltFamily fam = build_family(spec);
    fleet.push_back({spec.id(), spec, std::move(fam)});
  };
  add(FamilySpec::make_abelian(3, {1, 1}));
  add(FamilySpec::make_abelian(2, {2, 1}));
  add(FamilySpec::make_abelian(5, {2, 2}));
  add(FamilySpec::make_lm_example(3, 1));
  add(FamilySpec::make_lm_example(3, 2));
  add(FamilySpec::make_lm_example(5, 1));
  add(FamilySpec::make_sd16());
  add(FamilySpec::make_mod27());
  return fleet;
}

uint64_t splitmix64_step(uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

void suite_theorem23(SuiteResult& out, const std::vector<FleetMember>& fleet) {
  for (const auto& m : fleet) {
    if (!m.fam.table) continue;
    if (!is_powerful(*m.fam.table)) {
      out.items.push_back({m.name + "/is_powerful", false, "fleet member should be powerful"});
      continue;
    }
    StructureReport rep = verify_powerful_structure(*m.fam.table);
    for (const auto& c : rep.clauses) out.items.push_back({m.name + "/" + c.name, c.pass, c.detail});
  }
  GroupTable d8 = dihedral8();
  out.items.push_back(
      {"dihedral8/not_powerful", !is_powerful(d8), "the non-powerful control must stay non-powerful"});
}

// d=2, class 3 positive-word collector driven by the five pc-relations;
// letters a=x1, b=x2, c=[x2,x1], u=[c,x1], v=[c,x2]
std::optional<std::array<long long, 5>> naive_collect_positive(std::string s) {
  const int step_cap = 2000000;
  for (int steps = 0; steps < step_cap; ++steps) {
    bool changed = false;
    for (size_t i = 0; i + 1 < s.size(); ++i) {
      const char x = s[i], y = s[i + 1];
      if (x <= y) continue;
      std::string repl;
      if (x == 'b' && y == 'a')
        repl = "abc";
      else if (x == 'c' && y == 'a')
        repl = "acu";
      else if (x == 'c' && y == 'b')
        repl = "bcv";
      else
        repl = std::string{y, x};  // weight sum > 3: the pair commutes
      s = s.substr(0, i) + repl + s.substr(i + 2);
      changed = true;
      break;
    }
    if (!changed) {
      std::array<long long, 5> counts{0, 0, 0, 0, 0};
      const std::string order = "abcuv";
      for (char ch : s) counts[order.find(ch)]++;
      return counts;
    }
  }
  return std::nullopt;
}

void suite_collection(SuiteResult& out) {
  // group laws on random words
  {
    bool ok = true;
    std::string detail;
    uint64_t seed = 0x5eed0001ull;
    int words_checked = 0;
    for (auto [d, cls] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}, {2, 4}, {3, 3}}) {
      FreeNilpotentContext ctx(d, cls);
      for (int trial = 0; trial < 90 && ok; ++trial) {
        auto random_word = [&]() {
          FreeNilpotentContext::Word w;
          const int len = 1 + static_cast<int>(splitmix64_step(seed) % 6);
          for (int j = 0; j < len; ++j) {
            int ord = static_cast<int>(splitmix64_step(seed) % static_cast<uint64_t>(d));
            long long e = static_cast<long long>(splitmix64_step(seed) % 7) - 3;
            if (e == 0) e = 1;
            w.push_back({ord, BigInt(e)});
          }
          return w;
        };
        auto a = ctx.collect(random_word());
        auto b = ctx.collect(random_word());
        auto c = ctx.collect(random_word());
        words_checked += 3;
        if (ctx.multiply(ctx.multiply(a, b), c) != ctx.multiply(a, ctx.multiply(b, c))) {
          ok = false;
          detail = "associativity failed";
        }
        if (ctx.multiply(a, ctx.inverse(a)) != ctx.identity()) {
          ok = false;
          detail = "inverse failed";
        }
        if (ctx.multiply(a, ctx.identity()) != a) {
          ok = false;
          detail = "identity failed";
        }
      }
    }
    if (ok) detail = std::to_string(words_checked) + " random words";
    out.items.push_back({"collection/group_laws_random", ok, detail});
  }

  // optimized collection vs naive rewriting (exhaustive, positive words)
  {
    FreeNilpotentContext ctx(2, 3);
    const int c_ord = ctx.basis().pair_ord(1, 0);
    const int u_ord = ctx.basis().pair_ord(c_ord, 0);
    const int v_ord = ctx.basis().pair_ord(c_ord, 1);
    bool ok = c_ord >= 0 && u_ord >= 0 && v_ord >= 0;
    std::string detail;
    int checked = 0;
    for (int len = 1; len <= 6 && ok; ++len) {
      for (int codeword = 0; codeword < (1 << len) && ok; ++codeword) {
        std::string s;
        FreeNilpotentContext::Word w;
        for (int j = 0; j < len; ++j) {
          const int letter = (codeword >> j) & 1;
          s.push_back(letter == 0 ? 'a' : 'b');
          w.push_back({letter, BigInt(1)});
        }
        auto naive = naive_collect_positive(s);
        if (!naive) {
          ok = false;
          detail = "naive rewriting did not terminate";
          break;
        }
        auto e = ctx.collect(w);
        ++checked;
        if (e[0] != (*naive)[0] || e[1] != (*naive)[1] ||
            e[static_cast<size_t>(c_ord)] != (*naive)[2] ||
            e[static_cast<size_t>(u_ord)] != (*naive)[3] ||
            e[static_cast<size_t>(v_ord)] != (*naive)[4]) {
          ok = false;
          detail = "normal forms differ on word " + s;
        }
      }
    }
    if (ok) detail = std::to_string(checked) + " positive words, lengths 1..6";
    out.items.push_back({"collection/naive_rewriting_agreement", ok, detail});
  }

  // optimized collection vs the truncated-algebra reference path
  {
    bool ok = true;
    std::string detail;
    uint64_t seed = 0x5eed0002ull;
    int checked = 0;
    for (auto [d, cls] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 3}, {3, 4}}) {
      FreeNilpotentContext ctx(d, cls);
      for (int trial = 0; trial < 40 && ok; ++trial) {
        FreeNilpotentContext::Word w;
        const int len = 1 + static_cast<int>(splitmix64_step(seed) % 6);
        for (int j = 0; j < len; ++j) {
          int ord = static_cast<int>(splitmix64_step(seed) % static_cast<uint64_t>(d));
          long long e = static_cast<long long>(splitmix64_step(seed) % 7) - 3;
          if (e == 0) e = -1;
          w.push_back({ord, BigInt(e)});
        }
        ++checked;
        if (ctx.collect(w) != ctx.normal_form_reference(w)) {
          ok = false;
          detail = "collection disagrees with the reference path";
        }
      }
    }
    if (ok) detail = std::to_string(checked) + " random signed words";
    out.items.push_back({"collection/reference_path_agreement", ok, detail});
  }

  // commutators beyond the class collapse
  {
    FreeNilpotentContext ctx(2, 3);
    auto x1 = ctx.generator(0), x2 = ctx.generator(1);
    auto c = ctx.commutator(x2, x1);
    auto u = ctx.commutator(c, x1);
    bool ok = ctx.commutator(u, x1) == ctx.identity() && ctx.commutator(u, x2) == ctx.identity() &&
              ctx.commutator(c, ctx.commutator(c, x1)) == ctx.identity();
    out.items.push_back({"collection/high_weight_collapse", ok, ""});
  }

  // lower-central quotient ranks
  for (int d = 1; d <= 3; ++d) {
    for (int n = 1; n <= 4; ++n) {
      auto res = verify_lcs_quotient_basis(d, n, 1);
      out.items.push_back({"collection/lcs_quotient_rank_d" + std::to_string(d) + "_n" +
                               std::to_string(n),
                           res.pass, "rank " + std::to_string(res.rank)});
    }
  }
  {
    auto res = verify_lcs_quotient_basis(2, 2, 2);
    out.items.push_back({"collection/lcs_quotient_rank_d2_n2_i2", res.pass,
                         "rank " + std::to_string(res.rank)});
  }
}

void suite_struik(SuiteResult& out) {
  const std::vector<long long> alphas{0, 1, 2, 3, 4, 5, 6};
  struct Inst {
    int d, cls, r;
  };
  for (Inst inst : {Inst{2, 3, 2}, Inst{2, 4, 2}, Inst{3, 3, 2}, Inst{3, 4, 3}}) {
    StruikResult res = verify_struik_instance(inst.d, inst.cls, inst.r, alphas);
    std::string name = "struik/d" + std::to_string(inst.d) + "_class" + std::to_string(inst.cls) +
                       "_r" + std::to_string(inst.r);
    out.items.push_back({name, res.pass, res.pass ? std::to_string(res.fits.size()) + " fitted slots"
                                                  : res.detail});
  }
}

void suite_bounds(SuiteResult& out, const std::vector<FleetMember>& fleet, const Catalog& catalog) {
  // every checked-status inequality must hold on the fleet
  for (const auto& m : fleet) {
    for (int c = 1; c <= 3; ++c) {
      AnalysisResult res = run_analysis(m.spec, c, catalog);
      bool ok = true;
      std::string detail;
      for (const auto& check : res.report.checks) {
        if (check.status == CheckStatus::checked && check.holds && !*check.holds) {
          ok = false;
          detail = check.name + " failed";
        }
      }
      out.items.push_back({"bounds/" + m.name + "/c" + std::to_string(c), ok, detail});
    }
  }

  // negative control: evaluated, never asserted
  {
    GroupTable d8 = dihedral8();
    GroupFacts facts;
    facts.group_id = "dihedral8";
    facts.p = 2;
    facts.c = 1;
    facts.inv = compute_invariants(d8);
    facts.gamma_cplus1_order_exp = 1;  // |gamma_2| = 2
    facts.derived_order_exp = 1;
    facts.table = &d8;
    BoundReport rep = full_report(facts);
    bool ok = !facts.inv.powerful;
    for (const auto& check : rep.checks)
      if (check.status == CheckStatus::checked && check.holds && !*check.holds) ok = false;
    out.items.push_back({"bounds/dihedral8", ok, "non-powerful control report"});
  }

  // abelian family: attained flags follow the stated iff-conditions
  {
    bool ok = true;
    std::string detail;
    uint64_t seed = 0x5eed0003ull;
    for (int trial = 0; trial < 25 && ok; ++trial) {
      const uint64_t ps[3] = {2, 3, 5};
      const uint64_t p = ps[splitmix64_step(seed) % 3];
      const int d = 1 + static_cast<int>(splitmix64_step(seed) % 4);
      std::vector<int> alphas;
      for (int i = 0; i < d; ++i) alphas.push_back(1 + static_cast<int>(splitmix64_step(seed) % 4));
      const int c = 1 + static_cast<int>(splitmix64_step(seed) % 3);
      AbelianPGroup g = AbelianPGroup::make(p, alphas);
      AbelianPGroup m = abelian_multiplier(g, c);

      const long long chi = witt_chi_ll(static_cast<uint64_t>(g.d()), static_cast<uint64_t>(c) + 1);
      if (m.d() != chi) {
        ok = false;
        detail = "d(M) != chi_{c+1}(d)";
      }
      if (m.exponent_exp() != g.second_exp()) {
        ok = false;
        detail = "e(M) != alpha_2";
      }
      long long want = 0;
      long long prev_b = 0;
      for (int i = 2; i <= g.d(); ++i) {
        const long long b = witt_chi_ll(static_cast<uint64_t>(i), static_cast<uint64_t>(c) + 1);
        want += static_cast<long long>(g.alphas[static_cast<size_t>(i) - 1]) * (b - prev_b);
        prev_b = b;
      }
      if (m.order_exp() != want) {
        ok = false;
        detail = "order exponent formula mismatch";
      }
      const bool all_equal =
          std::all_of(g.alphas.begin(), g.alphas.end(), [&](int a) { return a == g.alphas[0]; });
      const bool attained = m.order_exp() == chi * g.exponent_exp();
      if (attained != all_equal) {
        ok = false;
        detail = "order bound attained flag does not match the all-equal condition";
      }
    }
    out.items.push_back({"bounds/abelian_attained_batch", ok, detail});
  }

  // pst family: the generator bound must fail (powerfulness is necessary)
  {
    bool ok = true;
    std::string detail;
    uint64_t seed = 0x5eed0004ull;
    for (int trial = 0; trial < 10 && ok; ++trial) {
      const uint64_t ps[3] = {3, 5, 7};
      const uint64_t p = ps[splitmix64_step(seed) % 3];
      const int d = 2 + static_cast<int>(splitmix64_step(seed) % 3);
      const int t = 1 + static_cast<int>(splitmix64_step(seed) % 3);
      const int s = t + static_cast<int>(splitmix64_step(seed) % 3);
      const int c = 1 + static_cast<int>(splitmix64_step(seed) % 3);
      AbelianPGroup m = pst_multiplier(p, d, s, t, c);
      const long long chi1 = witt_chi_ll(static_cast<uint64_t>(d), static_cast<uint64_t>(c) + 1);
      const long long chi2 = witt_chi_ll(static_cast<uint64_t>(d), static_cast<uint64_t>(c) + 2);
      if (m.d() != chi1 + chi2 || m.d() <= chi1) {
        ok = false;
        detail = "d(M) != chi_{c+1}+chi_{c+2} or bound unexpectedly held";
      }
      BoundCheck bc = check_generator_bound(m.d(), d, c, /*powerful=*/false);
      if (!bc.holds || *bc.holds) {
        ok = false;
        detail = "generator bound did not fail on the non-powerful family";
      }
    }
    out.items.push_back({"bounds/pst_negative_batch", ok, detail});
  }
}

}  // namespace

SuiteResult run_suite(const std::string& name, const Catalog& catalog) {
  SuiteResult out;
  out.suite = name;
  const bool all = name == "all";
  require(all || name == "theorem23" || name == "collection" || name == "struik" ||
              name == "bounds",
          errc::invalid_parameters, "unknown suite: " + name);

  std::vector<FleetMember> fleet;
  if (all || name == "theorem23" || name == "bounds") fleet = build_fleet();

  if (all || name == "theorem23") suite_theorem23(out, fleet);
  if (all || name == "collection") suite_collection(out);
  if (all || name == "struik") suite_struik(out);
  if (all || name == "bounds") suite_bounds(out, fleet, catalog);

  out.all_pass =
      std::all_of(out.items.begin(), out.items.end(), [](const SuiteItem& i) { return i.pass; });
  return out;
}

nlohmann::ordered_json suite_json(const SuiteResult& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = "1";
  j["suite"] = r.suite;
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  int passed = 0;
  for (const auto& i : r.items) {
    nlohmann::ordered_json ji;
    ji["name"] = i.name;
    ji["pass"] = i.pass;
    ji["detail"] = i.detail;
    items.push_back(ji);
    if (i.pass) ++passed;
  }
  j["results"] = items;
  j["summary"] = {{"total", r.items.size()}, {"passed", passed}, {"all_pass", r.all_pass}};
  return j;
}

std::string suite_text(const SuiteResult& r) {
  std::ostringstream os;
  os << "suite: " << r.suite << "\n";
  for (const auto& i : r.items) {
    os << "  [" << (i.pass ? "PASS" : "FAIL") << "] " << i.name;
    if (!i.detail.empty()) os << "  (" << i.detail << ")";
    os << "\n";
  }
  os << (r.all_pass ? "all assertions passed" : "SUITE FAILED") << "\n";
  return os.str();
}

}  // namespace pgw
