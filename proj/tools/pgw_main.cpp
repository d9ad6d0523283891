// pgw: construct the bundled p-group families, compute their structural
// invariants, evaluate the multiplier bounds, and run the verification
// suites. Reports are deterministic: identical inputs give identical bytes.

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "pgw/config.hpp"
#include "pgw/freenilpotent.hpp"
#include "pgw/report.hpp"

namespace {

pgw::FamilySpec spec_from_flags(const std::string& family, uint64_t p, int l,
                                const std::vector<int>& alphas, int d, int s, int t,
                                const std::string& gens_file) {
  using pgw::FamilyKind;
  switch (pgw::family_kind_from(family)) {
    case FamilyKind::abelian: return pgw::FamilySpec::make_abelian(p, alphas);
    case FamilyKind::lm_example: return pgw::FamilySpec::make_lm_example(p, l);
    case FamilyKind::sd16: return pgw::FamilySpec::make_sd16();
    case FamilyKind::mod27: return pgw::FamilySpec::make_mod27();
    case FamilyKind::pst: return pgw::FamilySpec::make_pst(p, d, s, t);
    case FamilyKind::custom_matrix: return pgw::load_custom_spec(gens_file);
  }
  pgw::fail(pgw::errc::invalid_parameters, "unknown family");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pgw - finite p-group invariants, multiplier structures, and bound reports"};
  app.require_subcommand(1);

  std::string catalog_path;
  int thread_count = 0;
  app.add_option("--catalog", catalog_path, "JSON catalog of known multipliers (extends built-ins)");
  app.add_option("--threads", thread_count, "worker threads for the parallel kernels (0 = auto)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "build one family and report every bound");
  std::string family;
  uint64_t p = 0;
  int l = 1;
  std::vector<int> alphas;
  int d = 2, s = 1, t = 1, c = 1;
  std::string gens_file;
  bool as_json = false;
  size_t closure_cap = size_t{1} << 18;
  analyze->add_option("--family", family, "abelian|lm_example|sd16|mod27|pst|custom_matrix")
      ->required();
  analyze->add_option("--p", p, "prime");
  analyze->add_option("--l", l, "tower parameter of lm_example");
  analyze->add_option("--alphas", alphas, "abelian invariant factors a1,a2,...")->delimiter(',');
  analyze->add_option("--d", d, "generator count of pst");
  analyze->add_option("--s", s, "pst exponent parameter s");
  analyze->add_option("--t", t, "pst commutator parameter t (s >= t >= 1)");
  analyze->add_option("--gens", gens_file, "JSON file with {modulus, generators} for custom_matrix");
  analyze->add_option("--c", c, "multiplier depth c >= 1")->required();
  analyze->add_flag("--json", as_json, "emit the JSON document instead of text");
  analyze->add_option("--closure-cap", closure_cap, "element cap for the closure");

  // suite
  auto* suite = app.add_subcommand("suite", "run a verification suite over the built-in fleet");
  std::string suite_name;
  bool suite_json_flag = false;
  suite->add_option("name", suite_name, "theorem23|collection|struik|bounds|all")->required();
  suite->add_flag("--json", suite_json_flag, "emit the JSON document instead of text");

  // witt
  auto* witt = app.add_subcommand("witt", "number of basic commutators of one weight");
  int witt_letters = 2, witt_weight = 2;
  witt->add_option("--letters", witt_letters, "alphabet size")->required();
  witt->add_option("--weight", witt_weight, "commutator weight")->required();

  // basic-commutators
  auto* enumerate = app.add_subcommand("basic-commutators", "list the Hall basis up to a weight");
  int enum_letters = 2, enum_weight = 3;
  enumerate->add_option("--letters", enum_letters, "alphabet size")->required();
  enumerate->add_option("--max-weight", enum_weight, "largest weight to list")->required();

  // collect
  auto* collect = app.add_subcommand("collect", "normal form of a word in the free nilpotent group");
  int col_letters = 2, col_class = 3;
  std::string col_word;
  collect->add_option("--letters", col_letters, "alphabet size")->required();
  collect->add_option("--class", col_class, "nilpotency class")->required();
  collect
      ->add_option("--word", col_word,
                   "comma-separated letters, e.g. 1,2,1^-1 (generator index with optional ^exp)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    pgw::set_threads(thread_count);
    pgw::Catalog catalog =
        catalog_path.empty() ? pgw::Catalog::builtin() : pgw::Catalog::load_file(catalog_path);

    if (*analyze) {
      pgw::FamilySpec spec = spec_from_flags(family, p, l, alphas, d, s, t, gens_file);
      pgw::AnalysisResult res = pgw::run_analysis(spec, c, catalog, closure_cap);
      if (as_json)
        std::cout << pgw::analysis_json(res).dump(2) << "\n";
      else
        std::cout << pgw::analysis_text(res);
      return pgw::analysis_ok(res) ? 0 : 1;
    }

    if (*suite) {
      pgw::SuiteResult res = pgw::run_suite(suite_name, catalog);
      if (suite_json_flag)
        std::cout << pgw::suite_json(res).dump(2) << "\n";
      else
        std::cout << pgw::suite_text(res);
      return res.all_pass ? 0 : 1;
    }

    if (*witt) {
      std::cout << pgw::witt_chi(static_cast<uint64_t>(witt_letters),
                                 static_cast<uint64_t>(witt_weight))
                << "\n";
      return 0;
    }

    if (*enumerate) {
      pgw::CommutatorBasis basis = pgw::CommutatorBasis::build(enum_letters, enum_weight);
      for (int w = 1; w <= enum_weight; ++w) {
        const long long chi = pgw::witt_chi_ll(static_cast<uint64_t>(enum_letters),
                                               static_cast<uint64_t>(w));
        std::cout << "# weight " << w << ": " << basis.count_weight(w)
                  << " commutators (witt: " << chi << ")\n";
        for (int ord = basis.weight_begin(w); ord < basis.weight_end(w); ++ord)
          std::cout << ord << "\t" << basis.format(ord) << "\n";
        if (basis.count_weight(w) != chi) {
          std::cerr << "enumeration does not match the Witt count\n";
          return 1;
        }
      }
      return 0;
    }

    if (*collect) {
      pgw::FreeNilpotentContext ctx(col_letters, col_class);
      pgw::FreeNilpotentContext::Word word;
      std::stringstream ss(col_word);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        if (tok[0] == 'x') tok = tok.substr(1);
        long long exp = 1;
        if (auto caret = tok.find('^'); caret != std::string::npos) {
          exp = std::stoll(tok.substr(caret + 1));
          tok = tok.substr(0, caret);
        }
        const int letter = std::stoi(tok) - 1;
        pgw::require(letter >= 0 && letter < col_letters, pgw::errc::invalid_parameters,
                     "letter out of range in --word");
        word.push_back({letter, pgw::BigInt(exp)});
      }
      auto nf = ctx.collect(word);
      std::cout << pgw::format_element(ctx, nf) << "\n";
      return 0;
    }
  } catch (const pgw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
