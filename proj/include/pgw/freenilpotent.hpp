#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pgw/witt.hpp"

namespace pgw {

// Dense truncated power series over the free associative ring on
// `letters` symbols, words of length <= degree. Word ids are contiguous
// per length: empty word is 0, then length-1 words in letter order, etc.
class WordAlgebra {
public:
  WordAlgebra(int letters, int degree);

  int letters() const { return letters_; }
  int degree() const { return degree_; }
  int size() const { return offset_[static_cast<size_t>(degree_) + 1]; }
  int length(int id) const { return len_[static_cast<size_t>(id)]; }
  int words_begin(int len) const { return offset_[static_cast<size_t>(len)]; }
  int words_end(int len) const { return offset_[static_cast<size_t>(len) + 1]; }
  int letter_word(int letter) const { return offset_[1] + letter; }
  int concat(int a, int b) const;

private:
  int letters_;
  int degree_;
  std::vector<int> offset_;
  std::vector<int> len_;
};

struct Series {
  std::vector<BigInt> c;
};

Series s_zero(const WordAlgebra& alg);
Series s_one(const WordAlgebra& alg);
Series s_gen(const WordAlgebra& alg, int letter);  // 1 + X_letter
Series s_mul(const WordAlgebra& alg, const Series& a, const Series& b);
Series s_sub(const WordAlgebra& alg, const Series& a, const Series& b);
Series s_inv(const WordAlgebra& alg, const Series& a);  // constant term must be 1
Series s_pow(const WordAlgebra& alg, const Series& a, BigInt e);
Series s_comm(const WordAlgebra& alg, const Series& a, const Series& b);  // a^-1 b^-1 a b
bool s_is_one(const Series& a);

// Free nilpotent group F(d)/gamma_{class+1}(F) with elements in Hall
// normal form: an element is the exponent vector of the ascending product
// b_1^{e_1} b_2^{e_2} ... over the basic-commutator basis.
//
// Multiplication collects words from the left. The swap rule for an
// out-of-order adjacent pair u^a v^b inserts the cached tail [u^s, v^t];
// tails of basic pairs are basis elements by definition, all others are
// derived once per context through the 1 + X_i representation of the
// truncated free algebra (faithful up to the class bound) and cached.
class FreeNilpotentContext {
public:
  static constexpr int kMaxLetters = 4;
  static constexpr int kMaxClass = 5;
  static constexpr size_t kBasisCap = 500;

  FreeNilpotentContext(int letters, int cls);

  int letters() const { return letters_; }
  int cls() const { return cls_; }
  int rank() const { return basis_.size(); }
  const CommutatorBasis& basis() const { return basis_; }
  const WordAlgebra& algebra() const { return alg_; }

  struct Letter {
    int ord;
    BigInt exp;
  };
  using Word = std::vector<Letter>;
  using Exps = std::vector<BigInt>;

  Exps identity() const { return Exps(static_cast<size_t>(rank()), BigInt(0)); }
  Exps generator(int letter) const;

  Exps collect(Word w) const;  // normal form of an arbitrary word
  Exps multiply(const Exps& a, const Exps& b) const;
  Exps inverse(const Exps& a) const;
  Exps power(const Exps& a, BigInt e) const;
  Exps commutator(const Exps& a, const Exps& b) const;

  Word to_word(const Exps& e) const;
  static Word reversed_negated(const Word& w);

  // reference path: evaluate in the truncated algebra, then read Hall
  // coordinates back degree by degree; independent of collection
  Series magnus(const Exps& e) const;
  Series magnus_word(const Word& w) const;
  Exps extract(const Series& g) const;
  Exps normal_form_reference(const Word& w) const { return extract(magnus_word(w)); }

  const Series& basis_series(int ord) const;  // image of basis element
  const Series& basis_lie(int ord) const;     // Lie polynomial of basis element

private:
  struct WeightSolver {
    std::vector<int> pivot_words;
    std::vector<std::vector<BigRat>> inv;
  };

  const Word& tail(int u, int su, int v, int sv) const;
  const WeightSolver& solver(int w) const;

  int letters_;
  int cls_;
  CommutatorBasis basis_;
  WordAlgebra alg_;

  mutable std::recursive_mutex mu_;
  mutable std::vector<std::optional<Series>> series_cache_;
  mutable std::vector<std::optional<Series>> lie_cache_;
  mutable std::unordered_map<uint32_t, Word> tail_cache_;
  mutable std::vector<std::optional<WeightSolver>> solver_cache_;
};

struct FreeNilpotentElement {
  const FreeNilpotentContext* ctx = nullptr;
  FreeNilpotentContext::Exps exps;
  bool operator==(const FreeNilpotentElement&) const = default;
};

FreeNilpotentElement fn_identity(const FreeNilpotentContext& ctx);
FreeNilpotentElement fn_generator(const FreeNilpotentContext& ctx, int letter);
FreeNilpotentElement fn_from_word(const FreeNilpotentContext& ctx,
                                  const std::vector<std::pair<int, long long>>& letters);
FreeNilpotentElement fn_multiply(const FreeNilpotentElement& a, const FreeNilpotentElement& b);
FreeNilpotentElement fn_inverse(const FreeNilpotentElement& a);
FreeNilpotentElement fn_power(const FreeNilpotentElement& a, const BigInt& e);
FreeNilpotentElement fn_commutator(const FreeNilpotentElement& a, const FreeNilpotentElement& b);

std::string format_element(const FreeNilpotentContext& ctx, const FreeNilpotentContext::Exps& e);

// Exact binomial coefficient C(n, j) for any integer n and j >= 0.
BigInt binomial(const BigInt& n, unsigned j);

// Fits, for the left-normed commutator [b_1^a, b_2, ..., b_r] against
// [b_1, ..., b_r]^a, every residual basis exponent as an integer
// combination of C(a,1..w) with w = weight - (r-1). Passes only if the
// fit is exact on every sample and every coefficient is an integer.
struct StruikSlotFit {
  int ord = -1;
  std::vector<BigInt> coeffs;  // a_1 .. a_w
};
struct StruikResult {
  bool pass = false;
  std::string detail;
  std::vector<StruikSlotFit> fits;
};
StruikResult verify_struik_instance(int letters, int cls, int r, std::vector<long long> alphas);

// Checks that, in the collection engine with class = n+i-1, products of
// elements supported on weight >= n stay supported there and that the
// number of those basis slots is sum_{w=n}^{n+i-1} witt_chi(letters, w).
struct QuotientBasisResult {
  bool pass = false;
  long long rank = 0;
  std::string detail;
};
QuotientBasisResult verify_lcs_quotient_basis(int letters, int n, int i, int trials = 64,
                                              uint64_t seed = 0x9e3779b9u);

}  // namespace pgw
