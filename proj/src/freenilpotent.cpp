#include "pgw/freenilpotent.hpp"

#include <algorithm>
#include <set>

namespace pgw {

WordAlgebra::WordAlgebra(int letters, int degree) : letters_(letters), degree_(degree) {
  require(letters >= 1, errc::invalid_argument, "need at least one letter");
  require(degree >= 1, errc::invalid_argument, "need degree >= 1");
  offset_.assign(static_cast<size_t>(degree) + 2, 0);
  int pw = 1;
  int count = 0;
  for (int len = 0; len <= degree; ++len) {
    offset_[static_cast<size_t>(len)] = count;
    count += pw;
    pw *= letters;
  }
  offset_[static_cast<size_t>(degree) + 1] = count;
  len_.assign(static_cast<size_t>(count), 0);
  for (int len = 0; len <= degree; ++len)
    for (int id = words_begin(len); id < words_end(len); ++id) len_[static_cast<size_t>(id)] = len;
}

int WordAlgebra::concat(int a, int b) const {
  int la = length(a), lb = length(b);
  int va = a - words_begin(la);
  int vb = b - words_begin(lb);
  int scale = 1;
  for (int i = 0; i < lb; ++i) scale *= letters_;
  return words_begin(la + lb) + va * scale + vb;
}

Series s_zero(const WordAlgebra& alg) { return Series{std::vector<BigInt>(alg.size(), BigInt(0))}; }

Series s_one(const WordAlgebra& alg) {
  Series s = s_zero(alg);
  s.c[0] = 1;
  return s;
}

Series s_gen(const WordAlgebra& alg, int letter) {
  Series s = s_one(alg);
  s.c[static_cast<size_t>(alg.letter_word(letter))] = 1;
  return s;
}

Series s_mul(const WordAlgebra& alg, const Series& a, const Series& b) {
  Series out = s_zero(alg);
  const int deg = alg.degree();
  for (int la = 0; la <= deg; ++la) {
    for (int i = alg.words_begin(la); i < alg.words_end(la); ++i) {
      const BigInt& ai = a.c[static_cast<size_t>(i)];
      if (ai == 0) continue;
      for (int lb = 0; lb + la <= deg; ++lb) {
        for (int j = alg.words_begin(lb); j < alg.words_end(lb); ++j) {
          const BigInt& bj = b.c[static_cast<size_t>(j)];
          if (bj == 0) continue;
          out.c[static_cast<size_t>(alg.concat(i, j))] += ai * bj;
        }
      }
    }
  }
  return out;
}

Series s_sub(const WordAlgebra& alg, const Series& a, const Series& b) {
  Series out = a;
  for (int i = 0; i < alg.size(); ++i) out.c[static_cast<size_t>(i)] -= b.c[static_cast<size_t>(i)];
  return out;
}

Series s_inv(const WordAlgebra& alg, const Series& a) {
  require(a.c[0] == 1, errc::invalid_argument, "series inverse needs constant term 1");
  Series u = a;
  u.c[0] = 0;  // a = 1 + u
  Series out = s_one(alg);
  Series term = s_one(alg);
  for (int j = 1; j <= alg.degree(); ++j) {
    term = s_mul(alg, term, u);
    bool all_zero = true;
    for (const auto& v : term.c)
      if (v != 0) {
        all_zero = false;
        break;
      }
    if (all_zero) break;
    for (int i = 0; i < alg.size(); ++i) {
      if (j % 2 == 1)
        out.c[static_cast<size_t>(i)] -= term.c[static_cast<size_t>(i)];
      else
        out.c[static_cast<size_t>(i)] += term.c[static_cast<size_t>(i)];
    }
  }
  return out;
}

Series s_pow(const WordAlgebra& alg, const Series& a, BigInt e) {
  Series base = a;
  if (e < 0) {
    base = s_inv(alg, a);
    e = -e;
  }
  Series out = s_one(alg);
  while (e > 0) {
    if ((e & 1) != 0) out = s_mul(alg, out, base);
    base = s_mul(alg, base, base);
    e >>= 1;
  }
  return out;
}

Series s_comm(const WordAlgebra& alg, const Series& a, const Series& b) {
  return s_mul(alg, s_mul(alg, s_inv(alg, a), s_inv(alg, b)), s_mul(alg, a, b));
}

bool s_is_one(const Series& a) {
  if (a.c.empty() || a.c[0] != 1) return false;
  for (size_t i = 1; i < a.c.size(); ++i)
    if (a.c[i] != 0) return false;
  return true;
}

namespace {
int checked_fn_letters(int letters, int cls) {
  require(letters >= 1 && letters <= FreeNilpotentContext::kMaxLetters, errc::invalid_parameters,
          "letters must be in [1,4]");
  require(cls >= 1 && cls <= FreeNilpotentContext::kMaxClass, errc::invalid_parameters,
          "class must be in [1,5]");
  return letters;
}
}  // namespace

FreeNilpotentContext::FreeNilpotentContext(int letters, int cls)
    : letters_(letters),
      cls_(cls),
      basis_(CommutatorBasis::build(checked_fn_letters(letters, cls), cls, kBasisCap)),
      alg_(letters, cls) {
  series_cache_.resize(static_cast<size_t>(basis_.size()));
  lie_cache_.resize(static_cast<size_t>(basis_.size()));
  solver_cache_.resize(static_cast<size_t>(cls) + 1);
}

FreeNilpotentContext::Exps FreeNilpotentContext::generator(int letter) const {
  require(letter >= 0 && letter < letters_, errc::invalid_argument, "letter out of range");
  Exps e = identity();
  e[static_cast<size_t>(letter)] = 1;
  return e;
}

FreeNilpotentContext::Word FreeNilpotentContext::to_word(const Exps& e) const {
  Word w;
  for (int ord = 0; ord < rank(); ++ord)
    if (e[static_cast<size_t>(ord)] != 0) w.push_back({ord, e[static_cast<size_t>(ord)]});
  return w;
}

FreeNilpotentContext::Word FreeNilpotentContext::reversed_negated(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->ord, -it->exp});
  return out;
}

FreeNilpotentContext::Exps FreeNilpotentContext::collect(Word w) const {
  // merge adjacent equal letters, drop zero exponents
  {
    Word out;
    out.reserve(w.size());
    for (auto& L : w) {
      if (L.exp == 0) continue;
      if (!out.empty() && out.back().ord == L.ord) {
        out.back().exp += L.exp;
        if (out.back().exp == 0) out.pop_back();
      } else {
        out.push_back(L);
      }
    }
    w.swap(out);
  }

  size_t i = 0;
  uint64_t steps = 0;
  constexpr uint64_t kStepCap = 200000000ull;
  while (i + 1 < w.size()) {
    require(++steps <= kStepCap, errc::collection_budget_exceeded,
            "collection exceeded its step budget");
    if (w[i].ord == w[i + 1].ord) {
      w[i].exp += w[i + 1].exp;
      w.erase(w.begin() + static_cast<long>(i) + 1);
      if (w[i].exp == 0) w.erase(w.begin() + static_cast<long>(i));
      if (i > 0) --i;
      continue;
    }
    if (w[i].ord < w[i + 1].ord) {
      ++i;
      continue;
    }
    const int u = w[i].ord, v = w[i + 1].ord;
    const BigInt a = w[i].exp, b = w[i + 1].exp;
    const int wu = basis_.at(u).weight, wv = basis_.at(v).weight;
    Word repl;
    if (wu + wv >= cls_) {
      // tail is central here, so [u^a, v^b] = tail^(a*b) letterwise
      const Word t = tail(u, +1, v, +1);
      BigInt ab = a * b;
      repl.push_back({v, b});
      repl.push_back({u, a});
      for (const auto& T : t) repl.push_back({T.ord, T.exp * ab});
    } else {
      // peel single letters: u^a v^b = u^(a-s) v^t u^s [u^s,v^t] v^(b-t)
      const int su = a > 0 ? 1 : -1;
      const int sv = b > 0 ? 1 : -1;
      const Word t = tail(u, su, v, sv);
      if (a != su) repl.push_back({u, a - su});
      repl.push_back({v, BigInt(sv)});
      repl.push_back({u, BigInt(su)});
      for (const auto& T : t) repl.push_back({T.ord, T.exp});
      if (b != sv) repl.push_back({v, b - sv});
    }
    w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
    w.insert(w.begin() + static_cast<long>(i), repl.begin(), repl.end());
    if (i > 0) --i;
  }

  Exps e = identity();
  for (const auto& L : w) e[static_cast<size_t>(L.ord)] = L.exp;
  return e;
}

FreeNilpotentContext::Exps FreeNilpotentContext::multiply(const Exps& a, const Exps& b) const {
  Word w = to_word(a);
  Word wb = to_word(b);
  w.insert(w.end(), wb.begin(), wb.end());
  return collect(std::move(w));
}

FreeNilpotentContext::Exps FreeNilpotentContext::inverse(const Exps& a) const {
  return collect(reversed_negated(to_word(a)));
}

FreeNilpotentContext::Exps FreeNilpotentContext::power(const Exps& a, BigInt e) const {
  Exps base = a;
  if (e < 0) {
    base = inverse(a);
    e = -e;
  }
  Exps out = identity();
  while (e > 0) {
    if ((e & 1) != 0) out = multiply(out, base);
    base = multiply(base, base);
    e >>= 1;
  }
  return out;
}

FreeNilpotentContext::Exps FreeNilpotentContext::commutator(const Exps& a, const Exps& b) const {
  Word wa = to_word(a), wb = to_word(b);
  Word w = reversed_negated(wa);
  Word nb = reversed_negated(wb);
  w.insert(w.end(), nb.begin(), nb.end());
  w.insert(w.end(), wa.begin(), wa.end());
  w.insert(w.end(), wb.begin(), wb.end());
  return collect(std::move(w));
}

Series FreeNilpotentContext::magnus(const Exps& e) const { return magnus_word(to_word(e)); }

Series FreeNilpotentContext::magnus_word(const Word& w) const {
  Series out = s_one(alg_);
  for (const auto& L : w) out = s_mul(alg_, out, s_pow(alg_, basis_series(L.ord), L.exp));
  return out;
}

const Series& FreeNilpotentContext::basis_series(int ord) const {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  auto& slot = series_cache_[static_cast<size_t>(ord)];
  if (!slot) {
    const auto& e = basis_.at(ord);
    if (e.leaf >= 0)
      slot = s_gen(alg_, e.leaf);
    else
      slot = s_comm(alg_, basis_series(e.left), basis_series(e.right));
  }
  return *slot;
}

const Series& FreeNilpotentContext::basis_lie(int ord) const {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  auto& slot = lie_cache_[static_cast<size_t>(ord)];
  if (!slot) {
    const auto& e = basis_.at(ord);
    if (e.leaf >= 0) {
      Series s = s_zero(alg_);
      s.c[static_cast<size_t>(alg_.letter_word(e.leaf))] = 1;
      slot = std::move(s);
    } else {
      const Series& l = basis_lie(e.left);
      const Series& r = basis_lie(e.right);
      slot = s_sub(alg_, s_mul(alg_, l, r), s_mul(alg_, r, l));
    }
  }
  return *slot;
}

const FreeNilpotentContext::WeightSolver& FreeNilpotentContext::solver(int w) const {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  auto& slot = solver_cache_[static_cast<size_t>(w)];
  if (slot) return *slot;

  const int m = basis_.count_weight(w);
  const int wb = alg_.words_begin(w), we = alg_.words_end(w);
  const int nrows = we - wb;
  require(m > 0 && m <= nrows, errc::internal, "bad weight layer");

  // columns are the Lie polynomials of the weight-w basis elements
  std::vector<const Series*> cols(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) cols[static_cast<size_t>(j)] = &basis_lie(basis_.weight_begin(w) + j);

  // row-select by rational elimination so the pivot submatrix is invertible
  std::vector<std::vector<BigRat>> work(static_cast<size_t>(nrows),
                                        std::vector<BigRat>(static_cast<size_t>(m)));
  for (int r = 0; r < nrows; ++r)
    for (int j = 0; j < m; ++j)
      work[static_cast<size_t>(r)][static_cast<size_t>(j)] =
          BigRat(cols[static_cast<size_t>(j)]->c[static_cast<size_t>(wb + r)]);

  std::vector<int> pivot_rows;
  std::vector<bool> used(static_cast<size_t>(nrows), false);
  for (int col = 0; col < m; ++col) {
    int pr = -1;
    for (int r = 0; r < nrows; ++r) {
      if (!used[static_cast<size_t>(r)] && work[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
        pr = r;
        break;
      }
    }
    require(pr >= 0, errc::internal, "Hall Lie polynomials are not independent");
    used[static_cast<size_t>(pr)] = true;
    pivot_rows.push_back(pr);
    const BigRat pv = work[static_cast<size_t>(pr)][static_cast<size_t>(col)];
    for (int r = 0; r < nrows; ++r) {
      if (r == pr || work[static_cast<size_t>(r)][static_cast<size_t>(col)] == 0) continue;
      const BigRat f = work[static_cast<size_t>(r)][static_cast<size_t>(col)] / pv;
      for (int j = col; j < m; ++j)
        work[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
            f * work[static_cast<size_t>(pr)][static_cast<size_t>(j)];
    }
  }

  // invert the pivot submatrix (Gauss-Jordan over rationals)
  std::vector<std::vector<BigRat>> a(static_cast<size_t>(m),
                                     std::vector<BigRat>(static_cast<size_t>(2 * m)));
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < m; ++j)
      a[static_cast<size_t>(r)][static_cast<size_t>(j)] =
          BigRat(cols[static_cast<size_t>(j)]->c[static_cast<size_t>(wb + pivot_rows[static_cast<size_t>(r)])]);
    a[static_cast<size_t>(r)][static_cast<size_t>(m + r)] = 1;
  }
  for (int col = 0; col < m; ++col) {
    int pr = -1;
    for (int r = col; r < m; ++r)
      if (a[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
        pr = r;
        break;
      }
    require(pr >= 0, errc::internal, "pivot submatrix is singular");
    std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(pr)]);
    const BigRat pv = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
    for (int j = 0; j < 2 * m; ++j) a[static_cast<size_t>(col)][static_cast<size_t>(j)] /= pv;
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      const BigRat f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f == 0) continue;
      for (int j = 0; j < 2 * m; ++j)
        a[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * a[static_cast<size_t>(col)][static_cast<size_t>(j)];
    }
  }

  WeightSolver sv;
  sv.pivot_words.resize(static_cast<size_t>(m));
  sv.inv.assign(static_cast<size_t>(m), std::vector<BigRat>(static_cast<size_t>(m)));
  for (int r = 0; r < m; ++r) {
    sv.pivot_words[static_cast<size_t>(r)] = wb + pivot_rows[static_cast<size_t>(r)];
    for (int j = 0; j < m; ++j)
      sv.inv[static_cast<size_t>(r)][static_cast<size_t>(j)] = a[static_cast<size_t>(r)][static_cast<size_t>(m + j)];
  }
  slot = std::move(sv);
  return *slot;
}

FreeNilpotentContext::Exps FreeNilpotentContext::extract(const Series& g) const {
  require(!g.c.empty() && g.c[0] == 1, errc::invalid_argument,
          "series is not a group element image (constant term != 1)");
  Exps e = identity();
  Series cur = g;
  for (int w = 1; w <= cls_; ++w) {
    for (int id = alg_.words_begin(1); id < alg_.words_begin(w); ++id)
      require(cur.c[static_cast<size_t>(id)] == 0, errc::invalid_argument,
              "series is not a group element image (stray low-degree term)");
    const int wb = alg_.words_begin(w), we = alg_.words_end(w);
    bool nonzero = false;
    for (int id = wb; id < we && !nonzero; ++id) nonzero = cur.c[static_cast<size_t>(id)] != 0;
    if (!nonzero) continue;

    const WeightSolver& sv = solver(w);
    const int m = basis_.count_weight(w);
    std::vector<BigRat> x(static_cast<size_t>(m), BigRat(0));
    for (int r = 0; r < m; ++r)
      for (int j = 0; j < m; ++j)
        x[static_cast<size_t>(r)] +=
            sv.inv[static_cast<size_t>(r)][static_cast<size_t>(j)] *
            BigRat(cur.c[static_cast<size_t>(sv.pivot_words[static_cast<size_t>(j)])]);

    std::vector<BigInt> xi(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) {
      require(boost::multiprecision::denominator(x[static_cast<size_t>(j)]) == 1,
              errc::invalid_argument, "non-integral Hall coordinate");
      xi[static_cast<size_t>(j)] = boost::multiprecision::numerator(x[static_cast<size_t>(j)]);
    }

    // full-row verification against the Lie polynomials
    std::vector<BigInt> acc(static_cast<size_t>(we - wb), BigInt(0));
    for (int j = 0; j < m; ++j) {
      if (xi[static_cast<size_t>(j)] == 0) continue;
      const Series& lie = basis_lie(basis_.weight_begin(w) + j);
      for (int id = wb; id < we; ++id)
        acc[static_cast<size_t>(id - wb)] += xi[static_cast<size_t>(j)] * lie.c[static_cast<size_t>(id)];
    }
    for (int id = wb; id < we; ++id)
      require(acc[static_cast<size_t>(id - wb)] == cur.c[static_cast<size_t>(id)],
              errc::invalid_argument, "degree component is not a Lie element");

    Series prefix = s_one(alg_);
    for (int j = 0; j < m; ++j) {
      if (xi[static_cast<size_t>(j)] == 0) continue;
      const int ord = basis_.weight_begin(w) + j;
      e[static_cast<size_t>(ord)] = xi[static_cast<size_t>(j)];
      prefix = s_mul(alg_, prefix, s_pow(alg_, basis_series(ord), xi[static_cast<size_t>(j)]));
    }
    cur = s_mul(alg_, s_inv(alg_, prefix), cur);
  }
  require(s_is_one(cur), errc::invalid_argument, "series is not a group element image (residue)");
  return e;
}

const FreeNilpotentContext::Word& FreeNilpotentContext::tail(int u, int su, int v, int sv) const {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  const uint32_t key = (static_cast<uint32_t>(u) << 12) | (static_cast<uint32_t>(v) << 2) |
                       (static_cast<uint32_t>(su > 0) << 1) | static_cast<uint32_t>(sv > 0);
  auto it = tail_cache_.find(key);
  if (it != tail_cache_.end()) return it->second;

  const int wu = basis_.at(u).weight, wv = basis_.at(v).weight;
  Word result;
  if (wu + wv > cls_) {
    // commutator collapses past the class bound
  } else if (su > 0 && sv > 0) {
    int ord = basis_.is_basic_pair(u, v) ? basis_.pair_ord(u, v) : -1;
    if (ord >= 0) {
      result.push_back({ord, BigInt(1)});
    } else {
      Series s = s_comm(alg_, basis_series(u), basis_series(v));
      result = to_word(extract(s));
    }
  } else if (su < 0 && sv > 0) {
    // [u^-1, v] = u [u,v]^-1 u^-1
    const Word t = tail(u, +1, v, +1);
    Word w;
    w.push_back({u, BigInt(1)});
    Word nt = reversed_negated(t);
    w.insert(w.end(), nt.begin(), nt.end());
    w.push_back({u, BigInt(-1)});
    result = to_word(collect(std::move(w)));
  } else if (su > 0 && sv < 0) {
    // [u, v^-1] = v [u,v]^-1 v^-1
    const Word t = tail(u, +1, v, +1);
    Word w;
    w.push_back({v, BigInt(1)});
    Word nt = reversed_negated(t);
    w.insert(w.end(), nt.begin(), nt.end());
    w.push_back({v, BigInt(-1)});
    result = to_word(collect(std::move(w)));
  } else {
    // [u^-1, v^-1] = v [u^-1,v]^-1 v^-1
    const Word t = tail(u, -1, v, +1);
    Word w;
    w.push_back({v, BigInt(1)});
    Word nt = reversed_negated(t);
    w.insert(w.end(), nt.begin(), nt.end());
    w.push_back({v, BigInt(-1)});
    result = to_word(collect(std::move(w)));
  }
  return tail_cache_.emplace(key, std::move(result)).first->second;
}

FreeNilpotentElement fn_identity(const FreeNilpotentContext& ctx) { return {&ctx, ctx.identity()}; }

FreeNilpotentElement fn_generator(const FreeNilpotentContext& ctx, int letter) {
  return {&ctx, ctx.generator(letter)};
}

FreeNilpotentElement fn_from_word(const FreeNilpotentContext& ctx,
                                  const std::vector<std::pair<int, long long>>& letters) {
  FreeNilpotentContext::Word w;
  for (auto [ord, e] : letters) w.push_back({ord, BigInt(e)});
  return {&ctx, ctx.collect(std::move(w))};
}

namespace {
void check_same_ctx(const FreeNilpotentElement& a, const FreeNilpotentElement& b) {
  require(a.ctx != nullptr && a.ctx == b.ctx, errc::invalid_argument,
          "elements belong to different contexts");
}
}  // namespace

FreeNilpotentElement fn_multiply(const FreeNilpotentElement& a, const FreeNilpotentElement& b) {
  check_same_ctx(a, b);
  return {a.ctx, a.ctx->multiply(a.exps, b.exps)};
}

FreeNilpotentElement fn_inverse(const FreeNilpotentElement& a) {
  return {a.ctx, a.ctx->inverse(a.exps)};
}

FreeNilpotentElement fn_power(const FreeNilpotentElement& a, const BigInt& e) {
  return {a.ctx, a.ctx->power(a.exps, e)};
}

FreeNilpotentElement fn_commutator(const FreeNilpotentElement& a, const FreeNilpotentElement& b) {
  check_same_ctx(a, b);
  return {a.ctx, a.ctx->commutator(a.exps, b.exps)};
}

std::string format_element(const FreeNilpotentContext& ctx, const FreeNilpotentContext::Exps& e) {
  std::string out;
  for (int ord = 0; ord < ctx.rank(); ++ord) {
    const BigInt& x = e[static_cast<size_t>(ord)];
    if (x == 0) continue;
    if (!out.empty()) out += " * ";
    out += ctx.basis().format(ord);
    if (x != 1) out += "^" + x.str();
  }
  return out.empty() ? "1" : out;
}

BigInt binomial(const BigInt& n, unsigned j) {
  BigInt num = 1;
  for (unsigned i = 0; i < j; ++i) num *= n - i;
  BigInt den = 1;
  for (unsigned i = 2; i <= j; ++i) den *= i;
  require(num % den == 0, errc::internal, "binomial not integral");
  return num / den;
}

StruikResult verify_struik_instance(int letters, int cls, int r, std::vector<long long> alphas) {
  StruikResult res;
  require(r >= 1 && r < cls, errc::invalid_parameters, "need 1 <= r < class");
  require(r <= letters, errc::invalid_parameters, "need r <= letters");
  {
    std::set<long long> distinct(alphas.begin(), alphas.end());
    require(static_cast<int>(distinct.size()) >= cls, errc::insufficient_samples,
            "need at least `class` distinct sample values");
  }
  FreeNilpotentContext ctx(letters, cls);

  // base = [b_1, b_2, ..., b_r], left-normed
  auto base = ctx.generator(0);
  for (int j = 1; j < r; ++j) base = ctx.commutator(base, ctx.generator(j));

  std::vector<FreeNilpotentContext::Exps> residuals;
  for (long long a : alphas) {
    auto lhs = ctx.power(ctx.generator(0), a);
    for (int j = 1; j < r; ++j) lhs = ctx.commutator(lhs, ctx.generator(j));
    auto rhs = ctx.power(base, a);
    residuals.push_back(ctx.multiply(ctx.inverse(rhs), lhs));
  }

  std::vector<int> slots;
  for (int ord = 0; ord < ctx.rank(); ++ord) {
    for (const auto& res_a : residuals) {
      if (res_a[static_cast<size_t>(ord)] != 0) {
        slots.push_back(ord);
        break;
      }
    }
  }

  const uint32_t want_mask = (1u << r) - 1;
  for (int ord : slots) {
    const auto& bc = ctx.basis().at(ord);
    if (bc.weight <= r) {
      res.detail = "residual touches weight <= r at " + ctx.basis().format(ord);
      return res;
    }
    if (bc.leaf_mask != want_mask) {
      res.detail = "residual term misses a generator: " + ctx.basis().format(ord);
      return res;
    }
    const unsigned wdeg = static_cast<unsigned>(bc.weight - (r - 1));

    // solve for a_1..a_w on w distinct nonzero samples
    std::vector<size_t> pick;
    {
      std::set<long long> seen;
      for (size_t idx = 0; idx < alphas.size() && pick.size() < wdeg; ++idx) {
        if (alphas[idx] == 0 || seen.count(alphas[idx])) continue;
        seen.insert(alphas[idx]);
        pick.push_back(idx);
      }
    }
    require(pick.size() == wdeg, errc::insufficient_samples, "not enough nonzero samples");

    std::vector<std::vector<BigRat>> a(wdeg, std::vector<BigRat>(wdeg + 1));
    for (unsigned row = 0; row < wdeg; ++row) {
      const BigInt alpha = alphas[pick[row]];
      for (unsigned j = 1; j <= wdeg; ++j) a[row][j - 1] = BigRat(binomial(alpha, j));
      a[row][wdeg] = BigRat(residuals[pick[row]][static_cast<size_t>(ord)]);
    }
    for (unsigned col = 0; col < wdeg; ++col) {
      unsigned pr = col;
      while (pr < wdeg && a[pr][col] == 0) ++pr;
      if (pr == wdeg) {
        res.detail = "degenerate sample matrix";
        return res;
      }
      std::swap(a[col], a[pr]);
      for (unsigned row = 0; row < wdeg; ++row) {
        if (row == col || a[row][col] == 0) continue;
        BigRat f = a[row][col] / a[col][col];
        for (unsigned j = col; j <= wdeg; ++j) a[row][j] -= f * a[col][j];
      }
    }
    StruikSlotFit fit;
    fit.ord = ord;
    fit.coeffs.resize(wdeg);
    for (unsigned j = 0; j < wdeg; ++j) {
      BigRat v = a[j][wdeg] / a[j][j];
      if (boost::multiprecision::denominator(v) != 1) {
        res.detail = "non-integer coefficient for " + ctx.basis().format(ord);
        return res;
      }
      fit.coeffs[j] = boost::multiprecision::numerator(v);
    }

    // the fit must reproduce every sample, including alpha = 0
    for (size_t idx = 0; idx < alphas.size(); ++idx) {
      BigInt predicted = 0;
      for (unsigned j = 1; j <= wdeg; ++j) predicted += fit.coeffs[j - 1] * binomial(BigInt(alphas[idx]), j);
      if (predicted != residuals[idx][static_cast<size_t>(ord)]) {
        res.detail = "binomial fit of degree " + std::to_string(wdeg) + " fails for " +
                     ctx.basis().format(ord) + " at alpha=" + std::to_string(alphas[idx]);
        return res;
      }
    }
    res.fits.push_back(std::move(fit));
  }
  res.pass = true;
  return res;
}

namespace {
uint64_t splitmix64(uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace

QuotientBasisResult verify_lcs_quotient_basis(int letters, int n, int i, int trials, uint64_t seed) {
  QuotientBasisResult out;
  require(n >= 1 && i >= 1, errc::invalid_argument, "need n >= 1 and i >= 1");
  const int cls = n + i - 1;
  FreeNilpotentContext ctx(letters, cls);

  long long expected = 0;
  for (int w = n; w <= cls; ++w) expected += witt_chi_ll(static_cast<uint64_t>(letters), static_cast<uint64_t>(w));
  long long have = 0;
  for (int w = n; w <= cls; ++w) have += ctx.basis().count_weight(w);
  out.rank = have;
  if (have != expected) {
    out.detail = "slot count does not match the Witt numbers";
    return out;
  }

  const int lo = ctx.basis().weight_begin(n);
  uint64_t state = seed;
  auto random_gamma_n = [&]() {
    FreeNilpotentContext::Exps e = ctx.identity();
    for (int ord = lo; ord < ctx.rank(); ++ord)
      e[static_cast<size_t>(ord)] = static_cast<long long>(splitmix64(state) % 7) - 3;
    return e;
  };
  for (int t = 0; t < trials; ++t) {
    auto g1 = random_gamma_n();
    auto g2 = random_gamma_n();
    auto h = ctx.multiply(g1, g2);
    auto hi = ctx.inverse(h);
    for (int ord = 0; ord < lo; ++ord) {
      if (h[static_cast<size_t>(ord)] != 0 || hi[static_cast<size_t>(ord)] != 0) {
        out.detail = "product left the claimed slots";
        return out;
      }
    }
  }
  out.pass = true;
  return out;
}

}  // namespace pgw
