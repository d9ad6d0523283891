#include "pgw/residue.hpp"

#include <limits>

namespace pgw {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t submod(uint64_t a, uint64_t b, uint64_t m) { return a >= b ? a - b : a + m - b; }

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d : {2ull, 3ull, 5ull}) {
    if (n % d == 0) return n == d;
  }
  for (uint64_t d = 7; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

ResidueModulus ResidueModulus::make(uint64_t p, unsigned k) {
  require(is_prime_u64(p), errc::invalid_parameters, "modulus base must be prime");
  require(k >= 1, errc::invalid_parameters, "modulus exponent must be >= 1");
  unsigned __int128 m = 1;
  for (unsigned i = 0; i < k; ++i) {
    m *= p;
    require(m < (static_cast<unsigned __int128>(1) << 32), errc::invalid_parameters,
            "p^k must be < 2^32");
  }
  return ResidueModulus{p, k, static_cast<uint64_t>(m)};
}

uint64_t mod_reduce(long long v, uint64_t m) {
  long long r = v % static_cast<long long>(m);
  if (r < 0) r += static_cast<long long>(m);
  return static_cast<uint64_t>(r);
}

uint64_t mod_inverse(uint64_t a, uint64_t m) {
  // extended Euclid on (a, m)
  long long r0 = static_cast<long long>(m), r1 = static_cast<long long>(a % m);
  long long t0 = 0, t1 = 1;
  while (r1 != 0) {
    long long q = r0 / r1;
    long long r2 = r0 - q * r1;
    long long t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  require(r0 == 1, errc::non_unit, "not a unit in Z_{p^k}");
  return mod_reduce(t0, m);
}

ResidueMatrix::ResidueMatrix(ResidueModulus mod, int n) : mod_(mod), n_(n) {
  require(n >= 1, errc::invalid_argument, "matrix dimension must be >= 1");
  a_.assign(static_cast<size_t>(n) * n, 0);
}

ResidueMatrix ResidueMatrix::identity(ResidueModulus mod, int n) {
  ResidueMatrix r(mod, n);
  for (int i = 0; i < n; ++i) r.set(i, i, 1);
  return r;
}

ResidueMatrix ResidueMatrix::from_rows(ResidueModulus mod,
                                       const std::vector<std::vector<long long>>& rows) {
  int n = static_cast<int>(rows.size());
  ResidueMatrix r(mod, n);
  for (int i = 0; i < n; ++i) {
    require(static_cast<int>(rows[i].size()) == n, errc::invalid_argument, "matrix must be square");
    for (int j = 0; j < n; ++j) r.set(i, j, rows[i][j]);
  }
  return r;
}

bool ResidueMatrix::is_identity() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (at(i, j) != static_cast<uint64_t>(i == j)) return false;
  return true;
}

ResidueMatrix mat_mul(const ResidueMatrix& a, const ResidueMatrix& b) {
  require(a.mod() == b.mod(), errc::invalid_argument, "modulus mismatch");
  require(a.dim() == b.dim(), errc::invalid_argument, "dimension mismatch");
  const int n = a.dim();
  const uint64_t m = a.mod().m;
  ResidueMatrix r(a.mod(), n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      uint64_t acc = 0;
      for (int k = 0; k < n; ++k) acc = (acc + mulmod(a.at(i, k), b.at(k, j), m)) % m;
      r.set(i, j, static_cast<long long>(acc));
    }
  }
  return r;
}

namespace {

// cofactor expansion on an index subset; n <= 4 keeps this exact and cheap
uint64_t det_rec(const ResidueMatrix& a, std::vector<int>& cols, int row, uint64_t m) {
  const int n = static_cast<int>(cols.size());
  if (n == 1) return a.at(row, cols[0]);
  uint64_t acc = 0;
  for (int idx = 0; idx < n; ++idx) {
    int col = cols[idx];
    std::vector<int> rest;
    rest.reserve(n - 1);
    for (int j = 0; j < n; ++j)
      if (j != idx) rest.push_back(cols[j]);
    uint64_t minor = det_rec(a, rest, row + 1, m);
    uint64_t term = mulmod(a.at(row, col), minor, m);
    acc = (idx % 2 == 0) ? (acc + term) % m : submod(acc, term, m);
  }
  return acc;
}

}  // namespace

uint64_t mat_det(const ResidueMatrix& a) {
  require(a.dim() <= 4, errc::invalid_argument, "determinant supported only for n <= 4");
  std::vector<int> cols(a.dim());
  for (int j = 0; j < a.dim(); ++j) cols[j] = j;
  return det_rec(a, cols, 0, a.mod().m);
}

bool mat_is_invertible(const ResidueMatrix& a) { return mat_det(a) % a.mod().p != 0; }

ResidueMatrix mat_inv(const ResidueMatrix& a) {
  const int n = a.dim();
  const uint64_t m = a.mod().m;
  uint64_t det = mat_det(a);
  require(det % a.mod().p != 0, errc::non_unit, "matrix determinant is not a unit");
  uint64_t det_inv = mod_inverse(det, m);
  ResidueMatrix r(a.mod(), n);
  if (n == 1) {
    r.set(0, 0, static_cast<long long>(det_inv));
    return r;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // inv[i][j] = (-1)^(i+j) det(a with row j and column i removed) / det(a)
      std::vector<int> cols;
      for (int cj = 0; cj < n; ++cj)
        if (cj != i) cols.push_back(cj);
      ResidueMatrix sub(a.mod(), n - 1);
      int ri = 0;
      for (int rr = 0; rr < n; ++rr) {
        if (rr == j) continue;
        for (int cc = 0; cc < n - 1; ++cc) sub.set(ri, cc, static_cast<long long>(a.at(rr, cols[cc])));
        ++ri;
      }
      uint64_t minor = mat_det(sub);
      uint64_t val = mulmod(minor, det_inv, m);
      if ((i + j) % 2 == 1) val = submod(0, val, m);
      r.set(i, j, static_cast<long long>(val));
    }
  }
  return r;
}

ResidueMatrix mat_pow(const ResidueMatrix& a, long long e) {
  ResidueMatrix base = a;
  if (e < 0) {
    base = mat_inv(a);
    e = -e;
  }
  ResidueMatrix r = ResidueMatrix::identity(a.mod(), a.dim());
  unsigned long long ue = static_cast<unsigned long long>(e);
  while (ue > 0) {
    if (ue & 1) r = mat_mul(r, base);
    base = mat_mul(base, base);
    ue >>= 1;
  }
  return r;
}

uint64_t element_order(const ResidueMatrix& a, uint64_t cap) {
  require(mat_is_invertible(a), errc::non_unit, "element_order requires an invertible matrix");
  ResidueMatrix cur = a;
  uint64_t ord = 1;
  while (!cur.is_identity()) {
    cur = mat_mul(cur, a);
    ++ord;
    require(ord <= cap, errc::order_cap_exceeded, "element order exceeds cap");
  }
  return ord;
}

std::string canonical_encode(const ResidueMatrix& a) {
  const uint64_t m = a.mod().m;
  const int width = m <= 0x100 ? 1 : (m <= 0x10000 ? 2 : 4);
  std::string out;
  out.reserve(static_cast<size_t>(a.dim()) * a.dim() * width);
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      uint64_t v = a.at(i, j);
      for (int b = 0; b < width; ++b) {
        out.push_back(static_cast<char>(v & 0xff));
        v >>= 8;
      }
    }
  }
  return out;
}

}  // namespace pgw
