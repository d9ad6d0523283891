#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pgw/error.hpp"

namespace pgw {

bool is_prime_u64(uint64_t n);

// Prime-power modulus p^k. All supported moduli fit below 2^32 so that
// products of reduced residues fit in 64 bits.
struct ResidueModulus {
  uint64_t p = 2;
  unsigned k = 1;
  uint64_t m = 2;

  static ResidueModulus make(uint64_t p, unsigned k);
  bool operator==(const ResidueModulus&) const = default;
};

uint64_t mod_reduce(long long v, uint64_t m);
uint64_t mod_inverse(uint64_t a, uint64_t m);  // extended Euclid, a must be a unit

// Square matrix over Z_{p^k}. Entries are kept as least nonnegative
// residues at all times so the canonical encoding is a pure function of
// the group element.
class ResidueMatrix {
public:
  ResidueMatrix(ResidueModulus mod, int n);
  static ResidueMatrix identity(ResidueModulus mod, int n);
  static ResidueMatrix from_rows(ResidueModulus mod, const std::vector<std::vector<long long>>& rows);

  const ResidueModulus& mod() const { return mod_; }
  int dim() const { return n_; }
  uint64_t at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  void set(int i, int j, long long v) { a_[static_cast<size_t>(i) * n_ + j] = mod_reduce(v, mod_.m); }

  bool is_identity() const;
  bool operator==(const ResidueMatrix&) const = default;

private:
  ResidueModulus mod_;
  int n_;
  std::vector<uint64_t> a_;
};

ResidueMatrix mat_mul(const ResidueMatrix& a, const ResidueMatrix& b);
ResidueMatrix mat_inv(const ResidueMatrix& a);
ResidueMatrix mat_pow(const ResidueMatrix& a, long long e);

uint64_t mat_det(const ResidueMatrix& a);  // cofactor expansion, n <= 4
bool mat_is_invertible(const ResidueMatrix& a);

// Least e >= 1 with a^e = I; errors out beyond cap.
uint64_t element_order(const ResidueMatrix& a, uint64_t cap);

// Row-major fixed-width little-endian entry bytes. Injective for fixed
// modulus and dimension, stable across runs.
std::string canonical_encode(const ResidueMatrix& a);

}  // namespace pgw
