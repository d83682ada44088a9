#pragma once

#include <string>
#include <variant>
#include <vector>

#include "symdef/cohomology/cochain.hpp"

namespace symdef {

enum class Family { A, B, C, Phi, Yprime, Y, Ytilde, Omega };
const char* to_string(Family f);

/// Names a catalog cochain, e.g. "A:lambda=3/2", "B:m=3,k=2", "Omega:k=3".
struct CatalogId {
  Family family = Family::A;
  Rational lambda;  ///< A, Yprime
  long m = 0;       ///< B, C
  long k = 0;       ///< B, C, Phi, Y, Ytilde, Omega

  /// Throws UsageError on malformed strings or out-of-range indices.
  static CatalogId parse(const std::string& text);
  std::string to_string() const;
  /// Throws UsageError when the indices are outside the family's range.
  void validate() const;
  bool is_super() const { return family == Family::Yprime || family == Family::Y || family == Family::Ytilde || family == Family::Omega; }
  int degree() const { return family == Family::Phi || family == Family::Omega ? 2 : 1; }

  friend bool operator==(const CatalogId&, const CatalogId&) = default;
};

Cochain1<DiffOp> cocycle_A(const Rational& lambda);
Cochain1<DiffOp> cocycle_B(long m, long k);
Cochain1<DiffOp> cocycle_C(long m, long k);
Cochain2<DiffOp> cocycle_Phi(long k);
Cochain1<SuperDiffOp> cocycle_Yprime(const Rational& lambda);
Cochain1<SuperDiffOp> cocycle_Y(long k);
Cochain1<SuperDiffOp> cocycle_Ytilde(long k);
Cochain2<SuperDiffOp> cocycle_Omega(long k);

using AnyCochain = std::variant<Cochain1<DiffOp>, Cochain2<DiffOp>, Cochain1<SuperDiffOp>, Cochain2<SuperDiffOp>>;
AnyCochain build(const CatalogId& id);

/// Comparison of both sides of
///   (-1)^k Omega_k(X_F, X_G) = (k-1) Phi_{k-1}(X_F, X_G) o d_theta - k theta Phi_k(X_F, X_G)
/// on one pair of sl(2) elements inside osp(1|2).
struct Lemma23Pair {
  std::size_t first;   ///< osp(1|2) basis index
  std::size_t second;  ///< osp(1|2) basis index
  SuperDiffOp lhs;
  SuperDiffOp rhs;
  SuperDiffOp residual;
};

struct Lemma23Result {
  long k = 0;
  bool pass = true;
  std::vector<Lemma23Pair> pairs;
};

/// Checks all ordered pairs from {X_1, X_x, X_{x^2}}; requires k >= 2.
Lemma23Result lemma23_check(long k);

}  // namespace symdef
