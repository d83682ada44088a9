#include "symdef/cohomology/algebra.hpp"

#include "symdef/kernel/errors.hpp"

namespace symdef {

const char* to_string(AlgebraKind k) { return k == AlgebraKind::sl2 ? "sl2" : "osp12"; }

namespace {

// Coordinates of a degree <= 2 generator in the basis {1, x, x^2}.
LieAlgebra::LinearCombination sl2_coordinates(const Poly& g) {
  if (g.degree() && *g.degree() > 2) throw InvariantViolation("sl2 bracket left the algebra");
  LieAlgebra::LinearCombination out;
  for (std::size_t n = 0; n < g.size(); ++n)
    if (!g.coeffs()[n].is_zero()) out.emplace_back(n, g.coeffs()[n]);
  return out;
}

// Coordinates of a generator in {1, theta, x, x theta, x^2}.
LieAlgebra::LinearCombination osp_coordinates(const SuperPoly& f) {
  LieAlgebra::LinearCombination out;
  const std::size_t even_slot[] = {0, 2, 4};
  const std::size_t odd_slot[] = {1, 3};
  if ((f.f0().degree() && *f.f0().degree() > 2) || (f.f1().degree() && *f.f1().degree() > 1))
    throw InvariantViolation("osp(1|2) bracket left the algebra");
  for (std::size_t n = 0; n < f.f0().size(); ++n)
    if (!f.f0().coeffs()[n].is_zero()) out.emplace_back(even_slot[n], f.f0().coeffs()[n]);
  for (std::size_t n = 0; n < f.f1().size(); ++n)
    if (!f.f1().coeffs()[n].is_zero()) out.emplace_back(odd_slot[n], f.f1().coeffs()[n]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

LieAlgebra::LieAlgebra(AlgebraKind kind) : kind_(kind) {
  if (kind == AlgebraKind::sl2) {
    auto basis = sl2_basis();
    vfields_.assign(basis.begin(), basis.end());
    names_ = {"d/dx", "x*d/dx", "x^2*d/dx"};
    parities_.assign(3, Parity::even);
    weights_ = {Rational(-1), Rational(0), Rational(1)};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) brackets_.push_back(sl2_coordinates(vf_bracket(vfields_[i], vfields_[j]).g));
  } else {
    auto basis = osp_basis();
    cfields_.assign(basis.begin(), basis.end());
    names_ = {"X_1", "X_theta", "X_x", "X_xtheta", "X_x^2"};
    parities_ = {Parity::even, Parity::odd, Parity::even, Parity::odd, Parity::even};
    weights_ = {Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2), Rational(1)};
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        brackets_.push_back(osp_coordinates(contact_bracket(cfields_[i], cfields_[j]).generator()));
  }
}

const LieAlgebra& LieAlgebra::sl2() {
  static const LieAlgebra instance(AlgebraKind::sl2);
  return instance;
}

const LieAlgebra& LieAlgebra::osp12() {
  static const LieAlgebra instance(AlgebraKind::osp12);
  return instance;
}

std::vector<std::size_t> LieAlgebra::even_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (parities_[i] == Parity::even) out.push_back(i);
  return out;
}

const VectorField& LieAlgebra::vector_field(std::size_t i) const {
  if (kind_ != AlgebraKind::sl2) throw UsageError("vector_field on osp(1|2); use contact_field");
  return vfields_.at(i);
}

const ContactField& LieAlgebra::contact_field(std::size_t i) const {
  if (kind_ != AlgebraKind::osp12) throw UsageError("contact_field on sl(2); use vector_field");
  return cfields_.at(i);
}

}  // namespace symdef
