#include "symdef/geometry/fields.hpp"

#include "symdef/kernel/errors.hpp"

namespace symdef {

std::array<VectorField, 3> sl2_basis() {
  return {VectorField{Poly::x_power(0)}, VectorField{Poly::x_power(1)}, VectorField{Poly::x_power(2)}};
}

VectorField vf_bracket(const VectorField& x, const VectorField& y) {
  return {x.g * y.g.derivative() - y.g * x.g.derivative()};
}

std::optional<Parity> SuperVectorField::parity() const {
  auto pa = a.parity();
  auto pb = b.parity();
  if (!pa || !pb) return std::nullopt;
  if (a.is_zero() && b.is_zero()) return Parity::even;
  if (a.is_zero()) return *pb + Parity::odd;
  if (b.is_zero()) return *pa;
  if (*pa != *pb + Parity::odd) return std::nullopt;
  return *pa;
}

SuperPoly SuperVectorField::apply(const SuperPoly& f) const { return a * f.dx() + b * f.dtheta(); }

std::string SuperVectorField::to_string() const {
  return "(" + a.to_string() + ")*d/dx + (" + b.to_string() + ")*d/dtheta";
}

SuperVectorField eta_bar_field() {
  return {SuperPoly::odd(Poly::constant(Rational(-1))), SuperPoly::even(Poly::constant(Rational(1)))};
}

SuperVectorField supercommutator(const SuperVectorField& x, const SuperVectorField& y) {
  auto px = x.parity();
  auto py = y.parity();
  if (!px || !py) throw UsageError("supercommutator of non-homogeneous fields");
  Rational s(koszul(*px, *py));
  return {x.apply(y.a) - s * y.apply(x.a), x.apply(y.b) - s * y.apply(x.b)};
}

std::optional<SuperPoly> contact_factor(const SuperVectorField& x) {
  SuperVectorField c = supercommutator(x, eta_bar_field());
  // h eta_bar = -h theta d/dx + h d/dtheta
  const SuperPoly& h = c.b;
  SuperPoly expected_a = -(h * SuperPoly::theta());
  if (!(expected_a == c.a)) return std::nullopt;
  return h;
}

ContactField ContactField::from_generator(const SuperPoly& generator) {
  Parity p = generator.require_parity("contact field generator");
  Rational half_sign = Rational(p == Parity::odd ? 1 : -1, 2);  // -1/2 (-1)^{p(F)}
  SuperPoly coeff = half_sign * eta_bar(generator);
  SuperVectorField eta = eta_bar_field();
  SuperVectorField field{generator + coeff * eta.a, coeff * eta.b};
  return ContactField(generator, std::move(field), p);
}

ContactField ContactField::from_field(const SuperVectorField& field) {
  SuperPoly generator = field.a + field.b * SuperPoly::theta();
  if (!generator.is_homogeneous())
    throw InvariantViolation("contact generator recovered from a field is not homogeneous");
  ContactField out = from_generator(generator);
  if (!(out.field_ == field)) throw InvariantViolation("field is not a contact field: " + field.to_string());
  return out;
}

std::optional<SuperPoly> ContactField::contact_factor() const { return symdef::contact_factor(field_); }

std::array<ContactField, 5> osp_basis() {
  return {ContactField::from_generator(SuperPoly::even(Poly::x_power(0))),
          ContactField::from_generator(SuperPoly::odd(Poly::x_power(0))),
          ContactField::from_generator(SuperPoly::even(Poly::x_power(1))),
          ContactField::from_generator(SuperPoly::odd(Poly::x_power(1))),
          ContactField::from_generator(SuperPoly::even(Poly::x_power(2)))};
}

ContactField contact_bracket(const ContactField& x, const ContactField& y) {
  SuperVectorField c = supercommutator(x.field(), y.field());
  if (!symdef::contact_factor(c)) throw InvariantViolation("bracket of contact fields violates the contact condition");
  return ContactField::from_field(c);
}

}  // namespace symdef
