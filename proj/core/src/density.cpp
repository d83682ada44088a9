#include "symdef/geometry/density.hpp"

#include "symdef/kernel/errors.hpp"

namespace symdef {

const char* to_string(Flavor f) { return f == Flavor::super ? "super" : "classical"; }

const Poly& Density::poly() const {
  if (auto p = std::get_if<Poly>(&value_)) return *p;
  throw UsageError("classical density expected");
}

const SuperPoly& Density::super_poly() const {
  if (auto p = std::get_if<SuperPoly>(&value_)) return *p;
  throw UsageError("super density expected");
}

std::string Density::to_string() const {
  if (flavor() == Flavor::classical) return "(" + poly().to_string() + ") dx^" + weight_.to_string();
  return "(" + super_poly().to_string() + ") alpha^" + weight_.to_string();
}

Density density_action(const VectorField& x, const Density& d) {
  if (d.flavor() != Flavor::classical) throw UsageError("density_action needs a classical density");
  const Poly& f = d.poly();
  return {d.weight(), x.g * f.derivative() + d.weight() * (x.g.derivative() * f)};
}

Density super_density_action(const ContactField& x, const Density& d) {
  if (d.flavor() != Flavor::super) throw UsageError("super_density_action needs a super density");
  const SuperPoly& f = d.super_poly();
  return {d.weight(), x.field().apply(f) + d.weight() * (x.generator().dx() * f)};
}

}  // namespace symdef
