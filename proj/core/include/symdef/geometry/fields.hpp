#pragma once

#include <array>
#include <optional>
#include <string>

#include "symdef/geometry/super_poly.hpp"

namespace symdef {

/// g(x) d/dx on the line.
struct VectorField {
  Poly g;

  std::string to_string() const { return "(" + g.to_string() + ")*d/dx"; }
  friend bool operator==(const VectorField&, const VectorField&) = default;
};

/// d/dx, x d/dx, x^2 d/dx in this order.
std::array<VectorField, 3> sl2_basis();

/// (g h' - h g') d/dx
VectorField vf_bracket(const VectorField& x, const VectorField& y);

/// a d/dx + b d/dtheta on R^{1|1}.
struct SuperVectorField {
  SuperPoly a;
  SuperPoly b;

  /// Parity of a homogeneous field: p(a) = p(b) + 1.
  std::optional<Parity> parity() const;
  /// Derivation applied to a superfunction: a f_x + b f_theta.
  SuperPoly apply(const SuperPoly& f) const;
  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  std::string to_string() const;

  friend SuperVectorField operator+(const SuperVectorField& u, const SuperVectorField& v) {
    return {u.a + v.a, u.b + v.b};
  }
  friend SuperVectorField operator*(const Rational& q, const SuperVectorField& v) { return {q * v.a, q * v.b}; }
  friend bool operator==(const SuperVectorField&, const SuperVectorField&) = default;
};

/// eta_bar = d/dtheta - theta d/dx as a field.
SuperVectorField eta_bar_field();

/// Supercommutator XY - (-1)^{p(X)p(Y)} YX of homogeneous fields.
SuperVectorField supercommutator(const SuperVectorField& x, const SuperVectorField& y);

/// Contact field X_F = F d/dx - 1/2 (-1)^{p(F)} eta_bar(F) eta_bar.
class ContactField {
 public:
  /// Requires homogeneous F.
  static ContactField from_generator(const SuperPoly& generator);
  /// Recovers F = a + b theta from the components; throws InvariantViolation if
  /// the field is not the contact field of that F.
  static ContactField from_field(const SuperVectorField& field);

  const SuperPoly& generator() const { return generator_; }
  const SuperVectorField& field() const { return field_; }
  const SuperPoly& a() const { return field_.a; }
  const SuperPoly& b() const { return field_.b; }
  Parity parity() const { return parity_; }

  /// h with [X, eta_bar] = h eta_bar, or nullopt if the contact condition fails.
  std::optional<SuperPoly> contact_factor() const;

  std::string to_string() const { return "X[" + generator_.to_string() + "]"; }

  friend bool operator==(const ContactField& u, const ContactField& v) { return u.field_ == v.field_; }

 private:
  ContactField(SuperPoly generator, SuperVectorField field, Parity parity)
      : generator_(std::move(generator)), field_(std::move(field)), parity_(parity) {}

  SuperPoly generator_;
  SuperVectorField field_;
  Parity parity_;
};

/// Contact condition for an arbitrary field.
std::optional<SuperPoly> contact_factor(const SuperVectorField& x);

/// X_1, X_theta, X_x, X_{x theta}, X_{x^2} in this order.
std::array<ContactField, 5> osp_basis();

/// Supercommutator of contact fields, returned with its generating function.
ContactField contact_bracket(const ContactField& x, const ContactField& y);

}  // namespace symdef
