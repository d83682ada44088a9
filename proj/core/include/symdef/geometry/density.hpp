#pragma once

#include <string>
#include <variant>

#include "symdef/geometry/fields.hpp"

namespace symdef {

enum class Flavor { classical, super };
const char* to_string(Flavor f);

/// f dx^lambda (classical) or F alpha^lambda (super).
class Density {
 public:
  Density(Rational weight, Poly value) : weight_(std::move(weight)), value_(std::move(value)) {}
  Density(Rational weight, SuperPoly value) : weight_(std::move(weight)), value_(std::move(value)) {}

  const Rational& weight() const { return weight_; }
  Flavor flavor() const { return std::holds_alternative<Poly>(value_) ? Flavor::classical : Flavor::super; }
  const Poly& poly() const;             ///< classical only
  const SuperPoly& super_poly() const;  ///< super only

  std::string to_string() const;
  friend bool operator==(const Density&, const Density&) = default;

 private:
  Rational weight_;
  std::variant<Poly, SuperPoly> value_;
};

/// L_X (f dx^lambda) = (g f' + lambda g' f) dx^lambda
Density density_action(const VectorField& x, const Density& d);

/// (X_G + lambda G')(F) alpha^lambda
Density super_density_action(const ContactField& x, const Density& d);

}  // namespace symdef
