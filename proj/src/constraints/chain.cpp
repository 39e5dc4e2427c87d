#include "presym/constraints/chain.hpp"

namespace presym {

const char* to_string(Side side) { return side == Side::hamiltonian ? "hamiltonian" : "lagrangian"; }

const char* to_string(Origin origin) {
  switch (origin) {
    case Origin::primary:
      return "primary";
    case Origin::tangency:
      return "tangency";
    case Origin::dynamical:
      return "dynamical";
    case Origin::sode:
      return "sode";
  }
  return "?";
}

const char* to_string(ConstraintClass klass) {
  switch (klass) {
    case ConstraintClass::unknown:
      return "unknown";
    case ConstraintClass::first:
      return "first";
    case ConstraintClass::second:
      return "second";
  }
  return "?";
}

std::vector<Constraint> ConstraintChain::all() const {
  std::vector<Constraint> out;
  for (const auto& gen : generations) out.insert(out.end(), gen.begin(), gen.end());
  return out;
}

std::vector<RationalExpr> ConstraintChain::expressions() const {
  std::vector<RationalExpr> out;
  for (const auto& c : all()) out.push_back(c.expr);
  return out;
}

std::vector<Constraint> ConstraintChain::generation(std::size_t label) const {
  std::vector<Constraint> out;
  for (const auto& c : all()) {
    if (c.generation == label) out.push_back(c);
  }
  return out;
}

std::vector<RationalExpr> ConstraintChain::up_to(std::size_t label) const {
  std::vector<RationalExpr> out;
  for (const auto& c : all()) {
    if (c.generation <= label) out.push_back(c.expr);
  }
  return out;
}

}  // namespace presym
