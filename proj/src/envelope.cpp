#include "kloo/envelope.hpp"

#include <cmath>

namespace kloo {

std::string rational_text(const Rational& r) {
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

double Envelope::value() const {
  return coeff.convert_to<double>() * std::pow(static_cast<double>(p), exponent.convert_to<double>());
}

std::string Envelope::formula() const {
  std::string pow_text = std::to_string(p) + "^";
  std::string e = rational_text(exponent);
  pow_text += boost::multiprecision::denominator(exponent) == 1 ? e : "(" + e + ")";
  if (coeff == 1) return pow_text;
  return rational_text(coeff) + "*" + pow_text;
}

nlohmann::json Envelope::to_json() const {
  return {{"name", name},
          {"formula", formula()},
          {"value", value()},
          {"applicable", applicable},
          {"condition", condition}};
}

}  // namespace kloo
