#pragma once

#include <string>

#include <json.hpp>

#include "kloo/bigint.hpp"
#include "kloo/charsum.hpp"

namespace kloo {

/// An upper bound coeff * p^exponent together with its applicability.
struct Envelope {
  std::string name;
  Rational coeff = 1;
  u64 p = 2;
  Rational exponent = 0;
  bool applicable = true;
  /// Human-readable hypothesis, e.g. "r = s > 0".
  std::string condition;

  double value() const;
  /// e.g. "5/4*3^2" or "3^(5/2)"
  std::string formula() const;
  bool holds_for(const BigInt& count) const { return integer_at_most(count, coeff, p, exponent); }
  bool holds_for(const CharSum& s) const { return magnitude_at_most(s, coeff, p, exponent); }

  nlohmann::json to_json() const;
};

std::string rational_text(const Rational& r);

}  // namespace kloo
