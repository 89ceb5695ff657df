#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "kloo/fppoly.hpp"

namespace kloo {

/// F_q = F_p[x]/(f) for an explicit monic irreducible f.
class FqField {
 public:
  /// Validates that f is monic irreducible.
  static std::shared_ptr<const FqField> make(const FpPoly& f);

  std::uint32_t p() const { return f_.p(); }
  const FpPoly& modulus() const { return f_; }
  int degree() const { return f_.degree(); }
  std::uint64_t q() const { return q_; }

  bool operator==(const FqField& o) const { return f_ == o.f_; }

 private:
  explicit FqField(FpPoly f);

  FpPoly f_;
  std::uint64_t q_;
};

using FqFieldPtr = std::shared_ptr<const FqField>;

class FqElem {
 public:
  FqElem(FqFieldPtr field, const FpPoly& rep);

  static FqElem zero(const FqFieldPtr& field) { return FqElem(field, FpPoly(field->p())); }
  static FqElem one(const FqFieldPtr& field) { return FqElem(field, FpPoly::constant(field->p(), 1)); }
  static FqElem from_int(const FqFieldPtr& field, std::int64_t c) {
    return FqElem(field, FpPoly::constant(field->p(), c));
  }
  /// The class of x, a root of the field modulus.
  static FqElem generator(const FqFieldPtr& field) { return FqElem(field, FpPoly::x(field->p())); }

  const FqFieldPtr& field() const { return field_; }
  const FpPoly& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }

  FqElem operator+(const FqElem& o) const;
  FqElem operator-(const FqElem& o) const;
  FqElem operator*(const FqElem& o) const;
  FqElem operator-() const { return FqElem(field_, -rep_); }
  FqElem inverse() const;
  FqElem pow(std::uint64_t e) const;

  bool operator==(const FqElem& o) const { return same_field(o) && rep_ == o.rep_; }

  std::string to_string() const { return rep_.to_string(); }

 private:
  bool same_field(const FqElem& o) const;
  void require_same(const FqElem& o) const;

  FqFieldPtr field_;
  FpPoly rep_;
};

}  // namespace kloo
