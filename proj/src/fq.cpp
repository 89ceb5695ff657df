#include "kloo/fq.hpp"

#include "kloo/error.hpp"
#include "kloo/modring.hpp"

namespace kloo {

FqField::FqField(FpPoly f) : f_(std::move(f)), q_(checked_pow(f_.p(), static_cast<unsigned>(f_.degree()))) {}

std::shared_ptr<const FqField> FqField::make(const FpPoly& f) {
  if (!f.is_monic() || !is_irreducible(f)) {
    throw Error(ErrorCode::InvalidArgument, f.to_string() + " is not monic irreducible");
  }
  return std::shared_ptr<const FqField>(new FqField(f));
}

FqElem::FqElem(FqFieldPtr field, const FpPoly& rep) : field_(std::move(field)), rep_(rep % field_->modulus()) {}

bool FqElem::same_field(const FqElem& o) const {
  return field_ == o.field_ || *field_ == *o.field_;
}

void FqElem::require_same(const FqElem& o) const {
  if (!same_field(o)) {
    throw Error(ErrorCode::FieldMismatch,
                field_->modulus().to_string() + " vs " + o.field_->modulus().to_string());
  }
}

FqElem FqElem::operator+(const FqElem& o) const {
  require_same(o);
  return FqElem(field_, rep_ + o.rep_);
}

FqElem FqElem::operator-(const FqElem& o) const {
  require_same(o);
  return FqElem(field_, rep_ - o.rep_);
}

FqElem FqElem::operator*(const FqElem& o) const {
  require_same(o);
  return FqElem(field_, rep_ * o.rep_);
}

FqElem FqElem::inverse() const {
  if (is_zero()) throw Error(ErrorCode::NotAUnit, "inverse of zero in F_q");
  return pow(field_->q() - 2);
}

FqElem FqElem::pow(std::uint64_t e) const {
  return FqElem(field_, powmod(rep_, e, field_->modulus()));
}

}  // namespace kloo
