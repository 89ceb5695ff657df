#pragma once

#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "kloo/bigint.hpp"

namespace kloo {

/// Integer partition, parts kept in weakly decreasing order.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  /// Partition with r_i parts equal to i (index 0 unused).
  static Partition from_multiplicities(const std::vector<int>& mult);
  /// Partition whose dual is the given weakly decreasing sequence.
  static Partition from_dual(const std::vector<int>& dual_parts);

  const std::vector<int>& parts() const { return parts_; }
  int size() const;
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int largest() const { return parts_.empty() ? 0 : parts_.front(); }

  /// r_i for i = 0..largest(); r_0 = 0.
  const std::vector<int>& multiplicities() const { return mult_; }
  int multiplicity(int i) const { return i >= 1 && i < static_cast<int>(mult_.size()) ? mult_[i] : 0; }

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator<(const Partition& o) const { return parts_ < o.parts_; }

  std::string to_string() const;

 private:
  std::vector<int> parts_;
  std::vector<int> mult_{0};
};

/// Transpose of the Young diagram: d_i = sum_{j >= i} r_j.
Partition dual(const Partition& lambda);

/// Multiset union of the parts.
Partition join(const Partition& mu, const Partition& nu);

/// Calls visit(mu, nu) for every sub-multiset mu of lambda with nu = lambda - mu.
/// There are prod_j (r_j + 1) of them.
void for_each_decomposition(const Partition& lambda,
                            const std::function<void(const Partition&, const Partition&)>& visit);

/// Every partition of n, in reverse lexicographic order.
std::vector<Partition> partitions_of(int n);

/// #Z_{GL_|lambda|(F_q)}(N_lambda) = prod_j prod_{i<r_j} (q^{r_j} - q^i) * q^{sum_j (d_j^2 - r_j^2)}.
BigInt centralizer_order(const Partition& lambda, const BigInt& q);

/// prod_i phi_{r_i}(1/q) with phi_r(T) = prod_{j=1}^r (1 - T^j).
Rational phi(const Partition& lambda, const BigInt& q);

/// #GL_n(F_q).
BigInt gl_order(int n, const BigInt& q);

}  // namespace kloo
