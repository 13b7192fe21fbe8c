#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "ff/vector.hpp"
#include "highrank/basis.hpp"

namespace vc2::gs {

using ff::Field;
using ff::Residue;
using ff::Vector;
using highrank::HighRankBasis;

/// A subset A of F_p^n given by a pure membership predicate. Implementations
/// must be safe to call concurrently.
class MembershipOracle {
 public:
  virtual ~MembershipOracle() = default;

  virtual const Field& field() const noexcept = 0;
  virtual std::size_t dimension() const noexcept = 0;
  virtual bool contains(const Vector& x) const = 0;
  /// Self-contained description, enough to rebuild the oracle.
  virtual nlohmann::json describe() const = 0;
};

/// 1-based index of the first nonzero coordinate, or n+1 for x = 0.
std::size_t fnz(const Vector& x);

/// Linear Green-Sanders set: the first nonzero coordinate equals 1.
class GsSet final : public MembershipOracle {
 public:
  GsSet(Field field, std::size_t n);

  const Field& field() const noexcept override { return field_; }
  std::size_t dimension() const noexcept override { return n_; }
  bool contains(const Vector& x) const override;
  nlohmann::json describe() const override;

 private:
  Field field_;
  std::size_t n_;
};

bool gs_contains(const GsSet& a, const Vector& x);

/// Quadratic Green-Sanders set: the first nonzero value among
/// Q_1(x), ..., Q_n(x) equals 1, where Q_t(x) = x^T M_t x.
class QgsSet final : public MembershipOracle {
 public:
  /// Checks the basis shape (n symmetric n x n matrices, flattened rank n).
  explicit QgsSet(std::shared_ptr<const HighRankBasis> basis);

  const Field& field() const noexcept override { return basis_->field(); }
  std::size_t dimension() const noexcept override { return basis_->n(); }
  bool contains(const Vector& x) const override;
  nlohmann::json describe() const override;

  const HighRankBasis& basis() const noexcept { return *basis_; }
  std::shared_ptr<const HighRankBasis> basis_ptr() const noexcept { return basis_; }

  /// Q_t(x), 1-based t.
  Residue eval_q(std::size_t t, const Vector& x) const;
  /// 2 x^T M_t y.
  Residue cross_term(std::size_t t, const Vector& x, const Vector& y) const;

 private:
  std::shared_ptr<const HighRankBasis> basis_;
};

Residue eval_q(const QgsSet& a, std::size_t t, const Vector& x);
bool qgs_contains(const QgsSet& a, const Vector& x);
Residue cross_term(const QgsSet& a, std::size_t t, const Vector& x, const Vector& y);

/// Verdict of the "first nonzero value equals 1" rule on a value sequence.
bool first_nonzero_is_one(std::span<const Residue> values);

/// Arbitrary subset stored as a bitset over lexicographic element indices.
class ExplicitSet final : public MembershipOracle {
 public:
  ExplicitSet(Field field, std::size_t n, std::vector<bool> members);

  const Field& field() const noexcept override { return field_; }
  std::size_t dimension() const noexcept override { return n_; }
  bool contains(const Vector& x) const override;
  bool contains_index(std::uint64_t idx) const { return members_[idx]; }
  nlohmann::json describe() const override;

 private:
  Field field_;
  std::size_t n_;
  std::vector<bool> members_;
};

/// Inverse of describe(): {"type": "gs"|"qgs"|"explicit", ...}.
std::shared_ptr<const MembershipOracle> oracle_from_json(const nlohmann::json& j);

}  // namespace vc2::gs
