#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gs/sets.hpp"
#include "shatter/engine.hpp"

namespace vc2::quad {

using ff::Field;
using ff::Residue;
using ff::Vector;
using gs::QgsSet;
using shatter::ContainmentMap;

/// Partial map on [0,3]^2: A^C at (0,1), (0,2), (1,0), (2,0), (2,3), (3,2),
/// A elsewhere, (0,0) unassigned.
ContainmentMap prop32_phi();

struct Prop32Result {
  bool passed = true;
  std::string detail;
  /// mu^(m) constant on [1,3]^2, so the level-m conclusions were checked.
  bool level_m_checked = false;
  std::optional<Residue> mu;
};

/// For a z realising prop32_phi (with either value at (0,0)), with
/// cross-terms 2 x_i^T M_t y_j zero for t < m on [0,3]^2:
///   Q_t(z) = Q_t(x_i+z) = Q_t(y_j+z) = 0 for t < m, i, j in [1,3];
///   if mu^(m) is a constant mu on [1,3]^2, Q_m(x_i+z) = Q_m(y_j+z) = 0
///   and Q_m(z) = mu.
/// mu = 0 itself can only be forced across both values of phi(0,0); see
/// run_prop32_suite. Throws Error(invalid_argument) ("inapplicable") if
/// the hypotheses fail or z does not realise the map.
Prop32Result check_prop32_conclusion(const QgsSet& a, const std::vector<Vector>& x, const std::vector<Vector>& y,
                                     std::size_t m, const Vector& z);

struct Prop32Instance {
  std::vector<Vector> x;
  std::vector<Vector> y;
  std::size_t m = 1;
};

struct Prop32InstanceReport {
  std::size_t m = 1;
  std::uint64_t realizing_z = 0;
  bool realized_with_a = false;   // some z with phi(0,0) = A
  bool realized_with_ac = false;  // some z with phi(0,0) = A^C
  std::optional<Residue> constant_mu;
  bool passed = true;
  std::string detail;

  bool vacuous() const noexcept { return realizing_z == 0; }
};

struct Prop32SuiteReport {
  std::vector<Prop32InstanceReport> instances;
  bool passed = true;
  std::size_t vacuous = 0;
  std::uint64_t checked_z = 0;
};

/// Exhaustive z-search (p^n <= 10^6) on one instance, checking every
/// realising z and, when both values of phi(0,0) are realised and mu^(m)
/// is constant, that the constant is 0.
Prop32InstanceReport run_prop32_instance(const QgsSet& a, const Prop32Instance& inst);

/// Seeded instances: m cycles through {1, 2}; every third instance forces a
/// constant mu^(1). Each instance is drawn from up to `tries` candidates,
/// preferring one that some z realises.
std::vector<Prop32Instance> prop32_instances(const QgsSet& a, std::size_t count, std::uint64_t seed,
                                             std::size_t tries = 200);

Prop32SuiteReport run_prop32_suite(const QgsSet& a, std::size_t count, std::uint64_t seed, unsigned threads = 1);

/// Every value lies in {-2, ..., 2} mod p.
bool lemma33_range_holds(const ff::Field& field, const std::vector<Residue>& mus);

/// mu^(m)_{i,j} over the certificate's grid, after checking that the
/// certificate is valid for A (so X, Y are quadratically shattered) and that
/// cross-terms vanish for t < m. Throws Error(invalid_argument) if those
/// hypotheses cannot be verified.
std::vector<Residue> lemma33_mus(const QgsSet& a, const shatter::QuadShatterCertificate& cert, std::size_t m);

bool check_lemma33_range(const QgsSet& a, const shatter::QuadShatterCertificate& cert, std::size_t m);

}  // namespace vc2::quad
