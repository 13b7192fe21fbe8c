#include "gs/sets.hpp"

#include "ff/matrix.hpp"
#include "ff/space.hpp"
#include "util/error.hpp"

namespace vc2::gs {

namespace {

void check_vector(const Field& field, std::size_t n, const Vector& x) {
  require(x.field() == field && x.size() == n, "vector has the wrong length or modulus");
}

}  // namespace

std::size_t fnz(const Vector& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) return i + 1;
  return x.size() + 1;
}

bool first_nonzero_is_one(std::span<const Residue> values) {
  for (Residue v : values)
    if (v != 0) return v == 1;
  return false;
}

GsSet::GsSet(Field field, std::size_t n) : field_(field), n_(n) { require(n >= 1, "dimension must be at least 1"); }

bool GsSet::contains(const Vector& x) const {
  check_vector(field_, n_, x);
  return first_nonzero_is_one(x.coords());
}

nlohmann::json GsSet::describe() const { return {{"type", "gs"}, {"p", field_.p()}, {"n", n_}}; }

bool gs_contains(const GsSet& a, const Vector& x) { return a.contains(x); }

QgsSet::QgsSet(std::shared_ptr<const HighRankBasis> basis) : basis_(std::move(basis)) {
  require(basis_ != nullptr, "missing basis");
  require(basis_->size() == basis_->n(), "a QGS basis needs exactly n matrices");
  require(highrank::flattened_rank(*basis_) == basis_->n(), "basis matrices are linearly dependent");
}

Residue QgsSet::eval_q(std::size_t t, const Vector& x) const {
  const auto& m = basis_->mat(t);
  check_vector(field(), dimension(), x);
  return ff::bilinear(x, m, x);
}

Residue QgsSet::cross_term(std::size_t t, const Vector& x, const Vector& y) const {
  const auto& m = basis_->mat(t);
  check_vector(field(), dimension(), x);
  check_vector(field(), dimension(), y);
  return field().mul(2, ff::bilinear(x, m, y));
}

bool QgsSet::contains(const Vector& x) const {
  check_vector(field(), dimension(), x);
  for (std::size_t t = 1; t <= basis_->size(); ++t) {
    const Residue v = ff::bilinear(x, basis_->mat(t), x);
    if (v != 0) return v == 1;
  }
  return false;
}

nlohmann::json QgsSet::describe() const {
  return {{"type", "qgs"}, {"basis", highrank::basis_to_json(*basis_)}};
}

Residue eval_q(const QgsSet& a, std::size_t t, const Vector& x) { return a.eval_q(t, x); }
bool qgs_contains(const QgsSet& a, const Vector& x) { return a.contains(x); }
Residue cross_term(const QgsSet& a, std::size_t t, const Vector& x, const Vector& y) {
  return a.cross_term(t, x, y);
}

ExplicitSet::ExplicitSet(Field field, std::size_t n, std::vector<bool> members)
    : field_(field), n_(n), members_(std::move(members)) {
  const ff::Space space(field_, n_, std::uint64_t{1} << 32);
  require(members_.size() == space.size(), "explicit set needs one flag per group element");
}

bool ExplicitSet::contains(const Vector& x) const {
  check_vector(field_, n_, x);
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < n_; ++i) idx = idx * field_.p() + x[i];
  return members_[idx];
}

nlohmann::json ExplicitSet::describe() const {
  nlohmann::json members = nlohmann::json::array();
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i]) members.push_back(i);
  return {{"type", "explicit"}, {"p", field_.p()}, {"n", n_}, {"members", members}};
}

std::shared_ptr<const MembershipOracle> oracle_from_json(const nlohmann::json& j) {
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "gs") return std::make_shared<GsSet>(Field(j.at("p").get<std::uint32_t>()), j.at("n").get<std::size_t>());
    if (type == "qgs") {
      auto basis = std::make_shared<const HighRankBasis>(highrank::basis_from_json(j.at("basis")));
      return std::make_shared<QgsSet>(std::move(basis));
    }
    if (type == "explicit") {
      const Field field(j.at("p").get<std::uint32_t>());
      const auto n = j.at("n").get<std::size_t>();
      const ff::Space space(field, n, std::uint64_t{1} << 32);
      std::vector<bool> members(space.size(), false);
      for (const auto& m : j.at("members")) {
        const auto idx = m.get<std::uint64_t>();
        if (idx >= space.size()) fail(ErrorCode::parse_error, "explicit member index out of range");
        members[idx] = true;
      }
      return std::make_shared<ExplicitSet>(field, n, std::move(members));
    }
    fail(ErrorCode::parse_error, "unknown set type \"" + type + "\"");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string("malformed set description: ") + e.what());
  }
}

}  // namespace vc2::gs
