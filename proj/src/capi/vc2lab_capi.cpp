#include "vc2lab/vc2lab.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ff/json_codec.hpp"
#include "ff/space.hpp"
#include "gs/sets.hpp"
#include "highrank/basis.hpp"
#include "quad/construction.hpp"
#include "quad/factor.hpp"
#include "quad/prop32.hpp"
#include "ramsey/ramsey.hpp"
#include "shatter/certificate.hpp"
#include "shatter/engine.hpp"
#include "util/error.hpp"

using nlohmann::json;

struct vc2_basis {
  std::shared_ptr<const vc2::highrank::HighRankBasis> basis;
};
struct vc2_set {
  std::shared_ptr<const vc2::gs::MembershipOracle> oracle;
};
struct vc2_construction {
  vc2::quad::ShatterPairConstruction c;
};
struct vc2_colouring {
  vc2::ramsey::BipartiteColouring c;
};

namespace {

thread_local std::string last_error;

vc2_status to_status(vc2::ErrorCode code) { return static_cast<vc2_status>(static_cast<int>(code)); }

template <typename F>
vc2_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return VC2_OK;
  } catch (const vc2::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const json::exception& e) {
    last_error = std::string("JSON error: ") + e.what();
    return VC2_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return VC2_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return VC2_ERR_INTERNAL;
  }
}

void need(const void* ptr, const char* what) {
  if (ptr == nullptr) vc2::fail(vc2::ErrorCode::invalid_argument, std::string("null ") + what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& j) {
  if (out != nullptr) *out = dup_string(j.dump());
}

json parse(const char* text) {
  need(text, "JSON text");
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    vc2::fail(vc2::ErrorCode::parse_error, e.what());
  }
}

std::vector<vc2::ff::Vector> points(const vc2::gs::MembershipOracle& a, const uint32_t* data, size_t count) {
  std::vector<vc2::ff::Vector> out;
  const size_t n = a.dimension();
  for (size_t i = 0; i < count; ++i) {
    std::vector<vc2::ff::Residue> c(data + i * n, data + (i + 1) * n);
    for (auto v : c) vc2::require(v < a.field().p(), "coordinate out of range");
    out.emplace_back(a.field(), std::move(c));
  }
  return out;
}

json witness_json(const std::optional<std::vector<vc2::ff::Residue>>& w) {
  if (!w) return nullptr;
  return *w;
}

}  // namespace

extern "C" {

const char* vc2_version(void) { return "0.1.0"; }

const char* vc2_last_error(void) { return last_error.c_str(); }

void vc2_string_free(char* s) { std::free(s); }

vc2_status vc2_scalar_inverse(uint32_t p, int64_t a, uint32_t* out) {
  return guarded([&] {
    need(out, "output");
    *out = vc2::ff::scalar_inverse(vc2::ff::Field(p), a);
  });
}

vc2_status vc2_basis_build(uint32_t p, size_t n, vc2_basis** out) {
  return guarded([&] {
    need(out, "output");
    auto b = std::make_shared<const vc2::highrank::HighRankBasis>(vc2::highrank::build_trace_basis(vc2::ff::Field(p), n));
    *out = new vc2_basis{std::move(b)};
  });
}

vc2_status vc2_basis_from_json(const char* text, vc2_basis** out) {
  return guarded([&] {
    need(out, "output");
    auto b = std::make_shared<const vc2::highrank::HighRankBasis>(vc2::highrank::basis_from_json(parse(text)));
    *out = new vc2_basis{std::move(b)};
  });
}

vc2_status vc2_basis_to_json(const vc2_basis* basis, char** out) {
  return guarded([&] {
    need(basis, "basis");
    need(out, "output");
    emit(out, vc2::highrank::basis_to_json(*basis->basis));
  });
}

uint32_t vc2_basis_p(const vc2_basis* basis) { return basis ? basis->basis->field().p() : 0; }

size_t vc2_basis_n(const vc2_basis* basis) { return basis ? basis->basis->n() : 0; }

vc2_status vc2_basis_check(const vc2_basis* basis, int exhaustive, uint64_t samples, uint64_t seed, unsigned threads,
                           int* passed, char** report) {
  return guarded([&] {
    need(basis, "basis");
    vc2::highrank::CheckMode mode = vc2::highrank::Exhaustive{};
    if (!exhaustive) mode = vc2::highrank::Sampled{samples, seed, threads};
    const auto r = vc2::highrank::check_high_rank(*basis->basis, mode);
    if (passed) *passed = r.passed ? 1 : 0;
    emit(report, {{"passed", r.passed},
                  {"checked", r.checked},
                  {"mode", exhaustive ? "exhaustive" : "sampled"},
                  {"witness", witness_json(r.witness)}});
  });
}

void vc2_basis_free(vc2_basis* basis) { delete basis; }

vc2_status vc2_set_gs(uint32_t p, size_t n, vc2_set** out) {
  return guarded([&] {
    need(out, "output");
    *out = new vc2_set{std::make_shared<vc2::gs::GsSet>(vc2::ff::Field(p), n)};
  });
}

vc2_status vc2_set_qgs(const vc2_basis* basis, vc2_set** out) {
  return guarded([&] {
    need(basis, "basis");
    need(out, "output");
    *out = new vc2_set{std::make_shared<vc2::gs::QgsSet>(basis->basis)};
  });
}

vc2_status vc2_set_from_json(const char* text, vc2_set** out) {
  return guarded([&] {
    need(out, "output");
    *out = new vc2_set{vc2::gs::oracle_from_json(parse(text))};
  });
}

vc2_status vc2_set_contains(const vc2_set* set, const uint32_t* coords, size_t n, int* out) {
  return guarded([&] {
    need(set, "set");
    need(coords, "coordinates");
    need(out, "output");
    vc2::require(n == set->oracle->dimension(), "vector length does not match the set");
    *out = set->oracle->contains(points(*set->oracle, coords, 1)[0]) ? 1 : 0;
  });
}

void vc2_set_free(vc2_set* set) { delete set; }

vc2_status vc2_vc_dim(const vc2_set* set, size_t k_max, unsigned threads, size_t* dimension, char** certificate) {
  return guarded([&] {
    need(set, "set");
    need(dimension, "output");
    const auto r = vc2::shatter::vc_dim(*set->oracle, k_max, threads);
    *dimension = r.dimension;
    emit(certificate, vc2::shatter::certificate_to_json(r.certificate));
  });
}

vc2_status vc2_shatter_check(const vc2_set* set, const uint32_t* pts, size_t count, unsigned threads, int* shattered,
                             char** result) {
  return guarded([&] {
    need(set, "set");
    need(shattered, "output");
    if (count > 0) need(pts, "points");
    const auto r = vc2::shatter::shatters(*set->oracle, points(*set->oracle, pts, count), threads);
    if (const auto* cert = std::get_if<vc2::shatter::ShatterCertificate>(&r)) {
      *shattered = 1;
      emit(result, vc2::shatter::certificate_to_json(*cert));
    } else {
      *shattered = 0;
      emit(result, {{"missing", std::get<vc2::shatter::NotShattered>(r).missing}});
    }
  });
}

vc2_status vc2_vc2_check(const vc2_set* set, const uint32_t* x, const uint32_t* y, size_t count, unsigned threads,
                         int* shattered, char** result) {
  return guarded([&] {
    need(set, "set");
    need(x, "X");
    need(y, "Y");
    need(shattered, "output");
    const auto r = vc2::shatter::vc2_shatters(*set->oracle, points(*set->oracle, x, count),
                                              points(*set->oracle, y, count), vc2::shatter::ExhaustiveZ{}, threads);
    *shattered = r.ok() ? 1 : 0;
    if (r.ok()) emit(result, vc2::shatter::certificate_to_json(*r.certificate));
    else emit(result, {{"failed_at", r.failed_at->bits()}});
  });
}

vc2_status vc2_verify_certificate(const char* text, int* ok, char** report) {
  return guarded([&] {
    need(ok, "output");
    vc2::shatter::VerifyReport r;
    try {
      r = vc2::shatter::verify_certificate(parse(text));
    } catch (const vc2::Error& e) {
      r = {false, "", e.what(), 0};
    }
    *ok = r.ok ? 1 : 0;
    emit(report, {{"ok", r.ok}, {"kind", r.kind}, {"message", r.message}, {"checked", r.checked}});
  });
}

vc2_status vc2_construction_build(const vc2_basis* basis, unsigned k, uint64_t seed, vc2_construction** out) {
  return guarded([&] {
    need(basis, "basis");
    need(out, "output");
    *out = new vc2_construction{vc2::quad::construct_shatter_pair(basis->basis, k, seed)};
  });
}

vc2_status vc2_construction_from_json(const char* text, vc2_construction** out) {
  return guarded([&] {
    need(out, "output");
    *out = new vc2_construction{vc2::quad::construction_from_json(parse(text))};
  });
}

vc2_status vc2_construction_to_json(const vc2_construction* c, char** out) {
  return guarded([&] {
    need(c, "construction");
    need(out, "output");
    emit(out, vc2::quad::construction_to_json(c->c));
  });
}

void vc2_construction_free(vc2_construction* c) { delete c; }

vc2_status vc2_construction_realize_all(const vc2_construction* c, uint64_t seed, unsigned threads, int* all_realized,
                                        char** result) {
  return guarded([&] {
    need(c, "construction");
    need(all_realized, "output");
    const auto r = vc2::quad::realize_all(c->c, seed, threads);
    *all_realized = r.ok() ? 1 : 0;
    if (r.ok()) emit(result, vc2::shatter::certificate_to_json(*r.certificate));
    else emit(result, {{"failed_at", r.failed_at->bits()}});
  });
}

vc2_status vc2_random_factor(const vc2_basis* basis, size_t l, size_t q, uint64_t seed, char** factor_json) {
  return guarded([&] {
    need(basis, "basis");
    need(factor_json, "output");
    emit(factor_json, vc2::quad::factor_to_json(vc2::quad::random_factor(*basis->basis, l, q, seed)));
  });
}

vc2_status vc2_atom_census(const vc2_basis* basis, const char* factor_json, unsigned threads, int* bound_holds,
                           char** report) {
  return guarded([&] {
    need(basis, "basis");
    need(bound_holds, "output");
    const auto& b = *basis->basis;
    const auto f = vc2::quad::factor_from_json(b.field(), b.n(), parse(factor_json));
    const auto census = vc2::quad::atom_census(f, b, threads);
    const auto check = vc2::quad::check_atom_bound(census, b.field(), b.n(), f.complexity(), b.n());
    *bound_holds = check.passed ? 1 : 0;
    emit(report, {{"atoms", check.atoms},
                  {"min_size", check.min_size},
                  {"max_size", check.max_size},
                  {"complexity", f.complexity()},
                  {"r", b.n()},
                  {"passed", check.passed},
                  {"violator", witness_json(check.violator)}});
  });
}

vc2_status vc2_prop32_suite(const vc2_basis* basis, size_t instances, uint64_t seed, unsigned threads, int* passed,
                            char** report) {
  return guarded([&] {
    need(basis, "basis");
    need(passed, "output");
    const vc2::gs::QgsSet a(basis->basis);
    const auto r = vc2::quad::run_prop32_suite(a, instances, seed, threads);
    *passed = r.passed ? 1 : 0;
    json list = json::array();
    std::size_t both = 0;
    for (const auto& inst : r.instances) {
      if (inst.realized_with_a && inst.realized_with_ac) ++both;
      list.push_back({{"m", inst.m},
                      {"realizing_z", inst.realizing_z},
                      {"vacuous", inst.vacuous()},
                      {"both_corner_values", inst.realized_with_a && inst.realized_with_ac},
                      {"constant_mu", inst.constant_mu ? json(*inst.constant_mu) : json(nullptr)},
                      {"passed", inst.passed},
                      {"detail", inst.detail}});
    }
    emit(report, {{"passed", r.passed},
                  {"instances", list},
                  {"vacuous", r.vacuous},
                  {"non_vacuous", r.instances.size() - r.vacuous},
                  {"both_corner_values", both},
                  {"checked_z", r.checked_z}});
  });
}

vc2_status vc2_colouring_random(size_t m, size_t n, unsigned r, uint64_t seed, uint64_t index, vc2_colouring** out) {
  return guarded([&] {
    need(out, "output");
    *out = new vc2_colouring{vc2::ramsey::BipartiteColouring::random(m, n, r, seed, index)};
  });
}

vc2_status vc2_colouring_parse(const char* text, vc2_colouring** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "output");
    std::istringstream in(text);
    *out = new vc2_colouring{vc2::ramsey::BipartiteColouring::parse(in)};
  });
}

vc2_status vc2_colouring_write(const vc2_colouring* c, char** text) {
  return guarded([&] {
    need(c, "colouring");
    need(text, "output");
    std::ostringstream os;
    c->c.write(os);
    *text = dup_string(os.str());
  });
}

void vc2_colouring_free(vc2_colouring* c) { delete c; }

vc2_status vc2_find_biclique(const vc2_colouring* c, size_t q, size_t s, int* found, char** result) {
  return guarded([&] {
    need(c, "colouring");
    need(found, "output");
    const auto r = vc2::ramsey::find_mono_biclique(c->c, q, s);
    *found = r.witness ? 1 : 0;
    json j{{"found", r.witness.has_value()},
           {"constructive", r.constructive},
           {"budget_exhausted", r.budget_exhausted},
           {"inspections", r.inspections}};
    if (r.witness) {
      j["left"] = r.witness->left;
      j["right"] = r.witness->right;
      j["colour"] = r.witness->colour;
    }
    emit(result, j);
  });
}

vc2_status vc2_br_bound(uint64_t r, uint64_t* value, char** report) {
  return guarded([&] {
    need(value, "output");
    const auto b = vc2::ramsey::br_upper_bound(r);
    *value = b.value;
    json steps = json::array();
    for (const auto& s : b.steps) steps.push_back({{"claim", s.claim}, {"holds", s.holds}});
    emit(report, {{"value", b.value}, {"passed", b.passed}, {"steps", steps}});
  });
}

vc2_status vc2_lemma_a1(uint64_t m, uint64_t n, int64_t rho_num, int64_t rho_den, unsigned q, unsigned s, int* holds) {
  return guarded([&] {
    need(holds, "output");
    vc2::require(rho_den != 0, "density denominator is zero");
    const vc2::ramsey::Rational rho(rho_num, rho_den);
    *holds = vc2::ramsey::lemma_a1_guarantees(m, n, rho, q, s) ? 1 : 0;
  });
}

}  // extern "C"
