#include "quad/cases.hpp"

#include <algorithm>
#include <functional>

#include "util/error.hpp"

namespace vc2::quad {

namespace {

// A table entry is a fixed integer or a wildcard to be chosen later.
using Entry = std::optional<int>;
using Values = std::vector<Entry>;
constexpr std::nullopt_t W = std::nullopt;

struct Template {
  Values q;
  std::vector<Values> a;  // a_1 .. a_{k-1}
  std::vector<Values> b;
};

using Grid = std::array<std::array<bool, 3>, 3>;
using CaseFn = std::function<std::optional<std::vector<Template>>(const Grid&)>;

constexpr bool A = true;
constexpr bool C = false;

int sgn(bool in_a) { return in_a ? 1 : -1; }

Values cat(Entry head, const Values& tail) {
  Values v{head};
  v.insert(v.end(), tail.begin(), tail.end());
  return v;
}

bool verdict(const std::vector<Residue>& v, bool& determined) {
  for (Residue x : v) {
    if (x != 0) {
      determined = true;
      return x == 1;
    }
  }
  determined = false;
  return false;
}

std::vector<Residue> cell_values(const Field& field, const TargetValues& t, std::size_t i, std::size_t j) {
  std::vector<Residue> out(t.k);
  for (std::size_t s = 0; s < t.k; ++s)
    out[s] = field.sub(field.add(t.rows[i][s], t.cols[j][s]), t.rows[0][s]);
  return out;
}

/// Fills wildcards (q, then a_i, then b_j, coordinates in order; the first
/// slot varies slowest) from a small candidate set and returns the first
/// instantiation whose predicted map is phi.
std::optional<TargetValues> resolve(const Field& field, std::size_t k, const Template& tm, const ContainmentMap& phi) {
  const std::uint32_t p = field.p();
  std::vector<Residue> candidates{0, 1, 2 % p, p - 2, p - 1};
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<const Values*> lists{&tm.q};
  for (const auto& v : tm.a) lists.push_back(&v);
  for (const auto& v : tm.b) lists.push_back(&v);
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t l = 0; l < lists.size(); ++l)
    for (std::size_t s = 0; s < k; ++s)
      if (!(*lists[l])[s]) slots.emplace_back(l, s);

  std::vector<std::vector<Residue>> filled(lists.size(), std::vector<Residue>(k));
  for (std::size_t l = 0; l < lists.size(); ++l)
    for (std::size_t s = 0; s < k; ++s)
      if ((*lists[l])[s]) filled[l][s] = field.reduce(*(*lists[l])[s]);

  std::vector<std::size_t> idx(slots.size(), 0);
  for (;;) {
    for (std::size_t w = 0; w < slots.size(); ++w) filled[slots[w].first][slots[w].second] = candidates[idx[w]];
    TargetValues t;
    t.k = k;
    t.rows.push_back(filled[0]);
    t.cols.push_back(filled[0]);
    for (std::size_t i = 0; i < tm.a.size(); ++i) t.rows.push_back(filled[1 + i]);
    for (std::size_t j = 0; j < tm.b.size(); ++j) t.cols.push_back(filled[1 + tm.a.size() + j]);
    const auto predicted = predicted_map(field, t);
    if (predicted && *predicted == phi) return t;

    std::size_t w = slots.size();
    while (w > 0 && idx[w - 1] + 1 == candidates.size()) idx[--w] = 0;
    if (w == 0) return std::nullopt;
    ++idx[w - 1];
  }
}

// ---- side 2 ----

std::vector<Template> side2_rows() {
  // (a, b, q); the first coordinate of each cell is then 1 or 2.
  const std::vector<std::array<int, 3>> firsts{{1, 0, 0}, {2, 0, 0}, {0, 1, 0}, {0, 2, 0}, {2, -1, 0}, {1, 1, 0}};
  std::vector<Template> out;
  for (const auto& [a, b, q] : firsts) out.push_back(Template{{q, W}, {{a, W}}, {{b, W}}});
  return out;
}

// ---- side 3 ----

std::optional<std::vector<Template>> case1(const Grid& f) {
  if (!(f[1][0] == f[1][1] && f[1][1] == f[1][2])) return std::nullopt;
  const std::vector<std::pair<Values, Values>> a2q{
      {{2, 2}, {1, 1}}, {{1, 2}, {0, 1}}, {{1, 0}, {0, -1}}, {{0, 2}, {-1, 1}}};
  const std::vector<Values> brows{{0, W}, {1, 0}, {-1, 1}};
  std::vector<Template> out;
  for (const auto& [a2, q] : a2q)
    for (const auto& b1 : brows)
      for (const auto& b2 : brows)
        out.push_back(Template{cat(0, q), {{sgn(f[1][0]), 0, 0}, cat(0, a2)}, {cat(0, b1), cat(0, b2)}});
  return out;
}

std::optional<std::vector<Template>> case2(const Grid& f) {
  if (!(f[1][0] != f[1][1] && f[1][1] == f[1][2] && f[2][1] == f[2][2])) return std::nullopt;
  const Values b1{0, 0, f[0][1] ? 1 : 2};
  const Values b2{0, 0, f[0][2] ? 1 : 2};
  Values q;
  std::vector<Values> rows;
  if (f[0][0]) {
    q = {1, 0, W};
    rows = {{2, 0, W}, {1, 1, W}, {0, W, W}};
  } else {
    q = {-1, 0, W};
    rows = {{-1, W, W}, {1, 0, W}, {0, 1, W}};
  }
  std::vector<Template> out;
  for (const auto& a1 : rows)
    for (const auto& a2 : rows) out.push_back(Template{q, {a1, a2}, {b1, b2}});
  return out;
}

bool case3(const Grid& f) {
  return f[1][0] != f[1][1] && f[1][1] == f[1][2] && f[1][2] == f[2][1] && f[2][1] != f[2][2];
}

std::optional<std::vector<Template>> case31(const Grid& f) {
  if (!(case3(f) && f[2][0] == f[0][0])) return std::nullopt;
  const int s = sgn(f[2][0]);
  const Values q{s, 0, 0};
  // Both subtables of case 2 are candidates for a_1.
  const std::vector<Values> a1rows{{2, 0, W}, {1, 1, W}, {0, W, W}, {-1, W, W}, {1, 0, W}, {0, 1, W}};
  const std::vector<std::pair<Values, std::vector<Values>>> a2b{
      {{1, 0}, {{1, 0}, {0, W}, {-1, 2}}},
      {{-1, 0}, {{2, 0}, {0, W}, {1, 1}}},
  };
  std::vector<Template> out;
  for (const auto& [a2, brows] : a2b)
    for (const auto& a1 : a1rows)
      for (const auto& b1 : brows)
        for (const auto& b2 : brows) out.push_back(Template{q, {a1, cat(s, a2)}, {cat(0, b1), cat(0, b2)}});
  return out;
}

std::optional<std::vector<Template>> case32(const Grid& f) {
  if (!(case3(f) && f[0][1] == f[0][2])) return std::nullopt;
  const Values a2{sgn(f[2][0]), 0, 0};
  const std::vector<std::pair<Values, Values>> bq{
      {{1, 0, W}, {2, 0, 0}}, {{0, 1, W}, {1, 1, 0}}, {{0, 2, W}, {-1, 2, 0}}, {{2, 0, W}, {1, 0, 0}}};
  const std::vector<Values> a1rows{{0, 0, W}, {2, 0, 0}, {1, 0, 0}};
  std::vector<Template> out;
  for (const auto& [b, q] : bq)
    for (const auto& a1 : a1rows) out.push_back(Template{q, {a1, a2}, {b, b}});
  return out;
}

std::optional<std::vector<Template>> case33(const Grid& f) {
  if (!(case3(f) && f[0][1] != f[0][2] && f[2][0] != f[0][0] && f[0][2] != f[0][0] && f[1][0] != f[2][0]))
    return std::nullopt;
  const Values q{0, 0, W};
  const std::vector<std::pair<Values, Values>> second{{{1, 0, 0}, {1, 0, 0}}, {{2, 0, 0}, {-1, 0, 0}}};
  const std::vector<std::pair<Values, Values>> first{{{1, 0}, {1, 0}}, {{2, 0}, {-1, 0}}};
  std::vector<Template> out;
  for (const auto& [a2, b2] : second)
    for (const auto& [a1, b1] : first) out.push_back(Template{q, {cat(0, a1), a2}, {cat(0, b1), b2}});
  return out;
}

bool case4(const Grid& f) { return f[1][1] == f[2][2] && f[2][2] != f[1][2] && f[1][2] == f[2][1]; }

std::optional<std::vector<Template>> case41(const Grid& f) {
  if (!(case4(f) && f[0][1] == A && f[1][1] == A && f[0][1] != f[0][2])) return std::nullopt;
  const Values q{0, 0, W};
  const Values a1{0, 0, W};
  const Values b1{1, 2, 0};
  return std::vector<Template>{
      Template{q, {a1, {1, 0, 0}}, {b1, {-1, 1, 0}}},
      Template{q, {a1, {-1, 0, 0}}, {b1, {2, 0, 0}}},
  };
}

std::optional<std::vector<Template>> case42(const Grid& f) {
  if (!(case4(f) && f[0][1] == A && f[1][1] == A && f[0][1] == f[0][2] && f[1][0] == f[2][0])) return std::nullopt;
  if (f[0][2] == f[1][0]) return std::vector<Template>{Template{{0, 0, W}, {{0, 1, 0}, {1, 0, 0}}, {{1, 0, 0}, {0, 1, 0}}}};
  if (f[0][0]) return std::vector<Template>{Template{{0, 0, 1}, {{-1, 1, 1}, {-1, 0, 0}}, {{1, 0, 0}, {1, 1, 0}}}};
  return std::vector<Template>{Template{{0, 0, -1}, {{-1, 1, 0}, {-1, 0, 1}}, {{1, 0, 0}, {1, 1, 0}}}};
}

// Maps with phi(1,1) = phi(2,2) = A, phi(1,2) = phi(2,1) = A^C and all four
// border cells (0,1), (0,2), (1,0), (2,0) equal to A^C. No grid symmetry
// moves them into case 4.1 or 4.2, so they get their own table.
std::optional<std::vector<Template>> case42d(const Grid& f) {
  if (!(case4(f) && f[1][1] == A && f[0][1] == C && f[0][2] == C && f[1][0] == C && f[2][0] == C)) return std::nullopt;
  return std::vector<Template>{Template{{0, 0, W}, {{0, -1, 0}, {-1, 0, 0}}, {{0, 2, 0}, {2, 0, 0}}}};
}

Grid to_grid(const ContainmentMap& phi) {
  Grid g{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) g[i][j] = phi.at(i, j);
  return g;
}

TargetValues side3(const Field& field, const ContainmentMap& phi) {
  static const std::vector<std::pair<const char*, CaseFn>> cases{
      {"case 1", case1},     {"case 2", case2},     {"case 3.1", case31},   {"case 3.2", case32},
      {"case 3.3", case33},  {"case 4.1", case41},  {"case 4.2", case42},   {"case 4.2-D", case42d},
  };
  for (const auto& [name, fn] : cases) {
    for (const auto& g : kGridSymmetries) {
      const ContainmentMap moved = apply_symmetry(phi, g);
      const auto templates = fn(to_grid(moved));
      if (!templates) continue;
      for (const auto& tm : *templates) {
        if (auto t = resolve(field, 3, tm, moved)) {
          t->source = name;
          return unapply_symmetry(*t, g);
        }
      }
    }
  }
  fail(ErrorCode::internal, "no case table realises containment map " + std::to_string(phi.bits()));
}

TargetValues side2(const Field& field, const ContainmentMap& phi) {
  const auto rows = side2_rows();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (auto t = resolve(field, 2, rows[r], phi)) {
      t->source = "row " + std::to_string(r + 1);
      return *t;
    }
  }
  fail(ErrorCode::internal, "no table row realises containment map " + std::to_string(phi.bits()));
}

}  // namespace

std::optional<ContainmentMap> predicted_map(const Field& field, const TargetValues& t) {
  require(t.rows.size() == t.k && t.cols.size() == t.k, "target values have the wrong shape");
  require(t.rows[0] == t.cols[0], "rows[0] and cols[0] must both be Q(z)");
  ContainmentMap phi(t.k, 0);
  for (std::size_t i = 0; i < t.k; ++i) {
    for (std::size_t j = 0; j < t.k; ++j) {
      bool determined = false;
      const bool in_a = verdict(cell_values(field, t, i, j), determined);
      if (!determined) return std::nullopt;
      phi.set(i, j, in_a);
    }
  }
  return phi;
}

TargetValues target_values_for_map(const Field& field, std::size_t k, const ContainmentMap& phi) {
  require(phi.side() == k && !phi.is_partial(), "containment map must be total on the k-grid");
  TargetValues t;
  if (k == 2) t = side2(field, phi);
  else if (k == 3) t = side3(field, phi);
  else fail(ErrorCode::invalid_argument, "case tables exist only for k = 2 and k = 3");
  const auto check = predicted_map(field, t);
  if (!check || !(*check == phi)) fail(ErrorCode::internal, "case table output does not reproduce the map");
  return t;
}

ContainmentMap apply_symmetry(const ContainmentMap& phi, const GridSymmetry& g) {
  require(phi.side() == 3 && !phi.is_partial(), "grid symmetries act on total 3x3 maps");
  const std::array<std::size_t, 3> swap{0, 2, 1}, id{0, 1, 2};
  const auto& pr = g.swap_rows ? swap : id;
  const auto& pc = g.swap_cols ? swap : id;
  ContainmentMap out(3, 0);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t r = pr[i], c = pc[j];
      out.set(i, j, g.transpose ? phi.at(c, r) : phi.at(r, c));
    }
  }
  return out;
}

TargetValues unapply_symmetry(const TargetValues& t, const GridSymmetry& g) {
  require(t.k == 3, "grid symmetries act on side 3");
  const std::array<std::size_t, 3> swap{0, 2, 1}, id{0, 1, 2};
  const auto& pr = g.swap_rows ? swap : id;
  const auto& pc = g.swap_cols ? swap : id;
  TargetValues out = t;
  for (std::size_t i = 0; i < 3; ++i) {
    out.rows[i] = t.rows[pr[i]];
    out.cols[i] = t.cols[pc[i]];
  }
  if (g.transpose) std::swap(out.rows, out.cols);
  return out;
}

}  // namespace vc2::quad
